#pragma once

// JSON encodings of matrices, group and algebra elements, and phase-space
// polynomials.
//
//   matrix     {"rows": r, "cols": c, "data": [[re, im] | re, ...]}   row-major
//   SuBlocks   {"n": n, "P": matrix, "Q": matrix}
//   SuLie      {"n": n, "A": matrix, "B": matrix}
//   SpReal     a 2n×2n real matrix
//   SpLieReal  a 2n×2n real matrix X, or {"n": n, "A", "B", "C"}
//   PhasePoly  {"n": n, "terms": [{"exp": [...2n ints], "coef": [re, im] | re}, ...]}

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "metaweyl/moyal.hpp"
#include "metaweyl/sympgroup.hpp"
#include "metaweyl/weylsymbols.hpp"

namespace metaweyl {

using Json = nlohmann::json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, path + ": " + e.what());
  }
}

namespace detail {

inline cplx scalar_from_json(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw Error(Errc::parse_error, "expected a number or a [re, im] pair");
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::parse_error, std::string("missing field ") + key);
  return j.at(key);
}

inline int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw Error(Errc::parse_error, std::string(key) + " must be an integer");
  return v.get<int>();
}

}  // namespace detail

inline CMat matrix_from_json(const Json& j) {
  const int rows = detail::int_field(j, "rows");
  const int cols = detail::int_field(j, "cols");
  const Json& data = detail::field(j, "data");
  if (rows < 0 || cols < 0 || !data.is_array() || static_cast<int>(data.size()) != rows * cols) {
    throw Error(Errc::parse_error, "matrix data must hold rows*cols entries");
  }
  CMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = detail::scalar_from_json(data[r * cols + c]);
  return m;
}

inline RMat real_matrix_from_json(const Json& j) {
  const CMat m = matrix_from_json(j);
  if (m.imag().norm() > 0.0) throw Error(Errc::parse_error, "expected a real matrix");
  return m.real();
}

inline Json matrix_to_json(const CMat& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline Json matrix_to_json(const RMat& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

namespace detail {

inline void require_dims(const CMat& m, int r, int c, const char* what) {
  if (m.rows() != r || m.cols() != c) throw Error(Errc::shape_error, std::string(what) + " has the wrong shape");
}

}  // namespace detail

inline SuBlocks su_blocks_from_json(const Json& j) {
  const int n = detail::int_field(j, "n");
  SuBlocks k{n, matrix_from_json(detail::field(j, "P")), matrix_from_json(detail::field(j, "Q"))};
  detail::require_dims(k.P, n, n, "P");
  detail::require_dims(k.Q, n, n, "Q");
  return k;
}

inline Json su_blocks_to_json(const SuBlocks& k) {
  return {{"n", k.n}, {"P", matrix_to_json(k.P)}, {"Q", matrix_to_json(k.Q)}};
}

inline SuLie su_lie_from_json(const Json& j) {
  const int n = detail::int_field(j, "n");
  SuLie x{n, matrix_from_json(detail::field(j, "A")), matrix_from_json(detail::field(j, "B"))};
  detail::require_dims(x.A, n, n, "A");
  detail::require_dims(x.B, n, n, "B");
  return x;
}

inline Json su_lie_to_json(const SuLie& x) {
  return {{"n", x.n}, {"A", matrix_to_json(x.A)}, {"B", matrix_to_json(x.B)}};
}

inline SpReal sp_from_json(const Json& j) {
  const RMat g = real_matrix_from_json(j);
  if (g.rows() != g.cols() || g.rows() % 2 != 0) throw Error(Errc::shape_error, "g must be 2n x 2n");
  return {static_cast<int>(g.rows() / 2), g};
}

inline SpLieReal sp_lie_from_json(const Json& j) {
  if (j.is_object() && j.contains("A")) {
    const int n = detail::int_field(j, "n");
    SpLieReal x{n, real_matrix_from_json(detail::field(j, "A")), real_matrix_from_json(detail::field(j, "B")),
                real_matrix_from_json(detail::field(j, "C"))};
    for (const RMat* m : {&x.A, &x.B, &x.C}) {
      if (m->rows() != n || m->cols() != n) throw Error(Errc::shape_error, "blocks must be n x n");
    }
    return x;
  }
  const RMat full = real_matrix_from_json(j);
  if (full.rows() != full.cols() || full.rows() % 2 != 0) throw Error(Errc::shape_error, "X must be 2n x 2n");
  const int n = static_cast<int>(full.rows() / 2);
  SpLieReal x{n, full.topLeftCorner(n, n), full.topRightCorner(n, n), full.bottomLeftCorner(n, n)};
  if ((full.bottomRightCorner(n, n) + x.A.transpose()).norm() > structural_tol(full.norm())) {
    throw Error(Errc::not_in_lie, "lower-right block must equal -A^t");
  }
  return x;
}

/// "<t>I" means t·I_{2n}; anything else is read as a matrix file.
inline QuadForm2n quadform_from_arg(const std::string& arg, int n) {
  if (!arg.empty() && arg.back() == 'I') {
    const std::string num = arg.substr(0, arg.size() - 1);
    double t = 1.0;
    if (!num.empty()) {
      std::istringstream in(num);
      in >> t;
      if (!in || !in.eof()) throw Error(Errc::parse_error, "bad scalar shorthand " + arg);
    }
    return {n, t * RMat::Identity(2 * n, 2 * n)};
  }
  const RMat m = real_matrix_from_json(read_json_file(arg));
  if (m.rows() != m.cols() || m.rows() % 2 != 0) throw Error(Errc::shape_error, "M must be 2n x 2n");
  QuadForm2n q{static_cast<int>(m.rows() / 2), m};
  check_quadform(q);
  return q;
}

inline PhasePoly phase_poly_from_json(const Json& j) {
  const int n = detail::int_field(j, "n");
  PhasePoly f(2 * n);
  const Json& terms = detail::field(j, "terms");
  if (!terms.is_array()) throw Error(Errc::parse_error, "terms must be an array");
  for (const Json& t : terms) {
    const Json& e = detail::field(t, "exp");
    if (!e.is_array() || static_cast<int>(e.size()) != 2 * n) throw Error(Errc::parse_error, "exp must hold 2n ints");
    MultiIndex idx;
    for (const Json& v : e) {
      if (!v.is_number_integer() || v.get<int>() < 0) throw Error(Errc::parse_error, "exponents must be >= 0");
      idx.push_back(v.get<int>());
    }
    f.add_term(idx, detail::scalar_from_json(detail::field(t, "coef")));
  }
  return f;
}

inline Json phase_poly_to_json(const PhasePoly& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exp", e}, {"coef", {c.real(), c.imag()}}});
  return {{"n", phase_dim(f)}, {"terms", terms}};
}

inline Json complex_to_json(cplx v) { return {{"re", v.real()}, {"im", v.imag()}}; }

}  // namespace metaweyl
