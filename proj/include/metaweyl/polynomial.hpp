#pragma once

// Sparse multivariate polynomials with complex coefficients. Used for holomorphic
// test functions on C^n and for phase-space symbols in (p, q).

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "metaweyl/matcore.hpp"

namespace metaweyl {

using MultiIndex = std::vector<int>;

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, cplx c) {
    Polynomial p(nvars);
    p.add_term(MultiIndex(nvars, 0), c);
    return p;
  }

  static Polynomial variable(int nvars, int i) {
    MultiIndex e(nvars, 0);
    e.at(i) = 1;
    Polynomial p(nvars);
    p.add_term(e, 1.0);
    return p;
  }

  static Polynomial monomial(const MultiIndex& e, cplx c = 1.0) {
    Polynomial p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
  }

  int nvars() const { return nvars_; }
  const std::map<MultiIndex, cplx>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MultiIndex& e, cplx c) {
    if (static_cast<int>(e.size()) != nvars_) throw Error(Errc::shape_error, "monomial arity mismatch");
    if (c == cplx{}) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == cplx{}) terms_.erase(it);
    }
  }

  cplx coefficient(const MultiIndex& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? cplx{} : it->second;
  }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int v : e) s += v;
      d = std::max(d, s);
    }
    return d;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(cplx s) {
    if (s == cplx{}) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out(a.nvars_);
    MultiIndex e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (int k = 0; k < a.nvars_; ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  /// ∂/∂x_var.
  Polynomial derivative(int var) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      MultiIndex f = e;
      f[var] -= 1;
      out.add_term(f, c * static_cast<double>(e[var]));
    }
    return out;
  }

  /// ∂^order with a multi-index of derivative counts.
  Polynomial derivative(const MultiIndex& order) const {
    Polynomial out = *this;
    for (int k = 0; k < nvars_; ++k)
      for (int r = 0; r < order[k]; ++r) out = out.derivative(k);
    return out;
  }

  cplx operator()(std::span<const cplx> x) const {
    cplx s{};
    for (const auto& [e, c] : terms_) {
      cplx t = c;
      for (int k = 0; k < nvars_; ++k)
        if (e[k] > 0) t *= std::pow(x[k], e[k]);
      s += t;
    }
    return s;
  }

  /// Largest coefficient magnitude of a - b.
  friend double max_coefficient_diff(const Polynomial& a, const Polynomial& b) {
    const Polynomial d = a - b;
    double m = 0.0;
    for (const auto& [e, c] : d.terms_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Drops coefficients with magnitude at most tol.
  Polynomial pruned(double tol) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_)
      if (std::abs(c) > tol) out.terms_.emplace(e, c);
    return out;
  }

 private:
  void check(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw Error(Errc::shape_error, "polynomial arity mismatch");
  }

  int nvars_ = 0;
  std::map<MultiIndex, cplx> terms_;
};

/// All multi-indices in nvars variables with total degree <= deg.
inline std::vector<MultiIndex> monomials_up_to(int nvars, int deg) {
  std::vector<MultiIndex> out;
  MultiIndex e(nvars, 0);
  auto rec = [&](auto&& self, int k, int left) -> void {
    if (k == nvars) {
      out.push_back(e);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      e[k] = d;
      self(self, k + 1, left - d);
    }
    e[k] = 0;
  };
  rec(rec, 0, deg);
  return out;
}

inline double factorial(int k) { return std::tgamma(k + 1.0); }

}  // namespace metaweyl
