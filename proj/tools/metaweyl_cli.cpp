// metaweyl: evaluate kernels and symbols at points and run verification suites.
//
// Exit codes: 0 ok, 1 suite failures, 2 bad input, 3 unresolved phase ambiguity.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metaweyl/io.hpp"
#include "metaweyl/metaweyl.hpp"

using namespace metaweyl;

namespace {

enum Exit { kOk = 0, kSuiteFailed = 1, kBadInput = 2, kAmbiguous = 3 };

struct Options {
  int n = 1;
  double lambda = 1.0;
  int trials = 10;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::string format = "json";
  bool adjudicate = false;
  int nodes = 0;

  std::string k, k1, k2, g, x, m, f, f2;
  std::vector<double> at, point;
  int order = 40;
  bool closed = false;
  std::string suite;
  std::string kind;
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_value(cplx v, const Options& o) {
  if (o.format == "csv") {
    std::cout << "re,im\n" << fmt_double(v.real()) << ',' << fmt_double(v.imag()) << '\n';
  } else {
    std::cout << complex_to_json(v).dump() << '\n';
  }
}

void print_json(const Json& j) { std::cout << j.dump() << '\n'; }

/// Interleaved re/im reals to n complex numbers, starting at `offset`.
CPoint complex_point(const std::vector<double>& v, int n, std::size_t offset = 0) {
  if (v.size() < offset + 2 * static_cast<std::size_t>(n)) {
    throw Error(Errc::shape_error, "expected " + std::to_string(2 * n) + " reals per point on C^n");
  }
  CPoint z(n);
  for (int k = 0; k < n; ++k) z[k] = cplx(v[offset + 2 * k], v[offset + 2 * k + 1]);
  return z;
}

void require_count(const std::vector<double>& v, std::size_t count, const char* what) {
  if (v.size() != count) {
    throw Error(Errc::shape_error, std::string(what) + " expects " + std::to_string(count) + " reals");
  }
}

int nodes_or(const Options& o, int fallback) { return o.nodes > 0 ? o.nodes : fallback; }

cplx phase_for(const SuBlocks& k, const Options& o) {
  return o.adjudicate ? metaplectic_phase_c_adjudicated(k, o.lambda, nodes_or(o, 80)) : metaplectic_phase_c(k);
}

SuBlocks load_su(const std::string& path) {
  if (path.empty()) throw Error(Errc::parse_error, "--k is required");
  return require_su(su_blocks_from_json(read_json_file(path)));
}

SpReal load_sp(const std::string& path) {
  if (path.empty()) throw Error(Errc::parse_error, "--g is required");
  return require_sp(sp_from_json(read_json_file(path)));
}

cplx w0_sigma_value(const Options& o) {
  const SuBlocks k = load_su(o.k);
  require_count(o.at, 2 * k.n, "--at");
  const CPoint z = complex_point(o.at, k.n);
  return w0_sigma_closed_with_phase(k, z, o.lambda, phase_for(k, o));
}

cplx w1_sigma_value(const Options& o) {
  const SpReal g = load_sp(o.g);
  require_count(o.at, 2 * g.n, "--at");
  const std::span<const double> xy(o.at);
  return w1_sigma_closed_with_phase(g, xy.subspan(0, g.n), xy.subspan(g.n, g.n), o.lambda,
                                    phase_for(su_from_sp(g), o));
}

cplx kernel_value(const Options& o) {
  const SuBlocks k = load_su(o.k);
  require_count(o.at, 4 * k.n, "--at");
  return sigma_kernel(k, o.lambda)(complex_point(o.at, k.n), complex_point(o.at, k.n, 2 * k.n));
}

QuadForm2n load_quadform(const Options& o) {
  if (o.m.empty()) throw Error(Errc::parse_error, "--M is required");
  return quadform_from_arg(o.m, o.n);
}

Json star_exp_json(const Options& o) {
  const QuadForm2n q = load_quadform(o);
  require_count(o.point, 2 * q.n, "--point");
  if (o.closed) {
    const cplx v = star_exp_quadratic_closed(q, o.point);
    return {{"value", {v.real(), v.imag()}}, {"last_term", 0.0}};
  }
  const StarExpResult r = star_exp_series(q, -kI, o.order, o.point);
  return {{"value", {r.value.real(), r.value.imag()}}, {"last_term", r.last_term}};
}

void run_eval(const Options& o) {
  const std::string& kind = o.kind;
  if (kind == "w0-sigma") return print_value(w0_sigma_value(o), o);
  if (kind == "w1-sigma") return print_value(w1_sigma_value(o), o);
  if (kind == "kernel") return print_value(kernel_value(o), o);
  if (kind == "w0-dsigma" || kind == "berezin-dsigma") {
    if (o.x.empty()) throw Error(Errc::parse_error, "--X is required");
    const SuLie x = require_su_lie(su_lie_from_json(read_json_file(o.x)));
    require_count(o.at, 2 * x.n, "--at");
    const CPoint z = complex_point(o.at, x.n);
    return print_value(kind == "w0-dsigma" ? w0_dsigma_closed(x, z, o.lambda)
                                           : berezin_symbol_dsigma(x, to_vec(z), o.lambda),
                       o);
  }
  if (kind == "berezin-sigma") {
    const SuBlocks k = load_su(o.k);
    require_count(o.at, 2 * k.n, "--at");
    return print_value(berezin_symbol_sigma(k, to_vec(complex_point(o.at, k.n)), o.lambda), o);
  }
  if (kind == "w1-exp" || kind == "w1-dsigma") {
    if (o.x.empty()) throw Error(Errc::parse_error, "--X is required");
    const SpLieReal x = require_sp_lie(sp_lie_from_json(read_json_file(o.x)));
    require_count(o.at, 2 * x.n, "--at");
    const std::span<const double> xs(o.at.data(), x.n), ys(o.at.data() + x.n, x.n);
    return print_value(kind == "w1-exp" ? w1_exp_closed(x, xs, ys, o.lambda) : w1_dsigma_closed(x, xs, ys, o.lambda),
                       o);
  }
  if (kind == "star-exp") {
    const Json j = star_exp_json(o);
    return print_value({j["value"][0].get<double>(), j["value"][1].get<double>()}, o);
  }
  if (kind == "hormander") {
    const QuadForm2n q = load_quadform(o);
    require_count(o.point, 2 * q.n, "--point");
    const std::span<const double> p(o.point);
    return print_value(hormander_exp_symbol(q, p.subspan(0, q.n), p.subspan(q.n, q.n)), o);
  }
  throw Error(Errc::bad_config, "unknown eval kind " + kind);
}

int run_verify(const Options& o) {
  SuiteConfig c;
  c.name = o.suite;
  c.n = o.n;
  c.lambda = o.lambda;
  c.trials = o.trials;
  c.seed = o.seed;
  c.tol = o.tol;
  c.nodes = o.nodes;
  const SuiteReport r = run_suite(c);
  const std::string& name = r.config.name;
  if (o.format == "csv") {
    std::cout << "suite,case,residual,tol,pass\n";
    for (const auto& rec : r.records) {
      std::cout << name << ',' << rec.index << ',' << fmt_double(rec.residual) << ',' << fmt_double(c.tol) << ','
                << (rec.pass ? "true" : "false") << '\n';
    }
  } else {
    Json records = Json::array();
    for (const auto& rec : r.records) {
      records.push_back({{"case", rec.index}, {"digest", rec.digest}, {"residual", rec.residual}, {"pass", rec.pass}});
    }
    print_json({{"suite", name},
                {"n", c.n},
                {"lambda", c.lambda},
                {"trials", c.trials},
                {"failures", r.failures},
                {"max_residual", r.max_residual},
                {"seed", c.seed},
                {"tol", c.tol},
                {"records", records}});
  }
  return r.ok() ? kOk : kSuiteFailed;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--n", o.n, "dimension n");
  app->add_option("--lambda", o.lambda, "representation parameter λ > 0");
  app->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app->add_flag("--adjudicate-phase", o.adjudicate, "resolve an ambiguous ±i phase by quadrature");
  app->add_option("--nodes", o.nodes, "Gauss-Hermite nodes per axis");
}

void add_suite_options(CLI::App* app, Options& o) {
  app->add_option("--suite", o.suite, "suite name")->required();
  app->add_option("--trials", o.trials, "number of random cases");
  app->add_option("--seed", o.seed, "seed");
  app->add_option("--tol", o.tol, "pass tolerance on each residual");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metaplectic kernels, Weyl symbols and Moyal star exponentials"};
  app.require_subcommand(1);
  Options o;

  auto* meta = app.add_subcommand("metaplectic", "metaplectic kernels");
  meta->require_subcommand(1);
  auto* kernel = meta->add_subcommand("kernel", "kernel of σ(k) at (z, w)");
  kernel->add_option("--k", o.k, "SuBlocks JSON file")->required();
  kernel->add_option("--at", o.at, "z then w, re/im interleaved")->required();
  add_common(kernel, o);
  auto* cocycle = meta->add_subcommand("cocycle", "sign s in σ(k1)σ(k2) = s σ(k1k2)");
  cocycle->add_option("--k1", o.k1)->required();
  cocycle->add_option("--k2", o.k2)->required();
  add_common(cocycle, o);

  auto* weyl = app.add_subcommand("weyl", "Weyl symbols of σ and σ'");
  weyl->require_subcommand(1);
  auto* w0 = weyl->add_subcommand("w0", "W₀(σ(k)) at z");
  w0->add_option("--k", o.k)->required();
  w0->add_option("--at", o.at, "z, re/im interleaved")->required();
  add_common(w0, o);
  auto* w1 = weyl->add_subcommand("w1", "W₁(σ'(g)) at (x, y)");
  w1->add_option("--g", o.g)->required();
  w1->add_option("--at", o.at, "x then y")->required();
  add_common(w1, o);
  auto* wverify = weyl->add_subcommand("verify", "run a named suite");
  add_suite_options(wverify, o);
  add_common(wverify, o);

  auto* moyal = app.add_subcommand("moyal", "Moyal star products");
  moyal->require_subcommand(1);
  auto* star = moyal->add_subcommand("star", "f * g for polynomial symbols");
  star->add_option("--f", o.f)->required();
  star->add_option("--g", o.f2)->required();
  add_common(star, o);
  auto* starexp = moyal->add_subcommand("star-exp", "exp_*(-i q_M) at a point");
  starexp->add_option("--M", o.m, "matrix file or <t>I")->required();
  starexp->add_option("--point", o.point, "(p, q)")->required();
  starexp->add_option("--order", o.order, "series order L");
  starexp->add_flag("--closed", o.closed, "use the closed form");
  add_common(starexp, o);

  auto* eval = app.add_subcommand("eval", "evaluate a symbol or kernel");
  eval->add_option("kind", o.kind, "symbol kind")
      ->required()
      ->check(CLI::IsMember({"w0-sigma", "w0-dsigma", "w1-sigma", "w1-exp", "w1-dsigma", "berezin-sigma",
                             "berezin-dsigma", "star-exp", "hormander", "kernel"}));
  eval->add_option("--k", o.k, "SuBlocks JSON file");
  eval->add_option("--g", o.g, "Sp(n,R) JSON file");
  eval->add_option("--X", o.x, "Lie algebra JSON file");
  eval->add_option("--M", o.m, "matrix file or <t>I");
  eval->add_option("--at", o.at, "evaluation point");
  eval->add_option("--point", o.point, "phase-space point (p, q)");
  eval->add_option("--order", o.order, "series order L");
  eval->add_flag("--closed", o.closed, "use the closed form");
  add_common(eval, o);

  auto* verify = app.add_subcommand("verify", "run a named suite");
  add_suite_options(verify, o);
  add_common(verify, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (kernel->parsed()) {
      print_value(kernel_value(o), o);
    } else if (cocycle->parsed()) {
      const SuBlocks a = require_su(su_blocks_from_json(read_json_file(o.k1)));
      const SuBlocks b = require_su(su_blocks_from_json(read_json_file(o.k2)));
      const CocycleResult r = sigma_cocycle_sign(a, b, o.lambda);
      print_json({{"sign", r.sign},
                  {"scalar", complex_to_json(r.scalar)},
                  {"param_distance", r.param_distance},
                  {"alpha_sign", complex_to_json(r.alpha_sign)}});
    } else if (w0->parsed()) {
      print_value(w0_sigma_value(o), o);
    } else if (w1->parsed()) {
      print_value(w1_sigma_value(o), o);
    } else if (wverify->parsed() || verify->parsed()) {
      return run_verify(o);
    } else if (star->parsed()) {
      const PhasePoly f = phase_poly_from_json(read_json_file(o.f));
      const PhasePoly g = phase_poly_from_json(read_json_file(o.f2));
      print_json(phase_poly_to_json(moyal_mul(f, g)));
    } else if (starexp->parsed()) {
      print_json(star_exp_json(o));
    } else if (eval->parsed()) {
      run_eval(o);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return e.code() == Errc::ambiguous_phase ? kAmbiguous : kBadInput;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}
