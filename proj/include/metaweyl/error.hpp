#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace metaweyl {

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class Errc {
  shape_error,
  singular_matrix,
  cayley_singular,
  not_positive_real,
  not_symplectic,
  not_in_s,
  not_in_lie,
  divergent_integral,
  no_decomposition,
  domain_violation,
  not_unimodular,
  ambiguous_phase,
  heat_flow_singular,
  non_convergent,
  unknown_suite,
  bad_config,
  parse_error,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::shape_error: return "ShapeError";
    case Errc::singular_matrix: return "SingularMatrix";
    case Errc::cayley_singular: return "CayleySingular";
    case Errc::not_positive_real: return "NotPositiveReal";
    case Errc::not_symplectic: return "NotSymplectic";
    case Errc::not_in_s: return "NotInS";
    case Errc::not_in_lie: return "NotInLie";
    case Errc::divergent_integral: return "DivergentIntegral";
    case Errc::no_decomposition: return "NoDecomposition";
    case Errc::domain_violation: return "DomainViolation";
    case Errc::not_unimodular: return "NotUnimodular";
    case Errc::ambiguous_phase: return "AmbiguousPhase";
    case Errc::heat_flow_singular: return "HeatFlowSingular";
    case Errc::non_convergent: return "NonConvergent";
    case Errc::unknown_suite: return "UnknownSuite";
    case Errc::bad_config: return "BadConfig";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace metaweyl
