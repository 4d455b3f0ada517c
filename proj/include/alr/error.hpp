#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace alr {

enum class ErrorKind {
  invalid_argument,
  non_finite_argument,
  hankel_singular,
  branch_violation,
  exact_modal_resonance,
  outside_representation,
  quadrature_failure,
  below_asymptotic_regime,
  no_root_found,
  unphysical_root,
  no_core,
  assumption_violated,
  formulation_mismatch,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::non_finite_argument: return "non_finite_argument";
    case ErrorKind::hankel_singular: return "hankel_singular";
    case ErrorKind::branch_violation: return "branch_violation";
    case ErrorKind::exact_modal_resonance: return "exact_modal_resonance";
    case ErrorKind::outside_representation: return "outside_representation";
    case ErrorKind::quadrature_failure: return "quadrature_failure";
    case ErrorKind::below_asymptotic_regime: return "below_asymptotic_regime";
    case ErrorKind::no_root_found: return "no_root_found";
    case ErrorKind::unphysical_root: return "unphysical_root";
    case ErrorKind::no_core: return "no_core";
    case ErrorKind::assumption_violated: return "assumption_violated";
    case ErrorKind::formulation_mismatch: return "formulation_mismatch";
  }
  return "unknown";
}

/// Library error. `mode` carries the offending mode/degree index when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<int> mode = std::nullopt)
      : std::runtime_error(what), kind_(kind), mode_(mode) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<int> mode() const noexcept { return mode_; }

 private:
  ErrorKind kind_;
  std::optional<int> mode_;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::invalid_argument, what);
}

}  // namespace detail
}  // namespace alr
