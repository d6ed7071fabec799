#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace hker {

// All public entry points accept and return complex values; purely real
// problems are the special case im == 0.
using Scalar = std::complex<double>;

// Arguments closer than this to a pole of Gamma (a nonpositive integer) are
// treated as sitting exactly on the pole.  Evaluating a ratio like
// Gamma(c)/Gamma(c-a) at a distance 1e-12 from a pole produces garbage with
// no warning; refusing the whole neighbourhood is the only safe contract.
inline constexpr double pole_guard_radius = 1e-8;

enum class ErrorKind {
  invalid_parameter,
  non_finite_input,
  overflow,
  series_pole,
  terminating_series_pole,
  gamma_pole,
  gamma_ratio_pole,
  gauss_domain,
  kummer_domain,
  series_domain,
  domain_too_constrained,
  unknown_identity,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Stopping policy shared by every series evaluator.
struct ToleranceSpec {
  double rel_tol = 1e-14;
  double abs_tol = 1e-300;
  std::size_t max_terms = 10000;
  // Number of consecutive below-threshold terms required before the sum is
  // declared converged.  One small term is not evidence of convergence: the
  // terms of 1F1(a;b;-z) for large z pass through zero on their way up.
  int consecutive_small = 3;

  void validate() const {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
      throw Error(ErrorKind::invalid_parameter, "rel_tol must be positive");
    if (!(abs_tol >= 0.0) || !std::isfinite(abs_tol))
      throw Error(ErrorKind::invalid_parameter, "abs_tol must be nonnegative");
    if (max_terms < 1)
      throw Error(ErrorKind::invalid_parameter, "max_terms must be at least 1");
    if (consecutive_small < 1)
      throw Error(ErrorKind::invalid_parameter,
                  "consecutive_small must be at least 1");
  }
};

// Result of a truncated series evaluation.  `converged == true` guarantees
// est_tail <= rel_tol * |value| + abs_tol for the ToleranceSpec in force.
struct SeriesValue {
  Scalar value{0.0, 0.0};
  std::size_t terms_used = 0;
  double est_tail = 0.0;
  bool converged = false;
};

inline bool is_finite(Scalar z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_scalar(Scalar z) {
  if (z.imag() == 0.0) return fmt_double(z.real());
  return "(" + fmt_double(z.real()) + "," + fmt_double(z.imag()) + ")";
}

inline void require_finite(Scalar z, const char* what) {
  if (!is_finite(z))
    throw Error(ErrorKind::non_finite_input,
                std::string("non-finite input: ") + what);
}

// Compensated (Kahan) accumulator.  The series below alternate in sign for
// large swaths of the parameter space and plain accumulation loses digits
// exactly where the verification tolerances are tightest.
class KahanSum {
 public:
  void add(Scalar x) {
    Scalar y = x - comp_;
    Scalar t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }

  Scalar value() const { return sum_; }

 private:
  Scalar sum_{0.0, 0.0};
  Scalar comp_{0.0, 0.0};
};

}  // namespace detail

// True when z lies within `radius` of a nonpositive integer, the pole set of
// Gamma.  Distance is measured in the complex plane.
inline bool near_nonpositive_integer(Scalar z,
                                     double radius = pole_guard_radius) {
  double k = std::round(z.real());
  if (k > 0.5) return false;
  return std::abs(z - Scalar(k, 0.0)) <= radius;
}

// True when z lies within `radius` of any integer.
inline bool near_integer(Scalar z, double radius = pole_guard_radius) {
  double k = std::round(z.real());
  return std::abs(z - Scalar(k, 0.0)) <= radius;
}

}  // namespace hker
