#pragma once

// Complex log-gamma via the Lanczos approximation, plus a pole-aware
// Gamma-ratio helper.
//
// For Re(z) >= 1/2:
//
//   log Gamma(z) = (z - 1/2) log(z + g - 1/2) - (z + g - 1/2)
//                  + log( sqrt(2 pi) * S_g(z) )
//   S_g(z) = c_0 + sum_{k=1}^{N} c_k / (z - 1 + k)
//
// with Godfrey's g = 607/128 and 15 coefficients, giving ~15 significant
// digits on the half-plane.  Re(z) < 1/2 goes through the reflection
// formula  Gamma(z) Gamma(1-z) = pi / sin(pi z).

#include <array>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "hker/scalar.hpp"

namespace hker {
namespace detail {

inline constexpr double lanczos_g = 607.0 / 128.0;

inline constexpr std::array<double, 15> lanczos_c = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

inline Scalar log_gamma_half_plane(Scalar z) {
  Scalar s(lanczos_c[0], 0.0);
  for (std::size_t k = 1; k < lanczos_c.size(); ++k)
    s += lanczos_c[k] / (z - 1.0 + static_cast<double>(k));
  Scalar t = z + (lanczos_g - 0.5);
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return half_log_two_pi + (z - 0.5) * std::log(t) - t + std::log(s);
}

}  // namespace detail

// Principal branch of log Gamma(z).  Rejects the poles z = 0, -1, -2, ...
// and their guard neighbourhoods.
inline Scalar log_gamma(Scalar z) {
  detail::require_finite(z, "log_gamma argument");
  if (near_nonpositive_integer(z))
    throw Error(ErrorKind::gamma_pole,
                "gamma pole at nonpositive integer: z=" +
                    detail::fmt_scalar(z));
  if (z.real() >= 0.5) return detail::log_gamma_half_plane(z);
  // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
  // log(sin(pi z)) overflows for large |Im z| if computed naively, but the
  // parameter ranges here keep |Im z| small; std::sin on complex is fine.
  constexpr double log_pi = 1.1447298858494001741;
  Scalar s = std::sin(Scalar(M_PI, 0.0) * z);
  return log_pi - std::log(s) - detail::log_gamma_half_plane(1.0 - z);
}

// prod Gamma(num_i) / prod Gamma(den_j), evaluated in log space so that
// individually huge factors cancel.
//
// Pole convention (common-epsilon limit): every argument inside the guard
// radius of a nonpositive integer -k is treated as -k + eps with one shared
// eps -> 0.  Each numerator pole contributes a factor (-1)^k / k! and a
// simple 1/eps; each denominator pole contributes (-1)^m * m! and a factor
// eps.  More denominator poles than numerator poles gives exactly 0, the
// balanced case gives the finite limit, and an excess of numerator poles is
// a genuine pole of the ratio and is rejected.
inline Scalar gamma_ratio(const std::vector<Scalar>& nums,
                          const std::vector<Scalar>& dens) {
  for (Scalar z : nums) detail::require_finite(z, "gamma_ratio numerator");
  for (Scalar z : dens) detail::require_finite(z, "gamma_ratio denominator");

  auto pole_index = [](Scalar z) {
    // Index k of the pole at -k, valid only when near_nonpositive_integer.
    return static_cast<long>(std::llround(-z.real()));
  };

  int num_poles = 0, den_poles = 0;
  double residue = 1.0;  // product of the (-1)^k/k! and (-1)^m m! factors
  Scalar log_sum(0.0, 0.0);

  for (Scalar z : nums) {
    if (near_nonpositive_integer(z)) {
      ++num_poles;
      long k = pole_index(z);
      double f = 1.0;
      for (long j = 2; j <= k; ++j) f *= static_cast<double>(j);
      residue *= (k % 2 == 0 ? 1.0 : -1.0) / f;
    } else {
      log_sum += log_gamma(z);
    }
  }
  for (Scalar z : dens) {
    if (near_nonpositive_integer(z)) {
      ++den_poles;
      long m = pole_index(z);
      double f = 1.0;
      for (long j = 2; j <= m; ++j) f *= static_cast<double>(j);
      residue *= (m % 2 == 0 ? 1.0 : -1.0) * f;
    } else {
      log_sum -= log_gamma(z);
    }
  }

  if (num_poles > den_poles)
    throw Error(ErrorKind::gamma_ratio_pole, "gamma ratio pole");
  if (den_poles > num_poles) return Scalar(0.0, 0.0);

  Scalar result = std::exp(log_sum) * residue;
  if (!is_finite(result))
    throw Error(ErrorKind::overflow, "gamma ratio overflow");
  return result;
}

}  // namespace hker
