#pragma once

// Rising factorials (a)_n = a (a+1) ... (a+n-1) and the shifted form that
// turns a difference of indices into a product of two of them.

#include <cstddef>

#include "hker/scalar.hpp"

namespace hker {

// (a)_n by direct product; (a)_0 = 1.  Exact for small integer inputs up to
// double rounding.  Overflow is reported rather than returned.
inline Scalar pochhammer(Scalar a, std::size_t n) {
  detail::require_finite(a, "pochhammer argument");
  Scalar p(1.0, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    p *= a + static_cast<double>(j);
    if (!is_finite(p))
      throw Error(ErrorKind::overflow,
                  "pochhammer overflow: a=" + detail::fmt_scalar(a) +
                      " n=" + std::to_string(n));
  }
  return p;
}

// (a)_{m-n} for 0 <= n <= m, computed as (-1)^n (a)_m / (1-a-m)_n without
// forming the difference index.  Requires (1-a-m)_n != 0, i.e. a must not be
// an integer in [m-n+1, m].
inline Scalar pochhammer_shift(Scalar a, std::size_t m, std::size_t n) {
  detail::require_finite(a, "pochhammer_shift argument");
  if (n > m)
    throw Error(ErrorKind::invalid_parameter,
                "pochhammer_shift requires n <= m");
  Scalar denom_base = 1.0 - a - static_cast<double>(m);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(denom_base + static_cast<double>(j)) <= pole_guard_radius)
      throw Error(ErrorKind::series_pole,
                  "pochhammer shift pole: a=" + detail::fmt_scalar(a) +
                      " m=" + std::to_string(m) + " n=" + std::to_string(n));
  }
  Scalar num = pochhammer(a, m);
  Scalar den = pochhammer(denom_base, n);
  Scalar sign = (n % 2 == 0) ? Scalar(1.0, 0.0) : Scalar(-1.0, 0.0);
  Scalar r = sign * num / den;
  if (!is_finite(r))
    throw Error(ErrorKind::overflow,
                "pochhammer overflow: a=" + detail::fmt_scalar(a) +
                    " n=" + std::to_string(m));
  return r;
}

}  // namespace hker
