#pragma once

// Generalized hypergeometric series pFq and the handful of special
// evaluations needed elsewhere in the library:
//
//   * hyp_pfq            -- one generic term-recurrence engine; 1F1, 1F2,
//                           0F1 and 2F1 inside the unit disk are all thin
//                           wrappers over it
//   * hyp2f1_terminating -- 2F1(-m, b; c; z), an exact degree-m polynomial
//   * hyp2f1_at_one      -- 2F1(a, b; c; 1) summed from its own terms; the
//                           tail decays like n^-(s+1), s = c-a-b, so partial
//                           sums at N, 2N, 4N, ... are Richardson-combined
//                           to strip the n^-s, n^-(s+1), ... error terms
//   * hyp2f1_at_minus_one-- 2F1(a, b; c; -1); repeated pairwise averaging of
//                           consecutive partial sums (Euler-style) collapses
//                           the alternating tail to rounding level
//   * gauss_sum_closed   -- Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))
//   * kummer_sum_closed  -- Gamma(1+a/2) Gamma(1+a-b)
//                           / (Gamma(1+a) Gamma(1+a/2-b))
//
// The z = +-1 evaluators exist so that the closed forms above can be checked
// against the series itself: plain truncation of an n^-(s+1) tail needs ~1e16
// terms for 1e-8 accuracy at s = 1/2, which is not a feasible test.  Both
// accelerators work purely on partial sums of the ordinary terms, so they
// share no code or math with the Gamma route they are used to verify.

#include <cstddef>
#include <vector>

#include "hker/gamma.hpp"
#include "hker/scalar.hpp"

namespace hker {

// sum_n (prod_i (a_i)_n / prod_j (b_j)_n) z^n / n! with the term recurrence
//   term_{n+1} = term_n * prod(a_i + n) / prod(b_j + n) * z / (n + 1).
//
// terms_used counts summed terms including the leading 1.  A numerator
// parameter at a nonpositive integer terminates the series exactly (est_tail
// 0); a denominator parameter within the pole guard of a nonpositive integer
// is an error.  Term overflow ends the sum with converged = false.
inline SeriesValue hyp_pfq(const std::vector<Scalar>& nums,
                           const std::vector<Scalar>& dens, Scalar z,
                           const ToleranceSpec& tol = {}) {
  tol.validate();
  for (Scalar a : nums) detail::require_finite(a, "pFq numerator parameter");
  for (Scalar b : dens) detail::require_finite(b, "pFq denominator parameter");
  detail::require_finite(z, "pFq argument");

  detail::KahanSum sum;
  sum.add(Scalar(1.0, 0.0));
  Scalar term(1.0, 0.0);
  std::size_t used = 1;
  int small = 0;
  double last_mag = 1.0;

  for (std::size_t n = 0; used < tol.max_terms; ++n) {
    Scalar num(1.0, 0.0);
    for (Scalar a : nums) num *= a + static_cast<double>(n);
    if (num == Scalar(0.0, 0.0))
      return {sum.value(), used, 0.0, true};  // terminating series
    for (Scalar b : dens) {
      if (std::abs(b + static_cast<double>(n)) <= pole_guard_radius)
        throw Error(ErrorKind::series_pole,
                    "series pole: denominator parameter " +
                        detail::fmt_scalar(b) + " hits zero at term " +
                        std::to_string(n + 1));
    }
    Scalar den(1.0, 0.0);
    for (Scalar b : dens) den *= b + static_cast<double>(n);
    term *= num / den * z / static_cast<double>(n + 1);
    if (!is_finite(term))
      return {sum.value(), used, std::numeric_limits<double>::max(), false};
    sum.add(term);
    ++used;
    last_mag = std::abs(term);
    double threshold = tol.rel_tol * std::abs(sum.value()) + tol.abs_tol;
    if (last_mag <= threshold) {
      ++small;
      if (small >= tol.consecutive_small && 2.0 * last_mag <= threshold)
        return {sum.value(), used, 2.0 * last_mag, true};
    } else {
      small = 0;
    }
  }
  return {sum.value(), used, 2.0 * last_mag, false};
}

// 2F1(-m, b; c; z) = sum_{n=0}^{m} (-m)_n (b)_n / ((c)_n n!) z^n, exact up to
// rounding.  The result may overflow for extreme z; callers that feed large z
// check the outcome.  c within the pole guard of {0, -1, ..., -(m-1)} is a
// pole of a coefficient that is actually used and is rejected.
inline Scalar hyp2f1_terminating(std::size_t m, Scalar b, Scalar c, Scalar z) {
  detail::require_finite(b, "2F1 parameter b");
  detail::require_finite(c, "2F1 parameter c");
  detail::require_finite(z, "2F1 argument");
  detail::KahanSum sum;
  sum.add(Scalar(1.0, 0.0));
  Scalar term(1.0, 0.0);
  for (std::size_t n = 0; n < m; ++n) {
    Scalar cf = c + static_cast<double>(n);
    if (std::abs(cf) <= pole_guard_radius)
      throw Error(ErrorKind::terminating_series_pole,
                  "terminating series pole: c=" + detail::fmt_scalar(c) +
                      " hits zero at term " + std::to_string(n + 1));
    double neg = -static_cast<double>(m) + static_cast<double>(n);
    term *= neg * (b + static_cast<double>(n)) /
            (cf * static_cast<double>(n + 1)) * z;
    sum.add(term);
  }
  return sum.value();
}

namespace detail {

// Partial sums of the 2F1 terms at z = +-1, taken at the checkpoints in
// `points` (strictly increasing term counts).  Shared by both accelerators.
inline std::vector<Scalar> partial_sums_2f1(Scalar a, Scalar b, Scalar c,
                                            double z,
                                            const std::vector<std::size_t>& points) {
  KahanSum sum;
  sum.add(Scalar(1.0, 0.0));
  Scalar term(1.0, 0.0);
  std::vector<Scalar> out;
  std::size_t next = 0;
  std::size_t total = points.back();
  for (std::size_t n = 0; n + 1 < total; ++n) {
    if (std::abs(c + static_cast<double>(n)) <= pole_guard_radius)
      throw Error(ErrorKind::series_pole,
                  "series pole: denominator parameter " + fmt_scalar(c) +
                      " hits zero at term " + std::to_string(n + 1));
    term *= (a + static_cast<double>(n)) * (b + static_cast<double>(n)) /
            ((c + static_cast<double>(n)) * static_cast<double>(n + 1)) * z;
    sum.add(term);
    if (next < points.size() && n + 2 == points[next]) {
      out.push_back(sum.value());
      ++next;
    }
  }
  while (out.size() < points.size()) out.push_back(sum.value());
  return out;
}

}  // namespace detail

// 2F1(a, b; c; 1) from its own terms.  Convergent only for Re(c-a-b) > 0.
//
// The partial-sum error at N terms expands as alpha N^-s + beta N^-(s+1) + ..
// with s = c-a-b.  Partial sums are taken at N0 * 2^j, j = 0..J, and each
// Richardson stage i eliminates the N^-(s+i) term via
//   E'_j = (E_{j+1} - theta_i E_j) / (1 - theta_i),  theta_i = 2^-(s+i).
// N0 = 128, J = 6 keeps the whole ladder inside the default 10000-term
// budget and reaches ~5e-14 relative error at s as low as 0.3.
inline SeriesValue hyp2f1_at_one(Scalar a, Scalar b, Scalar c,
                                 const ToleranceSpec& tol = {}) {
  tol.validate();
  detail::require_finite(a, "2F1 parameter a");
  detail::require_finite(b, "2F1 parameter b");
  detail::require_finite(c, "2F1 parameter c");
  Scalar s = c - a - b;
  if (s.real() <= 0.0)
    throw Error(ErrorKind::series_domain,
                "series at z=1 requires Re(c-a-b) > 0");

  std::size_t n0 = 128;
  int levels = 6;
  while (n0 << levels > tol.max_terms && levels > 1) --levels;
  std::vector<std::size_t> points;
  for (int j = 0; j <= levels; ++j) points.push_back(n0 << j);
  std::vector<Scalar> e = detail::partial_sums_2f1(a, b, c, 1.0, points);

  std::vector<Scalar> prev = e;
  for (int i = 0; i < levels; ++i) {
    Scalar theta = std::exp(-(s + static_cast<double>(i)) * M_LN2);
    prev = e;
    std::vector<Scalar> next(e.size() - 1);
    for (std::size_t j = 0; j + 1 < e.size(); ++j)
      next[j] = (e[j + 1] - theta * e[j]) / (1.0 - theta);
    e = std::move(next);
  }

  Scalar value = e[0];
  // The extrapolant difference can flatter itself once rounding noise
  // dominates; floor the estimate at the noise amplified by the ladder.
  double est = std::abs(value - prev[1]);
  double floor_est = 512.0 * std::numeric_limits<double>::epsilon() *
                     std::abs(value);
  if (est < floor_est) est = floor_est;
  bool conv = est <= tol.rel_tol * std::abs(value) + tol.abs_tol;
  return {value, points.back(), est, conv};
}

// 2F1(a, b; c; -1) from its own terms.  Convergent (conditionally) for
// Re(c-a-b) > -1.  The tail alternates with an algebraic envelope, so K
// rounds of pairwise averaging over a window of K+1 consecutive partial sums
// damp it geometrically; N0 = 2000, K = 12 reaches rounding level for the
// parameter ranges used here.
inline SeriesValue hyp2f1_at_minus_one(Scalar a, Scalar b, Scalar c,
                                       const ToleranceSpec& tol = {}) {
  tol.validate();
  detail::require_finite(a, "2F1 parameter a");
  detail::require_finite(b, "2F1 parameter b");
  detail::require_finite(c, "2F1 parameter c");
  if ((c - a - b).real() <= -1.0)
    throw Error(ErrorKind::series_domain,
                "series at z=-1 requires Re(c-a-b) > -1");

  const int k = 12;
  std::size_t n0 = 2000;
  if (n0 + k > tol.max_terms)
    n0 = tol.max_terms > static_cast<std::size_t>(k) + 64
             ? tol.max_terms - k - 1
             : 64;
  std::vector<std::size_t> points;
  for (int i = 0; i <= k; ++i) points.push_back(n0 + static_cast<std::size_t>(i));
  std::vector<Scalar> w = detail::partial_sums_2f1(a, b, c, -1.0, points);

  std::vector<Scalar> prev = w;
  for (int pass = 0; pass < k; ++pass) {
    prev = w;
    std::vector<Scalar> next(w.size() - 1);
    for (std::size_t j = 0; j + 1 < w.size(); ++j)
      next[j] = 0.5 * (w[j] + w[j + 1]);
    w = std::move(next);
  }

  Scalar value = w[0];
  double est = 0.5 * std::abs(prev[0] - prev[1]);
  double floor_est =
      16.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
  if (est < floor_est) est = floor_est;
  bool conv = est <= tol.rel_tol * std::abs(value) + tol.abs_tol;
  return {value, points.back(), est, conv};
}

// Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)), the closed form of
// 2F1(a, b; c; 1).  Valid for Re(c-a-b) > 0 with c off the Gamma poles.
inline Scalar gauss_sum_closed(Scalar a, Scalar b, Scalar c) {
  detail::require_finite(a, "gauss parameter a");
  detail::require_finite(b, "gauss parameter b");
  detail::require_finite(c, "gauss parameter c");
  Scalar s = c - a - b;
  if (s.real() <= 0.0 || near_nonpositive_integer(c) ||
      near_nonpositive_integer(s))
    throw Error(ErrorKind::gauss_domain, "gauss domain violation");
  return gamma_ratio({c, s}, {c - a, c - b});
}

// Gamma(1+a/2) Gamma(1+a-b) / (Gamma(1+a) Gamma(1+a/2-b)), the closed form
// of 2F1(a, b; 1+a-b; -1).
inline Scalar kummer_sum_closed(Scalar a, Scalar b) {
  detail::require_finite(a, "kummer parameter a");
  detail::require_finite(b, "kummer parameter b");
  Scalar n1 = 1.0 + 0.5 * a;
  Scalar n2 = 1.0 + a - b;
  Scalar d1 = 1.0 + a;
  Scalar d2 = 1.0 + 0.5 * a - b;
  if (near_nonpositive_integer(n1) || near_nonpositive_integer(n2) ||
      near_nonpositive_integer(d1) || near_nonpositive_integer(d2))
    throw Error(ErrorKind::kummer_domain, "kummer domain violation");
  return gamma_ratio({n1, n2}, {d1, d2});
}

}  // namespace hker
