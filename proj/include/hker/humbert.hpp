#pragma once

// Two-variable confluent hypergeometric series.
//
//   V(a, b; c; x, y) = sum_{m,n} (a)_m (b)_n / (c)_{m+n} * x^m y^n / (m! n!)
//   W(a; b, c; x, y) = sum_{m,n} (a)_{m+n} / ((b)_m (c)_n) * x^m y^n / (m! n!)
//
// Both are entire in x and y.  Each comes with two independent evaluators:
//
//   *_direct      sums the double series along anti-diagonals m + n = N.
//                 The shared index sits on the diagonal, so diagonal N costs
//                 one O(N) inner pass over cached one-dimensional factors.
//
//   *_f21_series  collapses the inner index into a terminating 2F1:
//                   V = sum_m (a)_m / (c)_m * 2F1(-m, b; 1-a-m; y/x) x^m / m!
//                   W = sum_n (a)_n / (b)_n * 2F1(-n, 1-b-n; c; y/x) x^n / n!
//                 These need far fewer outer terms when |y| <= |x| but
//                 require a (resp. b) off the nonpositive integers, where
//                 1-a-m (resp. the inner numerator) would hit a pole.
//
// The two routes share only scalar arithmetic, which is what makes their
// agreement a meaningful cross-check.
//
// Reductions implemented as dedicated evaluators:
//   V(a, b; c; x, x)   = 1F1(a+b; c; x)
//   V(a, a; c; x, -x)  = 1F2(a; c/2, (c+1)/2; x^2/4)
//   V(a, a; 2a; x, -x) = 0F1(; a+1/2; x^2/4)

#include <cstddef>
#include <utility>
#include <vector>

#include "hker/hypergeometric.hpp"
#include "hker/scalar.hpp"

namespace hker {

struct Phi2Params {
  Scalar a, b, c;

  void validate() const {
    detail::require_finite(a, "parameter a");
    detail::require_finite(b, "parameter b");
    detail::require_finite(c, "parameter c");
    if (near_nonpositive_integer(c))
      throw Error(ErrorKind::invalid_parameter, "c at nonpositive integer");
  }
};

struct Psi2Params {
  Scalar a, b, c;

  void validate() const {
    detail::require_finite(a, "parameter a");
    detail::require_finite(b, "parameter b");
    detail::require_finite(c, "parameter c");
    if (near_nonpositive_integer(b))
      throw Error(ErrorKind::invalid_parameter, "b at nonpositive integer");
    if (near_nonpositive_integer(c))
      throw Error(ErrorKind::invalid_parameter, "c at nonpositive integer");
  }
};

// Anti-diagonal evaluation of V.  With u_m = (a)_m x^m / m! and
// v_n = (b)_n y^n / n!, diagonal N contributes
//   D_N = (1 / (c)_N) * sum_{k=0}^{N} u_{N-k} v_k.
// terms_used counts diagonals.  The stopping rule treats |D_N| like a series
// term: convergence after `consecutive_small` small diagonals.
inline SeriesValue phi2_direct(const Phi2Params& p, Scalar x, Scalar y,
                               const ToleranceSpec& tol = {}) {
  tol.validate();
  p.validate();
  detail::require_finite(x, "argument x");
  detail::require_finite(y, "argument y");

  std::vector<Scalar> u{Scalar(1.0, 0.0)};
  std::vector<Scalar> v{Scalar(1.0, 0.0)};
  Scalar invc(1.0, 0.0);
  detail::KahanSum total;
  total.add(Scalar(1.0, 0.0));  // diagonal N = 0
  std::size_t used = 1;
  int small = 0;
  double last_mag = 1.0;

  for (std::size_t n = 1; used < tol.max_terms; ++n) {
    double nd = static_cast<double>(n);
    u.push_back(u[n - 1] * (p.a + (nd - 1.0)) * x / nd);
    v.push_back(v[n - 1] * (p.b + (nd - 1.0)) * y / nd);
    invc /= p.c + (nd - 1.0);
    detail::KahanSum row;
    for (std::size_t k = 0; k <= n; ++k) row.add(u[n - k] * v[k]);
    Scalar diag = invc * row.value();
    if (!is_finite(diag))
      return {total.value(), used, std::numeric_limits<double>::max(), false};
    total.add(diag);
    ++used;
    last_mag = std::abs(diag);
    double threshold = tol.rel_tol * std::abs(total.value()) + tol.abs_tol;
    if (last_mag <= threshold) {
      ++small;
      if (small >= tol.consecutive_small && 2.0 * last_mag <= threshold)
        return {total.value(), used, 2.0 * last_mag, true};
    } else {
      small = 0;
    }
  }
  return {total.value(), used, 2.0 * last_mag, false};
}

// Single-series evaluation of V: outer weight P_m = (a)_m x^m / ((c)_m m!),
// inner factor 2F1(-m, b; 1-a-m; y/x).  x = 0 degenerates to 1F1(b; c; y).
// Requires a off the nonpositive integers; the inner denominator 1-a-m walks
// through them otherwise.  Terms that overflow end the sum unconverged
// rather than polluting it (large |y/x| makes the inner polynomial huge
// before cancellation).
inline SeriesValue phi2_f21_series(const Phi2Params& p, Scalar x, Scalar y,
                                   const ToleranceSpec& tol = {}) {
  tol.validate();
  p.validate();
  detail::require_finite(x, "argument x");
  detail::require_finite(y, "argument y");
  if (x == Scalar(0.0, 0.0)) return hyp_pfq({p.b}, {p.c}, y, tol);
  if (near_nonpositive_integer(p.a))
    throw Error(ErrorKind::terminating_series_pole,
                "terminating series pole: a=" + detail::fmt_scalar(p.a));

  Scalar w = y / x;
  detail::KahanSum sum;
  sum.add(Scalar(1.0, 0.0));  // m = 0: P_0 = F_0 = 1
  Scalar pm(1.0, 0.0);
  std::size_t used = 1;
  int small = 0;
  double last_mag = 1.0;

  for (std::size_t m = 1; used < tol.max_terms; ++m) {
    double md = static_cast<double>(m);
    pm *= (p.a + (md - 1.0)) * x / ((p.c + (md - 1.0)) * md);
    Scalar f = hyp2f1_terminating(m, p.b, 1.0 - p.a - md, w);
    Scalar term = pm * f;
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

// V(a, b; c; x, x) = 1F1(a+b; c; x).
inline SeriesValue phi2_equal_args(const Phi2Params& p, Scalar x,
                                   const ToleranceSpec& tol = {}) {
  p.validate();
  detail::require_finite(x, "argument x");
  return hyp_pfq({p.a + p.b}, {p.c}, x, tol);
}

// V(a, a; c; x, -x) = 1F2(a; c/2, (c+1)/2; x^2/4).
inline SeriesValue phi2_antisym(Scalar a, Scalar c, Scalar x,
                                const ToleranceSpec& tol = {}) {
  Phi2Params{a, a, c}.validate();
  detail::require_finite(x, "argument x");
  return hyp_pfq({a}, {0.5 * c, 0.5 * (c + 1.0)}, 0.25 * x * x, tol);
}

// V(a, a; 2a; x, -x) = 0F1(; a+1/2; x^2/4).
inline SeriesValue phi2_antisym_2a(Scalar a, Scalar x,
                                   const ToleranceSpec& tol = {}) {
  Phi2Params{a, a, 2.0 * a}.validate();
  detail::require_finite(x, "argument x");
  return hyp_pfq({}, {a + 0.5}, 0.25 * x * x, tol);
}

// Anti-diagonal evaluation of W.  The diagonal index carries (a)_{m+n},
// which overflows long before the diagonal itself does, so the diagonal is
// written as
//   D_N = ((a)_N / N!) * sum_{m=0}^{N} C(N, m) * [x^m / (b)_m] [y^{N-m} / (c)_{N-m}]
// with the binomial factor updated multiplicatively inside the row.
inline SeriesValue psi2_direct(const Psi2Params& p, Scalar x, Scalar y,
                               const ToleranceSpec& tol = {}) {
  tol.validate();
  p.validate();
  detail::require_finite(x, "argument x");
  detail::require_finite(y, "argument y");

  std::vector<Scalar> xb{Scalar(1.0, 0.0)};  // x^m / (b)_m
  std::vector<Scalar> yc{Scalar(1.0, 0.0)};  // y^n / (c)_n
  Scalar g(1.0, 0.0);                        // (a)_N / N!
  detail::KahanSum total;
  total.add(Scalar(1.0, 0.0));
  std::size_t used = 1;
  int small = 0;
  double last_mag = 1.0;

  for (std::size_t n = 1; used < tol.max_terms; ++n) {
    double nd = static_cast<double>(n);
    xb.push_back(xb[n - 1] * x / (p.b + (nd - 1.0)));
    yc.push_back(yc[n - 1] * y / (p.c + (nd - 1.0)));
    g *= (p.a + (nd - 1.0)) / nd;
    detail::KahanSum row;
    double binom = 1.0;
    for (std::size_t m = 0; m <= n; ++m) {
      row.add(binom * xb[m] * yc[n - m]);
      binom *= static_cast<double>(n - m) / static_cast<double>(m + 1);
    }
    Scalar diag = g * row.value();
    if (!is_finite(diag))
      return {total.value(), used, std::numeric_limits<double>::max(), false};
    total.add(diag);
    ++used;
    last_mag = std::abs(diag);
    double threshold = tol.rel_tol * std::abs(total.value()) + tol.abs_tol;
    if (last_mag <= threshold) {
      ++small;
      if (small >= tol.consecutive_small && 2.0 * last_mag <= threshold)
        return {total.value(), used, 2.0 * last_mag, true};
    } else {
      small = 0;
    }
  }
  return {total.value(), used, 2.0 * last_mag, false};
}

// Single-series evaluation of W: outer weight P_n = (a)_n x^n / ((b)_n n!),
// inner factor 2F1(-n, 1-b-n; c; y/x).  x = 0 degenerates to 1F1(a; c; y).
inline SeriesValue psi2_f21_series(const Psi2Params& p, Scalar x, Scalar y,
                                   const ToleranceSpec& tol = {}) {
  tol.validate();
  p.validate();
  detail::require_finite(x, "argument x");
  detail::require_finite(y, "argument y");
  if (x == Scalar(0.0, 0.0)) return hyp_pfq({p.a}, {p.c}, y, tol);

  Scalar w = y / x;
  detail::KahanSum sum;
  sum.add(Scalar(1.0, 0.0));
  Scalar pn(1.0, 0.0);
  std::size_t used = 1;
  int small = 0;
  double last_mag = 1.0;

  for (std::size_t n = 1; used < tol.max_terms; ++n) {
    double nd = static_cast<double>(n);
    pn *= (p.a + (nd - 1.0)) * x / ((p.b + (nd - 1.0)) * nd);
    Scalar f = hyp2f1_terminating(n, 1.0 - p.b - nd, p.c, w);
    Scalar term = pn * f;
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

enum class EvalPath { direct, f21_series, equal_args, antisym, axis };

inline const char* to_string(EvalPath p) {
  switch (p) {
    case EvalPath::direct: return "direct";
    case EvalPath::f21_series: return "f21-series";
    case EvalPath::equal_args: return "equal-args";
    case EvalPath::antisym: return "antisym";
    case EvalPath::axis: return "axis";
  }
  return "?";
}

struct AutoResult {
  SeriesValue value;
  EvalPath path = EvalPath::direct;
};

// Dispatch for V.  Ties are matched by exact Scalar equality: the special
// paths exist for callers who construct the tie deliberately, and a
// tolerance here would silently change the function being evaluated.
//   y == x            -> equal-args reduction
//   b == a, y == -x   -> antisymmetric reduction
//   x == 0 or y == 0  -> single confluent series on the axis
//   otherwise         -> f21-series with the larger argument in the x role,
//                        falling back to the anti-diagonal sum if that route
//                        errors out or fails to converge
inline AutoResult phi2_auto(const Phi2Params& p, Scalar x, Scalar y,
                            const ToleranceSpec& tol = {}) {
  p.validate();
  detail::require_finite(x, "argument x");
  detail::require_finite(y, "argument y");
  if (y == x) return {phi2_equal_args(p, x, tol), EvalPath::equal_args};
  if (p.b == p.a && y == -x)
    return {phi2_antisym(p.a, p.c, x, tol), EvalPath::antisym};
  if (x == Scalar(0.0, 0.0))
    return {hyp_pfq({p.b}, {p.c}, y, tol), EvalPath::axis};
  if (y == Scalar(0.0, 0.0))
    return {hyp_pfq({p.a}, {p.c}, x, tol), EvalPath::axis};

  Phi2Params q = p;
  Scalar xx = x, yy = y;
  if (std::abs(y) > std::abs(x)) {  // V is symmetric under (a,x) <-> (b,y)
    std::swap(q.a, q.b);
    std::swap(xx, yy);
  }
  try {
    SeriesValue r = phi2_f21_series(q, xx, yy, tol);
    if (r.converged) return {r, EvalPath::f21_series};
  } catch (const Error&) {
  }
  return {phi2_direct(p, x, y, tol), EvalPath::direct};
}

// Dispatch for W, mirroring phi2_auto.  W is symmetric under
// (b,x) <-> (c,y); both axes reduce to a single confluent series.
inline AutoResult psi2_auto(const Psi2Params& p, Scalar x, Scalar y,
                            const ToleranceSpec& tol = {}) {
  p.validate();
  detail::require_finite(x, "argument x");
  detail::require_finite(y, "argument y");
  if (x == Scalar(0.0, 0.0))
    return {hyp_pfq({p.a}, {p.c}, y, tol), EvalPath::axis};
  if (y == Scalar(0.0, 0.0))
    return {hyp_pfq({p.a}, {p.b}, x, tol), EvalPath::axis};

  Psi2Params q = p;
  Scalar xx = x, yy = y;
  if (std::abs(y) > std::abs(x)) {
    std::swap(q.b, q.c);
    std::swap(xx, yy);
  }
  try {
    SeriesValue r = psi2_f21_series(q, xx, yy, tol);
    if (r.converged) return {r, EvalPath::f21_series};
  } catch (const Error&) {
  }
  return {psi2_direct(p, x, y, tol), EvalPath::direct};
}

}  // namespace hker
