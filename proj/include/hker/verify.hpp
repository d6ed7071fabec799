#pragma once

// Randomized identity checking.
//
// Each identity pairs two computational routes that share as little code as
// possible; parameters are drawn from a guarded box, both routes are
// evaluated, and the relative gap is compared against a per-identity
// tolerance.  Reports are deterministic functions of (identity, domain,
// samples, seed, tolerances): the sampler derives an independent SplitMix64
// stream per sample index, so the report is byte-identical no matter how
// many worker threads computed it.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hker/format.hpp"
#include "hker/humbert.hpp"
#include "hker/hypergeometric.hpp"
#include "hker/pochhammer.hpp"
#include "hker/scalar.hpp"

namespace hker {

inline constexpr const char* generator_id = "splitmix64-counter";

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; bit-identical everywhere,
// unlike std::uniform_real_distribution.
inline double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// Stream for sample `index` under `seed`.  Offsetting the state by a
// per-index multiple of the SplitMix64 increment gives decorrelated streams
// that can be generated in any order or in parallel.
inline std::uint64_t sample_stream(std::uint64_t seed, std::uint64_t index) {
  return seed + (index + 1) * 0x9E3779B97F4A7C15ull;
}

}  // namespace detail

// How a parameter interacts with the integer lattice during sampling.
//   none  -- any value in range is fine (series arguments)
//   poles -- keep clear of nonpositive integers (denominator parameters)
//   all   -- keep clear of every integer (parameters that shift into
//            pole position inside the identities, like a in (1-a-m)_n)
enum class IntegerGuard { none, poles, all };

struct ParamSpec {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  bool integer = false;  // sample an integer uniformly in [lo, hi]
  IntegerGuard guard = IntegerGuard::none;
};

struct ParamDomain {
  std::vector<ParamSpec> params;
  double exclusion_radius = 0.05;
  bool integer_avoidance = true;   // false downgrades guard `all` to `poles`
  bool complex_parts = false;      // add imaginary parts in [-1/2, 1/2]
  // Cross-parameter constraint; a rejected tuple is redrawn in full.
  std::function<bool(const std::vector<Scalar>&)> accept;
};

// Draw `count` parameter tuples.  Rejection sampling against the lattice
// guards and the acceptance predicate; 1000 consecutive rejections for one
// slot means the constraints exclude essentially the whole box.
inline std::vector<std::vector<Scalar>> sample_params(const ParamDomain& domain,
                                                      std::size_t count,
                                                      std::uint64_t seed) {
  for (const ParamSpec& ps : domain.params) {
    if (!(ps.lo <= ps.hi) || !std::isfinite(ps.lo) || !std::isfinite(ps.hi))
      throw Error(ErrorKind::invalid_parameter,
                  "invalid range for parameter " + ps.name);
  }
  std::vector<std::vector<Scalar>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t state = detail::sample_stream(seed, i);
    int rejects = 0;
    for (;;) {
      std::vector<Scalar> tuple;
      tuple.reserve(domain.params.size());
      bool ok = true;
      for (const ParamSpec& ps : domain.params) {
        double u = detail::uniform01(state);
        Scalar v;
        if (ps.integer) {
          double k = std::floor(ps.lo + u * (ps.hi - ps.lo + 1.0));
          if (k > ps.hi) k = ps.hi;
          v = Scalar(k, 0.0);
        } else {
          double re = ps.lo + u * (ps.hi - ps.lo);
          double im = 0.0;
          if (domain.complex_parts) im = detail::uniform01(state) - 0.5;
          v = Scalar(re, im);
        }
        IntegerGuard g = ps.guard;
        if (g == IntegerGuard::all && !domain.integer_avoidance)
          g = IntegerGuard::poles;
        if (!ps.integer && g != IntegerGuard::none) {
          double k = std::round(v.real());
          bool near = std::abs(v - Scalar(k, 0.0)) <= domain.exclusion_radius;
          if (near && (g == IntegerGuard::all || k <= 0.5)) ok = false;
        }
        tuple.push_back(v);
      }
      if (ok && domain.accept && !domain.accept(tuple)) ok = false;
      if (ok) {
        out.push_back(std::move(tuple));
        break;
      }
      if (++rejects >= 1000)
        throw Error(ErrorKind::domain_too_constrained, "domain too constrained");
    }
  }
  return out;
}

struct FailureRecord {
  std::size_t sample_index = 0;
  std::vector<Scalar> point;
  std::optional<double> rel_err;  // present when both routes produced values
  std::string diagnostic;
};

struct IdentityReport {
  std::string identity_name;
  std::string generator = generator_id;
  std::vector<std::string> param_names;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double check_tol = 0.0;
  double max_rel_err = 0.0;
  std::vector<Scalar> worst_point;  // empty if no sample produced a value
  std::vector<FailureRecord> failures;
  bool pass = false;
};

struct IdentitySpec {
  std::string name;
  std::vector<ParamSpec> params;
  std::size_t default_samples = 50;
  double default_tol = 1e-10;
  std::function<bool(const std::vector<Scalar>&)> accept;
  // Returns the two routes' values for one parameter tuple.
  std::function<std::pair<SeriesValue, SeriesValue>(
      const std::vector<Scalar>&, const ToleranceSpec&)>
      routes;
};

namespace detail {

// Row-major evaluation of V, used only as the second route of the
// reindexing identity.  Sums each fixed-m row over n to (much) higher
// precision than the outer target, then sums rows.
inline SeriesValue phi2_rectangular(const Phi2Params& p, Scalar x, Scalar y,
                                    const ToleranceSpec& tol = {}) {
  tol.validate();
  p.validate();
  require_finite(x, "argument x");
  require_finite(y, "argument y");

  KahanSum total;
  Scalar head(1.0, 0.0);  // (a)_m x^m / (m! (c)_m)
  std::size_t rows = 0;
  int small = 0;
  double last_mag = 1.0;
  for (std::size_t m = 0; rows < tol.max_terms; ++m) {
    KahanSum row;
    Scalar term = head;
    row.add(term);
    int inner_small = 0;
    for (std::size_t k = 1; k < tol.max_terms; ++k) {
      double kd = static_cast<double>(k);
      term *= (p.b + (kd - 1.0)) * y /
              (kd * (p.c + static_cast<double>(m) + kd - 1.0));
      row.add(term);
      double inner_thr =
          0.01 * tol.rel_tol * std::abs(row.value()) + tol.abs_tol;
      if (std::abs(term) <= inner_thr) {
        if (++inner_small >= 2) break;
      } else {
        inner_small = 0;
      }
    }
    Scalar row_value = row.value();
    if (!is_finite(row_value))
      return {total.value(), rows, std::numeric_limits<double>::max(), false};
    total.add(row_value);
    ++rows;
    last_mag = std::abs(row_value);
    double threshold = tol.rel_tol * std::abs(total.value()) + tol.abs_tol;
    if (rows > 1 && last_mag <= threshold) {
      if (++small >= tol.consecutive_small && 2.0 * last_mag <= threshold)
        return {total.value(), rows, 2.0 * last_mag, true};
    } else {
      small = 0;
    }
    double md = static_cast<double>(m);
    head *= (p.a + md) * x / ((md + 1.0) * (p.c + md));
  }
  return {total.value(), rows, 2.0 * last_mag, false};
}

inline SeriesValue as_exact(Scalar v) { return {v, 0, 0.0, true}; }

// The z = +-1 accelerators bottom out near 5e-14 relative accuracy, so their
// convergence flag is judged against a bar they can actually meet; the
// identity tolerance (1e-8/1e-9) stays much looser than this.
inline ToleranceSpec relaxed(const ToleranceSpec& tol) {
  ToleranceSpec t = tol;
  t.rel_tol = std::max(t.rel_tol, 1e-11);
  return t;
}

}  // namespace detail

// All checkable identities, in reporting order.
inline const std::vector<IdentitySpec>& identity_registry() {
  static const std::vector<IdentitySpec> reg = [] {
    std::vector<IdentitySpec> r;
    using Tuple = std::vector<Scalar>;

    r.push_back(IdentitySpec{
        "theorem1",
        {{"a", 0.1, 3.0, false, IntegerGuard::all},
         {"b", 0.1, 3.0, false, IntegerGuard::all},
         {"c", 0.6, 4.0, false, IntegerGuard::poles},
         {"x", -2.0, 2.0, false, IntegerGuard::none},
         {"y", -2.0, 2.0, false, IntegerGuard::none}},
        100,
        1e-10,
        [](const Tuple& t) {
          return std::abs(t[3]) >= 0.05 && std::abs(t[4]) <= std::abs(t[3]);
        },
        [](const Tuple& t, const ToleranceSpec& tol) {
          Phi2Params p{t[0], t[1], t[2]};
          return std::make_pair(phi2_direct(p, t[3], t[4], tol),
                                phi2_f21_series(p, t[3], t[4], tol));
        }});

    r.push_back(IdentitySpec{
        "gauss",
        {{"a", 0.1, 1.0, false, IntegerGuard::all},
         {"b", 0.1, 1.0, false, IntegerGuard::all},
         {"c", 2.5, 4.0, false, IntegerGuard::poles}},
        50,
        1e-8,
        [](const Tuple& t) { return (t[2] - t[0] - t[1]).real() >= 0.3; },
        [](const Tuple& t, const ToleranceSpec& tol) {
          return std::make_pair(
              hyp2f1_at_one(t[0], t[1], t[2], detail::relaxed(tol)),
              detail::as_exact(gauss_sum_closed(t[0], t[1], t[2])));
        }});

    r.push_back(IdentitySpec{
        "kummer",
        {{"a", 0.1, 2.0, false, IntegerGuard::all},
         {"b", 0.1, 0.4, false, IntegerGuard::all}},
        50,
        1e-9,
        nullptr,
        [](const Tuple& t, const ToleranceSpec& tol) {
          Scalar c = 1.0 + t[0] - t[1];
          return std::make_pair(
              hyp2f1_at_minus_one(t[0], t[1], c, detail::relaxed(tol)),
              detail::as_exact(kummer_sum_closed(t[0], t[1])));
        }});

    r.push_back(IdentitySpec{
        "equal-args",
        {{"a", 0.1, 2.0, false, IntegerGuard::none},
         {"b", 0.1, 2.0, false, IntegerGuard::none},
         {"c", 0.6, 4.0, false, IntegerGuard::poles},
         {"x", -1.5, 1.5, false, IntegerGuard::none}},
        50,
        1e-10,
        nullptr,
        [](const Tuple& t, const ToleranceSpec& tol) {
          Phi2Params p{t[0], t[1], t[2]};
          return std::make_pair(phi2_direct(p, t[3], t[3], tol),
                                phi2_equal_args(p, t[3], tol));
        }});

    r.push_back(IdentitySpec{
        "antisym",
        {{"a", 0.1, 2.0, false, IntegerGuard::none},
         {"c", 0.6, 4.0, false, IntegerGuard::poles},
         {"x", -1.5, 1.5, false, IntegerGuard::none}},
        50,
        1e-10,
        [](const Tuple& t) {
          // c/2 and (c+1)/2 feed denominators of the reduced series.
          return !near_nonpositive_integer(0.5 * t[1], 0.05) &&
                 !near_nonpositive_integer(0.5 * (t[1] + 1.0), 0.05);
        },
        [](const Tuple& t, const ToleranceSpec& tol) {
          Phi2Params p{t[0], t[0], t[1]};
          return std::make_pair(phi2_direct(p, t[2], -t[2], tol),
                                phi2_antisym(t[0], t[1], t[2], tol));
        }});

    r.push_back(IdentitySpec{
        "antisym-2a",
        {{"a", 0.1, 2.0, false, IntegerGuard::none},
         {"x", -1.5, 1.5, false, IntegerGuard::none}},
        50,
        1e-10,
        [](const Tuple& t) {
          return !near_nonpositive_integer(2.0 * t[0], 0.05) &&
                 !near_nonpositive_integer(t[0] + 0.5, 0.05);
        },
        [](const Tuple& t, const ToleranceSpec& tol) {
          Phi2Params p{t[0], t[0], 2.0 * t[0]};
          return std::make_pair(phi2_direct(p, t[1], -t[1], tol),
                                phi2_antisym_2a(t[0], t[1], tol));
        }});

    r.push_back(IdentitySpec{
        "psi2-b",
        {{"a", 0.1, 3.0, false, IntegerGuard::all},
         {"b", 0.6, 4.0, false, IntegerGuard::all},
         {"c", 0.6, 4.0, false, IntegerGuard::poles},
         {"x", -2.0, 2.0, false, IntegerGuard::none},
         {"y", -2.0, 2.0, false, IntegerGuard::none}},
        100,
        1e-10,
        [](const Tuple& t) {
          return std::abs(t[3]) >= 0.05 && std::abs(t[4]) <= std::abs(t[3]);
        },
        [](const Tuple& t, const ToleranceSpec& tol) {
          Psi2Params p{t[0], t[1], t[2]};
          return std::make_pair(psi2_direct(p, t[3], t[4], tol),
                                psi2_f21_series(p, t[3], t[4], tol));
        }});

    r.push_back(IdentitySpec{
        "poch-shift",
        {{"a", -3.0, 3.0, false, IntegerGuard::all},
         {"m", 0.0, 20.0, true, IntegerGuard::none},
         {"n", 0.0, 20.0, true, IntegerGuard::none}},
        500,
        1e-12,
        [](const Tuple& t) { return t[2].real() <= t[1].real(); },
        [](const Tuple& t, const ToleranceSpec&) {
          auto m = static_cast<std::size_t>(std::llround(t[1].real()));
          auto n = static_cast<std::size_t>(std::llround(t[2].real()));
          return std::make_pair(detail::as_exact(pochhammer(t[0], m - n)),
                                detail::as_exact(pochhammer_shift(t[0], m, n)));
        }});

    r.push_back(IdentitySpec{
        "diag-reindex",
        {{"a", 0.1, 2.0, false, IntegerGuard::none},
         {"b", 0.1, 2.0, false, IntegerGuard::none},
         {"c", 0.6, 4.0, false, IntegerGuard::poles},
         {"x", -1.0, 1.0, false, IntegerGuard::none},
         {"y", -1.0, 1.0, false, IntegerGuard::none}},
        20,
        1e-12,
        nullptr,
        [](const Tuple& t, const ToleranceSpec& tol) {
          Phi2Params p{t[0], t[1], t[2]};
          return std::make_pair(phi2_direct(p, t[3], t[4], tol),
                                detail::phi2_rectangular(p, t[3], t[4], tol));
        }});

    return r;
  }();
  return reg;
}

inline const IdentitySpec& find_identity(const std::string& name) {
  for (const IdentitySpec& s : identity_registry())
    if (s.name == name) return s;
  throw Error(ErrorKind::unknown_identity, "unknown identity: " + name);
}

struct DomainOverrides {
  std::map<std::string, std::pair<double, double>> ranges;
  std::optional<double> exclusion_radius;
  std::optional<bool> integer_avoidance;
  std::optional<bool> complex_parts;
};

inline ParamDomain build_domain(const IdentitySpec& spec,
                                const DomainOverrides& ov = {}) {
  ParamDomain d;
  d.params = spec.params;
  d.accept = spec.accept;
  for (const auto& [name, range] : ov.ranges) {
    bool found = false;
    for (ParamSpec& ps : d.params) {
      if (ps.name == name) {
        ps.lo = range.first;
        ps.hi = range.second;
        found = true;
        break;
      }
    }
    if (!found)
      throw Error(ErrorKind::invalid_parameter,
                  "unknown parameter '" + name + "' for identity " + spec.name);
  }
  if (ov.exclusion_radius) d.exclusion_radius = *ov.exclusion_radius;
  if (ov.integer_avoidance) d.integer_avoidance = *ov.integer_avoidance;
  if (ov.complex_parts) d.complex_parts = *ov.complex_parts;
  return d;
}

struct CheckConfig {
  long samples = -1;        // -1: per-identity default
  std::uint64_t seed = 1;
  double check_tol = 0.0;   // <= 0: per-identity default
  ToleranceSpec series;     // stopping policy handed to the evaluators
  int jobs = 1;
};

namespace detail {

struct SampleOutcome {
  bool evaluated = false;  // both routes produced converged values
  double rel_err = 0.0;
  std::string diagnostic;  // nonempty on error or non-convergence
};

inline SampleOutcome run_sample(const IdentitySpec& spec,
                                const std::vector<Scalar>& point,
                                const ToleranceSpec& tol) {
  SampleOutcome out;
  try {
    auto [lhs, rhs] = spec.routes(point, tol);
    if (!lhs.converged) {
      out.diagnostic = "lhs did not converge";
      return out;
    }
    if (!rhs.converged) {
      out.diagnostic = "rhs did not converge";
      return out;
    }
    double scale = std::max(
        {std::abs(lhs.value), std::abs(rhs.value), 1e-300});
    out.rel_err = std::abs(lhs.value - rhs.value) / scale;
    out.evaluated = true;
  } catch (const Error& e) {
    out.diagnostic = e.what();
  }
  return out;
}

}  // namespace detail

// Run one identity check.  The report is a pure function of the arguments;
// jobs > 1 only changes who computes which sample.
inline IdentityReport check_identity(const std::string& name,
                                     const CheckConfig& cfg = {},
                                     const DomainOverrides& ov = {}) {
  const IdentitySpec& spec = find_identity(name);
  cfg.series.validate();
  ParamDomain domain = build_domain(spec, ov);
  std::size_t samples = cfg.samples >= 0
                            ? static_cast<std::size_t>(cfg.samples)
                            : spec.default_samples;
  double check_tol = cfg.check_tol > 0.0 ? cfg.check_tol : spec.default_tol;

  std::vector<std::vector<Scalar>> points =
      sample_params(domain, samples, cfg.seed);

  std::vector<detail::SampleOutcome> outcomes(samples);
  int jobs = std::max(1, cfg.jobs);
  if (jobs <= 1 || samples <= 1) {
    for (std::size_t i = 0; i < samples; ++i)
      outcomes[i] = detail::run_sample(spec, points[i], cfg.series);
  } else {
    std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), samples);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < samples; i += workers)
          outcomes[i] = detail::run_sample(spec, points[i], cfg.series);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  IdentityReport rep;
  rep.identity_name = spec.name;
  for (const ParamSpec& ps : domain.params) rep.param_names.push_back(ps.name);
  rep.samples = samples;
  rep.seed = cfg.seed;
  rep.check_tol = check_tol;

  std::size_t worst = samples;  // sentinel: nothing evaluated yet
  for (std::size_t i = 0; i < samples; ++i) {
    const detail::SampleOutcome& oc = outcomes[i];
    if (!oc.evaluated) {
      rep.failures.push_back({i, points[i], std::nullopt, oc.diagnostic});
      continue;
    }
    if (worst == samples || oc.rel_err > rep.max_rel_err) {
      rep.max_rel_err = oc.rel_err;
      worst = i;
    }
    if (oc.rel_err > check_tol)
      rep.failures.push_back({i, points[i], oc.rel_err, "tolerance exceeded"});
  }
  if (worst < samples) rep.worst_point = points[worst];
  rep.pass = rep.failures.empty() && rep.max_rel_err <= check_tol;
  return rep;
}

// Canonical single-line JSON rendering of a report.
inline std::string report_to_json(const IdentityReport& rep) {
  detail::JsonWriter w;
  w.begin_object();
  w.field("identity_name", rep.identity_name);
  w.field("generator", rep.generator);
  w.field_uint("samples", rep.samples);
  w.field_uint("seed", rep.seed);
  w.field("check_tol", rep.check_tol);
  w.field("max_rel_err", rep.max_rel_err);
  {
    // worst_point as a named object in parameter order
    detail::JsonWriter inner;
    inner.begin_object();
    if (!rep.worst_point.empty())
      for (std::size_t i = 0; i < rep.param_names.size(); ++i)
        inner.field(rep.param_names[i], rep.worst_point[i]);
    inner.end_object();
    w.field_raw("worst_point", inner.str());
  }
  w.begin_array("failures");
  for (const FailureRecord& f : rep.failures) {
    detail::JsonWriter inner;
    inner.begin_object();
    inner.field_uint("sample", f.sample_index);
    {
      detail::JsonWriter pt;
      pt.begin_object();
      for (std::size_t i = 0; i < rep.param_names.size() && i < f.point.size();
           ++i)
        pt.field(rep.param_names[i], f.point[i]);
      pt.end_object();
      inner.field_raw("point", pt.str());
    }
    if (f.rel_err) inner.field("rel_err", *f.rel_err);
    inner.field("diagnostic", f.diagnostic);
    inner.end_object();
    w.append_raw(inner.str());
  }
  w.end_array();
  w.field("pass", rep.pass);
  w.end_object();
  return w.str();
}

}  // namespace hker
