#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hker/humbert.hpp"
#include "reference_values.hpp"

using hker::AutoResult;
using hker::Error;
using hker::EvalPath;
using hker::Phi2Params;
using hker::Psi2Params;
using hker::Scalar;
using hker::SeriesValue;
using hker::ToleranceSpec;

namespace {

double rel_err(Scalar got, Scalar want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace

TEST_CASE("phi2 reference point, both routes", "[phi2]") {
  Phi2Params p{{0.5, 0.0}, {0.25, 0.0}, {1.5, 0.0}};
  SeriesValue direct = hker::phi2_direct(p, {0.3, 0.0}, {0.7, 0.0});
  SeriesValue f21 = hker::phi2_f21_series(p, {0.3, 0.0}, {0.7, 0.0});
  CHECK(direct.converged);
  CHECK(f21.converged);
  CHECK(rel_err(direct.value, {ref::phi2_point, 0.0}) < 1e-14);
  CHECK(rel_err(f21.value, {ref::phi2_point, 0.0}) < 1e-14);
}

TEST_CASE("phi2 complex arguments", "[phi2]") {
  Phi2Params p{{0.5, 0.0}, {0.25, 0.0}, {1.5, 0.0}};
  Scalar want{ref::phi2_cplx_re, ref::phi2_cplx_im};
  CHECK(rel_err(hker::phi2_direct(p, {0.3, 0.1}, {0.7, -0.2}).value, want) <
        1e-13);
  CHECK(rel_err(hker::phi2_f21_series(p, {0.3, 0.1}, {0.7, -0.2}).value,
                want) < 1e-13);
}

TEST_CASE("phi2 at the origin is exactly 1", "[phi2]") {
  Phi2Params p{{1.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  CHECK(hker::phi2_direct(p, {0.0, 0.0}, {0.0, 0.0}).value == Scalar(1.0, 0.0));
  CHECK(hker::phi2_f21_series(p, {0.0, 0.0}, {0.0, 0.0}).value ==
        Scalar(1.0, 0.0));
  AutoResult r = hker::phi2_auto(p, {0.0, 0.0}, {0.0, 0.0});
  CHECK(r.value.value == Scalar(1.0, 0.0));
}

TEST_CASE("phi2 x=0 falls back to the single confluent series", "[phi2]") {
  Phi2Params p{{0.5, 0.0}, {0.75, 0.0}, {1.25, 0.0}};
  SeriesValue via_phi2 = hker::phi2_f21_series(p, {0.0, 0.0}, {0.8, 0.0});
  SeriesValue direct_1f1 = hker::hyp_pfq({p.b}, {p.c}, {0.8, 0.0});
  // Same code path, so exact agreement is required, not just closeness.
  CHECK(via_phi2.value == direct_1f1.value);
  CHECK(rel_err(via_phi2.value, {ref::f11_point, 0.0}) < 1e-14);
}

TEST_CASE("phi2 rejects c at a nonpositive integer", "[phi2]") {
  Phi2Params p{{1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_MATCHES(hker::phi2_direct(p, {0.1, 0.0}, {0.1, 0.0}), Error,
                       Catch::Matchers::Message("c at nonpositive integer"));
  Phi2Params q{{1.0, 0.0}, {1.0, 0.0}, {-2.0 + 1e-9, 0.0}};
  CHECK_THROWS_AS(hker::phi2_f21_series(q, {0.1, 0.0}, {0.1, 0.0}), Error);
}

TEST_CASE("phi2_f21_series rejects nonpositive integer a", "[phi2]") {
  Phi2Params p{{-2.0, 0.0}, {1.0, 0.0}, {1.5, 0.0}};
  CHECK_THROWS_MATCHES(
      hker::phi2_f21_series(p, {0.5, 0.0}, {0.25, 0.0}), Error,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::StartsWith("terminating series pole")));
}

TEST_CASE("phi2 equal-argument reduction", "[phi2][reduction]") {
  // V(1, 1; 2; x, x) = 1F1(2; 2; x) = e^x
  Phi2Params p{{1.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  SeriesValue r = hker::phi2_equal_args(p, {0.5, 0.0});
  CHECK(rel_err(r.value, {ref::exp_half, 0.0}) < 1e-14);
  SeriesValue d = hker::phi2_direct(p, {0.5, 0.0}, {0.5, 0.0});
  CHECK(rel_err(d.value, r.value) < 1e-13);
}

TEST_CASE("phi2 antisymmetric reduction", "[phi2][reduction]") {
  // V(a, a; c; x, -x) vs 1F2 form at a handful of off-tie points
  for (double a : {0.35, 1.1, 1.9}) {
    for (double x : {0.3, -0.8, 1.4}) {
      Phi2Params p{{a, 0.0}, {a, 0.0}, {1.7, 0.0}};
      SeriesValue lhs = hker::phi2_direct(p, {x, 0.0}, {-x, 0.0});
      SeriesValue rhs = hker::phi2_antisym({a, 0.0}, {1.7, 0.0}, {x, 0.0});
      CHECK(rel_err(lhs.value, rhs.value) < 1e-13);
    }
  }
}

TEST_CASE("phi2 antisymmetric reduction at c=2a", "[phi2][reduction]") {
  // V(1, 1; 2; x, -x) = 0F1(; 1.5; x^2/4) = sinh(x)/x
  SeriesValue r = hker::phi2_antisym_2a({1.0, 0.0}, {0.6, 0.0});
  CHECK(rel_err(r.value, {ref::f01_sinh, 0.0}) < 1e-14);
  Phi2Params p{{1.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  SeriesValue d = hker::phi2_direct(p, {0.6, 0.0}, {-0.6, 0.0});
  CHECK(rel_err(d.value, r.value) < 1e-13);
}

TEST_CASE("phi2_auto dispatch", "[phi2][auto]") {
  Phi2Params p{{0.5, 0.0}, {0.25, 0.0}, {1.5, 0.0}};

  AutoResult tie = hker::phi2_auto(p, {0.4, 0.0}, {0.4, 0.0});
  CHECK(tie.path == EvalPath::equal_args);

  Phi2Params eq{{0.7, 0.0}, {0.7, 0.0}, {1.5, 0.0}};
  AutoResult anti = hker::phi2_auto(eq, {0.4, 0.0}, {-0.4, 0.0});
  CHECK(anti.path == EvalPath::antisym);

  AutoResult axis = hker::phi2_auto(p, {0.0, 0.0}, {0.9, 0.0});
  CHECK(axis.path == EvalPath::axis);

  AutoResult generic = hker::phi2_auto(p, {0.8, 0.0}, {0.3, 0.0});
  CHECK(generic.path == EvalPath::f21_series);

  // |y| > |x|: the roles swap internally, result must match direct.
  AutoResult swapped = hker::phi2_auto(p, {0.3, 0.0}, {0.7, 0.0});
  CHECK(swapped.path == EvalPath::f21_series);
  CHECK(rel_err(swapped.value.value, {ref::phi2_point, 0.0}) < 1e-14);

  // Nonpositive integer a breaks the f21 route; auto falls back to direct.
  Phi2Params neg{{-1.0, 0.0}, {0.25, 0.0}, {1.5, 0.0}};
  AutoResult fallback = hker::phi2_auto(neg, {0.8, 0.0}, {0.3, 0.0});
  CHECK(fallback.path == EvalPath::direct);
  CHECK(fallback.value.converged);
}

TEST_CASE("phi2_auto agrees with both explicit routes", "[phi2][auto]") {
  Phi2Params p{{1.2, 0.0}, {0.4, 0.0}, {2.5, 0.0}};
  for (double x : {0.9, -1.2}) {
    for (double y : {0.25, -0.55}) {
      AutoResult r = hker::phi2_auto(p, {x, 0.0}, {y, 0.0});
      SeriesValue d = hker::phi2_direct(p, {x, 0.0}, {y, 0.0});
      CHECK(r.value.converged);
      CHECK(rel_err(r.value.value, d.value) < 1e-13);
    }
  }
}

TEST_CASE("psi2 reference points, both routes", "[psi2]") {
  Psi2Params p{{0.5, 0.0}, {1.25, 0.0}, {1.75, 0.0}};
  SeriesValue direct = hker::psi2_direct(p, {0.3, 0.0}, {0.2, 0.0});
  SeriesValue f21 = hker::psi2_f21_series(p, {0.3, 0.0}, {0.2, 0.0});
  CHECK(direct.converged);
  CHECK(f21.converged);
  CHECK(rel_err(direct.value, {ref::psi2_point, 0.0}) < 1e-14);
  CHECK(rel_err(f21.value, {ref::psi2_point, 0.0}) < 1e-14);

  Psi2Params q{{1.0, 0.0}, {2.0, 0.0}, {2.0, 0.0}};
  CHECK(rel_err(hker::psi2_direct(q, {0.25, 0.0}, {0.1, 0.0}).value,
                {ref::psi2_point2, 0.0}) < 1e-14);
  CHECK(rel_err(hker::psi2_f21_series(q, {0.25, 0.0}, {0.1, 0.0}).value,
                {ref::psi2_point2, 0.0}) < 1e-14);
}

TEST_CASE("psi2 validates b and c", "[psi2]") {
  Psi2Params p{{1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};
  CHECK_THROWS_MATCHES(hker::psi2_direct(p, {0.1, 0.0}, {0.1, 0.0}), Error,
                       Catch::Matchers::Message("b at nonpositive integer"));
  Psi2Params q{{1.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}};
  CHECK_THROWS_MATCHES(hker::psi2_f21_series(q, {0.1, 0.0}, {0.1, 0.0}), Error,
                       Catch::Matchers::Message("c at nonpositive integer"));
}

TEST_CASE("psi2 x=0 falls back to the single confluent series", "[psi2]") {
  Psi2Params p{{0.75, 0.0}, {2.0, 0.0}, {1.25, 0.0}};
  SeriesValue via_psi2 = hker::psi2_f21_series(p, {0.0, 0.0}, {0.8, 0.0});
  SeriesValue direct_1f1 = hker::hyp_pfq({p.a}, {p.c}, {0.8, 0.0});
  CHECK(via_psi2.value == direct_1f1.value);
  CHECK(rel_err(via_psi2.value, {ref::f11_point, 0.0}) < 1e-14);
}

TEST_CASE("psi2_auto dispatch and agreement", "[psi2][auto]") {
  Psi2Params p{{0.5, 0.0}, {1.25, 0.0}, {1.75, 0.0}};
  AutoResult r = hker::psi2_auto(p, {0.3, 0.0}, {0.2, 0.0});
  CHECK(r.path == EvalPath::f21_series);
  CHECK(rel_err(r.value.value, {ref::psi2_point, 0.0}) < 1e-14);

  AutoResult axis = hker::psi2_auto(p, {0.0, 0.0}, {0.7, 0.0});
  CHECK(axis.path == EvalPath::axis);

  // Role swap for |y| > |x| uses the (b,x) <-> (c,y) symmetry.
  AutoResult swapped = hker::psi2_auto(p, {0.2, 0.0}, {0.9, 0.0});
  SeriesValue d = hker::psi2_direct(p, {0.2, 0.0}, {0.9, 0.0});
  CHECK(rel_err(swapped.value.value, d.value) < 1e-13);
}

TEST_CASE("converged results honor the tail bound", "[phi2][psi2][property]") {
  ToleranceSpec tol;
  Phi2Params p{{0.5, 0.0}, {0.25, 0.0}, {1.5, 0.0}};
  Psi2Params q{{0.5, 0.0}, {1.25, 0.0}, {1.75, 0.0}};
  for (double x : {-1.5, -0.4, 0.2, 1.0}) {
    for (double y : {-0.9, 0.3, 1.3}) {
      for (const SeriesValue& r :
           {hker::phi2_direct(p, {x, 0.0}, {y, 0.0}, tol),
            hker::phi2_f21_series(p, {x, 0.0}, {y, 0.0}, tol),
            hker::psi2_direct(q, {x, 0.0}, {y, 0.0}, tol),
            hker::psi2_f21_series(q, {x, 0.0}, {y, 0.0}, tol)}) {
        REQUIRE(r.converged);
        CHECK(r.est_tail <= tol.rel_tol * std::abs(r.value) + tol.abs_tol);
      }
    }
  }
}

TEST_CASE("phi2 direct handles moderately large arguments", "[phi2]") {
  Phi2Params p{{0.5, 0.0}, {0.25, 0.0}, {1.5, 0.0}};
  SeriesValue r = hker::phi2_direct(p, {2.0, 0.0}, {-2.0, 0.0});
  SeriesValue f = hker::phi2_f21_series(p, {2.0, 0.0}, {-2.0, 0.0});
  CHECK(r.converged);
  CHECK(f.converged);
  CHECK(rel_err(r.value, f.value) < 1e-12);
}
