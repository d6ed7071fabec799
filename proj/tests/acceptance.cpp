// Acceptance gate: one line per criterion, exit 0 only if every line is PASS.
//
// Criteria 1-6 and 8 drive the installed CLI binary (via HKER_BIN) exactly as
// a user would; criterion 7 exercises the library contract in-process.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "hker/humbert.hpp"
#include "hker/hypergeometric.hpp"
#include "reference_values.hpp"
#include "subprocess.hpp"

namespace {

int failures = 0;

void report(int k, const std::string& what, bool pass,
            const std::string& detail) {
  std::printf("%s %d: %s (%s)\n", pass ? "PASS" : "FAIL", k, what.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

struct TimedRun {
  testutil::CmdResult result;
  double seconds = 0.0;
};

TimedRun timed(const std::string& args) {
  auto t0 = std::chrono::steady_clock::now();
  TimedRun r;
  r.result = testutil::run_hker(args);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
  return r;
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

// A check command passes when it exits 0 within the time budget.
void check_command(int k, const std::string& what, const std::string& args,
                   double budget_seconds) {
  TimedRun r = timed(args);
  bool pass = r.result.exit_code == 0 && r.seconds < budget_seconds;
  report(k, what, pass,
         "`" + args + "` exit " + std::to_string(r.result.exit_code) + ", " +
             secs(r.seconds));
}

}  // namespace

int main() {
  using hker::Scalar;

  check_command(1, "theorem1 route equivalence",
                "check theorem1 --samples 100 --seed 1 --tol 1e-10", 5.0);
  check_command(2, "gauss closed form at z=1",
                "check gauss --samples 50 --tol 1e-8", 5.0);
  check_command(3, "kummer closed form at z=-1",
                "check kummer --samples 50 --tol 1e-9", 5.0);

  {
    TimedRun eq = timed("check equal-args --samples 50 --tol 1e-10");
    TimedRun an = timed("check antisym --samples 50 --tol 1e-10");
    TimedRun a2 = timed("check antisym-2a --samples 50 --tol 1e-10");
    bool checks = eq.result.exit_code == 0 && an.result.exit_code == 0 &&
                  a2.result.exit_code == 0;
    hker::Phi2Params p{{1.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
    Scalar spot = hker::phi2_equal_args(p, {0.5, 0.0}).value;
    Scalar direct = hker::phi2_direct(p, {0.5, 0.0}, {0.5, 0.0}).value;
    bool spot_ok = std::abs(spot - Scalar(ref::exp_half, 0.0)) < 1e-12 &&
                   std::abs(direct - Scalar(ref::exp_half, 0.0)) < 1e-12;
    report(4, "reduction checks plus the e^{1/2} spot value",
           checks && spot_ok,
           "exits " + std::to_string(eq.result.exit_code) +
               std::to_string(an.result.exit_code) +
               std::to_string(a2.result.exit_code) + ", spot " +
               (spot_ok ? "ok" : "off") + ", " +
               secs(eq.seconds + an.seconds + a2.seconds));
  }

  check_command(5, "psi2 route equivalence",
                "check psi2-b --samples 100 --tol 1e-10", 5.0);

  {
    TimedRun poch = timed("check poch-shift --samples 500 --tol 1e-12");
    TimedRun diag = timed("check diag-reindex --samples 20 --tol 1e-12");
    report(6, "shifted-factorial and reindexing identities",
           poch.result.exit_code == 0 && diag.result.exit_code == 0,
           "exits " + std::to_string(poch.result.exit_code) +
               std::to_string(diag.result.exit_code) + ", " +
               secs(poch.seconds + diag.seconds));
  }

  {
    auto t0 = std::chrono::steady_clock::now();
    bool pole_ok = true;
    hker::Phi2Params bad{{1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
    try {
      hker::phi2_direct(bad, {0.1, 0.0}, {0.1, 0.0});
      pole_ok = false;
    } catch (const hker::Error&) {
    }
    hker::Phi2Params near_pole{{1.0, 0.0}, {1.0, 0.0}, {-2.0 + 5e-9, 0.0}};
    try {
      hker::phi2_f21_series(near_pole, {0.1, 0.0}, {0.1, 0.0});
      pole_ok = false;
    } catch (const hker::Error&) {
    }

    hker::Phi2Params p{{0.5, 0.0}, {0.25, 0.0}, {1.5, 0.0}};
    bool origin_ok =
        hker::phi2_direct(p, {0.0, 0.0}, {0.0, 0.0}).value ==
            Scalar(1.0, 0.0) &&
        hker::phi2_f21_series(p, {0.0, 0.0}, {0.0, 0.0}).value ==
            Scalar(1.0, 0.0);

    Scalar via_phi2 = hker::phi2_f21_series(p, {0.0, 0.0}, {0.8, 0.0}).value;
    Scalar via_1f1 = hker::hyp_pfq({p.b}, {p.c}, {0.8, 0.0}).value;
    bool axis_ok = via_phi2 == via_1f1;

    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report(7, "degenerate-input contract", pole_ok && origin_ok && axis_ok &&
                                               elapsed < 1.0,
           std::string("pole ") + (pole_ok ? "ok" : "bad") + ", origin " +
               (origin_ok ? "ok" : "bad") + ", axis " +
               (axis_ok ? "ok" : "bad") + ", " + secs(elapsed));
  }

  {
    TimedRun first = timed("check all --seed 1");
    TimedRun second = timed("check all --seed 1");
    TimedRun parallel = timed("check all --seed 1 --jobs 4");
    bool exits = first.result.exit_code == 0 &&
                 second.result.exit_code == 0 &&
                 parallel.result.exit_code == 0;
    bool identical = first.result.out == second.result.out &&
                     first.result.out == parallel.result.out;
    report(8, "byte-identical reports across runs and thread counts",
           exits && identical,
           std::string(identical ? "outputs identical" : "outputs differ") +
               ", " +
               secs(first.seconds + second.seconds + parallel.seconds));
  }

  return failures == 0 ? 0 : 1;
}
