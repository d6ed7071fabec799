#pragma once

// Command-line front end.  Three subcommands:
//
//   hker eval  <function>  -- single-point evaluation
//   hker check <identity>  -- randomized identity verification
//   hker table <function>  -- one-variable sweep as CSV/JSON/plain rows
//
// Exit codes are a stable contract: 0 success, 1 identity-check failure,
// 2 invalid input, 3 non-convergence.  Errors are one JSON line on stderr.
// All floats in machine formats use 17 significant digits; "plain" uses 10.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hker/format.hpp"
#include "hker/humbert.hpp"
#include "hker/hypergeometric.hpp"
#include "hker/scalar.hpp"
#include "hker/verify.hpp"

namespace hker {
namespace cli {

// One evaluation, as echoed back to the caller.
struct OutputRecord {
  std::string command;
  std::vector<std::pair<std::string, Scalar>> inputs;  // sorted by name
  std::string method;
  Scalar value{0.0, 0.0};
  std::size_t terms_used = 0;
  double est_tail = 0.0;
  bool converged = false;
  double wall_time_ms = 0.0;
};

// Canonical JSON form.  Field order is fixed; inputs are emitted in sorted
// order so that parse -> re-emit reproduces the bytes exactly.
inline std::string to_json(const OutputRecord& r) {
  detail::JsonWriter w;
  w.begin_object();
  w.field("command", r.command);
  {
    detail::JsonWriter in;
    in.begin_object();
    for (const auto& [k, v] : r.inputs) in.field(k, v);
    in.end_object();
    w.field_raw("inputs", in.str());
  }
  w.field("method", r.method);
  {
    detail::JsonWriter val;
    val.begin_object();
    val.field("re", r.value.real());
    val.field("im", r.value.imag());
    val.end_object();
    w.field_raw("value", val.str());
  }
  w.field_uint("terms_used", r.terms_used);
  w.field("est_tail", r.est_tail);
  w.field("converged", r.converged);
  w.field("wall_time_ms", r.wall_time_ms);
  w.end_object();
  return w.str();
}

inline OutputRecord parse_output_record(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  OutputRecord r;
  r.command = j.at("command").get<std::string>();
  for (const auto& [k, v] : j.at("inputs").items()) {
    if (v.is_array())
      r.inputs.emplace_back(k, Scalar(v.at(0).get<double>(), v.at(1).get<double>()));
    else
      r.inputs.emplace_back(k, Scalar(v.get<double>(), 0.0));
  }
  std::sort(r.inputs.begin(), r.inputs.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  r.method = j.at("method").get<std::string>();
  r.value = Scalar(j.at("value").at("re").get<double>(),
                   j.at("value").at("im").get<double>());
  r.terms_used = j.at("terms_used").get<std::size_t>();
  r.est_tail = j.at("est_tail").get<double>();
  r.converged = j.at("converged").get<bool>();
  r.wall_time_ms = j.at("wall_time_ms").get<double>();
  return r;
}

namespace detail_cli {

using hker::detail::fmt_double;
using hker::detail::fmt_double_plain;

inline void emit_error(std::ostream& err, const std::string& message) {
  hker::detail::JsonWriter w;
  w.begin_object();
  w.field("error", message);
  w.end_object();
  err << w.str() << '\n';
}

inline double parse_double(const std::string& s, const std::string& what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v))
    throw Error(ErrorKind::invalid_parameter, "invalid " + what + ": " + s);
  return v;
}

// `re` or `re,im`.
inline Scalar parse_scalar(const std::string& s, const std::string& what) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    return Scalar(parse_double(s, what), 0.0);
  return Scalar(parse_double(s.substr(0, comma), what),
                parse_double(s.substr(comma + 1), what));
}

inline std::string fmt_scalar_plain(Scalar v) {
  if (v.imag() == 0.0) return fmt_double_plain(v.real());
  std::string s = fmt_double_plain(v.real());
  s += v.imag() < 0.0 ? " - " : " + ";
  s += fmt_double_plain(std::abs(v.imag()));
  s += "i";
  return s;
}

struct FunctionSignature {
  std::vector<std::string> params;  // flag names, in documentation order
};

inline const std::map<std::string, FunctionSignature>& signatures() {
  static const std::map<std::string, FunctionSignature> table = {
      {"phi2", {{"a", "b", "c", "x", "y"}}}, {"psi2", {{"a", "b", "c", "x", "y"}}},
      {"2f1", {{"a", "b", "c", "z"}}},       {"1f1", {{"a", "b", "z"}}},
      {"1f2", {{"a", "b", "c", "z"}}},       {"0f1", {{"b", "z"}}},
  };
  return table;
}

struct EvalOutcome {
  SeriesValue sv;
  std::string method;
};

// Core dispatch shared by `eval` and `table`.  `params` must contain exactly
// the names required by the function (validated by the caller).
inline EvalOutcome evaluate(const std::string& fn,
                            const std::map<std::string, Scalar>& params,
                            const std::string& method,
                            const ToleranceSpec& tol) {
  auto at = [&](const char* name) { return params.at(name); };

  if (fn == "phi2") {
    Phi2Params p{at("a"), at("b"), at("c")};
    Scalar x = at("x"), y = at("y");
    if (method == "direct") return {phi2_direct(p, x, y, tol), "direct"};
    if (method == "f21-series")
      return {phi2_f21_series(p, x, y, tol), "f21-series"};
    if (method == "auto") {
      AutoResult r = phi2_auto(p, x, y, tol);
      return {r.value, to_string(r.path)};
    }
    // closed: only the reduced forms
    if (y == x) return {phi2_equal_args(p, x, tol), "equal-args"};
    if (p.b == p.a && y == -x) {
      if (p.c == 2.0 * p.a)
        return {phi2_antisym_2a(p.a, x, tol), "antisym-2a"};
      return {phi2_antisym(p.a, p.c, x, tol), "antisym"};
    }
    throw Error(ErrorKind::invalid_parameter,
                "closed form not applicable: phi2 requires y=x or b=a,y=-x");
  }

  if (fn == "psi2") {
    Psi2Params p{at("a"), at("b"), at("c")};
    Scalar x = at("x"), y = at("y");
    if (method == "direct") return {psi2_direct(p, x, y, tol), "direct"};
    if (method == "f21-series")
      return {psi2_f21_series(p, x, y, tol), "f21-series"};
    if (method == "auto") {
      AutoResult r = psi2_auto(p, x, y, tol);
      return {r.value, to_string(r.path)};
    }
    throw Error(ErrorKind::invalid_parameter,
                "closed form not applicable: psi2 has no closed evaluation");
  }

  if (fn == "2f1") {
    Scalar a = at("a"), b = at("b"), c = at("c"), z = at("z");
    if (method == "closed") {
      if (z == Scalar(1.0, 0.0))
        return {{gauss_sum_closed(a, b, c), 0, 0.0, true}, "closed"};
      if (z == Scalar(-1.0, 0.0) && c == 1.0 + a - b)
        return {{kummer_sum_closed(a, b), 0, 0.0, true}, "closed"};
      throw Error(ErrorKind::invalid_parameter,
                  "closed form not applicable: 2f1 requires z=1 or z=-1 with "
                  "c=1+a-b");
    }
    if (method == "auto") {
      // The boundary points get the extrapolated evaluators, which certify
      // ~1e-11 at best; a tighter stopping tolerance is clamped for them.
      if (z == Scalar(1.0, 0.0))
        return {hyp2f1_at_one(a, b, c, hker::detail::relaxed(tol)),
                "series-z1"};
      if (z == Scalar(-1.0, 0.0))
        return {hyp2f1_at_minus_one(a, b, c, hker::detail::relaxed(tol)),
                "series-zm1"};
      return {hyp_pfq({a, b}, {c}, z, tol), "direct"};
    }
    if (method == "direct") return {hyp_pfq({a, b}, {c}, z, tol), "direct"};
    throw Error(ErrorKind::invalid_parameter,
                "method f21-series applies to phi2 and psi2 only");
  }

  // Single confluent series: direct and auto coincide.
  if (method != "direct" && method != "auto")
    throw Error(ErrorKind::invalid_parameter,
                "method " + method + " not applicable to " + fn);
  if (fn == "1f1")
    return {hyp_pfq({at("a")}, {at("b")}, at("z"), tol), "direct"};
  if (fn == "1f2")
    return {hyp_pfq({at("a")}, {at("b"), at("c")}, at("z"), tol), "direct"};
  if (fn == "0f1") return {hyp_pfq({}, {at("b")}, at("z"), tol), "direct"};
  throw Error(ErrorKind::invalid_parameter, "unknown function: " + fn);
}

inline std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ' ';
    s += args[i];
  }
  return s;
}

inline void print_record(std::ostream& os, const OutputRecord& r,
                         const std::string& format) {
  if (format == "json") {
    os << to_json(r) << '\n';
    return;
  }
  if (format == "csv") {
    os << "command,method,value_re,value_im,terms_used,est_tail,converged,"
          "wall_time_ms\n";
    os << '"' << r.command << "\"," << r.method << ','
       << fmt_double(r.value.real()) << ',' << fmt_double(r.value.imag())
       << ',' << r.terms_used << ',' << fmt_double(r.est_tail) << ','
       << (r.converged ? "true" : "false") << ','
       << fmt_double(r.wall_time_ms) << '\n';
    return;
  }
  os << "value: " << fmt_scalar_plain(r.value) << '\n'
     << "method: " << r.method << '\n'
     << "terms_used: " << r.terms_used << '\n'
     << "est_tail: " << fmt_double_plain(r.est_tail) << '\n'
     << "converged: " << (r.converged ? "yes" : "no") << '\n'
     << "wall_time_ms: " << fmt_double_plain(r.wall_time_ms) << '\n';
}

inline void print_report(std::ostream& os, const IdentityReport& rep,
                         const std::string& format, bool with_header) {
  if (format == "json") {
    os << report_to_json(rep) << '\n';
    return;
  }
  if (format == "csv") {
    if (with_header)
      os << "identity_name,samples,seed,check_tol,max_rel_err,failures,pass\n";
    os << rep.identity_name << ',' << rep.samples << ',' << rep.seed << ','
       << fmt_double(rep.check_tol) << ',' << fmt_double(rep.max_rel_err)
       << ',' << rep.failures.size() << ',' << (rep.pass ? "true" : "false")
       << '\n';
    return;
  }
  os << rep.identity_name << ": " << (rep.pass ? "PASS" : "FAIL")
     << "  max_rel_err=" << fmt_double_plain(rep.max_rel_err)
     << "  samples=" << rep.samples << "  seed=" << rep.seed
     << "  tol=" << fmt_double_plain(rep.check_tol) << '\n';
  for (const FailureRecord& f : rep.failures) {
    os << "  sample " << f.sample_index << ": " << f.diagnostic;
    if (f.rel_err) os << " (rel_err=" << fmt_double_plain(*f.rel_err) << ")";
    os << "  point:";
    for (std::size_t i = 0; i < rep.param_names.size() && i < f.point.size();
         ++i)
      os << ' ' << rep.param_names[i] << '=' << fmt_scalar_plain(f.point[i]);
    os << '\n';
  }
}

struct CommonArgs {
  std::string format;
  std::string out_file;
  double tol = 0.0;  // 0: default (possibly from HKER_DEFAULT_TOL)
  long max_terms = 0;
};

}  // namespace detail_cli

// Entry point; argv[0] is the program name.  Streams are injectable for
// in-process testing; the binary passes std::cout/std::cerr.
inline int run(int argc, const char* const* argv, std::ostream& out_stream,
               std::ostream& err_stream) {
  using namespace detail_cli;

  double default_rel_tol = 1e-14;
  if (const char* env = std::getenv("HKER_DEFAULT_TOL")) {
    try {
      default_rel_tol = parse_double(env, "HKER_DEFAULT_TOL");
    } catch (const Error& e) {
      emit_error(err_stream, e.what());
      return 2;
    }
  }

  CLI::App app{"Humbert/hypergeometric series evaluator and identity checker"};
  app.require_subcommand(1);

  const std::vector<std::string> param_names = {"a", "b", "c", "x", "y", "z"};

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand("eval", "evaluate one function value");
  std::string eval_fn, eval_method = "auto";
  CommonArgs eval_common;
  eval_common.format = "json";
  std::map<std::string, std::string> eval_params;
  eval_cmd->add_option("function", eval_fn,
                       "one of phi2, psi2, 2f1, 1f1, 1f2, 0f1")
      ->required();
  for (const std::string& p : param_names)
    eval_cmd->add_option("--" + p, eval_params[p],
                         "parameter " + p + " (re or re,im)");
  eval_cmd->add_option("--method", eval_method, "evaluation method")
      ->check(CLI::IsMember({"direct", "f21-series", "auto", "closed"}));
  eval_cmd->add_option("--format", eval_common.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}));
  eval_cmd->add_option("--tol", eval_common.tol, "relative stopping tolerance");
  eval_cmd->add_option("--max-terms", eval_common.max_terms,
                       "series term budget");
  eval_cmd->add_option("--out", eval_common.out_file, "write output to FILE");

  // ---- check ----
  auto* check_cmd =
      app.add_subcommand("check", "verify an identity on random samples");
  std::string check_name;
  CommonArgs check_common;
  check_common.format = "json";
  long check_samples = -1;
  std::uint64_t check_seed = 1;
  double check_tol = 0.0;
  int check_jobs = 1;
  std::vector<std::string> domain_specs;
  double excl_radius = -1.0;
  bool allow_integers = false, complex_parts = false;
  check_cmd->add_option("identity", check_name, "identity name or 'all'")
      ->required();
  check_cmd->add_option("--samples", check_samples, "samples per identity");
  check_cmd->add_option("--seed", check_seed, "sampling seed");
  check_cmd->add_option("--tol", check_tol, "identity tolerance");
  check_cmd->add_option("--domain", domain_specs,
                        "override a parameter range, name=lo:hi (repeatable)");
  check_cmd->add_option("--exclusion-radius", excl_radius,
                        "integer-lattice exclusion radius");
  check_cmd->add_flag("--allow-integers", allow_integers,
                      "disable integer avoidance for a,b");
  check_cmd->add_flag("--complex", complex_parts,
                      "sample imaginary parts in [-1/2, 1/2]");
  check_cmd->add_option("--jobs", check_jobs, "worker threads");
  check_cmd->add_option("--max-terms", check_common.max_terms,
                        "series term budget");
  check_cmd->add_option("--format", check_common.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}));
  check_cmd->add_option("--out", check_common.out_file, "write output to FILE");

  // ---- table ----
  auto* table_cmd =
      app.add_subcommand("table", "sweep one variable, emit rows");
  std::string table_fn, table_method = "auto";
  CommonArgs table_common;
  table_common.format = "csv";
  std::map<std::string, std::string> table_params;
  std::map<std::string, std::pair<double, double>> sweep_bounds;
  std::map<std::string, std::pair<CLI::Option*, CLI::Option*>> sweep_opts;
  long steps = 0;
  bool y_eq_x = false, y_eq_neg_x = false;
  table_cmd->add_option("function", table_fn,
                        "one of phi2, psi2, 2f1, 1f1, 1f2, 0f1")
      ->required();
  for (const std::string& p : param_names) {
    table_cmd->add_option("--" + p, table_params[p],
                          "fixed parameter " + p + " (re or re,im)");
    auto* from = table_cmd->add_option("--" + p + "-from",
                                       sweep_bounds[p].first,
                                       "sweep start for " + p);
    auto* to = table_cmd->add_option("--" + p + "-to", sweep_bounds[p].second,
                                     "sweep end for " + p);
    sweep_opts[p] = {from, to};
  }
  table_cmd->add_option("--steps", steps, "number of sweep rows (>= 2)")
      ->required();
  table_cmd->add_flag("--y-eq-x", y_eq_x, "tie y = x");
  table_cmd->add_flag("--y-eq-neg-x", y_eq_neg_x, "tie y = -x");
  table_cmd->add_option("--method", table_method, "evaluation method")
      ->check(CLI::IsMember({"direct", "f21-series", "auto", "closed"}));
  table_cmd->add_option("--format", table_common.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}));
  table_cmd->add_option("--tol", table_common.tol,
                        "relative stopping tolerance");
  table_cmd->add_option("--max-terms", table_common.max_terms,
                        "series term budget");
  table_cmd->add_option("--out", table_common.out_file,
                        "write output to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out_stream, err_stream);
  } catch (const CLI::ParseError& e) {
    emit_error(err_stream, e.what());
    return 2;
  }

  auto make_tol = [&](const CommonArgs& c) {
    ToleranceSpec t;
    t.rel_tol = c.tol > 0.0 ? c.tol : default_rel_tol;
    if (c.max_terms > 0) t.max_terms = static_cast<std::size_t>(c.max_terms);
    return t;
  };

  auto with_output = [&](const CommonArgs& c, auto&& body) -> int {
    if (c.out_file.empty()) return body(out_stream);
    std::ofstream f(c.out_file);
    if (!f) {
      emit_error(err_stream, "cannot open output file: " + c.out_file);
      return 2;
    }
    return body(f);
  };

  try {
    if (eval_cmd->parsed()) {
      const auto& sig = signatures();
      auto it = sig.find(eval_fn);
      if (it == sig.end())
        throw Error(ErrorKind::invalid_parameter,
                    "unknown function: " + eval_fn);
      std::map<std::string, Scalar> values;
      for (const std::string& p : it->second.params) {
        auto* opt = eval_cmd->get_option("--" + p);
        if (opt->count() == 0)
          throw Error(ErrorKind::invalid_parameter,
                      "missing parameter --" + p + " for " + eval_fn);
        values[p] = parse_scalar(eval_params[p], "--" + p);
      }
      for (const std::string& p : param_names) {
        if (eval_cmd->get_option("--" + p)->count() > 0 &&
            std::find(it->second.params.begin(), it->second.params.end(), p) ==
                it->second.params.end())
          throw Error(ErrorKind::invalid_parameter,
                      "unexpected parameter --" + p + " for " + eval_fn);
      }
      ToleranceSpec tol = make_tol(eval_common);
      auto t0 = std::chrono::steady_clock::now();
      EvalOutcome oc = evaluate(eval_fn, values, eval_method, tol);
      auto t1 = std::chrono::steady_clock::now();

      OutputRecord rec;
      std::vector<std::string> args(argv + 1, argv + argc);
      rec.command = join_args(args);
      for (const auto& [k, v] : values) rec.inputs.emplace_back(k, v);
      rec.method = oc.method;
      rec.value = oc.sv.value;
      rec.terms_used = oc.sv.terms_used;
      rec.est_tail = oc.sv.est_tail;
      rec.converged = oc.sv.converged;
      rec.wall_time_ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();
      int code = with_output(eval_common, [&](std::ostream& os) {
        print_record(os, rec, eval_common.format);
        return 0;
      });
      if (code != 0) return code;
      return rec.converged ? 0 : 3;
    }

    if (check_cmd->parsed()) {
      DomainOverrides ov;
      for (const std::string& spec : domain_specs) {
        auto eq = spec.find('=');
        auto colon = spec.find(':', eq == std::string::npos ? 0 : eq);
        if (eq == std::string::npos || colon == std::string::npos ||
            eq == 0 || colon < eq)
          throw Error(ErrorKind::invalid_parameter,
                      "malformed domain override: " + spec +
                          " (expected name=lo:hi)");
        std::string pname = spec.substr(0, eq);
        double lo = parse_double(spec.substr(eq + 1, colon - eq - 1),
                                 "domain bound");
        double hi = parse_double(spec.substr(colon + 1), "domain bound");
        ov.ranges[pname] = {lo, hi};
      }
      if (excl_radius >= 0.0) ov.exclusion_radius = excl_radius;
      if (allow_integers) ov.integer_avoidance = false;
      if (complex_parts) ov.complex_parts = true;

      CheckConfig cfg;
      cfg.samples = check_samples;
      cfg.seed = check_seed;
      cfg.check_tol = check_tol;
      cfg.series = make_tol(check_common);
      cfg.jobs = check_jobs;

      std::vector<std::string> names;
      if (check_name == "all") {
        for (const IdentitySpec& s : identity_registry()) names.push_back(s.name);
      } else {
        names.push_back(check_name);
      }
      std::vector<IdentityReport> reports;
      reports.reserve(names.size());
      for (const std::string& n : names)
        reports.push_back(check_identity(n, cfg, ov));
      bool all_pass = true;
      int code = with_output(check_common, [&](std::ostream& os) {
        bool first = true;
        for (const IdentityReport& rep : reports) {
          print_report(os, rep, check_common.format, first);
          first = false;
          if (!rep.pass) all_pass = false;
        }
        return 0;
      });
      if (code != 0) return code;
      return all_pass ? 0 : 1;
    }

    // ---- table ----
    const auto& sig = signatures();
    auto it = sig.find(table_fn);
    if (it == sig.end())
      throw Error(ErrorKind::invalid_parameter, "unknown function: " + table_fn);
    const std::vector<std::string>& fn_params = it->second.params;

    std::string sweep_var;
    for (const std::string& p : param_names) {
      bool has_from = sweep_opts[p].first->count() > 0;
      bool has_to = sweep_opts[p].second->count() > 0;
      if (!has_from && !has_to) continue;
      if (!has_from || !has_to)
        throw Error(ErrorKind::invalid_parameter,
                    "sweep variable " + p + " needs both --" + p +
                        "-from and --" + p + "-to");
      if (!sweep_var.empty())
        throw Error(ErrorKind::invalid_parameter,
                    "conflicting sweep flags: --" + sweep_var + "-from and --" +
                        p + "-from");
      sweep_var = p;
    }
    if (sweep_var.empty())
      throw Error(ErrorKind::invalid_parameter,
                  "no sweep variable: pass --<param>-from and --<param>-to");
    if (std::find(fn_params.begin(), fn_params.end(), sweep_var) ==
        fn_params.end())
      throw Error(ErrorKind::invalid_parameter,
                  "function " + table_fn + " has no parameter " + sweep_var);
    if (steps < 2)
      throw Error(ErrorKind::invalid_parameter, "--steps must be at least 2");
    if (y_eq_x && y_eq_neg_x)
      throw Error(ErrorKind::invalid_parameter,
                  "--y-eq-x conflicts with --y-eq-neg-x");
    bool tie = y_eq_x || y_eq_neg_x;
    if (tie && (table_fn != "phi2" && table_fn != "psi2"))
      throw Error(ErrorKind::invalid_parameter,
                  "tie flags apply to phi2 and psi2 only");
    if (tie && (sweep_var == "y" ||
                table_cmd->get_option("--y")->count() > 0))
      throw Error(ErrorKind::invalid_parameter,
                  "tie flags replace y; do not sweep or fix it");

    std::map<std::string, Scalar> fixed;
    for (const std::string& p : fn_params) {
      if (p == sweep_var) continue;
      if (tie && p == "y") continue;  // derived from x per row
      auto* opt = table_cmd->get_option("--" + p);
      if (opt->count() == 0)
        throw Error(ErrorKind::invalid_parameter,
                    "missing parameter --" + p + " for " + table_fn);
      fixed[p] = parse_scalar(table_params[p], "--" + p);
    }
    for (const std::string& p : param_names) {
      if (table_cmd->get_option("--" + p)->count() > 0 &&
          std::find(fn_params.begin(), fn_params.end(), p) == fn_params.end())
        throw Error(ErrorKind::invalid_parameter,
                    "unexpected parameter --" + p + " for " + table_fn);
    }

    ToleranceSpec tol = make_tol(table_common);
    double lo = sweep_bounds[sweep_var].first;
    double hi = sweep_bounds[sweep_var].second;

    return with_output(table_common, [&](std::ostream& os) {
      if (table_common.format == "csv")
        os << "sweep,value_re,value_im,terms,est_tail,converged\n";
      for (long i = 0; i < steps; ++i) {
        double t = lo + (hi - lo) * static_cast<double>(i) /
                            static_cast<double>(steps - 1);
        std::map<std::string, Scalar> values = fixed;
        values[sweep_var] = Scalar(t, 0.0);
        if (tie) {
          Scalar x = values.at("x");
          values["y"] = y_eq_x ? x : -x;
        }
        EvalOutcome oc = evaluate(table_fn, values, table_method, tol);
        if (table_common.format == "csv") {
          os << fmt_double(t) << ',' << fmt_double(oc.sv.value.real()) << ','
             << fmt_double(oc.sv.value.imag()) << ',' << oc.sv.terms_used
             << ',' << fmt_double(oc.sv.est_tail) << ','
             << (oc.sv.converged ? "true" : "false") << '\n';
        } else if (table_common.format == "json") {
          hker::detail::JsonWriter w;
          w.begin_object();
          w.field("sweep", t);
          {
            hker::detail::JsonWriter val;
            val.begin_object();
            val.field("re", oc.sv.value.real());
            val.field("im", oc.sv.value.imag());
            val.end_object();
            w.field_raw("value", val.str());
          }
          w.field_uint("terms", oc.sv.terms_used);
          w.field("est_tail", oc.sv.est_tail);
          w.field("converged", oc.sv.converged);
          w.end_object();
          os << w.str() << '\n';
        } else {
          os << "sweep=" << fmt_double_plain(t)
             << "  value=" << fmt_scalar_plain(oc.sv.value)
             << "  terms=" << oc.sv.terms_used
             << "  est_tail=" << fmt_double_plain(oc.sv.est_tail)
             << "  converged=" << (oc.sv.converged ? "yes" : "no") << '\n';
        }
      }
      return 0;
    });
  } catch (const Error& e) {
    emit_error(err_stream, e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error(err_stream, e.what());
    return 2;
  }
}

}  // namespace cli
}  // namespace hker
