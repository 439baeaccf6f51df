#pragma once

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hermbound/checks.hpp"
#include "hermbound/serialize.hpp"

namespace hermbound::cli {

// Exit codes: 0 success, 1 check failure, 2 configuration error,
// 3 numerical failure (non-convergence or a non-finite evaluation).
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

namespace detail {

struct Options {
  std::string preset;
  std::string mixture_json;
  std::vector<int> K;
  double T = 3.0;
  double N_override = 0.0;
  int grid_points = 4001;
  std::string format = "json";
  std::string output;
  double tolerance = 0.10;
  std::string depth = "quick";
  std::string suite;
  bool force_large_n = false;
};

inline GaussianMixture resolve_function(const Options& opt) {
  if (!opt.mixture_json.empty()) return mixture_from_json(opt.mixture_json);
  if (opt.preset.empty() || opt.preset == "trimodal") return trimodal();
  if (opt.preset == "gauss" || opt.preset == "normal") return standard_normal();
  throw std::invalid_argument("unknown preset '" + opt.preset +
                              "' (available: trimodal, gauss)");
}

inline void write_out(const Options& opt, const std::string& text, std::ostream& fallback) {
  if (opt.output.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(opt.output, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file '" + opt.output + "'");
  file << text;
}

inline int require_single_even_k(const Options& opt) {
  if (opt.K.size() != 1)
    throw std::invalid_argument("exactly one --K value is required");
  if (opt.K[0] < 2 || opt.K[0] % 2 != 0)
    throw std::invalid_argument("K must be even and >= 2");
  return opt.K[0];
}

inline std::string bound_json(const Options& opt, const GaussianMixture& mix,
                              const bound::BoundResult& r, double f_variant) {
  JsonWriter w;
  w.begin();
  w.key("command").value("bound");
  w.key("function").raw(to_json(mix));
  w.key("breakdown").raw(to_json(r.breakdown));
  w.key("term_fN_window_variant").value(f_variant);
  w.key("sansone_sum").value(r.sansone_sum);
  w.key("ledger").raw(to_json(r.ledger));
  w.key("coefficients").begin_object();
  for (int i = 0; i < bound::kFunctionalCount; ++i)
    w.key(bound::functional_name(static_cast<bound::Functional>(i))).value(r.table.coeff[i]);
  w.end_object();
  w.key("suspect_summands").begin_array();
  for (const auto& e : bound::coefficient_summands()) {
    if (!e.s.note) continue;
    w.begin_object();
    w.key("functional").value(bound::functional_name(e.id));
    w.key("note").value(e.s.note);
    w.end_object();
  }
  w.end_array();
  w.end();
  std::string out = w.str();
  out += '\n';
  return out;
}

inline std::string bound_csv(const bound::BoundResult& r, double f_variant) {
  std::ostringstream os;
  os << "quantity,value\n";
  os << "K," << r.breakdown.K << "\n";
  os << "n," << r.breakdown.n << "\n";
  os << "N," << format_g9(r.breakdown.N) << "\n";
  os << "T," << format_g9(r.breakdown.T) << "\n";
  os << "term_tail_t," << format_g9(r.breakdown.term_tail_t) << "\n";
  os << "term_tail_omega," << format_g9(r.breakdown.term_tail_omega) << "\n";
  os << "term_fN," << format_g9(r.breakdown.term_fN) << "\n";
  os << "term_sansone," << format_g9(r.breakdown.term_sansone) << "\n";
  os << "total," << format_g9(r.breakdown.total) << "\n";
  os << "term_fN_window_variant," << format_g9(f_variant) << "\n";
  os << "sansone_sum," << format_g9(r.sansone_sum) << "\n";
  return os.str();
}

inline int cmd_bound(const Options& opt, std::ostream& out) {
  const int K = require_single_even_k(opt);
  if (!(opt.T > 0.0)) throw std::invalid_argument("T must be > 0");
  auto mix = resolve_function(opt);
  auto f = to_test_function(mix);
  auto r = bound::theorem1_bound_detailed(f, K, opt.T, {}, opt.N_override);
  const double f_variant =
      (1.0 / K) * bound::window_l2(f, opt.T) / std::sqrt(2.0 * opt.T);
  write_out(opt, opt.format == "csv" ? bound_csv(r, f_variant) : bound_json(opt, mix, r, f_variant),
            out);
  return kExitOk;
}

inline int cmd_approx(const Options& opt, std::ostream& out) {
  const int K = require_single_even_k(opt);
  if (!(opt.T > 0.0)) throw std::invalid_argument("T must be > 0");
  if (opt.grid_points < 2) throw std::invalid_argument("grid-points must be >= 2");
  auto mix = resolve_function(opt);
  auto f = to_test_function(mix);
  auto s = coefficients(f, K);
  auto e = measure_error(f, s, opt.T, opt.grid_points);
  const double N = opt.N_override > 0.0 ? opt.N_override : band_edge(K);
  std::string text;
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "K,T,N,grid_points,rms,sup\n"
       << K << ',' << format_g9(opt.T) << ',' << format_g9(N) << ',' << e.grid_points << ','
       << format_g9(e.rms) << ',' << format_g9(e.sup) << "\n";
    text = os.str();
  } else {
    JsonWriter w;
    w.begin();
    w.key("command").value("approx");
    w.key("function").raw(to_json(mix));
    w.key("K").value(K);
    w.key("T").value(opt.T);
    w.key("N").value(N);
    w.key("grid_points").value(e.grid_points);
    w.key("rms").value(e.rms);
    w.key("sup").value(e.sup);
    w.end();
    text = w.str() + "\n";
  }
  write_out(opt, text, out);
  return kExitOk;
}

inline int cmd_reproduce(const Options& opt, std::ostream& out) {
  auto report = checks::run_reproduce(opt.tolerance, opt.grid_points);
  std::string text;
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "quantity,reference,computed,rel_diff,pass\n";
    for (const auto& row : report.rows)
      os << row.quantity << ',' << format_g9(row.reference) << ',' << format_g9(row.computed)
         << ',' << format_g9(row.rel_diff) << ',' << (row.pass ? "pass" : "FAIL") << "\n";
    text = os.str();
  } else if (opt.format == "json") {
    JsonWriter w;
    w.begin();
    w.key("command").value("reproduce");
    w.key("N").value(report.N);
    w.key("term_fN_window_variant").value(report.term_fN_window_variant);
    w.key("rows").begin_array();
    for (const auto& row : report.rows) {
      w.begin_object();
      w.key("quantity").value(row.quantity);
      w.key("reference").value(row.reference);
      w.key("computed").value(row.computed);
      w.key("rel_diff").value(row.rel_diff);
      w.key("pass").value(row.pass);
      w.end_object();
    }
    w.end_array();
    w.key("all_pass").value(report.all_pass);
    w.end();
    text = w.str() + "\n";
  } else {
    std::ostringstream os;
    os << "trimodal reference run, K = 500, T = 3, N = " << format_g9(report.N) << "\n";
    os << "third term with the window norm of f instead of f_N: "
       << format_g9(report.term_fN_window_variant) << "\n";
    os << std::left << std::setw(18) << "quantity" << std::setw(14) << "reference"
       << std::setw(16) << "computed" << std::setw(16) << "rel_diff" << "result\n";
    for (const auto& row : report.rows) {
      os << std::left << std::setw(18) << row.quantity << std::setw(14)
         << format_g9(row.reference) << std::setw(16) << format_g9(row.computed)
         << std::setw(16) << format_g9(row.rel_diff) << (row.pass ? "pass" : "FAIL") << "\n";
    }
    os << (report.all_pass ? "all rows pass\n" : "some rows FAILED\n");
    text = os.str();
  }
  write_out(opt, text, out);
  return report.all_pass ? kExitOk : kExitCheckFailed;
}

inline int cmd_sweep(const Options& opt, std::ostream& out) {
  if (opt.K.empty()) throw std::invalid_argument("sweep needs at least one --K value");
  for (int k : opt.K)
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("all K values must be even and >= 2");
  if (!(opt.T > 0.0)) throw std::invalid_argument("T must be > 0");
  auto mix = resolve_function(opt);
  auto f = to_test_function(mix);

  struct Row {
    int K;
    double N, rms, sup, t1, t2, t3, t4, total;
  };
  std::vector<Row> rows;
  for (int K : opt.K) {
    auto s = coefficients(f, K);
    auto e = measure_error(f, s, opt.T, opt.grid_points);
    auto b = bound::theorem1_bound(f, K, opt.T);
    rows.push_back({K, b.N, e.rms, e.sup, b.term_tail_t, b.term_tail_omega, b.term_fN,
                    b.term_sansone, b.total});
  }
  std::ostringstream os;
  os << "K,N,measured_rms,measured_sup,term_tail_t,term_tail_omega,term_fN,term_sansone,"
        "bound_total\n";
  for (const auto& r : rows)
    os << r.K << ',' << format_g9(r.N) << ',' << format_g9(r.rms) << ',' << format_g9(r.sup)
       << ',' << format_g9(r.t1) << ',' << format_g9(r.t2) << ',' << format_g9(r.t3) << ','
       << format_g9(r.t4) << ',' << format_g9(r.total) << "\n";
  write_out(opt, os.str(), out);

  if (!opt.output.empty()) {
    // plain-text plot data, two columns per curve
    std::ostringstream plot;
    auto curve = [&](const char* name, auto&& get) {
      plot << "# curve: " << name << "\n";
      for (const auto& r : rows) plot << r.K << ' ' << format_g9(get(r)) << "\n";
      plot << "\n";
    };
    curve("measured_rms", [](const Row& r) { return r.rms; });
    curve("measured_sup", [](const Row& r) { return r.sup; });
    curve("bound_total", [](const Row& r) { return r.total; });
    std::ofstream file(opt.output + ".plot", std::ios::binary);
    if (!file)
      throw std::invalid_argument("cannot open plot file '" + opt.output + ".plot'");
    file << plot.str();
  }
  return kExitOk;
}

inline int cmd_verify(const Options& opt, std::ostream& out) {
  const bool full = opt.depth == "full";
  auto results = checks::run_all(full, opt.suite, opt.force_large_n);
  if (results.empty())
    throw std::invalid_argument("unknown suite '" + opt.suite + "'");
  bool all = true;
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
    all = all && r.pass;
  }
  os << (all ? "verify: all suites passed\n" : "verify: FAILURES present\n");
  write_out(opt, os.str(), out);
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace detail

/// Entry point shared by the binary and the tests. Returns the process exit
/// code; output goes to the provided streams.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hermite-series truncation error bounds"};
  app.require_subcommand(1);

  detail::Options opt;
  auto add_common = [&](CLI::App* cmd, bool with_function) {
    if (with_function) {
      cmd->add_option("--preset", opt.preset, "named function (trimodal, gauss)");
      cmd->add_option("--mixture", opt.mixture_json,
                      "mixture literal, JSON array of [w,a,c] triples");
      cmd->add_option("--T", opt.T, "window half-width");
      cmd->add_option("--K", opt.K, "truncation order(s), even");
      cmd->add_option("--N", opt.N_override, "band edge override");
    }
    cmd->add_option("--grid-points", opt.grid_points, "sup-norm grid size");
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--output", opt.output, "write output to this path");
  };

  auto* bound_cmd = app.add_subcommand("bound", "assembled error bound for one K");
  add_common(bound_cmd, true);
  auto* approx_cmd = app.add_subcommand("approx", "measured partial-sum error for one K");
  add_common(approx_cmd, true);
  auto* reproduce_cmd =
      app.add_subcommand("reproduce", "check the built-in trimodal reference values");
  add_common(reproduce_cmd, false);
  reproduce_cmd->add_option("--tolerance", opt.tolerance, "relative tolerance per row");
  auto* sweep_cmd = app.add_subcommand("sweep", "bound and measured error over several K");
  add_common(sweep_cmd, true);
  auto* verify_cmd = app.add_subcommand("verify", "run the validation suites");
  verify_cmd->add_option("--depth", opt.depth, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  verify_cmd->add_option("--suite", opt.suite, "run a single suite by name");
  verify_cmd->add_option("--output", opt.output, "write output to this path");
  verify_cmd->add_flag("--force-large-n", opt.force_large_n, "allow n > 50 direct sums");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  // the reference table defaults to human-readable output
  if (reproduce_cmd->parsed() && reproduce_cmd->get_option("--format")->count() == 0)
    opt.format = "text";

  try {
    if (bound_cmd->parsed()) return detail::cmd_bound(opt, out);
    if (approx_cmd->parsed()) return detail::cmd_approx(opt, out);
    if (reproduce_cmd->parsed()) return detail::cmd_reproduce(opt, out);
    if (sweep_cmd->parsed()) return detail::cmd_sweep(opt, out);
    if (verify_cmd->parsed()) return detail::cmd_verify(opt, out);
    err << "error: no command\n";
    return kExitConfig;
  } catch (const NonConvergenceError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const NonFiniteError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace hermbound::cli
