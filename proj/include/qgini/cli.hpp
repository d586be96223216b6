#pragma once

// Command-line front end. `run` is the whole program minus process plumbing:
// it parses the arguments, writes one JSON document or CSV table to `out`,
// diagnostics to `err`, and returns the exit code
//   0  success
//   1  validation failure (bad state file, even dimension, failed check)
//   2  usage error

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgini/checks.hpp"
#include "qgini/errors.hpp"
#include "qgini/gini.hpp"
#include "qgini/lorenz.hpp"
#include "qgini/qsystem.hpp"
#include "qgini/state_io.hpp"
#include "qgini/uncertainty.hpp"

namespace qgini::cli {

using io::json;

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string command;
  int dim = 0;
  std::vector<int> dims;
  std::string input_path;
  OutputFormat output_format = OutputFormat::json;
  int restarts = 32;
  int iterations = 2000;
  std::uint64_t seed = 42;
  int samples = 100;
  unsigned threads = 0;
};

/// Everything reported about one state.
struct ReportRecord {
  int dim = 0;
  std::string state_label;
  GiniReport gini;
  std::vector<double> lorenz_x;
  std::vector<double> lorenz_p;
  std::vector<std::size_t> permutation_x;
  std::vector<std::size_t> permutation_p;
  BoundSet bounds;
  std::optional<EtaEstimate> estimate;
};

template <typename State>
ReportRecord make_record(const QuantumSystem& sys, const State& state,
                         std::string label) {
  const ProbabilityDistribution px = position_probs(sys, state);
  const ProbabilityDistribution pp = momentum_probs(sys, state);
  const LorenzCurve lx = lorenz_curve(px);
  const LorenzCurve lp = lorenz_curve(pp);

  ReportRecord rec;
  rec.dim = sys.dim();
  rec.state_label = std::move(label);
  rec.gini = gini_report(sys, state);
  rec.lorenz_x.assign(lx.values().begin(), lx.values().end());
  rec.lorenz_p.assign(lp.values().begin(), lp.values().end());
  rec.permutation_x.assign(lx.permutation().order().begin(),
                           lx.permutation().order().end());
  rec.permutation_p.assign(lp.permutation().order().begin(),
                           lp.permutation().order().end());
  rec.bounds = bounds(sys.dim());
  return rec;
}

inline json record_to_json(const ReportRecord& rec) {
  json j;
  j["dim"] = rec.dim;
  j["state_label"] = rec.state_label;
  j["g_x"] = rec.gini.g_x;
  j["g_p"] = rec.gini.g_p;
  j["g_xp"] = rec.gini.g_xp;
  j["lorenz_x"] = rec.lorenz_x;
  j["lorenz_p"] = rec.lorenz_p;
  j["permutation_x"] = rec.permutation_x;
  j["permutation_p"] = rec.permutation_p;
  j["gini_cap"] = rec.bounds.gini_cap;
  j["g_lower"] = rec.bounds.g_lower;
  j["g_strict_upper"] = rec.bounds.g_strict_upper;
  j["eta_upper"] = rec.bounds.eta_upper;
  if (rec.estimate) {
    const EtaEstimate& e = *rec.estimate;
    j["g_sup_estimate"] = e.g_sup_estimate;
    j["eta_estimate"] = e.eta_estimate;
    j["restarts"] = e.restarts;
    j["iterations"] = e.iterations;
    j["seed"] = e.seed;
    j["converged"] = e.converged;
    j["best_restart"] = e.best_restart;
    j["best_state"] = io::state_to_json(e.best_state);
  }
  return j;
}

inline constexpr const char* kRecordCsvHeader =
    "dim,state_label,g_x,g_p,g_xp,gini_cap,g_lower,g_strict_upper,eta_upper,"
    "g_sup_estimate,eta_estimate,lorenz_x,lorenz_p,permutation_x,permutation_p";

inline constexpr const char* kSweepCsvHeader =
    "dim,gini_cap,g_lower,g_strict_upper,eta_upper,example_g_xp,"
    "g_sup_estimate,eta_estimate,converged";

namespace detail {

// Sequences inside one CSV cell are separated by ';'.
template <typename Seq, typename Fmt>
std::string join(const Seq& seq, Fmt fmt) {
  std::string s;
  for (const auto& v : seq) {
    if (!s.empty()) s += ';';
    s += fmt(v);
  }
  return s;
}

inline std::string csv_label(const std::string& label) {
  if (label.find_first_of(",\"\n") == std::string::npos) return label;
  std::string quoted = "\"";
  for (char c : label) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace detail

inline std::string record_csv_row(const ReportRecord& rec) {
  using io::format_double;
  auto fmt_index = [](std::size_t i) { return std::to_string(i); };
  std::ostringstream os;
  os << rec.dim << ',' << detail::csv_label(rec.state_label) << ','
     << format_double(rec.gini.g_x) << ',' << format_double(rec.gini.g_p)
     << ',' << format_double(rec.gini.g_xp) << ','
     << format_double(rec.bounds.gini_cap) << ','
     << format_double(rec.bounds.g_lower) << ','
     << format_double(rec.bounds.g_strict_upper) << ','
     << format_double(rec.bounds.eta_upper) << ',';
  if (rec.estimate) {
    os << format_double(rec.estimate->g_sup_estimate) << ','
       << format_double(rec.estimate->eta_estimate);
  } else {
    os << ',';
  }
  os << ',' << detail::join(rec.lorenz_x, format_double) << ','
     << detail::join(rec.lorenz_p, format_double) << ','
     << detail::join(rec.permutation_x, fmt_index) << ','
     << detail::join(rec.permutation_p, fmt_index);
  return os.str();
}

struct SweepRow {
  BoundSet bounds;
  double example_g_xp = 0.0;
  EtaEstimate estimate;
};

inline SweepRow sweep_row(int d, const SearchOptions& options) {
  const QuantumSystem sys(d);
  SweepRow row;
  row.bounds = bounds(d);
  row.example_g_xp = gini_report(sys, example_state(sys)).g_xp;
  row.estimate = estimate_sup_gini(sys, options);
  return row;
}

/// One row per dimension, in input order, sharing one search budget.
inline std::vector<SweepRow> sweep(const std::vector<int>& dims,
                                   const SearchOptions& options) {
  if (dims.empty()) {
    throw Error(ErrorKind::DimensionTooSmall, "sweep needs at least one dimension");
  }
  for (int d : dims) require_odd_dimension(d);
  std::vector<SweepRow> rows;
  rows.reserve(dims.size());
  for (int d : dims) rows.push_back(sweep_row(d, options));
  return rows;
}

inline json sweep_row_to_json(const SweepRow& row) {
  json j;
  j["dim"] = row.bounds.dim;
  j["gini_cap"] = row.bounds.gini_cap;
  j["g_lower"] = row.bounds.g_lower;
  j["g_strict_upper"] = row.bounds.g_strict_upper;
  j["eta_upper"] = row.bounds.eta_upper;
  j["example_g_xp"] = row.example_g_xp;
  j["g_sup_estimate"] = row.estimate.g_sup_estimate;
  j["eta_estimate"] = row.estimate.eta_estimate;
  j["converged"] = row.estimate.converged;
  return j;
}

inline std::string sweep_csv_row(const SweepRow& row) {
  using io::format_double;
  std::ostringstream os;
  os << row.bounds.dim << ',' << format_double(row.bounds.gini_cap) << ','
     << format_double(row.bounds.g_lower) << ','
     << format_double(row.bounds.g_strict_upper) << ','
     << format_double(row.bounds.eta_upper) << ','
     << format_double(row.example_g_xp) << ','
     << format_double(row.estimate.g_sup_estimate) << ','
     << format_double(row.estimate.eta_estimate) << ','
     << (row.estimate.converged ? "true" : "false");
  return os.str();
}

inline json check_to_json(const CheckReport& report) {
  json props = json::array();
  for (const PropertyResult& p : report.properties) {
    props.push_back(json{{"name", p.name},
                         {"cases", p.cases},
                         {"violations", p.violations},
                         {"worst_excess", p.worst_excess},
                         {"passed", p.passed()}});
  }
  return json{{"dim", report.dim},
              {"samples", report.samples},
              {"seed", report.seed},
              {"passed", report.passed()},
              {"properties", props}};
}

namespace detail {

inline SearchOptions search_options(const RunConfig& cfg) {
  SearchOptions options;
  options.restarts = cfg.restarts;
  options.iterations = cfg.iterations;
  options.seed = cfg.seed;
  options.threads = cfg.threads;
  return options;
}

inline void emit_record(std::ostream& out, const ReportRecord& rec,
                        OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << kRecordCsvHeader << '\n' << record_csv_row(rec) << '\n';
  } else {
    io::write_json(out, record_to_json(rec));
    out << '\n';
  }
}

inline int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "probe") {
    const io::LoadedState loaded = io::read_state_file(cfg.input_path);
    const QuantumSystem sys(loaded.density.dim());
    emit_record(out, make_record(sys, loaded.density, "input:" + loaded.kind),
                cfg.output_format);
    return 0;
  }
  if (cfg.command == "example") {
    const QuantumSystem sys(cfg.dim);
    emit_record(out, make_record(sys, example_state(sys), "example"),
                cfg.output_format);
    return 0;
  }
  if (cfg.command == "estimate") {
    const QuantumSystem sys(cfg.dim);
    EtaEstimate est = estimate_sup_gini(sys, search_options(cfg));
    ReportRecord rec = make_record(sys, est.best_state, "estimate_best");
    rec.estimate = std::move(est);
    emit_record(out, rec, cfg.output_format);
    return 0;
  }
  if (cfg.command == "sweep") {
    const SearchOptions options = search_options(cfg);
    const std::vector<SweepRow> rows = sweep(cfg.dims, options);
    if (cfg.output_format == OutputFormat::csv) {
      out << kSweepCsvHeader << '\n';
      for (const SweepRow& row : rows) out << sweep_csv_row(row) << '\n';
    } else {
      json doc;
      doc["command"] = "sweep";
      doc["restarts"] = options.restarts;
      doc["iterations"] = options.iterations;
      doc["seed"] = options.seed;
      json list = json::array();
      for (const SweepRow& row : rows) list.push_back(sweep_row_to_json(row));
      doc["rows"] = std::move(list);
      io::write_json(out, doc);
      out << '\n';
    }
    return 0;
  }
  if (cfg.command == "check") {
    const QuantumSystem sys(cfg.dim);
    const CheckReport report = run_property_checks(sys, cfg.samples, cfg.seed);
    io::write_json(out, check_to_json(report));
    out << '\n';
    if (!report.passed()) {
      for (const PropertyResult& p : report.properties) {
        if (!p.passed()) {
          err << "property " << p.name << " violated in " << p.violations
              << " of " << p.cases << " cases\n";
        }
      }
      return 1;
    }
    return 0;
  }
  err << "unknown command " << cfg.command << '\n';
  return 2;
}

}  // namespace detail

/// Runs the CLI on `args` (program name excluded).
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Lorenz values, Gini indices and the Gini uncertainty "
               "coefficient for odd-dimensional quantum systems",
               "qgini"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";
  const auto formats = CLI::IsMember({"json", "csv"});

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(formats);
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--restarts", cfg.restarts, "Optimizer restarts");
    sub->add_option("--iters", cfg.iterations, "Pattern-search iterations per restart");
    sub->add_option("--seed", cfg.seed, "Master seed");
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");
  };

  CLI::App* probe = app.add_subcommand("probe", "Report on a state file");
  probe->add_option("--input", cfg.input_path, "State file")->required();
  add_format(probe);

  CLI::App* example = app.add_subcommand("example", "Report on the balanced example state");
  example->add_option("--dim", cfg.dim, "Odd dimension >= 3")->required();
  add_format(example);

  CLI::App* estimate = app.add_subcommand("estimate", "Estimate the supremum of G_XP");
  estimate->add_option("--dim", cfg.dim, "Odd dimension >= 3")->required();
  add_budget(estimate);
  add_format(estimate);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Bounds and estimates over several dimensions");
  sweep_cmd->add_option("--dims", cfg.dims, "Comma-separated odd dimensions")
      ->required()
      ->delimiter(',');
  add_budget(sweep_cmd);
  add_format(sweep_cmd);

  CLI::App* check = app.add_subcommand("check", "Run the seeded property suite");
  check->add_option("--dim", cfg.dim, "Odd dimension >= 3")->required();
  check->add_option("--samples", cfg.samples, "Random samples")
      ->check(CLI::PositiveNumber);
  check->add_option("--seed", cfg.seed, "Seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
  cfg.output_format = format == "csv" ? OutputFormat::csv : OutputFormat::json;

  try {
    return detail::execute(cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qgini::cli
