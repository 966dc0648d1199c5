#include "maxent/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "maxent/experiments.hpp"
#include "maxent/graphical.hpp"
#include "maxent/io.hpp"
#include "maxent/meanfn.hpp"
#include "maxent/mle.hpp"
#include "maxent/sampler.hpp"

namespace maxent::cli {

namespace fs = std::filesystem;

namespace {

struct RegimeFlags {
  std::string kind;
  std::optional<int> r;

  WeightRegime resolve() const {
    if (kind == "finite" && !r) throw InvalidInput("--r is required with --regime finite");
    if (kind != "finite" && r) throw InvalidInput("--r is only valid with --regime finite");
    return WeightRegime::parse(kind, r.value_or(0));
  }
};

void add_regime_flags(CLI::App* cmd, RegimeFlags& flags) {
  cmd->add_option("--regime", flags.kind, "Weight regime")
      ->required()
      ->check(CLI::IsMember({"finite", "infinite", "continuous"}));
  cmd->add_option("--r", flags.r, "Number of weight levels (finite regime)");
}

void require_readable(const std::string& path) {
  if (!fs::is_regular_file(path)) throw InvalidInput("input file '" + path + "' does not exist");
}

void require_writable_target(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent))
    throw InvalidInput("output directory '" + parent.string() + "' does not exist");
}

void print_json(std::ostream& out, const io::json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct MeanArgs {
  RegimeFlags regime;
  double t = 0.0;
};

int run_mean(const MeanArgs& a, std::ostream& out) {
  const WeightRegime regime = a.regime.resolve();
  print_json(out, io::marginal_to_json(meanfn::evaluate(regime, a.t)));
  return kExitOk;
}

struct CheckArgs {
  RegimeFlags regime;
  std::string degrees;
};

int run_check(const CheckArgs& a, std::ostream& out) {
  const WeightRegime regime = a.regime.resolve();
  require_readable(a.degrees);
  const DegreeSequence d(io::read_vector_csv_file(a.degrees));
  const auto verdict = graphical::is_graphical(regime, d);
  io::json j = io::verdict_to_json(verdict);
  if (regime.is_positive()) j["interior"] = graphical::in_mean_interior(regime, d);
  print_json(out, j);
  return verdict.graphic ? kExitOk : kExitNoMle;
}

struct FitArgs {
  RegimeFlags regime;
  std::string degrees;
  mle::SolverOptions solver;
  std::string trace;
};

int run_fit(FitArgs a, std::ostream& out) {
  const WeightRegime regime = a.regime.resolve();
  require_readable(a.degrees);
  if (!a.trace.empty()) require_writable_target(a.trace);
  a.solver.validate();
  const DegreeSequence d(io::read_vector_csv_file(a.degrees));
  a.solver.record_trace = !a.trace.empty();

  mle::FitReport rep;
  try {
    // An isolated vertex pushes theta_i to +infinity: no MLE, not bad input.
    for (double x : d.values())
      if (x == 0.0) throw NoMle("degree sequence has an isolated vertex; no MLE");
    rep = mle::fit(regime, d, a.solver);
  } catch (const NoMle& e) {
    rep.diagnosis = e.what();
    rep.diverged = false;
    io::json j = io::fit_report_to_json(rep);
    j["no_mle"] = true;
    print_json(out, j);
    return kExitNoMle;
  }
  if (!a.trace.empty()) {
    std::ostringstream os;
    io::write_fit_trace_csv(os, rep.trace);
    io::write_text_file(a.trace, os.str());
  }
  io::json j = io::fit_report_to_json(rep);
  j["no_mle"] = rep.diverged;
  print_json(out, j);
  if (rep.converged) return kExitOk;
  return rep.diverged ? kExitNoMle : kExitFailure;
}

struct SampleArgs {
  RegimeFlags regime;
  std::string theta;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;
  std::string degrees_out;
};

int run_sample(const SampleArgs& a, std::ostream& out) {
  const WeightRegime regime = a.regime.resolve();
  require_readable(a.theta);
  require_writable_target(a.out);
  if (!a.degrees_out.empty()) require_writable_target(a.degrees_out);
  const Potentials theta(io::read_vector_csv_file(a.theta));
  if (!validate_potentials(theta, regime))
    throw InvalidInput("theta outside the natural parameter space of " + regime.label());

  const WeightedGraph g = sampler::sample_graph(regime, theta, SeededRng{a.seed, a.stream});
  io::write_text_file(a.out, io::graph_to_json(g).dump() + "\n");
  const DegreeSequence d = degree_sequence(g);
  if (!a.degrees_out.empty()) io::write_text_file(a.degrees_out, io::format_vector_csv(d.values()));
  print_json(out, {{"n", g.n()}, {"regime", io::regime_to_json(regime)}, {"seed", a.seed}, {"stream", a.stream},
                   {"out", a.out}, {"degree_sum", d.sum()}});
  return kExitOk;
}

struct ExperimentArgs {
  std::string kind;
  std::string config;
  std::string out_dir;
  unsigned threads = 1;
};

io::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return io::json::parse(in);
  } catch (const io::json::parse_error& e) {
    throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
  }
}

int run_experiment(const ExperimentArgs& a, std::ostream& out) {
  require_readable(a.config);
  const auto cfg = io::config_from_json(load_json_file(a.config));
  std::error_code ec;
  fs::create_directories(a.out_dir, ec);
  if (!fs::is_directory(a.out_dir)) throw InvalidInput("cannot create output directory '" + a.out_dir + "'");
  const fs::path dir(a.out_dir);

  io::json summary;
  std::ostringstream table;
  std::string table_name;
  if (a.kind == "consistency") {
    const auto res = experiments::run_consistency_experiment(cfg, a.threads);
    io::write_consistency_csv(table, res);
    summary = io::consistency_summary_json(cfg, res);
    table_name = "consistency.csv";
  } else if (a.kind == "trace") {
    const auto tr = experiments::run_convergence_trace(cfg.regime, cfg.n_values.front(), cfg.theta_law, cfg.seed, cfg.solver);
    io::write_trace_csv(table, tr);
    summary = io::trace_summary_json(tr);
    table_name = "trace.csv";
  } else {
    const auto sr = experiments::run_scatter(cfg.regime, cfg.n_values.front(), cfg.theta_law, cfg.seed, cfg.solver);
    io::write_scatter_csv(table, sr);
    summary = io::scatter_summary_json(sr);
    table_name = "scatter.csv";
  }
  io::write_text_file((dir / table_name).string(), table.str());
  io::write_text_file((dir / "summary.json").string(), summary.dump(2) + "\n");
  print_json(out, summary);
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximum-entropy weighted graphs with given expected degrees"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("maxent ") + kVersion + " (format " + io::kFormatVersion + ")");

  MeanArgs mean_args;
  auto* mean_cmd = app.add_subcommand("mean", "Evaluate Z1, mu and mu' at a pairwise potential");
  add_regime_flags(mean_cmd, mean_args.regime);
  mean_cmd->add_option("--t", mean_args.t, "Pairwise potential theta_i + theta_j")->required();

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Test a degree sequence for graphicality");
  add_regime_flags(check_cmd, check_args.regime);
  check_cmd->add_option("--degrees", check_args.degrees, "Degree CSV")->required();

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Maximum-likelihood potentials for a degree sequence");
  add_regime_flags(fit_cmd, fit_args.regime);
  fit_cmd->add_option("--degrees", fit_args.degrees, "Degree CSV")->required();
  fit_cmd->add_option("--tol", fit_args.solver.tol, "Convergence tolerance");
  fit_cmd->add_option("--max-iter", fit_args.solver.max_iter, "Iteration cap");
  fit_cmd->add_option("--divergence-norm", fit_args.solver.divergence_norm, "Divergence threshold on ||theta||_inf");
  fit_cmd->add_option("--trace", fit_args.trace, "Write per-iteration trace CSV");

  SampleArgs sample_args;
  auto* sample_cmd = app.add_subcommand("sample", "Draw a graph from P*_theta");
  add_regime_flags(sample_cmd, sample_args.regime);
  sample_cmd->add_option("--theta", sample_args.theta, "Potentials CSV")->required();
  sample_cmd->add_option("--seed", sample_args.seed, "64-bit seed")->required();
  sample_cmd->add_option("--stream", sample_args.stream, "Stream id");
  sample_cmd->add_option("--out", sample_args.out, "Graph JSON output")->required();
  sample_cmd->add_option("--degrees-out", sample_args.degrees_out, "Also write the degree CSV");

  ExperimentArgs exp_args;
  auto* exp_cmd = app.add_subcommand("experiment", "Convergence, consistency and scatter studies");
  exp_cmd->add_option("--kind", exp_args.kind, "Study kind")
      ->required()
      ->check(CLI::IsMember({"trace", "consistency", "scatter"}));
  exp_cmd->add_option("--config", exp_args.config, "Experiment config JSON")->required();
  exp_cmd->add_option("--out", exp_args.out_dir, "Output directory")->required();
  exp_cmd->add_option("--threads", exp_args.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (mean_cmd->parsed()) return run_mean(mean_args, out);
    if (check_cmd->parsed()) return run_check(check_args, out);
    if (fit_cmd->parsed()) return run_fit(fit_args, out);
    if (sample_cmd->parsed()) return run_sample(sample_args, out);
    if (exp_cmd->parsed()) return run_experiment(exp_args, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace maxent::cli
