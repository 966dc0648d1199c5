#include "maxent/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace maxent::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// nlohmann writes doubles in shortest round-trip form; non-finite values
// become null, so they are mapped to strings explicitly.
json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json vector_json(std::span<const double> v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

std::vector<double> parse_vector_csv(const std::string& text) {
  // One record; a trailing newline is fine, a second non-empty line is not.
  std::string body = trim(text);
  if (body.empty()) throw InvalidInput("empty CSV input");
  if (body.find('\n') != std::string::npos) throw InvalidInput("CSV input must be a single line");
  std::vector<double> out;
  std::stringstream ss(body);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const std::string f = trim(field);
    if (f.empty()) throw InvalidInput("empty CSV field");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(f.c_str(), &end);
    if (end != f.c_str() + f.size() || errno == ERANGE) throw InvalidInput("unparsable CSV field '" + f + "'");
    out.push_back(v);
  }
  if (!body.empty() && body.back() == ',') throw InvalidInput("trailing comma in CSV input");
  return out;
}

std::string format_vector_csv(std::span<const double> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += format_double(values[i]);
  }
  s += '\n';
  return s;
}

std::vector<double> read_vector_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_vector_csv(ss.str());
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << contents;
  if (!out) throw InvalidInput("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------

json regime_to_json(const WeightRegime& regime) {
  json j{{"kind", std::string(regime.name())}};
  if (regime.kind() == RegimeKind::FiniteDiscrete) j["r"] = regime.r();
  return j;
}

WeightRegime regime_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InvalidInput("regime must be an object with a string 'kind'");
  const auto kind = j["kind"].get<std::string>();
  int r = 0;
  if (kind == "finite") {
    if (!j.contains("r") || !j["r"].is_number_integer()) throw InvalidInput("finite regime needs an integer 'r'");
    r = j["r"].get<int>();
  }
  return WeightRegime::parse(kind, r);
}

json graph_to_json(const WeightedGraph& g) {
  json edges = json::array();
  const std::size_t n = g.n();
  const auto w = g.packed();
  std::size_t e = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++e) {
      if (w[e] == 0.0) continue;
      if (g.regime().is_discrete())
        edges.push_back({i, j, static_cast<std::int64_t>(w[e])});
      else
        edges.push_back({i, j, w[e]});
    }
  }
  return {{"n", n}, {"regime", regime_to_json(g.regime())}, {"edges", std::move(edges)}};
}

WeightedGraph graph_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("graph JSON must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<std::int64_t>() < 3)
    throw InvalidInput("graph JSON needs an integer 'n' >= 3");
  if (!j.contains("regime")) throw InvalidInput("graph JSON needs a 'regime'");
  const auto n = j["n"].get<std::size_t>();
  WeightedGraph g(n, regime_from_json(j["regime"]));
  if (!j.contains("edges")) return g;
  if (!j["edges"].is_array()) throw InvalidInput("'edges' must be an array");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() || !e[2].is_number())
      throw InvalidInput("each edge must be [i, j, w] with integer i, j");
    const auto i = e[0].get<std::int64_t>();
    const auto k = e[1].get<std::int64_t>();
    if (i < 0 || k < 0 || i >= k || static_cast<std::size_t>(k) >= n)
      throw InvalidInput("edge indices must satisfy 0 <= i < j < n");
    const auto key = std::make_pair(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
    if (!seen.insert(key).second) throw InvalidInput("duplicate edge in graph JSON");
    g.set_weight(key.first, key.second, e[2].get<double>());
  }
  return g;
}

json verdict_to_json(const graphical::GraphicalityVerdict& v) {
  json j{{"graphic", v.graphic}, {"parity_ok", v.parity_ok}};
  j["violated_k"] = v.violated_k ? json(*v.violated_k) : json(nullptr);
  return j;
}

json marginal_to_json(const meanfn::MarginalEval& m) {
  return {{"t", number(m.t)}, {"z1", number(m.z1)}, {"mu", number(m.mu)}, {"mu_prime", number(m.mu_prime)}};
}

json fit_report_to_json(const mle::FitReport& rep) {
  json j{{"converged", rep.converged},
         {"diverged", rep.diverged},
         {"iterations", rep.iterations},
         {"residual_inf", number(rep.residual_inf)},
         {"diagnosis", rep.diagnosis}};
  j["theta_hat"] = rep.theta_hat ? vector_json(rep.theta_hat->values()) : json(nullptr);
  return j;
}

void write_fit_trace_csv(std::ostream& os, const std::vector<mle::TraceEntry>& trace) {
  os << "iter,step_inf,residual_inf\n";
  for (const auto& e : trace) os << e.iter << ',' << format_double(e.step_inf) << ',' << format_double(e.residual_inf) << '\n';
}

// ---------------------------------------------------------------------------

experiments::ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("experiment config must be a JSON object");
  experiments::ExperimentConfig cfg;
  if (j.contains("regime")) cfg.regime = regime_from_json(j["regime"]);
  if (j.contains("n_values")) {
    cfg.n_values = get_or<std::vector<std::size_t>>(j, "n_values", {});
  } else if (j.contains("n")) {
    cfg.n_values = {get_or<std::size_t>(j, "n", 0)};
  }
  cfg.replicates = get_or<int>(j, "replicates", cfg.replicates);
  cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
  if (j.contains("theta_law")) {
    const json& law = j["theta_law"];
    const auto kind = get_or<std::string>(law, "kind", "");
    if (kind == "uniform_box") {
      cfg.theta_law = experiments::UniformBox{get_or<double>(law, "lo", -1.0), get_or<double>(law, "hi", 1.0)};
    } else if (kind == "symmetric_shifted") {
      cfg.theta_law = experiments::SymmetricShifted{get_or<double>(law, "base", 0.75), get_or<double>(law, "jitter", 0.25)};
    } else {
      throw InvalidInput("theta_law.kind must be 'uniform_box' or 'symmetric_shifted'");
    }
  }
  if (j.contains("solver")) {
    const json& s = j["solver"];
    cfg.solver.tol = get_or<double>(s, "tol", cfg.solver.tol);
    cfg.solver.max_iter = get_or<int>(s, "max_iter", cfg.solver.max_iter);
    cfg.solver.divergence_norm = get_or<double>(s, "divergence_norm", cfg.solver.divergence_norm);
  }
  cfg.validate();
  return cfg;
}

void write_consistency_csv(std::ostream& os, const experiments::ConsistencyResult& res) {
  os << "n,replicate,existed,err_inf,err_scaled,iterations,residual_inf\n";
  for (const auto& r : res.rows) {
    os << r.n << ',' << r.replicate << ',' << (r.existed ? 1 : 0) << ',' << (r.err_inf ? format_double(*r.err_inf) : "")
       << ',' << (r.err_scaled ? format_double(*r.err_scaled) : "") << ',' << r.iterations << ','
       << format_double(r.residual_inf) << '\n';
  }
}

json consistency_summary_json(const experiments::ExperimentConfig& cfg, const experiments::ConsistencyResult& res) {
  json per_n = json::array();
  for (const auto& s : res.summary) {
    per_n.push_back({{"n", s.n},
                     {"replicates", s.replicates},
                     {"existed", s.existed},
                     {"fraction_existed", number(s.fraction_existed)},
                     {"err_inf_q05", number(s.q05)},
                     {"err_inf_median", number(s.median)},
                     {"err_inf_q95", number(s.q95)},
                     {"err_scaled_median", number(s.median_scaled)}});
  }
  return {{"kind", "consistency"}, {"regime", regime_to_json(cfg.regime)}, {"seed", cfg.seed}, {"summary", per_n}};
}

void write_trace_csv(std::ostream& os, const experiments::TraceResult& tr) {
  os << "iter,step_inf,residual_inf,log10_dist\n";
  for (const auto& r : tr.rows)
    os << r.iter << ',' << format_double(r.step_inf) << ',' << format_double(r.residual_inf) << ','
       << format_double(r.log10_dist) << '\n';
}

json trace_summary_json(const experiments::TraceResult& tr) {
  json j{{"kind", "trace"},
         {"regime", regime_to_json(tr.regime)},
         {"n", tr.theta_true.size()},
         {"existed", tr.existed},
         {"converged", tr.fit.converged},
         {"iterations", tr.fit.iterations},
         {"diagnosis", tr.fit.diagnosis},
         {"slope_log10", number(tr.slope)},
         {"max_two_step_ratio", number(tr.max_two_step_ratio)}};
  if (tr.contraction) {
    j["contraction"] = {{"K", number(tr.contraction->K)},
                        {"delta", number(tr.contraction->delta)},
                        {"beta", number(tr.contraction->beta)}};
  }
  return j;
}

void write_scatter_csv(std::ostream& os, const experiments::ScatterResult& sr) {
  os << "vertex,theta,theta_hat\n";
  for (std::size_t i = 0; i < sr.rows.size(); ++i)
    os << i << ',' << format_double(sr.rows[i].theta) << ',' << format_double(sr.rows[i].theta_hat) << '\n';
}

json scatter_summary_json(const experiments::ScatterResult& sr) {
  return {{"kind", "scatter"},
          {"regime", regime_to_json(sr.regime)},
          {"existed", sr.existed},
          {"diagnosis", sr.diagnosis},
          {"n", sr.rows.size()},
          {"max_abs_err", number(sr.max_abs_err)},
          {"slope", number(sr.slope)},
          {"intercept", number(sr.intercept)},
          {"iterations", sr.iterations}};
}

}  // namespace maxent::io
