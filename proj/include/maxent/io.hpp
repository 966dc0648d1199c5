#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxent/core.hpp"
#include "maxent/experiments.hpp"
#include "maxent/graphical.hpp"
#include "maxent/meanfn.hpp"
#include "maxent/mle.hpp"

// File formats.
//
//   graph JSON    {"n": int, "regime": {"kind": "finite"|"infinite"|"continuous", "r": int?},
//                  "edges": [[i, j, w], ...]}      0-based i < j, omitted edges have weight 0
//   vector CSV    one line of comma-separated numbers (degrees or potentials)
//   trace CSV     iter,step_inf,residual_inf[,log10_dist]
//
// Every floating-point number is written with 17 significant digits.
namespace maxent::io {

using json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

/// "%.17g"; "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double v);

/// Parses one line of comma-separated values. Throws InvalidInput on empty
/// input, unparsable fields or trailing garbage.
std::vector<double> parse_vector_csv(const std::string& text);
std::string format_vector_csv(std::span<const double> values);

std::vector<double> read_vector_csv_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

json regime_to_json(const WeightRegime& regime);
WeightRegime regime_from_json(const json& j);

json graph_to_json(const WeightedGraph& g);
/// Validates vertex count, index order (i < j < n), duplicates and weight
/// admissibility. Throws InvalidInput.
WeightedGraph graph_from_json(const json& j);

json verdict_to_json(const graphical::GraphicalityVerdict& v);
json marginal_to_json(const meanfn::MarginalEval& m);
json fit_report_to_json(const mle::FitReport& rep);

void write_fit_trace_csv(std::ostream& os, const std::vector<mle::TraceEntry>& trace);

/// Experiment configuration:
///   {"regime": {...}, "n_values": [..] | "n": int, "replicates": int,
///    "theta_law": {"kind": "uniform_box", "lo": x, "hi": y}
///               | {"kind": "symmetric_shifted", "base": x, "jitter": y},
///    "seed": int, "solver": {"tol": x, "max_iter": k, "divergence_norm": x}}
/// Omitted keys keep the ExperimentConfig defaults.
experiments::ExperimentConfig config_from_json(const json& j);

void write_consistency_csv(std::ostream& os, const experiments::ConsistencyResult& res);
json consistency_summary_json(const experiments::ExperimentConfig& cfg, const experiments::ConsistencyResult& res);

void write_trace_csv(std::ostream& os, const experiments::TraceResult& tr);
json trace_summary_json(const experiments::TraceResult& tr);

void write_scatter_csv(std::ostream& os, const experiments::ScatterResult& sr);
json scatter_summary_json(const experiments::ScatterResult& sr);

}  // namespace maxent::io
