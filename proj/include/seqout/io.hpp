#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "seqout/distributions.hpp"
#include "seqout/exponents.hpp"
#include "seqout/hypothesis_space.hpp"
#include "seqout/montecarlo.hpp"
#include "seqout/sequential_tests.hpp"

namespace seqout {

using json = nlohmann::ordered_json;

// Shortest decimal that round-trips the double; "inf"/"nan" for non-finite.
std::string format_double(double value);

// Reads a whole JSON file; data_error names the path on failure.
json load_json_file(const std::string& path);

// Distribution: either [p0, p1, ...] or {"alphabet_size": k, "probs": [...]}.
json to_json(const Distribution& d);
Distribution distribution_from_json(const json& j);
Distribution load_distribution(const std::string& path);

// Hypothesis: [i, j, ...] of 0-based sequence indices.
json to_json(const Hypothesis& h);
Hypothesis hypothesis_from_json(const json& j);

// {"n": N, "decision": [...], "truncated": bool}
json to_json(const TestResult& r);

// Columns n,best,gap,threshold; best is the quoted outlier set.
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> trajectory);

// One row per sequence: sequence,count_0,...,count_{k-1}.
void write_types_csv(std::ostream& out, std::span<const TypeVector> types);

// TestConfig fields. Keys: num_sequences, max_outliers, alphabet_size,
// model, knowledge, threshold, truncation, typical, outlier, sample_limit.
json to_json(const TestConfig& c);
// Overlays the keys present in j onto base; unknown keys are rejected.
TestConfig apply_config_json(const json& j, TestConfig base);

// Lines prefixed "# " carrying tool, version, seed and the resolved config.
struct Provenance {
    std::string command;
    std::uint64_t seed = 0;
    json config = json::object();
};
json to_json(const Provenance& p);
void write_provenance_csv(std::ostream& out, const Provenance& p);

// Columns T,hypothesis,error_rate,ci_lo,ci_hi,mean_N,slope,truncation_rate
// followed by sd_N,null_decision_rate,p_max,p_max_is_bound,tail_exits.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
json to_json(const SweepResult& result);

// Gnuplot-friendly: T followed by one slope column per outlier-set size.
void write_slope_table(std::ostream& out, const SweepResult& result, std::span<const int> sizes);

json to_json(const ExponentReport& report);
void write_exponent_table(std::ostream& out, const ExponentReport& report);

} // namespace seqout
