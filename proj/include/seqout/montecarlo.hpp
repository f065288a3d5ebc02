#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "seqout/distributions.hpp"
#include "seqout/hypothesis_space.hpp"
#include "seqout/sequential_tests.hpp"

namespace seqout {

// Builds the observation source of one trial under a true hypothesis.
class DataGenerator {
public:
    virtual ~DataGenerator() = default;
    virtual std::size_t alphabet_size() const = 0;
    virtual std::unique_ptr<ObservationSource> make_source(const Hypothesis& truth, int num_sequences,
                                                           std::uint64_t seed) const = 0;
    virtual std::string describe() const = 0;
};

// I.i.d. sequences. With one outlier law every outlier shares it (identical
// model); with K laws the r-th smallest outlier index uses laws[r].
class IidGenerator final : public DataGenerator {
public:
    IidGenerator(std::vector<Distribution> outlier_laws, Distribution typical);

    std::size_t alphabet_size() const override { return typical_.alphabet_size(); }
    std::unique_ptr<ObservationSource> make_source(const Hypothesis& truth, int num_sequences,
                                                   std::uint64_t seed) const override;
    std::string describe() const override;

    const std::vector<Distribution>& outlier_laws() const noexcept { return outlier_laws_; }
    const Distribution& typical() const noexcept { return typical_; }

private:
    std::vector<Distribution> outlier_laws_;
    Distribution typical_;
};

// Outliers resample the outlier pool, typical sequences the typical pool.
class PoolGenerator final : public DataGenerator {
public:
    PoolGenerator(std::vector<int> outlier_pool, std::vector<int> typical_pool, std::size_t alphabet_size);

    std::size_t alphabet_size() const override { return alphabet_size_; }
    std::unique_ptr<ObservationSource> make_source(const Hypothesis& truth, int num_sequences,
                                                   std::uint64_t seed) const override;
    std::string describe() const override;

private:
    PoolSource::Pool outlier_pool_;
    PoolSource::Pool typical_pool_;
    std::size_t alphabet_size_;
};

struct TrialPlan {
    TestConfig config;
    std::uint64_t trials_per_hypothesis = 1000;
    std::uint64_t seed = 0;
    std::shared_ptr<const DataGenerator> data;
    unsigned jobs = 1;
    // Null-hypothesis trials of the truncated GL tests stop being simulated
    // once the probability of any later stop is provably below this value;
    // they are then recorded as truncated. 0 disables the shortcut.
    double null_tail_epsilon = 1e-12;
    // sample_limit applied to untruncated tests when the config leaves it 0.
    std::uint64_t default_sample_limit = 100'000'000;
};

// Upper bound on P_null(the identical GL test stops at some n > after),
// from the method of types: sum over n > after and nonempty S of
// #types(n|S|) #types(n(M-|S|)) / (T (n+1)^{(M+1)|Y|}).
double null_stop_tail_bound(std::uint64_t after, double T, int num_sequences, int max_outliers,
                            std::size_t alphabet_size);

// Smallest n with null_stop_tail_bound(n) <= epsilon.
std::uint64_t null_tail_cutoff(double epsilon, double T, int num_sequences, int max_outliers,
                               std::size_t alphabet_size);

struct WilsonInterval {
    double lo;
    double hi;
};
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

struct HypothesisStats {
    Hypothesis hypothesis;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double error_rate = 0.0;
    WilsonInterval ci{0.0, 1.0};
    double mean_n = 0.0;
    double sd_n = 0.0;
    double truncation_rate = 0.0;
    double null_decision_rate = 0.0;
    std::uint64_t tail_exits = 0;  // trials concluded by the null-tail shortcut
};

struct TrialsResult {
    double threshold = 0.0;
    std::vector<HypothesisStats> per_hypothesis;  // enumeration order
    double p_max = 0.0;          // max error rate, or 3/trials when no error occurred
    bool p_max_is_bound = false;  // true when p_max is the rule-of-three bound
    double tail_bound = 0.0;     // bound on P(any shortcut changed a decision)

    // -ln p_max / mean_n for one hypothesis.
    double slope(std::size_t hypothesis_index) const;
};

TrialsResult run_trials(const TrialPlan& plan);

struct SweepResult {
    std::vector<TrialsResult> rows;  // one per threshold, ascending

    // Outlier-set sizes present in the hypothesis space (0 = null).
    std::vector<int> classes() const;
    // Mean of E_S[N] over hypotheses of the given size.
    double class_mean_n(std::size_t row, int size) const;
    // -ln p_max / class_mean_n.
    double class_slope(std::size_t row, int size) const;
};

// Runs run_trials per threshold (sorted ascending, each > 1).
SweepResult sweep(const TrialPlan& plan, const std::vector<double>& thresholds);

} // namespace seqout
