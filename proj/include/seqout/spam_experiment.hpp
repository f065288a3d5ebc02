#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seqout/distributions.hpp"
#include "seqout/montecarlo.hpp"

namespace seqout {

// Column names of the 57 spambase features, used when a file has no header.
const std::array<std::string, 57>& spambase_feature_names();

inline constexpr const char* kDefaultSpamFeature = "word_freq_hp";

// Selects one feature column by 0-based index or by name. Empty selects
// kDefaultSpamFeature.
struct FeatureSelector {
    std::optional<std::size_t> index;
    std::optional<std::string> name;
};

struct LabeledRow {
    double value;  // in [0,100]
    bool spam;
};

struct LabeledCorpus {
    std::string feature_name;
    std::size_t feature_index = 0;
    std::size_t num_columns = 0;  // features + label
    bool had_header = false;
    std::vector<LabeledRow> rows;

    std::size_t spam_count() const;
    std::size_t nonspam_count() const { return rows.size() - spam_count(); }
};

// CSV with numeric feature columns and a 0/1 label in the last column. A
// first row holding any non-numeric cell is taken as a header. Throws
// data_error naming the row (1-based line number) and column on bad input.
LabeledCorpus load_corpus(const std::string& path, const FeatureSelector& selector = {});
LabeledCorpus parse_corpus(std::istream& in, const FeatureSelector& selector = {},
                           const std::string& source = "<stream>");

enum class QuantizerStrategy { zero_inflated, equal_width };

std::string to_string(QuantizerStrategy strategy);
QuantizerStrategy parse_strategy(const std::string& text);

// level(v) = number of edges e with v > e, so levels run 0..edges.size().
class Quantizer {
public:
    Quantizer(std::vector<double> edges, QuantizerStrategy strategy);

    std::size_t levels() const noexcept { return edges_.size() + 1; }
    const std::vector<double>& edges() const noexcept { return edges_; }
    QuantizerStrategy strategy() const noexcept { return strategy_; }

    // Throws config_error outside [0,100] or on NaN.
    int level(double value) const;

private:
    std::vector<double> edges_;
    QuantizerStrategy strategy_;
};

// zero_inflated: edges {0, q_1, ..., q_{L-2}} with q_j the j/(L-1) quantile
// (linear interpolation between order statistics) of the pooled nonzero
// values. equal_width: edges 100 j / L. Throws data_error when the corpus
// has fewer distinct values than levels.
Quantizer fit_quantizer(const LabeledCorpus& corpus, int levels = 5,
                        QuantizerStrategy strategy = QuantizerStrategy::zero_inflated);

struct SpamPools {
    std::vector<int> spam;
    std::vector<int> nonspam;
};

SpamPools quantize(const LabeledCorpus& corpus, const Quantizer& quantizer);

struct SpamOptions {
    std::vector<double> thresholds{3.98, 4.0, 4.05, 4.1};
    std::uint64_t trials = 5000;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    // Spam rows act as the typical pool and nonspam rows as the outliers.
    bool swap_pools = false;
    double null_tail_epsilon = 1e-12;
};

struct SpamResult {
    SweepResult sweep;
    TestConfig config;
    Distribution outlier_law;  // empirical law of the outlier pool
    Distribution typical_law;
    std::size_t spam_rows = 0;
    std::size_t nonspam_rows = 0;

    // slope_table()[c][t]: class c (|S| = 1, 2) at thresholds[t].
    std::vector<std::vector<double>> slope_table() const;
};

// M = 5, K = 2, identical model, universal test, f(T) = T^5. Each typical
// sequence resamples the nonspam pool with replacement and each outlier the
// spam pool.
SpamResult run_spam_experiment(const LabeledCorpus& corpus, const Quantizer& quantizer,
                               const SpamOptions& options);

} // namespace seqout
