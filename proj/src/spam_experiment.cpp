#include "seqout/spam_experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>

#include "seqout/errors.hpp"

namespace seqout {

const std::array<std::string, 57>& spambase_feature_names() {
    static const std::array<std::string, 57> names = {
        "word_freq_make", "word_freq_address", "word_freq_all", "word_freq_3d",
        "word_freq_our", "word_freq_over", "word_freq_remove", "word_freq_internet",
        "word_freq_order", "word_freq_mail", "word_freq_receive", "word_freq_will",
        "word_freq_people", "word_freq_report", "word_freq_addresses", "word_freq_free",
        "word_freq_business", "word_freq_email", "word_freq_you", "word_freq_credit",
        "word_freq_your", "word_freq_font", "word_freq_000", "word_freq_money",
        "word_freq_hp", "word_freq_hpl", "word_freq_george", "word_freq_650",
        "word_freq_lab", "word_freq_labs", "word_freq_telnet", "word_freq_857",
        "word_freq_data", "word_freq_415", "word_freq_85", "word_freq_technology",
        "word_freq_1999", "word_freq_parts", "word_freq_pm", "word_freq_direct",
        "word_freq_cs", "word_freq_meeting", "word_freq_original", "word_freq_project",
        "word_freq_re", "word_freq_edu", "word_freq_table", "word_freq_conference",
        "char_freq_;", "char_freq_(", "char_freq_[", "char_freq_!",
        "char_freq_$", "char_freq_#", "capital_run_length_average",
        "capital_run_length_longest", "capital_run_length_total"};
    return names;
}

std::size_t LabeledCorpus::spam_count() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(),
                                                  [](const LabeledRow& r) { return r.spam; }));
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\"");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\"");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::optional<double> parse_number(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string where(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line) + ": ";
}

} // namespace

LabeledCorpus load_corpus(const std::string& path, const FeatureSelector& selector) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open corpus file '" + path + "'");
    return parse_corpus(in, selector, path);
}

LabeledCorpus parse_corpus(std::istream& in, const FeatureSelector& selector, const std::string& source) {
    if (selector.index && selector.name) {
        throw config_error("select the feature by index or by name, not both");
    }
    LabeledCorpus corpus;
    std::vector<std::string> header;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    std::vector<std::vector<double>> raw;
    std::vector<std::size_t> raw_lines;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_csv(line);
        if (first) {
            first = false;
            const bool numeric = std::all_of(cells.begin(), cells.end(),
                                             [](const std::string& c) { return parse_number(c).has_value(); });
            if (!numeric) {
                header = std::move(cells);
                corpus.had_header = true;
                corpus.num_columns = header.size();
                continue;
            }
            corpus.num_columns = cells.size();
        }
        if (cells.size() != corpus.num_columns) {
            throw data_error(where(source, line_no) + "expected " + std::to_string(corpus.num_columns) +
                             " columns, found " + std::to_string(cells.size()));
        }
        std::vector<double> values(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto v = parse_number(cells[c]);
            if (!v) {
                throw data_error(where(source, line_no) + "column " + std::to_string(c + 1) +
                                 " is not numeric: '" + cells[c] + "'");
            }
            values[c] = *v;
        }
        raw.push_back(std::move(values));
        raw_lines.push_back(line_no);
    }
    if (raw.empty()) throw data_error(source + ": no data rows");
    if (corpus.num_columns < 2) throw data_error(source + ": need at least one feature and a label column");

    const std::size_t features = corpus.num_columns - 1;
    std::vector<std::string> names;
    if (corpus.had_header) {
        names.assign(header.begin(), header.end() - 1);
    } else if (features == spambase_feature_names().size()) {
        names.assign(spambase_feature_names().begin(), spambase_feature_names().end());
    }

    if (selector.index) {
        corpus.feature_index = *selector.index;
        if (corpus.feature_index >= features) {
            throw data_error(source + ": feature index " + std::to_string(corpus.feature_index) +
                             " out of range (" + std::to_string(features) + " feature columns)");
        }
    } else {
        const std::string wanted = selector.name.value_or(kDefaultSpamFeature);
        const auto it = std::find(names.begin(), names.end(), wanted);
        if (it == names.end()) throw data_error(source + ": no feature column named '" + wanted + "'");
        corpus.feature_index = static_cast<std::size_t>(it - names.begin());
    }
    corpus.feature_name = corpus.feature_index < names.size() ? names[corpus.feature_index]
                                                              : "column_" + std::to_string(corpus.feature_index);

    corpus.rows.reserve(raw.size());
    for (std::size_t r = 0; r < raw.size(); ++r) {
        const double label = raw[r].back();
        if (label != 0.0 && label != 1.0) {
            throw data_error(where(source, raw_lines[r]) + "label must be 0 or 1");
        }
        const double v = raw[r][corpus.feature_index];
        if (v < 0.0 || v > 100.0) {
            throw data_error(where(source, raw_lines[r]) + "feature value " + std::to_string(v) +
                             " outside [0,100]");
        }
        corpus.rows.push_back({v, label == 1.0});
    }
    return corpus;
}

std::string to_string(QuantizerStrategy strategy) {
    return strategy == QuantizerStrategy::zero_inflated ? "zero-inflated" : "equal-width";
}

QuantizerStrategy parse_strategy(const std::string& text) {
    if (text == "zero-inflated" || text == "zero_inflated") return QuantizerStrategy::zero_inflated;
    if (text == "equal-width" || text == "equal_width") return QuantizerStrategy::equal_width;
    throw config_error("unknown quantizer strategy '" + text + "'");
}

Quantizer::Quantizer(std::vector<double> edges, QuantizerStrategy strategy)
    : edges_(std::move(edges)), strategy_(strategy) {
    if (edges_.empty()) throw config_error("quantizer needs at least one edge");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!(edges_[i] >= 0.0 && edges_[i] <= 100.0)) throw config_error("quantizer edges must lie in [0,100]");
        if (i > 0 && !(edges_[i] > edges_[i - 1])) {
            throw config_error("quantizer edges must be strictly ascending");
        }
    }
}

int Quantizer::level(double value) const {
    if (!(value >= 0.0 && value <= 100.0)) throw config_error("quantizer input outside [0,100]");
    return static_cast<int>(std::lower_bound(edges_.begin(), edges_.end(), value) - edges_.begin());
}

Quantizer fit_quantizer(const LabeledCorpus& corpus, int levels, QuantizerStrategy strategy) {
    if (levels < 2) throw config_error("quantizer needs at least 2 levels");
    std::set<double> distinct;
    for (const auto& r : corpus.rows) distinct.insert(r.value);
    if (distinct.size() < static_cast<std::size_t>(levels)) {
        throw data_error("feature '" + corpus.feature_name + "' has " + std::to_string(distinct.size()) +
                         " distinct values, fewer than " + std::to_string(levels) + " levels");
    }
    std::vector<double> edges;
    if (strategy == QuantizerStrategy::equal_width) {
        for (int j = 1; j < levels; ++j) edges.push_back(100.0 * j / levels);
        return Quantizer(std::move(edges), strategy);
    }
    std::vector<double> nonzero;
    for (const auto& r : corpus.rows) {
        if (r.value > 0.0) nonzero.push_back(r.value);
    }
    std::sort(nonzero.begin(), nonzero.end());
    edges.push_back(0.0);
    const double n = static_cast<double>(nonzero.size());
    for (int j = 1; j < levels - 1; ++j) {
        const double h = (n - 1.0) * j / (levels - 1);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const auto hi = std::min(lo + 1, nonzero.size() - 1);
        edges.push_back(nonzero[lo] + (h - static_cast<double>(lo)) * (nonzero[hi] - nonzero[lo]));
    }
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (!(edges[i] > edges[i - 1])) {
            throw data_error("feature '" + corpus.feature_name + "': nonzero quantiles collide, cannot form " +
                             std::to_string(levels) + " levels");
        }
    }
    return Quantizer(std::move(edges), strategy);
}

SpamPools quantize(const LabeledCorpus& corpus, const Quantizer& quantizer) {
    SpamPools pools;
    for (const auto& r : corpus.rows) {
        (r.spam ? pools.spam : pools.nonspam).push_back(quantizer.level(r.value));
    }
    return pools;
}

namespace {

Distribution pool_law(const std::vector<int>& pool, std::size_t levels) {
    std::vector<double> counts(levels, 0.0);
    for (int y : pool) counts[static_cast<std::size_t>(y)] += 1.0;
    return Distribution::normalized(std::move(counts));
}

} // namespace

std::vector<std::vector<double>> SpamResult::slope_table() const {
    std::vector<std::vector<double>> table;
    for (int size = 1; size <= config.max_outliers; ++size) {
        std::vector<double> row;
        for (std::size_t t = 0; t < sweep.rows.size(); ++t) row.push_back(sweep.class_slope(t, size));
        table.push_back(std::move(row));
    }
    return table;
}

SpamResult run_spam_experiment(const LabeledCorpus& corpus, const Quantizer& quantizer,
                               const SpamOptions& options) {
    for (double t : options.thresholds) {
        if (!(t > 1.0)) throw config_error("spam thresholds must exceed 1");
    }
    SpamPools pools = quantize(corpus, quantizer);
    if (pools.spam.empty() || pools.nonspam.empty()) {
        throw data_error("corpus needs both spam and nonspam rows");
    }
    if (options.swap_pools) std::swap(pools.spam, pools.nonspam);

    const std::size_t k = quantizer.levels();
    SpamResult result{
        .sweep = {},
        .config = {},
        .outlier_law = pool_law(pools.spam, k),
        .typical_law = pool_law(pools.nonspam, k),
        .spam_rows = corpus.spam_count(),
        .nonspam_rows = corpus.nonspam_count(),
    };
    if (total_variation(result.outlier_law, result.typical_law) == 0.0) {
        throw data_error("quantized spam and nonspam laws coincide; the experiment is degenerate");
    }

    TestConfig& cfg = result.config;
    cfg.num_sequences = 5;
    cfg.max_outliers = 2;
    cfg.alphabet_size = k;
    cfg.model = Model::identical;
    cfg.knowledge = Knowledge::universal;
    cfg.truncation = Truncation::power(5.0);
    cfg.threshold = options.thresholds.empty() ? 2.0 : options.thresholds.front();

    TrialPlan plan;
    plan.config = cfg;
    plan.trials_per_hypothesis = options.trials;
    plan.seed = options.seed;
    plan.jobs = options.jobs;
    plan.null_tail_epsilon = options.null_tail_epsilon;
    plan.data = std::make_shared<PoolGenerator>(std::move(pools.spam), std::move(pools.nonspam), k);
    result.sweep = sweep(plan, options.thresholds);
    return result;
}

} // namespace seqout
