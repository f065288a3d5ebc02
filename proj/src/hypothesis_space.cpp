#include "seqout/hypothesis_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "seqout/errors.hpp"

namespace seqout {

std::string to_string(Model model) {
    return model == Model::identical ? "identical" : "distinct";
}

Model parse_model(const std::string& text) {
    if (text == "identical") return Model::identical;
    if (text == "distinct") return Model::distinct;
    throw config_error("unknown model '" + text + "' (expected identical|distinct)");
}

Hypothesis::Hypothesis(std::initializer_list<int> outliers)
    : Hypothesis(std::vector<int>(outliers)) {}

Hypothesis::Hypothesis(std::vector<int> outliers) : outliers_(std::move(outliers)) {
    std::sort(outliers_.begin(), outliers_.end());
    if (std::adjacent_find(outliers_.begin(), outliers_.end()) != outliers_.end()) {
        throw config_error("hypothesis contains a repeated sequence index");
    }
    if (!outliers_.empty() && outliers_.front() < 0) {
        throw config_error("hypothesis contains a negative sequence index");
    }
}

bool Hypothesis::contains(int index) const noexcept {
    return std::binary_search(outliers_.begin(), outliers_.end(), index);
}

std::vector<bool> Hypothesis::mask(int num_sequences) const {
    std::vector<bool> m(static_cast<std::size_t>(num_sequences), false);
    for (int i : outliers_) {
        if (i >= num_sequences) {
            throw config_error("hypothesis index " + std::to_string(i) + " out of range");
        }
        m[static_cast<std::size_t>(i)] = true;
    }
    return m;
}

bool Hypothesis::operator<(const Hypothesis& other) const {
    if (outliers_.size() != other.outliers_.size()) {
        return outliers_.size() < other.outliers_.size();
    }
    return outliers_ < other.outliers_;
}

std::string to_string(const Hypothesis& h) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (i) os << ',';
        os << h.outliers()[i];
    }
    os << ']';
    return os.str();
}

void validate_dimensions(int num_sequences, int max_outliers) {
    if (num_sequences < 3) {
        throw config_error("need at least 3 sequences, got M=" + std::to_string(num_sequences));
    }
    if (max_outliers < 1 || 2 * max_outliers >= num_sequences) {
        throw config_error("outlier count must satisfy 1 <= K < M/2 (M=" +
                           std::to_string(num_sequences) + ", K=" + std::to_string(max_outliers) + ")");
    }
}

namespace {

// Appends all size-k subsets of {0..m-1} in lexicographic order.
void append_subsets(int m, int k, std::vector<Hypothesis>& out) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.emplace_back(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < k; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

} // namespace

HypothesisSpace::HypothesisSpace(int num_sequences, int max_outliers, Model model)
    : num_sequences_(num_sequences), max_outliers_(max_outliers), model_(model) {
    validate_dimensions(num_sequences, max_outliers);
    if (model == Model::identical) {
        hypotheses_.emplace_back();
        for (int k = 1; k <= max_outliers; ++k) append_subsets(num_sequences, k, hypotheses_);
    } else {
        append_subsets(num_sequences, max_outliers, hypotheses_);
    }
}

std::size_t HypothesisSpace::index_of(const Hypothesis& h) const {
    auto it = std::lower_bound(hypotheses_.begin(), hypotheses_.end(), h);
    if (it == hypotheses_.end() || !(*it == h)) {
        throw config_error("hypothesis " + to_string(h) + " is not in the hypothesis space");
    }
    return static_cast<std::size_t>(it - hypotheses_.begin());
}

HypothesisSpace enumerate(int num_sequences, int max_outliers, Model model) {
    return HypothesisSpace(num_sequences, max_outliers, model);
}

namespace {

void check_indices(const Hypothesis& s, std::size_t m) {
    if (!s.empty() && static_cast<std::size_t>(s.outliers().back()) >= m) {
        throw config_error("hypothesis " + to_string(s) + " references a missing sequence");
    }
}

// Splits gammas into (in S, not in S).
std::pair<std::vector<Distribution>, std::vector<Distribution>> partition(
    const Hypothesis& s, std::span<const Distribution> gammas) {
    std::vector<Distribution> inside, outside;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        (s.contains(static_cast<int>(i)) ? inside : outside).push_back(gammas[i]);
    }
    return {std::move(inside), std::move(outside)};
}

double sum_divergence(std::span<const Distribution> ps, const Distribution& q) {
    double total = 0.0;
    for (const auto& p : ps) total += relative_entropy(p, q);
    return total;
}

} // namespace

double gl_score_typ(const Hypothesis& s, std::span<const Distribution> gammas,
                    const Distribution& pi) {
    if (s.empty()) throw config_error("gl_score_typ: the null hypothesis has no score");
    check_indices(s, gammas.size());
    auto [inside, outside] = partition(s, gammas);
    const Distribution mu_hat = average(inside);
    return sum_divergence(inside, mu_hat) + sum_divergence(outside, pi);
}

double gl_score_univ(const Hypothesis& s, std::span<const Distribution> gammas) {
    if (s.empty()) throw config_error("gl_score_univ: the null hypothesis has no score");
    check_indices(s, gammas.size());
    if (s.size() >= gammas.size()) {
        throw config_error("gl_score_univ: hypothesis leaves no typical sequence");
    }
    auto [inside, outside] = partition(s, gammas);
    return sum_divergence(inside, average(inside)) + sum_divergence(outside, average(outside));
}

double gl_score_distinct_typ(const Hypothesis& s, std::span<const Distribution> gammas,
                             const Distribution& pi, int num_outliers) {
    if (static_cast<int>(s.size()) != num_outliers) {
        throw config_error("gl_score_distinct_typ: hypothesis size must equal K");
    }
    check_indices(s, gammas.size());
    auto [inside, outside] = partition(s, gammas);
    return sum_divergence(outside, pi);
}

double gl_score_distinct_univ(const Hypothesis& s, std::span<const Distribution> gammas,
                              int num_outliers) {
    if (static_cast<int>(s.size()) != num_outliers) {
        throw config_error("gl_score_distinct_univ: hypothesis size must equal K");
    }
    check_indices(s, gammas.size());
    auto [inside, outside] = partition(s, gammas);
    return sum_divergence(outside, average(outside));
}

BestHypothesis best_hypothesis(std::span<const double> scores) {
    if (scores.empty()) throw config_error("best_hypothesis: empty score table");
    std::size_t best = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (std::isnan(scores[i])) throw config_error("best_hypothesis: NaN score");
        if (scores[i] < scores[best]) best = i;
    }
    if (std::isinf(scores[best])) return {best, 0.0};
    double gap = kInfinity;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (i != best) gap = std::min(gap, scores[i] - scores[best]);
    }
    return {best, gap};
}

} // namespace seqout
