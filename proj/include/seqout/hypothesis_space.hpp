#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "seqout/distributions.hpp"

namespace seqout {

enum class Model { identical, distinct };

std::string to_string(Model model);
Model parse_model(const std::string& text);

// A candidate outlier set: sorted, duplicate-free sequence indices.
// The empty set is the null hypothesis (identical model only).
class Hypothesis {
public:
    Hypothesis() = default;
    Hypothesis(std::initializer_list<int> outliers);
    explicit Hypothesis(std::vector<int> outliers);

    std::span<const int> outliers() const noexcept { return outliers_; }
    std::size_t size() const noexcept { return outliers_.size(); }
    bool empty() const noexcept { return outliers_.empty(); }
    bool contains(int index) const noexcept;

    // Membership mask of length num_sequences.
    std::vector<bool> mask(int num_sequences) const;

    bool operator==(const Hypothesis&) const = default;
    // Enumeration order: by size, then lexicographic.
    bool operator<(const Hypothesis& other) const;

private:
    std::vector<int> outliers_;
};

std::string to_string(const Hypothesis& h);

// All admissible hypotheses for (M, K, model) in enumeration order.
class HypothesisSpace {
public:
    HypothesisSpace(int num_sequences, int max_outliers, Model model);

    int num_sequences() const noexcept { return num_sequences_; }
    int max_outliers() const noexcept { return max_outliers_; }
    Model model() const noexcept { return model_; }

    std::size_t size() const noexcept { return hypotheses_.size(); }
    const Hypothesis& operator[](std::size_t i) const { return hypotheses_[i]; }
    std::span<const Hypothesis> hypotheses() const noexcept { return hypotheses_; }

    // Index of the first nonempty hypothesis (1 for identical, 0 for distinct).
    std::size_t first_nonnull() const noexcept { return model_ == Model::identical ? 1 : 0; }

    // Position of h in the enumeration; throws config_error if h is not admissible.
    std::size_t index_of(const Hypothesis& h) const;

private:
    int num_sequences_;
    int max_outliers_;
    Model model_;
    std::vector<Hypothesis> hypotheses_;
};

HypothesisSpace enumerate(int num_sequences, int max_outliers, Model model);

// Validates M >= 3 and 1 <= K < M/2; throws config_error otherwise.
void validate_dimensions(int num_sequences, int max_outliers);

// Generalized-likelihood scores. Each is the bracketed divergence sum whose
// argmin is the ML hypothesis; multiplying a score difference by n gives the
// log generalized-likelihood ratio.

// Identical outliers, typical law known:
//   sum_{i in S} D(g_i || mean_{k in S} g_k) + sum_{j not in S} D(g_j || pi)
double gl_score_typ(const Hypothesis& s, std::span<const Distribution> gammas,
                    const Distribution& pi);

// Identical outliers, both laws unknown: the typical law is replaced by the
// mean of the complement's empiricals.
double gl_score_univ(const Hypothesis& s, std::span<const Distribution> gammas);

// Distinct outliers, typical law known: sum_{j not in S} D(g_j || pi).
double gl_score_distinct_typ(const Hypothesis& s, std::span<const Distribution> gammas,
                             const Distribution& pi, int num_outliers);

// Distinct outliers, both unknown: sum_{j not in S} D(g_j || mean_{k not in S} g_k).
double gl_score_distinct_univ(const Hypothesis& s, std::span<const Distribution> gammas,
                              int num_outliers);

struct BestHypothesis {
    std::size_t index;  // position in the score table
    double gap;         // min over competitors of (score - best score)
};

// Argmin of scores with ties resolved to the earliest index. A lone entry
// has gap kInfinity; an infinite best score has gap 0.
BestHypothesis best_hypothesis(std::span<const double> scores);

} // namespace seqout
