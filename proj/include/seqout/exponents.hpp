#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seqout/distributions.hpp"
#include "seqout/hypothesis_space.hpp"
#include "seqout/sequential_tests.hpp"

namespace seqout {

// Asymptotic error-exponent coefficients, all in nats per observation
// vector. Each quantity c is the slope -ln P_max / E_S[N] guaranteed (or
// attained) as T -> infinity.

// min_p sum_i c_i D(q_i || p). The minimizer is the c-weighted mixture of
// the q_i; entries with c_i = 0 contribute nothing.
double weighted_divergence_minimum(std::span<const WeightedDistribution> terms);

enum class MsprtCase { full, partial, null };

// MSPRT with both laws known: D(mu||pi) for |S| = K, min(D(mu||pi), D(pi||mu))
// for 1 <= |S| < K, D(pi||mu) for the null. Throws config_error if mu == pi
// or either law lacks full support.
double msprt_exponent(MsprtCase which, const Distribution& mu, const Distribution& pi);

// min_p |S| D(mu||p) + D(pi||p), attained at (|S| mu + pi)/(|S| + 1).
double eta(int outlier_count, const Distribution& mu, const Distribution& pi);

// min_p D(mu||p) + (M - K - |S|) D(pi||p), attained at (mu + w pi)/(1 + w).
double eta_bar(int outlier_count, int num_sequences, int max_outliers,
               const Distribution& mu, const Distribution& pi);

// Coefficient of E_S[N] <= ln T / alpha_S for the pi-known identical test.
// The minimum over competitors S' depends only on a = |S n S'| and
// b = |S' \ S|, so it runs over integer pairs.
double alpha(int outlier_count, int num_sequences, int max_outliers,
             const Distribution& mu, const Distribution& pi);

// Same for the universal identical test (four-term objective).
double alpha_bar(int outlier_count, int num_sequences, int max_outliers,
                 const Distribution& mu, const Distribution& pi);

// Distinct model: pi known -> min_i D(mu_i||pi); universal ->
// min_i min_p D(mu_i||p) + (M - 2K) D(pi||p).
double distinct_exponent(std::span<const Distribution> outlier_laws, const Distribution& pi,
                         int num_sequences, int max_outliers, Knowledge knowledge);

// Per outlier-set size s = 1..K.
struct SizeExponents {
    int outlier_count;
    double alpha;
    double alpha_bar;
    double eta;
    double eta_bar;
    // Slope guarantees: pi known -> D(mu||pi) if s = K else min(D, eta_S);
    // universal -> eta_bar_S if s = K else min(eta_bar_S, eta_S).
    double pi_known_guarantee;
    double universal_guarantee;
};

struct ExponentReport {
    int num_sequences = 0;
    int max_outliers = 0;
    Model model = Model::identical;
    std::size_t alphabet_size = 0;

    // Identical model.
    std::optional<double> msprt_full, msprt_partial, msprt_null;
    std::vector<SizeExponents> by_size;

    // Distinct model.
    std::optional<double> distinct_pi_known, distinct_universal;

    std::vector<std::string> warnings;
};

ExponentReport identical_report(const Distribution& mu, const Distribution& pi,
                                int num_sequences, int max_outliers);

ExponentReport distinct_report(std::span<const Distribution> outlier_laws, const Distribution& pi,
                               int num_sequences, int max_outliers);

} // namespace seqout
