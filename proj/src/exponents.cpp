#include "seqout/exponents.hpp"

#include <algorithm>
#include <cmath>

#include "seqout/errors.hpp"

namespace seqout {

namespace {

void require_same_alphabet(const Distribution& mu, const Distribution& pi) {
    if (mu.alphabet_size() != pi.alphabet_size()) {
        throw config_error("outlier and typical laws live on different alphabets");
    }
}

bool coincide(const Distribution& mu, const Distribution& pi) {
    return total_variation(mu, pi) == 0.0;
}

// a D(mu || m) + b D(pi || m) with m = (a mu + b pi)/(a + b); 0 when a = b = 0.
double pair_term(double a, double b, const Distribution& mu, const Distribution& pi) {
    if (a + b <= 0.0) return 0.0;
    const WeightedDistribution terms[] = {{a, mu}, {b, pi}};
    return weighted_divergence_minimum(terms);
}

} // namespace

double weighted_divergence_minimum(std::span<const WeightedDistribution> terms) {
    std::vector<WeightedDistribution> active;
    for (const auto& t : terms) {
        if (t.weight < 0.0) throw config_error("divergence weights must be nonnegative");
        if (t.weight > 0.0) active.push_back(t);
    }
    if (active.empty()) return 0.0;
    const Distribution p = mixture(active);
    double value = 0.0;
    for (const auto& t : active) value += t.weight * relative_entropy(t.distribution, p);
    return value;
}

double msprt_exponent(MsprtCase which, const Distribution& mu, const Distribution& pi) {
    require_same_alphabet(mu, pi);
    if (!mu.full_support() || !pi.full_support()) {
        throw config_error("MSPRT exponents need full-support laws");
    }
    if (coincide(mu, pi)) {
        throw config_error("MSPRT exponent undefined for mu == pi (the test is degenerate)");
    }
    const double forward = relative_entropy(mu, pi);
    const double backward = relative_entropy(pi, mu);
    switch (which) {
    case MsprtCase::full: return forward;
    case MsprtCase::partial: return std::min(forward, backward);
    case MsprtCase::null: return backward;
    }
    return 0.0;
}

double eta(int outlier_count, const Distribution& mu, const Distribution& pi) {
    require_same_alphabet(mu, pi);
    if (outlier_count < 1) throw config_error("eta needs |S| >= 1");
    return pair_term(static_cast<double>(outlier_count), 1.0, mu, pi);
}

double eta_bar(int outlier_count, int num_sequences, int max_outliers,
               const Distribution& mu, const Distribution& pi) {
    require_same_alphabet(mu, pi);
    const int weight = num_sequences - max_outliers - outlier_count;
    if (outlier_count < 0 || weight < 0) {
        throw config_error("eta_bar needs M - K - |S| >= 0");
    }
    return pair_term(1.0, static_cast<double>(weight), mu, pi);
}

double alpha(int outlier_count, int num_sequences, int max_outliers,
             const Distribution& mu, const Distribution& pi) {
    require_same_alphabet(mu, pi);
    validate_dimensions(num_sequences, max_outliers);
    const int s = outlier_count;
    if (s < 1 || s > max_outliers) throw config_error("alpha needs 1 <= |S| <= K");
    const double d_mu_pi = relative_entropy(mu, pi);
    double best = kInfinity;
    for (int a = 0; a <= s; ++a) {
        for (int b = 0; b <= num_sequences - s; ++b) {
            if (a + b < 1 || a + b > max_outliers || (a == s && b == 0)) continue;
            double v = pair_term(a, b, mu, pi);
            if (s - a > 0) v += (s - a) * d_mu_pi;
            best = std::min(best, v);
        }
    }
    return best;
}

double alpha_bar(int outlier_count, int num_sequences, int max_outliers,
                 const Distribution& mu, const Distribution& pi) {
    require_same_alphabet(mu, pi);
    validate_dimensions(num_sequences, max_outliers);
    const int s = outlier_count;
    if (s < 1 || s > max_outliers) throw config_error("alpha_bar needs 1 <= |S| <= K");
    double best = kInfinity;
    for (int a = 0; a <= s; ++a) {
        for (int b = 0; b <= num_sequences - s; ++b) {
            if (a + b < 1 || a + b > max_outliers || (a == s && b == 0)) continue;
            const int c = s - a;
            const int d = num_sequences - s - b;
            best = std::min(best, pair_term(a, b, mu, pi) + pair_term(c, d, mu, pi));
        }
    }
    return best;
}

double distinct_exponent(std::span<const Distribution> outlier_laws, const Distribution& pi,
                         int num_sequences, int max_outliers, Knowledge knowledge) {
    validate_dimensions(num_sequences, max_outliers);
    if (static_cast<int>(outlier_laws.size()) != max_outliers) {
        throw config_error("distinct model needs exactly K outlier laws");
    }
    double best = kInfinity;
    for (const auto& mu : outlier_laws) {
        require_same_alphabet(mu, pi);
        double v = 0.0;
        switch (knowledge) {
        case Knowledge::pi_known: v = relative_entropy(mu, pi); break;
        case Knowledge::universal:
            v = pair_term(1.0, static_cast<double>(num_sequences - 2 * max_outliers), mu, pi);
            break;
        case Knowledge::both_known:
            throw config_error("distinct-model exponents are defined for pi_known and universal");
        }
        best = std::min(best, v);
    }
    return best;
}

ExponentReport identical_report(const Distribution& mu, const Distribution& pi,
                                int num_sequences, int max_outliers) {
    require_same_alphabet(mu, pi);
    validate_dimensions(num_sequences, max_outliers);
    ExponentReport r;
    r.num_sequences = num_sequences;
    r.max_outliers = max_outliers;
    r.model = Model::identical;
    r.alphabet_size = mu.alphabet_size();

    if (coincide(mu, pi)) {
        r.warnings.emplace_back("mu == pi: every coefficient is 0 and the tests are degenerate");
    } else if (mu.full_support() && pi.full_support()) {
        r.msprt_full = msprt_exponent(MsprtCase::full, mu, pi);
        r.msprt_partial = msprt_exponent(MsprtCase::partial, mu, pi);
        r.msprt_null = msprt_exponent(MsprtCase::null, mu, pi);
    } else {
        r.warnings.emplace_back("mu or pi lacks full support; MSPRT coefficients omitted");
    }

    const double d_mu_pi = relative_entropy(mu, pi);
    for (int s = 1; s <= max_outliers; ++s) {
        SizeExponents e{};
        e.outlier_count = s;
        e.alpha = alpha(s, num_sequences, max_outliers, mu, pi);
        e.alpha_bar = alpha_bar(s, num_sequences, max_outliers, mu, pi);
        e.eta = eta(s, mu, pi);
        e.eta_bar = eta_bar(s, num_sequences, max_outliers, mu, pi);
        e.pi_known_guarantee = s == max_outliers ? d_mu_pi : std::min(d_mu_pi, e.eta);
        e.universal_guarantee = s == max_outliers ? e.eta_bar : std::min(e.eta_bar, e.eta);
        r.by_size.push_back(e);
    }
    return r;
}

ExponentReport distinct_report(std::span<const Distribution> outlier_laws, const Distribution& pi,
                               int num_sequences, int max_outliers) {
    ExponentReport r;
    r.num_sequences = num_sequences;
    r.max_outliers = max_outliers;
    r.model = Model::distinct;
    r.alphabet_size = pi.alphabet_size();
    for (std::size_t i = 0; i < outlier_laws.size(); ++i) {
        if (outlier_laws.size() == static_cast<std::size_t>(max_outliers) &&
            outlier_laws[i].alphabet_size() == pi.alphabet_size() && coincide(outlier_laws[i], pi)) {
            r.warnings.emplace_back("outlier law " + std::to_string(i) +
                                    " equals pi: coefficients are 0");
        }
    }
    r.distinct_pi_known = distinct_exponent(outlier_laws, pi, num_sequences, max_outliers,
                                            Knowledge::pi_known);
    r.distinct_universal = distinct_exponent(outlier_laws, pi, num_sequences, max_outliers,
                                             Knowledge::universal);
    return r;
}

} // namespace seqout
