#include "seqout/distributions.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "seqout/errors.hpp"

namespace seqout {

namespace {

void require_same_alphabet(const Distribution& p, const Distribution& q, const char* op) {
    if (p.alphabet_size() != q.alphabet_size()) {
        throw config_error(std::string(op) + ": alphabet size mismatch (" +
                           std::to_string(p.alphabet_size()) + " vs " +
                           std::to_string(q.alphabet_size()) + ")");
    }
}

} // namespace

Alphabet::Alphabet(std::size_t size) : size_(size) {
    if (size < 2) {
        throw config_error("alphabet must have at least 2 symbols, got " + std::to_string(size));
    }
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) {
        throw config_error("distribution needs an alphabet of at least 2 symbols");
    }
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw config_error("probability entries must lie in [0,1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
        throw config_error("probabilities sum to " + std::to_string(sum) + ", expected 1");
    }
}

Distribution Distribution::normalized(std::vector<double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw config_error("normalization weights must be finite and nonnegative");
        }
        total += w;
    }
    if (!(total > 0.0)) {
        throw config_error("cannot normalize weights with zero total");
    }
    for (double& w : weights) w /= total;
    return Distribution(std::move(weights));
}

Distribution Distribution::uniform(std::size_t alphabet_size) {
    return Distribution(std::vector<double>(alphabet_size, 1.0 / static_cast<double>(alphabet_size)));
}

bool Distribution::full_support() const noexcept {
    for (double p : probs_) {
        if (p <= 0.0) return false;
    }
    return true;
}

TypeVector::TypeVector(std::size_t alphabet_size) : counts_(Alphabet(alphabet_size).size(), 0) {}

TypeVector::TypeVector(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
    static_cast<void>(Alphabet(counts_.size()));
    total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

void TypeVector::add(int symbol, std::uint64_t times) {
    if (symbol < 0 || static_cast<std::size_t>(symbol) >= counts_.size()) {
        throw config_error("symbol " + std::to_string(symbol) + " outside alphabet");
    }
    counts_[static_cast<std::size_t>(symbol)] += times;
    total_ += times;
}

void TypeVector::merge(const TypeVector& other) {
    if (other.counts_.size() != counts_.size()) {
        throw config_error("cannot merge type vectors over different alphabets");
    }
    for (std::size_t y = 0; y < counts_.size(); ++y) counts_[y] += other.counts_[y];
    total_ += other.total_;
}

Distribution TypeVector::empirical() const {
    if (total_ == 0) {
        throw config_error("empirical distribution of an empty type vector");
    }
    std::vector<double> probs(counts_.size());
    const double n = static_cast<double>(total_);
    for (std::size_t y = 0; y < counts_.size(); ++y) {
        probs[y] = static_cast<double>(counts_[y]) / n;
    }
    return Distribution(std::move(probs));
}

double relative_entropy(const Distribution& p, const Distribution& q) {
    require_same_alphabet(p, q, "relative_entropy");
    double d = 0.0;
    for (std::size_t y = 0; y < p.alphabet_size(); ++y) {
        if (p[y] <= 0.0) continue;
        if (q[y] <= 0.0) return kInfinity;
        d += p[y] * std::log(p[y] / q[y]);
    }
    // Rounding can leave tiny negatives for p ~ q.
    return d < 0.0 ? 0.0 : d;
}

double bhattacharyya(const Distribution& p, const Distribution& q) {
    require_same_alphabet(p, q, "bhattacharyya");
    double coefficient = 0.0;
    for (std::size_t y = 0; y < p.alphabet_size(); ++y) {
        coefficient += std::sqrt(p[y] * q[y]);
    }
    if (coefficient <= 0.0) return kInfinity;
    const double b = -std::log(coefficient);
    return b < 0.0 ? 0.0 : b;
}

double entropy(const Distribution& p) {
    double h = 0.0;
    for (double v : p.probs()) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

double total_variation(const Distribution& p, const Distribution& q) {
    require_same_alphabet(p, q, "total_variation");
    double tv = 0.0;
    for (std::size_t y = 0; y < p.alphabet_size(); ++y) tv += std::abs(p[y] - q[y]);
    return 0.5 * tv;
}

Distribution mixture(std::span<const WeightedDistribution> components) {
    if (components.empty()) {
        throw config_error("mixture of zero components");
    }
    const std::size_t k = components.front().distribution.alphabet_size();
    std::vector<double> acc(k, 0.0);
    double total = 0.0;
    for (const auto& c : components) {
        if (c.distribution.alphabet_size() != k) {
            throw config_error("mixture: alphabet size mismatch");
        }
        if (!(c.weight >= 0.0) || !std::isfinite(c.weight)) {
            throw config_error("mixture weights must be finite and nonnegative");
        }
        total += c.weight;
        for (std::size_t y = 0; y < k; ++y) acc[y] += c.weight * c.distribution[y];
    }
    if (!(total > 0.0)) {
        throw config_error("mixture weights have zero total");
    }
    for (double& v : acc) v /= total;
    // The convex combination sums to one up to rounding; renormalize that away.
    return Distribution::normalized(std::move(acc));
}

Distribution average(std::span<const Distribution> components) {
    std::vector<WeightedDistribution> weighted;
    weighted.reserve(components.size());
    for (const auto& d : components) weighted.push_back({1.0, d});
    return mixture(weighted);
}

} // namespace seqout
