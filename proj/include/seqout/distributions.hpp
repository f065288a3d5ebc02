#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace seqout {

// +inf is the divergence sentinel: a support violation (p(y) > 0, q(y) = 0)
// yields kInfinity, and sums containing it stay infinite.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Tolerance on |sum(probs) - 1| accepted at construction.
inline constexpr double kProbabilitySumTolerance = 1e-9;

// A finite observation alphabet {0, ..., size-1}.
class Alphabet {
public:
    explicit Alphabet(std::size_t size);

    std::size_t size() const noexcept { return size_; }
    bool contains(int symbol) const noexcept {
        return symbol >= 0 && static_cast<std::size_t>(symbol) < size_;
    }
    bool operator==(const Alphabet&) const = default;

private:
    std::size_t size_;
};

// Probability vector over a finite alphabet. Immutable once built.
class Distribution {
public:
    // Throws config_error unless every entry is in [0,1] and the entries sum
    // to 1 within kProbabilitySumTolerance. No implicit renormalization.
    explicit Distribution(std::vector<double> probs);

    // Explicit renormalization of nonnegative weights with a positive total.
    static Distribution normalized(std::vector<double> weights);
    static Distribution uniform(std::size_t alphabet_size);

    std::size_t alphabet_size() const noexcept { return probs_.size(); }
    Alphabet alphabet() const { return Alphabet(probs_.size()); }
    std::span<const double> probs() const noexcept { return probs_; }
    double operator[](std::size_t symbol) const { return probs_[symbol]; }

    bool full_support() const noexcept;

    bool operator==(const Distribution&) const = default;

private:
    std::vector<double> probs_;
};

// Per-symbol observation counts of one sequence (its type).
class TypeVector {
public:
    explicit TypeVector(std::size_t alphabet_size);
    explicit TypeVector(std::vector<std::uint64_t> counts);

    void add(int symbol, std::uint64_t times = 1);
    void merge(const TypeVector& other);

    std::size_t alphabet_size() const noexcept { return counts_.size(); }
    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t count(std::size_t symbol) const { return counts_[symbol]; }
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }

    // Empirical distribution; requires total() >= 1.
    Distribution empirical() const;

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

// D(p||q) in nats; 0 ln(0/q) = 0, kInfinity on support violation.
double relative_entropy(const Distribution& p, const Distribution& q);

// B(p,q) = -ln sum_y sqrt(p(y) q(y)); kInfinity for disjoint supports.
double bhattacharyya(const Distribution& p, const Distribution& q);

double entropy(const Distribution& p);

double total_variation(const Distribution& p, const Distribution& q);

struct WeightedDistribution {
    double weight;
    Distribution distribution;
};

// Weight-normalized convex combination. Throws config_error on an empty
// list, negative weights, a zero total, or mismatched alphabets.
Distribution mixture(std::span<const WeightedDistribution> components);

// Equal-weight mixture, the ML estimate of a common law from several groups.
Distribution average(std::span<const Distribution> components);

} // namespace seqout
