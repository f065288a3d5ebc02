#include "seqout/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "seqout/errors.hpp"
#include "seqout/random.hpp"

namespace seqout {

IidGenerator::IidGenerator(std::vector<Distribution> outlier_laws, Distribution typical)
    : outlier_laws_(std::move(outlier_laws)), typical_(std::move(typical)) {
    if (outlier_laws_.empty()) throw config_error("IidGenerator needs at least one outlier law");
    for (const auto& mu : outlier_laws_) {
        if (mu.alphabet_size() != typical_.alphabet_size()) {
            throw config_error("IidGenerator: outlier and typical laws differ in alphabet size");
        }
    }
}

std::unique_ptr<ObservationSource> IidGenerator::make_source(const Hypothesis& truth, int num_sequences,
                                                             std::uint64_t seed) const {
    if (outlier_laws_.size() > 1 && truth.size() > outlier_laws_.size()) {
        throw config_error("more outliers than outlier laws");
    }
    std::vector<Distribution> laws(static_cast<std::size_t>(num_sequences), typical_);
    std::size_t rank = 0;
    for (int i : truth.outliers()) {
        laws[static_cast<std::size_t>(i)] = outlier_laws_.size() == 1 ? outlier_laws_[0] : outlier_laws_[rank];
        ++rank;
    }
    return std::make_unique<IidSource>(std::move(laws), seed);
}

std::string IidGenerator::describe() const {
    std::ostringstream os;
    os.precision(17);
    auto put = [&os](const Distribution& d) {
        os << '[';
        for (std::size_t y = 0; y < d.alphabet_size(); ++y) os << (y ? "," : "") << d[y];
        os << ']';
    };
    os << "iid outlier=";
    for (std::size_t i = 0; i < outlier_laws_.size(); ++i) {
        if (i) os << ';';
        put(outlier_laws_[i]);
    }
    os << " typical=";
    put(typical_);
    return os.str();
}

PoolGenerator::PoolGenerator(std::vector<int> outlier_pool, std::vector<int> typical_pool,
                             std::size_t alphabet_size)
    : outlier_pool_(std::make_shared<const std::vector<int>>(std::move(outlier_pool))),
      typical_pool_(std::make_shared<const std::vector<int>>(std::move(typical_pool))),
      alphabet_size_(alphabet_size) {
    for (const auto* pool : {outlier_pool_.get(), typical_pool_.get()}) {
        if (pool->empty()) throw config_error("PoolGenerator: empty pool");
        for (int y : *pool) {
            if (y < 0 || static_cast<std::size_t>(y) >= alphabet_size_) {
                throw config_error("PoolGenerator: pool symbol outside alphabet");
            }
        }
    }
}

std::unique_ptr<ObservationSource> PoolGenerator::make_source(const Hypothesis& truth, int num_sequences,
                                                              std::uint64_t seed) const {
    std::vector<PoolSource::Pool> pools(static_cast<std::size_t>(num_sequences), typical_pool_);
    for (int i : truth.outliers()) pools[static_cast<std::size_t>(i)] = outlier_pool_;
    return std::make_unique<PoolSource>(std::move(pools), alphabet_size_, seed);
}

std::string PoolGenerator::describe() const {
    std::ostringstream os;
    os << "pools outlier=" << outlier_pool_->size() << " typical=" << typical_pool_->size()
       << " alphabet=" << alphabet_size_;
    return os.str();
}

namespace {

struct TailConstants {
    double c;  // sum over nonempty S of (|S| (M-|S|))^{|Y|-1}
    double e;  // (M+1)|Y| - 2(|Y|-1)
};

TailConstants tail_constants(int m, int k_max, std::size_t alphabet_size) {
    const double k = static_cast<double>(alphabet_size);
    double c = 0.0;
    double binom = 1.0;
    for (int s = 1; s <= k_max; ++s) {
        binom = binom * static_cast<double>(m - s + 1) / static_cast<double>(s);
        c += binom * std::pow(static_cast<double>(s) * static_cast<double>(m - s), k - 1.0);
    }
    return {c, static_cast<double>(m + 1) * k - 2.0 * (k - 1.0)};
}

} // namespace

double null_stop_tail_bound(std::uint64_t after, double T, int num_sequences, int max_outliers,
                            std::size_t alphabet_size) {
    const auto [c, e] = tail_constants(num_sequences, max_outliers, alphabet_size);
    // sum_{x >= after+2} x^{-e} <= integral_{after+1}^inf x^{-e} dx
    return c / (T * (e - 1.0)) * std::pow(static_cast<double>(after) + 1.0, 1.0 - e);
}

std::uint64_t null_tail_cutoff(double epsilon, double T, int num_sequences, int max_outliers,
                               std::size_t alphabet_size) {
    if (!(epsilon > 0.0)) return std::numeric_limits<std::uint64_t>::max();
    const auto [c, e] = tail_constants(num_sequences, max_outliers, alphabet_size);
    const double x = std::pow(c / (T * (e - 1.0) * epsilon), 1.0 / (e - 1.0));
    std::uint64_t n = x > 1.0 ? static_cast<std::uint64_t>(std::ceil(x)) - 1 : 0;
    auto bound = [&](std::uint64_t v) {
        return null_stop_tail_bound(v, T, num_sequences, max_outliers, alphabet_size);
    };
    while (bound(n) > epsilon) ++n;
    while (n > 0 && bound(n - 1) <= epsilon) --n;
    return n;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
    const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
    return {lo, hi};
}

double TrialsResult::slope(std::size_t hypothesis_index) const {
    const double mean_n = per_hypothesis.at(hypothesis_index).mean_n;
    if (p_max >= 1.0) return 0.0;
    return -std::log(p_max) / mean_n;
}

TrialsResult run_trials(const TrialPlan& plan) {
    if (plan.trials_per_hypothesis < 1) throw config_error("need at least one trial per hypothesis");
    if (!plan.data) throw config_error("trial plan has no data generator");

    TestConfig cfg = plan.config;
    cfg.record_trajectory = false;
    // The test only sees what its knowledge level allows.
    if (cfg.knowledge != Knowledge::both_known) cfg.outlier.reset();
    if (cfg.knowledge == Knowledge::universal) cfg.typical.reset();
    if (!cfg.truncates() && cfg.sample_limit == 0) cfg.sample_limit = plan.default_sample_limit;
    cfg.validate();
    if (plan.data->alphabet_size() != cfg.alphabet_size) {
        throw config_error("data generator alphabet does not match the test config");
    }

    const HypothesisSpace space(cfg.num_sequences, cfg.max_outliers, cfg.model);
    const std::uint64_t trials = plan.trials_per_hypothesis;
    const std::size_t total = space.size() * static_cast<std::size_t>(trials);
    const std::uint64_t cutoff =
        cfg.truncates() ? null_tail_cutoff(plan.null_tail_epsilon, cfg.threshold, cfg.num_sequences,
                                           cfg.max_outliers, cfg.alphabet_size)
                        : std::numeric_limits<std::uint64_t>::max();

    std::vector<std::uint64_t> stop(total);
    std::vector<std::uint8_t> wrong(total), truncated(total), tail_exit(total), null_decision(total);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        std::vector<int> row(static_cast<std::size_t>(cfg.num_sequences));
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            try {
                const std::size_t h = idx / trials;
                const std::uint64_t t = idx % trials;
                const Hypothesis& truth = space[h];
                auto source = plan.data->make_source(truth, cfg.num_sequences, derive_seed(plan.seed, h, t));
                SequentialTest test(cfg);
                bool exited = false;
                do {
                    source->next(row);
                    if (test.observe(row)) break;
                    if (truth.empty() && test.samples() >= cutoff) {
                        test.conclude_truncated();
                        exited = true;
                        break;
                    }
                } while (true);
                const TestResult r = test.result();
                stop[idx] = r.stopping_time;
                wrong[idx] = !(r.decision == truth);
                truncated[idx] = r.truncated;
                tail_exit[idx] = exited;
                null_decision[idx] = r.decision.empty();
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(total);
                return;
            }
        }
    };

    const unsigned jobs = std::max(1u, plan.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    TrialsResult out;
    out.threshold = cfg.threshold;
    std::uint64_t exits = 0;
    for (std::size_t h = 0; h < space.size(); ++h) {
        HypothesisStats s;
        s.hypothesis = space[h];
        s.trials = trials;
        double mean = 0.0, m2 = 0.0;
        std::uint64_t trunc = 0, nulls = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            const std::size_t idx = h * static_cast<std::size_t>(trials) + t;
            s.errors += wrong[idx];
            trunc += truncated[idx];
            nulls += null_decision[idx];
            s.tail_exits += tail_exit[idx];
            const double x = static_cast<double>(stop[idx]);
            const double delta = x - mean;
            mean += delta / static_cast<double>(t + 1);
            m2 += delta * (x - mean);
        }
        const double n = static_cast<double>(trials);
        s.error_rate = static_cast<double>(s.errors) / n;
        s.ci = wilson_interval(s.errors, trials);
        s.mean_n = mean;
        s.sd_n = trials > 1 ? std::sqrt(m2 / (n - 1.0)) : 0.0;
        s.truncation_rate = static_cast<double>(trunc) / n;
        s.null_decision_rate = static_cast<double>(nulls) / n;
        exits += s.tail_exits;
        out.p_max = std::max(out.p_max, s.error_rate);
        out.per_hypothesis.push_back(std::move(s));
    }
    if (out.p_max == 0.0) {
        out.p_max = 3.0 / static_cast<double>(trials);
        out.p_max_is_bound = true;
    }
    if (exits > 0) {
        out.tail_bound = static_cast<double>(exits) *
                         null_stop_tail_bound(cutoff, cfg.threshold, cfg.num_sequences, cfg.max_outliers,
                                              cfg.alphabet_size);
    }
    return out;
}

std::vector<int> SweepResult::classes() const {
    std::set<int> sizes;
    if (!rows.empty()) {
        for (const auto& s : rows.front().per_hypothesis) sizes.insert(static_cast<int>(s.hypothesis.size()));
    }
    return {sizes.begin(), sizes.end()};
}

double SweepResult::class_mean_n(std::size_t row, int size) const {
    double acc = 0.0;
    int count = 0;
    for (const auto& s : rows.at(row).per_hypothesis) {
        if (static_cast<int>(s.hypothesis.size()) == size) {
            acc += s.mean_n;
            ++count;
        }
    }
    if (count == 0) throw config_error("no hypotheses with " + std::to_string(size) + " outliers");
    return acc / count;
}

double SweepResult::class_slope(std::size_t row, int size) const {
    const double p = rows.at(row).p_max;
    if (p >= 1.0) return 0.0;
    return -std::log(p) / class_mean_n(row, size);
}

SweepResult sweep(const TrialPlan& plan, const std::vector<double>& thresholds) {
    if (thresholds.empty()) throw config_error("sweep needs at least one threshold");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] > 1.0)) throw config_error("thresholds must exceed 1");
        if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
            throw config_error("thresholds must be sorted ascending");
        }
    }
    SweepResult result;
    for (double t : thresholds) {
        TrialPlan p = plan;
        p.config.threshold = t;
        result.rows.push_back(run_trials(p));
    }
    return result;
}

} // namespace seqout
