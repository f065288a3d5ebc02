// seqout: command-line front end for the sequential outlier tests.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seqout/errors.hpp"
#include "seqout/exponents.hpp"
#include "seqout/io.hpp"
#include "seqout/montecarlo.hpp"
#include "seqout/random.hpp"
#include "seqout/sequential_tests.hpp"
#include "seqout/spam_experiment.hpp"

namespace {

using namespace seqout;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Inline JSON ("[0.8,0.2]") or a path to a JSON file.
Distribution read_distribution(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '[' || arg.front() == '{')) {
        json j;
        try {
            j = json::parse(arg);
        } catch (const json::exception& e) {
            throw config_error("cannot parse inline distribution '" + arg + "': " + e.what());
        }
        return distribution_from_json(j);
    }
    return load_distribution(arg);
}

Hypothesis read_hypothesis(const std::string& arg) {
    try {
        return hypothesis_from_json(json::parse(arg));
    } catch (const json::exception&) {
        throw config_error("cannot parse hypothesis '" + arg + "' (expected e.g. [0,3])");
    } catch (const data_error& e) {
        throw config_error(e.what());
    }
}

std::vector<double> read_doubles(const json& j, const char* key) {
    std::vector<double> out;
    if (j.is_number()) return {j.get<double>()};
    if (!j.is_array()) throw config_error(std::string("\"") + key + "\" must be a number or an array");
    for (const auto& v : j) out.push_back(v.get<double>());
    return out;
}

// Everything a simulate/sweep run depends on, except the worker count.
struct RunConfig {
    int num_sequences = 5;
    int max_outliers = 2;
    Model model = Model::identical;
    Knowledge knowledge = Knowledge::universal;
    Truncation truncation = Truncation::power(5.0);
    std::uint64_t sample_limit = 0;
    std::vector<Distribution> mu{Distribution({0.8, 0.2})};
    Distribution pi{std::vector<double>{0.2, 0.8}};
    std::vector<double> thresholds{10.0, 100.0, 1000.0};
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    double null_tail_epsilon = 1e-12;
    std::optional<Hypothesis> truth;
};

void apply_file(RunConfig& rc, const json& j) {
    if (!j.is_object()) throw config_error("config file must hold a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "num_sequences" || key == "M") rc.num_sequences = v.get<int>();
            else if (key == "max_outliers" || key == "K") rc.max_outliers = v.get<int>();
            else if (key == "model") rc.model = parse_model(v.get<std::string>());
            else if (key == "knowledge") rc.knowledge = parse_knowledge(v.get<std::string>());
            else if (key == "truncation") rc.truncation = Truncation::parse(v.get<std::string>());
            else if (key == "sample_limit") rc.sample_limit = v.get<std::uint64_t>();
            else if (key == "mu") {
                rc.mu.clear();
                if (v.is_array() && !v.empty() && v.front().is_array()) {
                    for (const auto& law : v) rc.mu.push_back(distribution_from_json(law));
                } else {
                    rc.mu.push_back(distribution_from_json(v));
                }
            } else if (key == "pi") rc.pi = distribution_from_json(v);
            else if (key == "thresholds" || key == "threshold" || key == "T") rc.thresholds = read_doubles(v, key.c_str());
            else if (key == "trials") rc.trials = v.get<std::uint64_t>();
            else if (key == "seed") rc.seed = v.get<std::uint64_t>();
            else if (key == "null_tail_epsilon") rc.null_tail_epsilon = v.get<double>();
            else if (key == "truth") rc.truth = hypothesis_from_json(v);
            else throw config_error("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw config_error(std::string("bad config value: ") + e.what());
    } catch (const data_error& e) {
        throw config_error(e.what());
    }
}

json resolved(const RunConfig& rc) {
    json mu = json::array();
    for (const auto& m : rc.mu) mu.push_back(to_json(m).at("probs"));
    json j;
    j["num_sequences"] = rc.num_sequences;
    j["max_outliers"] = rc.max_outliers;
    j["model"] = to_string(rc.model);
    j["knowledge"] = to_string(rc.knowledge);
    j["truncation"] = rc.truncation.describe();
    j["sample_limit"] = rc.sample_limit;
    j["mu"] = rc.mu.size() == 1 ? mu.front() : mu;
    j["pi"] = to_json(rc.pi).at("probs");
    j["thresholds"] = rc.thresholds;
    j["trials"] = rc.trials;
    j["seed"] = rc.seed;
    j["null_tail_epsilon"] = rc.null_tail_epsilon;
    if (rc.truth) j["truth"] = to_json(*rc.truth);
    return j;
}

// The test sees only what its knowledge level allows; the data laws stay
// in the generator.
TestConfig test_config(const RunConfig& rc, double threshold) {
    TestConfig c;
    c.num_sequences = rc.num_sequences;
    c.max_outliers = rc.max_outliers;
    c.alphabet_size = rc.pi.alphabet_size();
    c.model = rc.model;
    c.knowledge = rc.knowledge;
    c.threshold = threshold;
    c.truncation = rc.truncation;
    c.sample_limit = rc.sample_limit;
    if (rc.knowledge != Knowledge::universal) c.typical = rc.pi;
    if (rc.knowledge == Knowledge::both_known) c.outlier = rc.mu.front();
    validate_dimensions(c.num_sequences, c.max_outliers);
    if (rc.model == Model::identical && rc.mu.size() != 1) {
        throw config_error("identical model takes exactly one outlier law");
    }
    if (rc.model == Model::distinct && rc.mu.size() != 1 && rc.mu.size() != static_cast<std::size_t>(rc.max_outliers)) {
        throw config_error("distinct model takes one or K outlier laws");
    }
    for (const auto& m : rc.mu) {
        if (m.alphabet_size() != rc.pi.alphabet_size()) throw config_error("mu and pi alphabets differ");
    }
    c.validate();
    return c;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw data_error("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

struct SimFlags {
    std::string config;
    std::optional<int> m, k;
    std::optional<std::string> model, knowledge, truncation, truth;
    std::vector<std::string> mu;
    std::optional<std::string> pi;
    std::vector<double> thresholds;
    std::optional<std::uint64_t> trials, seed, sample_limit;
    std::optional<double> epsilon;
    std::string out, format = "csv", slopes, trajectory, types;
    unsigned jobs = 1;
};

unsigned default_jobs() {
    if (const char* env = std::getenv("SEQ_OUTLIER_JOBS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw config_error(std::string("SEQ_OUTLIER_JOBS must be a positive integer, got '") + env + "'");
    }
    return 1;
}

void add_sim_options(CLI::App* cmd, SimFlags& f, bool single_threshold) {
    cmd->add_option("--config", f.config, "JSON config file (flags override it)");
    cmd->add_option("--M", f.m, "number of sequences");
    cmd->add_option("--K", f.k, "maximum number of outliers");
    cmd->add_option("--model", f.model, "identical | distinct");
    cmd->add_option("--knowledge", f.knowledge, "both-known | pi-known | universal");
    cmd->add_option("--truncation", f.truncation, "f(T), e.g. T^5 or 2*TlogT");
    cmd->add_option("--mu", f.mu, "outlier law (JSON file or inline); repeat for distinct outliers")
        ->allow_extra_args(false);
    cmd->add_option("--pi", f.pi, "typical law (JSON file or inline)");
    cmd->add_option("--T", f.thresholds, single_threshold ? "threshold T" : "thresholds, ascending")
        ->delimiter(',');
    cmd->add_option("--trials", f.trials, "trials per hypothesis");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--sample-limit", f.sample_limit, "abort untruncated tests after this many samples");
    cmd->add_option("--epsilon", f.epsilon, "null-tail shortcut tolerance (0 disables)");
    cmd->add_option("--jobs", f.jobs, "worker threads (default $SEQ_OUTLIER_JOBS or 1)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--slopes", f.slopes, "also write a slope-vs-T table here");
    if (single_threshold) cmd->add_option("--truth", f.truth, "outlier set for --trajectory/--types, e.g. [0,1]");
}

RunConfig resolve(const SimFlags& f) {
    RunConfig rc;
    if (!f.config.empty()) apply_file(rc, load_json_file(f.config));
    if (f.m) rc.num_sequences = *f.m;
    if (f.k) rc.max_outliers = *f.k;
    if (f.model) rc.model = parse_model(*f.model);
    if (f.knowledge) rc.knowledge = parse_knowledge(*f.knowledge);
    if (f.truncation) rc.truncation = Truncation::parse(*f.truncation);
    if (!f.mu.empty()) {
        rc.mu.clear();
        for (const auto& m : f.mu) rc.mu.push_back(read_distribution(m));
    }
    if (f.pi) rc.pi = read_distribution(*f.pi);
    if (!f.thresholds.empty()) rc.thresholds = f.thresholds;
    if (f.trials) rc.trials = *f.trials;
    if (f.seed) rc.seed = *f.seed;
    if (f.sample_limit) rc.sample_limit = *f.sample_limit;
    if (f.epsilon) rc.null_tail_epsilon = *f.epsilon;
    if (f.truth) rc.truth = read_hypothesis(*f.truth);
    if (rc.trials < 1) throw config_error("--trials must be at least 1");
    return rc;
}

void emit_sweep(const SweepResult& result, const RunConfig& rc, const SimFlags& f, const std::string& command) {
    const Provenance prov{command, rc.seed, resolved(rc)};
    Output out(f.out);
    if (f.format == "json") {
        json j = to_json(prov);
        j = {{"provenance", j}, {"result", to_json(result)}};
        out.stream() << j.dump(2) << '\n';
    } else {
        write_provenance_csv(out.stream(), prov);
        write_sweep_csv(out.stream(), result);
    }
    if (!f.slopes.empty()) {
        Output s(f.slopes);
        write_provenance_csv(s.stream(), prov);
        const auto sizes = result.classes();
        write_slope_table(s.stream(), result, sizes);
    }
}

int run_sim(const SimFlags& f, bool single) {
    RunConfig rc = resolve(f);
    if (single && rc.thresholds.size() != 1) throw config_error("simulate takes exactly one --T");
    const TestConfig cfg = test_config(rc, rc.thresholds.front());

    TrialPlan plan;
    plan.config = cfg;
    plan.trials_per_hypothesis = rc.trials;
    plan.seed = rc.seed;
    plan.jobs = f.jobs;
    plan.null_tail_epsilon = rc.null_tail_epsilon;
    plan.data = std::make_shared<IidGenerator>(rc.mu, rc.pi);

    if (!f.trajectory.empty() || !f.types.empty()) {
        const HypothesisSpace space(cfg.num_sequences, cfg.max_outliers, cfg.model);
        Hypothesis truth = rc.truth.value_or(space[space.size() - 1]);
        const std::size_t h = space.index_of(truth);
        TestConfig traced = cfg;
        traced.record_trajectory = true;
        if (!traced.truncates() && traced.sample_limit == 0) traced.sample_limit = plan.default_sample_limit;
        auto source = plan.data->make_source(truth, cfg.num_sequences, derive_seed(rc.seed, h, 0));
        SequentialTest test(traced);
        std::vector<int> row(static_cast<std::size_t>(cfg.num_sequences));
        do {
            source->next(row);
        } while (!test.observe(row));
        const TestResult r = test.result();
        const Provenance prov{single ? "simulate" : "sweep", rc.seed, resolved(rc)};
        if (!f.trajectory.empty()) {
            Output t(f.trajectory);
            write_provenance_csv(t.stream(), prov);
            t.stream() << "# result: " << to_json(r).dump() << '\n';
            write_trajectory_csv(t.stream(), r.trajectory);
        }
        if (!f.types.empty()) {
            Output t(f.types);
            write_provenance_csv(t.stream(), prov);
            const auto types = test.types();
            write_types_csv(t.stream(), types);
        }
    }

    const SweepResult result = sweep(plan, rc.thresholds);
    emit_sweep(result, rc, f, single ? "simulate" : "sweep");
    return 0;
}

struct ExponentFlags {
    std::vector<std::string> mu;
    std::string pi;
    int m = 5, k = 2;
    std::string model = "identical", knowledge = "universal";
    std::string format = "json", out;
    bool allow_degenerate = false;
};

int run_exponents(const ExponentFlags& f) {
    const Model model = parse_model(f.model);
    const Knowledge knowledge = parse_knowledge(f.knowledge);
    std::vector<Distribution> mu;
    for (const auto& m : f.mu) mu.push_back(read_distribution(m));
    const Distribution pi = read_distribution(f.pi);
    for (const auto& m : mu) {
        if (m.alphabet_size() != pi.alphabet_size()) throw config_error("mu and pi alphabets differ");
        if (m == pi && !f.allow_degenerate) {
            throw config_error("mu equals pi: every exponent is 0 (pass --allow-degenerate to report anyway)");
        }
    }
    ExponentReport report;
    if (model == Model::identical) {
        if (mu.size() != 1) throw config_error("identical model takes exactly one --mu");
        report = identical_report(mu.front(), pi, f.m, f.k);
    } else {
        if (mu.size() != static_cast<std::size_t>(f.k)) throw config_error("distinct model takes K --mu laws");
        report = distinct_report(mu, pi, f.m, f.k);
    }
    Output out(f.out);
    if (f.format == "table") {
        out.stream() << "# tool: seqout " << SEQOUT_VERSION << "  knowledge=" << to_string(knowledge) << '\n';
        write_exponent_table(out.stream(), report);
    } else {
        json mus = json::array();
        for (const auto& m : mu) mus.push_back(to_json(m).at("probs"));
        const Provenance prov{"exponents", 0,
                              {{"num_sequences", f.m}, {"max_outliers", f.k}, {"model", f.model},
                               {"knowledge", to_string(knowledge)}, {"mu", mus},
                               {"pi", to_json(pi).at("probs")}}};
        json j = to_json(prov);
        j.erase("seed");
        out.stream() << json{{"provenance", j}, {"report", to_json(report)}}.dump(2) << '\n';
    }
    return 0;
}

struct SpamFlags {
    std::string data;
    std::optional<std::size_t> feature_index;
    std::optional<std::string> feature_name;
    std::vector<double> thresholds{3.98, 4.0, 4.05, 4.1};
    std::uint64_t trials = 5000, seed = 0;
    std::string strategy = "zero-inflated";
    int levels = 5;
    bool swap = false;
    double epsilon = 1e-12;
    std::string format = "table", out, sweep_csv;
    unsigned jobs = 1;
};

int run_spam(const SpamFlags& f) {
    if (f.trials < 1) throw config_error("--trials must be at least 1");
    const LabeledCorpus corpus = load_corpus(f.data, {f.feature_index, f.feature_name});
    const Quantizer q = fit_quantizer(corpus, f.levels, parse_strategy(f.strategy));
    SpamOptions opt;
    opt.thresholds = f.thresholds;
    opt.trials = f.trials;
    opt.seed = f.seed;
    opt.jobs = f.jobs;
    opt.swap_pools = f.swap;
    opt.null_tail_epsilon = f.epsilon;
    const SpamResult r = run_spam_experiment(corpus, q, opt);

    json cfg = to_json(r.config);
    cfg.erase("threshold");
    cfg["thresholds"] = f.thresholds;
    cfg["data"] = f.data;
    cfg["feature"] = corpus.feature_name;
    cfg["feature_index"] = corpus.feature_index;
    cfg["rows"] = corpus.rows.size();
    cfg["spam_rows"] = r.spam_rows;
    cfg["nonspam_rows"] = r.nonspam_rows;
    cfg["strategy"] = to_string(q.strategy());
    cfg["edges"] = q.edges();
    cfg["swap_pools"] = f.swap;
    cfg["outlier_law"] = to_json(r.outlier_law).at("probs");
    cfg["typical_law"] = to_json(r.typical_law).at("probs");
    cfg["trials"] = f.trials;
    cfg["null_tail_epsilon"] = f.epsilon;
    const Provenance prov{"spam", f.seed, cfg};

    const auto table = r.slope_table();
    Output out(f.out);
    std::ostream& os = out.stream();
    if (f.format == "json") {
        json rows = json::array();
        for (std::size_t c = 0; c < table.size(); ++c) {
            rows.push_back({{"outliers", c + 1}, {"slopes", table[c]}});
        }
        os << json{{"provenance", to_json(prov)}, {"thresholds", f.thresholds}, {"slope_table", rows},
                   {"sweep", to_json(r.sweep)}}
                  .dump(2)
           << '\n';
    } else if (f.format == "csv") {
        write_provenance_csv(os, prov);
        os << "outliers";
        for (double t : f.thresholds) os << ',' << format_double(t);
        os << '\n';
        for (std::size_t c = 0; c < table.size(); ++c) {
            os << c + 1;
            for (double v : table[c]) os << ',' << format_double(v);
            os << '\n';
        }
    } else {
        write_provenance_csv(os, prov);
        os << std::setw(10) << "T";
        for (double t : f.thresholds) os << std::setw(12) << format_double(t);
        os << '\n';
        for (std::size_t c = 0; c < table.size(); ++c) {
            os << std::setw(10) << ("|S|=" + std::to_string(c + 1));
            for (double v : table[c]) os << std::setw(12) << std::fixed << std::setprecision(5) << v;
            os << std::defaultfloat << '\n';
        }
        os << std::setw(10) << "P_max";
        for (const auto& row : r.sweep.rows) {
            os << std::setw(12) << std::fixed << std::setprecision(5) << row.p_max
               << (row.p_max_is_bound ? "*" : "");
        }
        os << std::defaultfloat << '\n';
    }
    if (!f.sweep_csv.empty()) {
        Output s(f.sweep_csv);
        write_provenance_csv(s.stream(), prov);
        write_sweep_csv(s.stream(), r.sweep);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential outlier hypothesis testing over finite alphabets"};
    app.set_version_flag("--version", SEQOUT_VERSION);
    app.require_subcommand(1);

    ExponentFlags ef;
    auto* exp = app.add_subcommand("exponents", "error-exponent coefficients");
    exp->add_option("--mu", ef.mu, "outlier law(s): JSON file or inline; K of them for --model distinct")
        ->required()
        ->allow_extra_args(false);
    exp->add_option("--pi", ef.pi, "typical law: JSON file or inline")->required();
    exp->add_option("--M", ef.m, "number of sequences");
    exp->add_option("--K", ef.k, "maximum number of outliers");
    exp->add_option("--model", ef.model, "identical | distinct");
    exp->add_option("--knowledge", ef.knowledge, "both-known | pi-known | universal");
    exp->add_option("--format", ef.format, "json | table")->check(CLI::IsMember({"json", "table"}));
    exp->add_option("--out", ef.out, "output file (default stdout)");
    exp->add_flag("--allow-degenerate", ef.allow_degenerate, "accept mu == pi");

    SimFlags sim, swp;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo trials at one threshold");
    add_sim_options(simulate, sim, true);
    simulate->add_option("--trajectory", sim.trajectory, "per-step trajectory CSV of one traced run");
    simulate->add_option("--types", sim.types, "final sequence types of the traced run");
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte-Carlo trials over a threshold grid");
    add_sim_options(sweep_cmd, swp, false);

    SpamFlags sf;
    auto* spam = app.add_subcommand("spam", "spambase experiment (M=5, K=2, universal, f(T)=T^5)");
    spam->add_option("--data", sf.data, "spambase-style CSV")->required();
    auto* fi = spam->add_option("--feature-index", sf.feature_index, "0-based feature column");
    auto* fn = spam->add_option("--feature-name", sf.feature_name, "feature column name (default word_freq_hp)");
    fi->excludes(fn);
    spam->add_option("--thresholds,--T", sf.thresholds, "thresholds, ascending")->delimiter(',');
    spam->add_option("--trials", sf.trials, "trials per hypothesis");
    spam->add_option("--seed", sf.seed, "master seed");
    spam->add_option("--strategy", sf.strategy, "zero-inflated | equal-width")
        ->check(CLI::IsMember({"zero-inflated", "equal-width"}));
    spam->add_option("--levels", sf.levels, "quantization levels");
    spam->add_flag("--swap-pools", sf.swap, "use spam rows as the typical pool");
    spam->add_option("--epsilon", sf.epsilon, "null-tail shortcut tolerance (0 disables)");
    spam->add_option("--jobs", sf.jobs, "worker threads (default $SEQ_OUTLIER_JOBS or 1)")->check(CLI::PositiveNumber);
    spam->add_option("--format", sf.format, "table | csv | json")->check(CLI::IsMember({"table", "csv", "json"}));
    spam->add_option("--out", sf.out, "output file (default stdout)");
    spam->add_option("--sweep-csv", sf.sweep_csv, "also write the per-hypothesis sweep CSV");

    try {
        const unsigned jobs = default_jobs();
        sim.jobs = swp.jobs = sf.jobs = jobs;
    } catch (const config_error& e) {
        std::cerr << "seqout: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*exp) return run_exponents(ef);
        if (*simulate) return run_sim(sim, true);
        if (*sweep_cmd) return run_sim(swp, false);
        if (*spam) return run_spam(sf);
    } catch (const data_error& e) {
        std::cerr << "seqout: data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "seqout: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
