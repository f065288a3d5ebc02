#include "seqout/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "seqout/errors.hpp"

namespace seqout {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

namespace {

// JSON has no infinity; non-finite values are written as strings.
json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

json optional_number(const std::optional<double>& v) {
    return v ? number(*v) : json(nullptr);
}

} // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw data_error("'" + path + "' is not valid JSON: " + e.what());
    }
}

json to_json(const Distribution& d) {
    json arr = json::array();
    for (double p : d.probs()) arr.push_back(p);
    return {{"alphabet_size", d.alphabet_size()}, {"probs", std::move(arr)}};
}

Distribution distribution_from_json(const json& j) {
    const json* probs = &j;
    if (j.is_object()) {
        if (!j.contains("probs")) throw data_error("distribution object lacks \"probs\"");
        probs = &j.at("probs");
    }
    if (!probs->is_array()) throw data_error("distribution must be an array of probabilities");
    std::vector<double> p;
    for (const auto& v : *probs) {
        if (!v.is_number()) throw data_error("distribution entries must be numbers");
        p.push_back(v.get<double>());
    }
    if (j.is_object() && j.contains("alphabet_size")) {
        if (!j.at("alphabet_size").is_number_unsigned() || j.at("alphabet_size").get<std::size_t>() != p.size()) {
            throw data_error("alphabet_size does not match the number of probabilities");
        }
    }
    return Distribution(std::move(p));
}

Distribution load_distribution(const std::string& path) {
    const json j = load_json_file(path);
    try {
        return distribution_from_json(j);
    } catch (const std::exception& e) {
        throw data_error("'" + path + "': " + e.what());
    }
}

json to_json(const Hypothesis& h) {
    json arr = json::array();
    for (int i : h.outliers()) arr.push_back(i);
    return arr;
}

Hypothesis hypothesis_from_json(const json& j) {
    if (!j.is_array()) throw data_error("hypothesis must be an array of sequence indices");
    std::vector<int> v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw data_error("hypothesis entries must be integers");
        v.push_back(x.get<int>());
    }
    return Hypothesis(std::move(v));
}

json to_json(const TestResult& r) {
    return {{"n", r.stopping_time}, {"decision", to_json(r.decision)}, {"truncated", r.truncated}};
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> trajectory) {
    out << "n,best,gap,threshold\n";
    for (const auto& p : trajectory) {
        out << p.n << ",\"" << to_string(p.best) << "\"," << format_double(p.gap) << ','
            << format_double(p.threshold) << '\n';
    }
}

void write_types_csv(std::ostream& out, std::span<const TypeVector> types) {
    out << "sequence";
    const std::size_t k = types.empty() ? 0 : types.front().alphabet_size();
    for (std::size_t y = 0; y < k; ++y) out << ",count_" << y;
    out << '\n';
    for (std::size_t i = 0; i < types.size(); ++i) {
        out << i;
        for (auto c : types[i].counts()) out << ',' << c;
        out << '\n';
    }
}

json to_json(const TestConfig& c) {
    json j;
    j["num_sequences"] = c.num_sequences;
    j["max_outliers"] = c.max_outliers;
    j["alphabet_size"] = c.alphabet_size;
    j["model"] = to_string(c.model);
    j["knowledge"] = to_string(c.knowledge);
    j["threshold"] = c.threshold;
    j["truncation"] = c.truncation.describe();
    j["typical"] = c.typical ? json(to_json(*c.typical).at("probs")) : json(nullptr);
    j["outlier"] = c.outlier ? json(to_json(*c.outlier).at("probs")) : json(nullptr);
    j["sample_limit"] = c.sample_limit;
    return j;
}

TestConfig apply_config_json(const json& j, TestConfig base) {
    if (!j.is_object()) throw config_error("config must be a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "num_sequences") base.num_sequences = v.get<int>();
            else if (key == "max_outliers") base.max_outliers = v.get<int>();
            else if (key == "alphabet_size") base.alphabet_size = v.get<std::size_t>();
            else if (key == "model") base.model = parse_model(v.get<std::string>());
            else if (key == "knowledge") base.knowledge = parse_knowledge(v.get<std::string>());
            else if (key == "threshold") base.threshold = v.get<double>();
            else if (key == "truncation") base.truncation = Truncation::parse(v.get<std::string>());
            else if (key == "typical") {
                if (v.is_null()) base.typical.reset();
                else base.typical = distribution_from_json(v);
            } else if (key == "outlier") {
                if (v.is_null()) base.outlier.reset();
                else base.outlier = distribution_from_json(v);
            } else if (key == "sample_limit") base.sample_limit = v.get<std::uint64_t>();
            else throw config_error("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw config_error(std::string("bad config value: ") + e.what());
    } catch (const data_error& e) {
        throw config_error(e.what());
    }
    return base;
}

json to_json(const Provenance& p) {
    return {{"tool", "seqout"}, {"version", SEQOUT_VERSION}, {"command", p.command},
            {"seed", p.seed}, {"config", p.config}};
}

void write_provenance_csv(std::ostream& out, const Provenance& p) {
    out << "# tool: seqout " << SEQOUT_VERSION << '\n';
    out << "# command: " << p.command << '\n';
    out << "# seed: " << p.seed << '\n';
    out << "# config: " << p.config.dump() << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << "T,hypothesis,error_rate,ci_lo,ci_hi,mean_N,slope,truncation_rate,"
           "sd_N,null_decision_rate,p_max,p_max_is_bound,tail_exits\n";
    for (const auto& row : result.rows) {
        for (std::size_t h = 0; h < row.per_hypothesis.size(); ++h) {
            const auto& s = row.per_hypothesis[h];
            out << format_double(row.threshold) << ",\"" << to_string(s.hypothesis) << "\","
                << format_double(s.error_rate) << ',' << format_double(s.ci.lo) << ','
                << format_double(s.ci.hi) << ',' << format_double(s.mean_n) << ','
                << format_double(row.slope(h)) << ',' << format_double(s.truncation_rate) << ','
                << format_double(s.sd_n) << ',' << format_double(s.null_decision_rate) << ','
                << format_double(row.p_max) << ',' << (row.p_max_is_bound ? 1 : 0) << ','
                << s.tail_exits << '\n';
        }
    }
}

json to_json(const SweepResult& result) {
    json rows = json::array();
    const auto sizes = result.classes();
    for (std::size_t t = 0; t < result.rows.size(); ++t) {
        const auto& row = result.rows[t];
        json hyps = json::array();
        for (std::size_t h = 0; h < row.per_hypothesis.size(); ++h) {
            const auto& s = row.per_hypothesis[h];
            hyps.push_back({{"hypothesis", to_json(s.hypothesis)},
                            {"trials", s.trials},
                            {"errors", s.errors},
                            {"error_rate", s.error_rate},
                            {"ci_lo", s.ci.lo},
                            {"ci_hi", s.ci.hi},
                            {"mean_N", number(s.mean_n)},
                            {"sd_N", number(s.sd_n)},
                            {"slope", number(row.slope(h))},
                            {"truncation_rate", s.truncation_rate},
                            {"null_decision_rate", s.null_decision_rate},
                            {"tail_exits", s.tail_exits}});
        }
        json slopes = json::object();
        for (int size : sizes) slopes[std::to_string(size)] = number(result.class_slope(t, size));
        rows.push_back({{"T", row.threshold},
                        {"p_max", row.p_max},
                        {"p_max_is_bound", row.p_max_is_bound},
                        {"tail_bound", row.tail_bound},
                        {"class_slopes", std::move(slopes)},
                        {"hypotheses", std::move(hyps)}});
    }
    return {{"rows", std::move(rows)}};
}

void write_slope_table(std::ostream& out, const SweepResult& result, std::span<const int> sizes) {
    out << "# T";
    for (int s : sizes) out << " slope_S" << s;
    out << '\n';
    for (std::size_t t = 0; t < result.rows.size(); ++t) {
        out << format_double(result.rows[t].threshold);
        for (int s : sizes) out << ' ' << format_double(result.class_slope(t, s));
        out << '\n';
    }
}

json to_json(const ExponentReport& report) {
    json j;
    j["num_sequences"] = report.num_sequences;
    j["max_outliers"] = report.max_outliers;
    j["model"] = to_string(report.model);
    j["alphabet_size"] = report.alphabet_size;
    if (report.model == Model::identical) {
        j["msprt"] = {{"full", optional_number(report.msprt_full)},
                      {"partial", optional_number(report.msprt_partial)},
                      {"null", optional_number(report.msprt_null)}};
        json sizes = json::array();
        for (const auto& e : report.by_size) {
            sizes.push_back({{"outlier_count", e.outlier_count},
                             {"alpha", number(e.alpha)},
                             {"alpha_bar", number(e.alpha_bar)},
                             {"eta", number(e.eta)},
                             {"eta_bar", number(e.eta_bar)},
                             {"pi_known_guarantee", number(e.pi_known_guarantee)},
                             {"universal_guarantee", number(e.universal_guarantee)}});
        }
        j["by_size"] = std::move(sizes);
    } else {
        j["distinct"] = {{"pi_known", optional_number(report.distinct_pi_known)},
                         {"universal", optional_number(report.distinct_universal)}};
    }
    j["warnings"] = report.warnings;
    return j;
}

void write_exponent_table(std::ostream& out, const ExponentReport& report) {
    auto cell = [](double v) {
        std::ostringstream os;
        os << std::setw(12) << std::setprecision(6) << std::fixed << v;
        return os.str();
    };
    auto opt = [&](const std::optional<double>& v) { return v ? cell(*v) : std::string(12 - 3, ' ') + "n/a"; };
    out << "M=" << report.num_sequences << " K=" << report.max_outliers << " model=" << to_string(report.model)
        << " |Y|=" << report.alphabet_size << '\n';
    if (report.model == Model::identical) {
        out << "MSPRT  full" << opt(report.msprt_full) << "  partial" << opt(report.msprt_partial) << "  null"
            << opt(report.msprt_null) << '\n';
        out << std::setw(4) << "|S|" << std::setw(12) << "alpha" << std::setw(12) << "alpha_bar" << std::setw(12)
            << "eta" << std::setw(12) << "eta_bar" << std::setw(12) << "pi_known" << std::setw(12) << "universal"
            << '\n';
        for (const auto& e : report.by_size) {
            out << std::setw(4) << e.outlier_count << cell(e.alpha) << cell(e.alpha_bar) << cell(e.eta)
                << cell(e.eta_bar) << cell(e.pi_known_guarantee) << cell(e.universal_guarantee) << '\n';
        }
    } else {
        out << "pi_known " << opt(report.distinct_pi_known) << '\n';
        out << "universal" << opt(report.distinct_universal) << '\n';
    }
    for (const auto& w : report.warnings) out << "warning: " << w << '\n';
}

} // namespace seqout
