#include "shiftlcs/report.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace shiftlcs {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::set<std::string>& known_keys()
{
    static const std::set<std::string> keys = {
        "version", "kind", "k", "n", "s", "trials", "seed", "eps", "kernel", "block_len", "m",
        "lambdas", "thresholds", "ks", "c_k", "gamma", "alignment_summary", "baseline", "threads",
    };
    return keys;
}

std::uint64_t read_unsigned(const json& value, const std::string& field)
{
    if (value.is_number_unsigned())
        return value.get<std::uint64_t>();
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(value.get<std::int64_t>());
    throw ConfigError(field, "expected a nonnegative integer");
}

double read_double(const json& value, const std::string& field)
{
    if (!value.is_number())
        throw ConfigError(field, "expected a number");
    return value.get<double>();
}

bool read_bool(const json& value, const std::string& field)
{
    if (!value.is_boolean())
        throw ConfigError(field, "expected true or false");
    return value.get<bool>();
}

std::vector<double> read_double_list(const json& value, const std::string& field)
{
    if (!value.is_array())
        throw ConfigError(field, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& item : value)
        out.push_back(read_double(item, field));
    return out;
}

ordered_json regime_to_json(const RegimeBound& b)
{
    return {{"value", b.value}, {"threshold", b.threshold}, {"in_regime", b.in_regime}};
}

void append_csv_line(std::string& csv, std::initializer_list<std::string> cells)
{
    bool first = true;
    for (const auto& cell : cells) {
        if (!first)
            csv.push_back(',');
        csv += cell;
        first = false;
    }
    csv.push_back('\n');
}

std::string opt_cell(const std::optional<std::int64_t>& v)
{
    return v ? std::to_string(*v) : std::string();
}

}  // namespace

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::vector<std::size_t> ExperimentPlan::effective_shifts() const
{
    if (shifts.empty())
        return {config.s};
    return shifts;
}

ExperimentPlan plan_from_json(const json& document)
{
    if (!document.is_object())
        throw ConfigError("config", "expected a JSON object");
    if (document.contains("config") && document["config"].is_object() && document.contains("results"))
        return plan_from_json(document["config"]);

    for (const auto& [key, unused] : document.items()) {
        if (known_keys().count(key) == 0)
            throw ConfigError(key, "unknown key");
    }
    if (!document.contains("version"))
        throw ConfigError("version", "missing");
    if (!document["version"].is_number_integer() || document["version"].get<int>() != kConfigVersion)
        throw ConfigError("version", "unsupported config version");

    ExperimentPlan plan;
    ExperimentConfig& c = plan.config;
    for (const auto& [key, value] : document.items()) {
        if (key == "version")
            continue;
        if (key == "kind") {
            if (!value.is_string())
                throw ConfigError(key, "expected a string");
            c.kind = parse_kind(value.get<std::string>());
        } else if (key == "k") {
            c.k = static_cast<unsigned>(read_unsigned(value, key));
        } else if (key == "n") {
            c.n = read_unsigned(value, key);
        } else if (key == "s") {
            if (value.is_array()) {
                for (const auto& item : value)
                    plan.shifts.push_back(read_unsigned(item, key));
                if (plan.shifts.empty())
                    throw ConfigError(key, "shift list is empty");
                c.s = plan.shifts.front();
            } else {
                c.s = read_unsigned(value, key);
            }
        } else if (key == "trials") {
            c.trials = read_unsigned(value, key);
        } else if (key == "seed") {
            c.master_seed = read_unsigned(value, key);
        } else if (key == "eps") {
            c.eps = read_double(value, key);
        } else if (key == "kernel") {
            if (!value.is_string())
                throw ConfigError(key, "expected a string");
            try {
                c.kernel = parse_kernel(value.get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw ConfigError(key, e.what());
            }
        } else if (key == "block_len") {
            c.block_len = read_unsigned(value, key);
        } else if (key == "m") {
            c.m = read_unsigned(value, key);
        } else if (key == "lambdas") {
            c.lambdas = read_double_list(value, key);
        } else if (key == "thresholds") {
            c.thresholds = read_double_list(value, key);
        } else if (key == "ks") {
            if (!value.is_array())
                throw ConfigError(key, "expected an array of alphabet sizes");
            for (const auto& item : value)
                c.ks.push_back(static_cast<unsigned>(read_unsigned(item, key)));
        } else if (key == "c_k") {
            c.c_k = read_double(value, key);
        } else if (key == "gamma") {
            if (!value.is_null())
                c.gamma = read_double(value, key);
        } else if (key == "alignment_summary") {
            c.alignment_summary = read_bool(value, key);
        } else if (key == "baseline") {
            c.baseline = read_bool(value, key);
        } else if (key == "threads") {
            c.threads = static_cast<unsigned>(read_unsigned(value, key));
        }
    }
    return plan;
}

ordered_json plan_to_json(const ExperimentPlan& plan)
{
    const ExperimentConfig& c = plan.config;
    ordered_json j;
    j["version"] = kConfigVersion;
    j["kind"] = std::string(to_string(c.kind));
    j["k"] = c.k;
    j["n"] = c.n;
    if (plan.shifts.empty())
        j["s"] = c.s;
    else
        j["s"] = plan.shifts;
    j["trials"] = c.trials;
    j["seed"] = c.master_seed;
    j["eps"] = c.eps;
    j["kernel"] = std::string(to_string(c.kernel));
    j["block_len"] = c.block_len;
    j["m"] = c.m;
    j["lambdas"] = c.lambdas;
    j["thresholds"] = c.thresholds;
    j["ks"] = c.ks;
    j["c_k"] = c.c_k;
    j["gamma"] = c.gamma ? ordered_json(*c.gamma) : ordered_json(nullptr);
    j["alignment_summary"] = c.alignment_summary;
    j["baseline"] = c.baseline;
    return j;
}

ordered_json stats_to_json(const SummaryStats& s)
{
    ordered_json j;
    j["trials"] = s.trials;
    j["mean"] = s.mean;
    j["std"] = s.std;
    j["std_defined"] = s.std_defined;
    j["std_error"] = s.std_error;
    j["min"] = s.min;
    j["max"] = s.max;
    ordered_json tails = ordered_json::array();
    for (const auto& t : s.tails)
        tails.push_back({{"threshold", t.threshold}, {"at_or_above", t.at_or_above}, {"at_or_below", t.at_or_below}});
    j["tails"] = tails;
    if (s.gamma_bracket)
        j["gamma_bracket"] = {s.gamma_bracket->first, s.gamma_bracket->second};
    else
        j["gamma_bracket"] = nullptr;
    return j;
}

//---------------------------------------------------------------------------//

void validate(const ExperimentPlan& plan)
{
    for (std::size_t s : plan.effective_shifts()) {
        ExperimentConfig c = plan.config;
        c.s = s;
        validate(c);
    }
}

SimulationOutput simulate(const ExperimentPlan& plan)
{
    validate(plan);
    const ExperimentConfig& base = plan.config;
    SimulationOutput out;
    ordered_json results = ordered_json::array();
    std::string& csv = out.csv;

    switch (base.kind) {
    case ExperimentKind::Ln: {
        const LnResult r = run_ln(base);
        append_csv_line(csv, {"trial", "seed", "length"});
        std::map<std::int64_t, std::size_t> histogram;
        for (const auto& rec : r.records) {
            append_csv_line(csv, {std::to_string(rec.trial_index), std::to_string(rec.stream_seed), std::to_string(rec.length)});
            ++histogram[rec.length];
        }
        results.push_back({{"summary", stats_to_json(r.summary)}});
        std::string plot = "# length count\n";
        for (const auto& [len, count] : histogram)
            plot += std::to_string(len) + ' ' + std::to_string(count) + '\n';
        out.plots.emplace_back("ln_histogram.dat", plot);
        break;
    }
    case ExperimentKind::Shift: {
        append_csv_line(csv, base.alignment_summary
                                 ? std::initializer_list<std::string>{"trial", "seed", "s", "length", "excess", "min_span", "case"}
                                 : std::initializer_list<std::string>{"trial", "seed", "s", "length", "excess"});
        std::string plot = "# s mean std_error overlap baseline_mean\n";
        for (std::size_t s : plan.effective_shifts()) {
            ExperimentConfig c = base;
            c.s = s;
            const ShiftResult r = run_shift(c);
            for (const auto& rec : r.records) {
                const std::string excess = std::to_string(rec.length - static_cast<std::int64_t>(r.overlap));
                if (c.alignment_summary)
                    append_csv_line(csv, {std::to_string(rec.trial_index), std::to_string(rec.stream_seed), std::to_string(s),
                                          std::to_string(rec.length), excess, opt_cell(rec.min_span),
                                          rec.span_case ? std::string(to_string(*rec.span_case)) : std::string()});
                else
                    append_csv_line(csv, {std::to_string(rec.trial_index), std::to_string(rec.stream_seed), std::to_string(s),
                                          std::to_string(rec.length), excess});
            }
            ordered_json item;
            item["s"] = s;
            item["alpha"] = c.n == 0 ? 0.0 : static_cast<double>(s) / static_cast<double>(c.n);
            item["overlap"] = r.overlap;
            item["mean_excess"] = r.mean_excess;
            item["floor_violations"] = r.floor_violations;
            item["summary"] = stats_to_json(r.summary);
            item["baseline"] = r.baseline ? stats_to_json(*r.baseline) : ordered_json(nullptr);
            item["baseline_z"] = r.baseline_z ? ordered_json(*r.baseline_z) : ordered_json(nullptr);
            results.push_back(item);
            if (r.floor_violations != 0)
                out.failures.push_back("SHIFT floor violated " + std::to_string(r.floor_violations) + " times at s = " + std::to_string(s));
            plot += std::to_string(s) + ' ' + format_double(r.summary.mean) + ' ' + format_double(r.summary.std_error) + ' '
                    + std::to_string(r.overlap) + ' ' + (r.baseline ? format_double(r.baseline->mean) : std::string("nan")) + '\n';
        }
        out.plots.emplace_back("mean_vs_s.dat", plot);
        break;
    }
    case ExperimentKind::Tails: {
        append_csv_line(csv, {"trial", "seed", "s", "length"});
        std::string upper = "# s t empirical bound in_regime\n";
        std::string lower = "# s t empirical bound in_regime\n";
        for (std::size_t s : plan.effective_shifts()) {
            ExperimentConfig c = base;
            c.s = s;
            const TailsResult r = run_tails(c);
            for (const auto& rec : r.records)
                append_csv_line(csv, {std::to_string(rec.trial_index), std::to_string(rec.stream_seed), std::to_string(s),
                                      std::to_string(rec.length)});
            ordered_json rows = ordered_json::array();
            for (const auto& row : r.rows) {
                rows.push_back({{"t", row.t},
                                {"upper_cut", row.upper_cut},
                                {"upper_frequency", row.upper_frequency},
                                {"theorem1", regime_to_json(row.upper_bound_value)},
                                {"lower_cut", row.lower_cut},
                                {"lower_frequency", row.lower_frequency},
                                {"theorem2", regime_to_json(row.lower_bound_value)}});
                upper += std::to_string(s) + ' ' + format_double(row.t) + ' ' + format_double(row.upper_frequency) + ' '
                         + format_double(row.upper_bound_value.value) + ' ' + (row.upper_bound_value.in_regime ? "1" : "0") + '\n';
                lower += std::to_string(s) + ' ' + format_double(row.t) + ' ' + format_double(row.lower_frequency) + ' '
                         + format_double(row.lower_bound_value.value) + ' ' + (row.lower_bound_value.in_regime ? "1" : "0") + '\n';
            }
            results.push_back({{"s", s},
                               {"gamma", r.gamma},
                               {"gamma_source", r.gamma_source},
                               {"summary", stats_to_json(r.summary)},
                               {"rows", rows}});
        }
        out.plots.emplace_back("tails_upper.dat", upper);
        out.plots.emplace_back("tails_lower.dat", lower);
        break;
    }
    case ExperimentKind::BlockSum: {
        append_csv_line(csv, {"trial", "seed", "s", "length", "block_sum"});
        std::string plot = "# s trial block_sum length\n";
        for (std::size_t s : plan.effective_shifts()) {
            ExperimentConfig c = base;
            c.s = s;
            const BlockSumResult r = run_blocksum(c);
            for (const auto& rec : r.records) {
                append_csv_line(csv, {std::to_string(rec.trial_index), std::to_string(rec.stream_seed), std::to_string(s),
                                      std::to_string(rec.length), opt_cell(rec.secondary)});
                plot += std::to_string(s) + ' ' + std::to_string(rec.trial_index) + ' ' + opt_cell(rec.secondary) + ' '
                        + std::to_string(rec.length) + '\n';
            }
            results.push_back({{"s", s},
                               {"block_len", r.block_len},
                               {"violations", r.violations},
                               {"full", stats_to_json(r.full)},
                               {"block_sum", stats_to_json(r.block_sum)}});
            if (r.violations != 0)
                out.failures.push_back("block sum exceeded full LCS " + std::to_string(r.violations) + " times at s = " + std::to_string(s));
        }
        out.plots.emplace_back("blocksum.dat", plot);
        break;
    }
    case ExperimentKind::Lemma4: {
        const Lemma4Result r = run_lemma4(base);
        append_csv_line(csv, {"trial", "seed", "sum"});
        for (const auto& rec : r.records)
            append_csv_line(csv, {std::to_string(rec.trial_index), std::to_string(rec.stream_seed), std::to_string(rec.length)});
        ordered_json rows = ordered_json::array();
        std::string plot = "# lambda empirical boris boriseasy\n";
        for (const auto& row : r.rows) {
            rows.push_back({{"lambda", row.lambda},
                            {"cutoff", row.cutoff},
                            {"empirical", row.empirical},
                            {"boris", row.boris},
                            {"boriseasy", row.boriseasy}});
            plot += format_double(row.lambda) + ' ' + format_double(row.empirical) + ' ' + format_double(row.boris) + ' '
                    + format_double(row.boriseasy) + '\n';
        }
        results.push_back({{"summary", stats_to_json(r.summary)}, {"rows", rows}});
        out.plots.emplace_back("lemma4.dat", plot);
        break;
    }
    case ExperimentKind::GammaSweep: {
        validate(base);
        const auto rows = run_gamma_sweep(base.ks, base.n, base.trials, base.master_seed, base.kernel, base.threads);
        append_csv_line(csv, {"trial", "seed", "k", "length"});
        ordered_json table = ordered_json::array();
        std::string plot = "# k low_sqrtk high_sqrtk mean_ratio\n";
        for (const auto& row : rows) {
            for (const auto& rec : row.records)
                append_csv_line(csv, {std::to_string(rec.trial_index), std::to_string(rec.stream_seed), std::to_string(row.k),
                                      std::to_string(rec.length)});
            table.push_back({{"k", row.k},
                             {"mean_ratio", row.mean_ratio},
                             {"std_error_ratio", row.std_error_ratio},
                             {"low", row.low},
                             {"high", row.high},
                             {"low_sqrtk", row.low_sqrtk},
                             {"high_sqrtk", row.high_sqrtk}});
            plot += std::to_string(row.k) + ' ' + format_double(row.low_sqrtk) + ' ' + format_double(row.high_sqrtk) + ' '
                    + format_double(row.mean_ratio) + '\n';
        }
        results.push_back({{"rows", table}});
        out.plots.emplace_back("gamma_sweep.dat", plot);
        break;
    }
    }

    out.summary["version"] = kConfigVersion;
    out.summary["config"] = plan_to_json(plan);
    out.summary["replay_seed"] = base.master_seed;
    out.summary["results"] = results;
    out.summary["failures"] = out.failures;
    return out;
}

}  // namespace shiftlcs
