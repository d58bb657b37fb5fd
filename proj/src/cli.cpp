#include "shiftlcs/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "shiftlcs/bounds.hpp"
#include "shiftlcs/geometry.hpp"
#include "shiftlcs/lcs.hpp"
#include "shiftlcs/montecarlo.hpp"
#include "shiftlcs/report.hpp"
#include "shiftlcs/word_io.hpp"
#include "shiftlcs/words.hpp"

namespace shiftlcs {

namespace {

using nlohmann::ordered_json;

std::string sig6(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

ordered_json alignment_to_json(const Alignment& a)
{
    ordered_json edges = ordered_json::array();
    for (const Edge& e : a.edges)
        edges.push_back({e.i, e.j});
    return edges;
}

ordered_json intervals_to_json(const std::vector<Interval>& blocks)
{
    ordered_json out = ordered_json::array();
    for (const Interval& b : blocks)
        out.push_back({b.begin, b.end});
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << contents;
}

//---------------------------------------------------------------------------//
// lcs
//---------------------------------------------------------------------------//

struct LcsArgs {
    std::vector<std::string> words;
    std::string file;
    std::string kernel = "bitparallel";
    unsigned k = 0;
    bool witness = false;
    std::optional<std::size_t> shift;
    double eps = kDefaultEps;
    std::string emit_alignment;
};

int cmd_lcs(const LcsArgs& args, std::ostream& out)
{
    Word v;
    Word w;
    if (!args.file.empty()) {
        std::ifstream in(args.file);
        if (!in)
            throw std::runtime_error("cannot open " + args.file);
        const WordFile file = read_words(in);
        if (file.words.size() < 2)
            throw std::invalid_argument("word file needs at least two words");
        v = file.words[0];
        w = file.words[1];
    } else {
        if (args.words.size() != 2)
            throw std::invalid_argument("lcs needs exactly two words (or --file)");
        v = parse_inline_word(args.words[0], args.k);
        w = parse_inline_word(args.words[1], args.k);
    }

    const Kernel kernel = parse_kernel(args.kernel);
    out << lcs(v, w, kernel) << '\n';

    if (args.witness || !args.emit_alignment.empty()) {
        const Alignment a = lcs_witness(v, w);
        if (args.witness)
            out << alignment_to_json(a).dump() << '\n';
        if (!args.emit_alignment.empty()) {
            ordered_json doc;
            doc["v_length"] = v.size();
            doc["w_length"] = w.size();
            doc["alignment"] = alignment_to_json(a);
            if (args.shift) {
                const std::size_t s = *args.shift;
                ordered_json spans = ordered_json::array();
                for (const auto& e : spanned_edges(a, s))
                    spans.push_back(e.span);
                doc["s"] = s;
                doc["eps"] = args.eps;
                doc["spans"] = spans;
                if (a.empty()) {
                    doc["case"] = nullptr;
                    doc["partition"] = nullptr;
                } else {
                    const SpanCase c = classify_min_span(a, s, v.size(), args.eps);
                    doc["case"] = std::string(to_string(c));
                    if (c == SpanCase::Large) {
                        const BlockPartition p = build_block_partition(a, v, w, s, args.eps);
                        doc["partition"] = {{"v_blocks", intervals_to_json(p.v_blocks)},
                                            {"w_blocks", intervals_to_json(p.w_blocks)},
                                            {"dominated_lcs", dominated_lcs(v, w, p)}};
                    } else {
                        doc["partition"] = nullptr;
                    }
                }
            }
            write_file(args.emit_alignment, doc.dump(2) + "\n");
        }
    }
    return kExitOk;
}

//---------------------------------------------------------------------------//
// simulate
//---------------------------------------------------------------------------//

struct SimulateArgs {
    std::string config;
    std::string kind;
    unsigned k = 0;
    std::size_t n = 0;
    std::vector<std::size_t> s;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double eps = 0;
    std::string kernel;
    unsigned threads = 0;
    std::string out;
    bool plot_data = false;
    std::size_t block_len = 0;
    std::size_t m = 0;
    std::vector<double> lambdas;
    std::vector<double> thresholds;
    std::vector<unsigned> ks;
    double c_k = 0;
    double gamma = 0;
    bool alignment_summary = false;
    bool baseline = false;
};

ExperimentPlan build_plan(const SimulateArgs& a, const CLI::App& sub)
{
    ExperimentPlan plan;
    if (!a.config.empty()) {
        std::ifstream in(a.config);
        if (!in)
            throw ConfigError("config", "cannot open " + a.config);
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError("config", e.what());
        }
        plan = plan_from_json(doc);
    }
    ExperimentConfig& c = plan.config;
    auto given = [&](const char* name) { return sub.count(name) > 0; };
    if (given("--kind"))
        c.kind = parse_kind(a.kind);
    if (given("--k"))
        c.k = a.k;
    if (given("--n"))
        c.n = a.n;
    if (given("--s")) {
        plan.shifts = a.s.size() > 1 ? a.s : std::vector<std::size_t>{};
        c.s = a.s.front();
    }
    if (given("--trials"))
        c.trials = a.trials;
    if (given("--seed"))
        c.master_seed = a.seed;
    if (given("--eps"))
        c.eps = a.eps;
    if (given("--kernel")) {
        try {
            c.kernel = parse_kernel(a.kernel);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("kernel", e.what());
        }
    }
    if (given("--threads"))
        c.threads = a.threads;
    if (given("--block-len"))
        c.block_len = a.block_len;
    if (given("--m"))
        c.m = a.m;
    if (given("--lambdas"))
        c.lambdas = a.lambdas;
    if (given("--thresholds"))
        c.thresholds = a.thresholds;
    if (given("--ks"))
        c.ks = a.ks;
    if (given("--c-k"))
        c.c_k = a.c_k;
    if (given("--gamma"))
        c.gamma = a.gamma;
    if (given("--alignment-summary"))
        c.alignment_summary = true;
    if (given("--baseline"))
        c.baseline = true;
    validate(plan);
    return plan;
}

int cmd_simulate(const SimulateArgs& args, const CLI::App& sub, std::ostream& out, std::ostream& err)
{
    ExperimentPlan plan;
    try {
        plan = build_plan(args, sub);
    } catch (const ConfigError& e) {
        err << ordered_json{{"error", "config"}, {"field", e.field()}, {"message", e.what()}}.dump() << '\n';
        return kExitConfig;
    }

    const SimulationOutput result = simulate(plan);
    out << "replay seed: " << plan.config.master_seed << '\n';
    if (args.out.empty()) {
        out << result.summary.dump(2) << '\n';
    } else {
        const std::filesystem::path dir(args.out);
        std::filesystem::create_directories(dir);
        write_file(dir / "records.csv", result.csv);
        write_file(dir / "summary.json", result.summary.dump(2) + "\n");
        out << "records: " << (dir / "records.csv").string() << '\n';
        out << "summary: " << (dir / "summary.json").string() << '\n';
        if (args.plot_data) {
            for (const auto& [name, contents] : result.plots) {
                write_file(dir / name, contents);
                out << "plot: " << (dir / name).string() << '\n';
            }
        }
    }
    for (const auto& failure : result.failures)
        err << "assertion failed: " << failure << '\n';
    return result.failures.empty() ? kExitOk : kExitAssertion;
}

//---------------------------------------------------------------------------//
// bounds
//---------------------------------------------------------------------------//

struct BoundsArgs {
    std::string name;
    double m = 0, k = 0, lambda = 0, len_a = 0, len_b = 0, n = 0, t = 0, c_k = 1.0;
    double mean = 0, x = 0, j = 0, eps = 0.01, gamma_lower = 0;
    std::vector<std::string> ranges;
    bool check_constants = false;
    unsigned kmax = 26;
    std::string gamma_table;
};

std::string regime_line(const RegimeBound& b)
{
    return sig6(b.value) + (b.in_regime ? " in-regime" : " out-of-regime") + " (t >= " + sig6(b.threshold) + ")";
}

int cmd_bounds(const BoundsArgs& a, const CLI::App& sub, std::ostream& out)
{
    auto need = [&](const char* flag) {
        if (sub.count(flag) == 0)
            throw std::invalid_argument(std::string("missing ") + flag + " for bound '" + a.name + "'");
    };

    if (a.check_constants) {
        const GammaTable table = a.gamma_table.empty() ? GammaTable::defaults(std::max(a.kmax, 2u)) : GammaTable::load(a.gamma_table);
        bool all = true;
        out << "k gamma_lower source value reduced_value status\n";
        for (unsigned k = 2; k <= a.kmax; ++k) {
            const GammaEntry& e = table.at(k);
            const CaseTwoCheck check = case2_constant_check(k, e.lower, a.eps);
            all = all && check.holds;
            out << k << ' ' << sig6(e.lower) << ' ' << e.source << ' ' << sig6(check.value) << ' ' << sig6(check.reduced_value) << ' '
                << (check.holds ? "holds" : "fails") << '\n';
        }
        out << "claim: " << (all ? "holds" : "fails") << " for 2 <= k <= " << a.kmax << '\n';
        if (a.name.empty())
            return kExitOk;
    }

    const std::string& name = a.name;
    if (name.empty())
        throw std::invalid_argument("bounds needs a bound name or --check-constants");
    if (name == "boris" || name == "boriseasy") {
        need("--m");
        need("--k");
        need("--lambda");
        out << sig6(name == "boris" ? boris_bound(a.m, a.k, a.lambda) : boriseasy_bound(a.m, a.k, a.lambda)) << '\n';
    } else if (name == "grosscase") {
        need("--len-a");
        need("--len-b");
        need("--k");
        out << sig6(grosscase_bound(a.len_a, a.len_b, a.k)) << '\n';
    } else if (name == "azuma") {
        need("--lambda");
        need("--n");
        out << sig6(azuma_tail(a.lambda, a.n)) << '\n';
    } else if (name == "hoeffding") {
        need("--t");
        need("--ranges");
        std::vector<std::pair<double, double>> ranges;
        for (const auto& item : a.ranges) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("ranges are a:b pairs");
            ranges.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
        }
        out << sig6(hoeffding_tail(a.t, ranges)) << '\n';
    } else if (name == "gamma-bracket") {
        need("--n");
        need("--mean");
        const auto [lo, hi] = gamma_bracket(a.n, a.mean);
        out << '(' << sig6(lo) << ", " << sig6(hi) << ")\n";
    } else if (name == "theorem1" || name == "theorem2") {
        need("--n");
        need("--t");
        out << regime_line(name == "theorem1" ? theorem1_bound(a.n, a.t, a.c_k) : theorem2_bound(a.n, a.t, a.c_k)) << '\n';
    } else if (name == "case2") {
        need("--k");
        need("--gamma-lower");
        const auto check = case2_constant_check(static_cast<unsigned>(a.k), a.gamma_lower, a.eps);
        out << sig6(check.value) << ' ' << sig6(check.reduced_value) << ' ' << (check.holds ? "holds" : "fails") << '\n';
    } else if (name == "exp-inequality") {
        need("--x");
        out << (exp_inequality_check(a.x) ? "holds" : "fails") << '\n';
    } else if (name == "binom-upper") {
        need("--n");
        need("--j");
        out << sig6(binom_upper(a.n, a.j)) << '\n';
    } else if (name == "blockcount") {
        need("--n");
        if (a.n < 0 || a.n != std::floor(a.n))
            throw std::domain_error("blockcount needs an integer n >= 0");
        out << blockcount_bound(static_cast<std::size_t>(a.n), a.eps) << '\n';
    } else {
        throw std::invalid_argument("unknown bound '" + name + "'");
    }
    return kExitOk;
}

//---------------------------------------------------------------------------//
// words
//---------------------------------------------------------------------------//

struct WordsArgs {
    unsigned k = 2;
    std::size_t n = 10;
    std::optional<std::size_t> s;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    bool source = false;
};

int cmd_words(const WordsArgs& a, std::ostream& out)
{
    const SeedSpec seed{a.seed, a.trial};
    WordFile file;
    file.k = a.k;
    if (a.s) {
        ShiftedPair pair = make_shifted_pair(a.k, a.n, *a.s, seed);
        if (a.source)
            file.words.push_back(pair.source);
        file.words.push_back(pair.v);
        file.words.push_back(pair.w);
    } else {
        file.words.push_back(random_word(a.k, a.n, seed));
    }
    write_words(out, file);
    return kExitOk;
}

}  // namespace

//---------------------------------------------------------------------------//

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Longest common subsequences of shifted random words"};
    app.require_subcommand(1);

    LcsArgs lcs_args;
    auto* lcs_cmd = app.add_subcommand("lcs", "LCS length of two words");
    lcs_cmd->add_option("words", lcs_args.words, "two words (letters, or comma-separated symbols)");
    lcs_cmd->add_option("--file", lcs_args.file, "word file; the first two words are used");
    lcs_cmd->add_option("--kernel", lcs_args.kernel, "oracle | dp | bitparallel");
    lcs_cmd->add_option("--k", lcs_args.k, "alphabet size for inline words");
    lcs_cmd->add_flag("--witness", lcs_args.witness, "also print one maximum alignment as JSON");
    lcs_cmd->add_option("--s", lcs_args.shift, "shift, for spans in --emit-alignment");
    lcs_cmd->add_option("--eps", lcs_args.eps, "small/large span boundary fraction");
    lcs_cmd->add_option("--emit-alignment", lcs_args.emit_alignment, "write alignment (and partition) JSON here");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "run a Monte Carlo experiment");
    sim_cmd->add_option("--config", sim_args.config, "JSON config (or a previous summary.json)");
    sim_cmd->add_option("--kind", sim_args.kind, "ln | shift | gamma_sweep | tails | blocksum | lemma4");
    sim_cmd->add_option("--k", sim_args.k);
    sim_cmd->add_option("--n", sim_args.n);
    sim_cmd->add_option("--s", sim_args.s, "shift, or a comma-separated sweep")->delimiter(',');
    sim_cmd->add_option("--trials", sim_args.trials);
    sim_cmd->add_option("--seed", sim_args.seed);
    sim_cmd->add_option("--eps", sim_args.eps);
    sim_cmd->add_option("--kernel", sim_args.kernel);
    sim_cmd->add_option("--threads", sim_args.threads);
    sim_cmd->add_option("--out", sim_args.out, "output directory");
    sim_cmd->add_flag("--plot-data", sim_args.plot_data, "also write numeric series for plotting");
    sim_cmd->add_option("--block-len", sim_args.block_len);
    sim_cmd->add_option("--m", sim_args.m);
    sim_cmd->add_option("--lambdas", sim_args.lambdas)->delimiter(',');
    sim_cmd->add_option("--thresholds", sim_args.thresholds)->delimiter(',');
    sim_cmd->add_option("--ks", sim_args.ks)->delimiter(',');
    sim_cmd->add_option("--c-k", sim_args.c_k);
    sim_cmd->add_option("--gamma", sim_args.gamma);
    sim_cmd->add_flag("--alignment-summary", sim_args.alignment_summary);
    sim_cmd->add_flag("--baseline", sim_args.baseline);

    BoundsArgs bounds_args;
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate a tail bound");
    bounds_cmd->add_option("name", bounds_args.name,
                           "boris | boriseasy | grosscase | azuma | hoeffding | gamma-bracket | theorem1 | theorem2 | "
                           "case2 | exp-inequality | binom-upper | blockcount");
    bounds_cmd->add_option("--m", bounds_args.m);
    bounds_cmd->add_option("--k", bounds_args.k);
    bounds_cmd->add_option("--lambda", bounds_args.lambda);
    bounds_cmd->add_option("--len-a", bounds_args.len_a);
    bounds_cmd->add_option("--len-b", bounds_args.len_b);
    bounds_cmd->add_option("--n", bounds_args.n);
    bounds_cmd->add_option("--t", bounds_args.t);
    bounds_cmd->add_option("--c-k", bounds_args.c_k);
    bounds_cmd->add_option("--mean", bounds_args.mean);
    bounds_cmd->add_option("--x", bounds_args.x);
    bounds_cmd->add_option("--j", bounds_args.j);
    bounds_cmd->add_option("--eps", bounds_args.eps);
    bounds_cmd->add_option("--gamma-lower", bounds_args.gamma_lower);
    bounds_cmd->add_option("--ranges", bounds_args.ranges, "a:b pairs")->delimiter(',');
    bounds_cmd->add_flag("--check-constants", bounds_args.check_constants);
    bounds_cmd->add_option("--kmax", bounds_args.kmax);
    bounds_cmd->add_option("--gamma-table", bounds_args.gamma_table, "JSON gamma table");

    WordsArgs words_args;
    auto* words_cmd = app.add_subcommand("words", "print a random word or shifted pair in word-file format");
    words_cmd->add_option("--k", words_args.k);
    words_cmd->add_option("--n", words_args.n);
    words_cmd->add_option("--s", words_args.s);
    words_cmd->add_option("--seed", words_args.seed);
    words_cmd->add_option("--trial", words_args.trial);
    words_cmd->add_flag("--source", words_args.source, "print Z before V and W");

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("shiftlcs");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage)
        argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (lcs_cmd->parsed())
            return cmd_lcs(lcs_args, out);
        if (sim_cmd->parsed())
            return cmd_simulate(sim_args, *sim_cmd, out, err);
        if (bounds_cmd->parsed())
            return cmd_bounds(bounds_args, *bounds_cmd, out);
        if (words_cmd->parsed())
            return cmd_words(words_args, out);
    } catch (const ConfigError& e) {
        err << ordered_json{{"error", "config"}, {"field", e.field()}, {"message", e.what()}}.dump() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitConfig;
}

}  // namespace shiftlcs
