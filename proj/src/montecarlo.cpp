#include "shiftlcs/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace shiftlcs {

namespace {

// Tags mixed into the master seed for derived runs.
constexpr std::uint64_t kBaselineTag = 0x6261736573656564ULL;  // "baseseed"
constexpr std::uint64_t kSweepTag = 0x7377656570736565ULL;     // "sweepsee"

/// Runs fn(i) for every i in [0, trials); each index is claimed by exactly one
/// worker and results are written by index, so scheduling never shows.
template <class Fn>
void for_each_trial(std::size_t trials, unsigned threads, Fn&& fn)
{
    const auto workers = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), std::max<std::size_t>(trials, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < trials; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= trials)
                        return;
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                        next.store(trials);
                    }
                }
            });
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

std::vector<TrialRecord> run_records(const ExperimentConfig& config)
{
    std::vector<TrialRecord> records(config.trials);
    for_each_trial(config.trials, config.threads, [&](std::size_t i) { records[i] = replay_trial(config, i); });
    return records;
}

std::vector<double> default_tail_grid(std::size_t n)
{
    const double root = std::sqrt(static_cast<double>(n));
    return {root, 2 * root, 4 * root, 6 * root, 8 * root};
}

TrialRecord ln_trial(const ExperimentConfig& c, std::size_t idx)
{
    const SeedSpec seed{c.master_seed, idx};
    Rng rng(seed);
    const Word v = random_word(c.k, c.n, rng);
    const Word w = random_word(c.k, c.n, rng);
    TrialRecord r;
    r.trial_index = idx;
    r.stream_seed = seed.stream_seed();
    r.length = static_cast<std::int64_t>(lcs(v, w, c.kernel));
    return r;
}

TrialRecord shift_trial(const ExperimentConfig& c, std::size_t idx)
{
    const SeedSpec seed{c.master_seed, idx};
    Rng rng(seed);
    const ShiftedPair pair = make_shifted_pair(c.k, c.n, c.s, rng);
    TrialRecord r;
    r.trial_index = idx;
    r.stream_seed = seed.stream_seed();
    r.length = static_cast<std::int64_t>(lcs(pair.v, pair.w, c.kernel));
    if (c.alignment_summary) {
        const Alignment a = lcs_witness(pair.v, pair.w);
        if (!a.empty()) {
            r.min_span = min_span(a, c.s);
            r.span_case = classify_min_span(a, c.s, c.n, c.eps);
        }
    }
    return r;
}

TrialRecord blocksum_trial(const ExperimentConfig& c, std::size_t idx)
{
    const SeedSpec seed{c.master_seed, idx};
    Rng rng(seed);
    const ShiftedPair pair = make_shifted_pair(c.k, c.n, c.s, rng);
    const std::size_t len = c.effective_block_len();
    std::int64_t sum = 0;
    for (std::size_t begin = 0; begin < c.n; begin += len) {
        const std::size_t end = std::min(c.n, begin + len);
        sum += static_cast<std::int64_t>(lcs(pair.v.subword(begin, end), pair.w.subword(begin, end), c.kernel));
    }
    TrialRecord r;
    r.trial_index = idx;
    r.stream_seed = seed.stream_seed();
    r.length = static_cast<std::int64_t>(lcs(pair.v, pair.w, c.kernel));
    r.secondary = sum;
    return r;
}

TrialRecord lemma4_trial(const ExperimentConfig& c, std::size_t idx)
{
    const SeedSpec seed{c.master_seed, idx};
    Rng rng(seed);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < c.m; ++i)
        total += geometric_wait(c.k, rng);
    TrialRecord r;
    r.trial_index = idx;
    r.stream_seed = seed.stream_seed();
    r.length = static_cast<std::int64_t>(total);
    return r;
}

}  // namespace

//---------------------------------------------------------------------------//

ExperimentKind parse_kind(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    std::replace(lower.begin(), lower.end(), '-', '_');
    if (lower == "ln")
        return ExperimentKind::Ln;
    if (lower == "shift")
        return ExperimentKind::Shift;
    if (lower == "gamma_sweep")
        return ExperimentKind::GammaSweep;
    if (lower == "tails")
        return ExperimentKind::Tails;
    if (lower == "blocksum")
        return ExperimentKind::BlockSum;
    if (lower == "lemma4")
        return ExperimentKind::Lemma4;
    throw ConfigError("kind", "unknown experiment kind '" + std::string(name) + "'");
}

std::string_view to_string(ExperimentKind kind) noexcept
{
    switch (kind) {
    case ExperimentKind::Ln: return "ln";
    case ExperimentKind::Shift: return "shift";
    case ExperimentKind::GammaSweep: return "gamma_sweep";
    case ExperimentKind::Tails: return "tails";
    case ExperimentKind::BlockSum: return "blocksum";
    case ExperimentKind::Lemma4: return "lemma4";
    }
    return "unknown";
}

std::size_t ExperimentConfig::effective_block_len() const noexcept
{
    if (block_len != 0)
        return block_len;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n)))));
}

std::vector<double> ExperimentConfig::effective_lambdas() const
{
    if (!lambdas.empty())
        return lambdas;
    std::vector<double> grid;
    for (int step = 0; step <= 8; ++step)
        grid.push_back(static_cast<double>(k) * step / 8.0);
    return grid;
}

void validate(const ExperimentConfig& c)
{
    if (c.k == 0)
        throw ConfigError("k", "must be at least 1");
    if (c.trials == 0)
        throw ConfigError("trials", "must be at least 1");
    if (c.threads == 0)
        throw ConfigError("threads", "must be at least 1");
    if (!(c.eps > 0.0 && c.eps < 1.0))
        throw ConfigError("eps", "must lie in (0, 1)");
    if (!(c.c_k > 0.0))
        throw ConfigError("c_k", "must be positive");
    if (c.gamma && !(*c.gamma > 0.0 && *c.gamma <= 1.0))
        throw ConfigError("gamma", "must lie in (0, 1]");
    for (double t : c.thresholds) {
        if (!std::isfinite(t))
            throw ConfigError("thresholds", "must be finite");
    }

    const bool uses_words = c.kind != ExperimentKind::Lemma4;
    if (uses_words && c.kernel == Kernel::Oracle && c.n > kOracleMaxLength)
        throw ConfigError("kernel", "oracle kernel needs n <= " + std::to_string(kOracleMaxLength));

    switch (c.kind) {
    case ExperimentKind::Ln:
        break;
    case ExperimentKind::Shift:
    case ExperimentKind::Tails:
        if (c.s > c.n)
            throw ConfigError("s", "must satisfy s <= n");
        if (c.kind == ExperimentKind::Tails && c.n < 2)
            throw ConfigError("n", "tails need n >= 2");
        break;
    case ExperimentKind::BlockSum:
        if (c.s > c.n)
            throw ConfigError("s", "must satisfy s <= n");
        if (c.n == 0)
            throw ConfigError("n", "blocksum needs n >= 1");
        break;
    case ExperimentKind::GammaSweep:
        if (c.ks.empty())
            throw ConfigError("ks", "gamma sweep needs at least one alphabet size");
        if (std::find(c.ks.begin(), c.ks.end(), 0u) != c.ks.end())
            throw ConfigError("ks", "alphabet sizes must be at least 1");
        if (c.n < 2)
            throw ConfigError("n", "gamma sweep needs n >= 2");
        break;
    case ExperimentKind::Lemma4:
        if (c.m == 0)
            throw ConfigError("m", "must be at least 1");
        for (double lambda : c.lambdas) {
            if (!(lambda >= 0.0 && lambda <= static_cast<double>(c.k)))
                throw ConfigError("lambdas", "each slack must lie in [0, k]");
        }
        break;
    }
}

//---------------------------------------------------------------------------//

double frequency_at_or_above(std::span<const std::int64_t> values, double cut)
{
    if (values.empty())
        return 0.0;
    const auto hits = std::count_if(values.begin(), values.end(), [cut](std::int64_t x) { return static_cast<double>(x) >= cut; });
    return static_cast<double>(hits) / static_cast<double>(values.size());
}

double frequency_at_or_below(std::span<const std::int64_t> values, double cut)
{
    if (values.empty())
        return 0.0;
    const auto hits = std::count_if(values.begin(), values.end(), [cut](std::int64_t x) { return static_cast<double>(x) <= cut; });
    return static_cast<double>(hits) / static_cast<double>(values.size());
}

SummaryStats summarize(std::span<const std::int64_t> values, std::span<const double> thresholds)
{
    SummaryStats out;
    out.trials = values.size();
    if (values.empty())
        return out;
    double sum = 0.0;
    out.min = values.front();
    out.max = values.front();
    for (std::int64_t x : values) {
        sum += static_cast<double>(x);
        out.min = std::min(out.min, x);
        out.max = std::max(out.max, x);
    }
    const auto count = static_cast<double>(values.size());
    out.mean = sum / count;
    if (values.size() > 1) {
        double squares = 0.0;
        for (std::int64_t x : values) {
            const double d = static_cast<double>(x) - out.mean;
            squares += d * d;
        }
        out.std = std::sqrt(squares / (count - 1.0));
        out.std_defined = true;
        out.std_error = out.std / std::sqrt(count);
    }
    for (double t : thresholds)
        out.tails.push_back({t, frequency_at_or_above(values, t), frequency_at_or_below(values, t)});
    return out;
}

std::vector<std::int64_t> lengths_of(std::span<const TrialRecord> records)
{
    std::vector<std::int64_t> out;
    out.reserve(records.size());
    for (const auto& r : records)
        out.push_back(r.length);
    return out;
}

std::uint64_t baseline_seed(std::uint64_t master_seed) noexcept
{
    return mix_seed(master_seed, kBaselineTag);
}

std::uint64_t sweep_seed(std::uint64_t master_seed, unsigned k) noexcept
{
    return mix_seed(mix_seed(master_seed, kSweepTag), k);
}

std::uint64_t geometric_wait(unsigned k, Rng& rng)
{
    const Symbol target = rng.symbol(k);
    std::uint64_t wait = 1;
    while (rng.symbol(k) != target)
        ++wait;
    return wait;
}

TrialRecord replay_trial(const ExperimentConfig& config, std::size_t trial_index)
{
    switch (config.kind) {
    case ExperimentKind::Ln:
    case ExperimentKind::GammaSweep:
        return ln_trial(config, trial_index);
    case ExperimentKind::Shift:
    case ExperimentKind::Tails:
        return shift_trial(config, trial_index);
    case ExperimentKind::BlockSum:
        return blocksum_trial(config, trial_index);
    case ExperimentKind::Lemma4:
        return lemma4_trial(config, trial_index);
    }
    throw ConfigError("kind", "unknown experiment kind");
}

//---------------------------------------------------------------------------//

LnResult run_ln(const ExperimentConfig& config)
{
    validate(config);
    ExperimentConfig c = config;
    c.kind = ExperimentKind::Ln;
    LnResult out;
    out.records = run_records(c);
    const auto lengths = lengths_of(out.records);
    out.summary = summarize(lengths, c.thresholds);
    if (c.n >= 2)
        out.summary.gamma_bracket = gamma_bracket(static_cast<double>(c.n), out.summary.mean);
    return out;
}

ShiftResult run_shift(const ExperimentConfig& config)
{
    ExperimentConfig c = config;
    c.kind = ExperimentKind::Shift;
    validate(c);
    ShiftResult out;
    out.records = run_records(c);
    const auto lengths = lengths_of(out.records);
    out.summary = summarize(lengths, c.thresholds);
    out.overlap = c.n - c.s;
    out.mean_excess = out.summary.mean - static_cast<double>(out.overlap);
    out.floor_violations = static_cast<std::size_t>(
        std::count_if(lengths.begin(), lengths.end(), [&](std::int64_t x) { return x < static_cast<std::int64_t>(out.overlap); }));
    if (c.baseline) {
        ExperimentConfig base = c;
        base.kind = ExperimentKind::Ln;
        base.master_seed = baseline_seed(c.master_seed);
        base.alignment_summary = false;
        out.baseline = run_ln(base).summary;
        const double se = std::hypot(out.summary.std_error, out.baseline->std_error);
        const double gap = std::abs(out.summary.mean - out.baseline->mean);
        out.baseline_z = se > 0.0 ? gap / se : (gap == 0.0 ? 0.0 : INFINITY);
    }
    return out;
}

std::vector<GammaRow> run_gamma_sweep(std::span<const unsigned> ks,
                                      std::size_t n,
                                      std::size_t trials,
                                      std::uint64_t master_seed,
                                      Kernel kernel,
                                      unsigned threads)
{
    std::vector<GammaRow> rows;
    for (unsigned k : ks) {
        ExperimentConfig c;
        c.kind = ExperimentKind::Ln;
        c.k = k;
        c.n = n;
        c.trials = trials;
        c.master_seed = sweep_seed(master_seed, k);
        c.kernel = kernel;
        c.threads = threads;
        if (n < 2)
            throw ConfigError("n", "gamma sweep needs n >= 2");
        LnResult ln = run_ln(c);
        GammaRow row;
        row.k = k;
        row.mean_ratio = ln.summary.mean / static_cast<double>(n);
        row.std_error_ratio = ln.summary.std_error / static_cast<double>(n);
        std::tie(row.low, row.high) = *ln.summary.gamma_bracket;
        const double root = std::sqrt(static_cast<double>(k));
        row.low_sqrtk = row.low * root;
        row.high_sqrtk = row.high * root;
        row.records = std::move(ln.records);
        rows.push_back(std::move(row));
    }
    return rows;
}

TailsResult run_tails(const ExperimentConfig& config, std::span<const double> thresholds)
{
    ExperimentConfig c = config;
    c.kind = ExperimentKind::Tails;
    validate(c);
    std::vector<double> ts(thresholds.begin(), thresholds.end());
    if (ts.empty())
        ts = c.thresholds;
    if (ts.empty())
        ts = default_tail_grid(c.n);

    TailsResult out;
    out.records = run_records(c);
    const auto lengths = lengths_of(out.records);
    out.summary = summarize(lengths);

    if (c.gamma) {
        out.gamma = *c.gamma;
        out.gamma_source = "config";
    } else {
        ExperimentConfig base = c;
        base.kind = ExperimentKind::Ln;
        base.master_seed = baseline_seed(c.master_seed);
        base.alignment_summary = false;
        out.gamma = run_ln(base).summary.mean / static_cast<double>(c.n);
        out.gamma_source = "ln-estimate";
    }

    const auto n = static_cast<double>(c.n);
    const double overlap_cut = static_cast<double>(c.n - c.s) + 1.0;
    for (double t : ts) {
        TailRow row;
        row.t = t;
        row.upper_cut = std::max(overlap_cut, out.gamma * n + t);
        row.upper_frequency = frequency_at_or_above(lengths, row.upper_cut);
        row.upper_bound_value = theorem1_bound(n, std::max(t, 0.0), c.c_k);
        row.lower_cut = out.gamma * n - t;
        row.lower_frequency = frequency_at_or_below(lengths, row.lower_cut);
        row.lower_bound_value = theorem2_bound(n, std::max(t, 0.0), c.c_k);
        out.rows.push_back(row);
    }
    return out;
}

BlockSumResult run_blocksum(const ExperimentConfig& config)
{
    ExperimentConfig c = config;
    c.kind = ExperimentKind::BlockSum;
    validate(c);
    BlockSumResult out;
    out.block_len = c.effective_block_len();
    out.records = run_records(c);
    std::vector<std::int64_t> full;
    std::vector<std::int64_t> sums;
    for (const auto& r : out.records) {
        full.push_back(r.length);
        sums.push_back(*r.secondary);
        if (*r.secondary > r.length)
            ++out.violations;
    }
    out.full = summarize(full, c.thresholds);
    out.block_sum = summarize(sums, c.thresholds);
    return out;
}

Lemma4Result run_lemma4(const ExperimentConfig& config)
{
    ExperimentConfig c = config;
    c.kind = ExperimentKind::Lemma4;
    validate(c);
    Lemma4Result out;
    out.records = run_records(c);
    const auto sums = lengths_of(out.records);
    out.summary = summarize(sums, c.thresholds);
    const auto m = static_cast<double>(c.m);
    const auto k = static_cast<double>(c.k);
    for (double lambda : c.effective_lambdas()) {
        Lemma4Row row;
        row.lambda = lambda;
        row.cutoff = m * (k - lambda);
        row.empirical = frequency_at_or_below(sums, row.cutoff);
        row.boris = boris_bound(m, k, lambda);
        row.boriseasy = boriseasy_bound(m, k, lambda);
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace shiftlcs
