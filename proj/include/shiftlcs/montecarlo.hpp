#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shiftlcs/bounds.hpp"
#include "shiftlcs/geometry.hpp"
#include "shiftlcs/lcs.hpp"
#include "shiftlcs/words.hpp"

namespace shiftlcs {

enum class ExperimentKind { Ln, Shift, GammaSweep, Tails, BlockSum, Lemma4 };

ExperimentKind parse_kind(std::string_view name);
std::string_view to_string(ExperimentKind kind) noexcept;

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Ln;
    unsigned k = 2;
    std::size_t n = 100;
    std::size_t s = 0;
    std::size_t trials = 100;
    std::uint64_t master_seed = 0;
    double eps = kDefaultEps;
    Kernel kernel = Kernel::BitParallel;
    /// Block size for BLOCKSUM; 0 means round(sqrt(n)).
    std::size_t block_len = 0;
    /// Summands per sample for LEMMA4.
    std::size_t m = 50;
    /// LEMMA4 slack grid; empty means {0, k/8, ..., k}.
    std::vector<double> lambdas;
    /// Deviations t for TAILS, and extra summary thresholds for the rest.
    std::vector<double> thresholds;
    /// Alphabet sizes for GAMMA_SWEEP.
    std::vector<unsigned> ks;
    double c_k = 1.0;
    /// gamma_k used to center TAILS; unset means an independent L_n estimate.
    std::optional<double> gamma;
    /// Record min span and case tag of the lexicographic witness per SHIFT trial.
    bool alignment_summary = false;
    /// Run an independent L_n baseline alongside SHIFT.
    bool baseline = false;
    /// Worker count. Never changes any output.
    unsigned threads = 1;

    std::size_t effective_block_len() const noexcept;
    std::vector<double> effective_lambdas() const;
};

/// A configuration fault, naming the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field))
    {
    }
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

void validate(const ExperimentConfig& config);

struct TrialRecord {
    std::size_t trial_index = 0;
    std::uint64_t stream_seed = 0;
    /// L_n, SHIFT, full LCS (BLOCKSUM) or the geometric sum X (LEMMA4).
    std::int64_t length = 0;
    /// Sum of block LCS lengths (BLOCKSUM).
    std::optional<std::int64_t> secondary;
    std::optional<std::int64_t> min_span;
    std::optional<SpanCase> span_case;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct TailFrequency {
    double threshold = 0.0;
    double at_or_above = 0.0;
    double at_or_below = 0.0;
};

struct SummaryStats {
    std::size_t trials = 0;
    double mean = 0.0;
    /// Sample standard deviation; 0 with std_defined = false for one trial.
    double std = 0.0;
    bool std_defined = false;
    double std_error = 0.0;
    std::int64_t min = 0;
    std::int64_t max = 0;
    std::vector<TailFrequency> tails;
    std::optional<std::pair<double, double>> gamma_bracket;
};

/// Ordered reduction over the values as given.
SummaryStats summarize(std::span<const std::int64_t> values, std::span<const double> thresholds = {});

/// Fraction of values >= cut (or <= cut).
double frequency_at_or_above(std::span<const std::int64_t> values, double cut);
double frequency_at_or_below(std::span<const std::int64_t> values, double cut);

/// Recomputes a single record from (config, trial_index) alone.
TrialRecord replay_trial(const ExperimentConfig& config, std::size_t trial_index);

std::vector<std::int64_t> lengths_of(std::span<const TrialRecord> records);

/// Master seed of the independent L_n baseline derived from a SHIFT/TAILS seed.
std::uint64_t baseline_seed(std::uint64_t master_seed) noexcept;
/// Master seed of the GAMMA_SWEEP run for alphabet size k.
std::uint64_t sweep_seed(std::uint64_t master_seed, unsigned k) noexcept;

//---------------------------------------------------------------------------//

struct LnResult {
    std::vector<TrialRecord> records;
    SummaryStats summary;
};

LnResult run_ln(const ExperimentConfig& config);

struct ShiftResult {
    std::vector<TrialRecord> records;
    SummaryStats summary;
    std::size_t overlap = 0;
    /// mean SHIFT - (n - s).
    double mean_excess = 0.0;
    std::size_t floor_violations = 0;
    std::optional<SummaryStats> baseline;
    /// |mean SHIFT - mean L_n| over the combined standard error.
    std::optional<double> baseline_z;
};

ShiftResult run_shift(const ExperimentConfig& config);

struct GammaRow {
    unsigned k = 0;
    double mean_ratio = 0.0;
    double std_error_ratio = 0.0;
    double low = 0.0;
    double high = 0.0;
    double low_sqrtk = 0.0;
    double high_sqrtk = 0.0;
    std::vector<TrialRecord> records;
};

std::vector<GammaRow> run_gamma_sweep(std::span<const unsigned> ks,
                                      std::size_t n,
                                      std::size_t trials,
                                      std::uint64_t master_seed,
                                      Kernel kernel = Kernel::BitParallel,
                                      unsigned threads = 1);

struct TailRow {
    double t = 0.0;
    double upper_cut = 0.0;
    double upper_frequency = 0.0;
    RegimeBound upper_bound_value;
    double lower_cut = 0.0;
    double lower_frequency = 0.0;
    RegimeBound lower_bound_value;
};

struct TailsResult {
    std::vector<TrialRecord> records;
    SummaryStats summary;
    double gamma = 0.0;
    std::string gamma_source;
    std::vector<TailRow> rows;
};

TailsResult run_tails(const ExperimentConfig& config, std::span<const double> thresholds = {});

struct BlockSumResult {
    std::vector<TrialRecord> records;
    SummaryStats full;
    SummaryStats block_sum;
    std::size_t block_len = 0;
    std::size_t violations = 0;
};

BlockSumResult run_blocksum(const ExperimentConfig& config);

struct Lemma4Row {
    double lambda = 0.0;
    double cutoff = 0.0;
    double empirical = 0.0;
    double boris = 0.0;
    double boriseasy = 0.0;
};

struct Lemma4Result {
    std::vector<TrialRecord> records;
    SummaryStats summary;
    std::vector<Lemma4Row> rows;
};

Lemma4Result run_lemma4(const ExperimentConfig& config);

/// Symbols drawn until one equals the target: geometric with mean k.
std::uint64_t geometric_wait(unsigned k, Rng& rng);

}  // namespace shiftlcs
