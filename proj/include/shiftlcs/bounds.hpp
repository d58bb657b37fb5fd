#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>

#include <json.hpp>

namespace shiftlcs {

//---------------------------------------------------------------------------//
// Chvatal-Sankoff constant brackets
//---------------------------------------------------------------------------//

struct GammaEntry {
    double lower = 0.0;
    double upper = 1.0;
    std::string source;

    friend bool operator==(const GammaEntry&, const GammaEntry&) = default;
};

/// Known brackets lower <= gamma_k <= upper per alphabet size.
class GammaTable {
public:
    /// k = 1 is exact; k = 2 uses the external lower bound 0.788; k >= 3 uses
    /// 1/sqrt(k). Upper bounds default to 1.
    static GammaTable defaults(unsigned k_max = 26);

    void set(unsigned k, GammaEntry entry);
    const GammaEntry& at(unsigned k) const;
    bool contains(unsigned k) const { return entries_.count(k) != 0; }
    const std::map<unsigned, GammaEntry>& entries() const noexcept { return entries_; }

    nlohmann::ordered_json to_json() const;
    static GammaTable from_json(const nlohmann::json& j);
    static GammaTable load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

private:
    std::map<unsigned, GammaEntry> entries_;
};

/// Published lower bound on gamma_2; an input, not derived here.
inline constexpr double kGamma2ExternalLower = 0.788;

//---------------------------------------------------------------------------//
// Tail bounds. Every evaluator clamps into [0, 1].
//---------------------------------------------------------------------------//

/// Sum X of m geometric waiting times with mean k:
/// P[X <= m(k - lambda)] <= exp(-m lambda^2 / 2k^2).
double boris_bound(double m, double k, double lambda);

/// Weakened form min(1, exp(-m lambda / 4k + m / 32)), from x^2 >= x/2 - 1/16.
double boriseasy_bound(double m, double k, double lambda);

/// P[A is a subsequence of B] <= min(1, exp((|B| - 7/8 k |A|) / 4k)).
double grosscase_bound(double len_a, double len_b, double k);

/// Bounded-difference tail exp(-lambda^2 / (4 n_coords)).
double azuma_tail(double lambda, double n_coords);

/// exp(-2 t^2 / sum (b_i - a_i)^2); 0 when every range is degenerate.
double hoeffding_tail(double t, std::span<const std::pair<double, double>> ranges);

/// (mean/n, mean/n + 4 sqrt(log n / n)) brackets gamma_k when mean = E[L_n].
std::pair<double, double> gamma_bracket(double n, double mean_ln);

struct RegimeBound {
    double value = 1.0;
    /// Smallest t the statement covers.
    double threshold = 0.0;
    bool in_regime = false;
};

/// exp(-c_k t^2 / n); stated for t >= 6 sqrt(n).
RegimeBound theorem1_bound(double n, double t, double c_k = 1.0);
/// exp(-c_k t^2 / n^{3/4}); stated for t >= 5 n^{3/4} sqrt(log n).
RegimeBound theorem2_bound(double n, double t, double c_k = 1.0);

struct CaseTwoCheck {
    /// 2 - (7/8 k + 1 - eps) gamma + 3 eps - eps log eps.
    double value = 0.0;
    /// The same with 2 + 3 eps - eps log eps rounded to 2.08 (eps = 0.01 only).
    double reduced_value = 0.0;
    bool holds = false;
};

CaseTwoCheck case2_constant_check(unsigned k, double gamma_lower, double eps = 0.01);

/// e^x (1 - x) <= 1 - x^2 / 2 on [0, 1], within a few ulps.
bool exp_inequality_check(double x);

/// (e n / j)^j, an upper bound on binom(n, j).
double binom_upper(double n, double j);

}  // namespace shiftlcs
