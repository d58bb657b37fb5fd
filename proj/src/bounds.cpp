#include "shiftlcs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace shiftlcs {

namespace {

double clamp_probability(double p)
{
    if (std::isnan(p))
        return 1.0;
    return std::clamp(p, 0.0, 1.0);
}

void require(bool ok, const char* message)
{
    if (!ok)
        throw std::domain_error(message);
}

void check_entry(unsigned k, const GammaEntry& e)
{
    if (k == 0)
        throw std::invalid_argument("gamma table: k must be at least 1");
    if (!(e.lower > 0.0 && e.lower <= e.upper && e.upper <= 1.0))
        throw std::invalid_argument("gamma table: need 0 < lower <= upper <= 1 for k = " + std::to_string(k));
}

}  // namespace

//---------------------------------------------------------------------------//

GammaTable GammaTable::defaults(unsigned k_max)
{
    GammaTable table;
    table.set(1, {1.0, 1.0, "exact"});
    if (k_max >= 2)
        table.set(2, {kGamma2ExternalLower, 1.0, "external"});
    for (unsigned k = 3; k <= k_max; ++k)
        table.set(k, {1.0 / std::sqrt(static_cast<double>(k)), 1.0, "inverse-sqrt-k"});
    return table;
}

void GammaTable::set(unsigned k, GammaEntry entry)
{
    check_entry(k, entry);
    entries_[k] = std::move(entry);
}

const GammaEntry& GammaTable::at(unsigned k) const
{
    auto it = entries_.find(k);
    if (it == entries_.end())
        throw std::out_of_range("gamma table has no entry for k = " + std::to_string(k));
    return it->second;
}

nlohmann::ordered_json GammaTable::to_json() const
{
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [k, e] : entries_)
        out[std::to_string(k)] = {{"lower", e.lower}, {"upper", e.upper}, {"source", e.source}};
    return out;
}

GammaTable GammaTable::from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw std::invalid_argument("gamma table must be a JSON object");
    GammaTable table;
    for (const auto& [key, value] : j.items()) {
        std::size_t used = 0;
        unsigned long k = 0;
        try {
            k = std::stoul(key, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != key.size() || k == 0 || k > std::numeric_limits<unsigned>::max())
            throw std::invalid_argument("gamma table key '" + key + "' is not an alphabet size");
        for (const auto& [field, unused] : value.items()) {
            if (field != "lower" && field != "upper" && field != "source")
                throw std::invalid_argument("gamma table: unknown field '" + field + "'");
        }
        GammaEntry e;
        e.lower = value.at("lower").get<double>();
        e.upper = value.value("upper", 1.0);
        e.source = value.value("source", std::string("user"));
        table.set(static_cast<unsigned>(k), e);
    }
    return table;
}

GammaTable GammaTable::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open gamma table " + path.string());
    return from_json(nlohmann::json::parse(in));
}

void GammaTable::save(const std::filesystem::path& path) const
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write gamma table " + path.string());
    out << to_json().dump(2) << '\n';
}

//---------------------------------------------------------------------------//

double boris_bound(double m, double k, double lambda)
{
    require(m >= 1 && k >= 1 && lambda >= 0, "boris_bound needs m >= 1, k >= 1, lambda >= 0");
    return clamp_probability(std::exp(-m * lambda * lambda / (2.0 * k * k)));
}

double boriseasy_bound(double m, double k, double lambda)
{
    require(m >= 1 && k >= 1 && lambda >= 0, "boriseasy_bound needs m >= 1, k >= 1, lambda >= 0");
    return clamp_probability(std::exp(-m * lambda / (4.0 * k) + m / 32.0));
}

double grosscase_bound(double len_a, double len_b, double k)
{
    require(len_a >= 1 && len_b >= 0 && k >= 1, "grosscase_bound needs |A| >= 1, |B| >= 0, k >= 1");
    return clamp_probability(std::exp((len_b - 0.875 * k * len_a) / (4.0 * k)));
}

double azuma_tail(double lambda, double n_coords)
{
    require(lambda >= 0 && n_coords >= 1, "azuma_tail needs lambda >= 0, n_coords >= 1");
    return clamp_probability(std::exp(-lambda * lambda / (4.0 * n_coords)));
}

double hoeffding_tail(double t, std::span<const std::pair<double, double>> ranges)
{
    require(t > 0, "hoeffding_tail needs t > 0");
    double spread = 0.0;
    for (const auto& [a, b] : ranges) {
        require(b >= a, "hoeffding_tail needs b_i >= a_i");
        spread += (b - a) * (b - a);
    }
    if (spread == 0.0)
        return 0.0;
    return clamp_probability(std::exp(-2.0 * t * t / spread));
}

std::pair<double, double> gamma_bracket(double n, double mean_ln)
{
    require(n >= 2, "gamma_bracket needs n >= 2");
    const double low = mean_ln / n;
    return {low, low + 4.0 * std::sqrt(std::log(n) / n)};
}

RegimeBound theorem1_bound(double n, double t, double c_k)
{
    require(n >= 1 && t >= 0 && c_k > 0, "theorem1_bound needs n >= 1, t >= 0, c_k > 0");
    RegimeBound out;
    out.threshold = 6.0 * std::sqrt(n);
    out.in_regime = t >= out.threshold;
    out.value = clamp_probability(std::exp(-c_k * t * t / n));
    return out;
}

RegimeBound theorem2_bound(double n, double t, double c_k)
{
    require(n >= 2 && t >= 0 && c_k > 0, "theorem2_bound needs n >= 2, t >= 0, c_k > 0");
    RegimeBound out;
    const double n34 = std::pow(n, 0.75);
    out.threshold = 5.0 * n34 * std::sqrt(std::log(n));
    out.in_regime = t >= out.threshold;
    out.value = clamp_probability(std::exp(-c_k * t * t / n34));
    return out;
}

CaseTwoCheck case2_constant_check(unsigned k, double gamma_lower, double eps)
{
    require(k >= 1, "case2_constant_check needs k >= 1");
    require(gamma_lower > 0 && gamma_lower <= 1, "case2_constant_check needs gamma_lower in (0, 1]");
    require(eps > 0 && eps < 1, "case2_constant_check needs eps in (0, 1)");
    const double slope = 0.875 * k + 1.0 - eps;
    CaseTwoCheck out;
    out.value = 2.0 - slope * gamma_lower + 3.0 * eps - eps * std::log(eps);
    out.reduced_value = 2.08 - slope * gamma_lower;
    out.holds = out.value < 0.0;
    return out;
}

bool exp_inequality_check(double x)
{
    require(x >= 0 && x <= 1, "exp_inequality_check needs x in [0, 1]");
    const double lhs = std::exp(x) * (1.0 - x);
    const double rhs = 1.0 - x * x / 2.0;
    return lhs <= rhs + 4.0 * std::numeric_limits<double>::epsilon();
}

double binom_upper(double n, double j)
{
    require(j >= 1 && j <= n, "binom_upper needs 1 <= j <= n");
    return std::pow(std::numbers::e * n / j, j);
}

}  // namespace shiftlcs
