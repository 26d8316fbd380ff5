#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "constants.hpp"
#include "detail/decimal.hpp"
#include "detail/numeric.hpp"
#include "errors.hpp"

namespace partitio {

enum class DeltaSource { large_k, table, interpolate, automatic };

// Admissible exponents quoted as data: Delta_t for the smooth Weyl sum of degree k.
struct StoredExponent {
    int k;
    int t;
    std::int64_t num;
    std::int64_t den;
};

inline constexpr std::array<StoredExponent, 15> stored_exponents{{
    {3, 5, 10, 17},
    {4, 7, 849408, 1000000},
    {5, 9, 1181868, 1000000},
    // Delta_{2r} column of the admissible-exponent table
    {7, 8, 327, 100},
    {8, 10, 350, 100},
    {9, 10, 442, 100},
    {10, 12, 465, 100},
    {11, 14, 489, 100},
    {12, 14, 580, 100},
    // Delta_{s+t} column of the admissible-exponent table
    {7, 26, 1926, 10000},
    {8, 32, 1892, 10000},
    {9, 36, 2521, 10000},
    {10, 42, 2450, 10000},
    {11, 48, 2414, 10000},
    {12, 50, 3469, 10000},
}};

inline std::optional<rational> stored_exponent(int k, int t) {
    for (const auto& e : stored_exponents)
        if (e.k == k && e.t == t) return rational(e.num, e.den);
    return std::nullopt;
}

namespace detail {

inline std::optional<double> large_k_exponent(int k, int t) {
    if (t < 2 || t % 2 != 0) return std::nullopt;
    return k * eta(static_cast<double>(t) / k);
}

inline std::optional<double> table_or_large_k(int k, int t) {
    if (auto v = stored_exponent(k, t)) return to_double(*v);
    return large_k_exponent(k, t);
}

inline std::optional<double> interpolated_exponent(int k, int t) {
    const auto lo = table_or_large_k(k, t - 1);
    const auto hi = table_or_large_k(k, t + 1);
    if (!lo || !hi) return std::nullopt;
    return 0.5 * (*lo + *hi);
}

}  // namespace detail

inline std::optional<double> try_admissible_exponent(int k, int t, DeltaSource source) {
    if (k < 3) throw domain_error("admissible exponents need k >= 3");
    switch (source) {
        case DeltaSource::large_k: return detail::large_k_exponent(k, t);
        case DeltaSource::table: {
            if (auto v = stored_exponent(k, t)) return to_double(*v);
            return std::nullopt;
        }
        case DeltaSource::interpolate: return detail::interpolated_exponent(k, t);
        case DeltaSource::automatic: {
            if (auto v = detail::table_or_large_k(k, t)) return v;
            return detail::interpolated_exponent(k, t);
        }
    }
    return std::nullopt;
}

inline double admissible_exponent(int k, int t, DeltaSource source) {
    if (auto v = try_admissible_exponent(k, t, source)) return *v;
    throw lookup_error("no admissible exponent for k=" + std::to_string(k) + ", t=" + std::to_string(t));
}

struct ConditionReport {
    bool s_at_least_three_halves_k = false;    // s >= 3k/2
    bool exceeds_minor_threshold = false;      // s > (1-phi)(2 floor(k/2) + 4) + 2 phi
    std::optional<bool> height_pruning;        // 2 Delta_s < k phi
    std::optional<bool> mobius_condition;      // s >= 2 floor(k/2) + 5 and 5 Delta_s < k
    std::optional<bool> r_condition;           // 2 Delta_{2r} <= k
    bool size_pruning = false;                 // 2 Delta_{s+t}/k < (1 - t/(s-2r)) phi
    std::optional<double> delta_s;
    std::optional<double> delta_2r;
    double delta_s_plus_t = 0.0;
    double delta_star = 0.0;                   // (k phi / 2)(1 - t/(s-2r))

    // All conditions that could be evaluated hold (the Mobius pair is a separate result).
    bool all_pass() const {
        return s_at_least_three_halves_k && exceeds_minor_threshold && height_pruning.value_or(true) &&
               r_condition.value_or(true) && size_pruning;
    }
};

inline ConditionReport condition_check(int k, int s, double phi, int r, int t, DeltaSource source) {
    if (s <= 2 * r) throw domain_error("the size-pruning condition needs s > 2r");
    if (t < 0) throw domain_error("t must be nonnegative");
    ConditionReport out;
    const int half = k / 2;
    out.s_at_least_three_halves_k = 2 * s >= 3 * k;
    out.exceeds_minor_threshold = s > (1.0 - phi) * (2 * half + 4) + 2.0 * phi;

    out.delta_s = try_admissible_exponent(k, s, source);
    if (out.delta_s) {
        out.height_pruning = 2.0 * *out.delta_s < k * phi;
        out.mobius_condition = s >= 2 * half + 5 && 5.0 * *out.delta_s < k;
    }
    out.delta_2r = try_admissible_exponent(k, 2 * r, source);
    if (out.delta_2r) out.r_condition = 2.0 * *out.delta_2r <= k;

    const auto dst = try_admissible_exponent(k, s + t, source);
    if (!dst) throw lookup_error("no admissible exponent for s+t=" + std::to_string(s + t) + " at k=" + std::to_string(k));
    out.delta_s_plus_t = *dst;
    const double shrink = 1.0 - static_cast<double>(t) / (s - 2 * r);
    out.size_pruning = 2.0 * out.delta_s_plus_t / k < shrink * phi;
    out.delta_star = 0.5 * k * phi * shrink;
    return out;
}

// One row of the admissible-exponent table: printed decimals as they appear.
struct Thm14Row {
    int k;
    int r;
    const char* delta_2r;
    int s;
    int t;
    const char* delta_s_plus_t;
    const char* delta_star;
};

inline constexpr std::array<Thm14Row, 6> thm14_rows{{
    {7, 4, "3.27", 20, 6, "0.1926", "0.2187"},
    {8, 5, "3.50", 24, 8, "0.1892", "0.2142"},
    {9, 5, "4.42", 27, 9, "0.2521", "0.2647"},
    {10, 6, "4.65", 31, 11, "0.2450", "0.2631"},
    {11, 7, "4.89", 35, 13, "0.2414", "0.2619"},
    {12, 7, "5.80", 38, 12, "0.3469", "0.3750"},
}};

struct Thm14Check {
    Thm14Row row;
    rational delta_star_exact;       // (k/16)(1 - t/(s-2r))
    std::string delta_star_rounded;  // rounded down at 4 digits
    bool delta_star_matches = false;
    bool delta_below_star = false;   // Delta_{s+t} <= Delta*
    bool r_condition = false;        // 2 Delta_{2r} <= k
    bool pass() const { return delta_star_matches && delta_below_star && r_condition; }
};

inline std::vector<Thm14Check> verify_thm14_table() {
    std::vector<Thm14Check> out;
    for (const auto& row : thm14_rows) {
        Thm14Check c{row, rational(0), {}, false, false, false};
        const std::int64_t gap = row.s - 2 * row.r;
        c.delta_star_exact = rational(row.k, 16) * (rational(1) - rational(row.t, gap));
        c.delta_star_rounded = fixed_digits(c.delta_star_exact, 4, Rounding::down);
        c.delta_star_matches = c.delta_star_rounded == row.delta_star;
        c.delta_below_star = parse_decimal(row.delta_s_plus_t) <= c.delta_star_exact;
        c.r_condition = 2 * parse_decimal(row.delta_2r) <= rational(row.k);
        out.push_back(c);
    }
    return out;
}

struct BoundCatalog {
    int k = 0;
    std::int64_t G_bound = 0;                 // ceil(k (log k + 4.20032))
    double P_bound = 0.0;                     // c k + 4
    std::int64_t s0_bound = 0;                // floor(c0 k) + 2
    std::int64_t t0_formula = 0;              // ceil((5k^2 - 2k + 1)/8) + floor(sqrt(2k+2))
    double thm14_linear_bound = 0.0;          // c~ k + 3
    std::optional<double> h_power_threshold;  // (2 log h + 3.20032) k + 2, strict lower bound for s
    std::optional<int> s0_small_k;            // 2k-1 for 3..6, 2k for 7..11
    std::optional<int> t0_table;
    std::optional<int> s0_tilde_table;
    std::optional<int> S0_table;
};

inline BoundCatalog bound_catalog(int k, std::optional<int> h = std::nullopt) {
    if (k < 3) throw domain_error("bound_catalog requires k >= 3");
    if (h && *h < 2) throw domain_error("bound_catalog requires h >= 2");
    const ConstantsReport c = constants_report();
    BoundCatalog b;
    b.k = k;
    b.G_bound = static_cast<std::int64_t>(std::ceil(k * (std::log(static_cast<double>(k)) + 4.20032)));
    b.P_bound = c.c * k + 4.0;
    b.s0_bound = static_cast<std::int64_t>(std::floor(c.c0 * k)) + 2;
    const std::int64_t q = 5LL * k * k - 2LL * k + 1;
    b.t0_formula = (q + 7) / 8 + static_cast<std::int64_t>(detail::isqrt(static_cast<detail::u64>(2 * k + 2)));
    b.thm14_linear_bound = c.c_tilde * k + 3.0;
    if (h) b.h_power_threshold = (2.0 * std::log(static_cast<double>(*h)) + 3.20032) * k + 2.0;
    if (k <= 6)
        b.s0_small_k = 2 * k - 1;
    else if (k <= 11)
        b.s0_small_k = 2 * k;
    static constexpr std::array<int, 9> t0{10, 15, 21, 30, 39, 51, 64, 77, 91};
    if (k >= 4 && k <= 12) b.t0_table = t0[k - 4];
    static constexpr std::array<int, 10> s0t{6, 8, 12, 16, 20, 24, 27, 31, 35, 38};
    if (k <= 12) b.s0_tilde_table = s0t[k - 3];
    if (k == 6) b.S0_table = 11;
    if (k == 7) b.S0_table = 13;
    return b;
}

}  // namespace partitio
