#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "detail/numeric.hpp"
#include "errors.hpp"

namespace partitio {

enum class WeightKind { squares, prime_squares, primes_log, mobius, hth_powers, smooth_kth_powers, e2, custom };

inline const char* to_string(WeightKind k) {
    switch (k) {
        case WeightKind::squares: return "squares";
        case WeightKind::prime_squares: return "prime_squares";
        case WeightKind::primes_log: return "primes_log";
        case WeightKind::mobius: return "mobius";
        case WeightKind::hth_powers: return "hth_powers";
        case WeightKind::smooth_kth_powers: return "smooth_kth_powers";
        case WeightKind::e2: return "e2";
        case WeightKind::custom: return "custom";
    }
    return "?";
}

struct WeightParams {
    int h = 2;           // hth_powers
    int k = 3;           // smooth_kth_powers
    std::int64_t P = 0;  // smooth_kth_powers; 0 means floor(n^{1/k})
    std::int64_t R = 0;  // smooth_kth_powers; 0 means R = P
    int j = 1;           // e2 phase multiplier
};

struct WeightTerm {
    std::int64_t m;
    std::complex<double> value;
};

// A weight w on [1, n], stored as its support in increasing m.
class Weight {
  public:
    Weight(std::int64_t n, WeightKind kind, std::string name, std::vector<WeightTerm> terms, int phase_multiplier = 1)
        : n_(n), kind_(kind), name_(std::move(name)), phase_multiplier_(phase_multiplier) {
        if (n < 1) throw std::invalid_argument("weight domain needs n >= 1");
        std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.m < b.m; });
        for (const auto& t : terms) {
            if (t.m < 1 || t.m > n) throw std::invalid_argument("weight support must lie in [1, n]");
            if (!terms_.empty() && terms_.back().m == t.m)
                terms_.back().value += t.value;
            else
                terms_.push_back(t);
        }
        std::erase_if(terms_, [](const WeightTerm& t) { return t.value == std::complex<double>(0.0, 0.0); });
        detail::compensated_sum norm;
        for (const auto& t : terms_) {
            norm.add(std::abs(t.value));
            if (t.value.imag() != 0.0) real_ = false;
            if (t.value.imag() != 0.0 || t.value.real() < 0.0) nonnegative_ = false;
        }
        norm_ = norm.value();
    }

    std::int64_t n() const { return n_; }
    WeightKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::vector<WeightTerm>& terms() const { return terms_; }
    int phase_multiplier() const { return phase_multiplier_; }
    double norm() const { return norm_; }
    bool is_real() const { return real_; }
    bool is_nonnegative() const { return nonnegative_; }
    bool empty() const { return terms_.empty(); }

    std::complex<double> at(std::int64_t m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const WeightTerm& t, std::int64_t v) { return t.m < v; });
        return (it != terms_.end() && it->m == m) ? it->value : std::complex<double>{};
    }

  private:
    std::int64_t n_;
    WeightKind kind_;
    std::string name_;
    int phase_multiplier_;
    std::vector<WeightTerm> terms_;
    double norm_ = 0.0;
    bool real_ = true;
    bool nonnegative_ = true;
};

inline Weight custom_weight(std::int64_t n, std::string name, std::vector<WeightTerm> terms) {
    return Weight(n, WeightKind::custom, std::move(name), std::move(terms));
}

namespace detail {

inline std::vector<WeightTerm> power_terms(std::int64_t n, int h) {
    std::vector<WeightTerm> out;
    for (std::int64_t x = 1;; ++x) {
        const auto p = ipow_checked(x, h);
        if (!p || *p > n) break;
        out.push_back({*p, 1.0});
    }
    return out;
}

}  // namespace detail

inline Weight make_weight(WeightKind kind, std::int64_t n, const WeightParams& params = {}) {
    if (n < 1) throw std::invalid_argument("make_weight requires n >= 1");
    std::vector<WeightTerm> terms;
    switch (kind) {
        case WeightKind::squares:
            return Weight(n, kind, "squares", detail::power_terms(n, 2));
        case WeightKind::hth_powers: {
            if (params.h < 2) throw std::invalid_argument("hth_powers requires h >= 2");
            return Weight(n, kind, "hth_powers(" + std::to_string(params.h) + ")", detail::power_terms(n, params.h));
        }
        case WeightKind::prime_squares: {
            const auto root = static_cast<std::int64_t>(detail::isqrt(static_cast<detail::u64>(n)));
            if (root >= 2) {
                const SieveTables s = sieve_tables(root);
                for (auto p : s.primes) terms.push_back({static_cast<std::int64_t>(p) * p, 1.0});
            }
            return Weight(n, kind, "prime_squares", std::move(terms));
        }
        case WeightKind::primes_log: {
            if (n >= 2) {
                const SieveTables s = sieve_tables(n);
                for (auto p : s.primes) terms.push_back({static_cast<std::int64_t>(p), std::log(static_cast<double>(p))});
            }
            return Weight(n, kind, "primes_log", std::move(terms));
        }
        case WeightKind::mobius: {
            if (n >= 2) {
                const SieveTables s = sieve_tables(n);
                for (std::int64_t m = 1; m <= n; ++m)
                    if (s.mobius[m] != 0) terms.push_back({m, static_cast<double>(s.mobius[m])});
            } else {
                terms.push_back({1, 1.0});
            }
            return Weight(n, kind, "mobius", std::move(terms));
        }
        case WeightKind::smooth_kth_powers: {
            if (params.k < 3) throw std::invalid_argument("smooth_kth_powers requires k >= 3");
            const std::int64_t P = params.P > 0 ? params.P : static_cast<std::int64_t>(detail::iroot(static_cast<detail::u64>(n), params.k));
            const std::int64_t R = params.R > 0 ? params.R : P;
            const auto top = detail::ipow_checked(P, params.k);
            if (!top || *top > n) throw std::invalid_argument("smooth_kth_powers requires P^k <= n");
            if (P >= 2) {
                const SmoothSet set = smooth_set(P, std::min(R, P));
                for (auto x : set.members) terms.push_back({*detail::ipow_checked(x, params.k), 1.0});
            } else if (P == 1) {
                terms.push_back({1, 1.0});
            }
            return Weight(n, kind,
                          "smooth_kth_powers(k=" + std::to_string(params.k) + ",P=" + std::to_string(P) + ",R=" + std::to_string(R) + ")",
                          std::move(terms));
        }
        case WeightKind::e2: {
            if (params.j != 1 && params.j != 2) throw std::invalid_argument("e2 requires j in {1, 2}");
            const auto M = static_cast<std::int64_t>(detail::iroot(static_cast<detail::u64>(n), 6));
            const auto M2 = static_cast<std::int64_t>(detail::iroot(static_cast<detail::u64>(n), 3));
            if (M2 >= 2) {
                const SieveTables s = sieve_tables(M2);
                std::vector<std::int64_t> p1s, p2s;
                for (auto p : s.primes) {
                    if (p % 3 != 1) continue;
                    if (p <= M) p1s.push_back(p);
                    p2s.push_back(p);
                }
                for (auto p1 : p1s)
                    for (auto p2 : p2s) terms.push_back({p1 * p1 * p2 * p2, 1.0});
            }
            return Weight(n, kind, "e2(j=" + std::to_string(params.j) + ")", std::move(terms), params.j);
        }
        case WeightKind::custom: break;
    }
    throw std::invalid_argument("make_weight: use custom_weight for custom kinds");
}

struct WeightStats {
    double norm = 0.0;
    double half_mass_ratio = 0.0;
    bool is_regular = false;
    bool zero_norm = false;
};

// Share of the mass sitting on [1, n/2]; only defined for nonnegative weights.
inline WeightStats weight_stats(const Weight& w, double threshold) {
    if (!w.is_nonnegative()) throw std::invalid_argument("weight_stats requires a nonnegative real weight");
    WeightStats st;
    st.norm = w.norm();
    if (st.norm == 0.0) {
        st.zero_norm = true;
        return st;
    }
    detail::compensated_sum lower;
    for (const auto& t : w.terms())
        if (2 * t.m <= w.n()) lower.add(t.value.real());
    st.half_mass_ratio = lower.value() / st.norm;
    st.is_regular = st.half_mass_ratio >= threshold;
    return st;
}

}  // namespace partitio
