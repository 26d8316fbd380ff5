#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arith.hpp"
#include "detail/numeric.hpp"
#include "errors.hpp"
#include "weights.hpp"

namespace partitio {

using u128 = unsigned __int128;

inline std::string to_string_u128(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

// Counts indexed by m in [0, limit], kept in 64 bits unless a value overflows.
class CountTable {
  public:
    CountTable() = default;
    CountTable(std::int64_t limit, std::vector<std::uint64_t> counts, std::string provenance)
        : limit_(limit), data_(std::move(counts)), provenance_(std::move(provenance)) {}
    CountTable(std::int64_t limit, std::vector<u128> counts, std::string provenance)
        : limit_(limit), data_(std::move(counts)), provenance_(std::move(provenance)) {}

    std::int64_t limit() const { return limit_; }
    const std::string& provenance() const { return provenance_; }
    bool wide() const { return std::holds_alternative<std::vector<u128>>(data_); }

    u128 wide_at(std::int64_t m) const {
        if (m < 0 || m > limit_) throw std::out_of_range("CountTable index out of range");
        return wide() ? std::get<1>(data_)[m] : std::get<0>(data_)[m];
    }

    // Value as 64 bits; throws if it does not fit.
    std::uint64_t at(std::int64_t m) const {
        const u128 v = wide_at(m);
        if (v > std::numeric_limits<std::uint64_t>::max()) throw overflow_error("count exceeds 64 bits");
        return static_cast<std::uint64_t>(v);
    }
    std::uint64_t operator[](std::int64_t m) const { return at(m); }

    u128 total() const {
        u128 s = 0;
        for (std::int64_t m = 0; m <= limit_; ++m) {
            const u128 v = wide_at(m);
            if (s + v < s) throw overflow_error("total count exceeds 128 bits");
            s += v;
        }
        return s;
    }

  private:
    std::int64_t limit_ = 0;
    std::variant<std::vector<std::uint64_t>, std::vector<u128>> data_;
    std::string provenance_;
};

namespace detail {

template <class T>
bool add_checked(T& acc, T v) {
    return !__builtin_add_overflow(acc, v, &acc);
}

template <class T>
bool mul_checked(T a, T b, T& out) {
    return !__builtin_mul_overflow(a, b, &out);
}

// new[m] = sum_j a[m - p_j] * mult_j, truncated at N; false on overflow.
template <class T>
bool convolve_sparse(const std::vector<T>& dense, const std::vector<std::pair<std::int64_t, T>>& sparse, std::int64_t N,
                     std::vector<T>& out) {
    out.assign(N + 1, T{0});
    for (std::int64_t m = 0; m <= N; ++m) {
        const T v = dense[m];
        if (v == 0) continue;
        for (const auto& [p, c] : sparse) {
            if (m + p > N) break;
            T prod;
            if (!mul_checked(v, c, prod) || !add_checked(out[m + p], prod)) return false;
        }
    }
    return true;
}

template <class T>
bool power_convolution_impl(const std::vector<std::pair<std::int64_t, T>>& sparse, int s, std::int64_t N, std::vector<T>& result) {
    result.assign(N + 1, T{0});
    result[0] = 1;
    std::vector<T> next;
    for (int i = 0; i < s; ++i) {
        if (!convolve_sparse(result, sparse, N, next)) return false;
        result.swap(next);
    }
    return true;
}

inline std::vector<std::pair<std::int64_t, std::uint64_t>> kth_power_support(const std::vector<std::int64_t>& xs, int k, std::int64_t N,
                                                                           bool allow_zero) {
    std::vector<std::pair<std::int64_t, std::uint64_t>> out;
    if (allow_zero) out.push_back({0, 1});
    for (auto x : xs) {
        const auto p = ipow_checked(x, k);
        if (!p || *p > N) continue;
        out.push_back({*p, 1});
    }
    std::sort(out.begin(), out.end());
    // merge equal powers
    std::vector<std::pair<std::int64_t, std::uint64_t>> merged;
    for (const auto& e : out) {
        if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
        else
            merged.push_back(e);
    }
    return merged;
}

inline CountTable convolve_to_table(const std::vector<std::pair<std::int64_t, std::uint64_t>>& sparse, int s, std::int64_t N,
                                    std::string provenance) {
    std::vector<std::uint64_t> narrow;
    if (power_convolution_impl<std::uint64_t>(sparse, s, N, narrow)) return CountTable(N, std::move(narrow), std::move(provenance));
    std::vector<std::pair<std::int64_t, u128>> wide_sparse;
    for (const auto& [p, c] : sparse) wide_sparse.push_back({p, c});
    std::vector<u128> wide;
    if (power_convolution_impl<u128>(wide_sparse, s, N, wide)) return CountTable(N, std::move(wide), std::move(provenance));
    throw overflow_error("representation counts exceed 128 bits; big-integer mode required");
}

}  // namespace detail

inline std::vector<std::int64_t> all_integers_base(std::int64_t N, int k) {
    const auto P = static_cast<std::int64_t>(detail::iroot(static_cast<detail::u64>(N), k));
    std::vector<std::int64_t> xs;
    for (std::int64_t x = 1; x <= P; ++x) xs.push_back(x);
    return xs;
}

// counts[m] = number of ordered s-tuples from the base (x^k, optionally x = 0) with sum m <= N.
inline CountTable power_convolution(int k, int s, const std::vector<std::int64_t>& base, std::int64_t N, bool allow_zero) {
    if (s < 1 || N < 1 || k < 1) throw std::invalid_argument("power_convolution requires k, s, N >= 1");
    const auto sparse = detail::kth_power_support(base, k, N, allow_zero);
    return detail::convolve_to_table(sparse, s, N,
                                     "k=" + std::to_string(k) + ",s=" + std::to_string(s) + ",allow_zero=" + (allow_zero ? "1" : "0"));
}

inline CountTable power_convolution(int k, int s, const SmoothSet& base, std::int64_t N, bool allow_zero) {
    return power_convolution(k, s, base.members, N, allow_zero);
}

enum class XKind { square, prime_square, hth_power, none };

struct RepresentationOptions {
    XKind x_kind = XKind::square;
    int h = 2;               // exponent for hth_power
    bool x_nonneg = true;    // include x = 0 (ignored for prime squares)
    bool y_nonneg = true;    // include y_j = 0
};

// counts[n] for x^h + y_1^k + ... + y_s^k = n, n <= N.
inline CountTable representation_counts(int k, int s, std::int64_t N, const RepresentationOptions& opt = {}) {
    if (N < 1) throw std::invalid_argument("representation_counts requires N >= 1");
    const auto ys = all_integers_base(N, k);
    auto sparse = detail::kth_power_support(ys, k, N, opt.y_nonneg);
    std::vector<std::pair<std::int64_t, std::uint64_t>> xs;
    switch (opt.x_kind) {
        case XKind::none: break;
        case XKind::square:
        case XKind::hth_power: {
            const int h = opt.x_kind == XKind::square ? 2 : opt.h;
            if (h < 1) throw std::invalid_argument("x exponent must be positive");
            xs = detail::kth_power_support(all_integers_base(N, h), h, N, opt.x_nonneg);
            break;
        }
        case XKind::prime_square: {
            const auto root = static_cast<std::int64_t>(detail::isqrt(static_cast<detail::u64>(N)));
            if (root >= 2) {
                const SieveTables st = sieve_tables(root);
                for (auto p : st.primes) xs.push_back({static_cast<std::int64_t>(p) * p, 1});
            }
            break;
        }
    }
    std::string prov = "x^2+sum y^k: k=" + std::to_string(k) + ",s=" + std::to_string(s);
    if (opt.x_kind == XKind::none) return detail::convolve_to_table(sparse, s, N, prov);
    // s-fold y convolution followed by one x factor
    std::vector<std::uint64_t> ycounts;
    std::vector<std::uint64_t> out;
    if (detail::power_convolution_impl<std::uint64_t>(sparse, s, N, ycounts) && detail::convolve_sparse(ycounts, xs, N, out))
        return CountTable(N, std::move(out), prov);
    std::vector<std::pair<std::int64_t, u128>> ws, wx;
    for (const auto& [p, c] : sparse) ws.push_back({p, c});
    for (const auto& [p, c] : xs) wx.push_back({p, c});
    std::vector<u128> yw, ow;
    if (detail::power_convolution_impl<u128>(ws, s, N, yw) && detail::convolve_sparse(yw, wx, N, ow))
        return CountTable(N, std::move(ow), prov);
    throw overflow_error("representation counts exceed 128 bits; big-integer mode required");
}

// n in [1, N] with r_{k,s}(n) = 0 (x, y_j >= 0).
inline std::vector<std::int64_t> zero_set(int k, int s, std::int64_t N) {
    const CountTable t = representation_counts(k, s, N);
    std::vector<std::int64_t> out;
    for (std::int64_t n = 1; n <= N; ++n)
        if (t.wide_at(n) == 0) out.push_back(n);
    return out;
}

struct NuResult {
    double value = 0.0;
    std::optional<__int128> exact;  // present when every weight value is an integer
};

// nu(n) = sum_{m <= n} w(m) rho(n - m).
inline NuResult nu_convolution(const Weight& w, const CountTable& rho, std::int64_t n) {
    if (rho.limit() < n) throw std::invalid_argument("rho table does not reach n");
    if (w.n() < n) throw std::invalid_argument("weight domain does not reach n");
    bool integral = true;
    __int128 exact = 0;
    detail::compensated_sum acc;
    for (const auto& t : w.terms()) {
        if (t.m > n) break;
        const u128 r = rho.wide_at(n - t.m);
        if (r == 0) continue;
        const double v = t.value.real();
        acc.add(v * static_cast<double>(r));
        if (integral && t.value.imag() == 0.0 && v == std::floor(v) && std::fabs(v) < 9e15) {
            __int128 term;
            if (__builtin_mul_overflow(static_cast<__int128>(v), static_cast<__int128>(r), &term) ||
                __builtin_add_overflow(exact, term, &exact))
                integral = false;
        } else {
            integral = false;
        }
    }
    NuResult res;
    res.value = acc.value();
    if (integral) res.exact = exact;
    return res;
}

}  // namespace partitio
