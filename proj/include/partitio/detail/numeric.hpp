#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>

namespace partitio::detail {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Fractional part of x in [0,1), computed in extended precision.
inline long double frac(long double x) {
    long double r = x - std::floor(x);
    return r >= 1.0L ? 0.0L : r;
}

// e(x) = exp(2 pi i x), reducing the argument mod 1 first.
inline std::complex<double> e_of(long double x) {
    const double r = static_cast<double>(frac(x));
    return {std::cos(two_pi * r), std::sin(two_pi * r)};
}

// e(p/q) evaluated exactly on the residue p mod q.
inline std::complex<double> e_ratio(i64 p, i64 q) {
    i64 r = p % q;
    if (r < 0) r += q;
    const double t = two_pi * static_cast<double>(r) / static_cast<double>(q);
    return {std::cos(t), std::sin(t)};
}

// Floor of the k-th root of n, exact for all 64-bit n.
inline u64 iroot(u64 n, int k) {
    if (k == 1 || n < 2) return n;
    u64 x = static_cast<u64>(std::pow(static_cast<long double>(n), 1.0L / k));
    auto pow_le = [&](u64 b) {
        unsigned __int128 p = 1;
        for (int i = 0; i < k; ++i) {
            p *= b;
            if (p > n) return false;
        }
        return true;
    };
    while (x > 0 && !pow_le(x)) --x;
    while (pow_le(x + 1)) ++x;
    return x;
}

inline u64 isqrt(u64 n) { return iroot(n, 2); }

// b^k if it fits in 63 bits.
inline std::optional<i64> ipow_checked(i64 b, int k) {
    __int128 p = 1;
    for (int i = 0; i < k; ++i) {
        p *= b;
        if (p > std::numeric_limits<i64>::max() || p < std::numeric_limits<i64>::min()) return std::nullopt;
    }
    return static_cast<i64>(p);
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<__int128>(a) * b) % m);
}

inline i64 powmod(i64 b, i64 e, i64 m) {
    if (m == 1) return 0;
    b %= m;
    if (b < 0) b += m;
    i64 r = 1;
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

// Inverse of a mod m (gcd(a,m) = 1 assumed), in [0, m).
inline i64 modinv(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
    while (a1 != 0) {
        i64 q = g / a1;
        i64 t = g - q * a1;
        g = a1;
        a1 = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    x %= m;
    return x < 0 ? x + m : x;
}

// Neumaier compensated accumulator.
class compensated_sum {
  public:
    void add(double v) {
        const double t = s_ + v;
        if (std::fabs(s_) >= std::fabs(v))
            c_ += (s_ - t) + v;
        else
            c_ += (v - t) + s_;
        s_ = t;
    }
    double value() const { return s_ + c_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

class compensated_complex_sum {
  public:
    void add(std::complex<double> v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

  private:
    compensated_sum re_, im_;
};

}  // namespace partitio::detail
