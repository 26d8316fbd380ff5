#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace partitio {

struct SieveTables {
    std::int64_t limit = 0;
    std::vector<std::uint32_t> least_prime_factor;  // index m; 0 for m < 2
    std::vector<std::int8_t> mobius;                // index m; mobius[0] unused
    std::vector<std::uint32_t> primes;

    bool is_prime(std::int64_t m) const { return m >= 2 && least_prime_factor[m] == m; }
};

inline constexpr std::size_t default_sieve_budget_bytes = std::size_t{1} << 30;

// Linear sieve producing least prime factors, the Mobius function and the primes.
inline SieveTables sieve_tables(std::int64_t N, std::size_t budget_bytes = default_sieve_budget_bytes) {
    if (N < 2) throw std::invalid_argument("sieve_tables requires N >= 2");
    if (static_cast<long double>(N + 1) * 5.0L > static_cast<long double>(budget_bytes) || N > 0xFFFFFFFFLL)
        throw capacity_error("sieve limit " + std::to_string(N) + " exceeds the memory budget");
    SieveTables t;
    t.limit = N;
    t.least_prime_factor.assign(N + 1, 0);
    t.mobius.assign(N + 1, 0);
    t.mobius[1] = 1;
    t.primes.reserve(static_cast<std::size_t>(1.3 * N / std::log(static_cast<double>(N) + 2.0)) + 16);
    for (std::int64_t i = 2; i <= N; ++i) {
        if (t.least_prime_factor[i] == 0) {
            t.least_prime_factor[i] = static_cast<std::uint32_t>(i);
            t.mobius[i] = -1;
            t.primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : t.primes) {
            const std::int64_t m = i * p;
            if (p > t.least_prime_factor[i] || m > N) break;
            t.least_prime_factor[m] = p;
            t.mobius[m] = (p == t.least_prime_factor[i]) ? 0 : static_cast<std::int8_t>(-t.mobius[i]);
        }
    }
    return t;
}

struct SmoothSet {
    std::int64_t P = 0;
    std::int64_t R = 0;
    std::vector<std::int64_t> members;
};

// R-smooth integers in [1, P]; 1 is included.
inline SmoothSet smooth_set(std::int64_t P, std::int64_t R, const SieveTables& sieve) {
    if (R < 2 || R > P) throw std::invalid_argument("smooth_set requires 2 <= R <= P");
    if (sieve.limit < P) throw std::invalid_argument("sieve does not reach P");
    SmoothSet s{P, R, {}};
    s.members.push_back(1);
    for (std::int64_t m = 2; m <= P; ++m) {
        std::int64_t x = m;
        std::uint32_t largest = 0;
        while (x > 1) {
            largest = sieve.least_prime_factor[x];
            x /= largest;
        }
        if (largest <= R) s.members.push_back(m);
    }
    return s;
}

inline SmoothSet smooth_set(std::int64_t P, std::int64_t R) {
    if (R < 2 || R > P) throw std::invalid_argument("smooth_set requires 2 <= R <= P");
    return smooth_set(P, R, sieve_tables(P));
}

// Euler's totient on [0, N].
inline std::vector<std::int64_t> totients(std::int64_t N) {
    std::vector<std::int64_t> phi(N + 1);
    for (std::int64_t i = 0; i <= N; ++i) phi[i] = i;
    for (std::int64_t p = 2; p <= N; ++p) {
        if (phi[p] != p) continue;
        for (std::int64_t m = p; m <= N; m += p) phi[m] -= phi[m] / p;
    }
    return phi;
}

// Concrete smoothness bound ceil(P^eta), floored at 2 and capped at P.
inline std::int64_t smooth_bound_from_eta(std::int64_t P, double eta_exponent) {
    if (!(eta_exponent > 0.0)) throw std::invalid_argument("eta must be positive");
    auto R = static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(P), eta_exponent) - 1e-9));
    if (R < 2) R = 2;
    if (R > P && P >= 2) R = P;
    return R;
}

}  // namespace partitio
