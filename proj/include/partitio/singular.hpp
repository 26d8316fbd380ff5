#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "detail/numeric.hpp"
#include "detail/parallel.hpp"
#include "errors.hpp"

namespace partitio {

namespace detail {

// Number of x in [1, q] with x^k = r mod q, for each r.
inline std::vector<std::int64_t> power_residue_counts(std::int64_t q, int k) {
    std::vector<std::int64_t> counts(q, 0);
    for (std::int64_t x = 1; x <= q; ++x) ++counts[powmod(x % q, k, q)];
    return counts;
}

// S(q, a) for every a in [0, q).
inline std::vector<std::complex<double>> gauss_sums_all(std::int64_t q, int k) {
    const auto counts = power_residue_counts(q, k);
    std::vector<std::complex<double>> table(q);
    for (std::int64_t j = 0; j < q; ++j) table[j] = e_ratio(j, q);
    std::vector<std::complex<double>> out(q);
    for (std::int64_t a = 0; a < q; ++a) {
        compensated_complex_sum acc;
        for (std::int64_t r = 0; r < q; ++r)
            if (counts[r] != 0) acc.add(static_cast<double>(counts[r]) * table[mulmod(a, r, q)]);
        out[a] = acc.value();
    }
    return out;
}

}  // namespace detail

inline std::complex<double> gauss_sum(std::int64_t q, std::int64_t a, int k) {
    if (q < 1) throw std::invalid_argument("gauss_sum requires q >= 1");
    if (k < 1) throw std::invalid_argument("gauss_sum requires k >= 1");
    if (std::gcd(a, q) != 1) throw std::invalid_argument("gauss_sum requires gcd(a, q) = 1");
    const std::int64_t ar = ((a % q) + q) % q;
    detail::compensated_complex_sum acc;
    for (std::int64_t x = 1; x <= q; ++x) acc.add(detail::e_ratio(detail::mulmod(ar, detail::powmod(x % q, k, q), q), q));
    return acc.value();
}

// Real parts of q^{-s} A_m(q) for every m in ms, for one q.
inline std::vector<double> singular_terms_for_q(const std::vector<std::int64_t>& ms, std::int64_t q, int s, int k) {
    const auto S = detail::gauss_sums_all(q, k);
    std::vector<std::complex<double>> table(q);
    for (std::int64_t j = 0; j < q; ++j) table[j] = detail::e_ratio(j, q);
    // a and q - a give conjugate summands, so only a <= q/2 is visited.
    std::vector<std::pair<std::int64_t, std::complex<double>>> powered;
    const double scale = std::pow(static_cast<double>(q), -s);
    const double mult = q > 2 ? 2.0 : 1.0;
    for (std::int64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1 || (q > 2 && 2 * a > q)) continue;
        powered.push_back({a % q, mult * scale * std::pow(S[a % q], s)});
    }
    std::vector<double> out(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const std::int64_t mr = ((ms[i] % q) + q) % q;
        detail::compensated_sum acc;
        for (const auto& [a, v] : powered) {
            const auto ph = std::conj(table[detail::mulmod(a, mr, q)]);
            acc.add((v * ph).real());
        }
        out[i] = acc.value();
    }
    return out;
}

inline double a_coeff(std::int64_t m, std::int64_t q, int s, int k) {
    if (q < 1) throw std::invalid_argument("a_coeff requires q >= 1");
    return singular_terms_for_q({m}, q, s, k)[0] * std::pow(static_cast<double>(q), s);
}

// Imaginary part of A_m(q) summed over every reduced a, as a realness diagnostic.
inline double a_coeff_imag(std::int64_t m, std::int64_t q, int s, int k) {
    const auto S = detail::gauss_sums_all(q, k);
    detail::compensated_complex_sum acc;
    const std::int64_t mr = ((m % q) + q) % q;
    for (std::int64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        acc.add(std::pow(S[a % q], s) * std::conj(detail::e_ratio(detail::mulmod(a % q, mr, q), q)));
    }
    return acc.value().imag();
}

// t[i][q] = q^{-s} A_{ms[i]}(q) for q in [1, q_max]; index 0 unused.
inline std::vector<std::vector<double>> singular_terms(const std::vector<std::int64_t>& ms, int s, int k, std::int64_t q_max,
                                                       unsigned workers = 1) {
    if (q_max < 1) throw std::invalid_argument("singular_terms requires q_max >= 1");
    std::vector<std::vector<double>> by_q(q_max + 1);
    detail::parallel_for(static_cast<std::size_t>(q_max), workers, [&](std::size_t idx) {
        const auto q = static_cast<std::int64_t>(idx) + 1;
        by_q[q] = singular_terms_for_q(ms, q, s, k);
    });
    std::vector<std::vector<double>> out(ms.size(), std::vector<double>(q_max + 1, 0.0));
    for (std::int64_t q = 1; q <= q_max; ++q)
        for (std::size_t i = 0; i < ms.size(); ++i) out[i][q] = by_q[q][i];
    return out;
}

struct SingularSeriesResult {
    std::int64_t m = 0;
    int s = 0;
    int k = 0;
    std::int64_t Q_cut = 0;
    double partial = 0.0;     // sum over q <= Q_cut
    double last_block = 0.0;  // sum over Q_cut/2 < q <= Q_cut
};

// Truncation of a term list at Q_cut.
inline SingularSeriesResult series_from_terms(const std::vector<double>& terms, std::int64_t m, int s, int k, std::int64_t Q_cut) {
    if (Q_cut < 1 || Q_cut >= static_cast<std::int64_t>(terms.size())) throw std::invalid_argument("Q_cut outside the computed term range");
    SingularSeriesResult r{m, s, k, Q_cut, 0.0, 0.0};
    detail::compensated_sum all, block;
    for (std::int64_t q = 1; q <= Q_cut; ++q) {
        all.add(terms[q]);
        if (2 * q > Q_cut) block.add(terms[q]);
    }
    r.partial = all.value();
    r.last_block = block.value();
    return r;
}

inline SingularSeriesResult singular_series(std::int64_t m, int s, int k, std::int64_t Q_cut = 1000) {
    if (Q_cut < 1) throw std::invalid_argument("singular_series requires Q_cut >= 1");
    if (s < 1 || k < 1) throw std::invalid_argument("singular_series requires s, k >= 1");
    const auto terms = singular_terms({m}, s, k, Q_cut);
    return series_from_terms(terms[0], m, s, k, Q_cut);
}

struct SingularIntegral {
    double exact = 0.0;
    double asymptotic = 0.0;
};

// sum over u_1 + ... + u_s = m, u_j >= 1, of (u_1 ... u_s)^{1/k - 1}, against
// Gamma(1/k)^s / Gamma(s/k) m^{s/k - 1}.
inline SingularIntegral singular_integral(std::int64_t m, int s, int k) {
    if (s < 1 || k < 1) throw std::invalid_argument("singular_integral requires s, k >= 1");
    if (s > 6 || m > 10000) throw capacity_error("singular_integral exact path limited to s <= 6 and m <= 10^4");
    SingularIntegral out;
    const double a = 1.0 / k - 1.0;
    if (m >= s) {
        std::vector<double> base(m + 1, 0.0);
        for (std::int64_t u = 1; u <= m; ++u) base[u] = std::pow(static_cast<double>(u), a);
        std::vector<double> cur = base;  // compositions into j parts
        std::vector<double> next(m + 1, 0.0);
        for (int j = 2; j <= s; ++j) {
            const bool last = j == s;
            std::fill(next.begin(), next.end(), 0.0);
            for (std::int64_t t = last ? m : j; t <= m; ++t) {
                detail::compensated_sum acc;
                for (std::int64_t u = 1; u <= t - (j - 1); ++u) acc.add(base[u] * cur[t - u]);
                next[t] = acc.value();
            }
            cur.swap(next);
        }
        out.exact = cur[m];
    }
    out.asymptotic = m > 0 ? std::exp(s * std::lgamma(1.0 / k) - std::lgamma(static_cast<double>(s) / k) +
                                      (static_cast<double>(s) / k - 1.0) * std::log(static_cast<double>(m)))
                           : 0.0;
    return out;
}

// {x^k mod modulus : 0 <= x <= limit}.
inline std::set<std::int64_t> power_residues(int k, std::int64_t modulus, std::int64_t limit) {
    if (modulus < 1 || k < 1 || limit < 0) throw std::invalid_argument("power_residues requires positive modulus and k");
    std::set<std::int64_t> out;
    for (std::int64_t x = 0; x <= limit; ++x) out.insert(detail::powmod(x % modulus, k, modulus));
    return out;
}

struct LocalWitness {
    std::int64_t x0 = 0;
    int j = 0;
};

struct LocalSolubility {
    std::int64_t modulus = 0;  // 4k
    std::set<std::int64_t> R_set;
    bool n_minus_square_hits_R = false;
    std::optional<LocalWitness> witness;
};

// Classes j mod 4k with 1 <= j <= s, and the least x0 in [1, 4k] with n - x0^2 in them.
inline LocalSolubility local_solubility(int k, int s, std::int64_t n) {
    if (k < 1 || s < 1) throw std::invalid_argument("local_solubility requires k, s >= 1");
    LocalSolubility out;
    out.modulus = 4LL * k;
    const bool power_of_two = (k & (k - 1)) == 0;
    if (!power_of_two) {
        for (std::int64_t j = 0; j < out.modulus; ++j) out.R_set.insert(j);
    } else {
        for (int j = 1; j <= s; ++j) out.R_set.insert(j % out.modulus);
    }
    for (std::int64_t x0 = 1; x0 <= out.modulus && !out.witness; ++x0) {
        const std::int64_t c = (((n - x0 * x0) % out.modulus) + out.modulus) % out.modulus;
        if (!out.R_set.count(c)) continue;
        for (int j = 1; j <= std::max<std::int64_t>(s, out.modulus); ++j)
            if (j % out.modulus == c) {
                out.witness = LocalWitness{x0, j};
                break;
            }
    }
    out.n_minus_square_hits_R = out.witness.has_value();
    return out;
}

}  // namespace partitio
