#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "arcs.hpp"
#include "counting.hpp"
#include "detail/numeric.hpp"
#include "detail/parallel.hpp"
#include "weights.hpp"

namespace partitio {

namespace detail {

inline std::uint64_t narrow_or_throw(u128 v, const char* what) {
    if (v > std::numeric_limits<std::uint64_t>::max()) throw overflow_error(std::string(what) + " exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

inline u128 sum_of_squares(const CountTable& t) {
    u128 s = 0;
    for (std::int64_t m = 0; m <= t.limit(); ++m) {
        const u128 v = t.wide_at(m);
        if (v == 0) continue;
        u128 sq;
        if (__builtin_mul_overflow(v, v, &sq) || __builtin_add_overflow(s, sq, &s)) throw overflow_error("moment exceeds 128 bits");
    }
    return s;
}

}  // namespace detail

// Number of (x, y) in A(P,R)^{2r} with x_1^k + ... + x_r^k = y_1^k + ... + y_r^k,
// i.e. the integral of |f|^{2r} over [0,1].
inline std::uint64_t moment_exact(int k, int r, std::int64_t P, std::int64_t R) {
    if (r < 1) throw std::invalid_argument("moment_exact requires r >= 1");
    const auto top = detail::ipow_checked(P, k);
    if (!top) throw overflow_error("P^k exceeds 64 bits");
    const SmoothSet set = P >= 2 ? smooth_set(P, std::min(R, P)) : SmoothSet{P, R, {1}};
    const CountTable rho = power_convolution(k, r, set, r * *top, false);
    return detail::narrow_or_throw(detail::sum_of_squares(rho), "moment");
}

// Solutions of x_1^2 - x_2^2 = sum_j (y_j^k - z_j^k) with 1 <= x_i <= sqrt(n),
// y, z in A(P,R)^r and P = floor(n^{1/k}).
inline std::uint64_t mean_value_N(int k, int r, std::int64_t n, std::int64_t R) {
    if (r < 1 || n < 1) throw std::invalid_argument("mean_value_N requires r, n >= 1");
    const auto P = static_cast<std::int64_t>(detail::iroot(static_cast<detail::u64>(n), k));
    const auto X = static_cast<std::int64_t>(detail::isqrt(static_cast<detail::u64>(n)));
    const SmoothSet set = P >= 2 ? smooth_set(P, std::min(R, P)) : SmoothSet{P, R, P >= 1 ? std::vector<std::int64_t>{1} : std::vector<std::int64_t>{}};
    const std::int64_t top = r * *detail::ipow_checked(P, k);
    const CountTable rho = power_convolution(k, r, set, std::max<std::int64_t>(top, 1), false);
    // D(d) for |d| < X^2: number of x pairs with x_1^2 - x_2^2 = d, stored at d + offset
    const std::int64_t span = X * X;
    std::vector<std::uint64_t> diff(2 * span + 1, 0);
    for (std::int64_t a = 1; a <= X; ++a)
        for (std::int64_t b = 1; b <= X; ++b) ++diff[a * a - b * b + span];
    std::vector<std::pair<std::int64_t, u128>> support;
    for (std::int64_t m = 0; m <= rho.limit(); ++m)
        if (const u128 v = rho.wide_at(m); v != 0) support.push_back({m, v});
    u128 total = 0;
    for (const auto& [m1, c1] : support)
        for (const auto& [m2, c2] : support) {
            const std::int64_t d = m1 - m2;
            if (d < -span || d > span) continue;
            const std::uint64_t x = diff[d + span];
            if (x == 0) continue;
            u128 term;
            if (__builtin_mul_overflow(c1, c2, &term) || __builtin_mul_overflow(term, static_cast<u128>(x), &term) ||
                __builtin_add_overflow(total, term, &total))
                throw overflow_error("mean value exceeds 128 bits");
        }
    return detail::narrow_or_throw(total, "mean value");
}

enum class Region { full, major, slice };

struct QuadratureResult {
    double value = 0.0;            // finer grid
    double coarse = 0.0;           // grid before doubling
    double relative_change = 0.0;  // |value - coarse| / |value|
    std::int64_t grid_points = 0;  // spacing 1/grid_points on the finer grid
    bool converged = false;
};

struct QuadratureConfig {
    Region region = Region::full;
    double Q = 1.0;
    std::int64_t grid_points = 1000;  // uniform-equivalent density on [0,1]
    double tolerance = 0.005;         // allowed relative change under grid doubling
    unsigned workers = 1;
};

namespace detail {

inline double pow_even(double abs2, int half_t) {
    double r = 1.0;
    for (int i = 0; i < half_t; ++i) r *= abs2;
    return r;
}

// Uniform trapezoid on [0,1] with N points (exact for trigonometric polynomials of degree < N).
inline double full_trapezoid(const Weight& w, int t, std::int64_t N, unsigned workers) {
    std::vector<std::int64_t> freq;
    std::vector<std::complex<double>> coef;
    for (const auto& term : w.terms()) {
        freq.push_back(term.m * w.phase_multiplier() % N);
        coef.push_back(term.value);
    }
    std::vector<std::complex<double>> table(N);
    for (std::int64_t j = 0; j < N; ++j) table[j] = e_ratio(j, N);
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::int64_t>(N, 256));
    std::vector<double> partial(chunks, 0.0);
    parallel_for(chunks, workers, [&](std::size_t c) {
        const std::int64_t lo = N * static_cast<std::int64_t>(c) / static_cast<std::int64_t>(chunks);
        const std::int64_t hi = N * static_cast<std::int64_t>(c + 1) / static_cast<std::int64_t>(chunks);
        compensated_sum acc;
        for (std::int64_t j = lo; j < hi; ++j) {
            std::complex<double> f = 0.0;
            for (std::size_t i = 0; i < freq.size(); ++i) f += coef[i] * table[mulmod(j, freq[i], N)];
            acc.add(pow_even(std::norm(f), t / 2));
        }
        partial[c] = acc.value();
    });
    compensated_sum total;
    for (double p : partial) total.add(p);
    return total.value() / static_cast<double>(N);
}

// Composite midpoint rule on the arcs of M(Q) with spacing close to h = 1/grid.
// f(alpha) near a/q is advanced point by point through phase rotations.
inline double major_arc_midpoint(const Weight& w, const Dissection& d, int t, double Q, std::int64_t grid, unsigned workers) {
    if (Q < 1.0) return 0.0;
    const std::size_t terms = w.terms().size();
    std::vector<std::int64_t> freq(terms);
    std::vector<std::complex<double>> coef(terms);
    for (std::size_t i = 0; i < terms; ++i) {
        freq[i] = w.terms()[i].m * w.phase_multiplier();
        coef[i] = w.terms()[i].value;
    }
    const double h_target = 1.0 / static_cast<double>(grid);
    const int half_t = t / 2;

    // Sums |f|^t over npts midpoints of [c + b0, c + b0 + npts h] with phases
    // prepared in (re, im) and per-point rotation (sr, si).
    auto integrate_run = [&](std::vector<double>& re, std::vector<double>& im, const std::vector<double>& sr,
                             const std::vector<double>& si, std::int64_t npts) {
        compensated_sum acc;
        for (std::int64_t j = 0; j < npts; ++j) {
            double fr = 0.0, fi = 0.0;
            double* pr = re.data();
            double* pi = im.data();
            const double* qr = sr.data();
            const double* qi = si.data();
#pragma omp simd reduction(+ : fr, fi)
            for (std::size_t i = 0; i < terms; ++i) {
                fr += pr[i];
                fi += pi[i];
                const double nr = pr[i] * qr[i] - pi[i] * qi[i];
                const double ni = pr[i] * qi[i] + pi[i] * qr[i];
                pr[i] = nr;
                pi[i] = ni;
            }
            acc.add(pow_even(fr * fr + fi * fi, half_t));
        }
        return acc.value();
    };

    // Arcs |q alpha - a| <= Qm/n for q <= min(Q, sqrt(n)/2); arcs a and q - a carry equal |f|.
    const double Qm = std::min(Q, d.half_sqrt_n());
    const auto qmax = static_cast<std::int64_t>(std::floor(Qm));
    std::vector<double> per_q(qmax + 1, 0.0);
    parallel_for(static_cast<std::size_t>(qmax), workers, [&](std::size_t idx) {
        const std::int64_t q = static_cast<std::int64_t>(idx) + 1;
        const double width = 2.0 * Qm / (static_cast<double>(d.n()) * q);
        const auto npts = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(width / h_target)));
        const double h = width / static_cast<double>(npts);
        const long double b0 = -0.5L * width + 0.5L * h;
        std::vector<std::complex<double>> start(terms), etab(q);
        std::vector<double> sr(terms), si(terms), re(terms), im(terms);
        std::vector<std::int64_t> res(terms);
        for (std::size_t i = 0; i < terms; ++i) {
            start[i] = coef[i] * e_of(b0 * freq[i]);
            const auto step = e_of(static_cast<long double>(h) * freq[i]);
            sr[i] = step.real();
            si[i] = step.imag();
            res[i] = freq[i] % q;
        }
        for (std::int64_t j = 0; j < q; ++j) etab[j] = e_ratio(j, q);
        compensated_sum acc;
        for (std::int64_t a = 0; 2 * a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            for (std::size_t i = 0; i < terms; ++i) {
                const auto v = start[i] * etab[mulmod(a, res[i], q)];
                re[i] = v.real();
                im[i] = v.imag();
            }
            const double s = integrate_run(re, im, sr, si, npts) * h;
            acc.add((2 * a == q || a == 0) ? s : 2.0 * s);
        }
        per_q[q] = acc.value();
    });
    compensated_sum total;
    for (double v : per_q) total.add(v);

    if (Q > d.half_sqrt_n()) {
        // Extreme minor pieces with sqrt(n)/2 < q <= Q.
        const auto qtop = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(Q)), d.farey_order());
        const std::int64_t qlo = d.small_q_limit() + 1;
        std::vector<double> per_piece_q(std::max<std::int64_t>(qtop - qlo + 1, 0), 0.0);
        parallel_for(per_piece_q.size(), workers, [&](std::size_t idx) {
            const std::int64_t q = qlo + static_cast<std::int64_t>(idx);
            std::vector<std::complex<double>> etab(q);
            for (std::int64_t j = 0; j < q; ++j) etab[j] = e_ratio(j, q);
            std::vector<double> sr(terms), si(terms), re(terms), im(terms);
            std::vector<std::int64_t> res(terms);
            for (std::size_t i = 0; i < terms; ++i) res[i] = freq[i] % q;
            compensated_sum acc;
            for (std::int64_t a = 1; a < q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                const auto piece = d.minor_piece(a, q);
                if (!piece) continue;
                const double width = piece->hi - piece->lo;
                const auto npts = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(width / h_target)));
                const double h = width / static_cast<double>(npts);
                const long double b0 = (static_cast<long double>(piece->lo) - static_cast<long double>(a) / q) + 0.5L * h;
                for (std::size_t i = 0; i < terms; ++i) {
                    const auto v = coef[i] * e_of(b0 * freq[i]) * etab[mulmod(a, res[i], q)];
                    re[i] = v.real();
                    im[i] = v.imag();
                    const auto step = e_of(static_cast<long double>(h) * freq[i]);
                    sr[i] = step.real();
                    si[i] = step.imag();
                }
                acc.add(integrate_run(re, im, sr, si, npts) * h);
            }
            per_piece_q[idx] = acc.value();
        });
        for (double v : per_piece_q) total.add(v);
    }
    return total.value();
}

inline double region_integral(const Weight& w, const Dissection& d, int t, const QuadratureConfig& cfg, std::int64_t grid) {
    switch (cfg.region) {
        case Region::full: return full_trapezoid(w, t, grid, cfg.workers);
        case Region::major: return major_arc_midpoint(w, d, t, cfg.Q, grid, cfg.workers);
        case Region::slice: {
            const double outer = major_arc_midpoint(w, d, t, cfg.Q, grid, cfg.workers);
            const double inner = cfg.Q / 4.0 >= 1.0 ? major_arc_midpoint(w, d, t, cfg.Q / 4.0, grid, cfg.workers) : 0.0;
            return outer - inner;
        }
    }
    return 0.0;
}

}  // namespace detail

// Integral of |W|^t over the region, with a grid-doubling check. On the full
// circle the grid is raised above the trigonometric degree (t/2) max m, where
// the trapezoid rule is exact.
inline QuadratureResult quadrature_moment(const Weight& w, int t, const QuadratureConfig& cfg) {
    if (t < 2 || t % 2 != 0) throw std::invalid_argument("quadrature_moment requires an even t >= 2");
    if (cfg.grid_points < 1000) throw std::invalid_argument("quadrature_moment requires grid_points >= 1000");
    if (cfg.region != Region::full && (cfg.Q < 1.0 || cfg.Q > 2.0 * std::sqrt(static_cast<double>(w.n())) + 1e-9))
        throw std::invalid_argument("Q must lie in [1, 2 sqrt(n)]");
    const Dissection d(std::max<std::int64_t>(w.n(), 2));
    std::int64_t grid = cfg.grid_points;
    if (cfg.region == Region::full) {
        std::int64_t top = 0;
        for (const auto& term : w.terms()) top = std::max(top, term.m * std::abs(w.phase_multiplier()));
        grid = std::max(grid, (t / 2) * top + 1);
    }
    QuadratureResult r;
    r.coarse = detail::region_integral(w, d, t, cfg, grid);
    r.grid_points = 2 * grid;
    r.value = detail::region_integral(w, d, t, cfg, r.grid_points);
    r.relative_change = r.value != 0.0 ? std::fabs(r.value - r.coarse) / std::fabs(r.value) : std::fabs(r.coarse);
    r.converged = r.relative_change < cfg.tolerance;
    return r;
}

}  // namespace partitio
