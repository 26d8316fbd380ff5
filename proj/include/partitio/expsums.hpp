#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "arcs.hpp"
#include "detail/numeric.hpp"
#include "detail/parallel.hpp"
#include "weights.hpp"

namespace partitio {

// W(j alpha) = sum_m w(m) e(j alpha m), each phase reduced mod 1 on its own.
inline std::complex<double> exp_sum(const Weight& w, double alpha, int j = 1) {
    const long double beta = static_cast<long double>(alpha) * j * w.phase_multiplier();
    detail::compensated_complex_sum acc;
    for (const auto& t : w.terms()) acc.add(t.value * detail::e_of(beta * t.m));
    return acc.value();
}

// W(a/q) evaluated by grouping the support into residue classes mod q.
inline std::complex<double> exp_sum_rational(const Weight& w, std::int64_t a, std::int64_t q) {
    if (q < 1) throw std::invalid_argument("q must be positive");
    if (q > w.n()) throw std::invalid_argument("exp_sum_rational requires q <= n");
    if (std::gcd(a, q) != 1) throw std::invalid_argument("exp_sum_rational requires gcd(a, q) = 1");
    const std::int64_t mult = a * w.phase_multiplier();
    std::vector<detail::compensated_complex_sum> classes(q);
    for (const auto& t : w.terms()) classes[t.m % q].add(t.value);
    detail::compensated_complex_sum acc;
    for (std::int64_t r = 0; r < q; ++r) {
        const auto c = classes[r].value();
        if (c != std::complex<double>{}) acc.add(c * detail::e_ratio(detail::mulmod(mult % q + q, r, q), q));
    }
    return acc.value();
}

struct ProfilePoint {
    double Q = 0.0;
    double sup = 0.0;
    std::size_t samples = 0;
};

struct SamplingConfig {
    std::uint64_t seed = 20240601;
    unsigned workers = 1;
    std::size_t attempts_per_sample = 200;
};

namespace detail {

inline std::uint64_t slice_seed(std::uint64_t seed, std::size_t slice) { return splitmix64(seed + 0x632be59bd9b4e019ULL * (slice + 1)); }

inline std::vector<double> abs_values(const Weight& w, const std::vector<double>& alphas, unsigned workers) {
    std::vector<double> out(alphas.size());
    parallel_for(alphas.size(), workers, [&](std::size_t i) { out[i] = std::abs(exp_sum(w, alphas[i])); });
    return out;
}

}  // namespace detail

// Sampled sup of |W| over each slice N(Q).
inline std::vector<ProfilePoint> sup_profile(const Weight& w, const std::vector<double>& Q_list, std::size_t samples_per_slice,
                                             const SamplingConfig& cfg = {}) {
    const Dissection d(w.n());
    std::vector<ProfilePoint> out;
    for (std::size_t i = 0; i < Q_list.size(); ++i) {
        if (i > 0 && Q_list[i] < Q_list[i - 1]) throw std::invalid_argument("Q_list must be ascending");
        const SliceSampler sampler(d, Q_list[i], detail::slice_seed(cfg.seed, i));
        const auto alphas = sampler.draw(samples_per_slice, samples_per_slice * cfg.attempts_per_sample);
        const auto values = detail::abs_values(w, alphas, cfg.workers);
        ProfilePoint p{Q_list[i], 0.0, alphas.size()};
        for (double v : values) p.sup = std::max(p.sup, v);
        out.push_back(p);
    }
    return out;
}

struct DecayFit {
    double phi_hat = 0.0;
    double c_hat = 0.0;
    double residual = 0.0;  // RMS in log space
};

// Least squares for log(sup/norm) = log c - phi log Q.
inline DecayFit fit_decay(const std::vector<ProfilePoint>& profile, double norm) {
    if (profile.size() < 2) throw std::invalid_argument("fit_decay needs at least two profile points");
    if (!(norm > 0.0)) throw std::invalid_argument("fit_decay needs a positive norm");
    std::vector<double> x, y;
    for (const auto& p : profile) {
        if (!(p.sup > 0.0) || !(p.Q > 0.0)) throw std::invalid_argument("fit_decay needs positive Q and sup");
        x.push_back(std::log(p.Q));
        y.push_back(std::log(p.sup / norm));
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 1e-300) throw std::invalid_argument("fit_decay is degenerate: all Q equal");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        ss += r * r;
    }
    return {-slope, std::exp(intercept), std::sqrt(ss / n)};
}

struct SliceStats {
    std::size_t samples = 0;
    std::size_t in_slice = 0;
    double fraction_in_slice = 0.0;
    double sup_in_slice = 0.0;
    double sup_overall = 0.0;
};

// Sampled frequency of ||W||/T < |W(alpha)| <= 2||W||/T over N(Q).
inline SliceStats size_slices(const Weight& w, double Q, double T, std::size_t samples, const SamplingConfig& cfg = {}) {
    if (!(T >= 2.0)) throw std::invalid_argument("size_slices requires T >= 2");
    if (!(w.norm() > 0.0)) throw std::invalid_argument("size_slices: zero-norm weight");
    const Dissection d(w.n());
    const SliceSampler sampler(d, Q, cfg.seed);
    const auto alphas = sampler.draw(samples, samples * cfg.attempts_per_sample);
    const auto values = detail::abs_values(w, alphas, cfg.workers);
    SliceStats st;
    st.samples = alphas.size();
    const double lo = w.norm() / T, hi = 2.0 * w.norm() / T;
    for (double v : values) {
        st.sup_overall = std::max(st.sup_overall, v);
        if (v > lo && v <= hi) {
            ++st.in_slice;
            st.sup_in_slice = std::max(st.sup_in_slice, v);
        }
    }
    st.fraction_in_slice = st.samples ? static_cast<double>(st.in_slice) / st.samples : 0.0;
    return st;
}

}  // namespace partitio
