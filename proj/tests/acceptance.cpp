// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "partitio/partitio.hpp"

using namespace partitio;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

// Bisection for z - log z = rhs on z > 1, kept apart from the library's solvers.
double bisect_z(double rhs) {
    double lo = 1.0, hi = rhs + std::fabs(std::log(rhs)) + 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid - std::log(mid) < rhs ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double bisect(const std::function<double(double)>& g, double lo, double hi) {
    const bool rising = g(hi) > g(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((g(mid) < 0.0) == rising ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Outcome pruning_table_criterion() {
    Outcome o;
    const auto rows = pruning_table();
    double worst = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const auto& printed = printed_pruning_table[i];
        const double rhs = 2.0 - (0.5 + std::numbers::ln2) - row.phi - std::log(row.phi);
        const double z = bisect_z(rhs);
        const double c2 = 0.5 * z + 0.5 + std::numbers::ln2 + 0.5 * row.phi;
        const double c1v = 1.0 + std::numbers::ln2 - 0.5 * row.phi - std::log(row.phi);
        // printed z* is solved from the displayed right-hand side
        const double z_chain = bisect_z(std::stod(printed.rhs));
        const double c2_chain = 0.5 * z_chain + 0.5 + std::numbers::ln2 + 0.5 * row.phi;
        for (double d : {row.rhs - rhs, row.z_exact - z, row.c2_exact - c2, row.c1 - c1v, row.z_star - z_chain, row.c2_star - c2_chain,
                         row.z_star - z, row.c2_star - c2})
            worst = std::max(worst, std::fabs(d));
        const bool match = fixed_digits(row.rhs, pruning_rhs_digits, Rounding::up) == printed.rhs &&
                           fixed_digits(row.z_star, pruning_z_digits, Rounding::up) == printed.z_star &&
                           fixed_digits(row.c2_star, pruning_c2_digits, Rounding::up) == printed.c2_star &&
                           fixed_digits(row.c1, pruning_c1_digits, Rounding::up) == printed.c1;
        o.require(match, std::string("row ") + printed.label + " differs after rounding up");
    }
    o.require(worst <= 5e-7, "engine vs bisection " + num(worst));
    o.note("max |engine - bisection| " + num(worst, 3));
    return o;
}

Outcome headline_constants_criterion() {
    Outcome o;
    const ConstantsReport c = constants_report();
    o.require(std::fabs(c.c0 - 2.136294) <= 1e-6, "c0 " + num(c.c0, 10));
    const double c_oracle = bisect([](double x) { return 2.0 * x - 2.0 - std::log(5.0 * x - 1.0); }, 1.5, 3.0);
    o.require(std::fabs(c.c - 2.134693) <= 1e-6 && std::fabs(c.c - c_oracle) <= 1e-9, "c " + num(c.c, 10));
    const double theta = bisect([](double x) { return x - std::log(x) - 11.0 / 8.0 - std::log(4.0); }, 1.0, 10.0);
    const double ct_oracle = 0.5 * theta + 9.0 / 16.0 + std::numbers::ln2;
    o.require(std::fabs(c.c_tilde - 3.3532) <= 1e-4 && std::fabs(c.c_tilde - ct_oracle) <= 1e-9, "c~ " + num(c.c_tilde, 10));
    o.require(c.phi_star > 0.4046 && c.phi_star < 0.4047, "phi* " + num(c.phi_star, 10));
    o.require(std::fabs(c.phi_star + std::log(c.phi_star) + 0.5) <= 1e-12, "phi* residual");
    o.require(c.sigma_star > 2.3954, "sigma* " + num(c.sigma_star, 10));
    o.require(std::fabs(2.0 * c.sigma_star - (c.phi_star + 3.0 + 2.0 * std::numbers::ln2)) <= 1e-12, "2 sigma* identity");
    const double diff = c2_star(0.125).c2 - c.c_tilde;
    o.require(std::fabs(diff) <= 1e-10, "c2*(1/8) - c~ = " + num(diff, 3));
    o.note("c=" + num(c.c, 8) + " c~=" + num(c.c_tilde, 8) + " phi*=" + num(c.phi_star, 8));
    return o;
}

Outcome thm14_criterion() {
    Outcome o;
    for (const auto& c : verify_thm14_table()) {
        o.require(c.delta_star_matches, "k=" + std::to_string(c.row.k) + " delta* " + c.delta_star_rounded + " vs " + c.row.delta_star);
        o.require(c.delta_below_star, "k=" + std::to_string(c.row.k) + " Delta_{s+t} > delta*");
    }
    return o;
}

Outcome enumeration_criterion() {
    Outcome o;
    const auto zs = zero_set(4, 6, 200);
    o.require(zs == std::vector<std::int64_t>{47, 62, 63, 77, 78, 79, 143, 158, 159}, "zero set differs");
    const std::int64_t N = 16LL * 16 * 16 * 15;
    const CountTable r = representation_counts(4, 6, std::max<std::int64_t>(N, 16 * 2000));
    o.require(r.at(15) == 1, "r(15)=" + std::to_string(r.at(15)));
    o.require(r.at(16 * 47) == 0, "r(16*47)=" + std::to_string(r.at(16 * 47)));
    int bad = 0;
    for (std::int64_t n = 1; n <= 2000; ++n)
        if (r.wide_at(16 * n) != r.wide_at(n)) ++bad;
    o.require(bad == 0, std::to_string(bad) + " n with r(16n) != r(n)");
    for (std::int64_t l = 0, v = 15; l <= 3; ++l, v *= 16) o.require(r.at(v) == 1, "r(16^" + std::to_string(l) + "*15) != 1");
    return o;
}

std::uint64_t brute_cubes(std::int64_t P) {
    std::uint64_t count = 0;
    for (std::int64_t a = 1; a <= P; ++a)
        for (std::int64_t b = 1; b <= P; ++b)
            for (std::int64_t c = 1; c <= P; ++c)
                for (std::int64_t d = 1; d <= P; ++d)
                    if (a * a * a + b * b * b == c * c * c + d * d * d) ++count;
    return count;
}

Outcome oracle_criterion() {
    Outcome o;
    for (std::int64_t P : {10, 12}) {
        const auto exact = moment_exact(3, 2, P, P);
        const auto brute = brute_cubes(P);
        o.require(exact == brute, "P=" + std::to_string(P) + ": " + std::to_string(exact) + " vs " + std::to_string(brute));
    }
    o.require(moment_exact(3, 2, 10, 10) == 190, "moment at P=10 is not 190");
    double worst = 0.0;
    for (std::int64_t P : {10, 20, 30})
        for (int t : {2, 4}) {
            WeightParams wp;
            wp.k = 3;
            wp.P = P;
            wp.R = P;
            const Weight w = make_weight(WeightKind::smooth_kth_powers, P * P * P, wp);
            QuadratureConfig qc;
            qc.region = Region::full;
            const QuadratureResult q = quadrature_moment(w, t, qc);
            const double exact = static_cast<double>(moment_exact(3, t / 2, P, P));
            const double rel = std::fabs(q.value - exact) / exact;
            worst = std::max(worst, rel);
            o.require(rel <= 1e-3 && q.converged, "P=" + std::to_string(P) + " t=" + std::to_string(t) + " rel " + num(rel, 3));
        }
    o.note("max relative error " + num(worst, 3));
    return o;
}

Outcome e_machinery_criterion() {
    Outcome o;
    for (int k = 5; k <= 12; ++k) {
        const KParams p = k_params(k);
        const double E = e_closed(p.sigma_k, p.phi_k, p.zeta_k).E;
        o.require(std::fabs(E - 1.0) <= 1e-9, "E(sigma_k) at k=" + std::to_string(k) + " is " + num(E, 12));
    }
    const KParams p = k_params(8);
    double worst = 0.0;
    int sign_failures = 0;
    for (int i = 0; i < 20; ++i) {
        const double phi = p.phi_k * (i + 0.5) / 20.0;
        const double top = c1(phi);
        for (int j = 0; j < 20; ++j) {
            const double sigma = p.sigma_k + (top - p.sigma_k) * (j + 0.5) / 20.0;
            const double closed = e_closed(sigma, phi, p.zeta_k).E;
            const double oracle = e_oracle(sigma, phi, p.zeta_k, 1e-4);
            worst = std::max(worst, std::fabs(closed - oracle));
            const double hs = 1e-6 * sigma, hp = 1e-6 * phi;
            const double ds = e_closed(sigma + hs, phi, p.zeta_k).E - e_closed(sigma - hs, phi, p.zeta_k).E;
            const double dp = e_closed(sigma, phi + hp, p.zeta_k).E - e_closed(sigma, phi - hp, p.zeta_k).E;
            if (!(ds < 0.0) || !(dp < 0.0)) ++sign_failures;
        }
    }
    o.require(worst <= 1e-6, "closed vs oracle " + num(worst, 3));
    o.require(sign_failures == 0, std::to_string(sign_failures) + " grid points with a nonnegative difference");
    for (int k = 5; k <= 12; ++k)
        for (double phi : {1.0 / 16, 1.0 / 8, 1.0 / 4, 3.0 / 8}) {
            const double F = f_closed(c1(phi), phi, k_params(k).zeta_k);
            o.require(F < 1.0, "F(c1(" + num(phi) + ")) = " + num(F, 8) + " at k=" + std::to_string(k));
        }
    o.note("max |closed - oracle| " + num(worst, 3));
    return o;
}

Outcome singular_criterion() {
    Outcome o;
    const detail::counter_rng rng(7);
    std::vector<std::int64_t> ms;
    for (std::uint64_t i = 0; i < 100; ++i) ms.push_back(1 + static_cast<std::int64_t>(rng.uniform(i) * 10000.0));
    for (auto [k, s] : std::vector<std::pair<int, int>>{{3, 5}, {4, 7}}) {
        const auto terms = singular_terms(ms, s, k, 1024);
        int negative = 0, rising = 0;
        double lowest = 1e300;
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const auto full = series_from_terms(terms[i], ms[i], s, k, 1000);
            lowest = std::min(lowest, full.partial);
            if (full.partial < -1e-6) ++negative;
            double prev = std::numeric_limits<double>::infinity();
            for (std::int64_t Q = 64; Q <= 1024; Q *= 2) {
                const double b = std::fabs(series_from_terms(terms[i], ms[i], s, k, Q).last_block);
                if (b > prev) {
                    ++rising;
                    break;
                }
                prev = b;
            }
        }
        const std::string tag = "(k,s)=(" + std::to_string(k) + "," + std::to_string(s) + ")";
        o.require(negative == 0, tag + ": " + std::to_string(negative) + " negative partials");
        o.require(rising == 0, tag + ": " + std::to_string(rising) + "/100 m with a growing dyadic block");
        o.note(tag + " min partial " + num(lowest, 4));
    }
    return o;
}

Outcome asymptotic_criterion() {
    Outcome o;
    // (a) squares at n = 10^6
    {
        const std::int64_t n = 1000000;
        const Weight w = make_weight(WeightKind::squares, n);
        std::vector<double> Qs;
        for (double Q = 4.0; Q <= 2.0 * std::sqrt(static_cast<double>(n)); Q *= 2.0) Qs.push_back(Q);
        const auto profile = sup_profile(w, Qs, 200);
        const DecayFit fit = fit_decay(profile, w.norm());
        o.require(fit.phi_hat >= 0.4 && fit.phi_hat <= 0.6, "squares phi_hat " + num(fit.phi_hat, 4));
        o.note("(a) phi_hat " + num(fit.phi_hat, 4));
    }
    // (b) eighth moment of a smooth cubic Weyl sum over M(Q)
    {
        const std::int64_t P = 500, n = P * P * P;
        WeightParams wp;
        wp.k = 3;
        wp.P = P;
        wp.R = smooth_bound_from_eta(P, 0.3);
        const Weight f = make_weight(WeightKind::smooth_kth_powers, n, wp);
        std::vector<ProfilePoint> pts;
        bool converged = true;
        const double lo = std::sqrt(static_cast<double>(P)), hi = std::pow(static_cast<double>(P), 1.5);
        for (double Q = lo; Q <= hi; Q *= 2.0) {
            QuadratureConfig qc;
            qc.region = Region::major;
            qc.Q = Q;
            qc.grid_points = 4 * n;
            const QuadratureResult r = quadrature_moment(f, 8, qc);
            converged = converged && r.converged;
            pts.push_back({Q, r.value, 0});
        }
        // slope of log integral against log Q
        const DecayFit fit = fit_decay(pts, 1.0);
        const double slope = -fit.phi_hat;
        const double bound = 2.0 * (3.0 * eta(8.0 / 3.0)) / 3.0 + 0.5;
        o.require(converged, "grid doubling check failed");
        o.require(slope <= bound, "slope " + num(slope, 4) + " above " + num(bound, 4));
        o.note("(b) slope " + num(slope, 4) + " <= " + num(bound, 4));
    }
    // (c) c2*(1/kappa) against (log k + log log k)/2 + 1 + zeta*/2 at kappa = 10^8
    {
        const double kappa = 1e8, L = std::log(kappa), LL = std::log(L);
        const double diff = c2_star(1.0 / kappa).c2 - (0.5 * (L + LL) + 1.0 + 0.5 * zeta_star);
        o.require(diff <= LL / L, "difference " + num(diff, 4) + " above loglog/log " + num(LL / L, 4));
        o.note("(c) difference " + num(diff, 4) + ", error scale " + num(LL / L, 4));
    }
    return o;
}

Outcome mod16_criterion() {
    Outcome o;
    o.require(power_residues(2, 16, 1000) == std::set<std::int64_t>{0, 1, 4, 9}, "squares mod 16");
    o.require(power_residues(4, 16, 1000) == std::set<std::int64_t>{0, 1}, "fourth powers mod 16");
    std::set<std::int64_t> odd;
    for (std::int64_t x = 1; x <= 1000; x += 2) odd.insert(x * x % 16);
    o.require(odd == std::set<std::int64_t>{1, 9}, "odd squares mod 16");
    for (std::int64_t n = 0; n < 16; ++n) o.require(local_solubility(4, 7, n).witness.has_value(), "no witness (4,7) n=" + std::to_string(n));
    for (std::int64_t n = 0; n < 32; ++n) o.require(local_solubility(8, 24, n).witness.has_value(), "no witness (8,24) n=" + std::to_string(n));
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;  // 0: no stated budget
    Outcome (*body)();
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "size-pruning constants table", 1.0, pruning_table_criterion},
        {2, "headline constants", 1.0, headline_constants_criterion},
        {3, "admissible-exponent data table", 1.0, thm14_criterion},
        {4, "exact enumeration for x^2 + six fourth powers", 60.0, enumeration_criterion},
        {5, "moment oracles and quadrature", 120.0, oracle_criterion},
        {6, "E machinery", 10.0, e_machinery_criterion},
        {7, "singular series", 300.0, singular_criterion},
        {8, "asymptotic-regime properties", 0.0, asymptotic_criterion},
        {9, "mod-16 structure and local solubility", 1.0, mod16_criterion},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0.0 && seconds > c.budget_seconds) o.require(false, "runtime over " + num(c.budget_seconds) + " s");
        if (!o.pass) ++failures;
        std::printf("%s criterion %d: %s [%.2f s] %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
