#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "detail/decimal.hpp"
#include "errors.hpp"
#include "rootfind.hpp"

namespace partitio {

inline constexpr double zeta_star = 0.5 + std::numbers::ln2;
inline constexpr double smooth_weyl_D = 4.5139506;

namespace detail {

inline double eta_solve(double t, double guess) {
    RootFindConfig cfg;
    // y + log y = 1 - t forces e^{-t} <= y < 1.
    cfg.bracket = {0.5 * std::exp(-t), 1.0};
    cfg.guess = guess;
    return solve_monotone([](double y) { return y + std::log(y); }, [](double y) { return 1.0 + 1.0 / y; },
                          1.0 - t, cfg);
}

inline double eta_guess(double t) {
    if (t >= 1.0) {
        const double y0 = std::exp(1.0 - t);
        return std::exp(1.0 - t - y0);
    }
    return 1.0 - 0.5 * t;
}

}  // namespace detail

// The root y in (0,1) of y + log y = 1 - t.
inline double eta(double t) {
    if (!(t > 0.0)) throw domain_error("eta requires t > 0");
    return detail::eta_solve(t, detail::eta_guess(t));
}

inline double eta_derivative(double t) {
    const double y = eta(t);
    return -y / (1.0 + y);
}

inline double eta_inverse(double y) {
    if (!(y > 0.0 && y < 1.0)) throw domain_error("eta_inverse requires 0 < y < 1");
    return 1.0 - y - std::log(y);
}

inline double c1(double phi) {
    if (!(phi > 0.0)) throw domain_error("c1 requires phi > 0");
    return 1.0 + std::numbers::ln2 - 0.5 * phi - std::log(phi);
}

struct KParams {
    int k = 0;
    int r = 0;
    rational zeta;  // 2r/k
    double zeta_k = 0.0;
    double phi_k = 0.0;
    double sigma_k = 0.0;
};

inline KParams k_params(int k) {
    if (k < 3) throw domain_error("k_params requires k >= 3");
    KParams p;
    p.k = k;
    p.r = static_cast<int>(std::ceil(0.5 * zeta_star * k));
    p.zeta = rational(2 * p.r, k);
    p.zeta_k = to_double(p.zeta);
    RootFindConfig cfg;
    cfg.bracket = {1e-12, 1.0};
    p.phi_k = solve_monotone([](double f) { return f + std::log(f); }, [](double f) { return 1.0 + 1.0 / f; },
                             std::numbers::ln2 - p.zeta_k, cfg);
    p.sigma_k = c1(p.phi_k);
    return p;
}

struct C2Result {
    double rhs = 0.0;
    double z = 0.0;
    double c2 = 0.0;
};

namespace detail {

// Root z >= 1 of z - log z = rhs.
inline double solve_z(double rhs) {
    if (rhs < 1.0) throw domain_error("no root above 1: right-hand side below 1");
    if (rhs == 1.0) return 1.0;
    RootFindConfig cfg;
    cfg.bracket = {1.0, rhs + std::fabs(std::log(rhs)) + 3.0};
    cfg.guess = rhs + std::log(rhs);
    return solve_monotone([](double z) { return z - std::log(z); }, [](double z) { return 1.0 - 1.0 / z; }, rhs, cfg);
}

}  // namespace detail

// Root z > 1 of z - log z = 2 - zeta - phi - log phi, and c2 = z/2 + zeta + phi/2.
inline C2Result c2_fn(double phi, double zeta) {
    if (!(phi > 0.0)) throw domain_error("c2 requires phi > 0");
    C2Result out;
    out.rhs = 2.0 - zeta - phi - std::log(phi);
    out.z = detail::solve_z(out.rhs);
    out.c2 = 0.5 * out.z + zeta + 0.5 * phi;
    return out;
}

inline C2Result c2_star(double phi) { return c2_fn(phi, zeta_star); }

// Closed form of the minimum over tau >= 0 of tau/gamma + 2 eta(sigma+tau)/phi
// when the stationary point tau0 is positive.
inline double f_closed(double sigma, double phi, double zeta) {
    const double gamma = sigma - zeta;
    if (!(gamma > 0.0)) throw domain_error("gamma = sigma - zeta must be positive");
    const double d = 2.0 * gamma - phi;
    if (!(d > 0.0)) throw domain_error("F requires 2 gamma > phi");
    const double tau0 = 1.0 - sigma - phi / d + std::log(d / phi);
    return 2.0 / d + tau0 / gamma;
}

enum class EBranch { f_branch, eta_branch };

struct EResult {
    double E = 0.0;
    EBranch branch = EBranch::eta_branch;
    std::optional<double> tau0;
};

inline EResult e_closed(double sigma, double phi, double zeta) {
    const double gamma = sigma - zeta;
    if (!(gamma > 0.0)) throw domain_error("gamma = sigma - zeta must be positive");
    if (!(phi > 0.0)) throw domain_error("phi must be positive");
    const double h = eta(sigma);
    EResult out;
    const double d = 2.0 * gamma - phi;
    if (d > 0.0 && h > phi / d) {
        out.branch = EBranch::f_branch;
        out.tau0 = 1.0 - sigma - phi / d + std::log(d / phi);
        out.E = 2.0 / d + *out.tau0 / gamma;
    } else {
        out.branch = EBranch::eta_branch;
        out.E = 2.0 * h / phi;
    }
    return out;
}

// Grid minimum of tau/gamma + 2 eta(sigma+tau)/phi over tau = 0, step, 2 step, ...
// The scan runs to gamma * max(1, value at tau = 0); beyond that tau/gamma alone
// exceeds the value at tau = 0.
inline double e_oracle(double sigma, double phi, double zeta, double grid_step) {
    const double gamma = sigma - zeta;
    if (!(gamma > 0.0)) throw domain_error("gamma = sigma - zeta must be positive");
    if (!(phi > 0.0)) throw domain_error("phi must be positive");
    if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be positive");
    double y = eta(sigma);
    double best = 2.0 * y / phi;
    const double tau_max = gamma * std::max(1.0, best);
    const long steps = static_cast<long>(std::floor(tau_max / grid_step));
    for (long i = 1; i <= steps; ++i) {
        const double tau = static_cast<double>(i) * grid_step;
        y = detail::eta_solve(sigma + tau, y);
        best = std::min(best, tau / gamma + 2.0 * y / phi);
    }
    return best;
}

struct ConstantsReport {
    double zeta_star = 0.0;
    double phi_star = 0.0;
    double sigma_star = 0.0;
    double c = 0.0;
    double theta = 0.0;
    double c_tilde = 0.0;
    double c0 = 0.0;
    double D = 0.0;
};

inline ConstantsReport constants_report() {
    ConstantsReport r;
    r.zeta_star = zeta_star;
    r.phi_star = eta(1.5);  // phi + log phi = -1/2
    r.sigma_star = 0.5 * (r.phi_star + 3.0 + 2.0 * std::numbers::ln2);

    RootFindConfig cfg_c;
    cfg_c.bracket = {1.0, 3.0};
    r.c = solve_monotone([](double x) { return 2.0 * x - std::log(5.0 * x - 1.0); },
                         [](double x) { return 2.0 - 5.0 / (5.0 * x - 1.0); }, 2.0, cfg_c);

    RootFindConfig cfg_theta;
    cfg_theta.bracket = {1.0, 10.0};
    r.theta = solve_monotone([](double x) { return x - std::log(x); }, [](double x) { return 1.0 - 1.0 / x; },
                             11.0 / 8.0 + std::log(4.0), cfg_theta);
    r.c_tilde = 0.5 * r.theta + 9.0 / 16.0 + std::numbers::ln2;
    r.c0 = 0.75 + 2.0 * std::numbers::ln2;
    r.D = smooth_weyl_D;
    return r;
}

// The size-pruning table: phi, 2 - zeta* - phi - log phi, z*(phi), c2*(phi), c1(phi).
// As printed, z* solves z - log z = (the displayed, rounded-up right-hand side),
// so z_star and c2_star follow that chain; the *_exact fields use the exact one.
struct PruningRow {
    std::string label;
    double phi = 0.0;
    double rhs = 0.0;
    double z_star = 0.0;
    double c2_star = 0.0;
    double c1 = 0.0;
    double z_exact = 0.0;
    double c2_exact = 0.0;
};

struct PrintedPruningRow {
    const char* label;
    int num;
    int den;
    const char* rhs;
    const char* z_star;
    const char* c2_star;
    const char* c1;
};

// Digits displayed per column; every column is rounded up in the last digit.
inline constexpr int pruning_rhs_digits = 8;
inline constexpr int pruning_z_digits = 7;
inline constexpr int pruning_c2_digits = 6;
inline constexpr int pruning_c1_digits = 6;

inline constexpr std::array<PrintedPruningRow, 10> printed_pruning_table{{
    {"3/8", 3, 8, "1.41268208", "2.2020882", "2.481692", "2.486477"},
    {"5/16", 5, 16, "1.65750363", "2.6210963", "2.659946", "2.700048"},
    {"1/4", 1, 4, "1.94314719", "3.0623200", "2.849308", "2.954442"},
    {"3/16", 3, 16, "2.29332926", "3.5642958", "3.069046", "3.273374"},
    {"1/6", 1, 6, "2.43194563", "3.7550463", "3.154004", "3.401574"},
    {"1/8", 1, 8, "2.76129437", "4.1952465", "3.353271", "3.710089"},
    {"1/16", 1, 16, "3.51694155", "5.1573680", "3.803082", "4.434486"},
    {"1/32", 1, 32, "4.24133873", "6.0396917", "4.228619", "5.143259"},
    {"1/64", 1, 64, "4.95011091", "6.8785135", "4.640217", "5.844218"},
    {"1/128", 1, 128, "5.65107059", "7.6911396", "5.042624", "6.541272"},
}};

inline std::vector<PruningRow> pruning_table() {
    std::vector<PruningRow> rows;
    rows.reserve(printed_pruning_table.size());
    for (const auto& p : printed_pruning_table) {
        PruningRow row;
        row.label = p.label;
        row.phi = static_cast<double>(p.num) / p.den;
        const C2Result c = c2_star(row.phi);
        row.rhs = c.rhs;
        row.z_exact = c.z;
        row.c2_exact = c.c2;
        const double shown = to_double(parse_decimal(fixed_digits(c.rhs, pruning_rhs_digits, Rounding::up)));
        row.z_star = detail::solve_z(shown);
        row.c2_star = 0.5 * row.z_star + zeta_star + 0.5 * row.phi;
        row.c1 = c1(row.phi);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace partitio
