#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"

namespace partitio {

struct RootFindConfig {
    double abs_tolerance = 1e-12;
    int max_iterations = 200;
    std::pair<double, double> bracket{0.0, 1.0};
    // Optional starting point for the Newton variant; must lie inside the bracket.
    std::optional<double> guess;
};

namespace detail {

inline void check_config(const RootFindConfig& cfg) {
    if (!(cfg.abs_tolerance > 0.0)) throw std::invalid_argument("abs_tolerance must be positive");
    if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
    if (!std::isfinite(cfg.bracket.first) || !std::isfinite(cfg.bracket.second))
        throw bracket_error("bracket endpoints must be finite");
}

inline bool collapsed(double a, double b) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return (b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
}

[[noreturn]] inline void fail_residual(double x, double fx, const char* why) {
    throw convergence_error(std::string(why) + " (x=" + std::to_string(x) + ", residual=" + std::to_string(fx) + ")");
}

}  // namespace detail

// Solves g(x) = target for g strictly monotone on cfg.bracket. Safeguarded
// Newton: a step is taken only if it stays inside the current bracket and
// shrinks at least as fast as bisection would, otherwise the bracket is halved.
template <class G, class DG>
double solve_monotone(G&& g, DG&& dg, double target, const RootFindConfig& cfg) {
    detail::check_config(cfg);
    double a = std::min(cfg.bracket.first, cfg.bracket.second);
    double b = std::max(cfg.bracket.first, cfg.bracket.second);
    double fa = g(a) - target;
    double fb = g(b) - target;
    if (std::fabs(fa) <= cfg.abs_tolerance) return a;
    if (std::fabs(fb) <= cfg.abs_tolerance) return b;
    if ((fa > 0) == (fb > 0)) throw bracket_error("g - target has the same sign at both bracket endpoints");

    double x = 0.5 * (a + b);
    if (cfg.guess && *cfg.guess > a && *cfg.guess < b) x = *cfg.guess;
    double last_step = b - a;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        const double fx = g(x) - target;
        if (!std::isfinite(fx)) detail::fail_residual(x, fx, "non-finite function value");
        if (std::fabs(fx) <= cfg.abs_tolerance) return x;
        if ((fx > 0) == (fa > 0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        if (detail::collapsed(a, b)) detail::fail_residual(x, fx, "bracket collapsed above tolerance");
        const double d = dg(x);
        double next = (d != 0.0 && std::isfinite(d)) ? x - fx / d : std::numeric_limits<double>::quiet_NaN();
        if (!(next > a && next < b) || std::fabs(next - x) > 0.5 * last_step) next = 0.5 * (a + b);
        last_step = std::fabs(next - x);
        x = next;
    }
    detail::fail_residual(x, g(x) - target, "no convergence within max_iterations");
}

// Derivative-free variant: Illinois-modified regula falsi with a bisection
// step whenever the bracket fails to halve over two iterations.
template <class G>
double solve_monotone(G&& g, double target, const RootFindConfig& cfg) {
    detail::check_config(cfg);
    double a = std::min(cfg.bracket.first, cfg.bracket.second);
    double b = std::max(cfg.bracket.first, cfg.bracket.second);
    double fa = g(a) - target;
    double fb = g(b) - target;
    if (std::fabs(fa) <= cfg.abs_tolerance) return a;
    if (std::fabs(fb) <= cfg.abs_tolerance) return b;
    if ((fa > 0) == (fb > 0)) throw bracket_error("g - target has the same sign at both bracket endpoints");

    int side = 0;
    double width_two_ago = 4.0 * (b - a), width_prev = 4.0 * (b - a);
    double x = a;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        x = (a * fb - b * fa) / (fb - fa);
        const double width = b - a;
        if (!(x > a && x < b) || width > 0.5 * width_two_ago) x = 0.5 * (a + b);
        width_two_ago = width_prev;
        width_prev = width;
        const double fx = g(x) - target;
        if (!std::isfinite(fx)) detail::fail_residual(x, fx, "non-finite function value");
        if (std::fabs(fx) <= cfg.abs_tolerance) return x;
        if ((fx > 0) == (fa > 0)) {
            a = x;
            fa = fx;
            if (side == 1) fb *= 0.5;
            side = 1;
        } else {
            b = x;
            fb = fx;
            if (side == -1) fa *= 0.5;
            side = -1;
        }
        if (detail::collapsed(a, b)) detail::fail_residual(x, fx, "bracket collapsed above tolerance");
    }
    detail::fail_residual(x, g(x) - target, "no convergence within max_iterations");
}

}  // namespace partitio
