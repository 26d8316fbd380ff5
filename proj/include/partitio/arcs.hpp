#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "detail/numeric.hpp"
#include "detail/parallel.hpp"
#include "errors.hpp"

namespace partitio {

struct RationalApprox {
    std::int64_t a = 0;
    std::int64_t q = 1;
    double err = 0.0;  // |q alpha - a|
};

struct Fraction {
    std::int64_t p = 0;
    std::int64_t q = 1;
};

namespace detail {

inline long double abs_err(long double alpha, std::int64_t p, std::int64_t q) {
    return std::fabs(static_cast<long double>(q) * alpha - static_cast<long double>(p));
}

// Continued fraction convergents p/q of alpha in [0,1] with q <= q_limit.
inline std::vector<Fraction> convergents(long double alpha, std::int64_t q_limit) {
    std::vector<Fraction> out;
    const auto a0 = static_cast<std::int64_t>(std::floor(alpha));
    std::int64_t p_prev = 1, q_prev = 0, p = a0, q = 1;
    out.push_back({p, q});
    long double x = alpha - a0;
    while (x > 0.0L) {
        x = 1.0L / x;
        const long double fa = std::floor(x);
        x -= fa;
        // next q = a q + q_prev; stop before exceeding q_limit
        if (fa > static_cast<long double>(q_limit)) break;
        const auto a = static_cast<std::int64_t>(fa);
        const __int128 qn = static_cast<__int128>(a) * q + q_prev;
        if (qn > q_limit) break;
        const std::int64_t pn = a * p + p_prev;
        p_prev = p;
        q_prev = q;
        p = pn;
        q = static_cast<std::int64_t>(qn);
        out.push_back({p, q});
        if (x < 1e-18L) break;
    }
    return out;
}

// Consecutive fractions lo <= alpha < hi of the Farey sequence of order N
// (lo == hi == 1/1 when alpha >= 1).
inline std::pair<Fraction, Fraction> farey_bracket(long double alpha, std::int64_t N) {
    if (alpha >= 1.0L) return {{1, 1}, {1, 1}};
    if (alpha < 0.0L) alpha = 0.0L;
    Fraction lo{0, 1}, hi{1, 1};
    for (;;) {
        const std::int64_t mq = lo.q + hi.q;
        if (mq > N) break;
        const std::int64_t mp = lo.p + hi.p;
        if (alpha * mq >= mp) {
            // advance lo towards hi: lo + k hi stays <= alpha
            const long double room = alpha * lo.q - lo.p;
            const long double gap = hi.p - alpha * hi.q;
            std::int64_t k = static_cast<std::int64_t>(std::min<long double>(std::floor(room / gap), 4e18L));
            k = std::min(k, (N - lo.q) / hi.q);
            while (k > 1 && alpha * (lo.q + k * hi.q) < lo.p + k * hi.p) --k;
            k = std::max<std::int64_t>(k, 1);
            lo = {lo.p + k * hi.p, lo.q + k * hi.q};
        } else {
            // advance hi towards lo: hi + k lo stays > alpha
            const long double room = hi.p - alpha * hi.q;
            const long double gap = alpha * lo.q - lo.p;
            std::int64_t k = (N - hi.q) / lo.q;
            if (gap > 0.0L) {
                const long double kk = std::ceil(room / gap) - 1.0L;
                if (kk < static_cast<long double>(k)) k = static_cast<std::int64_t>(kk);
            }
            while (k > 1 && alpha * (hi.q + k * lo.q) >= hi.p + k * lo.p) --k;
            k = std::max<std::int64_t>(k, 1);
            hi = {hi.p + k * lo.p, hi.q + k * lo.q};
        }
    }
    return {lo, hi};
}

// The fraction whose Farey cell (bounded by mediants) contains alpha; ties go to the smaller q.
inline Fraction farey_cell(long double alpha, std::int64_t N) {
    const auto [lo, hi] = farey_bracket(alpha, N);
    if (lo.q == hi.q && lo.p == hi.p) return lo;
    const long double lhs = alpha * (lo.q + hi.q);
    const long double mid = lo.p + hi.p;
    if (lhs < mid) return lo;
    if (lhs > mid) return hi;
    return lo.q <= hi.q ? lo : hi;
}

}  // namespace detail

// Best approximation |q alpha - a| over 1 <= q <= q_max (smallest q among minimizers).
inline RationalApprox dirichlet_approx(double alpha, std::int64_t q_max) {
    if (q_max < 1) throw std::invalid_argument("dirichlet_approx requires q_max >= 1");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("dirichlet_approx requires alpha in [0,1]");
    const auto cv = detail::convergents(alpha, q_max);
    // Convergents are the best approximations of the second kind, so the last
    // admissible one minimizes |q alpha - a|.
    Fraction best = cv.back();
    long double best_err = detail::abs_err(alpha, best.p, best.q);
    for (const auto& f : cv) {
        const long double e = detail::abs_err(alpha, f.p, f.q);
        if (e <= best_err) {
            best = f;
            best_err = e;
            break;
        }
    }
    return {best.p, best.q, static_cast<double>(best_err)};
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    std::int64_t a = 0;
    std::int64_t q = 1;
};

struct ArcClass {
    bool in_major = false;      // alpha in M(Q)
    bool in_slice = false;      // alpha in N(Q) = M(Q) \ M(Q/4)
    bool minor = false;         // alpha in the extreme minor arcs m
    bool core = false;          // alpha in the core arcs K
    double height = 0.0;        // inf { Q' : alpha in M(Q') }
    RationalApprox approx;      // the Farey assignment used by Upsilon
    double upsilon = 0.0;
};

// Farey dissection of order 2 sqrt(n) and the arc families built on it.
class Dissection {
  public:
    explicit Dissection(std::int64_t n)
        : n_(n),
          sqrt_n_(std::sqrt(static_cast<double>(n))),
          half_(0.5 * std::sqrt(static_cast<double>(n))),
          order_(static_cast<std::int64_t>(detail::isqrt(static_cast<detail::u64>(4 * n)))),
          small_q_(static_cast<std::int64_t>(detail::isqrt(static_cast<detail::u64>(n / 4)))),
          L_(std::log(static_cast<double>(n))) {
        if (n < 2) throw std::invalid_argument("Dissection requires n >= 2");
        // largest q with q <= sqrt(n)/2, i.e. 4 q^2 <= n
        while (4 * (small_q_ + 1) * (small_q_ + 1) <= n) ++small_q_;
        while (small_q_ > 0 && 4 * small_q_ * small_q_ > n) --small_q_;
    }

    std::int64_t n() const { return n_; }
    double half_sqrt_n() const { return half_; }
    double two_sqrt_n() const { return 2.0 * sqrt_n_; }
    std::int64_t farey_order() const { return order_; }
    std::int64_t small_q_limit() const { return small_q_; }
    double log_n() const { return L_; }

    // Height in the major arc scale: min over q <= sqrt(n)/2 of max(q, n |q alpha - a|)
    // if that is at most sqrt(n)/2, else the denominator of the Farey cell.
    double height(double alpha, RationalApprox* assignment = nullptr, bool* minor = nullptr) const {
        const long double a = alpha;
        const auto cv = detail::convergents(a, std::max<std::int64_t>(small_q_, 1));
        double best = std::numeric_limits<double>::infinity();
        for (const auto& f : cv) {
            const double h = std::max(static_cast<double>(f.q), static_cast<double>(n_ * detail::abs_err(a, f.p, f.q)));
            best = std::min(best, h);
        }
        if (small_q_ >= 1 && best <= half_) {
            if (assignment) {
                const Fraction f = cv.back();
                *assignment = {f.p, f.q, static_cast<double>(detail::abs_err(a, f.p, f.q))};
            }
            if (minor) *minor = false;
            return best;
        }
        const Fraction f = detail::farey_cell(a, order_);
        if (assignment) *assignment = {f.p, f.q, static_cast<double>(detail::abs_err(a, f.p, f.q))};
        if (minor) *minor = true;
        return std::max(static_cast<double>(f.q), std::nextafter(half_, std::numeric_limits<double>::infinity()));
    }

    RationalApprox approximation(double alpha) const {
        RationalApprox r;
        height(alpha, &r);
        return r;
    }

    double upsilon(double alpha) const {
        const RationalApprox r = approximation(alpha);
        return 1.0 / (static_cast<double>(r.q) + static_cast<double>(n_) * r.err);
    }

    bool in_major(double alpha, double Q) const {
        if (Q < 1.0) return false;
        return height(alpha) <= Q;
    }

    bool in_slice(double alpha, double Q) const {
        const double h = height(alpha);
        return h <= Q && !(Q / 4.0 >= 1.0 && h <= Q / 4.0);
    }

    bool core(double alpha) const {
        const double root = std::pow(L_, 1.0 / 15.0);
        const auto qmax = static_cast<std::int64_t>(std::floor(root));
        const long double a = alpha;
        for (std::int64_t q = 1; q <= qmax; ++q) {
            const auto p = static_cast<std::int64_t>(std::llround(a * q));
            if (std::gcd(p, q) != 1 && !(p == 0 && q == 1)) continue;
            if (detail::abs_err(a, p, q) <= q * root / n_) return true;
        }
        return false;
    }

    ArcClass classify(double alpha, double Q) const {
        ArcClass c;
        c.height = height(alpha, &c.approx, &c.minor);
        c.in_major = Q >= 1.0 && c.height <= Q;
        c.in_slice = c.in_major && !(Q / 4.0 >= 1.0 && c.height <= Q / 4.0);
        c.core = core(alpha);
        c.upsilon = 1.0 / (static_cast<double>(c.approx.q) + static_cast<double>(n_) * c.approx.err);
        return c;
    }

    // Piece of the extreme minor arcs attached to a/q (q > sqrt(n)/2, a/q in the
    // Farey sequence of order 2 sqrt(n)): the mediant cell minus the neighbouring
    // major arcs. Empty pieces yield nullopt.
    std::optional<Interval> minor_piece(std::int64_t a, std::int64_t q) const {
        const std::int64_t inv = detail::modinv(a, q);
        // left neighbour l/ql with a ql - l q = 1, right neighbour r/qr with r q - a qr = 1
        std::int64_t ql = inv == 0 ? q : inv;
        ql += ((order_ - ql) / q) * q;
        std::int64_t qr = (q - inv) % q == 0 ? q : (q - inv) % q;
        qr += ((order_ - qr) / q) * q;
        const std::int64_t l = (a * ql - 1) / q;
        const std::int64_t r = (a * qr + 1) / q;
        const double w = 0.5 / sqrt_n_;
        double lo = static_cast<double>(l + a) / static_cast<double>(ql + q);
        double hi = static_cast<double>(r + a) / static_cast<double>(qr + q);
        if (ql <= small_q_) lo = std::max(lo, static_cast<double>(l) / ql + w / ql);
        if (qr <= small_q_) hi = std::min(hi, static_cast<double>(r) / qr - w / qr);
        lo = std::max(lo, 0.0);
        hi = std::min(hi, 1.0);
        if (!(hi > lo)) return std::nullopt;
        return Interval{lo, hi, a, q};
    }

    // Calls visit(Interval) for every arc of M(Q), in increasing q then a.
    // Arcs of M(q,a;Q) are clipped to [0,1]; for Q > sqrt(n)/2 the extreme
    // minor pieces with sqrt(n)/2 < q <= Q follow.
    template <class Visit>
    void for_each_major_arc(double Q, Visit&& visit) const {
        if (Q < 1.0) return;
        const double Qm = std::min(Q, half_);
        const auto qmax = static_cast<std::int64_t>(std::floor(Qm));
        for (std::int64_t q = 1; q <= qmax; ++q) {
            const double w = Qm / (static_cast<double>(n_) * q);
            for (std::int64_t a = 0; a <= q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                const double c = static_cast<double>(a) / q;
                visit(Interval{std::max(0.0, c - w), std::min(1.0, c + w), a, q});
            }
        }
        if (Q <= half_) return;
        const auto qtop = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(Q)), order_);
        for (std::int64_t q = small_q_ + 1; q <= qtop; ++q)
            for (std::int64_t a = 1; a < q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                if (auto piece = minor_piece(a, q)) visit(*piece);
            }
    }

  private:
    std::int64_t n_;
    double sqrt_n_;
    double half_;
    std::int64_t order_;
    std::int64_t small_q_;
    double L_;
};

inline double upsilon(double alpha, std::int64_t n) { return Dissection(n).upsilon(alpha); }

inline ArcClass arc_classify(double alpha, std::int64_t n, double Q) { return Dissection(n).classify(alpha, Q); }

// Deterministic sampler for the slice N(Q): stratified draws from the arcs of
// M(Q) (uniform offsets mixed with offsets j/8 of the half-width) when
// Q <= sqrt(n)/2, uniform draws on [0,1] otherwise; both filtered by membership.
class SliceSampler {
  public:
    SliceSampler(const Dissection& d, double Q, std::uint64_t seed) : d_(d), Q_(Q), rng_(seed) {
        if (Q < 1.0 || Q > d.two_sqrt_n() + 1e-9) throw std::invalid_argument("slice height must lie in [1, 2 sqrt(n)]");
        arc_mode_ = Q <= d.half_sqrt_n();
        if (arc_mode_) {
            const auto qmax = static_cast<std::int64_t>(std::floor(Q));
            const auto phi = totients(qmax);
            cumulative_.resize(qmax + 1, 0.0);
            for (std::int64_t q = 1; q <= qmax; ++q) {
                const double mass = (q == 1 ? 1.0 : static_cast<double>(phi[q])) / q;
                cumulative_[q] = cumulative_[q - 1] + mass;
            }
        }
    }

    // The index-th candidate point; nullopt if it falls outside N(Q).
    std::optional<double> candidate(std::uint64_t index) const {
        double alpha;
        if (arc_mode_) {
            const double u = rng_.uniform(index, 0) * cumulative_.back();
            const auto it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), u);
            const std::int64_t q = std::min<std::int64_t>(it - cumulative_.begin(), static_cast<std::int64_t>(cumulative_.size()) - 1);
            std::int64_t a = 0;
            if (q == 1) {
                a = rng_.uniform(index, 1) < 0.5 ? 0 : 1;
            } else {
                for (std::uint64_t lane = 1;; ++lane) {
                    a = 1 + static_cast<std::int64_t>(rng_.uniform(index, lane) * (q - 1));
                    if (std::gcd(a, q) == 1) break;
                }
            }
            double offset;
            if (rng_.bits(index, 1000) & 1) {
                const auto j = static_cast<int>(rng_.bits(index, 1001) % 17) - 8;
                offset = j / 8.0;
            } else {
                offset = 2.0 * rng_.uniform(index, 1002) - 1.0;
            }
            const double w = Q_ / (static_cast<double>(d_.n()) * q);
            alpha = static_cast<double>(a) / q + offset * w;
            if (alpha < 0.0) alpha = -alpha;
            if (alpha > 1.0) alpha = 2.0 - alpha;
        } else {
            alpha = rng_.uniform(index, 0);
        }
        if (!d_.in_slice(alpha, Q_)) return std::nullopt;
        return alpha;
    }

    // Up to `count` accepted points, trying at most max_attempts candidates.
    std::vector<double> draw(std::size_t count, std::size_t max_attempts) const {
        std::vector<double> out;
        for (std::uint64_t i = 0; out.size() < count && i < max_attempts; ++i)
            if (auto a = candidate(i)) out.push_back(*a);
        return out;
    }

  private:
    const Dissection& d_;
    double Q_;
    detail::counter_rng rng_;
    bool arc_mode_ = false;
    std::vector<double> cumulative_;
};

}  // namespace partitio
