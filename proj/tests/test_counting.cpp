#include <gtest/gtest.h>

#include <map>

#include "partitio/counting.hpp"
#include "partitio/weights.hpp"

using namespace partitio;

namespace {

// x^2 + y_1^k + ... + y_s^k = n with all variables >= 0, by nested loops.
std::vector<std::uint64_t> brute_counts(int k, int s, std::int64_t N) {
    std::vector<std::int64_t> kp;
    for (std::int64_t y = 0;; ++y) {
        std::int64_t v = 1;
        for (int i = 0; i < k; ++i) v *= y;
        if (v > N) break;
        kp.push_back(v);
    }
    std::vector<std::uint64_t> ys(N + 1, 0);
    ys[0] = 1;
    for (int j = 0; j < s; ++j) {
        std::vector<std::uint64_t> next(N + 1, 0);
        for (std::int64_t m = 0; m <= N; ++m)
            if (ys[m])
                for (auto v : kp)
                    if (m + v <= N) next[m + v] += ys[m];
        ys.swap(next);
    }
    std::vector<std::uint64_t> out(N + 1, 0);
    for (std::int64_t x = 0; x * x <= N; ++x)
        for (std::int64_t m = 0; m + x * x <= N; ++m) out[m + x * x] += ys[m];
    return out;
}

}  // namespace

TEST(Representation, MatchesBruteForce) {
    for (auto [k, s] : std::vector<std::pair<int, int>>{{3, 2}, {4, 3}, {5, 4}}) {
        const auto oracle = brute_counts(k, s, 500);
        const CountTable t = representation_counts(k, s, 500);
        for (std::int64_t n = 0; n <= 500; ++n) ASSERT_EQ(t[n], oracle[n]) << k << ' ' << s << ' ' << n;
    }
}

TEST(Representation, FourthPowerExamples) {
    const CountTable t = representation_counts(4, 6, 16 * 47 + 16);
    EXPECT_EQ(t[15], 1u);
    EXPECT_EQ(t[47], 0u);
    EXPECT_EQ(t[16 * 47], 0u);
}

TEST(ZeroSet, FourthPowersSixTerms) {
    EXPECT_EQ(zero_set(4, 6, 200), (std::vector<std::int64_t>{47, 62, 63, 77, 78, 79, 143, 158, 159}));
}

TEST(PowerConvolution, SmallCubes) {
    const CountTable t = power_convolution(3, 2, all_integers_base(64, 3), 128, false);
    EXPECT_EQ(t[2], 1u);
    EXPECT_EQ(t[9], 2u);
    EXPECT_EQ(t[16], 1u);
    EXPECT_EQ(t[0], 0u);
    const CountTable z = power_convolution(3, 2, all_integers_base(64, 3), 128, true);
    EXPECT_EQ(z[0], 1u);
    EXPECT_EQ(z[1], 2u);
    EXPECT_EQ(z.total(), 25u);
}

TEST(CountTable, Overflow) {
    const CountTable t(1, std::vector<u128>{0, static_cast<u128>(1) << 70}, "wide");
    EXPECT_TRUE(t.wide());
    EXPECT_THROW(t.at(1), overflow_error);
    EXPECT_EQ(to_string_u128(t.wide_at(1)), "1180591620717411303424");
    EXPECT_THROW(t.at(2), std::out_of_range);
}

TEST(Nu, UnitWeightSumsTable) {
    const CountTable rho = representation_counts(3, 3, 1000, {XKind::none});
    std::vector<WeightTerm> ones;
    for (std::int64_t m = 1; m <= 1000; ++m) ones.push_back({m, 1.0});
    const NuResult r = nu_convolution(custom_weight(1000, "ones", ones), rho, 1000);
    std::uint64_t direct = 0;
    for (std::int64_t m = 0; m < 1000; ++m) direct += rho[m];
    ASSERT_TRUE(r.exact.has_value());
    EXPECT_EQ(static_cast<std::uint64_t>(*r.exact), direct);
    EXPECT_DOUBLE_EQ(r.value, static_cast<double>(direct));
}

TEST(Nu, MobiusCancellation) {
    const std::int64_t n = 10000;
    const CountTable rho = representation_counts(3, 8, n, {XKind::none});
    const NuResult mu = nu_convolution(make_weight(WeightKind::mobius, n), rho, n);
    double total = 0.0;
    for (std::int64_t m = 0; m < n; ++m) total += static_cast<double>(rho.wide_at(m));
    EXPECT_LE(std::fabs(mu.value), 0.05 * total);
}
