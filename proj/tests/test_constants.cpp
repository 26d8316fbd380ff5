#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "partitio/constants.hpp"

using namespace partitio;

namespace {

// y + log y = 1 - t by bisection on u = log y in [-700, 0].
double eta_bisect(double t) {
    double lo = -700.0, hi = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::exp(mid) + mid < 1.0 - t ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

}  // namespace

TEST(Eta, KnownValues) {
    EXPECT_NEAR(eta(0.5 + std::numbers::ln2), 0.5, 1e-12);
    EXPECT_NEAR(eta(0.8 + std::log(5.0)), 0.2, 1e-12);
    EXPECT_NEAR(eta(1.0), 0.567143290409784, 1e-12);
    EXPECT_NEAR(eta(1.0), eta_bisect(1.0), 1e-12);
}

TEST(Eta, MatchesBisectionAcrossRange) {
    for (double t : {0.01, 0.3, 2.0, 5.0, 12.0, 40.0, 80.0}) EXPECT_NEAR(eta(t) / eta_bisect(t), 1.0, 1e-10) << t;
}

TEST(Eta, DomainAndDerivative) {
    EXPECT_THROW(eta(0.0), domain_error);
    EXPECT_THROW(eta(-1.0), domain_error);
    const double t = 2.3, h = 1e-6;
    EXPECT_NEAR(eta_derivative(t), (eta(t + h) - eta(t - h)) / (2 * h), 1e-8);
}

TEST(EtaInverse, ClosedFormAndRoundTrip) {
    EXPECT_NEAR(eta_inverse(0.5), 1.19314718, 1e-8);
    EXPECT_NEAR(eta_inverse(0.2), 2.40943791, 1e-8);
    EXPECT_NEAR(eta(eta_inverse(0.37)), 0.37, 1e-10);
    EXPECT_THROW(eta_inverse(1.0), domain_error);
}

TEST(C1, Values) {
    EXPECT_NEAR(c1(0.5), 0.75 + std::log(4.0), 1e-12);
    EXPECT_EQ(fixed_digits(c1(0.125), 6, Rounding::up), "3.710089");
    EXPECT_NEAR(c1(2.0), 0.0, 1e-12);
}

TEST(KParams, SmallK) {
    const KParams k5 = k_params(5);
    EXPECT_EQ(k5.r, 3);
    EXPECT_EQ(k5.zeta, rational(6, 5));
    const KParams k6 = k_params(6);
    EXPECT_EQ(k6.r, 4);
    EXPECT_EQ(k6.zeta, rational(4, 3));
    double lo = 1e-9, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid + std::log(mid) < std::numbers::ln2 - 4.0 / 3.0 ? lo : hi) = mid;
    }
    EXPECT_NEAR(k6.phi_k, lo, 1e-10);
    EXPECT_NEAR(k6.phi_k, 0.3657, 1e-4);
    EXPECT_LT(k6.phi_k, constants_report().phi_star);
    EXPECT_THROW(k_params(2), domain_error);
}

TEST(KParams, SigmaIdentity) {
    for (int k = 3; k <= 12; ++k) {
        const KParams p = k_params(k);
        EXPECT_NEAR(eta(p.sigma_k), 0.5 * p.phi_k, 1e-12);
        if (k >= 5) {
            EXPECT_NEAR(2 * (p.sigma_k - p.zeta_k) - p.phi_k, 2.0, 1e-10);
        }
    }
}

TEST(C2, TableRows) {
    const C2Result eighth = c2_star(0.125);
    EXPECT_EQ(fixed_digits(eighth.z, 7, Rounding::up), "4.1952465");
    EXPECT_EQ(fixed_digits(eighth.c2, 6, Rounding::up), "3.353271");
    const C2Result three = c2_star(0.375);
    EXPECT_EQ(fixed_digits(three.z, 7, Rounding::up), "2.2020882");
    EXPECT_EQ(fixed_digits(three.c2, 6, Rounding::up), "2.481692");
    EXPECT_NEAR(eighth.c2, constants_report().c_tilde, 1e-10);
}

TEST(C2, RejectsRhsBelowOne) {
    EXPECT_THROW(c2_fn(0.9, 1.5), domain_error);
    EXPECT_THROW(c2_fn(0.0, 1.0), domain_error);
}

TEST(C2, BelowC1) {
    for (double phi : {0.01, 0.0625, 0.2, 0.35}) EXPECT_LT(c2_fn(phi, k_params(8).zeta_k).c2, c1(phi));
}

TEST(PruningTable, MatchesPrintedDigits) {
    const auto rows = pruning_table();
    ASSERT_EQ(rows.size(), printed_pruning_table.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& p = printed_pruning_table[i];
        EXPECT_EQ(fixed_digits(rows[i].rhs, pruning_rhs_digits, Rounding::up), p.rhs) << p.label;
        EXPECT_EQ(fixed_digits(rows[i].z_star, pruning_z_digits, Rounding::up), p.z_star) << p.label;
        EXPECT_EQ(fixed_digits(rows[i].c2_star, pruning_c2_digits, Rounding::up), p.c2_star) << p.label;
        EXPECT_EQ(fixed_digits(rows[i].c1, pruning_c1_digits, Rounding::up), p.c1) << p.label;
        EXPECT_NEAR(rows[i].z_star, rows[i].z_exact, 5e-7);
    }
}

TEST(EClosed, SigmaKGivesOne) {
    for (int k = 5; k <= 12; ++k) {
        const KParams p = k_params(k);
        EXPECT_NEAR(e_closed(p.sigma_k, p.phi_k, p.zeta_k).E, 1.0, 1e-9) << k;
        EXPECT_NEAR(f_closed(p.sigma_k, p.phi_k, p.zeta_k), 1.0, 1e-9) << k;
    }
}

TEST(EClosed, EtaBranch) {
    const EResult r = e_closed(4.0, 0.5, 1.2);
    EXPECT_EQ(r.branch, EBranch::eta_branch);
    EXPECT_FALSE(r.tau0.has_value());
    EXPECT_NEAR(r.E, 2.0 * eta_bisect(4.0) / 0.5, 1e-10);
    EXPECT_NEAR(r.E, 0.1899, 1e-4);
}

TEST(EOracle, AgreesAndRefines) {
    const KParams p = k_params(7);
    const double phi = 0.2, sigma = p.sigma_k + 0.3;
    const double coarse = e_oracle(sigma, phi, p.zeta_k, 1e-3);
    const double fine = e_oracle(sigma, phi, p.zeta_k, 5e-4);
    EXPECT_LE(fine, coarse + 1e-15);
    EXPECT_NEAR(e_oracle(sigma, phi, p.zeta_k, 1e-4), e_closed(sigma, phi, p.zeta_k).E, 1e-6);
    EXPECT_NEAR(e_oracle(p.sigma_k, p.phi_k, p.zeta_k, 1e-4), 1.0, 1e-6);
    // eta branch: minimum at tau = 0
    EXPECT_DOUBLE_EQ(e_oracle(4.0, 0.5, 1.2, 1e-3), 2.0 * eta(4.0) / 0.5);
}

TEST(Headline, Constants) {
    const ConstantsReport c = constants_report();
    EXPECT_NEAR(c.c0, 2.136294, 1e-6);
    EXPECT_NEAR(c.c, 2.134693, 1e-6);
    EXPECT_NEAR(c.c_tilde, 3.3532, 1e-4);
    EXPECT_GT(c.phi_star, 0.4046);
    EXPECT_LT(c.phi_star, 0.4047);
    EXPECT_GT(c.sigma_star, 2.3954);
    EXPECT_DOUBLE_EQ(c.D, 4.5139506);
}

TEST(KappaLimit, DifferenceAtLargeKappa) {
    const double kappa = 1e8, L = std::log(kappa), LL = std::log(L);
    const double diff = c2_star(1.0 / kappa).c2 - (0.5 * (L + LL) + 1.0 + 0.5 * zeta_star);
    EXPECT_GT(diff, 0.0);
    EXPECT_LT(diff, LL / L);
}
