#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lrkitaev/analysis.hpp"
#include "lrkitaev/asymptotics.hpp"
#include "lrkitaev/error.hpp"
#include "lrkitaev/specfun.hpp"

using namespace lrk;
constexpr double kPi = std::numbers::pi;

namespace {

// Vacuum specialisation (a = 1, b = 0) of the residue sum.
double vacuum_residues(double delta, int nu) {
    const double c = std::cos(delta / 2), s = std::sin(delta / 2);
    double acc = 0;
    for (int l = 1; l <= nu; ++l) {
        if (2 * l == 1 + nu) continue;
        const double y = std::tan(kPi * (2 * l - 1) / (2.0 * nu));
        const double at = std::atan(s / std::sqrt(c * c + y * y));
        acc += at * at;
    }
    return acc / (kPi * kPi * (nu - 1));
}

Discontinuity jump(double delta, double a = 1.0, double b = 0.0) {
    Discontinuity d;
    d.a = a;
    d.b = b;
    d.delta_phi = delta;
    return d;
}

}  // namespace

TEST_CASE("wrap_to_pi") {
    CHECK(wrap_to_pi(0.0) == 0.0);
    CHECK(wrap_to_pi(kPi) == doctest::Approx(kPi));
    CHECK(wrap_to_pi(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_to_pi(3 * kPi / 2) == doctest::Approx(-kPi / 2));
    CHECK(wrap_to_pi(-7.0) == doctest::Approx(-7.0 + 2 * kPi));
}

TEST_CASE("general residue sum reduces to the vacuum formula") {
    for (int nu : {2, 3, 4, 5, 8})
        for (double d : {0.1, 0.7, 1.6, 2.4, 3.0, kPi, -1.1}) {
            CAPTURE(nu);
            CAPTURE(d);
            CHECK(jump_coefficient_residues(jump(d), nu) == doctest::Approx(vacuum_residues(d, nu)).epsilon(1e-13));
        }
}

TEST_CASE("a jump of pi gives the short-range coefficient") {
    for (int nu : {2, 3, 4, 7}) CHECK(std::fabs(jump_coefficient_residues(jump(kPi), nu) - short_range_B(nu)) < 1e-14);
    CHECK(std::fabs(jump_coefficient_branch_cut(jump(kPi), 1.0) - 1.0 / 6) < 1e-6);
    CHECK(std::fabs(jump_coefficient_branch_cut(jump(kPi), 1.5) - short_range_B(1.5)) < 1e-6);
}

TEST_CASE("jump coefficient basic properties") {
    CHECK(jump_coefficient_residues(jump(0.0), 2) == 0.0);
    CHECK(jump_coefficient_residues(jump(1.0, 0.0, 0.0), 2) == 0.0);
    CHECK(jump_coefficient_branch_cut(jump(1.0, 0.0, 0.0), 1.0) == 0.0);
    CHECK(jump_coefficient_residues(jump(0.8), 3) == jump_coefficient_residues(jump(-0.8), 3));
    double prev = 0;
    for (double d = 0.2; d <= kPi; d += 0.2) {
        const double v = jump_coefficient_residues(jump(d), 2);
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(jump_coefficient_residues(jump(1.0), 1), DomainError);
    CHECK_THROWS_AS(jump_coefficient_residues(jump(1.0, 0.8, 0.3), 2), DomainError);
    CHECK_THROWS_AS(jump_coefficient_branch_cut(jump(1.0), 0.5), DomainError);
}

TEST_CASE("branch cut and residues agree for general symbols") {
    for (int nu : {2, 3, 4})
        for (auto [a, b] : {std::pair{1.0, 0.0}, std::pair{0.6, 0.2}, std::pair{0.5, -0.5}, std::pair{0.3, 0.1}})
            for (double d : {0.4, 1.3, 2.2, kPi}) {
                CAPTURE(nu);
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(d);
                CHECK(std::fabs(jump_coefficient_residues(jump(d, a, b), nu) -
                                jump_coefficient_branch_cut(jump(d, a, b), nu)) < 1e-8);
            }
}

TEST_CASE("jump_coefficient dispatches on the order") {
    CHECK(jump_coefficient(jump(1.0), 2.0) == jump_coefficient_residues(jump(1.0), 2));
    CHECK(jump_coefficient(jump(1.0), 1.0) == jump_coefficient_branch_cut(jump(1.0), 1.0));
    CHECK(jump_coefficient(jump(1.0), 2.5) == jump_coefficient_branch_cut(jump(1.0), 2.5));
}

TEST_CASE("branch-cut regulator extrapolation") {
    // nu = 1 with the cut ending on the kernel branch point: the eps -> 0
    // value must match the direct evaluation.
    const double direct = branch_cut_integral(jump(2.0), 1.0, 0.0);
    const double extrap = jump_coefficient_branch_cut(jump(2.0), 1.0);
    CHECK(std::fabs(direct - extrap) < 1e-6);
    CHECK(branch_cut_integral(jump(2.0), 1.0, 1e-3) < direct);
}

TEST_CASE("weak-regime coefficient table") {
    CHECK(std::fabs(weak_regime_B(2, 2, 2, 1).total_B - 0.125) < 1e-12);
    CHECK(std::fabs(weak_regime_B(2, 1.5, 1.5, 1).total_B - 1.0 / 18) < 1e-12);
    CHECK(weak_regime_B(2, 1.5, 1.8, 1).total_B == 0.0);
    CHECK(weak_regime_B(3, 1.8, 1.5, 1).total_B == doctest::Approx(short_range_B(3)));
    const double hpi = -1 + std::pow(2.0, -0.5);
    const auto crit = weak_regime_B(1, 1.5, 1.8, hpi);
    CHECK(crit.total_B == doctest::Approx(1.0 / 6));
    REQUIRE(crit.per_jump.size() == 1);
    CHECK(crit.per_jump[0].first == doctest::Approx(kPi));
    CHECK(weak_regime_B(2, 1.5, 1.5, 0.3).total_B == 0.0);
    CHECK(weak_regime_B(2, 1.5, 1.5, 0.3).per_jump.empty());
    CHECK(weak_regime_B(1, 1.5, 1.5, 1).method == FHMethod::branch_cut_numeric);
    CHECK(method_name(FHMethod::residue_sum) == "residue_sum");
    CHECK_THROWS_AS(weak_regime_B(2, 2.5, 1.5, 1), DomainError);
    CHECK_THROWS_AS(weak_regime_B(0.5, 1.5, 1.5, 1), DomainError);
}

TEST_CASE("equal-exponent coefficient interpolates between 0 and the short-range value") {
    for (int nu : {2, 3}) {
        CHECK(B_nu_alpha(nu, 1.0) == 0.0);
        CHECK(B_nu_alpha(nu, 2.0) == doctest::Approx(short_range_B(nu)).epsilon(1e-14));
        double prev = 0;
        for (double a = 1.1; a <= 2.0; a += 0.1) {
            CHECK(B_nu_alpha(nu, a) > prev);
            prev = B_nu_alpha(nu, a);
        }
        CHECK(effective_central_charge(nu, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(effective_central_charge(nu, 1.0) == 0.0);
    }
    CHECK(effective_central_charge(2, 1.5) == doctest::Approx(2.0 / 9).epsilon(1e-13));
    // c_eff depends on nu away from the endpoints
    CHECK(effective_central_charge(2, 1.5) != doctest::Approx(effective_central_charge(3, 1.5)));
    CHECK_THROWS_AS(effective_central_charge(2, 0.5), DomainError);
}

TEST_CASE("explicit nu = 2 jump form") {
    const double h = 0.4, t0 = 0.3, d0 = 0.5, t1 = -0.2, d1 = 0.9;
    const double phi0 = -std::atan2(d0, h - t0), phi1 = -std::atan2(d1, h - t1);
    CHECK(B2_explicit(h, t0, d0, t1, d1) ==
          doctest::Approx(jump_coefficient_residues(jump(wrap_to_pi(phi1 - phi0)), 2)).epsilon(1e-13));
}

TEST_CASE("strong-regime coefficient") {
    const auto B = strong_regime_B(2, 0.75, 0.75, 0.5, 256);
    REQUIRE(B.per_jump.size() == 256);
    double sum = 0;
    for (const auto& [loc, v] : B.per_jump) {
        CHECK(v >= 0.0);
        sum += v;
    }
    CHECK(sum == doctest::Approx(B.total_B).epsilon(1e-14));
    CHECK(B.total_B > 0.01);
    // Noncritical h converges in N: doubling changes the total by < 1% from
    // N = 512 for alpha <= 1/2; alpha = 0.75 only gets there from N = 1024.
    for (double a : {0.25, 0.5, 0.75})
        for (double h : {0.5, 2.0}) {
            const int N0 = a > 0.5 ? 1024 : 512;
            double prev = strong_regime_B(2, a, a, h, N0).total_B;
            for (int N = 2 * N0; N <= 8192; N *= 2) {
                const double cur = strong_regime_B(2, a, a, h, N).total_B;
                CHECK(std::fabs(cur - prev) < 0.01 * prev);
                prev = cur;
            }
        }
    CHECK(strong_regime_B(3, 0.75, 0.75, 0.5, 256).total_B < B.total_B);
    CHECK_THROWS_AS(strong_regime_B(2, 0.5, 0.5, 1.0, 256), CriticalPointError);
    CHECK_THROWS_AS(strong_regime_B(2, 0.0, 0.0, 0.0, 64), CriticalPointError);
    CHECK_THROWS_AS(strong_regime_B(2, 1.5, 0.5, 0.5, 64), DomainError);
    CHECK_THROWS_AS(strong_regime_B(1, 0.5, 0.5, 0.5, 64), DomainError);
    const auto phi = strong_regime_phases(0.5, 0.5, 0.5, 64);
    CHECK(phi.size() == 64);
}

TEST_CASE("h = 0 coefficient grows with N below alpha = 1/2") {
    const double b1 = strong_regime_B(2, 0.25, 0.25, 0.0, 256).total_B;
    const double b2 = strong_regime_B(2, 0.25, 0.25, 0.0, 1024).total_B;
    CHECK(b2 > 1.3 * b1);
    // Local exponents climb towards 1 - 2 alpha from below.
    for (double a : {0.1, 0.25, 0.4}) {
        double prev_slope = 0.0, prev = strong_regime_B(2, a, a, 0.0, 512).total_B;
        for (int N = 1024; N <= 8192; N *= 2) {
            const double cur = strong_regime_B(2, a, a, 0.0, N).total_B;
            const double slope = std::log(cur / prev) / std::log(2.0);
            CHECK(slope > prev_slope);
            CHECK(slope < 1.0 - 2.0 * a);
            prev_slope = slope;
            prev = cur;
        }
    }
    // Over N = 2^9..2^13 the fitted exponent is within 0.1 only near alpha = 1/2.
    {
        std::vector<std::pair<double, double>> pts;
        for (int N = 512; N <= 8192; N *= 2) pts.emplace_back(N, strong_regime_B(2, 0.4, 0.4, 0.0, N).total_B);
        CHECK(std::fabs(fit_power_law_exponent(pts).exponent - 0.2) < 0.1);
    }
    const double c1 = strong_regime_B(2, 0.75, 0.75, 0.0, 256).total_B;
    const double c2 = strong_regime_B(2, 0.75, 0.75, 0.0, 1024).total_B;
    CHECK(std::fabs(c2 - c1) < 0.1 * c1);
}

TEST_CASE("single discontinuity approximation") {
    const double exact = strong_regime_B(2, 0.75, 0.75, 2.0, 1024).total_B;
    const double single = single_discontinuity_approx(2, 0.75, 2.0);
    CHECK(single > 0.0);
    CHECK(single < exact);
    CHECK(single > 0.5 * exact);
    CHECK_THROWS_AS(single_discontinuity_approx(2, 0.5, 1.0), CriticalPointError);
    CHECK_THROWS_AS(single_discontinuity_approx(2, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(single_discontinuity_approx(2, 1.2, 0.5), DomainError);
}

TEST_CASE("h = 0 exponent and expansion coefficients") {
    CHECK(h0_scaling_exponent(0.25) == doctest::Approx(0.5));
    CHECK(h0_scaling_exponent(0.75) == 0.0);
    CHECK_THROWS_AS(h0_scaling_exponent(0.5), DomainError);
    CHECK_THROWS_AS(h0_scaling_exponent(1.0), DomainError);
    const auto e = expansion_coefficients(0.5);
    CHECK(e.s == doctest::Approx(std::sin(kPi / 4) * std::tgamma(1.5) / std::sqrt(2 * kPi)));
    CHECK(e.c == doctest::Approx(e.s));
    CHECK(e.a == doctest::Approx(0.25 / kPi));
    CHECK(std::fabs(e.b) < 1e-17);
    CHECK_THROWS_AS(expansion_coefficients(0.0), DomainError);
}
