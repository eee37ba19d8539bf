#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

namespace lrk {

// A jump of the vacuum-like symbol a (cos phi sigma_z + sin phi sigma_y) + b I.
struct Discontinuity {
    double location_k = 0.0;
    double a = 1.0;
    double b = 0.0;
    double delta_phi = 0.0;  // phi+ - phi-, wrapped to (-pi, pi]
};

enum class FHMethod { residue_sum, branch_cut_numeric, closed_form };
std::string_view method_name(FHMethod m);

struct FHCoefficient {
    double nu = 2.0;
    double total_B = 0.0;
    std::vector<std::pair<double, double>> per_jump;  // (location, contribution)
    FHMethod method = FHMethod::residue_sum;
};

double wrap_to_pi(double x);

// Integer nu >= 2, general (a, b).
double jump_coefficient_residues(const Discontinuity& d, int nu);

struct BranchCutOptions {
    double quad_tol = 1e-10;
    std::array<double, 3> eps = {1e-3, 1e-4, 1e-5};
    double agreement_tol = 1e-6;  // extrapolated vs direct eps = 0 evaluation
};

// Contour integral along the two real cuts of the entropy kernel, limit
// eps -> 0 taken by three-point extrapolation; nu >= 1.
double jump_coefficient_branch_cut(const Discontinuity& d, double nu,
                                   const BranchCutOptions& opts = {});

// The cut integral at a single regulator value (eps may be 0).
double branch_cut_integral(const Discontinuity& d, double nu, double eps, double quad_tol = 1e-10);

// Jump coefficient for any nu >= 1: residues for integer nu >= 2, cuts otherwise.
double jump_coefficient(const Discontinuity& d, double nu);

// Equal-exponent coefficient at h = 1: symbol jump of pi (1 - alpha).
double B_nu_alpha(double nu, double alpha);

// (nu+1)/(12 nu)
double short_range_B(double nu);

FHCoefficient weak_regime_B(double nu, double alpha1, double alpha2, double h);

double effective_central_charge(double nu, double alpha);

// phi_n of the thermodynamic strong-regime couplings, n = -N/2+1 .. N/2.
std::vector<double> strong_regime_phases(double alpha1, double alpha2, double h, int N);

FHCoefficient strong_regime_B(int nu, double alpha1, double alpha2, double h, int N);

// nu = 2 jump between neighbouring modes written directly in couplings.
double B2_explicit(double h, double t0, double d0, double t1, double d1);

double single_discontinuity_approx(int nu, double alpha, double h);

double h0_scaling_exponent(double alpha);

struct ExpansionCoefficients {
    double s = 0.0;  // sin(a pi/2) Gamma(2-a) (2 pi)^{a-1}
    double c = 0.0;  // cos(a pi/2) Gamma(2-a) (2 pi)^{a-1}
    double a = 0.0;  // (1-a)/(2 pi)
    double b = 0.0;  // n^{-2} coefficient of Omega_{2n+1} Omega_{2n}
};
ExpansionCoefficients expansion_coefficients(double alpha);

}  // namespace lrk
