#include "lrkitaev/asymptotics.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "lrkitaev/error.hpp"
#include "lrkitaev/specfun.hpp"

namespace lrk {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

bool is_integer(double x) { return x == std::floor(x); }

void check_symbol(const Discontinuity& d) {
    if (!(d.a >= 0.0) || std::fabs(d.b) + d.a > 1.0 + 1e-12)
        throw DomainError("jump requires a >= 0 and |b| + a <= 1");
}

// |z_l| = tan(pi (2l-1) / (2 nu)), l = 1..nu, skipping the pole at infinity.
std::vector<double> pole_heights(int nu) {
    std::vector<double> y;
    for (int l = 1; l <= nu; ++l) {
        if (2 * l == 1 + nu) continue;
        y.push_back(std::tan(kPi * (2.0 * l - 1.0) / (2.0 * nu)));
    }
    return y;
}

// (z - beta) sqrt(1 - c^2/(z - beta)^2): analytic off the segment [beta-c, beta+c]
cd cut_root(cd z, double beta, double c) {
    const cd w = z - beta;
    return w * std::sqrt(1.0 - (c * c) / (w * w));
}

// d/dx of the kernel s_nu(1+eps, x) up to the 1/2 of the trace formula.
// P = (1+eps+x)/2 and Q = (1+eps-x)/2 are passed in directly so callers can
// keep the small one accurate near the branch points.
double kernel_derivative(double nu, double P, double Q) {
    if (nu == 1.0) return 0.25 * std::log(Q / P);
    return nu / (4.0 * (1.0 - nu)) * (std::pow(P, nu - 1.0) - std::pow(Q, nu - 1.0)) /
           (std::pow(P, nu) + std::pow(Q, nu));
}

}  // namespace

std::string_view method_name(FHMethod m) {
    switch (m) {
        case FHMethod::residue_sum: return "residue_sum";
        case FHMethod::branch_cut_numeric: return "branch_cut_numeric";
        case FHMethod::closed_form: return "closed_form";
    }
    return "unknown";
}

double wrap_to_pi(double x) {
    double r = std::remainder(x, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

double jump_coefficient_residues(const Discontinuity& d, int nu) {
    if (nu < 2) throw DomainError("residue path needs integer nu >= 2; use the branch-cut path");
    check_symbol(d);
    const double half = wrap_to_pi(d.delta_phi) / 2.0;
    if (d.a == 0.0 || std::sin(half) == 0.0) return 0.0;
    const double c = d.a * std::fabs(std::cos(half));
    const double s = d.a * std::fabs(std::sin(half));
    cd acc(0.0, 0.0);
    for (double y : pole_heights(nu)) {
        const cd z(0.0, y);
        const cd ratio = (cut_root(z, d.b, c) + s) / cut_root(z, d.b, d.a);
        const cd lg = std::log(ratio);
        acc += lg * lg;
    }
    const double B = -acc.real() / (kPi * kPi * (nu - 1.0));
    return std::max(0.0, B);
}

double branch_cut_integral(const Discontinuity& d, double nu, double eps, double quad_tol) {
    check_symbol(d);
    const double half = wrap_to_pi(d.delta_phi) / 2.0;
    const double a = d.a, beta = d.b;
    const double c = a * std::fabs(std::cos(half));
    const double s = a * std::fabs(std::sin(half));
    if (a == 0.0 || s == 0.0) return 0.0;
    const double gap_plus = std::max(0.0, 1.0 - beta - a);
    const double gap_minus = std::max(0.0, 1.0 + beta - a);

    // xc is the signed distance to the nearer endpoint (negative on the left).
    auto integrand = [&](double u, double xc) {
        double left = u - c, right = a - u;
        if (xc < 0) left = -xc;
        else if (xc > 0) right = xc;
        if (left <= 0.0 || right <= 0.0) return 0.0;
        // x = beta + u
        const double P1 = 0.5 * (1.0 + eps + beta + u);
        const double Q1 = 0.5 * (eps + gap_plus + right);
        // x = beta - u
        const double P2 = 0.5 * (eps + gap_minus + right);
        const double Q2 = 0.5 * (1.0 + eps - beta + u);
        const double de = kernel_derivative(nu, P2, Q2) - kernel_derivative(nu, P1, Q1);
        const double log_rho =
            std::log(std::sqrt(left * (u + c)) + s) - 0.5 * std::log(right * (a + u));
        return de * log_rho;
    };
    boost::math::quadrature::tanh_sinh<double> integrator(15);
    double err = 0.0;
    const double val = integrator.integrate(integrand, c, a, quad_tol, &err);
    if (!std::isfinite(val)) throw ConvergenceError("branch-cut quadrature produced a non-finite value");
    return 2.0 / (kPi * kPi) * val;
}

double jump_coefficient_branch_cut(const Discontinuity& d, double nu, const BranchCutOptions& opts) {
    if (!(nu >= 1.0)) throw DomainError("Renyi order must be >= 1");
    check_symbol(d);
    const double half = wrap_to_pi(d.delta_phi) / 2.0;
    if (d.a == 0.0 || std::sin(half) == 0.0) return 0.0;

    double I[3];
    for (int i = 0; i < 3; ++i) I[i] = branch_cut_integral(d, nu, opts.eps[i], opts.quad_tol);

    // For nu = 1 with the cut touching the kernel branch point, the regulator
    // enters as eps ln^2 eps; otherwise the dependence is analytic in eps.
    const bool log_model =
        nu == 1.0 && (1.0 - std::fabs(d.b) - d.a) < 1e-12;
    double extrapolated;
    {
        double A[3][3], rhs[3];
        for (int i = 0; i < 3; ++i) {
            const double e = opts.eps[i], le = std::log(e);
            A[i][0] = 1.0;
            A[i][1] = log_model ? e * le * le : e;
            A[i][2] = log_model ? e * le : e * e;
            rhs[i] = I[i];
        }
        // Gaussian elimination with partial pivoting on the 3x3 system.
        for (int col = 0; col < 3; ++col) {
            int piv = col;
            for (int r = col + 1; r < 3; ++r)
                if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
            std::swap(A[col], A[piv]);
            std::swap(rhs[col], rhs[piv]);
            for (int r = col + 1; r < 3; ++r) {
                const double f = A[r][col] / A[col][col];
                for (int k = col; k < 3; ++k) A[r][k] -= f * A[col][k];
                rhs[r] -= f * rhs[col];
            }
        }
        double x[3];
        for (int r = 2; r >= 0; --r) {
            double acc = rhs[r];
            for (int k = r + 1; k < 3; ++k) acc -= A[r][k] * x[k];
            x[r] = acc / A[r][r];
        }
        extrapolated = x[0];
    }
    const double direct = branch_cut_integral(d, nu, 0.0, opts.quad_tol);
    if (std::fabs(extrapolated - direct) > opts.agreement_tol)
        throw ConvergenceError("branch-cut eps extrapolation disagrees with the eps = 0 value by " +
                               std::to_string(std::fabs(extrapolated - direct)));
    return std::max(0.0, extrapolated);
}

double jump_coefficient(const Discontinuity& d, double nu) {
    if (nu >= 2.0 && is_integer(nu)) return jump_coefficient_residues(d, static_cast<int>(nu));
    return jump_coefficient_branch_cut(d, nu);
}

double short_range_B(double nu) { return (nu + 1.0) / (12.0 * nu); }

double B_nu_alpha(double nu, double alpha) {
    Discontinuity d;
    d.delta_phi = kPi * (1.0 - alpha);
    return jump_coefficient(d, nu);
}

FHCoefficient weak_regime_B(double nu, double alpha1, double alpha2, double h) {
    auto inside = [](double a) { return a >= 1.0 && a <= 2.0; };
    if (!inside(alpha1) || !inside(alpha2))
        throw DomainError("weak-regime table requires 1 <= alpha1, alpha2 <= 2");
    if (!(nu >= 1.0)) throw DomainError("Renyi order must be >= 1");
    FHCoefficient out;
    out.nu = nu;
    out.method = FHMethod::closed_form;
    const double h_pi = -1.0 + std::pow(2.0, 1.0 - alpha1);
    if (std::fabs(h - 1.0) < 1e-12) {
        double B = 0.0;
        if (alpha1 > alpha2) {
            B = short_range_B(nu);
        } else if (alpha1 == alpha2) {
            B = B_nu_alpha(nu, alpha1);
            if (!(nu >= 2.0 && is_integer(nu))) out.method = FHMethod::branch_cut_numeric;
        }
        out.per_jump.emplace_back(0.0, B);
        out.total_B = B;
    } else if (std::fabs(h - h_pi) < 1e-12) {
        out.total_B = short_range_B(nu);
        out.per_jump.emplace_back(kPi, out.total_B);
    }
    return out;
}

double effective_central_charge(double nu, double alpha) {
    if (!(alpha >= 1.0 && alpha <= 2.0)) throw DomainError("effective central charge needs 1 <= alpha <= 2");
    return 6.0 * nu * B_nu_alpha(nu, alpha) / (nu + 1.0);
}

namespace {

struct StrongModes {
    std::vector<double> t, d, phi;
};

StrongModes strong_modes(double alpha1, double alpha2, double h, int N) {
    auto inside = [](double a) { return a >= 0.0 && a < 1.0; };
    if (!inside(alpha1) || !inside(alpha2))
        throw DomainError("strong regime requires 0 <= alpha1, alpha2 < 1");
    if (N < 4 || N % 2 != 0) throw DomainError("N must be even and >= 4");
    StrongModes m;
    m.t.resize(N);
    m.d.resize(N);
    m.phi.resize(N);
    const int n0 = -N / 2 + 1;
    for (int i = 0; i < N; ++i) {
        const int n = n0 + i;
        m.t[i] = strong_range_hopping_integral(alpha1, n);
        m.d[i] = strong_range_pairing_integral(alpha2, n);
        const double x = h - m.t[i];
        if (2.0 * std::hypot(x, m.d[i]) <= 1e-12)
            throw CriticalPointError("mode n=" + std::to_string(n) + " is gapless; phi undefined");
        m.phi[i] = -std::atan2(m.d[i], x);
    }
    return m;
}

}  // namespace

std::vector<double> strong_regime_phases(double alpha1, double alpha2, double h, int N) {
    return strong_modes(alpha1, alpha2, h, N).phi;
}

double B2_explicit(double h, double t0, double d0, double t1, double d1) {
    const double O0 = std::hypot(h - t0, d0), O1 = std::hypot(h - t1, d1);
    const double x = (h - t1) * (h - t0) + d1 * d0;
    const double ratio = std::max(0.0, (O1 * O0 - x) / (3.0 * O1 * O0 + x));
    const double at = std::atan(std::sqrt(ratio));
    return 2.0 / (kPi * kPi) * at * at;
}

FHCoefficient strong_regime_B(int nu, double alpha1, double alpha2, double h, int N) {
    if (nu < 2) throw DomainError("strong_regime_B needs integer nu >= 2");
    const StrongModes m = strong_modes(alpha1, alpha2, h, N);
    FHCoefficient out;
    out.nu = nu;
    out.method = FHMethod::residue_sum;
    out.per_jump.reserve(N);
    const int n0 = -N / 2 + 1;
    double total = 0.0;
    for (int i = 0; i < N; ++i) {
        const int j = (i + 1) % N;
        Discontinuity d;
        d.location_k = n0 + i;
        d.delta_phi = wrap_to_pi(m.phi[j] - m.phi[i]);
        const double B = jump_coefficient_residues(d, nu);
        if (nu == 2) {
            const double check = B2_explicit(h, m.t[i], m.d[i], m.t[j], m.d[j]);
            if (std::fabs(check - B) > 1e-10)
                throw NumericalError("strong-regime jump disagrees with the explicit nu=2 form");
        }
        out.per_jump.emplace_back(d.location_k, B);
        total += B;
    }
    out.total_B = total;
    return out;
}

double single_discontinuity_approx(int nu, double alpha, double h) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("single discontinuity needs 0 <= alpha < 1");
    if (h == 0.0) throw DomainError("single discontinuity approximation excludes h = 0");
    if (std::fabs(h - 1.0) < 1e-12) throw CriticalPointError("phi_0 undefined at h = 1");
    const double phi0 = h < 1.0 ? kPi : 0.0;
    const double t1 = strong_range_hopping_integral(alpha, 1);
    const double d1 = strong_range_pairing_integral(alpha, 1);
    const double phi1 = -std::atan2(d1, h - t1);
    Discontinuity d;
    d.delta_phi = wrap_to_pi(phi1 - phi0);
    return 2.0 * jump_coefficient_residues(d, nu);
}

double h0_scaling_exponent(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("h = 0 exponent needs 0 < alpha < 1");
    if (std::fabs(alpha - 0.5) < 1e-12) throw DomainError("alpha = 1/2 is marginal");
    return alpha < 0.5 ? 1.0 - 2.0 * alpha : 0.0;
}

ExpansionCoefficients expansion_coefficients(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("expansion coefficients need 0 < alpha < 1");
    ExpansionCoefficients e;
    const double common = std::tgamma(2.0 - alpha) * std::pow(2.0 * kPi, alpha - 1.0);
    e.s = std::sin(alpha * kPi / 2.0) * common;
    e.c = std::cos(alpha * kPi / 2.0) * common;
    e.a = (1.0 - alpha) / (2.0 * kPi);
    // From the product of the two asymptotic series: the cross terms of order
    // n^{-2} combine to -a^2 cos(alpha pi).
    e.b = -e.a * e.a * std::cos(alpha * kPi);
    return e;
}

}  // namespace lrk
