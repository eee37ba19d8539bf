#pragma once

#include <complex>

namespace lrk {

struct PolylogValue {
    double real_part = 0.0;
    double imag_part = 0.0;
    double abs_err_estimate = 0.0;
};

struct PolylogOptions {
    int max_terms = 120;       // length of the zeta-weighted power series
    double tolerance = 1e-10;  // required bound on abs_err_estimate
};

// Riemann zeta for s > 1, absolute error below 1e-13. Values are cached.
double riemann_zeta(double s);

// Zeta on the whole real line except the pole at x = 1.
double zeta_real(double x);

// Li_s(e^{ik}) for s in (1,3) and k in (-pi, pi] (k is reduced modulo 2 pi).
PolylogValue polylog_unit_circle(double s, double k, const PolylogOptions& opts = {});

// Same kernel without the (1,3) restriction on s; accepts any s > 1.
// Used by the thermodynamic couplings, which allow arbitrary exponents above 1.
PolylogValue polylog_unit_circle_ext(double s, double k, const PolylogOptions& opts = {});

// c_a * int_0^{1/2} cos(2 pi n s) s^{-a} ds with c_a = (1-a) 2^{1-a}, 0 <= a < 1.
double strong_range_hopping_integral(double alpha, long n);

// Same with sin(2 pi n s).
double strong_range_pairing_integral(double alpha, long n);

namespace detail {

// c_a * int_0^{1/2} exp(2 pi i n s) s^{-a} ds; real part is the hopping
// integral and imaginary part the pairing integral. n >= 0.
std::complex<double> strong_range_integral(double alpha, long n);

// The two evaluation paths, exposed so tests can compare them.
std::complex<double> strong_range_quadrature(double alpha, long n, double panel_tol = 1e-12);
std::complex<double> strong_range_asymptotic(double alpha, long n);

// n at and above which the asymptotic path is used.
inline constexpr long kStrongAsymptoticThreshold = 32;

// Gauss-Legendre 64-point rule on [-1, 1].
struct GaussLegendre64 {
    double x[64];
    double w[64];
};
const GaussLegendre64& gauss_legendre_64();

}  // namespace detail

}  // namespace lrk
