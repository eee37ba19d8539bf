#include "lrkitaev/specfun.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "lrkitaev/error.hpp"

namespace lrk {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2j} for j = 1..14
constexpr std::array<double, 14> kBernoulli = {
    1.0 / 6.0,          -1.0 / 30.0,       1.0 / 42.0,           -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0,   7.0 / 6.0,            -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0, 854513.0 / 138.0,     -236364091.0 / 2730.0,
    8553103.0 / 6.0,    -23749461029.0 / 870.0};

// Euler-Maclaurin with a fixed cut M = 20; valid for any real x != 1,
// accurate to roundoff once x >= 1/2.
double zeta_euler_maclaurin(double x) {
    constexpr int M = 20;
    double sum = 0.0;
    for (int n = M - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -x);
    const double Mx = std::pow(static_cast<double>(M), -x);
    sum += M * Mx / (x - 1.0) + 0.5 * Mx;
    // j-th correction: B_{2j}/(2j)! * x(x+1)...(x+2j-2) * M^{-x-2j+1}
    double rising = x;             // x(x+1)...(x+2j-2)
    double fact = 2.0;             // (2j)!
    double power = Mx / M;         // M^{-x-2j+1}
    for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
        const double term = kBernoulli[j - 1] / fact * rising * power;
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
        rising *= (x + 2.0 * j - 1.0) * (x + 2.0 * j);
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        power /= static_cast<double>(M) * M;
    }
    return sum;
}

bool is_negative_even_integer(double x) {
    return x < 0.0 && x == std::floor(x) && std::fmod(x, 2.0) == 0.0;
}

double zeta_uncached(double x) {
    if (x == 1.0) throw DomainError("zeta: pole at x = 1");
    if (x == 0.0) return -0.5;
    if (x >= 0.5) return zeta_euler_maclaurin(x);
    if (is_negative_even_integer(x)) return 0.0;
    // Functional equation; sin(pi x / 2) evaluated after exact reduction mod 4.
    const double y = 1.0 - x;
    const double r = std::fmod(x, 4.0);
    const double sine = std::sin(kPi * r / 2.0);
    const double logmag = x * std::log(2.0) + (x - 1.0) * std::log(kPi) + std::lgamma(y);
    return std::exp(logmag) * sine * zeta_euler_maclaurin(y);
}

class ZetaCache {
public:
    double get(double x) {
        const auto key = std::bit_cast<std::uint64_t>(x);
        {
            std::shared_lock lock(mutex_);
            auto it = values_.find(key);
            if (it != values_.end()) return it->second;
        }
        const double v = zeta_uncached(x);
        std::unique_lock lock(mutex_);
        values_.emplace(key, v);
        return v;
    }

private:
    std::shared_mutex mutex_;
    std::unordered_map<std::uint64_t, double> values_;
};

ZetaCache& zeta_cache() {
    static ZetaCache cache;
    return cache;
}

double reduce_angle(double k) {
    double r = std::remainder(k, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

struct SeriesResult {
    std::complex<double> value;
    double err;
};

// Li_s(e^{mu}), mu = i k, k != 0, from
//   Gamma(1-s)(-mu)^{s-1} + sum_n zeta(s-n) mu^n / n!     (s not an integer)
//   mu^{m-1}/(m-1)! [H_{m-1} - ln(-mu)] + sum_{n != m-1} ...  (s = m integer)
SeriesResult polylog_series(double s, double k, const PolylogOptions& opts) {
    const std::complex<double> mu(0.0, k);
    const double sgn = k > 0 ? 1.0 : -1.0;
    const double ak = std::fabs(k);
    const bool integer_s = (s == std::floor(s));
    const long m = integer_s ? static_cast<long>(s) : 0;

    std::complex<double> sum(0.0, 0.0);
    double abs_sum = 0.0;
    if (!integer_s) {
        const std::complex<double> phase = std::polar(1.0, -kPi * (s - 1.0) / 2.0 * sgn);
        const std::complex<double> lead = std::tgamma(1.0 - s) * std::pow(ak, s - 1.0) * phase;
        sum += lead;
        abs_sum += std::abs(lead);
    }

    std::complex<double> mu_pow(1.0, 0.0);  // mu^n / n!
    double last = 0.0;
    int small_run = 0;
    int n = 0;
    for (; n < opts.max_terms; ++n) {
        if (n > 0) mu_pow *= mu / static_cast<double>(n);
        std::complex<double> term;
        if (integer_s && n == m - 1) {
            double harmonic = 0.0;
            for (long j = 1; j <= m - 1; ++j) harmonic += 1.0 / static_cast<double>(j);
            const std::complex<double> log_neg_mu(std::log(ak), -kPi / 2.0 * sgn);
            term = mu_pow * (harmonic - log_neg_mu);
        } else {
            term = zeta_cache().get(s - n) * mu_pow;
        }
        sum += term;
        const double t = std::abs(term);
        abs_sum += t;
        last = t;
        if (n > s + 2 && t <= 1e-17 * std::max(1.0, std::abs(sum))) {
            if (++small_run >= 2) break;
        } else {
            small_run = 0;
        }
    }
    if (n >= opts.max_terms)
        throw ConvergenceError("polylog: series length exhausted before convergence");
    return {sum, 2.0 * last + 4e-16 * abs_sum};
}

std::complex<double> lagrange(const double* xs, const std::complex<double>* ys, int count,
                              double x) {
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < count; ++i) {
        double basis = 1.0;
        for (int j = 0; j < count; ++j)
            if (j != i) basis *= (x - xs[j]) / (xs[i] - xs[j]);
        acc += basis * ys[i];
    }
    return acc;
}

PolylogValue polylog_kernel(double s, double k, const PolylogOptions& opts) {
    k = reduce_angle(k);
    if (k == 0.0) return {riemann_zeta(s), 0.0, 1e-13};
    if (k == kPi) {
        // Li_s(-1) = -(1 - 2^{1-s}) zeta(s)
        return {-(1.0 - std::pow(2.0, 1.0 - s)) * riemann_zeta(s), 0.0, 1e-13};
    }
    if (s > 40.0) {
        // Direct sum; terms beyond r = 64 are below 64^{-40}.
        std::complex<double> acc(0.0, 0.0);
        for (int r = 64; r >= 1; --r) acc += std::polar(std::pow(r, -s), k * r);
        return {acc.real(), acc.imag(), 1e-16};
    }

    const double m = std::round(s);
    constexpr double d = 1e-3;
    SeriesResult res;
    if (s != m && std::fabs(s - m) < d) {
        // Pole cancellation between Gamma(1-s) and zeta(s-m+1) near integers:
        // interpolate in s through the exact integer value.
        const double xs[5] = {m - 2 * d, m - d, m, m + d, m + 2 * d};
        std::complex<double> ys[5];
        double node_err = 0.0;
        for (int i = 0; i < 5; ++i) {
            auto r = polylog_series(xs[i], k, opts);
            ys[i] = r.value;
            node_err = std::max(node_err, r.err);
        }
        const double inner[3] = {xs[1], xs[2], xs[3]};
        const std::complex<double> inner_y[3] = {ys[1], ys[2], ys[3]};
        const auto p4 = lagrange(xs, ys, 5, s);
        const auto p2 = lagrange(inner, inner_y, 3, s);
        res = {p4, 4.0 * node_err + std::abs(p4 - p2) * 1e-2};
    } else {
        res = polylog_series(s, k, opts);
    }
    if (res.err > opts.tolerance)
        throw ConvergenceError("polylog: error estimate above tolerance");
    return {res.value.real(), res.value.imag(), res.err};
}

}  // namespace

double zeta_real(double x) { return zeta_cache().get(x); }

double riemann_zeta(double s) {
    if (!(s > 1.0)) throw DomainError("riemann_zeta requires s > 1");
    return zeta_cache().get(s);
}

PolylogValue polylog_unit_circle(double s, double k, const PolylogOptions& opts) {
    if (!(s > 1.0 && s < 3.0)) throw DomainError("polylog_unit_circle requires s in (1,3)");
    if (!std::isfinite(k)) throw DomainError("polylog_unit_circle: non-finite angle");
    return polylog_kernel(s, k, opts);
}

PolylogValue polylog_unit_circle_ext(double s, double k, const PolylogOptions& opts) {
    if (!(s > 1.0)) throw DomainError("polylog_unit_circle_ext requires s > 1");
    if (!std::isfinite(k)) throw DomainError("polylog_unit_circle_ext: non-finite angle");
    return polylog_kernel(s, k, opts);
}

namespace detail {

const GaussLegendre64& gauss_legendre_64() {
    static const GaussLegendre64 rule = [] {
        GaussLegendre64 g{};
        constexpr int n = 64;
        for (int i = 0; i < n / 2; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            g.x[i] = -x;
            g.w[i] = w;
            g.x[n - 1 - i] = x;
            g.w[n - 1 - i] = w;
        }
        return g;
    }();
    return rule;
}

namespace {

template <class F>
std::complex<double> gl_panel(F& f, double a, double b) {
    const auto& g = gauss_legendre_64();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < 64; ++i) acc += g.w[i] * f(c + h * g.x[i]);
    return acc * h;
}

template <class F>
std::complex<double> adaptive(F& f, double a, double b, std::complex<double> whole, double tol,
                              int depth) {
    const double mid = 0.5 * (a + b);
    const auto left = gl_panel(f, a, mid);
    const auto right = gl_panel(f, mid, b);
    if (std::abs(left + right - whole) <= tol) return left + right;
    if (depth >= 40) throw ConvergenceError("strong-range quadrature: bisection depth exhausted");
    return adaptive(f, a, mid, left, tol, depth + 1) + adaptive(f, mid, b, right, tol, depth + 1);
}

double strong_prefactor(double alpha) { return (1.0 - alpha) * std::pow(2.0, 1.0 - alpha); }

}  // namespace

std::complex<double> strong_range_quadrature(double alpha, long n, double panel_tol) {
    // u = s^{1-a} removes the endpoint singularity:
    // int_0^{1/2} e^{i w s} s^{-a} ds = 1/(1-a) int_0^{U} e^{i w u^{1/(1-a)}} du
    const double p = 1.0 / (1.0 - alpha);
    const double U = std::pow(0.5, 1.0 - alpha);
    const double w = 2.0 * kPi * static_cast<double>(n);
    auto f = [&](double u) { return std::polar(p, w * std::pow(u, p)); };
    const long panels = std::max(1L, (std::labs(n) + 3) / 4);
    std::complex<double> total(0.0, 0.0);
    for (long i = 0; i < panels; ++i) {
        const double a = U * static_cast<double>(i) / panels;
        const double b = U * static_cast<double>(i + 1) / panels;
        total += adaptive(f, a, b, gl_panel(f, a, b), panel_tol, 0);
    }
    return strong_prefactor(alpha) * total;
}

std::complex<double> strong_range_asymptotic(double alpha, long n) {
    // int_0^X = Gamma(1-a)(-i w)^{a-1} - int_X^inf, with the tail expanded by
    // repeated integration by parts: -e^{i w X} sum_j (a)_j X^{-a-j} / (i w)^{j+1}
    const double X = 0.5;
    const double w = 2.0 * kPi * static_cast<double>(n);
    const std::complex<double> full =
        std::tgamma(1.0 - alpha) * std::pow(w, alpha - 1.0) * std::polar(1.0, kPi * (1.0 - alpha) / 2.0);
    const std::complex<double> iw(0.0, w);
    std::complex<double> term = std::pow(X, -alpha) / iw;
    std::complex<double> series(0.0, 0.0);
    double prev = std::abs(term);
    bool converged = false;
    for (int j = 0; j < 200; ++j) {
        series += term;
        const double t = std::abs(term);
        if (t < 1e-18 * std::abs(full)) {
            converged = true;
            break;
        }
        if (j > 0 && t > prev) break;
        prev = t;
        term *= (alpha + j) / (X * iw);
    }
    if (!converged && prev > 1e-14)
        throw ConvergenceError("strong-range asymptotic tail did not converge");
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;  // e^{i w X} = (-1)^n
    const std::complex<double> tail = -sign * series;
    return strong_prefactor(alpha) * (full - tail);
}

std::complex<double> strong_range_integral(double alpha, long n) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw DomainError("strong-range integrals require 0 <= alpha < 1");
    if (n < 0) return std::conj(strong_range_integral(alpha, -n));
    if (n == 0) return {1.0, 0.0};
    if (alpha == 0.0) return {0.0, (n % 2 == 1) ? 2.0 / (kPi * static_cast<double>(n)) : 0.0};
    if (n >= kStrongAsymptoticThreshold) return strong_range_asymptotic(alpha, n);
    return strong_range_quadrature(alpha, n);
}

}  // namespace detail

double strong_range_hopping_integral(double alpha, long n) {
    return detail::strong_range_integral(alpha, n).real();
}

double strong_range_pairing_integral(double alpha, long n) {
    return detail::strong_range_integral(alpha, n).imag();
}

}  // namespace lrk
