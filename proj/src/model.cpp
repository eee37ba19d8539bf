#include "lrkitaev/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lrkitaev/error.hpp"
#include "lrkitaev/kernels.hpp"
#include "lrkitaev/parallel.hpp"
#include "lrkitaev/specfun.hpp"

namespace lrk {

namespace {

constexpr double kPi = std::numbers::pi;

double reverse_power_sum(double alpha, int last) {
    double s = 0.0;
    for (int r = last; r >= 1; --r) s += std::pow(static_cast<double>(r), -alpha);
    return s;
}

// Finite-N Kac-normalised Fourier sums evaluated against shared tables.
struct FiniteSums {
    kernels::TrigTable table;
    std::vector<double> w1, w2;  // r^{-alpha}/norm for r = 1..N/2-1

    explicit FiniteSums(const ChainParams& p) : table(kernels::make_trig_table(p.N)) {
        const int R = p.N / 2 - 1;
        w1.resize(R);
        w2.resize(R);
        const double n1 = coupling_norm(p.alpha1, p.N);
        const double n2 = coupling_norm(p.alpha2, p.N);
        for (int r = 1; r <= R; ++r) {
            w1[r - 1] = std::pow(static_cast<double>(r), -p.alpha1) / n1;
            w2[r - 1] = std::pow(static_cast<double>(r), -p.alpha2) / n2;
        }
    }

    std::pair<double, double> at(int N, int n) const {
        const int j = ((n % N) + N) % N;
        if (j == 0) return {1.0, 0.0};
        const double t = kernels::modular_dot(table.cos.data(), table.n, w1.data(), w1.size(),
                                              static_cast<std::uint64_t>(j), 1);
        double d = kernels::modular_dot(table.sin.data(), table.n, w2.data(), w2.size(),
                                        static_cast<std::uint64_t>(j), 1);
        if (2 * j == N) d = 0.0;
        return {t, d};
    }
};

double thermo_hopping(double alpha, int n, int N) {
    if (alpha > 1.0) {
        const double k = 2.0 * kPi * n / N;
        return polylog_unit_circle_ext(alpha, k).real_part / riemann_zeta(alpha);
    }
    return strong_range_hopping_integral(alpha, n);
}

double thermo_pairing(double alpha, int n, int N) {
    if (alpha > 1.0) {
        const double k = 2.0 * kPi * n / N;
        return polylog_unit_circle_ext(alpha, k).imag_part / riemann_zeta(alpha);
    }
    return strong_range_pairing_integral(alpha, n);
}

ModeData make_mode(const ChainParams& p, int n, double t, double d) {
    ModeData m;
    m.index_n = n;
    m.k = 2.0 * kPi * n / p.N;
    m.t_tilde = t;
    m.delta_tilde = d;
    m.omega = 2.0 * std::hypot(p.h - t, d);
    m.f = 0.0;
    if (m.omega <= kGaplessOmega) {
        m.gapless = true;
        m.f_given = false;
        m.theta = 0.0;
        m.phi = 0.0;
    } else {
        m.theta = std::atan2(d, p.h - t);
        m.phi = -m.theta;
    }
    return m;
}

void check_mode_index(const ChainParams& p, int n) {
    if (n <= -p.N / 2 || n > p.N / 2)
        throw DomainError("mode index " + std::to_string(n) + " outside (-N/2, N/2]");
}

double wrap_angle(double x) {
    double r = std::remainder(x, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

}  // namespace

void ChainParams::validate() const {
    if (N < 4 || N % 2 != 0) throw ConfigError("N must be even and >= 4");
    if (!(std::isfinite(alpha1) && alpha1 >= 0.0)) throw ConfigError("alpha1 must be >= 0");
    if (!(std::isfinite(alpha2) && alpha2 >= 0.0)) throw ConfigError("alpha2 must be >= 0");
    if (!std::isfinite(h)) throw ConfigError("h must be finite");
    if (thermodynamic && (alpha1 == 1.0 || alpha2 == 1.0))
        throw ConfigError("thermodynamic limit at alpha = 1 (marginal case) is not supported");
}

double kac_norm(double alpha, int N) {
    if (N < 2 || N % 2 != 0) throw DomainError("kac_norm requires an even N >= 2");
    return reverse_power_sum(alpha, N / 2);
}

double coupling_norm(double alpha, int N) {
    if (N < 4 || N % 2 != 0) throw DomainError("coupling_norm requires an even N >= 4");
    return reverse_power_sum(alpha, N / 2 - 1);
}

std::pair<double, double> coupling_amplitudes(const ChainParams& p, int n) {
    p.validate();
    check_mode_index(p, n);
    if (p.thermodynamic)
        return {thermo_hopping(p.alpha1, n, p.N), thermo_pairing(p.alpha2, n, p.N)};
    return FiniteSums(p).at(p.N, n);
}

ModeData couplings_at_mode(const ChainParams& p, int n) {
    const auto [t, d] = coupling_amplitudes(p, n);
    return make_mode(p, n, t, d);
}

std::vector<ModeData> spectrum(const ChainParams& p) {
    p.validate();
    std::vector<ModeData> modes(p.N);
    const int n0 = -p.N / 2 + 1;
    if (p.thermodynamic) {
        parallel_for(modes.size(), [&](std::size_t i) {
            const int n = n0 + static_cast<int>(i);
            modes[i] = make_mode(p, n, thermo_hopping(p.alpha1, n, p.N),
                                 thermo_pairing(p.alpha2, n, p.N));
        });
    } else {
        const FiniteSums sums(p);
        // Only n >= 0 is summed; parity supplies the rest exactly.
        const std::size_t half = static_cast<std::size_t>(p.N / 2) + 1;
        std::vector<std::pair<double, double>> amp(half);
        parallel_for(half, [&](std::size_t n) { amp[n] = sums.at(p.N, static_cast<int>(n)); });
        for (std::size_t i = 0; i < modes.size(); ++i) {
            const int n = n0 + static_cast<int>(i);
            const auto [t, d] = amp[static_cast<std::size_t>(std::abs(n))];
            modes[i] = make_mode(p, n, t, n < 0 ? -d : d);
        }
    }
    return modes;
}

std::pair<double, double> thermodynamic_amplitudes_at_k(double alpha1, double alpha2, double k) {
    if (!(alpha1 > 1.0 && alpha2 > 1.0))
        throw DomainError("continuous-momentum amplitudes require alpha1, alpha2 > 1");
    const double t = polylog_unit_circle_ext(alpha1, k).real_part / riemann_zeta(alpha1);
    const double d = polylog_unit_circle_ext(alpha2, k).imag_part / riemann_zeta(alpha2);
    return {t, d};
}

double t_tilde_zero(const ChainParams& p) {
    p.validate();
    return 1.0;
}

double t_tilde_pi(const ChainParams& p) {
    p.validate();
    if (p.thermodynamic) {
        if (p.alpha1 > 1.0) return -1.0 + std::pow(2.0, 1.0 - p.alpha1);
        return 0.0;
    }
    // cos(pi r) = (-1)^r
    double s = 0.0;
    for (int r = p.N / 2 - 1; r >= 1; --r)
        s += ((r % 2 == 0) ? 1.0 : -1.0) * std::pow(static_cast<double>(r), -p.alpha1);
    return s / coupling_norm(p.alpha1, p.N);
}

int winding_number(const ChainParams& p) {
    p.validate();
    if (!(p.alpha1 > 1.0 && p.alpha2 > 1.0))
        throw DomainError("winding number is defined for the weak regime alpha1, alpha2 > 1");

    std::vector<double> w1, w2;
    if (!p.thermodynamic) {
        const int R = p.N / 2 - 1;
        const double n1 = coupling_norm(p.alpha1, p.N), n2 = coupling_norm(p.alpha2, p.N);
        for (int r = 1; r <= R; ++r) {
            w1.push_back(std::pow(static_cast<double>(r), -p.alpha1) / n1);
            w2.push_back(std::pow(static_cast<double>(r), -p.alpha2) / n2);
        }
    }
    auto amplitudes = [&](double k) -> std::pair<double, double> {
        if (p.thermodynamic) return thermodynamic_amplitudes_at_k(p.alpha1, p.alpha2, k);
        double t = 0.0, d = 0.0;
        for (std::size_t r = w1.size(); r >= 1; --r) {
            t += w1[r - 1] * std::cos(k * static_cast<double>(r));
            d += w2[r - 1] * std::sin(k * static_cast<double>(r));
        }
        return {t, d};
    };

    // Accumulate the wrapped increments of phi = -theta around k in (-pi, pi],
    // so that the topological phase carries w = +1.
    double previous = std::nan("");
    for (int log2m = 12; log2m <= 20; ++log2m) {
        const std::size_t M = std::size_t{1} << log2m;
        std::vector<double> phi(M);
        std::vector<double> omega(M);
        parallel_for(M, [&](std::size_t j) {
            const double k = -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
            const auto [t, d] = amplitudes(k);
            omega[j] = 2.0 * std::hypot(p.h - t, d);
            phi[j] = -std::atan2(d, p.h - t);
        });
        double min_omega = omega[0];
        for (double o : omega) min_omega = std::min(min_omega, o);
        if (min_omega < 1e-8) throw GaplessError("winding number: spectrum is gapless");
        double total = 0.0;
        for (std::size_t j = 0; j < M; ++j) total += wrap_angle(phi[(j + 1) % M] - phi[j]);
        const double w = total / (2.0 * kPi);
        const double nearest = std::round(w);
        if (std::fabs(w - nearest) < 1e-6 && nearest == previous) return static_cast<int>(nearest);
        previous = std::fabs(w - nearest) < 1e-6 ? nearest : std::nan("");
        if (log2m == 20) {
            if (std::fabs(w - nearest) < 1e-3) return static_cast<int>(nearest);
            throw ConvergenceError("winding number did not quantise after maximal refinement");
        }
    }
    throw ConvergenceError("winding number did not stabilise");
}

int q_invariant(const ChainParams& p) {
    const double a = p.h - t_tilde_zero(p);
    const double b = p.h - t_tilde_pi(p);
    if (std::fabs(a) < 1e-12 || std::fabs(b) < 1e-12)
        throw CriticalPointError("q invariant undefined at a critical point");
    return (a * b < 0.0) ? -1 : 1;
}

PhaseDiagnostics phase_diagnostics(const ChainParams& p) {
    PhaseDiagnostics d;
    d.h_c_zero = t_tilde_zero(p);
    d.h_c_pi = t_tilde_pi(p);
    d.q_sign = q_invariant(p);
    d.winding_w = winding_number(p);
    return d;
}

DispersionPrefactors dispersion_prefactors(double alpha1, double alpha2) {
    auto inside = [](double a) { return a > 1.0 && a < 2.0; };
    if (!inside(alpha1) || !inside(alpha2))
        throw DomainError("dispersion prefactors require 1 < alpha1, alpha2 < 2");
    DispersionPrefactors out;
    // The soft-mode dispersion is set by the smaller exponent; the prefactor
    // is therefore evaluated at alpha = min(alpha1, alpha2) in every case.
    if (alpha1 < alpha2) {
        out.C = std::fabs(std::sin(alpha1 * kPi / 2) * std::tgamma(1 - alpha1) / riemann_zeta(alpha1));
    } else if (alpha1 == alpha2) {
        out.C = std::fabs(std::tgamma(1 - alpha1) / riemann_zeta(alpha1));
    } else {
        out.C = std::fabs(std::cos(alpha2 * kPi / 2) * std::tgamma(1 - alpha2) / riemann_zeta(alpha2));
    }
    out.K = (1.0 - std::pow(2.0, 2.0 - alpha2)) * zeta_real(alpha2 - 1.0) / riemann_zeta(alpha2);
    return out;
}

double mean_field_spectrum(int n, double h) {
    if (n == 0) return 2.0 * std::fabs(h - 1.0);
    if (n % 2 == 0) return 2.0 * std::fabs(h);
    const double d = 2.0 / (kPi * n);
    return 2.0 * std::sqrt(h * h + d * d);
}

double ground_degeneracy_log(int N0) {
    if (N0 < 0) throw DomainError("ground_degeneracy_log requires N0 >= 0");
    return N0 * std::log(2.0);
}

}  // namespace lrk
