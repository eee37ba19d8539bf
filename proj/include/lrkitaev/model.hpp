#pragma once

#include <utility>
#include <vector>

namespace lrk {

// Long-range Kitaev chain with J = Delta = 1 and periodic boundaries.
struct ChainParams {
    int N = 8;              // sites, even, >= 4
    double alpha1 = 1.5;    // hopping exponent
    double alpha2 = 1.5;    // pairing exponent
    double h = 0.5;         // chemical potential
    bool thermodynamic = false;

    // Throws ConfigError on violation.
    void validate() const;
};

// A mode is treated as gapless when omega falls to this level; its angles are
// then set to zero and a population must be supplied explicitly downstream.
inline constexpr double kGaplessOmega = 1e-12;

struct ModeData {
    int index_n = 0;
    double k = 0.0;
    double t_tilde = 0.0;
    double delta_tilde = 0.0;
    double omega = 0.0;
    double theta = 0.0;  // Bogoliubov angle, atan2(delta, h - t)
    double phi = 0.0;    // symbol angle, -theta
    double f = 0.0;      // Bogoliubov population
    bool gapless = false;
    // False only for gapless modes until a caller assigns a population.
    bool f_given = true;
};

struct PhaseDiagnostics {
    int winding_w = 0;
    int q_sign = 0;
    double h_c_zero = 0.0;
    double h_c_pi = 0.0;
};

// sum_{r=1}^{N/2} r^{-alpha}
double kac_norm(double alpha, int N);

// sum_{r=1}^{N/2-1} r^{-alpha}; the normalisation actually used by the
// finite-N couplings so that t_0 = 1 exactly.
double coupling_norm(double alpha, int N);

// Raw Fourier amplitudes (t, delta) at mode n, without the angle bookkeeping.
std::pair<double, double> coupling_amplitudes(const ChainParams& p, int n);

ModeData couplings_at_mode(const ChainParams& p, int n);

// All modes n = -N/2+1 .. N/2 in increasing n.
std::vector<ModeData> spectrum(const ChainParams& p);

// Thermodynamic amplitudes at a continuous momentum (weak regime only).
std::pair<double, double> thermodynamic_amplitudes_at_k(double alpha1, double alpha2, double k);

// t at k = 0 and k = pi for the regime selected by p (finite-N or limit).
double t_tilde_zero(const ChainParams& p);
double t_tilde_pi(const ChainParams& p);

int winding_number(const ChainParams& p);
int q_invariant(const ChainParams& p);
PhaseDiagnostics phase_diagnostics(const ChainParams& p);

struct DispersionPrefactors {
    double C = 0.0;
    double K = 0.0;
};
DispersionPrefactors dispersion_prefactors(double alpha1, double alpha2);

double mean_field_spectrum(int n, double h);
double ground_degeneracy_log(int N0);

}  // namespace lrk
