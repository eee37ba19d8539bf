#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "lrkitaev/model.hpp"

namespace lrk {

inline constexpr int kOracleMaxSites = 14;

// Many-body state in the occupation basis. Bit (j-1) of a basis index is the
// occupation of site j, and basis states are ordered products
// c_1^+{n_1} c_2^+{n_2} ... c_N^+{n_N} |0> (Jordan-Wigner order).
struct FockState {
    int N = 0;
    std::vector<std::complex<double>> amplitudes;

    double norm() const;
};

FockState fock_vacuum(int N);

// Single-site operators, site in 1..N.
FockState apply_creation(const FockState& s, int site);
FockState apply_annihilation(const FockState& s, int site);

// c_k^+ = e^{i pi/4}/sqrt(N) sum_j e^{-ikj} c_j^+ and its adjoint.
FockState apply_mode_creation(const FockState& s, double k);
FockState apply_mode_annihilation(const FockState& s, double k);

// prod_{0<k<pi} (cos(theta_k/2) + sin(theta_k/2) c_k^+ c_-k^+) times the
// unpaired k = 0, pi factors, acting on the empty lattice.
FockState build_bcs_vacuum(const ChainParams& params);

// max_k || gamma_k |psi> || with gamma_k = cos(theta_k/2) c_k - sin(theta_k/2) c_-k^+.
double bogoliubov_residual(const FockState& s, const ChainParams& params);

// Real-space Hamiltonian with finite-N couplings applied to a state.
FockState apply_hamiltonian(const FockState& s, const ChainParams& params);

// || H psi - <H> psi || for a normalised psi.
double hamiltonian_residual(const FockState& s, const ChainParams& params);

// Reorders the site labels: new site i+1 is old site order[i] (1-based),
// with the fermionic sign of moving occupied operators past each other.
FockState reorder_sites(const FockState& s, const std::vector<int>& order);

// Reduced density matrix of the leading L sites (trailing sites traced out).
Eigen::MatrixXcd reduced_density_matrix(const FockState& s, int L);

std::vector<double> reduced_density_spectrum(const FockState& s, int L);

// Renyi entropy of the leading L sites.
double exact_entropy(const FockState& s, int L, double nu);

// Renyi entropy of an arbitrary set of sites (1-based), via reorder_sites.
double exact_entropy_sites(const FockState& s, const std::vector<int>& sites, double nu);

double renyi_from_spectrum(const std::vector<double>& p, double nu);

}  // namespace lrk
