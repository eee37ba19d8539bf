#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "lrkitaev/model.hpp"

namespace lrk {

struct SymbolValue {
    double a = 1.0;  // 1 - (f_k + f_-k)
    double b = 0.0;  // f_-k - f_k
    double phi = 0.0;

    // a (cos phi sigma_z + sin phi sigma_y) + b I
    Eigen::Matrix2cd matrix() const;
};

// Majorana-basis correlation matrix of a subsystem of L contiguous sites.
//
// entries() holds the real antisymmetric 2L x 2L matrix Gamma, ordered
// site by site (2i, 2i+1). i Gamma is unitarily equivalent to the complex
// block matrix V = (1/N) sum_k G_k e^{ik(i-j)}; complex_block_form() applies
// that fixed transformation. Eigenvalues of V are the +-nu_j with nu_j the
// singular values of Gamma, obtained from the symmetric matrix Gamma^T Gamma
// (or X X^T when the symbol has no identity part, see below).
class CorrelationMatrix {
public:
    CorrelationMatrix() = default;

    // pure_pairing: b = 0 for every mode, in which case Gamma has the
    // off-diagonal form [[0, X], [-X^T, 0]] after a permutation and the
    // L x L product X X^T is diagonalised instead.
    CorrelationMatrix(Eigen::MatrixXd gamma, bool pure_pairing);

    int L() const { return static_cast<int>(gamma_.rows() / 2); }
    const Eigen::MatrixXd& entries() const { return gamma_; }
    // Sorted ascending, length 2L, in exact +-pairs.
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }

    Eigen::MatrixXcd complex_block_form() const;

    // Returns a copy with Gamma(i,j) += delta and Gamma(j,i) -= delta.
    // Verification harness negative control only.
    CorrelationMatrix with_perturbed_entry(int i, int j, double delta) const;

private:
    void decompose(bool pure_pairing);

    Eigen::MatrixXd gamma_;
    std::vector<double> eigenvalues_;
};

struct EntropyResult {
    int L = 0;
    double nu = 1.0;
    double value = 0.0;
};

// Eigenvalues outside [-1,1] by more than this raise NumericalError.
inline constexpr double kEigenClampTol = 1e-9;

SymbolValue build_symbol(const ModeData& mode, const ModeData& mode_neg);

// populations: n -> f. Gapped modes default to 0; gapless modes must be listed.
CorrelationMatrix build_correlation_matrix(const ChainParams& params, int L,
                                           const std::map<int, double>& populations = {});

// Same from a precomputed spectrum (modes in increasing n, as spectrum() returns).
CorrelationMatrix build_correlation_matrix(const std::vector<ModeData>& modes, int L);

// Assigns populations to a spectrum in place, validating indices and ranges.
void apply_populations(std::vector<ModeData>& modes, const std::map<int, double>& populations);

// Sets f on every gapless mode that has none.
void fill_gapless_populations(std::vector<ModeData>& modes, double f);

EntropyResult renyi_entropy(const CorrelationMatrix& corr, double nu);

// Entropy of a single symmetric eigenvalue pair +-v, for reuse by tests.
double pair_entropy(double v, double nu);

// (1/(1-nu)) sum_k ln[(1-f_k)^nu + f_k^nu]; nu = 1 gives the binary-entropy sum.
double fh_volume_term(const std::vector<double>& populations, double nu);
double fh_volume_term(const std::map<int, double>& populations, double nu);

}  // namespace lrk
