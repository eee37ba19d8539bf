#include "lrkitaev/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "lrkitaev/error.hpp"

namespace lrk {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void check_site(const FockState& s, int site) {
    if (site < 1 || site > s.N) throw DimensionError("site outside 1..N");
}

int parity_below(std::uint32_t basis, int bit) {
    return std::popcount(basis & ((1u << bit) - 1u)) & 1;
}

void accumulate_creation(const FockState& s, int site, cd coeff, std::vector<cd>& out) {
    const int bit = site - 1;
    const std::uint32_t mask = 1u << bit;
    for (std::uint32_t b = 0; b < s.amplitudes.size(); ++b) {
        if ((b & mask) || s.amplitudes[b] == cd(0.0)) continue;
        const double sign = parity_below(b, bit) ? -1.0 : 1.0;
        out[b | mask] += sign * coeff * s.amplitudes[b];
    }
}

void accumulate_annihilation(const FockState& s, int site, cd coeff, std::vector<cd>& out) {
    const int bit = site - 1;
    const std::uint32_t mask = 1u << bit;
    for (std::uint32_t b = 0; b < s.amplitudes.size(); ++b) {
        if (!(b & mask) || s.amplitudes[b] == cd(0.0)) continue;
        const double sign = parity_below(b, bit) ? -1.0 : 1.0;
        out[b & ~mask] += sign * coeff * s.amplitudes[b];
    }
}

FockState blank_like(const FockState& s) {
    FockState out;
    out.N = s.N;
    out.amplitudes.assign(s.amplitudes.size(), cd(0.0));
    return out;
}

void axpy(cd a, const FockState& x, FockState& y) {
    for (std::size_t i = 0; i < y.amplitudes.size(); ++i) y.amplitudes[i] += a * x.amplitudes[i];
}

double wrap_site(int j, int N) { return ((j - 1) % N + N) % N + 1; }

}  // namespace

double FockState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

FockState fock_vacuum(int N) {
    if (N < 1 || N > kOracleMaxSites)
        throw DimensionError("oracle supports 1 <= N <= " + std::to_string(kOracleMaxSites));
    FockState s;
    s.N = N;
    s.amplitudes.assign(std::size_t{1} << N, cd(0.0));
    s.amplitudes[0] = 1.0;
    return s;
}

FockState apply_creation(const FockState& s, int site) {
    check_site(s, site);
    FockState out = blank_like(s);
    accumulate_creation(s, site, 1.0, out.amplitudes);
    return out;
}

FockState apply_annihilation(const FockState& s, int site) {
    check_site(s, site);
    FockState out = blank_like(s);
    accumulate_annihilation(s, site, 1.0, out.amplitudes);
    return out;
}

FockState apply_mode_creation(const FockState& s, double k) {
    FockState out = blank_like(s);
    const cd pre = std::polar(1.0 / std::sqrt(static_cast<double>(s.N)), kPi / 4.0);
    for (int j = 1; j <= s.N; ++j) accumulate_creation(s, j, pre * std::polar(1.0, -k * j), out.amplitudes);
    return out;
}

FockState apply_mode_annihilation(const FockState& s, double k) {
    FockState out = blank_like(s);
    const cd pre = std::polar(1.0 / std::sqrt(static_cast<double>(s.N)), -kPi / 4.0);
    for (int j = 1; j <= s.N; ++j) accumulate_annihilation(s, j, pre * std::polar(1.0, k * j), out.amplitudes);
    return out;
}

FockState build_bcs_vacuum(const ChainParams& params) {
    params.validate();
    if (params.N > kOracleMaxSites)
        throw DimensionError("oracle supports N <= " + std::to_string(kOracleMaxSites));
    const auto modes = spectrum(params);
    for (const auto& m : modes)
        if (m.omega <= 1e-8) throw GaplessError("oracle requires a gapped spectrum");

    const int N = params.N;
    const int n0 = -N / 2 + 1;
    auto mode = [&](int n) -> const ModeData& { return modes[static_cast<std::size_t>(n - n0)]; };

    FockState psi = fock_vacuum(N);
    for (int n : {0, N / 2}) {
        const ModeData& m = mode(n);
        const FockState filled = apply_mode_creation(psi, m.k);
        FockState next = blank_like(psi);
        axpy(std::cos(m.theta / 2.0), psi, next);
        axpy(std::sin(m.theta / 2.0), filled, next);
        psi = std::move(next);
    }
    for (int n = 1; n < N / 2; ++n) {
        const ModeData& m = mode(n);
        const FockState pair = apply_mode_creation(apply_mode_creation(psi, -m.k), m.k);
        FockState next = blank_like(psi);
        axpy(std::cos(m.theta / 2.0), psi, next);
        axpy(std::sin(m.theta / 2.0), pair, next);
        psi = std::move(next);
    }
    const double nrm = psi.norm();
    if (std::fabs(nrm - 1.0) > 1e-12) throw NumericalError("BCS vacuum is not normalised");
    for (auto& a : psi.amplitudes) a /= nrm;
    return psi;
}

double bogoliubov_residual(const FockState& s, const ChainParams& params) {
    const auto modes = spectrum(params);
    const int N = params.N;
    const int n0 = -N / 2 + 1;
    double worst = 0.0;
    for (const auto& m : modes) {
        const int neg = (m.index_n == N / 2) ? m.index_n : -m.index_n;
        const ModeData& mn = modes[static_cast<std::size_t>(neg - n0)];
        FockState g = apply_mode_annihilation(s, m.k);
        for (auto& a : g.amplitudes) a *= std::cos(m.theta / 2.0);
        axpy(-std::sin(m.theta / 2.0), apply_mode_creation(s, mn.k), g);
        worst = std::max(worst, g.norm());
    }
    return worst;
}

FockState apply_hamiltonian(const FockState& s, const ChainParams& params) {
    params.validate();
    if (params.thermodynamic)
        throw ConfigError("the real-space Hamiltonian exists only for finite-N couplings");
    if (s.N != params.N) throw DimensionError("state and parameters disagree on N");
    const int N = params.N;
    const int R = N / 2 - 1;
    const double n1 = coupling_norm(params.alpha1, N), n2 = coupling_norm(params.alpha2, N);
    FockState out = blank_like(s);
    for (int r = 1; r <= R; ++r) {
        const double t = std::pow(static_cast<double>(r), -params.alpha1) / n1;
        const double d = std::pow(static_cast<double>(r), -params.alpha2) / n2;
        for (int j = 1; j <= N; ++j) {
            const int jr = static_cast<int>(wrap_site(j + r, N));
            // -t (c_{j+r}^+ c_j + c_j^+ c_{j+r})
            axpy(-t, apply_creation(apply_annihilation(s, j), jr), out);
            axpy(-t, apply_creation(apply_annihilation(s, jr), j), out);
            // -d (c_{j+r}^+ c_j^+ + c_j c_{j+r})
            axpy(-d, apply_creation(apply_creation(s, j), jr), out);
            axpy(-d, apply_annihilation(apply_annihilation(s, jr), j), out);
        }
    }
    // -h sum_j (1 - 2 n_j)
    for (std::uint32_t b = 0; b < s.amplitudes.size(); ++b) {
        const int occ = std::popcount(b);
        out.amplitudes[b] += -params.h * (N - 2.0 * occ) * s.amplitudes[b];
    }
    return out;
}

double hamiltonian_residual(const FockState& s, const ChainParams& params) {
    const FockState hs = apply_hamiltonian(s, params);
    cd energy(0.0);
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i) energy += std::conj(s.amplitudes[i]) * hs.amplitudes[i];
    FockState r = hs;
    axpy(-energy, s, r);
    return r.norm();
}

FockState reorder_sites(const FockState& s, const std::vector<int>& order) {
    const int N = s.N;
    if (static_cast<int>(order.size()) != N) throw DimensionError("order must list every site");
    std::vector<int> seen(N + 1, 0);
    for (int o : order) {
        if (o < 1 || o > N || seen[o]++) throw DimensionError("order is not a permutation");
    }
    FockState out = blank_like(s);
    for (std::uint32_t b = 0; b < s.amplitudes.size(); ++b) {
        if (s.amplitudes[b] == cd(0.0)) continue;
        std::uint32_t nb = 0;
        int inversions = 0;
        for (int i = 0; i < N; ++i) {
            const int oi = order[i] - 1;
            if (!((b >> oi) & 1u)) continue;
            nb |= 1u << i;
            for (int j = i + 1; j < N; ++j) {
                const int oj = order[j] - 1;
                if (((b >> oj) & 1u) && oj < oi) ++inversions;
            }
        }
        out.amplitudes[nb] += ((inversions & 1) ? -1.0 : 1.0) * s.amplitudes[b];
    }
    return out;
}

Eigen::MatrixXcd reduced_density_matrix(const FockState& s, int L) {
    if (L < 1 || L > s.N) throw DimensionError("subsystem length outside 1..N");
    const Eigen::Index da = Eigen::Index{1} << L;
    const Eigen::Index db = Eigen::Index{1} << (s.N - L);
    // Leading sites are the low bits, so the amplitude vector is the
    // column-major da x db matrix psi(a, b).
    Eigen::Map<const Eigen::MatrixXcd> psi(s.amplitudes.data(), da, db);
    return psi * psi.adjoint();
}

std::vector<double> reduced_density_spectrum(const FockState& s, int L) {
    const Eigen::MatrixXcd rho = reduced_density_matrix(s, L);
    const double tr = rho.trace().real();
    if (std::fabs(tr - 1.0) > 1e-10) throw NumericalError("reduced density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

double renyi_from_spectrum(const std::vector<double>& p, double nu) {
    if (!(nu >= 1.0)) throw DomainError("Renyi order must be >= 1");
    if (nu == 1.0) {
        double s = 0.0;
        for (double x : p)
            if (x > 0.0) s -= x * std::log(x);
        return std::max(0.0, s);
    }
    double tr = 0.0;
    for (double x : p) tr += std::pow(std::max(0.0, x), nu);
    return std::max(0.0, std::log(tr) / (1.0 - nu));
}

double exact_entropy(const FockState& s, int L, double nu) {
    if (L < 1 || L >= s.N) throw DimensionError("exact_entropy requires 1 <= L < N");
    if (2 * L <= s.N) return renyi_from_spectrum(reduced_density_spectrum(s, L), nu);
    // A pure state gives both halves the same nonzero spectrum; trace out the larger one.
    std::vector<int> order;
    for (int j = L + 1; j <= s.N; ++j) order.push_back(j);
    for (int j = 1; j <= L; ++j) order.push_back(j);
    return renyi_from_spectrum(reduced_density_spectrum(reorder_sites(s, order), s.N - L), nu);
}

double exact_entropy_sites(const FockState& s, const std::vector<int>& sites, double nu) {
    std::vector<int> order;
    std::vector<int> in_a(s.N + 1, 0);
    for (int x : sites) {
        if (x < 1 || x > s.N || in_a[x]++) throw DimensionError("invalid subsystem site list");
        order.push_back(x);
    }
    for (int j = 1; j <= s.N; ++j)
        if (!in_a[j]) order.push_back(j);
    return exact_entropy(reorder_sites(s, order), static_cast<int>(sites.size()), nu);
}

}  // namespace lrk
