#include "lrkitaev/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "lrkitaev/error.hpp"
#include "lrkitaev/kernels.hpp"
#include "lrkitaev/parallel.hpp"

namespace lrk {

namespace {

double clamp_singular(double lambda) {
    // lambda = nu^2 from a symmetric PSD product
    const double nu = std::sqrt(std::max(0.0, lambda));
    if (nu > 1.0 + kEigenClampTol)
        throw NumericalError("correlation eigenvalue " + std::to_string(nu) +
                             " outside [-1,1] beyond tolerance");
    return std::min(nu, 1.0);
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

Eigen::Matrix2cd SymbolValue::matrix() const {
    const std::complex<double> I(0.0, 1.0);
    Eigen::Matrix2cd g;
    // sigma_z = diag(1,-1), sigma_y = [[0,-i],[i,0]]
    g << a * std::cos(phi) + b, -I * a * std::sin(phi), I * a * std::sin(phi),
        -a * std::cos(phi) + b;
    return g;
}

CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXd gamma, bool pure_pairing)
    : gamma_(std::move(gamma)) {
    if (gamma_.rows() != gamma_.cols() || gamma_.rows() % 2 != 0)
        throw DimensionError("correlation matrix must be square with even size");
    decompose(pure_pairing);
}

void CorrelationMatrix::decompose(bool pure_pairing) {
    const Eigen::Index L = gamma_.rows() / 2;
    std::vector<double> nus;
    nus.reserve(static_cast<std::size_t>(L));
    if (pure_pairing) {
        Eigen::MatrixXd X(L, L);
        for (Eigen::Index i = 0; i < L; ++i)
            for (Eigen::Index j = 0; j < L; ++j) X(i, j) = gamma_(2 * i, 2 * j + 1);
        Eigen::MatrixXd M = X * X.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
        for (Eigen::Index i = 0; i < L; ++i) nus.push_back(clamp_singular(es.eigenvalues()(i)));
    } else {
        Eigen::MatrixXd M = gamma_.transpose() * gamma_;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
        // Each nu^2 of an antisymmetric matrix appears twice.
        for (Eigen::Index i = 0; i < L; ++i)
            nus.push_back(clamp_singular(
                0.5 * (es.eigenvalues()(2 * i) + es.eigenvalues()(2 * i + 1))));
    }
    eigenvalues_.clear();
    for (double v : nus) eigenvalues_.push_back(-v);
    for (double v : nus) eigenvalues_.push_back(v);
    std::sort(eigenvalues_.begin(), eigenvalues_.end());
}

Eigen::MatrixXcd CorrelationMatrix::complex_block_form() const {
    const Eigen::Index L = gamma_.rows() / 2;
    const std::complex<double> I(0.0, 1.0);
    Eigen::Matrix2cd U;
    U << 1.0, 1.0, -I, I;
    U /= std::sqrt(2.0);
    Eigen::MatrixXcd V(2 * L, 2 * L);
    for (Eigen::Index i = 0; i < L; ++i)
        for (Eigen::Index j = 0; j < L; ++j) {
            const Eigen::Matrix2cd blk = I * gamma_.block<2, 2>(2 * i, 2 * j).cast<std::complex<double>>();
            V.block<2, 2>(2 * i, 2 * j) = U.adjoint() * blk * U;
        }
    return V;
}

CorrelationMatrix CorrelationMatrix::with_perturbed_entry(int i, int j, double delta) const {
    Eigen::MatrixXd g = gamma_;
    if (i < 0 || j < 0 || i >= g.rows() || j >= g.cols())
        throw DimensionError("perturbed entry outside the matrix");
    g(i, j) += delta;
    if (i != j) g(j, i) -= delta;
    CorrelationMatrix out;
    out.gamma_ = std::move(g);
    out.decompose(false);
    return out;
}

SymbolValue build_symbol(const ModeData& mode, const ModeData& mode_neg) {
    if (!mode.f_given || !mode_neg.f_given)
        throw GaplessError("gapless mode n=" + std::to_string(mode.index_n) +
                           " needs an explicit population");
    for (double f : {mode.f, mode_neg.f})
        if (!(f >= 0.0 && f <= 1.0)) throw DomainError("population outside [0,1]");
    SymbolValue s;
    s.a = 1.0 - (mode.f + mode_neg.f);
    s.b = mode_neg.f - mode.f;
    s.phi = mode.phi;
    return s;
}

void apply_populations(std::vector<ModeData>& modes, const std::map<int, double>& populations) {
    if (modes.empty()) return;
    const int N = static_cast<int>(modes.size());
    const int n0 = modes.front().index_n;
    for (const auto& [n, f] : populations) {
        const int i = n - n0;
        if (i < 0 || i >= N) throw DomainError("population for unknown mode " + std::to_string(n));
        if (!(f >= 0.0 && f <= 1.0)) throw DomainError("population outside [0,1]");
        modes[static_cast<std::size_t>(i)].f = f;
        modes[static_cast<std::size_t>(i)].f_given = true;
    }
}

void fill_gapless_populations(std::vector<ModeData>& modes, double f) {
    for (auto& m : modes)
        if (!m.f_given) {
            m.f = f;
            m.f_given = true;
        }
}

CorrelationMatrix build_correlation_matrix(const std::vector<ModeData>& modes, int L) {
    const int N = static_cast<int>(modes.size());
    if (N < 2) throw DimensionError("empty spectrum");
    if (L < 1 || L > N) throw DimensionError("subsystem length must satisfy 1 <= L <= N");
    const int n0 = modes.front().index_n;
    auto position = [&](int n) { return n == N / 2 ? N - 1 : n - n0; };

    // Symbol components indexed by j = n mod N.
    std::vector<double> ac(N), as(N), bb(N);
    bool pure_pairing = true;
    for (int i = 0; i < N; ++i) {
        const ModeData& m = modes[static_cast<std::size_t>(i)];
        const ModeData& mn = modes[static_cast<std::size_t>(position(m.index_n == N / 2 ? m.index_n : -m.index_n))];
        const SymbolValue s = build_symbol(m, mn);
        const int j = ((m.index_n % N) + N) % N;
        ac[j] = s.a * std::cos(s.phi);
        as[j] = s.a * std::sin(s.phi);
        bb[j] = s.b;
        if (s.b != 0.0) pure_pairing = false;
    }

    const auto table = kernels::make_trig_table(static_cast<std::size_t>(N));
    std::vector<double> C(L), S(L), D(L, 0.0);
    const double inv = 1.0 / N;
    parallel_for(static_cast<std::size_t>(L), [&](std::size_t m) {
        C[m] = inv * kernels::modular_dot(table.cos.data(), table.n, ac.data(), ac.size(), m, 0);
        S[m] = inv * kernels::modular_dot(table.sin.data(), table.n, as.data(), as.size(), m, 0);
        if (!pure_pairing)
            D[m] = inv * kernels::modular_dot(table.sin.data(), table.n, bb.data(), bb.size(), m, 0);
    });

    Eigen::MatrixXd gamma(2 * L, 2 * L);
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            const int m = i - j;
            const std::size_t am = static_cast<std::size_t>(std::abs(m));
            const double c = C[am];
            const double s = m >= 0 ? S[am] : -S[am];
            const double d = m >= 0 ? D[am] : -D[am];
            gamma(2 * i, 2 * j) = d;
            gamma(2 * i, 2 * j + 1) = c - s;
            gamma(2 * i + 1, 2 * j) = -(c + s);
            gamma(2 * i + 1, 2 * j + 1) = d;
        }
    return CorrelationMatrix(std::move(gamma), pure_pairing);
}

CorrelationMatrix build_correlation_matrix(const ChainParams& params, int L,
                                           const std::map<int, double>& populations) {
    params.validate();
    if (L < 1 || L > params.N) throw DimensionError("subsystem length must satisfy 1 <= L <= N");
    auto modes = spectrum(params);
    apply_populations(modes, populations);
    return build_correlation_matrix(modes, L);
}

double pair_entropy(double v, double nu) {
    v = std::clamp(std::fabs(v), 0.0, 1.0);
    const double p = 0.5 * (1.0 + v), q = 0.5 * (1.0 - v);
    if (nu == 1.0) return -(xlogx(p) + xlogx(q));
    return std::log(std::pow(p, nu) + std::pow(q, nu)) / (1.0 - nu);
}

EntropyResult renyi_entropy(const CorrelationMatrix& corr, double nu) {
    if (!(nu >= 1.0)) throw DomainError("Renyi order must be >= 1");
    const auto& ev = corr.eigenvalues();
    const std::size_t L = ev.size() / 2;
    // ev is sorted with exact +- pairs: the top half holds one member of each.
    double total = 0.0;
    for (std::size_t i = L; i < ev.size(); ++i) total += pair_entropy(ev[i], nu);
    return {corr.L(), nu, std::max(0.0, total)};
}

double fh_volume_term(const std::vector<double>& populations, double nu) {
    if (!(nu >= 1.0)) throw DomainError("Renyi order must be >= 1");
    double total = 0.0;
    for (double f : populations) {
        if (!(f >= 0.0 && f <= 1.0)) throw DomainError("population outside [0,1]");
        if (nu == 1.0)
            total += -(xlogx(f) + xlogx(1.0 - f));
        else
            total += std::log(std::pow(1.0 - f, nu) + std::pow(f, nu)) / (1.0 - nu);
    }
    return total;
}

double fh_volume_term(const std::map<int, double>& populations, double nu) {
    std::vector<double> f;
    f.reserve(populations.size());
    for (const auto& kv : populations) f.push_back(kv.second);
    return fh_volume_term(f, nu);
}

}  // namespace lrk
