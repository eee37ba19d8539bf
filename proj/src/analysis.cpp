#include "lrkitaev/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "lrkitaev/asymptotics.hpp"
#include "lrkitaev/csv.hpp"
#include "lrkitaev/error.hpp"
#include "lrkitaev/gaussian_state.hpp"
#include "lrkitaev/model.hpp"
#include "lrkitaev/parallel.hpp"

namespace lrk {

double ScalingFit::uncertainty_proxy() const {
    return 1.5 * rms_residual / std::log(static_cast<double>(L_range.second));
}

namespace {

struct InnerFit {
    Eigen::VectorXd coef;
    double sse = std::numeric_limits<double>::infinity();
    double condition = std::numeric_limits<double>::infinity();
};

InnerFit inner_fit(const std::vector<double>& lnL, const std::vector<double>& y,
                   std::optional<double> B_fixed, double c3) {
    const Eigen::Index n = static_cast<Eigen::Index>(y.size());
    const int p = B_fixed ? 2 : 3;
    Eigen::MatrixXd A(n, p);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double l = lnL[static_cast<std::size_t>(i)];
        int c = 0;
        if (!B_fixed) A(i, c++) = l;
        A(i, c++) = 1.0;
        A(i, c) = std::exp(-c3 * l);
        rhs(i) = y[static_cast<std::size_t>(i)] - (B_fixed ? *B_fixed * l : 0.0);
    }
    // Conditioning is judged on the column-equilibrated design.
    Eigen::VectorXd scale = A.colwise().norm().transpose();
    for (int j = 0; j < p; ++j)
        if (scale(j) == 0.0) scale(j) = 1.0;
    const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
    InnerFit out;
    const auto& sv = svd.singularValues();
    out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                            : std::numeric_limits<double>::infinity();
    out.coef = (svd.solve(rhs)).cwiseQuotient(scale);
    out.sse = (A * out.coef - rhs).squaredNorm();
    return out;
}

}  // namespace

ScalingFit fit_log_plus_subleading(const std::vector<std::pair<double, double>>& points,
                                   std::optional<double> B_fixed, const FitOptions& opts) {
    std::vector<double> lnL, y;
    double prev = -std::numeric_limits<double>::infinity();
    int Lmin = 0, Lmax = 0;
    for (const auto& [L, S] : points) {
        if (!(L > prev)) throw DomainError("fit points must have strictly increasing L");
        prev = L;
        if (L < opts.min_L) continue;
        if (!std::isfinite(S)) throw DomainError("non-finite entropy value in fit");
        if (lnL.empty()) Lmin = static_cast<int>(L);
        Lmax = static_cast<int>(L);
        lnL.push_back(std::log(L));
        y.push_back(S);
    }
    if (lnL.size() < 6) throw DomainError("subleading fit needs at least 6 points in the window");

    auto objective = [&](double c3) {
        const InnerFit f = inner_fit(lnL, y, B_fixed, c3);
        return f.condition > opts.max_condition ? std::numeric_limits<double>::infinity() : f.sse;
    };

    // Coarse scan, then golden section inside the best bracket.
    const int coarse = 150;
    const double step = opts.c3_max / coarse;
    double best_c3 = step, best = objective(step);
    for (int i = 2; i <= coarse; ++i) {
        const double c3 = step * i;
        const double v = objective(c3);
        if (v < best) {
            best = v;
            best_c3 = c3;
        }
    }
    if (!std::isfinite(best))
        throw NumericalError("subleading fit design matrix is ill-conditioned for every c3");
    double lo = std::max(best_c3 - step, 1e-6), hi = std::min(best_c3 + step, opts.c3_max);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = objective(x2);
        }
    }
    double c3 = 0.5 * (lo + hi);
    if (objective(c3) > best) c3 = best_c3;

    const InnerFit f = inner_fit(lnL, y, B_fixed, c3);
    if (f.condition > opts.max_condition)
        throw NumericalError("subleading fit design matrix is ill-conditioned");
    ScalingFit out;
    out.B_fixed = B_fixed.has_value();
    int c = 0;
    out.B = B_fixed ? *B_fixed : f.coef(c++);
    out.c1 = f.coef(c++);
    out.c2 = f.coef(c);
    out.c3 = c3;
    out.rms_residual = std::sqrt(f.sse / static_cast<double>(y.size()));
    out.L_range = {Lmin, Lmax};
    return out;
}

PowerLawFit fit_power_law_exponent(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 5) throw DomainError("power-law fit needs at least 5 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(points.size());
    for (const auto& [L, v] : points) {
        if (!(L > 0.0) || !(v > 0.0)) throw DomainError("power-law fit requires positive data");
        const double x = std::log(L), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw NumericalError("power-law fit needs distinct L values");
    PowerLawFit out;
    out.exponent = (n * sxy - sx * sy) / den;
    out.amplitude = std::exp((sy - out.exponent * sx) / n);
    return out;
}

SweepTask parse_task(const std::string& name) {
    if (name == "entropy") return SweepTask::entropy;
    if (name == "fh_coeff" || name == "fh-coeff") return SweepTask::fh_coeff;
    if (name == "phase") return SweepTask::phase;
    throw ConfigError("unknown task '" + name + "'");
}

std::string task_name(SweepTask t) {
    switch (t) {
        case SweepTask::entropy: return "entropy";
        case SweepTask::fh_coeff: return "fh_coeff";
        case SweepTask::phase: return "phase";
    }
    return "unknown";
}

std::vector<std::string> task_columns(SweepTask t) {
    switch (t) {
        case SweepTask::entropy: return {"S"};
        case SweepTask::fh_coeff: return {"B_total"};
        case SweepTask::phase: return {"winding_w", "q_sign"};
    }
    return {};
}

namespace {

std::vector<double> evaluate(const GridPoint& g, SweepTask task) {
    ChainParams p{g.N, g.alpha1, g.alpha2, g.h, g.thermodynamic};
    switch (task) {
        case SweepTask::entropy: {
            p.validate();
            auto modes = spectrum(p);
            fill_gapless_populations(modes, 0.0);
            const auto corr = build_correlation_matrix(modes, g.L);
            return {renyi_entropy(corr, g.nu).value};
        }
        case SweepTask::fh_coeff: {
            const bool weak = g.alpha1 >= 1.0 && g.alpha2 >= 1.0;
            const bool strong = g.alpha1 < 1.0 && g.alpha2 < 1.0;
            if (weak) return {weak_regime_B(g.nu, g.alpha1, g.alpha2, g.h).total_B};
            if (strong) {
                if (g.nu != std::floor(g.nu) || g.nu < 2.0)
                    throw DomainError("strong-regime coefficient needs integer nu >= 2");
                return {strong_regime_B(static_cast<int>(g.nu), g.alpha1, g.alpha2, g.h, g.N).total_B};
            }
            throw ConfigError("mixed weak/strong exponents are not supported for fh_coeff");
        }
        case SweepTask::phase: {
            p.validate();
            return {static_cast<double>(winding_number(p)), static_cast<double>(q_invariant(p))};
        }
    }
    return {};
}

}  // namespace

std::vector<SweepRow> sweep(const std::vector<GridPoint>& grid, SweepTask task, std::ostream* sink) {
    std::vector<SweepRow> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        SweepRow& r = rows[i];
        r.index = i;
        r.point = grid[i];
        try {
            r.values = evaluate(grid[i], task);
        } catch (const std::exception& e) {
            r.values.clear();
            r.error = e.what();
            if (r.error.empty()) r.error = "error";
        }
    });
    if (sink) {
        std::vector<std::string> header = {"index", "alpha1", "alpha2", "h", "N", "L", "nu"};
        const auto cols = task_columns(task);
        header.insert(header.end(), cols.begin(), cols.end());
        header.push_back("status");
        csv::Writer w(*sink, header);
        for (const auto& r : rows) {
            std::vector<std::string> cells = {std::to_string(r.index),
                                               csv::format_double(r.point.alpha1),
                                               csv::format_double(r.point.alpha2),
                                               csv::format_double(r.point.h),
                                               std::to_string(r.point.N),
                                               std::to_string(r.point.L),
                                               csv::format_double(r.point.nu)};
            for (std::size_t c = 0; c < cols.size(); ++c)
                cells.push_back(r.error.empty() ? csv::format_double(r.values[c]) : "nan");
            std::string status = r.error.empty() ? "ok" : "error: " + r.error;
            std::replace(status.begin(), status.end(), ',', ';');
            std::replace(status.begin(), status.end(), '\n', ' ');
            cells.push_back(status);
            w.row(cells);
        }
    }
    return rows;
}

}  // namespace lrk
