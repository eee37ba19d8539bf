#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace lrk {

// S(L) = B ln L + c1 + c2 L^{-c3}
struct ScalingFit {
    double B = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 1.0;
    double rms_residual = 0.0;
    std::pair<int, int> L_range{0, 0};
    bool B_fixed = false;

    // 1.5 rms / ln(L_max): scale on which B is determined by the window.
    double uncertainty_proxy() const;
};

struct FitOptions {
    int min_L = 32;            // points below are dropped before fitting
    double max_condition = 1e12;
    double c3_max = 3.0;
};

ScalingFit fit_log_plus_subleading(const std::vector<std::pair<double, double>>& points,
                                   std::optional<double> B_fixed = std::nullopt,
                                   const FitOptions& opts = {});

struct PowerLawFit {
    double exponent = 0.0;
    double amplitude = 0.0;
};

// OLS of ln y against ln L.
PowerLawFit fit_power_law_exponent(const std::vector<std::pair<double, double>>& points);

enum class SweepTask { entropy, fh_coeff, phase };
SweepTask parse_task(const std::string& name);
std::string task_name(SweepTask t);

struct GridPoint {
    double alpha1 = 1.5;
    double alpha2 = 1.5;
    double h = 0.5;
    int N = 16;
    int L = 8;       // entropy only
    double nu = 1.0;  // entropy and fh_coeff
    bool thermodynamic = false;
};

struct SweepRow {
    std::size_t index = 0;
    GridPoint point;
    std::vector<double> values;  // task columns, empty on failure
    std::string error;           // empty on success
};

// Value columns produced by a task.
std::vector<std::string> task_columns(SweepTask t);

// Evaluates every point (concurrently) and returns rows in input order.
// A failing point is recorded in its row. If sink is non-null a CSV table is
// written to it.
std::vector<SweepRow> sweep(const std::vector<GridPoint>& grid, SweepTask task,
                            std::ostream* sink = nullptr);

}  // namespace lrk
