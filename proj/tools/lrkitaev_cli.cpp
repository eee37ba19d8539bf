// Command-line front end. Exit codes: 0 ok, 1 validation, 2 computation, 3 I/O.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrkitaev/analysis.hpp"
#include "lrkitaev/asymptotics.hpp"
#include "lrkitaev/csv.hpp"
#include "lrkitaev/error.hpp"
#include "lrkitaev/gaussian_state.hpp"
#include "lrkitaev/model.hpp"
#include "lrkitaev/oracle.hpp"
#include "lrkitaev/parallel.hpp"
#include "reproduce.hpp"

namespace {

using lrk::csv::format_double;

struct RunConfig {
    double alpha1 = 1.5;
    double alpha2 = 1.5;
    double h = 0.5;
    std::optional<int> n_sites;
    std::vector<int> subsystem;
    std::vector<double> nu = {1.0};
    std::string task = "entropy";
    std::string out;
    bool thermodynamic = false;
    std::vector<double> h_list;
    std::vector<double> alpha_list;
    std::string figure;
    bool per_jump = false;
    bool with_prediction = false;
    bool corrupt = false;
    std::vector<lrk::GridPoint> grid;
};

// Flags given on the command line, applied on top of the JSON config.
struct Flags {
    std::string config;
    double alpha1 = 0, alpha2 = 0, h = 0;
    int n_sites = 0;
    std::vector<int> subsystem;
    std::vector<double> nu;
    std::string task, out;
    bool thermodynamic = false;
    std::vector<double> h_list, alpha_list;
    bool per_jump = false, with_prediction = false, corrupt = false;
};

template <class T>
void take(const nlohmann::json& j, const char* key, T& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

// Lists may be given as a single scalar.
template <class T>
void take(const nlohmann::json& j, const char* key, std::vector<T>& dst) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    dst = v.is_array() ? v.get<std::vector<T>>() : std::vector<T>{v.get<T>()};
}

RunConfig load_config(const std::string& path) {
    RunConfig c;
    if (path.empty()) return c;
    std::ifstream in(path);
    if (!in) throw lrk::IoError("cannot open config " + path);
    nlohmann::json j;
    try {
        in >> j;
        take(j, "alpha1", c.alpha1);
        take(j, "alpha2", c.alpha2);
        take(j, "h", c.h);
        if (j.contains("n_sites")) c.n_sites = j.at("n_sites").get<int>();
        take(j, "subsystem", c.subsystem);
        if (j.contains("nu")) {
            if (j.at("nu").is_array()) c.nu = j.at("nu").get<std::vector<double>>();
            else c.nu = {j.at("nu").get<double>()};
        }
        take(j, "task", c.task);
        take(j, "out", c.out);
        take(j, "thermodynamic", c.thermodynamic);
        take(j, "h_list", c.h_list);
        take(j, "alpha_list", c.alpha_list);
        take(j, "figure", c.figure);
        if (j.contains("grid")) {
            for (const auto& g : j.at("grid")) {
                lrk::GridPoint p;
                take(g, "alpha1", p.alpha1);
                take(g, "alpha2", p.alpha2);
                take(g, "h", p.h);
                take(g, "n_sites", p.N);
                take(g, "subsystem", p.L);
                take(g, "nu", p.nu);
                take(g, "thermodynamic", p.thermodynamic);
                c.grid.push_back(p);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw lrk::ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

void add_common(CLI::App* sub, Flags& f) {
    // --h is the chemical potential, so help is long-form only.
    sub->set_help_flag("--help", "print help");
    sub->add_option("--config", f.config, "JSON configuration file");
    sub->add_option("--alpha1", f.alpha1, "hopping exponent");
    sub->add_option("--alpha2", f.alpha2, "pairing exponent");
    sub->add_option("--h", f.h, "chemical potential");
    sub->add_option("--n-sites", f.n_sites, "number of sites N");
    sub->add_option("--subsystem", f.subsystem, "subsystem sizes L")->delimiter(',');
    sub->add_option("--nu", f.nu, "Renyi orders")->delimiter(',');
    sub->add_option("--task", f.task, "sweep task: entropy, fh_coeff, phase");
    sub->add_option("--out", f.out, "output path (file or directory)");
    sub->add_flag("--thermodynamic", f.thermodynamic, "use thermodynamic-limit couplings");
}

RunConfig resolve(CLI::App* sub, const Flags& f) {
    RunConfig c = load_config(f.config);
    auto given = [&](const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };
    if (given("--alpha1")) c.alpha1 = f.alpha1;
    if (given("--alpha2")) c.alpha2 = f.alpha2;
    if (given("--h")) c.h = f.h;
    if (given("--n-sites")) c.n_sites = f.n_sites;
    if (given("--subsystem")) c.subsystem = f.subsystem;
    if (given("--nu")) c.nu = f.nu;
    if (given("--task")) c.task = f.task;
    if (given("--out")) c.out = f.out;
    if (given("--thermodynamic")) c.thermodynamic = f.thermodynamic;
    if (given("--h-list")) c.h_list = f.h_list;
    if (given("--alpha-list")) c.alpha_list = f.alpha_list;
    c.per_jump = f.per_jump;
    c.with_prediction = f.with_prediction;
    c.corrupt = f.corrupt;
    for (double nu : c.nu)
        if (!(nu >= 1.0)) throw lrk::ConfigError("Renyi orders must be >= 1");
    for (int L : c.subsystem)
        if (L < 1) throw lrk::ConfigError("subsystem sizes must be >= 1");
    return c;
}

// Writes to the --out file, or stdout when none was given.
void emit(const RunConfig& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw lrk::IoError("stdout write failed");
    } else {
        lrk::csv::write_file(c.out, text);
    }
}

lrk::ChainParams params_of(const RunConfig& c, int N) {
    lrk::ChainParams p{N, c.alpha1, c.alpha2, c.h, c.thermodynamic};
    p.validate();
    return p;
}

int cmd_spectrum(const RunConfig& c) {
    const lrk::ChainParams p = params_of(c, c.n_sites.value_or(64));
    const auto modes = lrk::spectrum(p);
    std::ostringstream s;
    lrk::csv::Writer w(s, {"n", "k", "t_tilde", "delta_tilde", "omega", "theta", "phi"});
    for (const auto& m : modes)
        w.row(std::vector<std::string>{std::to_string(m.index_n), format_double(m.k), format_double(m.t_tilde),
                                       format_double(m.delta_tilde), format_double(m.omega),
                                       format_double(m.theta), format_double(m.phi)});
    emit(c, s.str());
    return 0;
}

// Analytic log coefficient for the configured exponents, if one is defined.
double analytic_B(const RunConfig& c, double nu, int N) {
    const bool weak = c.alpha1 >= 1.0 && c.alpha1 <= 2.0 && c.alpha2 >= 1.0 && c.alpha2 <= 2.0;
    const bool strong = c.alpha1 < 1.0 && c.alpha2 < 1.0;
    if (weak) return lrk::weak_regime_B(nu, c.alpha1, c.alpha2, c.h).total_B;
    if (strong && nu >= 2.0 && nu == std::floor(nu))
        return lrk::strong_regime_B(static_cast<int>(nu), c.alpha1, c.alpha2, c.h, N).total_B;
    throw lrk::DomainError("no analytic coefficient for these exponents and order");
}

int cmd_entropy_scan(const RunConfig& c) {
    if (c.subsystem.empty()) throw lrk::ConfigError("entropy-scan needs --subsystem");
    std::vector<lrk::GridPoint> grid;
    for (int L : c.subsystem)
        for (double nu : c.nu) {
            const int N = c.n_sites.value_or(2 * L);
            params_of(c, N);
            if (L > N) throw lrk::ConfigError("subsystem larger than the chain");
            grid.push_back({c.alpha1, c.alpha2, c.h, N, L, nu, c.thermodynamic});
        }
    const auto rows = lrk::sweep(grid, lrk::SweepTask::entropy);
    std::ostringstream s;
    std::vector<std::string> header = {"L", "nu", "S_numeric"};
    if (c.with_prediction) {
        header.push_back("S_fh_prediction");
        header.push_back("B_analytic");
    }
    header.push_back("status");
    lrk::csv::Writer w(s, header);
    bool any_error = false;
    for (const auto& r : rows) {
        std::vector<std::string> cells = {std::to_string(r.point.L), format_double(r.point.nu),
                                          format_double(r.error.empty() ? r.values[0] : NAN)};
        std::string err = r.error;
        if (c.with_prediction) {
            double B = NAN;
            try {
                B = analytic_B(c, r.point.nu, r.point.N);
            } catch (const lrk::Error& e) {
                if (err.empty()) err = e.what();
            }
            cells.push_back(format_double(B * std::log(static_cast<double>(r.point.L))));
            cells.push_back(format_double(B));
        }
        for (char& ch : err)
            if (ch == ',' || ch == '\n') ch = ';';
        cells.push_back(err.empty() ? "ok" : "error: " + err);
        any_error |= !r.error.empty();
        w.row(cells);
    }
    emit(c, s.str());
    return any_error ? 2 : 0;
}

int cmd_fh_coeff(const RunConfig& c) {
    struct Row {
        double alpha1, alpha2, h, nu;
        lrk::FHCoefficient B;
        double ceff = NAN, single = NAN;
        std::string err;
    };
    std::vector<Row> rows;
    const int N = c.n_sites.value_or(1024);
    const std::vector<double> alphas = c.alpha_list.empty() ? std::vector<double>{} : c.alpha_list;
    const std::vector<double> hs = c.h_list.empty() ? std::vector<double>{c.h} : c.h_list;
    for (double nu : c.nu) {
        for (double h : hs) {
            if (alphas.empty()) rows.push_back({c.alpha1, c.alpha2, h, nu, {}, NAN, NAN, {}});
            for (double a : alphas) rows.push_back({a, a, h, nu, {}, NAN, NAN, {}});
        }
    }
    for (const auto& r : rows) {
        if (!(r.alpha1 >= 0.0 && r.alpha2 >= 0.0)) throw lrk::ConfigError("exponents must be >= 0");
        if (N < 4 || N % 2) throw lrk::ConfigError("N must be even and >= 4");
    }
    lrk::parallel_for(rows.size(), [&](std::size_t i) {
        Row& r = rows[i];
        try {
            const bool strong = r.alpha1 < 1.0 && r.alpha2 < 1.0;
            if (strong) {
                if (r.nu != std::floor(r.nu) || r.nu < 2.0)
                    throw lrk::DomainError("strong regime needs integer nu >= 2");
                r.B = lrk::strong_regime_B(static_cast<int>(r.nu), r.alpha1, r.alpha2, r.h, N);
                if (r.alpha1 == r.alpha2) {
                    try {
                        r.single = lrk::single_discontinuity_approx(static_cast<int>(r.nu), r.alpha1, r.h);
                    } catch (const lrk::Error&) {
                    }
                }
            } else {
                r.B = lrk::weak_regime_B(r.nu, r.alpha1, r.alpha2, r.h);
                if (r.alpha1 == r.alpha2) r.ceff = lrk::effective_central_charge(r.nu, r.alpha1);
            }
        } catch (const lrk::Error& e) {
            r.err = e.what();
        }
    });
    std::ostringstream s;
    lrk::csv::Writer w(s, {"alpha1", "alpha2", "h", "nu", "B_total", "method", "c_eff",
                           "B_single_discontinuity", "status"});
    bool any_error = false;
    for (const auto& r : rows) {
        std::string err = r.err;
        for (char& ch : err)
            if (ch == ',' || ch == '\n') ch = ';';
        any_error |= !err.empty();
        w.row(std::vector<std::string>{format_double(r.alpha1), format_double(r.alpha2), format_double(r.h),
                                       format_double(r.nu), format_double(err.empty() ? r.B.total_B : NAN),
                                       std::string(lrk::method_name(r.B.method)), format_double(r.ceff),
                                       format_double(r.single), err.empty() ? "ok" : "error: " + err});
    }
    emit(c, s.str());
    if (c.per_jump) {
        if (c.out.empty()) throw lrk::ConfigError("--per-jump needs --out");
        std::ostringstream pj;
        lrk::csv::Writer wj(pj, {"row", "location", "B_jump"});
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (const auto& [loc, B] : rows[i].B.per_jump)
                wj.row(std::vector<std::string>{std::to_string(i), format_double(loc), format_double(B)});
        std::string base = c.out;
        if (base.size() > 4 && base.compare(base.size() - 4, 4, ".csv") == 0) base.resize(base.size() - 4);
        lrk::csv::write_file(base + ".jumps.csv", pj.str());
    }
    return any_error ? 2 : 0;
}

int cmd_sweep(const RunConfig& c) {
    const lrk::SweepTask task = lrk::parse_task(c.task);
    std::vector<lrk::GridPoint> grid = c.grid;
    if (grid.empty()) {
        const std::vector<double> hs = c.h_list.empty() ? std::vector<double>{c.h} : c.h_list;
        const int N = c.n_sites.value_or(64);
        const int L = c.subsystem.empty() ? N / 2 : c.subsystem.front();
        for (double h : hs)
            for (double nu : c.nu) grid.push_back({c.alpha1, c.alpha2, h, N, L, nu, c.thermodynamic});
    }
    for (const auto& g : grid) {
        lrk::ChainParams{g.N, g.alpha1, g.alpha2, g.h, g.thermodynamic}.validate();
        if (!(g.nu >= 1.0)) throw lrk::ConfigError("Renyi orders must be >= 1");
    }
    std::ostringstream s;
    const auto rows = lrk::sweep(grid, task, &s);
    emit(c, s.str());
    for (const auto& r : rows)
        if (!r.error.empty()) return 2;
    return 0;
}

// Gaussian-state entropies against exact diagonalisation on small chains.
int cmd_verify(const RunConfig& c) {
    struct Set {
        double a1, a2, h;
    };
    const std::vector<Set> sets = {{1.5, 1.5, 0.5}, {1.5, 1.5, 2.0}, {0.5, 0.5, 0.5}, {1.8, 1.5, 1.2}};
    std::vector<int> Ns = {8, 10};
    if (c.n_sites) Ns = {*c.n_sites};
    for (int N : Ns) {
        if (N > lrk::kOracleMaxSites)
            throw lrk::DimensionError("verify supports N <= " + std::to_string(lrk::kOracleMaxSites));
        lrk::ChainParams{N, 1.5, 1.5, 0.5, false}.validate();
    }
    const std::vector<double> nus = {1.0, 2.0, 3.0};
    const double tol = 1e-8;
    bool ok = true;
    std::ostringstream rep;
    for (int N : Ns)
        for (const auto& st : sets) {
            const lrk::ChainParams p{N, st.a1, st.a2, st.h, false};
            const lrk::FockState psi = lrk::build_bcs_vacuum(p);
            double worst = 0.0;
            std::string failure;
            try {
                for (int L = 1; L <= N / 2; ++L) {
                    lrk::CorrelationMatrix corr = lrk::build_correlation_matrix(p, L);
                    if (c.corrupt) corr = corr.with_perturbed_entry(0, 1, 1e-3);
                    for (double nu : nus) {
                        const double g = lrk::renyi_entropy(corr, nu).value;
                        const double e = lrk::exact_entropy(psi, L, nu);
                        worst = std::max(worst, std::fabs(g - e));
                    }
                }
            } catch (const lrk::NumericalError& e) {
                // A corrupted matrix can leave the physical range entirely.
                failure = e.what();
            }
            const bool pass = failure.empty() && worst < tol;
            ok &= pass;
            char line[160];
            std::snprintf(line, sizeof line, "N=%d alpha1=%g alpha2=%g h=%g max|dS|=%.3e %s", N, st.a1,
                          st.a2, st.h, worst, pass ? "PASS" : "FAIL");
            rep << line << (failure.empty() ? "" : " (" + failure + ")") << "\n";
        }
    rep << (ok ? "verify: all parameter sets within 1e-8\n" : "verify: FAILED\n");
    emit(c, rep.str());
    return ok ? 0 : 2;
}

int cmd_reproduce(const RunConfig& c) {
    if (c.figure.empty()) throw lrk::ConfigError("reproduce needs a figure id");
    const auto ids = lrk::tools::figure_ids();
    std::vector<std::string> todo;
    if (c.figure == "all") todo = ids;
    else if (std::find(ids.begin(), ids.end(), c.figure) != ids.end()) todo = {c.figure};
    else throw lrk::ConfigError("unknown figure id '" + c.figure + "'");
    const std::string dir = c.out.empty() ? "." : c.out;
    for (const auto& id : todo)
        for (const auto& path : lrk::tools::reproduce_figure(id, dir, c.subsystem)) std::cout << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Long-range Kitaev chain entanglement toolkit"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");
    Flags f;
    std::string figure;

    auto* spectrum = app.add_subcommand("spectrum", "mode couplings and Bogoliubov angles");
    auto* scan = app.add_subcommand("entropy-scan", "Renyi entropies over subsystem sizes");
    auto* fh = app.add_subcommand("fh-coeff", "logarithmic scaling coefficients");
    auto* sw = app.add_subcommand("sweep", "task over a parameter grid");
    auto* verify = app.add_subcommand("verify", "cross-check against exact diagonalisation");
    auto* repro = app.add_subcommand("reproduce", "figure data tables and plot scripts");
    for (auto* sub : {spectrum, scan, fh, sw, verify, repro}) add_common(sub, f);
    scan->add_flag("--with-prediction", f.with_prediction, "join analytic B and B ln L columns");
    fh->add_option("--h-list", f.h_list, "chemical potentials to sweep")->delimiter(',');
    fh->add_option("--alpha-list", f.alpha_list, "equal exponents to sweep")->delimiter(',');
    fh->add_flag("--per-jump", f.per_jump, "also write <out>.jumps.csv");
    sw->add_option("--h-list", f.h_list, "chemical potentials to sweep")->delimiter(',');
    verify->add_flag("--corrupt", f.corrupt, "perturb one correlation entry (negative control)");
    repro->add_option("figure", figure, "figure id (3a..7 or all)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        RunConfig c = resolve(sub, f);
        if (!figure.empty()) c.figure = figure;
        if (sub == spectrum) return cmd_spectrum(c);
        if (sub == scan) return cmd_entropy_scan(c);
        if (sub == fh) return cmd_fh_coeff(c);
        if (sub == sw) return cmd_sweep(c);
        if (sub == verify) return cmd_verify(c);
        if (sub == repro) return cmd_reproduce(c);
    } catch (const lrk::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const lrk::ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 1;
    } catch (const lrk::DomainError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 1;
    } catch (const lrk::DimensionError& e) {
        std::cerr << "invalid size: " << e.what() << "\n";
        return 1;
    } catch (const lrk::Error& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
