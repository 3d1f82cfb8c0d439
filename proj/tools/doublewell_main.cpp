// Command-line front end: point evaluations, grid sweeps, caustic tracing,
// figure-data reproduction and oracle comparisons. Emits CSV or JSON.

#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "doublewell/caustics.hpp"
#include "doublewell/density.hpp"
#include "doublewell/parallel.hpp"
#include "doublewell/spectral.hpp"
#include "doublewell/table.hpp"
#include "doublewell/trajectories.hpp"
#include "doublewell/tuning.hpp"
#include "doublewell/validate.hpp"
#include "json.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

// "start:stop:step" -> [start, stop) with the given step; a bare number is a
// single point. Comma lists of either form are concatenated.
std::vector<double> parse_range(const std::string& spec) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string item = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!item.empty()) {
            auto c1 = item.find(':');
            if (c1 == std::string::npos) {
                out.push_back(std::stod(item));
            } else {
                auto c2 = item.find(':', c1 + 1);
                if (c2 == std::string::npos) throw CLI::ValidationError("range needs start:stop:step");
                double start = std::stod(item.substr(0, c1));
                double stop = std::stod(item.substr(c1 + 1, c2 - c1 - 1));
                double step = std::stod(item.substr(c2 + 1));
                if (step <= 0) throw CLI::ValidationError("range step must be > 0");
                for (int i = 0;; ++i) {
                    double v = start + i * step;
                    if (v >= stop - 1e-15 * std::max(1.0, std::abs(stop))) break;
                    out.push_back(v);
                }
            }
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw CLI::ValidationError("empty range");
    return out;
}

void emit(const dw::Table& table, const std::string& out_path, const std::string& format,
          bool gnuplot, const std::string& xcol, const std::vector<std::string>& ycols) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + out_path);
        os = &file;
    }
    if (format == "json")
        table.write_json(*os);
    else
        table.write_csv(*os);
    if (gnuplot && !out_path.empty() && format == "csv") {
        std::ofstream gp(out_path + ".gp");
        gp << "set datafile separator ','\nset key autotitle columnhead\n";
        int xi = 1;
        for (std::size_t c = 0; c < table.columns().size(); ++c)
            if (table.columns()[c] == xcol) xi = static_cast<int>(c) + 1;
        gp << "plot ";
        bool first = true;
        for (const auto& y : ycols) {
            for (std::size_t c = 0; c < table.columns().size(); ++c) {
                if (table.columns()[c] == y) {
                    gp << (first ? "" : ", ") << "'" << out_path << "' using " << xi << ":"
                       << c + 1 << " with lines";
                    first = false;
                }
            }
        }
        gp << "\npause -1\n";
    }
}

struct CommonOpts {
    std::string out;
    std::string format = "csv";
    int threads = 0;
    bool gnuplot = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out, "output path (default: stdout)");
    cmd->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", c.threads, "worker threads (env CAUSTIC_THREADS as fallback)");
    cmd->add_flag("--gnuplot", c.gnuplot, "emit a companion gnuplot script next to --out");
}

int cmd_rho(const std::string& theta_spec, const std::string& q0_spec, double g,
            const std::string& method, const CommonOpts& common) {
    auto thetas = parse_range(theta_spec);
    auto q0s = parse_range(q0_spec);

    if (method == "oracle") {
        dw::Table table({"q0", "theta", "g", "rho_exact"});
        double th_min = *std::min_element(thetas.begin(), thetas.end());
        auto basis = dw::oracle::solve_basis(g, {}, 40.0 / th_min);
        for (double th : thetas)
            for (double q0 : q0s)
                table.add_row({q0, th, g, basis.rho_at(th, q0)});
        emit(table, common.out, common.format, common.gnuplot, "q0", {"rho_exact"});
        return 0;
    }

    struct Row {
        double q0, th;
        dw::density::DensityPoint pt;
    };
    std::vector<Row> rows;
    for (double th : thetas)
        for (double q0 : q0s) rows.push_back({q0, th, {}});

    std::atomic<bool> failed{false};
    std::string fail_msg;
    std::mutex fail_mutex;
    dw::parallel_for(rows.size(), common.threads, [&](std::size_t i) {
        if (failed.load()) return;
        try {
            rows[i].pt = method == "usual"
                             ? dw::density::rho_usual(rows[i].q0, rows[i].th, g)
                             : dw::density::rho_improved(rows[i].q0, rows[i].th, g);
        } catch (const std::exception& e) {
            std::lock_guard lock(fail_mutex);
            failed = true;
            fail_msg = "at (q0=" + std::to_string(rows[i].q0) +
                       ", theta=" + std::to_string(rows[i].th) + "): " + e.what();
        }
    });
    if (failed) throw std::runtime_error(fail_msg);

    dw::Table table({"q0", "theta", "g", "n_solutions", "rho_usual", "rho_improved", "F_factor",
                     "xi_or_phi", "mu_or_chi"});
    for (const auto& r : rows) {
        double xi_phi, mu_chi;
        if (const auto* p3 = std::get_if<dw::density::ThreeExtrema>(&r.pt.effpot)) {
            xi_phi = p3->xi;
            mu_chi = p3->mu;
        } else {
            const auto& p1 = std::get<dw::density::ComplexPair>(r.pt.effpot);
            xi_phi = p1.phi;
            mu_chi = p1.chi;
        }
        table.add_row({r.q0, r.th, g, static_cast<std::int64_t>(r.pt.n_solutions), r.pt.rho_usual,
                       r.pt.rho_improved, r.pt.f_factor, xi_phi, mu_chi});
    }
    emit(table, common.out, common.format, common.gnuplot, "q0", {"rho_usual", "rho_improved"});
    return 0;
}

int cmd_caustic(const std::string& theta_spec, bool single, double step, const CommonOpts& common) {
    dw::Table table({"curve_id", "kind", "theta", "q0"});
    auto kind_name = [](dw::caustics::CurveKind k) {
        return k == dw::caustics::CurveKind::PairCreation ? std::string("pair_creation")
                                                          : std::string("periodic_split");
    };
    if (single) {
        auto thetas = parse_range(theta_spec);
        std::int64_t id = 0;
        for (double th : thetas) {
            for (int m = 1;; ++m) {
                try {
                    double q = dw::caustics::fold_boundary(th, m);
                    table.add_row({id++, kind_name(dw::caustics::CurveKind::PairCreation) +
                                             ":" + std::to_string(m),
                                   th, q});
                } catch (const std::exception&) {
                    break;
                }
            }
            for (int m = 1; th >= 2.0 * m * M_PI; ++m)
                table.add_row({id++, kind_name(dw::caustics::CurveKind::PeriodicSplit) + ":" +
                                         std::to_string(m),
                               th, dw::caustics::amplitude_A(th, m)});
        }
    } else {
        auto thetas = parse_range(theta_spec);
        double theta_max = *std::max_element(thetas.begin(), thetas.end());
        if (theta_max <= M_PI) throw CLI::ValidationError("caustic: need theta range beyond pi");
        auto curves = dw::caustics::trace_curves(theta_max, step);
        std::int64_t id = 0;
        for (const auto& c : curves) {
            std::string name = kind_name(c.kind) + ":" + std::to_string(c.branch);
            for (const auto& p : c.points) table.add_row({id, name, p[1], p[0]});
            ++id;
        }
    }
    emit(table, common.out, common.format, common.gnuplot, "q0", {"theta"});
    return 0;
}

int cmd_branches(const std::string& theta_spec, const std::string& sweep,
                 const std::string& range_spec, const CommonOpts& common) {
    auto thetas = parse_range(theta_spec);
    auto xs = parse_range(range_spec);
    if (sweep == "qt") {
        dw::Table table({"theta", "q_t", "q0"});
        for (double th : thetas)
            for (double qt : xs)
                table.add_row({th, qt, dw::traj::q0_of_qt(qt, th)});
        emit(table, common.out, common.format, common.gnuplot, "q_t", {"q0"});
        return 0;
    }
    if (sweep == "xi") {
        dw::Table table({"theta", "xi", "q0_over_i"});
        for (double th : thetas)
            for (double xi : xs) {
                std::complex<double> q0 = dw::traj::q0_of_qt(std::complex<double>(0.0, xi), th);
                table.add_row({th, xi, q0.imag()});  // -i q0 for purely imaginary q0
            }
        emit(table, common.out, common.format, common.gnuplot, "xi", {"q0_over_i"});
        return 0;
    }
    // q0 sweep: all real branches plus the complex pair, one row per solution
    dw::Table table({"theta", "q0", "branch", "kind", "qt_re", "qt_im"});
    auto kind_name = [](const dw::traj::TrajectorySolution& s) {
        switch (s.kind) {
            case dw::traj::Kind::GlobalMin: return std::string("global_min");
            case dw::traj::Kind::LocalMin: return std::string("local_min");
            case dw::traj::Kind::ComplexPair: return std::string("complex_pair");
            default: return "saddle_" + std::to_string(s.saddle_order);
        }
    };
    for (double th : thetas) {
        for (double q0 : xs) {
            auto sols = dw::traj::solution_set(q0, th);
            std::int64_t b = 0;
            for (const auto& s : sols)
                table.add_row({th, q0, b++, kind_name(s), s.q_t.real(), s.q_t.imag()});
            try {
                auto pair = dw::traj::find_complex_pair(q0, th);
                table.add_row({th, q0, b++, kind_name(pair.first), pair.first.q_t.real(),
                               pair.first.q_t.imag()});
                table.add_row({th, q0, b++, kind_name(pair.second), pair.second.q_t.real(),
                               pair.second.q_t.imag()});
            } catch (const std::exception&) {
                // complex pair only exists in the one-solution region
            }
        }
    }
    emit(table, common.out, common.format, common.gnuplot, "q0", {"qt_re", "qt_im"});
    return 0;
}

int cmd_validate(const std::vector<std::string>& only, std::optional<double> g_override,
                 const CommonOpts& common) {
    dw::validate::Options opts;
    opts.only = only;
    opts.g_oracle = g_override;
    auto results = dw::validate::run_acceptance(opts);
    nlohmann::json j = nlohmann::json::array();
    bool all_ok = true;
    for (const auto& r : results) {
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.id << "  measured=" << r.measured
                  << " threshold=" << r.threshold << "  (" << r.seconds << " s)\n";
        all_ok = all_ok && r.passed;
        j.push_back({{"id", r.id},
                     {"description", r.description},
                     {"passed", r.passed},
                     {"measured", r.measured},
                     {"threshold", r.threshold},
                     {"detail", r.detail},
                     {"seconds", r.seconds}});
    }
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!common.out.empty()) {
        file.open(common.out);
        os = &file;
    }
    *os << j.dump(2) << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diagonal thermal density matrix of the quartic double well in the usual and "
                 "caustic-free semiclassical approximations"};
    app.require_subcommand(1);

    std::string theta_spec, q0_spec = "0", range_spec, method = "both", sweep = "q0";
    double g = 0.3, step = 1e-2, tol_root = 0, tol_quad = 0;
    bool single = false;
    std::vector<std::string> only;
    std::optional<double> g_override;
    CommonOpts common;

    app.add_option("--tol-root", tol_root, "root-residual tolerance override");
    app.add_option("--tol-quad", tol_quad, "quadrature tolerance override");

    auto* rho = app.add_subcommand("rho", "density matrix diagonal on a (q0,Theta) grid");
    rho->add_option("--g", g, "coupling")->check(CLI::PositiveNumber);
    rho->add_option("--theta", theta_spec, "Theta value or start:stop:step (stop exclusive)")
        ->required();
    rho->add_option("--q0", q0_spec, "q0 value or range");
    rho->add_option("--method", method, "usual | improved | both | oracle")
        ->check(CLI::IsMember({"usual", "improved", "both", "oracle"}));
    add_common(rho, common);

    auto* caustic = app.add_subcommand("caustic", "trace catastrophe boundaries");
    caustic->add_option("--theta", theta_spec, "Theta range (or value with --single)")->required();
    caustic->add_flag("--single", single, "evaluate curves at the given Theta values only");
    caustic->add_option("--step", step, "Theta step for tracing")->check(CLI::PositiveNumber);
    add_common(caustic, common);

    auto* branches = app.add_subcommand("branches", "turning-point branches");
    branches->add_option("--theta", theta_spec, "Theta value or comma list")->required();
    branches->add_option("--sweep", sweep, "qt | xi | q0")
        ->check(CLI::IsMember({"qt", "xi", "q0"}));
    branches->add_option("--range", range_spec, "sweep range start:stop:step")->required();
    add_common(branches, common);

    auto* validate = app.add_subcommand("validate", "run the acceptance criteria");
    validate->add_option("--only", only, "run only the named criteria");
    validate->add_option("--g", g_override, "override g in the oracle-agreement check");
    add_common(validate, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (tol_root > 0) dw::tuning::root_tol = tol_root;
    if (tol_quad > 0) dw::tuning::quad_tol = tol_quad;

    try {
        if (rho->parsed()) return cmd_rho(theta_spec, q0_spec, g, method, common);
        if (caustic->parsed()) return cmd_caustic(theta_spec, single, step, common);
        if (branches->parsed()) return cmd_branches(theta_spec, sweep, range_spec, common);
        if (validate->parsed()) return cmd_validate(only, g_override, common);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitConfig;
}
