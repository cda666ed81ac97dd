#pragma once

// The frontlab command line: one subcommand per operation, scans, figure
// reproduction, golden comparison. run() is separate from main so tests can
// drive it in-process.

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frontlab/bargmann.hpp"
#include "frontlab/dynamics.hpp"
#include "frontlab/error.hpp"
#include "frontlab/evans.hpp"
#include "frontlab/io.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/profile.hpp"
#include "frontlab/spectral.hpp"

namespace frontlab::cli {

using nlohmann::json;

enum ExitCode { kOk = 0, kConfig = 2, kNumerical = 3, kGolden = 4 };

inline int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ConfigError:
        case ErrorKind::DomainError:
        case ErrorKind::ResolutionError:
        case ErrorKind::CFLViolation: return kConfig;
        case ErrorKind::GoldenMismatch: return kGolden;
        default: return kNumerical;
    }
}

struct FrontArgs {
    double nu = 0.0;
    double L = 0.0;
    std::size_t N = 0;
    double ode_tol = 1e-10;

    double half_length() const { return L > 0.0 ? L : default_half_length(nu); }
    std::size_t points() const { return N > 0 ? N : default_grid_points(half_length()); }
};

struct Outputs {
    std::string dir = ".";
    bool plot = false;
    std::string golden;
    std::vector<std::string> files;

    std::string path(const std::string& name) const { return (std::filesystem::path(dir) / name).string(); }

    void write(const std::string& name, const std::string& text) {
        std::filesystem::create_directories(dir);
        io::write_text(path(name), text);
        files.push_back(name);
    }

    void table(const std::string& stem, const io::CsvTable& t, const std::string& title) {
        write(stem + ".csv", t.str());
        if (plot) write(stem + ".svg", io::svg_from_table(title, t));
    }
};

namespace detail {

[[noreturn]] inline void config_error(const std::string& what) { frontlab::detail::fail(ErrorKind::ConfigError, "cli", what); }

inline void check_front_args(const FrontArgs& a) {
    if (!std::isfinite(a.nu)) config_error("--nu must be finite");
    if (a.L < 0.0 || !std::isfinite(a.L)) config_error("--L must be positive");
    if (a.N != 0 && a.N < 64) config_error("--N must be at least 64");
    if (!(a.ode_tol > 0.0 && a.ode_tol <= 1e-3)) config_error("--ode-tol must lie in (0, 1e-3]");
}

inline FrontProfile solve(const FrontArgs& a) { return solve_front(a.nu, a.half_length(), a.ode_tol, a.points()); }

inline void add_front_options(CLI::App* sub, FrontArgs& a, bool nu_required = true) {
    auto* o = sub->add_option("--nu", a.nu, "dispersion coefficient nu");
    if (nu_required) o->required();
    sub->add_option("--L", a.L, "half-length of the domain (default 40 max(1,|nu|))");
    sub->add_option("--N", a.N, "number of grid points (default: spacing 0.01)");
    sub->add_option("--ode-tol", a.ode_tol, "relative tolerance of the front integrator")->capture_default_str();
}

/// Compares result entries against {key: {value, tol}}; keys starting with
/// '/' are JSON pointers.
inline json compare_golden(const json& result, const json& golden) {
    json report = json::array();
    bool ok = true;
    for (const auto& [key, ref] : golden.items()) {
        json entry{{"key", key}};
        const double want = ref.at("value").get<double>();
        const double tol = ref.at("tol").get<double>();
        std::optional<double> got;
        try {
            const json& v = key.starts_with('/') ? result.at(json::json_pointer(key)) : result.at(key);
            if (v.is_number()) got = v.get<double>();
            if (v.is_boolean()) got = v.get<bool>() ? 1.0 : 0.0;
        } catch (const json::exception&) {
        }
        entry["expected"] = want;
        entry["tol"] = tol;
        entry["actual"] = got ? json(*got) : json(nullptr);
        entry["pass"] = got && std::abs(*got - want) <= tol;
        ok = ok && entry["pass"].get<bool>();
        report.push_back(entry);
    }
    return {{"pass", ok}, {"checks", report}};
}

inline double interpolate_crossing(const std::vector<double>& x, const std::vector<double>& y, double level) {
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if ((y[i] - level) * (y[i + 1] - level) <= 0.0 && y[i] != y[i + 1]) {
            return x[i] + (level - y[i]) / (y[i + 1] - y[i]) * (x[i + 1] - x[i]);
        }
    }
    return NAN;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1);
    return out;
}

inline std::string nu_tag(double nu) {
    std::ostringstream os;
    os << nu;
    return os.str();
}

inline Boundary parse_boundary(const std::string& s) {
    if (s == "dirichlet") return Boundary::Dirichlet;
    if (s == "open") return Boundary::Open;
    config_error("--boundary must be dirichlet or open");
}

}  // namespace detail

/// Parses argv, runs the command and prints its JSON record to `out`.
/// Failures print a JSON error record to `err` and return a nonzero code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"frontlab: fronts, Bargmann integral, bound states, Evans function and modulated dynamics "
                 "for KdV-Burgers equations"};
    app.name("frontlab");
    app.require_subcommand(1, 1);
    app.fallthrough();
    Outputs o;
    app.add_option("-o,--out", o.dir, "directory for CSV/JSON/SVG artifacts")->capture_default_str();
    app.add_flag("--plot", o.plot, "also write an SVG plot per series");
    app.add_option("--golden", o.golden, "JSON file of reference values {key: {value, tol}} to check the result against");

    json result;
    std::string record_name;
    std::function<void()> action;
    auto command = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        return sub;
    };

    // front
    FrontArgs fa;
    auto* front = command("front", "solve the traveling front; writes front.csv (x,phi,dphi,ddphi) and front.json");
    detail::add_front_options(front, fa);
    front->callback([&] {
        action = [&] {
            detail::check_front_args(fa);
            const auto p = detail::solve(fa);
            const auto d = diagnose(p);
            result = io::front_json(p);
            result["boundary_error"] = d.boundary_error;
            result["min_dphi"] = d.min_dphi;
            result["max_dphi"] = d.max_dphi;
            result["dphi_energy"] = d.dphi_energy;
            result["grid_points"] = p.size();
            o.write("front.csv", io::front_csv(p).str());
            if (o.plot) {
                o.write("front.svg", io::svg_plot("front, nu=" + detail::nu_tag(p.nu), "x", "",
                                                  {{"phi", p.grid.abscissae(), p.phi}, {"phi'", p.grid.abscissae(), p.dphi}}));
            }
            record_name = "front.json";
        };
    });

    // tau
    FrontArgs ta;
    auto* tau_cmd = command("tau", "Bargmann integral tau(phi'/2), monotonization and ideal shock of one front");
    detail::add_front_options(tau_cmd, ta);
    tau_cmd->callback([&] {
        action = [&] {
            detail::check_front_args(ta);
            const auto p = detail::solve(ta);
            result = io::to_json(bargmann_report(p));
            result["tau_full"] = tau(p.derivative()).tau;
            if (std::abs(p.nu) <= 0.25) {
                const auto b = analytic_tau_bound(std::abs(p.nu));
                result["analytic_bound"] = b.bound;
                result["analytic_phi_star"] = b.phi_star;
            }
            record_name = "tau.json";
        };
    });

    // tau-scan
    double scan_from = 0.25, scan_to = 1.25;
    std::size_t scan_steps = 101;
    std::vector<double> scan_list;
    double scan_tol = 1e-10;
    auto* tau_scan = command("tau-scan", "tau(phi'/2) over a range of nu; writes tau_scan.csv (nu,tau)");
    tau_scan->add_option("--from", scan_from, "first nu")->capture_default_str();
    tau_scan->add_option("--to", scan_to, "last nu")->capture_default_str();
    tau_scan->add_option("--steps", scan_steps, "number of nu values")->capture_default_str();
    tau_scan->add_option("--nus", scan_list, "explicit list of nu values (overrides the range)")->delimiter(',');
    tau_scan->add_option("--ode-tol", scan_tol, "front integrator tolerance")->capture_default_str();
    tau_scan->callback([&] {
        action = [&] {
            if (scan_list.empty()) {
                if (scan_steps < 2 || !(scan_from < scan_to)) detail::config_error("need --steps >= 2 and --from < --to");
                scan_list = detail::linspace(scan_from, scan_to, scan_steps);
            }
            std::sort(scan_list.begin(), scan_list.end());
            std::vector<double> taus(scan_list.size());
            parallel_for(scan_list.size(), [&](std::size_t i) { taus[i] = front_tau(solve_front(scan_list[i], scan_tol)); });
            o.table("tau_scan", io::tau_scan_csv(scan_list, taus), "tau(phi'/2) vs nu");
            result = {{"count", scan_list.size()},
                      {"nu_min", scan_list.front()},
                      {"nu_max", scan_list.back()},
                      {"tau_min", *std::min_element(taus.begin(), taus.end())},
                      {"tau_max", *std::max_element(taus.begin(), taus.end())}};
            const double c = detail::interpolate_crossing(scan_list, taus, 1.0);
            result["tau_one_crossing"] = std::isnan(c) ? json(nullptr) : json(c);
            record_name = "tau_scan.json";
        };
    });

    // tau-crossing
    double tc_target = 1.0, tc_lo = 0.25, tc_hi = 1.25, tc_nu_tol = 1e-4, tc_ode_tol = 1e-10;
    auto* tau_crossing = command("tau-crossing", "nu at which tau(phi'/2) reaches a target, by bisection");
    tau_crossing->add_option("--target", tc_target, "target tau")->capture_default_str();
    tau_crossing->add_option("--lo", tc_lo, "lower end of the nu bracket")->capture_default_str();
    tau_crossing->add_option("--hi", tc_hi, "upper end of the nu bracket")->capture_default_str();
    tau_crossing->add_option("--nu-tol", tc_nu_tol, "bisection tolerance in nu")->capture_default_str();
    tau_crossing->add_option("--ode-tol", tc_ode_tol, "front integrator tolerance")->capture_default_str();
    tau_crossing->callback([&] {
        action = [&] {
            if (!(tc_lo < tc_hi) || !(tc_nu_tol > 0.0)) detail::config_error("need --lo < --hi and --nu-tol > 0");
            const double nu =
                find_tau_crossing(tc_target, tc_lo, tc_hi, [&](double n) { return solve_front(n, tc_ode_tol); }, tc_nu_tol);
            result = {{"target", tc_target}, {"nu_lo", tc_lo}, {"nu_hi", tc_hi}, {"nu", nu}};
            record_name = "tau_crossing.json";
        };
    });

    // spectrum
    FrontArgs sa;
    double sp_eps = 0.0;
    std::optional<double> sp_tol, sp_gamma;
    std::string sp_boundary = "dirichlet";
    auto* spectrum = command("spectrum", "negative eigenvalues of -(1-eps) d^2/dx^2 + phi'/2");
    detail::add_front_options(spectrum, sa);
    spectrum->add_option("--epsilon", sp_eps, "kinetic reduction eps in [0,1)")->capture_default_str();
    spectrum->add_option("--tol", sp_tol, "count eigenvalues below -tol (default 1e-8/h^2, 0 for open)");
    spectrum->add_option("--gamma", sp_gamma, "also report the lowest eigenvalue of H + gamma|q><q|");
    spectrum->add_option("--boundary", sp_boundary, "dirichlet or open")->capture_default_str();
    spectrum->callback([&] {
        action = [&] {
            detail::check_front_args(sa);
            const auto b = detail::parse_boundary(sp_boundary);
            if (sp_gamma && !(*sp_gamma >= 0.0)) detail::config_error("--gamma must be nonnegative");
            const auto p = detail::solve(sa);
            const auto op = build_operator(p.half_derivative(), sp_eps, b);
            auto r = sp_tol ? count_negative_eigenvalues(op, *sp_tol) : count_negative_eigenvalues(op);
            r.nu = p.nu;
            if (sp_gamma) {
                r.gamma = *sp_gamma;
                r.min_eig_perturbed = rank_one_min_eigenvalue(op, *sp_gamma);
            }
            result = io::to_json(r);
            result["boundary"] = sp_boundary;
            record_name = "spectrum.json";
        };
    });

    // rank-one
    FrontArgs ra;
    double ro_eps = 0.0, ro_gamma = 1.05;
    std::vector<double> ro_gammas;
    std::string ro_boundary = "dirichlet";
    auto* rank_one = command("rank-one", "rank-one perturbation H + gamma|q><q| with q = phi'/2");
    detail::add_front_options(rank_one, ra);
    rank_one->add_option("--epsilon", ro_eps, "kinetic reduction eps in [0,1)")->capture_default_str();
    rank_one->add_option("--gamma", ro_gamma, "modulation strength")->capture_default_str();
    rank_one->add_option("--gammas", ro_gammas, "gamma grid for lambda(gamma); writes rank_one.csv")->delimiter(',');
    rank_one->add_option("--boundary", ro_boundary, "dirichlet or open")->capture_default_str();
    rank_one->callback([&] {
        action = [&] {
            detail::check_front_args(ra);
            const auto b = detail::parse_boundary(ro_boundary);
            if (!(ro_gamma >= 0.0)) detail::config_error("--gamma must be nonnegative");
            for (double g : ro_gammas)
                if (!(g >= 0.0)) detail::config_error("--gammas must be nonnegative");
            const auto p = detail::solve(ra);
            const auto q = p.half_derivative();
            const auto op = build_operator(q, ro_eps, b);
            const double tol = default_negative_tolerance(op);
            result = {{"nu", p.nu},
                      {"epsilon", ro_eps},
                      {"gamma", ro_gamma},
                      {"boundary", ro_boundary},
                      {"min_eig_perturbed", rank_one_min_eigenvalue(op, ro_gamma)},
                      {"negative_count", rank_one_negative_count(op, ro_gamma, tol)},
                      {"gamma_threshold", -1.0 / trapezoid(q)}};
            if (!ro_gammas.empty()) {
                std::sort(ro_gammas.begin(), ro_gammas.end());
                const auto lam = eigenvalue_vs_gamma(op, ro_gammas, tol);
                io::CsvTable t({"gamma", "lambda", "negative_count"});
                for (std::size_t i = 0; i < lam.size(); ++i) {
                    t.add_row({ro_gammas[i], lam[i] ? *lam[i] : NAN,
                               static_cast<double>(rank_one_negative_count(op, ro_gammas[i], tol))});
                }
                o.table("rank_one", t, "lowest eigenvalue vs gamma");
            }
            record_name = "rank_one.json";
        };
    });

    // evans
    FrontArgs ea;
    double ev_lmin = -2.0, ev_lmax = -1e-4, ev_shoot_L = 0.0;
    std::size_t ev_points = 200;
    auto add_lambda_options = [&](CLI::App* sub) {
        sub->add_option("--lambda-min", ev_lmin, "most negative lambda")->capture_default_str();
        sub->add_option("--lambda-max", ev_lmax, "least negative lambda (the origin is always added)")->capture_default_str();
        sub->add_option("--points", ev_points, "log-spaced lambda samples")->capture_default_str();
    };
    auto curve_for = [&](const FrontProfile& p, double L) {
        return evans_curve(p, L > 0.0 ? L : p.half_length, evans_lambda_grid(ev_points, ev_lmin, ev_lmax));
    };
    auto check_lambda = [&] {
        if (ev_points < 2 || !(ev_lmin < ev_lmax && ev_lmax < 0.0)) {
            detail::config_error("need --points >= 2 and --lambda-min < --lambda-max < 0");
        }
    };
    auto* evans = command("evans", "rescaled Evans function; writes evans.csv (lambda,delta) and evans.json");
    detail::add_front_options(evans, ea);
    add_lambda_options(evans);
    evans->add_option("--shoot-L", ev_shoot_L, "shooting half-length (default: the front's)");
    evans->callback([&] {
        action = [&] {
            detail::check_front_args(ea);
            check_lambda();
            const auto p = detail::solve(ea);
            if (ev_shoot_L < 0.0 || ev_shoot_L > p.half_length) detail::config_error("--shoot-L must lie in (0, L]");
            const auto c = curve_for(p, ev_shoot_L);
            o.table("evans", io::evans_csv(c), "Delta_0(lambda), nu=" + detail::nu_tag(p.nu));
            result = io::to_json(c);
            record_name = "evans.json";
        };
    });

    // evans-scan
    std::vector<double> es_nus;
    double es_tol = 1e-10;
    auto* evans_scan = command("evans-scan", "Evans curves for several nu; writes evans_nu<nu>.csv and evans_scan.csv");
    evans_scan->add_option("--nus", es_nus, "comma-separated nu values")->required()->delimiter(',');
    evans_scan->add_option("--ode-tol", es_tol, "front integrator tolerance")->capture_default_str();
    add_lambda_options(evans_scan);
    evans_scan->callback([&] {
        action = [&] {
            check_lambda();
            std::sort(es_nus.begin(), es_nus.end());
            std::vector<FrontProfile> fronts(es_nus.size());
            parallel_for(es_nus.size(), [&](std::size_t i) { fronts[i] = solve_front(es_nus[i], es_tol); });
            io::CsvTable summary({"nu", "negative_roots", "delta_at_zero"});
            result = {{"curves", json::array()}};
            for (const auto& p : fronts) {
                const auto c = curve_for(p, 0.0);
                o.table("evans_nu" + detail::nu_tag(p.nu), io::evans_csv(c), "Delta_0, nu=" + detail::nu_tag(p.nu));
                summary.add_row({p.nu, static_cast<double>(count_negative_roots(c)), c.delta_at_zero});
                result["curves"].push_back(io::to_json(c));
            }
            o.write("evans_scan.csv", summary.str());
            record_name = "evans_scan.json";
        };
    });

    // nu-critical
    double nc_lo = 4.0, nc_hi = 4.2, nc_tol = 1e-3, nc_ode_tol = 1e-10;
    auto* nu_critical = command("nu-critical", "nu where Delta_0(0) changes sign, by bisection");
    nu_critical->add_option("--lo", nc_lo, "lower end of the nu bracket")->capture_default_str();
    nu_critical->add_option("--hi", nc_hi, "upper end of the nu bracket")->capture_default_str();
    nu_critical->add_option("--nu-tol", nc_tol, "bisection tolerance in nu")->capture_default_str();
    nu_critical->add_option("--ode-tol", nc_ode_tol, "front integrator tolerance")->capture_default_str();
    nu_critical->callback([&] {
        action = [&] {
            if (!(nc_lo < nc_hi) || !(nc_tol > 0.0)) detail::config_error("need --lo < --hi and --nu-tol > 0");
            const double nu = find_nu_critical(nc_lo, nc_hi, [&](double n) { return solve_front(n, nc_ode_tol); }, nc_tol);
            result = {{"nu_lo", nc_lo}, {"nu_hi", nc_hi}, {"nu_c", nu}};
            record_name = "nu_critical.json";
        };
    });

    // simulate
    FrontArgs ma;
    ma.nu = 0.25;
    double sm_gamma = 2.0, sm_T = 50.0, sm_dt = 0.0, sm_amp = 0.1, sm_center = 0.0, sm_width = 1.0, sm_sponge = 1.0;
    std::size_t sm_points = 0, sm_every = 1;
    auto* simulate_cmd = command("simulate", "modulated-front dynamics from a Gaussian perturbation; writes trace.csv");
    detail::add_front_options(simulate_cmd, ma, false);
    simulate_cmd->add_option("--gamma", sm_gamma, "modulation strength")->capture_default_str();
    simulate_cmd->add_option("--T", sm_T, "final time")->capture_default_str();
    simulate_cmd->add_option("--dt", sm_dt, "time step (default min(0.5 h / max|u|, 0.1))");
    simulate_cmd->add_option("--points", sm_points, "periodic grid size on [-2L, 2L) (default: spacing <= 0.08)");
    simulate_cmd->add_option("--amplitude", sm_amp, "Gaussian amplitude")->capture_default_str();
    simulate_cmd->add_option("--center", sm_center, "Gaussian center")->capture_default_str();
    simulate_cmd->add_option("--width", sm_width, "Gaussian width")->capture_default_str();
    simulate_cmd->add_option("--record-every", sm_every, "record every n-th step")->capture_default_str();
    simulate_cmd->add_option("--sponge", sm_sponge, "peak damping of the absorbing layers")->capture_default_str();
    simulate_cmd->callback([&] {
        action = [&] {
            detail::check_front_args(ma);
            if (!(sm_gamma >= 0.0) || !(sm_T >= 0.0) || sm_dt < 0.0 || !(sm_width > 0.0) || !(sm_sponge >= 0.0) ||
                sm_every == 0) {
                detail::config_error("need gamma >= 0, T >= 0, dt >= 0, width > 0, sponge >= 0, record-every >= 1");
            }
            if (sm_points != 0 && (sm_points < 8 || sm_points % 2 != 0)) detail::config_error("--points must be even and >= 8");
            const auto p = detail::solve(ma);
            const double D = 2.0 * p.half_length;
            const std::size_t n = sm_points ? sm_points : default_simulation_points(D);
            const auto g = periodic_grid(D, n);
            SimOptions opt;
            opt.sponge_strength = sm_sponge;
            opt.record_every = sm_every;
            const auto tr = simulate(p, gaussian(g, sm_amp, sm_center, sm_width), sm_gamma, kdvb_multiplier(p.nu), sm_T,
                                     sm_dt, opt);
            o.table("trace", io::trace_csv(tr), "perturbation norms, nu=" + detail::nu_tag(p.nu));
            result = {{"nu", p.nu},
                      {"gamma", sm_gamma},
                      {"D", D},
                      {"points", n},
                      {"dt", tr.dt},
                      {"T", sm_T},
                      {"v0", {{"kind", "gaussian"}, {"amplitude", sm_amp}, {"center", sm_center}, {"width", sm_width}}},
                      {"sponge", sm_sponge},
                      {"final_l2_v", tr.l2_v.back()},
                      {"final_l2_vx", tr.l2_vx.back()},
                      {"final_x0", tr.x0_series.back()}};
            record_name = "simulate.json";
        };
    });

    // reproduce
    std::string figure;
    double rp_nu = 1.0, rp_step = 0.01;
    auto* reproduce = command("reproduce", "regenerate figure data: tau-vs-nu, evans-curves or front-gallery");
    reproduce->add_option("figure", figure, "tau-vs-nu | evans-curves | front-gallery")
        ->required()
        ->check(CLI::IsMember({"tau-vs-nu", "evans-curves", "front-gallery"}));
    reproduce->add_option("--nu", rp_nu, "front-gallery: dispersion")->capture_default_str();
    reproduce->add_option("--step", rp_step, "tau-vs-nu: nu spacing")->capture_default_str();
    reproduce->callback([&] {
        action = [&] {
            if (figure == "tau-vs-nu") {
                if (!(rp_step > 0.0 && rp_step <= 0.5)) detail::config_error("--step must lie in (0, 0.5]");
                const auto n = static_cast<std::size_t>(std::lround(1.0 / rp_step)) + 1;
                const auto nus = detail::linspace(0.25, 1.25, n);
                std::vector<double> taus(n);
                parallel_for(n, [&](std::size_t i) { taus[i] = front_tau(solve_front(nus[i])); });
                o.table("tau_vs_nu", io::tau_scan_csv(nus, taus), "tau(phi'/2) vs nu");
                result = {{"figure", figure}, {"tau_one_crossing", detail::interpolate_crossing(nus, taus, 1.0)},
                          {"tau_at_quarter", taus.front()}};
            } else if (figure == "evans-curves") {
                const std::vector<double> nus{4.09, 4.096, 4.10};
                std::vector<FrontProfile> fronts(nus.size());
                parallel_for(nus.size(), [&](std::size_t i) { fronts[i] = solve_front(nus[i]); });
                const auto lambdas = evans_lambda_grid();
                io::CsvTable t({"lambda", "nu_4.09", "nu_4.096", "nu_4.10"});
                std::vector<EvansCurve> curves;
                for (const auto& p : fronts) curves.push_back(evans_curve(p, p.half_length, lambdas));
                for (std::size_t i = 0; i < curves[0].lambdas.size(); ++i) {
                    t.add_row({curves[0].lambdas[i], curves[0].deltas[i], curves[1].deltas[i], curves[2].deltas[i]});
                }
                o.table("evans_curves", t, "Delta_0(lambda) near nu_c");
                result = {{"figure", figure}, {"curves", json::array()}};
                for (const auto& c : curves) result["curves"].push_back(io::to_json(c));
            } else {
                if (!std::isfinite(rp_nu)) detail::config_error("--nu must be finite");
                const auto p = solve_front(rp_nu);
                const auto mono = monotonize(p.values());
                const double x0 = shock_offset(mono.m, mono.m_infinity);
                io::CsvTable t({"x", "phi", "M", "S"});
                std::size_t increasing = 0, flat = 0;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    const double x = p.grid.at(i);
                    const double s = x < x0 ? mono.m_infinity : (x > x0 ? -mono.m_infinity : 0.0);
                    t.add_row({x, p.phi[i], mono.m.values[i], s});
                    if (i + 1 < p.size() && p.phi[i + 1] > p.phi[i]) {
                        ++increasing;
                        if (mono.m.values[i + 1] == mono.m.values[i]) ++flat;
                    }
                }
                o.table("front_gallery", t, "phi, M(phi), S(phi), nu=" + detail::nu_tag(p.nu));
                result = {{"figure", figure},
                          {"nu", p.nu},
                          {"m_infinity", mono.m_infinity},
                          {"shock_offset", x0},
                          {"l1_distance", l1_distance(mono.m, mono.m_infinity, x0)},
                          {"tau_full", tau(p.derivative()).tau},
                          {"increasing_cells", increasing},
                          {"m_constant_where_increasing", flat == increasing}};
            }
            record_name = figure + ".json";
        };
    });

    auto error_record = [&](ErrorKind kind, const std::string& module, const std::string& what) {
        const int code = exit_code(kind);
        err << json{{"error", std::string(to_string(kind))}, {"module", module}, {"message", what}, {"exit_code", code}}
                   .dump()
            << '\n';
        return code;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        return error_record(ErrorKind::ConfigError, "cli", e.what());
    } catch (const Error& e) {
        return error_record(e.kind(), e.module(), e.what());
    }

    try {
        json golden;
        if (!o.golden.empty()) {
            try {
                golden = json::parse(io::read_text(o.golden));
            } catch (const json::exception& e) {
                detail::config_error(std::string("cannot parse golden file: ") + e.what());
            }
        }
        action();
        o.write(record_name, result.dump(2) + "\n");
        result["files"] = o.files;
        if (!o.golden.empty()) {
            const auto g = detail::compare_golden(result, golden);
            result["golden"] = g;
            out << result.dump(2) << '\n';
            if (!g["pass"].get<bool>()) {
                return error_record(ErrorKind::GoldenMismatch, "cli", "result differs from " + o.golden);
            }
            return kOk;
        }
        out << result.dump(2) << '\n';
        return kOk;
    } catch (const Error& e) {
        return error_record(e.kind(), e.module(), e.what());
    } catch (const json::exception& e) {
        return error_record(ErrorKind::ConfigError, "cli", e.what());
    } catch (const std::exception& e) {
        return error_record(ErrorKind::NonFiniteState, "cli", e.what());
    }
}

}  // namespace frontlab::cli
