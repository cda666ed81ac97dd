// Acceptance suite: one PASS/FAIL line per criterion with the measured
// values, tolerances and wall time against its budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "frontlab/bargmann.hpp"
#include "frontlab/cli.hpp"
#include "frontlab/dynamics.hpp"
#include "frontlab/evans.hpp"
#include "frontlab/profile.hpp"
#include "frontlab/spectral.hpp"

using namespace frontlab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "!") + what;
    }
};

std::string fmt(const char* f, double v) {
    char b[64];
    std::snprintf(b, sizeof b, f, v);
    return b;
}

const FrontProfile& front_at(double nu) {
    static std::map<double, FrontProfile> cache;
    auto it = cache.find(nu);
    if (it == cache.end()) it = cache.emplace(nu, solve_front(nu)).first;
    return it->second;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

Outcome c1_tau_burgers() {
    Outcome o;
    const char* argv[] = {"frontlab", "--out", "acceptance_out", "tau", "--nu", "0"};
    std::ostringstream out, err;
    const int code = cli::run(6, argv, out, err);
    o.check(code == 0, "exit " + std::to_string(code));
    if (code != 0) return o;
    const double t = nlohmann::json::parse(out.str())["tau"].get<double>();
    o.check(std::abs(t - std::log(2.0)) <= 1e-3, "tau=" + fmt("%.6f", t) + " vs log2 +-1e-3");
    return o;
}

Outcome c2_tau_quarter() {
    Outcome o;
    const double t = front_tau(solve_front(0.25));
    o.check(std::abs(t - 0.70) <= 0.01, "tau(0.25)=" + fmt("%.5f", t) + " vs 0.70+-0.01");
    return o;
}

Outcome c3_tau_crossing() {
    Outcome o;
    const double nu = find_tau_crossing(1.0, 0.25, 1.25, [](double n) { return solve_front(n); });
    o.check(std::abs(nu - 1.1835) <= 0.01, "nu=" + fmt("%.5f", nu) + " vs 1.1835+-0.01");
    return o;
}

Outcome c4_analytic() {
    Outcome o;
    const double m = analytic_bound_minus(-1.0 / 59, 0.25), p = analytic_bound_plus(-1.0 / 59, 0.25);
    const auto b = analytic_tau_bound(0.25);
    o.check(std::abs(m - 1.6748) <= 1e-4, "minus=" + fmt("%.6f", m));
    o.check(std::abs(p - 1.675) <= 1e-3, "plus=" + fmt("%.6f", p));
    o.check(std::abs(b.bound - 0.8375) <= 5e-4, "bound=" + fmt("%.6f", b.bound));
    o.check(std::abs(b.phi_star + 0.017) <= 5e-3, "phi*=" + fmt("%.5f", b.phi_star));
    return o;
}

Outcome c5_front_identities() {
    Outcome o;
    for (double nu : {0.0, 0.25, 1.0, 4.0}) {
        const auto d = diagnose(front_at(nu));
        o.check(std::abs(d.dphi_energy - 2.0 / 3.0) <= 1e-4 && d.min_dphi >= -0.5 - 1e-6,
                "nu=" + fmt("%g", nu) + ": E=" + fmt("%.7f", d.dphi_energy) + " min=" + fmt("%.6f", d.min_dphi));
    }
    return o;
}

Outcome c6_poschl_teller() {
    Outcome o;
    const double L = 40.0, h = 0.02;
    const auto g = UniformGrid::symmetric(L, static_cast<std::size_t>(std::lround(2 * L / h)) + 1);
    SampledFunction q{g, std::vector<double>(g.size), 0.0, 0.0};
    for (std::size_t i = 0; i < g.size; ++i) q.values[i] = -0.25 / std::pow(std::cosh(0.5 * g.at(i)), 2);
    const auto r = count_negative_eigenvalues(build_operator(q, 0.0));
    const double exact = -(3.0 - std::sqrt(5.0)) / 8.0;
    o.check(r.negative_count == 1, "count=" + std::to_string(r.negative_count));
    if (!r.eigenvalues.empty()) {
        o.check(std::abs(r.eigenvalues[0] - exact) <= 2e-3, "lambda0=" + fmt("%.6f", r.eigenvalues[0]) + " vs " + fmt("%.6f", exact));
    }
    return o;
}

Outcome c7_evans_vs_spectral() {
    Outcome o;
    for (double nu : {0.25, 1.0, 2.0, 4.09, 4.10}) {
        const auto& f = front_at(nu);
        const std::size_t ev = count_negative_roots(evans_curve(f));
        const std::size_t sp =
            count_negative_eigenvalues(build_operator(f.half_derivative(), 0.0, Boundary::Open), 0.0).negative_count;
        const bool ok = nu < 4.095 ? (ev == 1 && sp == 1) : (ev >= 2 && sp >= 2);
        o.check(ok, "nu=" + fmt("%g", nu) + ": evans " + std::to_string(ev) + " spectral " + std::to_string(sp));
    }
    return o;
}

Outcome c8_nu_critical() {
    Outcome o;
    const double nu = find_nu_critical(4.0, 4.2, [](double n) { return solve_front(n); });
    o.check(std::abs(nu - 4.096) <= 0.01, "nu_c=" + fmt("%.5f", nu) + " vs 4.096+-0.01");
    return o;
}

Outcome c9_rank_one() {
    Outcome o;
    for (double nu : {0.0, 0.25, 1.0}) {
        const auto op = build_operator(front_at(nu).half_derivative(), 0.0);
        const double above = rank_one_min_eigenvalue(op, 1.05), none = rank_one_min_eigenvalue(op, 0.0);
        o.check(above >= -1e-6 && none < -1e-3,
                "nu=" + fmt("%g", nu) + ": min(1.05)=" + fmt("%.3e", above) + " min(0)=" + fmt("%.4f", none));
    }
    return o;
}

Outcome c10_l1_identity() {
    Outcome o;
    for (double nu : {0.0, 0.5, 1.0, 2.0}) {
        const auto& f = front_at(nu);
        const auto mono = monotonize(f.values());
        const double l1 = l1_distance(mono.m, mono.m_infinity, shock_offset(mono.m, mono.m_infinity));
        const double t = tau(f.derivative()).tau;
        o.check(std::abs(t - l1) <= 1e-3, "nu=" + fmt("%g", nu) + ": |diff|=" + fmt("%.2e", std::abs(t - l1)));
    }
    return o;
}

Outcome c11_dynamics() {
    Outcome o;
    const auto& f = front_at(0.25);
    std::vector<double> med;
    for (std::size_t n : {2048u, 4096u}) {
        const auto g = simulation_grid(f, n);
        const auto tr = simulate(f, gaussian(g, 0.1), 2.0, kdvb_multiplier(0.25), 50.0, -1);
        double worst = 0.0;
        for (std::size_t i = 1; i < tr.l2_v.size(); ++i) worst = std::max(worst, tr.l2_v[i] / tr.l2_v[i - 1] - 1.0);
        const double peak = *std::max_element(tr.l2_vx.begin(), tr.l2_vx.end());
        o.check(worst <= 1e-9, "M=" + std::to_string(n) + " max rel. increase " + fmt("%.1e", worst));
        o.check(tr.l2_vx.back() <= 0.1 * peak, "l2_vx(T)/max=" + fmt("%.1e", tr.l2_vx.back() / peak));
        med.push_back(median(tr.energy_residual));
    }
    o.check(med[0] / med[1] >= 3.0, "residual ratio " + fmt("%.2f", med[0] / med[1]));
    return o;
}

SampledFunction random_potential(std::mt19937& rng) {
    std::uniform_real_distribution<double> center(-6.0, 6.0), width(0.3, 2.0), depth(-1.5, 0.7);
    const auto g = UniformGrid::symmetric(15.0, 3001);
    SampledFunction q{g, std::vector<double>(g.size, 0.0), 0.0, 0.0};
    for (int k = 0; k < 4; ++k) {
        const double c = center(rng), w = width(rng), a = depth(rng);
        for (std::size_t i = 0; i < g.size; ++i) q.values[i] += a * std::exp(-std::pow((g.at(i) - c) / w, 2));
    }
    return q;
}

Outcome c12_properties() {
    Outcome o;
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> shift(-20.0, 20.0), scale(0.01, 50.0);
    double trans = 0.0, homog = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto q = random_potential(rng);
        const double base = tau(q).tau;
        auto moved = q;
        moved.grid = q.grid.shifted(shift(rng));
        trans = std::max(trans, std::abs(tau(moved).tau - base) / std::max(1.0, base));
        const double c = scale(rng);
        auto scaled = q;
        for (auto& v : scaled.values) v *= c;
        homog = std::max(homog, std::abs(tau(scaled).tau - c * base) / std::max(1.0, c * base));
    }
    o.check(trans <= 1e-10, "translation " + fmt("%.1e", trans));
    o.check(homog <= 1e-10, "homogeneity " + fmt("%.1e", homog));

    const double tol = 1e-10;
    double sym = 0.0;
    for (double nu : {0.25, 1.0, 3.0}) {
        const auto pos = solve_front(nu, tol), neg = solve_front(-nu, tol);
        const std::size_t n = pos.size();
        for (std::size_t i = 0; i < n; ++i) {
            sym = std::max(sym, std::abs(neg.phi[i] + pos.phi[n - 1 - i]));
            sym = std::max(sym, std::abs(neg.grid.at(i) + pos.grid.at(n - 1 - i)));
        }
    }
    o.check(sym <= 10 * tol, "front symmetry " + fmt("%.1e", sym));

    bool monotone = true;
    for (double nu : {0.0, 0.25, 1.0, 4.10}) {
        const auto op = build_operator(front_at(nu).half_derivative(), 0.0, Boundary::Open);
        std::size_t prev = op.size() + 1;
        for (int k = 0; k <= 30; ++k) {
            const std::size_t c = rank_one_negative_count(op, 0.1 * k, 0.0);
            monotone = monotone && c <= prev;
            prev = c;
        }
    }
    o.check(monotone, "n-(H_gamma) non-increasing");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "tau exactness at nu=0", 5, c1_tau_burgers},
        {2, "tau at the monotone boundary", 5, c2_tau_quarter},
        {3, "tau = 1 crossing", 120, c3_tau_crossing},
        {4, "analytic bound checks", 1, c4_analytic},
        {5, "front integral identities", 30, c5_front_identities},
        {6, "bound-state oracle", 30, c6_poschl_teller},
        {7, "Evans/spectral agreement", 300, c7_evans_vs_spectral},
        {8, "critical dispersion", 600, c8_nu_critical},
        {9, "rank-one positivity", 60, c9_rank_one},
        {10, "tau vs L1 distance identity", 60, c10_l1_identity},
        {11, "dynamics decay", 300, c11_dynamics},
        {12, "property suites", 120, c12_properties},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.check(false, std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.check(secs <= c.budget, fmt("%.2fs", secs) + " / " + fmt("%gs", c.budget));
        if (!o.pass) ++failed;
        std::printf("%-4s %2d %-30s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
