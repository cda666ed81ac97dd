#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "frontlab/dynamics.hpp"

using namespace frontlab;

namespace {

const FrontProfile& front_at(double nu) {
    static std::map<double, FrontProfile> cache;
    auto it = cache.find(nu);
    if (it == cache.end()) it = cache.emplace(nu, solve_front(nu)).first;
    return it->second;
}

SimState state_on(const UniformGrid& g, const FrontProfile* f, double gamma) {
    SimState s;
    s.v = {g, std::vector<double>(g.size, 0.0), 0.0, 0.0};
    if (f) s.front = std::make_shared<const FrontProfile>(*f);
    s.gamma = gamma;
    return s;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

TEST(Multiplier, KdvbIsAdmissible) {
    const std::vector<double> k{0.0, 0.5, 1.0, 40.0};
    const auto l = admissible_symbol(kdvb_multiplier(0.25), k);
    EXPECT_EQ(l[0], Complex(0.0, 0.0));
    EXPECT_DOUBLE_EQ(l[2].imag(), -0.25);
    EXPECT_EQ(l[3].real(), 0.0);
}

TEST(Multiplier, RejectsInadmissibleSymbols) {
    const std::vector<double> k{0.0, 1.0, 2.0};
    const MultiplierSpec growing{[](double q) { return Complex(q * q, 0.0); }, "anti-diffusion"};
    const MultiplierSpec shifted{[](double) { return Complex(-1.0, 0.0); }, "damping"};
    for (const auto& m : {growing, shifted}) {
        try {
            admissible_symbol(m, k);
            FAIL() << m.description;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::ConfigError);
        }
    }
    EXPECT_THROW(Simulator(periodic_grid(10.0, 64), growing), Error);
    const MultiplierSpec dissipative{[](double q) { return Complex(-q * q * q * q, 0.0); }, "hyperdiffusion"};
    EXPECT_NO_THROW(admissible_symbol(dissipative, k));
}

TEST(Grid, PeriodicLayout) {
    const auto g = periodic_grid(80.0, 2048);
    EXPECT_DOUBLE_EQ(g.front(), -80.0);
    EXPECT_DOUBLE_EQ(g.step, 160.0 / 2048);
    EXPECT_THROW(periodic_grid(1.0, 63), Error);
    EXPECT_EQ(default_simulation_points(80.0), 2048u);
    EXPECT_DOUBLE_EQ(simulation_grid(front_at(0.25), 2048).front(), -80.0);
}

TEST(ModulationRhs, ZeroPerturbation) {
    const auto g = simulation_grid(front_at(0.0), 2048);
    EXPECT_EQ(modulation_rhs(state_on(g, &front_at(0.0), 2.0)), 0.0);
}

TEST(ModulationRhs, FrontDerivativeGivesTwoThirdsGamma) {
    const auto& f = front_at(0.25);
    auto s = state_on(simulation_grid(f, 4096), &f, 1.5);
    const auto df = f.dphi_interpolant();
    for (std::size_t i = 0; i < s.v.size(); ++i) s.v.values[i] = df(s.v.grid.at(i));
    EXPECT_NEAR(modulation_rhs(s), 1.5 * 2.0 / 3.0, 1e-5);
}

TEST(ModulationRhs, OddPerturbationIsOrthogonal) {
    const auto& f = front_at(0.0);
    auto s = state_on(simulation_grid(f, 2048), &f, 2.0);
    for (std::size_t i = 0; i < s.v.size(); ++i) {
        const double x = s.v.grid.at(i);
        s.v.values[i] = x * std::exp(-x * x);
    }
    EXPECT_NEAR(modulation_rhs(s), 0.0, 1e-8);
}

TEST(Step, ZeroIsAFixedPoint) {
    const auto& f = front_at(0.25);
    const Simulator sim(simulation_grid(f, 1024), kdvb_multiplier(0.25));
    auto s = state_on(sim.grid(), &f, 2.0);
    s.x0 = 0.3;
    const double dt = sim.default_dt(s);
    for (int n = 0; n < 1000; ++n) s = sim.step(s, dt);
    for (double v : s.v.values) ASSERT_EQ(v, 0.0);
    EXPECT_EQ(s.x0, 0.3);
    EXPECT_NEAR(s.t, 1000 * dt, 1e-9);
}

TEST(Step, HeatEquationWithoutBackground) {
    // small amplitude so the quadratic term is negligible; ||v||^2 of the heat
    // flow from a Gaussian of width s is A^2 s^2 sqrt(pi) / sqrt(s^2 + 2t)
    const auto g = periodic_grid(40.0, 1024);
    SimOptions opt;
    opt.sponge_strength = 0.0;
    const Simulator sim(g, zero_multiplier(), opt);
    auto error_at = [&](double dt) {
        auto s = state_on(g, nullptr, 0.0);
        s.v = gaussian(g, 1e-6);
        const double T = 1.0;
        for (int n = 0; n < std::lround(T / dt); ++n) s = sim.step(s, dt);
        const double exact = 1e-12 * std::sqrt(std::numbers::pi) / std::sqrt(1.0 + 2.0 * T);
        double l2 = 0.0;
        for (double v : s.v.values) l2 += v * v;
        return std::abs(l2 * g.step - exact) / exact;
    };
    const double coarse = error_at(0.1), fine = error_at(0.05);
    EXPECT_LT(coarse, 1e-3);
    EXPECT_GT(coarse / fine, 3.0);
}

TEST(Step, EnergyDoesNotIncrease) {
    const auto& f = front_at(0.25);
    const Simulator sim(simulation_grid(f, 2048), kdvb_multiplier(0.25));
    auto s = state_on(sim.grid(), &f, 2.0);
    s.v = gaussian(sim.grid(), 0.01, 1.0, 1.5);
    double prev = INFINITY;
    for (int n = 0; n < 20; ++n) {
        s = sim.step(s, sim.default_dt(s));
        double e = 0.0;
        for (double v : s.v.values) e += v * v;
        EXPECT_LE(e, prev * (1 + 1e-10));
        prev = e;
    }
}

TEST(Step, Errors) {
    const auto& f = front_at(0.25);
    const Simulator sim(simulation_grid(f, 1024), kdvb_multiplier(0.25));
    auto s = state_on(sim.grid(), &f, 2.0);
    try {
        sim.step(s, 10.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CFLViolation);
    }
    EXPECT_THROW(sim.step(s, -1.0), Error);
    s.v.values.pop_back();
    EXPECT_THROW(sim.step(s, 0.01), Error);
}

TEST(Simulate, ZeroDataStaysZero) {
    const auto& f = front_at(0.25);
    const auto g = simulation_grid(f, 1024);
    const auto tr = simulate(f, {g, std::vector<double>(g.size, 0.0), 0.0, 0.0}, 2.0, kdvb_multiplier(0.25), 5.0, -1);
    ASSERT_EQ(tr.times.size(), tr.l2_v.size());
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        EXPECT_EQ(tr.l2_v[i], 0.0);
        EXPECT_EQ(tr.l2_vx[i], 0.0);
        EXPECT_EQ(tr.x0_series[i], 0.0);
        EXPECT_EQ(tr.energy_residual[i], 0.0);
    }
    EXPECT_NEAR(tr.times.back(), 5.0, 1e-12);
}

TEST(Simulate, MonotoneDecay) {
    for (double nu : {0.0, 0.25, 1.0}) {
        const auto& f = front_at(nu);
        const auto g = simulation_grid(f, 2048);
        const auto tr = simulate(f, gaussian(g, 0.1), 2.0, kdvb_multiplier(nu), 20.0, -1);
        for (std::size_t i = 1; i < tr.l2_v.size(); ++i) {
            ASSERT_LE(tr.l2_v[i], tr.l2_v[i - 1] * (1 + 1e-9)) << "nu=" << nu << " t=" << tr.times[i];
        }
        const double peak = *std::max_element(tr.l2_vx.begin(), tr.l2_vx.end());
        EXPECT_LE(tr.l2_vx.back(), 0.1 * peak) << nu;
        for (double m : tr.modulation_term) EXPECT_LE(m, 0.0);
        for (std::size_t i = 0; i < tr.sup_v.size(); ++i) EXPECT_LE(tr.sup_v[i], tr.sup_bound[i] + 1e-10);
    }
}

TEST(Simulate, MassMovesIntoTheFront) {
    // the integral of u is conserved, and shifting phi(x + x0) changes it by -2 x0
    const auto& f = front_at(0.25);
    const auto g = simulation_grid(f, 2048);
    const auto v0 = gaussian(g, 0.1);
    const auto tr = simulate(f, v0, 2.0, kdvb_multiplier(0.25), 50.0, -1);
    EXPECT_NEAR(-2.0 * tr.x0_series.back(), trapezoid(v0), 1e-6);
}

TEST(Simulate, EnergyResidualIsSecondOrder) {
    const auto& f = front_at(0.25);
    std::vector<double> med;
    for (std::size_t n : {1024u, 2048u}) {
        const auto g = simulation_grid(f, n);
        med.push_back(median(simulate(f, gaussian(g, 0.1), 2.0, kdvb_multiplier(0.25), 10.0, -1).energy_residual));
    }
    EXPECT_GT(med[0] / med[1], 3.0);
}

TEST(Simulate, RecordEvery) {
    const auto& f = front_at(0.25);
    const auto g = simulation_grid(f, 1024);
    SimOptions opt;
    opt.record_every = 10;
    const auto tr = simulate(f, gaussian(g, 0.1), 2.0, kdvb_multiplier(0.25), 1.0, 0.01, opt);
    EXPECT_EQ(tr.times.size(), 11u);
    EXPECT_NEAR(tr.times[1], 0.1, 1e-12);
}

TEST(SupNorm, ZeroAndSech) {
    const auto g = periodic_grid(40.0, 2048);
    EXPECT_EQ(sup_norm_diagnostic(SampledFunction{g, std::vector<double>(g.size, 0.0), 0, 0}).bound, 0.0);
    SampledFunction v{g, std::vector<double>(g.size), 0, 0};
    for (std::size_t i = 0; i < g.size; ++i) v.values[i] = 1.0 / std::cosh(g.at(i));
    const auto d = sup_norm_diagnostic(v);
    EXPECT_NEAR(d.max_abs, 1.0, 1e-12);
    // ||sech||^2 = 2, ||sech'||^2 = 2/3
    EXPECT_NEAR(d.bound, std::sqrt(2.0 * std::sqrt(2.0) * std::sqrt(2.0 / 3.0)), 1e-8);
    EXPECT_GE(d.bound, d.max_abs);
}
