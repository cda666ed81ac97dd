#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "frontlab/profile.hpp"

using namespace frontlab;

namespace {

const FrontProfile& front_at(double nu) {
    static std::map<double, FrontProfile> cache;
    auto it = cache.find(nu);
    if (it == cache.end()) it = cache.emplace(nu, solve_front(nu)).first;
    return it->second;
}

}  // namespace

TEST(SolveFront, BurgersLimitIsTanh) {
    const auto p = solve_front(0.0, 40.0, 1e-10, 4096);
    double err = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        err = std::max(err, std::abs(p.phi[i] + std::tanh(0.5 * p.grid.at(i))));
    }
    EXPECT_LT(err, 1e-6);
    EXPECT_EQ(p.grid.size, 4096u);
    EXPECT_DOUBLE_EQ(p.grid.front(), -40.0);
}

TEST(SolveFront, MonotoneAtQuarter) {
    const auto d = diagnose(front_at(0.25));
    EXPECT_LE(d.max_dphi, 1e-8);
}

TEST(SolveFront, OvershootsPastQuarter) {
    const auto d = diagnose(front_at(1.0));
    EXPECT_GT(d.max_dphi, 0.0);
    EXPECT_GT(d.max_dphi, 1e-3);
}

TEST(SolveFront, PhaseNormalizedToZeroCrossing) {
    for (double nu : {0.0, 0.25, 1.0, 4.0}) {
        const auto& p = front_at(nu);
        const auto f = p.phi_interpolant();
        EXPECT_NEAR(f(0.0), 0.0, 1e-9) << "nu=" << nu;
        EXPECT_LT(f(-0.5), 0.5) << "nu=" << nu;
        EXPECT_GT(f(-0.5), 0.0) << "nu=" << nu;
    }
}

TEST(SolveFront, IntegralIdentities) {
    for (double nu : {0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0}) {
        const auto d = diagnose(front_at(nu));
        EXPECT_NEAR(d.dphi_energy, 2.0 / 3.0, 1e-4) << "nu=" << nu;
        EXPECT_GE(d.min_dphi, -0.5 - 1e-6) << "nu=" << nu;
        EXPECT_LE(d.boundary_error, 1e-6) << "nu=" << nu;
        EXPECT_LE(d.residual, 10 * front_at(nu).ode_tol) << "nu=" << nu;
    }
}

TEST(SolveFront, GridRefinementIsConsistent) {
    const auto coarse = solve_front(1.0, 40.0, 1e-10, 2001);
    const auto fine = solve_front(1.0, 40.0, 1e-10, 4001);
    double diff = 0.0;
    for (std::size_t i = 0; i < coarse.size(); ++i) diff = std::max(diff, std::abs(coarse.phi[i] - fine.phi[2 * i]));
    EXPECT_LT(diff, 10 * 1e-10);
}

TEST(SolveFront, NegativeNuIsReflection) {
    const auto direct = solve_front(-0.5, 40.0, 1e-10, 4001);
    const auto reflected = reflect_front(solve_front(0.5, 40.0, 1e-10, 4001));
    ASSERT_EQ(direct.size(), reflected.size());
    for (std::size_t i = 0; i < direct.size(); ++i) ASSERT_NEAR(direct.phi[i], reflected.phi[i], 1e-9);
    EXPECT_LE(front_residual(direct), 1e-9);
}

TEST(SolveFront, RejectsBadArguments) {
    EXPECT_THROW(solve_front(0.0, 40.0, 1e-10, 10), Error);
    EXPECT_THROW(solve_front(0.0, -1.0, 1e-10, 100), Error);
    EXPECT_THROW(solve_front(NAN, 40.0, 1e-10, 100), Error);
}

TEST(ReflectFront, BurgersIsFixedPoint) {
    const auto p = solve_front(0.0, 40.0, 1e-10, 4001);
    const auto r = reflect_front(p);
    EXPECT_DOUBLE_EQ(r.nu, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(r.phi[i], p.phi[i], 1e-9);
}

TEST(ReflectFront, QuarterGivesValidNegativeFront) {
    const auto r = reflect_front(front_at(0.25));
    EXPECT_DOUBLE_EQ(r.nu, -0.25);
    EXPECT_LE(front_residual(r), front_at(0.25).residual + 1e-15);
    EXPECT_NEAR(r.phi.front(), 1.0, 1e-6);
    EXPECT_NEAR(r.phi.back(), -1.0, 1e-6);
}

TEST(ReflectFront, IsAnInvolution) {
    const auto& p = front_at(1.0);
    const auto rr = reflect_front(reflect_front(p));
    EXPECT_EQ(rr.phi, p.phi);
    EXPECT_EQ(rr.dphi, p.dphi);
    EXPECT_EQ(rr.ddphi, p.ddphi);
    EXPECT_EQ(rr.nu, p.nu);
}

TEST(FrontResidual, ExactTanhIsTiny) {
    EXPECT_LE(front_residual(exact_burgers_front(40.0, 4001)), 1e-12);
}

TEST(FrontResidual, DetectsCorruption) {
    auto p = front_at(1.0);
    EXPECT_LE(front_residual(p), 10 * p.ode_tol);
    p.phi[p.size() / 3] += 1.0;
    EXPECT_GE(front_residual(p), 0.1);
}

TEST(FrontResidual, NeedsFivePoints) {
    FrontProfile p;
    p.phi = {0, 0, 0};
    p.dphi = p.ddphi = p.phi;
    EXPECT_THROW(front_residual(p), Error);
}
