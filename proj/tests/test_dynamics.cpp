// Hamiltonian flow: the exact spectral propagator, the RK4 integrator on the
// projector equation with its bookkeeping, Heisenberg duality and the
// isometry property of the flow.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "projqm/dynamics.hpp"
#include "projqm/errors.hpp"
#include "projqm/maps.hpp"
#include "projqm/measures.hpp"

using namespace projqm;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

double ray_deficiency(const PurePoint& a, const PurePoint& b) {
    return std::abs(1.0 - std::norm(a.overlap(b)));
}

}  // namespace

TEST_CASE("exact propagation of a two-level superposition") {
    // H = diag(pi, 0), t = 1: (e1 + e2)/sqrt(2) -> (-e1 + e2)/sqrt(2)
    HermitianOperator h(ComplexMatrix::diagonal(std::vector<double>{M_PI, 0.0}));
    PurePoint psi0({r2, r2});
    PurePoint psi1 = evolve_exact(psi0, h, 1.0);
    PurePoint target({-r2, r2});
    CHECK(ray_deficiency(psi1, target) < 1e-12);

    ComplexMatrix sx(2);
    sx(0, 1) = 1.0;
    sx(1, 0) = 1.0;
    CHECK(psi0.expectation(sx).real() == doctest::Approx(1.0));
    CHECK(psi1.expectation(sx).real() == doctest::Approx(-1.0).epsilon(1e-12));

    CHECK_THROWS_AS(evolve_exact(PurePoint({1.0, 0.0, 0.0}), h, 1.0), DimensionError);
}

TEST_CASE("integrated flow tracks the exact propagator") {
    SeededSampler s(173);
    const std::size_t n = 3;
    HermitianOperator h(random_hermitian(s, n));
    PurePoint psi0 = sample_pure(s, n);

    FlowConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 0.5;
    std::vector<FlowSample> traj = evolve_flow(psi0, h, cfg);
    REQUIRE(!traj.empty());
    CHECK(traj.back().t == cfg.t_final);
    PurePoint exact = evolve_exact(psi0, h, cfg.t_final);
    CHECK(hs_distance(traj.back().point.projector(), exact.projector()) < 1e-6);

    // without reprojection the integrator still holds the ray to high order
    FlowConfig raw = cfg;
    raw.reproject = false;
    std::vector<FlowSample> traj2 = evolve_flow(psi0, h, raw);
    CHECK(hs_distance(traj2.back().point.projector(), exact.projector()) < 1e-5);
}

TEST_CASE("halving the step cuts the global error at fourth order") {
    SeededSampler s(179);
    const std::size_t n = 3;
    HermitianOperator h(random_hermitian(s, n));
    PurePoint psi0 = sample_pure(s, n);
    PurePoint exact = evolve_exact(psi0, h, 1.0);

    auto err_at = [&](double dt) {
        FlowConfig cfg;
        cfg.dt = dt;
        cfg.t_final = 1.0;
        return hs_distance(evolve_flow(psi0, h, cfg).back().point.projector(),
                           exact.projector());
    };
    const double e1 = err_at(0.01);
    const double e2 = err_at(0.005);
    CHECK(e1 > 1e-12);  // away from the rounding floor, the ratio is meaningful
    CHECK(e1 / e2 > 10.0);
}

TEST_CASE("trajectory bookkeeping: stride, endpoint, remainder step") {
    HermitianOperator h(ComplexMatrix::diagonal(std::vector<double>{1.0, -1.0}));
    PurePoint psi0({r2, r2});

    FlowConfig cfg;
    cfg.dt = 0.001;
    cfg.t_final = 0.05;
    cfg.stride = 10;
    std::vector<FlowSample> traj = evolve_flow(psi0, h, cfg);
    REQUIRE(traj.size() == 6);  // t = 0, .01, .02, .03, .04, .05
    CHECK(traj[0].t == 0.0);
    CHECK(traj[0].point.same_point(psi0));
    CHECK(traj[1].t == doctest::Approx(0.01));
    CHECK(traj.back().t == 0.05);
    for (std::size_t k = 1; k < traj.size(); ++k) CHECK(traj[k - 1].t < traj[k].t);

    // a t_final that is not a multiple of dt ends with a shortened step
    FlowConfig odd;
    odd.dt = 0.001;
    odd.t_final = 0.0105;
    odd.stride = 100;
    std::vector<FlowSample> traj2 = evolve_flow(psi0, h, odd);
    CHECK(traj2.back().t == 0.0105);
    PurePoint exact = evolve_exact(psi0, h, 0.0105);
    CHECK(ray_deficiency(traj2.back().point, exact) < 1e-12);

    // t_final = 0 returns the initial sample alone
    FlowConfig zero;
    zero.t_final = 0.0;
    CHECK(evolve_flow(psi0, h, zero).size() == 1);
}

TEST_CASE("flow configuration validation") {
    HermitianOperator h(ComplexMatrix::diagonal(std::vector<double>{1.0, -1.0}));
    PurePoint psi0({1.0, 0.0});
    FlowConfig bad;
    bad.dt = 0.0;
    CHECK_THROWS_AS(evolve_flow(psi0, h, bad), ValidationError);
    bad.dt = -0.1;
    CHECK_THROWS_AS(evolve_flow(psi0, h, bad), ValidationError);
    bad.dt = 0.1;
    bad.t_final = -1.0;
    CHECK_THROWS_AS(evolve_flow(psi0, h, bad), ValidationError);
    CHECK_THROWS_AS(evolve_flow(PurePoint({1.0, 0.0, 0.0}), h, FlowConfig{}), DimensionError);
}

TEST_CASE("energy is conserved along the flow") {
    SeededSampler s(181);
    const std::size_t n = 3;
    const QuantParams q(n, 4.0);
    HermitianOperator h(random_hermitian(s, n));
    AffineObservable fh = quantize_inverse(h, q);
    PurePoint psi0 = sample_pure(s, n);

    FlowConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_final = 1.0;
    cfg.stride = 100;
    std::vector<FlowSample> traj = evolve_flow(psi0, h, cfg);
    const double e0 = fh.evaluate(psi0).real();
    for (const FlowSample& smp : traj)
        CHECK(std::abs(fh.evaluate(smp.point).real() - e0) < 1e-8 * std::max(1.0, std::abs(e0)));
}

TEST_CASE("Heisenberg picture is dual to state propagation") {
    SeededSampler s(191);
    const std::size_t n = 4;
    HermitianOperator h(random_hermitian(s, n));
    HermitianOperator a(random_hermitian(s, n));
    PurePoint psi0 = sample_pure(s, n);
    const double t = 0.7;

    PurePoint psit = evolve_exact(psi0, h, t);
    const Complex schrodinger = psit.expectation(a.matrix());
    const Complex heis = psi0.expectation(heisenberg(a, h, t));
    CHECK(std::abs(schrodinger - heis) < 1e-10 * std::max(1.0, std::abs(schrodinger)));
}

TEST_CASE("the flow preserves both pairings") {
    SeededSampler s(193);
    const std::size_t n = 3;
    HermitianOperator h(random_hermitian(s, n));
    PurePoint p = sample_pure(s, n);
    std::vector<HermitianOperator> gens;
    for (int i = 0; i < 3; ++i) gens.emplace_back(random_hermitian(s, n));

    KillingCheck kc = killing_check(p, gens, h, 0.7, 2.5);
    CHECK(kc.max_metric_deviation < 1e-10);
    CHECK(kc.max_symplectic_deviation < 1e-10);

    CHECK_THROWS_AS(killing_check(p, {}, h, 0.7, 2.5), ValidationError);
}
