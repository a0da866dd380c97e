// Validated state types: Hermitian operators, density matrices with their
// rank stratification, and points of the projective space.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "projqm/errors.hpp"
#include "projqm/states.hpp"

using namespace projqm;

namespace {
const Complex I(0.0, 1.0);
const double r2 = 1.0 / std::sqrt(2.0);
}  // namespace

TEST_CASE("HermitianOperator symmetrizes and tracks the residual") {
    ComplexMatrix a(2);
    a(0, 0) = 1.0;
    a(0, 1) = Complex(2.0, 1.0);
    a(1, 0) = Complex(2.0, -1.0);
    a(1, 1) = 5.0;
    HermitianOperator h(a);
    CHECK(h.residual() == 0.0);
    CHECK(hs_distance(h.matrix(), a) == 0.0);

    // Beyond the default tolerance the constructor refuses; with a loose
    // tolerance it stores the symmetrized part and reports the residual.
    ComplexMatrix up(2);
    up(0, 1) = 1.0;
    CHECK_THROWS_AS(HermitianOperator{up}, ValidationError);
    Tolerances loose;
    loose.herm = 1.0;
    HermitianOperator hs(up, loose);
    CHECK(hs.residual() == doctest::Approx(0.5));
    CHECK(std::abs(hs.matrix()(0, 1) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(hs.matrix()(1, 0) - Complex(0.5)) < 1e-15);

    CHECK_THROWS_AS(HermitianOperator{ComplexMatrix(0)}, DimensionError);
    ComplexMatrix bad(2);
    bad(0, 0) = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(HermitianOperator{bad}, ValidationError);
}

TEST_CASE("DensityMatrix validates trace and spectrum") {
    ComplexMatrix mixed = ComplexMatrix::identity(3);
    mixed *= Complex(1.0 / 3.0);
    DensityMatrix rho(mixed);
    REQUIRE(rho.eigenvalues().size() == 3);
    for (double lam : rho.eigenvalues()) CHECK(lam == doctest::Approx(1.0 / 3.0));

    CHECK_THROWS_AS(DensityMatrix{ComplexMatrix::identity(2)}, ValidationError);  // trace 2
    // trace 1 but indefinite
    CHECK_THROWS_AS(DensityMatrix{ComplexMatrix::diagonal(std::vector<double>{1.5, -0.5})}, ValidationError);
}

TEST_CASE("rank stratification of density matrices") {
    DensityMatrix pure(ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0, 0.0}));
    DensityMatrix bdry(ComplexMatrix::diagonal(std::vector<double>{0.5, 0.5, 0.0}));
    ComplexMatrix third = ComplexMatrix::identity(3);
    third *= Complex(1.0 / 3.0);
    DensityMatrix full(third);
    CHECK(state_rank_class(pure) == StateRankClass::pure);
    CHECK(state_rank_class(bdry) == StateRankClass::boundary);
    CHECK(state_rank_class(full) == StateRankClass::interior);
    CHECK(std::string(to_string(StateRankClass::pure)) == "pure");
    CHECK(std::string(to_string(StateRankClass::boundary)) == "boundary");
    CHECK(std::string(to_string(StateRankClass::interior)) == "interior");
}

TEST_CASE("PurePoint construction and normalization") {
    CHECK_THROWS_AS(PurePoint(std::vector<Complex>({2.0, 0.0})), ValidationError);
    CHECK_THROWS_AS(PurePoint(std::vector<Complex>()), DimensionError);
    CHECK_THROWS_AS(PurePoint::normalized({0.0, 0.0}), ValidationError);

    PurePoint p = PurePoint::normalized({3.0, 4.0 * I});
    CHECK(p.size() == 2);
    CHECK(std::abs(p.amplitudes()[0] - Complex(0.6)) < 1e-15);
    CHECK(std::abs(p.amplitudes()[1] - Complex(0.0, 0.8)) < 1e-15);
}

TEST_CASE("projector and expectation of a pure point") {
    // psi = (1, i)/sqrt(2): projector [[1/2, -i/2], [i/2, 1/2]]
    PurePoint p({r2, I * r2});
    ComplexMatrix proj = p.projector();
    CHECK(std::abs(proj(0, 0) - Complex(0.5)) < 1e-15);
    CHECK(std::abs(proj(0, 1) - Complex(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(proj(1, 0) - Complex(0.0, 0.5)) < 1e-15);
    CHECK(std::abs(proj.trace() - Complex(1.0)) < 1e-15);

    // <sz> = |a|^2 - |b|^2 = 0, <sy> = 2 Im(conj(a) b) = 1
    CHECK(std::abs(p.expectation(ComplexMatrix::diagonal(std::vector<double>{1.0, -1.0}))) < 1e-15);
    ComplexMatrix sy(2);
    sy(0, 1) = -I;
    sy(1, 0) = I;
    CHECK(std::abs(p.expectation(sy) - Complex(1.0)) < 1e-15);
    CHECK_THROWS_AS(p.expectation(ComplexMatrix::identity(3)), DimensionError);
}

TEST_CASE("overlap, projector distance and ray identity") {
    PurePoint e1({1.0, 0.0}), e2({0.0, 1.0});
    CHECK(std::abs(e1.overlap(e2)) < 1e-15);
    CHECK(e1.distance2(e2) == doctest::Approx(std::sqrt(2.0)));
    CHECK_FALSE(e1.same_point(e2));

    // A global phase does not move the point.
    PurePoint p({r2, r2});
    PurePoint q({r2 * std::polar(1.0, 1.234), r2 * std::polar(1.0, 1.234)});
    CHECK(std::abs(std::abs(p.overlap(q)) - 1.0) < 1e-14);
    CHECK(p.distance2(q) < 1e-6);
    CHECK(p.same_point(q));

    // Identical copies sit at the sqrt(eps) floor of the projector distance,
    // still well inside the default same_point tolerance.
    PurePoint a = PurePoint::normalized({0.3, Complex(0.1, 0.7), -0.2});
    PurePoint b = PurePoint::normalized({0.3, Complex(0.1, 0.7), -0.2});
    CHECK(a.same_point(b));
}
