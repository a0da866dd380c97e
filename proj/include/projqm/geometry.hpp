#pragma once

#include "projqm/observables.hpp"

namespace projqm {

// Tangent vector at a pure point p, represented by a Hermitian generator:
// v = -i[A_v, p]. The generator is unique up to operators commuting with p.
class TangentVector {
public:
    TangentVector(const PurePoint& base, const HermitianOperator& generator);
    const PurePoint& base() const { return base_; }
    const ComplexMatrix& generator() const { return generator_; }
    const ComplexMatrix& matrix() const { return matrix_; }  // Hermitian, traceless

private:
    PurePoint base_;
    ComplexMatrix generator_;
    ComplexMatrix matrix_;
};

TangentVector tangent(const PurePoint& p, const HermitianOperator& generator);

// Symplectic form omega_p(u,v) = -i kappa tr(p [A_u, A_v]).
double omega(const TangentVector& u, const TangentVector& v, double kappa);

// Riemannian metric g_p(u,v) = -kappa tr(p([A_u,p][A_v,p] + [A_v,p][A_u,p])).
double fs_metric(const TangentVector& u, const TangentVector& v, double kappa);

// Almost complex structure j_p(v) = i[v, p]; squares to -id and ties the
// two pairings together: omega(u,v) = g(ju, v), omega(u, ju) = g(u,u) > 0.
TangentVector acs(const TangentVector& v);

// Hamiltonian field of the observable with operator A: X(p) = -i[A, p],
// the unique field with omega(X, .) = d(quantized A).
TangentVector hamiltonian_field(const HermitianOperator& a, const PurePoint& p);

// Poisson bracket of two affine observables; the result is the affine
// observable of the operator -i[A, B].
AffineObservable poisson(const AffineObservable& f, const AffineObservable& g);

// g_p(X_f, X_g): the metric pairing of the Hamiltonian fields of f and g
// (equivalently the cometric applied to df, dg). Requires real observables.
double cometric(const AffineObservable& f, const AffineObservable& g, const PurePoint& p);

}  // namespace projqm
