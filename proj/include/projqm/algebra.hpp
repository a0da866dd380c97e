#pragma once

#include "projqm/observables.hpp"
#include "projqm/states.hpp"

namespace projqm {

// Unique operator preimage of an affine observable. The affine pair is only
// determined up to (K, b) -> (K + cI, b - c); the preimage resolves that by
// folding any offset surplus into a multiple of the identity.
ComplexMatrix preimage(const AffineObservable& f);

// Haar mean of the observable over pure states.
Complex integral_mean(const AffineObservable& f);

// Haar mean of the pointwise product f*g (no conjugation) over pure states,
// evaluated in closed form from the two exact moments of the measure.
Complex integral_product(const AffineObservable& f, const AffineObservable& g);

// Noncommutative product transported from operators: star(f, g) is the
// quantization of preimage(f) * preimage(g), returned in canonical form.
AffineObservable star_operator(const AffineObservable& f, const AffineObservable& g);

// The same product assembled pointwise from geometric data alone: symplectic
// and metric pairings of the Hamiltonian fields plus exact Haar moments.
// Requires real observables; returns the (complex) product value at p.
Complex star_geometric(const AffineObservable& f, const AffineObservable& g, const PurePoint& p);

// C*-norm: the operator norm of the preimage. For real observables this
// coincides with sup_p |f(p) - (1 - kappa) * mean(f)| / kappa.
double cstar_norm(const AffineObservable& f);

// Symmetrized and antisymmetrized parts of the star product.
AffineObservable jordan(const AffineObservable& f, const AffineObservable& g);
AffineObservable lie(const AffineObservable& f, const AffineObservable& g);

}  // namespace projqm
