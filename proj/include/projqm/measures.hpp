#pragma once

#include "projqm/sampler.hpp"
#include "projqm/states.hpp"

#include <functional>

namespace projqm {

// One draw from the unitarily invariant distribution on pure points:
// i.i.d. standard complex Gaussian amplitudes, normalized.
PurePoint sample_pure(SeededSampler& s, std::size_t n);

// Random orthonormal basis: Gram-Schmidt (with reorthogonalization) on a
// Gaussian matrix; redraws on rank deficiency. Entries are n pure points
// with pairwise orthogonal rays.
std::vector<PurePoint> sample_basis(SeededSampler& s, std::size_t n);

// Random unitary assembled from sample_basis columns.
ComplexMatrix sample_unitary(SeededSampler& s, std::size_t n);

// GUE-type random Hermitian matrix: N(0,1) diagonal, off-diagonal complex
// Gaussian with unit modulus variance.
ComplexMatrix random_hermitian(SeededSampler& s, std::size_t n);

// Full-rank random mixed state G G* / tr(G G*) with G Gaussian.
DensityMatrix random_state(SeededSampler& s, std::size_t n);

struct McEstimate {
    Complex mean;
    double std_error;  // sqrt((var_re + var_im)/N), unbiased sample variance
    std::size_t n_samples;
};

inline constexpr std::size_t kMcChunk = 4096;

// Chunked Monte Carlo mean of f over the invariant measure. Chunk c draws
// from s.split(c) in blocks of kMcChunk and partial sums reduce in chunk
// order, so the estimate is bit-identical for a given (sampler, n_samples)
// regardless of scheduling. A non-finite integrand value aborts with the
// offending sample index.
McEstimate mc_integrate(const std::function<Complex(const PurePoint&)>& f,
                        std::size_t n_samples, const SeededSampler& s, std::size_t n);

// Closed forms for the first two moments of p -> tr(pA):
//   mean of tr(pA)                  = tr(A)/n
//   mean of conj(tr(pA)) tr(pB)     = (tr(A*B) + tr(A*) tr(B)) / (n(n+1))
Complex exact_integral(const ComplexMatrix& a);
Complex exact_integral_pair(const ComplexMatrix& a, const ComplexMatrix& b);

// Inversion of the pair moment: tr(A*B) from the three integrals
// (pair mean, mean of conj(tr(pA)), mean of tr(pB)).
Complex hs_from_integrals(std::size_t n, Complex int_pair, Complex int_a_conj, Complex int_b);

}  // namespace projqm
