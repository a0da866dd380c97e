#pragma once

#include "projqm/geometry.hpp"
#include "projqm/measures.hpp"

#include <string>
#include <utility>

namespace projqm {

// Operator -> affine phase-space function, f(p) = kappa tr(pA) + c_kappa tr(A).
AffineObservable quantize_inverse(const HermitianOperator& a, const QuantParams& q);

// Mixed state -> classical density, rho(p) = kappa' tr(sigma p) + c'.
LiouvilleDensity state_to_density(const DensityMatrix& sigma, const QuantParams& q);

struct ExpectationMatch {
    double quantum;          // tr(sigma A)
    double classical_exact;  // closed-form expansion of the phase-space pairing
};
ExpectationMatch expectation_match(const DensityMatrix& sigma, const HermitianOperator& a,
                                   const QuantParams& q);

// Exact inversion: A = K/kappa, after checking the stored pair is canonical
// (offset = c_kappa tr(K)/kappa). Throws ValidationError otherwise.
ComplexMatrix dequantize(const AffineObservable& f, double tol = 1e-8);

// Sampling kernel for black-box dequantization: Omega(p) = kappa' p + c' I.
// Its defining property is tr(sigma Omega(p)) = rho_sigma(p); averaging
// f_A(p) Omega(p) over the invariant measure returns A.
ComplexMatrix dequantizer_kernel(const PurePoint& p, const QuantParams& q);

struct MatrixMcEstimate {
    ComplexMatrix mean;
    // Entrywise standard errors: real part for Re, imaginary part for Im.
    ComplexMatrix std_error;
    std::size_t n_samples;
};

// Entrywise MC average of F(p) * Omega(p), chunked like mc_integrate.
MatrixMcEstimate dequantize_blackbox(const std::function<Complex(const PurePoint&)>& f,
                                     const QuantParams& q, std::size_t n_samples,
                                     const SeededSampler& s);

struct FrameCheckResult {
    bool is_frame;           // basis sums agree across trials within tol
    double weight_estimate;  // mean of the basis sums
    double spread;           // max - min of the basis sums
    std::size_t trials;
};

// Sums f over `trials` random orthonormal bases and reports whether the sum
// is basis-independent (the frame property).
FrameCheckResult frame_check(const std::function<double(const PurePoint&)>& f, std::size_t n,
                             std::size_t trials, const SeededSampler& s, double tol_frame = 1e-8);

struct GleasonFit {
    ComplexMatrix op;  // least-squares kernel A with value ~ tr(pA)
    double residual;   // RMS misfit over the samples
    std::vector<std::string> warnings;
};

// Least-squares reconstruction of an operator from (point, value) samples.
// Needs at least n^2 well-spread samples; real-valued data yields a
// Hermitian fit, complex data a general kernel.
GleasonFit gleason_fit(const std::vector<std::pair<PurePoint, Complex>>& samples, std::size_t n);

struct BoundsResult {
    double min_f;          // kappa min sp(A) + c_kappa tr(A)
    double max_f;          // kappa max sp(A) + c_kappa tr(A)
    bool o5_holds;         // range inside [min sp(A), max sp(A)]: kappa <= 1
    double sup_norm;       // max(|min_f|, |max_f|)
    double sup_bound;      // a priori bound on sup_norm; NaN when none applies
    bool sup_bound_holds;
};
BoundsResult bounds(const HermitianOperator& a, const QuantParams& q);

struct PositivityResult {
    bool always_nonneg;     // analytic criterion: kappa >= n+1
    double analytic_worst;  // infimum of rho_sigma over states and points: c'
    double observed_worst;  // minimum over the scan
    bool negative_witness;  // scan found a strictly negative density value
    std::size_t trials;
};

// Scans random (state, point) pairs, alternating pure and full-rank states.
PositivityResult positivity_check(const QuantParams& q, std::size_t trials,
                                  const SeededSampler& s);

struct CharacterizeResult {
    bool is_quantum;      // pairing against pure-state densities is affine in f
    double a, b;          // fitted I(p0) ~ a f(p0) + b
    double max_residual;  // worst fit residual across probe points
    double tolerance;     // residual tolerance applied (scales with MC error)
};

// Tests whether integrating f against the densities of random pure states
// is an affine function of f at the state's point (with nonzero slope).
CharacterizeResult characterize(const std::function<double(const PurePoint&)>& f,
                                const QuantParams& q, std::size_t trials,
                                std::size_t n_samples, const SeededSampler& s);

// Max over random (U, p) of |f_A(U p U*) - f_{U* A U}(p)|.
double covariance_check(const HermitianOperator& a, const QuantParams& q, std::size_t trials,
                        const SeededSampler& s);

// Self-adjoint unitary sending phi to a phase multiple of psi: identity off
// span{phi, psi}, the block [[c, conj(d)], [d, -c]] on it (c real >= 0,
// c^2 + |d|^2 = 1); the identity matrix when the rays coincide.
ComplexMatrix reflection_unitary(const PurePoint& phi, const PurePoint& psi);

}  // namespace projqm
