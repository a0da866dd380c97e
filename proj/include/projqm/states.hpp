#pragma once

#include "projqm/complex_matrix.hpp"
#include "projqm/eigen.hpp"
#include "projqm/tolerances.hpp"

namespace projqm {

// Hermitian operator: stores the symmetrized matrix (A + A*)/2 and the
// symmetrization residual max_ij |(A - A*)_ij|/2.
class HermitianOperator {
public:
    explicit HermitianOperator(const ComplexMatrix& a,
                               const Tolerances& tol = default_tolerances());
    const ComplexMatrix& matrix() const { return m_; }
    std::size_t size() const { return m_.size(); }
    double residual() const { return residual_; }

private:
    ComplexMatrix m_;
    double residual_;
};

enum class StateRankClass { pure, boundary, interior };
const char* to_string(StateRankClass c);

// Mixed state: Hermitian, unit trace, spectrum inside [-tol.psd, 1 + tol.psd].
class DensityMatrix {
public:
    explicit DensityMatrix(const ComplexMatrix& a,
                           const Tolerances& tol = default_tolerances());
    const ComplexMatrix& matrix() const { return op_.matrix(); }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    std::size_t size() const { return op_.size(); }

private:
    HermitianOperator op_;
    std::vector<double> eigenvalues_;
};

// pure: rank 1; boundary: rank < n (non-pure); interior: full rank.
StateRankClass state_rank_class(const DensityMatrix& rho, double tol_psd = 1e-10);

// Point of the projective space, stored as a unit vector; the rank-one
// projector is derived on demand. The stored vector is one representative
// of the ray; all derived quantities are phase-independent.
class PurePoint {
public:
    explicit PurePoint(const std::vector<Complex>& psi,
                       const Tolerances& tol = default_tolerances());
    // Rescales any nonzero vector to the unit sphere before construction.
    static PurePoint normalized(std::vector<Complex> psi);

    std::size_t size() const { return psi_.size(); }
    const std::vector<Complex>& amplitudes() const { return psi_; }
    ComplexMatrix projector() const;
    Complex expectation(const ComplexMatrix& k) const;  // <psi| K |psi>
    Complex overlap(const PurePoint& other) const;      // <psi | other>
    double distance2(const PurePoint& other) const;     // ||p - p'||_2
    // The projector distance of two copies of one ray already sits near
    // sqrt(eps) ~ 2e-8, so the default tolerance stays well above that floor.
    bool same_point(const PurePoint& other, double tol = 1e-6) const;

private:
    std::vector<Complex> psi_;
};

}  // namespace projqm
