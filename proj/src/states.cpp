#include "projqm/states.hpp"

#include "projqm/errors.hpp"

#include <cmath>

namespace projqm {

HermitianOperator::HermitianOperator(const ComplexMatrix& a, const Tolerances& tol)
    : m_(a.size()), residual_(0.0) {
    if (a.size() == 0) throw DimensionError("HermitianOperator: empty matrix");
    if (!a.finite()) throw ValidationError("HermitianOperator: non-finite entries");
    residual_ = a.herm_residual();
    if (residual_ > tol.herm)
        throw ValidationError("HermitianOperator: symmetrization residual " +
                              std::to_string(residual_) + " exceeds tolerance");
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m_(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
}

const char* to_string(StateRankClass c) {
    switch (c) {
        case StateRankClass::pure: return "pure";
        case StateRankClass::boundary: return "boundary";
        default: return "interior";
    }
}

DensityMatrix::DensityMatrix(const ComplexMatrix& a, const Tolerances& tol) : op_(a, tol) {
    const Complex tr = op_.matrix().trace();
    if (std::abs(tr - Complex(1.0)) > tol.trace)
        throw ValidationError("DensityMatrix: trace deviates from 1 by " +
                              std::to_string(std::abs(tr - Complex(1.0))));
    eigenvalues_ = eig_hermitian(op_.matrix()).values;
    for (double lam : eigenvalues_)
        if (lam < -tol.psd || lam > 1.0 + tol.psd)
            throw ValidationError("DensityMatrix: eigenvalue " + std::to_string(lam) +
                                  " outside [0, 1]");
}

StateRankClass state_rank_class(const DensityMatrix& rho, double tol_psd) {
    std::size_t rank = 0;
    for (double lam : rho.eigenvalues())
        if (lam > tol_psd) ++rank;
    if (rank <= 1) return StateRankClass::pure;
    if (rank < rho.size()) return StateRankClass::boundary;
    return StateRankClass::interior;
}

PurePoint::PurePoint(const std::vector<Complex>& psi, const Tolerances& tol) : psi_(psi) {
    if (psi_.empty()) throw DimensionError("PurePoint: empty vector");
    const double nrm = vec_norm(psi_);
    if (!std::isfinite(nrm) || std::abs(nrm - 1.0) > tol.norm)
        throw ValidationError("PurePoint: vector norm " + std::to_string(nrm) +
                              " deviates from 1 beyond tolerance");
    for (Complex& z : psi_) z /= nrm;
}

PurePoint PurePoint::normalized(std::vector<Complex> psi) {
    const double nrm = vec_norm(psi);
    if (!std::isfinite(nrm) || nrm < 1e-150)
        throw ValidationError("PurePoint: cannot normalize a zero or non-finite vector");
    for (Complex& z : psi) z /= nrm;
    return PurePoint(psi);
}

ComplexMatrix PurePoint::projector() const {
    const std::size_t n = psi_.size();
    ComplexMatrix p(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p(i, j) = psi_[i] * std::conj(psi_[j]);
    return p;
}

Complex PurePoint::expectation(const ComplexMatrix& k) const {
    if (k.size() != psi_.size()) throw DimensionError("PurePoint::expectation: size mismatch");
    Complex s = 0.0;
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        Complex row = 0.0;
        for (std::size_t j = 0; j < psi_.size(); ++j) row += k(i, j) * psi_[j];
        s += std::conj(psi_[i]) * row;
    }
    return s;
}

Complex PurePoint::overlap(const PurePoint& other) const {
    return vec_inner(psi_, other.psi_);
}

double PurePoint::distance2(const PurePoint& other) const {
    // ||p - p'||_2^2 = 2 (1 - |<psi|psi'>|^2) for rank-one projectors.
    const double ov = std::norm(overlap(other));
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - ov)));
}

bool PurePoint::same_point(const PurePoint& other, double tol) const {
    return size() == other.size() && distance2(other) <= tol;
}

}  // namespace projqm
