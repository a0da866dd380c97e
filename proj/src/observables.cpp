#include "projqm/observables.hpp"

#include "projqm/errors.hpp"

#include <cmath>

namespace projqm {

QuantParams::QuantParams(std::size_t n, double kappa) : n_(n), kappa_(kappa) {
    if (n == 0) throw DimensionError("QuantParams: dimension must be positive");
    if (!std::isfinite(kappa) || kappa <= 0.0)
        throw ValidationError("QuantParams: kappa must be positive and finite");
    const double nn = static_cast<double>(n);
    c_kappa_ = (1.0 - kappa) / nn;
    kappa_prime_ = nn * (nn + 1.0) / kappa;
    c_prime_ = (kappa - (nn + 1.0)) / kappa;
    // Defining identities, exact up to rounding of the quotients.
    if (std::abs(kappa_ + nn * c_kappa_ - 1.0) > 1e-14 * std::max(1.0, kappa_) ||
        std::abs(kappa_prime_ + nn * c_prime_ - nn) > 1e-14 * std::max(nn, kappa_prime_))
        throw NumericError("QuantParams: derived constants violate defining identities");
}

AffineObservable::AffineObservable(const ComplexMatrix& kernel, Complex offset,
                                   const QuantParams& params)
    : kernel_(kernel), offset_(offset), params_(params) {
    if (kernel_.size() != params_.dimension())
        throw DimensionError("AffineObservable: kernel size does not match parameters");
    if (!kernel_.finite() || !std::isfinite(offset.real()) || !std::isfinite(offset.imag()))
        throw ValidationError("AffineObservable: non-finite kernel or offset");
}

AffineObservable AffineObservable::constant(Complex value, const QuantParams& params) {
    ComplexMatrix k = ComplexMatrix::identity(params.dimension());
    k *= value * params.kappa();
    const Complex b = value * params.c_kappa() * static_cast<double>(params.dimension());
    return AffineObservable(k, b, params);
}

Complex AffineObservable::evaluate(const PurePoint& p) const {
    if (p.size() != kernel_.size())
        throw DimensionError("AffineObservable::evaluate: point dimension mismatch");
    return p.expectation(kernel_) + offset_;
}

Complex AffineObservable::frame_weight() const {
    return kernel_.trace() + static_cast<double>(params_.dimension()) * offset_;
}

AffineObservable AffineObservable::conj() const {
    return AffineObservable(kernel_.adjoint(), std::conj(offset_), params_);
}

bool AffineObservable::is_real(double tol) const {
    return kernel_.herm_residual() <= tol && std::abs(offset_.imag()) <= tol;
}

AffineObservable& AffineObservable::operator+=(const AffineObservable& g) {
    if (params_ != g.params_)
        throw ValidationError("AffineObservable: mixing observables with different parameters");
    kernel_ += g.kernel_;
    offset_ += g.offset_;
    return *this;
}

AffineObservable& AffineObservable::operator*=(Complex s) {
    kernel_ *= s;
    offset_ *= s;
    return *this;
}

LiouvilleDensity::LiouvilleDensity(const DensityMatrix& sigma, const QuantParams& params)
    : obs_(ComplexMatrix(params.dimension()), 0.0, params) {
    if (sigma.size() != params.dimension())
        throw DimensionError("LiouvilleDensity: state dimension does not match parameters");
    ComplexMatrix k = sigma.matrix();
    k *= Complex(params.kappa_prime());
    obs_ = AffineObservable(k, Complex(params.c_prime()), params);
}

double LiouvilleDensity::evaluate(const PurePoint& p) const {
    return obs_.evaluate(p).real();
}

}  // namespace projqm
