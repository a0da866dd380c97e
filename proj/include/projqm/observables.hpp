#pragma once

#include "projqm/states.hpp"

namespace projqm {

// Dimension and deformation parameter kappa > 0, with the derived constants
//   c_kappa = (1 - kappa)/n,  kappa' = n(n+1)/kappa,  c' = (kappa - (n+1))/kappa,
// which satisfy kappa + n c_kappa = 1 and kappa' + n c' = n.
class QuantParams {
public:
    QuantParams(std::size_t n, double kappa);

    std::size_t dimension() const { return n_; }
    double kappa() const { return kappa_; }
    double c_kappa() const { return c_kappa_; }
    double kappa_prime() const { return kappa_prime_; }
    double c_prime() const { return c_prime_; }

    bool operator==(const QuantParams& o) const { return n_ == o.n_ && kappa_ == o.kappa_; }
    bool operator!=(const QuantParams& o) const { return !(*this == o); }

private:
    std::size_t n_;
    double kappa_;
    double c_kappa_;
    double kappa_prime_;
    double c_prime_;
};

// Affine function of the projector, f(p) = tr(pK) + b. The image of an
// operator A is stored canonically as K = kappa A, b = c_kappa tr(A);
// the kernel may be non-Hermitian (complex-valued functions).
class AffineObservable {
public:
    AffineObservable(const ComplexMatrix& kernel, Complex offset, const QuantParams& params);

    // Canonical form of the constant function, the image of value * I.
    static AffineObservable constant(Complex value, const QuantParams& params);

    Complex evaluate(const PurePoint& p) const;
    const ComplexMatrix& kernel() const { return kernel_; }
    Complex offset() const { return offset_; }
    const QuantParams& params() const { return params_; }

    // Sum of values over any orthonormal basis: tr(K) + n b.
    Complex frame_weight() const;
    AffineObservable conj() const;
    bool is_real(double tol = 1e-10) const;

    AffineObservable& operator+=(const AffineObservable& g);
    AffineObservable& operator*=(Complex s);
    friend AffineObservable operator+(AffineObservable f, const AffineObservable& g) { return f += g; }
    friend AffineObservable operator*(Complex s, AffineObservable f) { return f *= s; }

private:
    ComplexMatrix kernel_;
    Complex offset_;
    QuantParams params_;
};

// Classical density of a mixed state: rho_sigma(p) = kappa' tr(sigma p) + c'.
class LiouvilleDensity {
public:
    LiouvilleDensity(const DensityMatrix& sigma, const QuantParams& params);
    const AffineObservable& observable() const { return obs_; }
    double evaluate(const PurePoint& p) const;
    const QuantParams& params() const { return obs_.params(); }

private:
    AffineObservable obs_;
};

}  // namespace projqm
