#include "projqm/measures.hpp"

#include "projqm/errors.hpp"

#include <cmath>

namespace projqm {

PurePoint sample_pure(SeededSampler& s, std::size_t n) {
    if (n == 0) throw DimensionError("sample_pure: dimension must be positive");
    for (;;) {
        std::vector<Complex> psi(n);
        for (Complex& z : psi) z = s.next_complex_gaussian();
        if (vec_norm(psi) >= 1e-150) return PurePoint::normalized(std::move(psi));
    }
}

std::vector<PurePoint> sample_basis(SeededSampler& s, std::size_t n) {
    if (n == 0) throw DimensionError("sample_basis: dimension must be positive");
    for (;;) {
        std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
        for (auto& c : cols)
            for (Complex& z : c) z = s.next_complex_gaussian();

        std::vector<PurePoint> basis;
        basis.reserve(n);
        bool degenerate = false;
        for (std::size_t j = 0; j < n && !degenerate; ++j) {
            // Two Gram-Schmidt passes keep orthogonality at machine level.
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t k = 0; k < j; ++k) {
                    const Complex c = vec_inner(basis[k].amplitudes(), cols[j]);
                    for (std::size_t i = 0; i < n; ++i)
                        cols[j][i] -= c * basis[k].amplitudes()[i];
                }
            if (vec_norm(cols[j]) < 1e-8) {
                degenerate = true;
                break;
            }
            basis.push_back(PurePoint::normalized(cols[j]));
        }
        if (!degenerate) return basis;
    }
}

ComplexMatrix sample_unitary(SeededSampler& s, std::size_t n) {
    const std::vector<PurePoint> basis = sample_basis(s, n);
    ComplexMatrix u(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) u(i, j) = basis[j].amplitudes()[i];
    return u;
}

ComplexMatrix random_hermitian(SeededSampler& s, std::size_t n) {
    if (n == 0) throw DimensionError("random_hermitian: dimension must be positive");
    ComplexMatrix h(n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = s.next_gaussian();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex z = s.next_complex_gaussian() * inv_sqrt2;
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return h;
}

DensityMatrix random_state(SeededSampler& s, std::size_t n) {
    if (n == 0) throw DimensionError("random_state: dimension must be positive");
    ComplexMatrix g(n);
    for (Complex& z : g.data()) z = s.next_complex_gaussian();
    ComplexMatrix w = matmul(g, g.adjoint());
    const double tr = w.trace().real();
    w *= Complex(1.0 / tr);
    return DensityMatrix(w);
}

McEstimate mc_integrate(const std::function<Complex(const PurePoint&)>& f,
                        std::size_t n_samples, const SeededSampler& s, std::size_t n) {
    if (n_samples == 0) throw ValidationError("mc_integrate: need at least one sample");
    double sum_re = 0.0, sum_im = 0.0, sq_re = 0.0, sq_im = 0.0;
    const std::size_t chunks = (n_samples + kMcChunk - 1) / kMcChunk;
    for (std::size_t c = 0; c < chunks; ++c) {
        SeededSampler cs = s.split(c);
        const std::size_t m = std::min(kMcChunk, n_samples - c * kMcChunk);
        double csum_re = 0.0, csum_im = 0.0, csq_re = 0.0, csq_im = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const PurePoint p = sample_pure(cs, n);
            const Complex v = f(p);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NumericError("mc_integrate: integrand returned a non-finite value at sample " +
                                   std::to_string(c * kMcChunk + i));
            csum_re += v.real();
            csum_im += v.imag();
            csq_re += v.real() * v.real();
            csq_im += v.imag() * v.imag();
        }
        sum_re += csum_re;
        sum_im += csum_im;
        sq_re += csq_re;
        sq_im += csq_im;
    }
    const double nn = static_cast<double>(n_samples);
    McEstimate e;
    e.mean = Complex(sum_re / nn, sum_im / nn);
    e.n_samples = n_samples;
    if (n_samples > 1) {
        const double var_re = std::max(0.0, (sq_re - nn * e.mean.real() * e.mean.real()) / (nn - 1.0));
        const double var_im = std::max(0.0, (sq_im - nn * e.mean.imag() * e.mean.imag()) / (nn - 1.0));
        e.std_error = std::sqrt((var_re + var_im) / nn);
    } else {
        e.std_error = 0.0;
    }
    return e;
}

Complex exact_integral(const ComplexMatrix& a) {
    if (a.size() == 0) throw DimensionError("exact_integral: empty matrix");
    return a.trace() / static_cast<double>(a.size());
}

Complex exact_integral_pair(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_size(a, b, "exact_integral_pair");
    const double n = static_cast<double>(a.size());
    return (hs_inner(a, b) + std::conj(a.trace()) * b.trace()) / (n * (n + 1.0));
}

Complex hs_from_integrals(std::size_t n, Complex int_pair, Complex int_a_conj, Complex int_b) {
    const double nn = static_cast<double>(n);
    return nn * (nn + 1.0) * int_pair - nn * nn * int_a_conj * int_b;
}

}  // namespace projqm
