#include "projqm/eigen.hpp"

#include "projqm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace projqm {

namespace {

double offdiag_mass(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(m(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing m(p,q). With a_pq = beta e^{i phi},
// tau = (a_qq - a_pp)/(2 beta) and t the smaller root of t^2 + 2 tau t - 1,
// the unitary J (J_pp = J_qq = c, J_pq = s e^{i phi}, J_qp = -s e^{-i phi})
// annihilates the pivot of J* M J.
void rotate(ComplexMatrix& m, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = m(p, q);
    const double beta = std::abs(apq);
    if (beta < 1e-280) return;
    const Complex phase = apq / beta;
    const double alpha = m(p, p).real();
    const double gamma = m(q, q).real();
    const double tau = (gamma - alpha) / (2.0 * beta);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const Complex mkp = m(k, p);
        const Complex mkq = m(k, q);
        m(k, p) = c * mkp - s * std::conj(phase) * mkq;
        m(k, q) = s * phase * mkp + c * mkq;
        m(p, k) = std::conj(m(k, p));
        m(q, k) = std::conj(m(k, q));
    }
    m(p, p) = alpha * c * c - 2.0 * s * c * beta + gamma * s * s;
    m(q, q) = alpha * s * s + 2.0 * s * c * beta + gamma * c * c;
    m(p, q) = 0.0;
    m(q, p) = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - s * std::conj(phase) * vkq;
        v(k, q) = s * phase * vkp + c * vkq;
    }
}

void fix_phase(ComplexMatrix& v, std::size_t col) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(v(i, col));
        if (a > 1e-12) {
            const Complex w = std::conj(v(i, col)) / a;
            for (std::size_t k = 0; k < n; ++k) v(k, col) *= w;
            return;
        }
    }
}

}  // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& a, int max_sweeps) {
    const std::size_t n = a.size();
    if (n == 0) throw DimensionError("eig_hermitian: empty matrix");
    if (!a.finite()) throw ValidationError("eig_hermitian: non-finite entries");
    if (a.herm_residual() > 1e-8 * std::max(1.0, max_abs(a)))
        throw ValidationError("eig_hermitian: input is not Hermitian");

    // Work on the exactly symmetrized matrix so the rotations stay consistent.
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = 1e-14 * hs_norm(m);

    bool converged = offdiag_mass(m) <= threshold;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(m, v, p, q);
        converged = offdiag_mass(m) <= threshold;
    }
    if (!converged)
        throw ConvergenceError("eig_hermitian: no convergence after " +
                               std::to_string(max_sweeps) + " sweeps (off-diagonal mass " +
                               std::to_string(offdiag_mass(m)) + ")");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return m(i, i).real() < m(j, j).real(); });

    EigenDecomposition d;
    d.values.resize(n);
    d.vectors = ComplexMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        d.values[j] = m(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) d.vectors(i, j) = v(i, order[j]);
        fix_phase(d.vectors, j);
    }
    return d;
}

ComplexMatrix expm_unitary(const ComplexMatrix& h, double t) {
    const EigenDecomposition d = eig_hermitian(h);
    const std::size_t n = h.size();
    ComplexMatrix u(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex ph = std::exp(Complex(0.0, -t * d.values[j]));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                u(i, k) += ph * d.vectors(i, j) * std::conj(d.vectors(k, j));
    }
    return u;
}

MatrixNorms norms(const ComplexMatrix& a) {
    if (a.size() == 0) throw DimensionError("norms: empty matrix");
    if (!a.finite()) throw ValidationError("norms: non-finite entries");
    const ComplexMatrix gram = matmul(a.adjoint(), a);
    const EigenDecomposition d = eig_hermitian(gram);
    MatrixNorms r{0.0, 0.0, hs_norm(a)};
    for (double lam : d.values) {
        const double s = std::sqrt(std::max(0.0, lam));
        r.op_norm = std::max(r.op_norm, s);
        r.trace_norm += s;
    }
    return r;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    return max_abs(matmul(u.adjoint(), u) - ComplexMatrix::identity(u.size())) <= tol;
}

}  // namespace projqm
