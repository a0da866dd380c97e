#include "projqm/complex_matrix.hpp"

#include "projqm/errors.hpp"

#include <cmath>

namespace projqm {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

bool ComplexMatrix::finite() const {
    for (const Complex& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double ComplexMatrix::herm_residual() const {
    double r = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i; j < n_; ++j)
            r = std::max(r, 0.5 * std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& b) {
    check_same_size(*this, b, "+");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += b.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& b) {
    check_same_size(*this, b, "-");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= b.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (Complex& z : a_) z *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::operator-() const {
    ComplexMatrix m(*this);
    for (Complex& z : m.a_) z = -z;
    return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_size(a, b, "*");
    const std::size_t n = a.size();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul(a, b) - matmul(b, a);
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return matmul(a, b) + matmul(b, a);
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_size(a, b, "hs_inner");
    Complex s = 0.0;
    const auto& da = a.data();
    const auto& db = b.data();
    for (std::size_t k = 0; k < da.size(); ++k) s += std::conj(da[k]) * db[k];
    return s;
}

double hs_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const Complex& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_size(a, b, "hs_distance");
    double s = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) s += std::norm(a.data()[k] - b.data()[k]);
    return std::sqrt(s);
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const Complex& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

std::vector<Complex> matvec(const ComplexMatrix& a, const std::vector<Complex>& v) {
    const std::size_t n = a.size();
    if (v.size() != n) throw DimensionError("matvec: matrix/vector size mismatch");
    std::vector<Complex> w(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a(i, j) * v[j];
        w[i] = s;
    }
    return w;
}

Complex vec_inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) throw DimensionError("vec_inner: size mismatch");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double vec_norm(const std::vector<Complex>& a) {
    double s = 0.0;
    for (const Complex& z : a) s += std::norm(z);
    return std::sqrt(s);
}

void check_same_size(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.size() != b.size())
        throw DimensionError(std::string("matrix operation '") + op + "': size mismatch (" +
                             std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

}  // namespace projqm
