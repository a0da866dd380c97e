#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace projqm {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<Complex>& d);
    static ComplexMatrix diagonal(const std::vector<double>& d);

    std::size_t size() const { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    std::vector<Complex>& data() { return a_; }
    const std::vector<Complex>& data() const { return a_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    bool finite() const;           // no NaN/Inf entries
    double herm_residual() const;  // max_ij |(A - A*)_ij| / 2
    bool is_hermitian(double tol) const { return herm_residual() <= tol; }

    ComplexMatrix& operator+=(const ComplexMatrix& b);
    ComplexMatrix& operator-=(const ComplexMatrix& b);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    ComplexMatrix operator-() const;

private:
    std::size_t n_ = 0;
    std::vector<Complex> a_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

// [A, B] = AB - BA
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
// AB + BA
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

// tr(A* B), the Hilbert-Schmidt inner product (conjugate-linear in A).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double hs_norm(const ComplexMatrix& a);  // sqrt(sum |a_ij|^2)
double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& a);  // entrywise max modulus

// Matrix-vector product and basic vector helpers.
std::vector<Complex> matvec(const ComplexMatrix& a, const std::vector<Complex>& v);
Complex vec_inner(const std::vector<Complex>& a, const std::vector<Complex>& b);  // <a|b>
double vec_norm(const std::vector<Complex>& a);

void check_same_size(const ComplexMatrix& a, const ComplexMatrix& b, const char* op);

}  // namespace projqm
