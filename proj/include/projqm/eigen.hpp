#pragma once

#include "projqm/complex_matrix.hpp"

namespace projqm {

// Eigendecomposition of a Hermitian matrix: A = V diag(values) V*.
// values ascending; columns of V orthonormal, each phase-fixed so that its
// first component of modulus > 1e-12 is real positive.
struct EigenDecomposition {
    std::vector<double> values;
    ComplexMatrix vectors;  // eigenvectors as columns
};

// Cyclic Jacobi iteration with complex rotations on the upper triangle.
// Converges when the off-diagonal Hilbert-Schmidt mass drops below
// 1e-14 * ||A||_2; throws ConvergenceError after max_sweeps sweeps.
EigenDecomposition eig_hermitian(const ComplexMatrix& a, int max_sweeps = 100);

// exp(-i t H) for Hermitian H, via the eigendecomposition of H.
ComplexMatrix expm_unitary(const ComplexMatrix& h, double t);

struct MatrixNorms {
    double op_norm;     // largest singular value
    double trace_norm;  // sum of singular values
    double hs_norm;     // Frobenius
};

// Singular values are square roots of the spectrum of A*A.
MatrixNorms norms(const ComplexMatrix& a);

bool is_unitary(const ComplexMatrix& u, double tol);

}  // namespace projqm
