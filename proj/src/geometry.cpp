#include "projqm/geometry.hpp"

#include "projqm/errors.hpp"

#include <cmath>

namespace projqm {

namespace {

void check_kappa(double kappa) {
    if (!std::isfinite(kappa) || kappa <= 0.0)
        throw ValidationError("kappa must be positive and finite");
}

void check_same_base(const TangentVector& u, const TangentVector& v) {
    if (u.base().size() != v.base().size() || !u.base().same_point(v.base()))
        throw ValidationError("tangent vectors live at different base points");
}

// <A psi | B psi>, <psi|A psi>, <psi|B psi> for Hermitian A, B: the raw
// ingredients of both bilinear forms at a rank-one base point.
struct PairData {
    Complex cross;  // <A psi, B psi>
    double ea;      // <psi, A psi>
    double eb;      // <psi, B psi>
};

PairData pair_data(const PurePoint& p, const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::vector<Complex>& psi = p.amplitudes();
    const std::vector<Complex> apsi = matvec(a, psi);
    const std::vector<Complex> bpsi = matvec(b, psi);
    PairData d;
    d.cross = vec_inner(apsi, bpsi);
    d.ea = vec_inner(psi, apsi).real();
    d.eb = vec_inner(psi, bpsi).real();
    return d;
}

}  // namespace

TangentVector::TangentVector(const PurePoint& base, const HermitianOperator& generator)
    : base_(base), generator_(generator.matrix()), matrix_(base.size()) {
    if (generator.size() != base.size())
        throw DimensionError("TangentVector: generator size does not match base point");
    // -i [A, p] for p = psi psi*: -i ((A psi) psi* - psi (A psi)*).
    const std::vector<Complex>& psi = base_.amplitudes();
    const std::vector<Complex> apsi = matvec(generator_, psi);
    const std::size_t n = psi.size();
    const Complex mi(0.0, -1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            matrix_(i, j) = mi * (apsi[i] * std::conj(psi[j]) - psi[i] * std::conj(apsi[j]));
}

TangentVector tangent(const PurePoint& p, const HermitianOperator& generator) {
    return TangentVector(p, generator);
}

double omega(const TangentVector& u, const TangentVector& v, double kappa) {
    check_kappa(kappa);
    check_same_base(u, v);
    const PairData d = pair_data(u.base(), u.generator(), v.generator());
    // -i kappa tr(p[A,B]) = 2 kappa Im <A psi, B psi>
    return 2.0 * kappa * d.cross.imag();
}

double fs_metric(const TangentVector& u, const TangentVector& v, double kappa) {
    check_kappa(kappa);
    check_same_base(u, v);
    const PairData d = pair_data(u.base(), u.generator(), v.generator());
    // -kappa tr(p([A,p][B,p] + [B,p][A,p])) = 2 kappa (Re <A psi, B psi> - <A><B>)
    return 2.0 * kappa * (d.cross.real() - d.ea * d.eb);
}

TangentVector acs(const TangentVector& v) {
    // i[v, p] = -i[-v, p]: the negated tangent matrix serves as generator.
    return TangentVector(v.base(), HermitianOperator(-v.matrix()));
}

TangentVector hamiltonian_field(const HermitianOperator& a, const PurePoint& p) {
    return TangentVector(p, a);
}

AffineObservable poisson(const AffineObservable& f, const AffineObservable& g) {
    if (f.params() != g.params())
        throw ValidationError("poisson: observables built with different parameters");
    const double kappa = f.params().kappa();
    // Kernels are kappa A and kappa B; the bracket observable has operator
    // -i[A, B], canonical kernel kappa (-i)[A,B] = -i [K_f, K_g] / kappa.
    ComplexMatrix c = commutator(f.kernel(), g.kernel());
    c *= Complex(0.0, -1.0 / (kappa * kappa));
    ComplexMatrix kernel = c;
    kernel *= Complex(kappa);
    return AffineObservable(kernel, f.params().c_kappa() * c.trace(), f.params());
}

double cometric(const AffineObservable& f, const AffineObservable& g, const PurePoint& p) {
    if (f.params() != g.params())
        throw ValidationError("cometric: observables built with different parameters");
    if (!f.is_real() || !g.is_real())
        throw ValidationError("cometric: requires real observables (Hermitian kernels)");
    const double kappa = f.params().kappa();
    ComplexMatrix a = f.kernel();
    a *= Complex(1.0 / kappa);
    ComplexMatrix b = g.kernel();
    b *= Complex(1.0 / kappa);
    const TangentVector xf = hamiltonian_field(HermitianOperator(a), p);
    const TangentVector xg = hamiltonian_field(HermitianOperator(b), p);
    return fs_metric(xf, xg, kappa);
}

}  // namespace projqm
