#include "projqm/algebra.hpp"

#include "projqm/eigen.hpp"
#include "projqm/errors.hpp"
#include "projqm/geometry.hpp"

namespace projqm {

namespace {

void check_params(const AffineObservable& f, const AffineObservable& g, const char* who) {
    if (f.params() != g.params())
        throw ValidationError(std::string(who) + ": observables carry different parameters");
}

// tr(K_f K_g) without conjugation.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_size(a, b, "trace_product");
    Complex t = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) t += a(i, j) * b(j, i);
    return t;
}

}  // namespace

ComplexMatrix preimage(const AffineObservable& f) {
    const double kappa = f.params().kappa();
    ComplexMatrix a = f.kernel();
    a *= Complex(1.0 / kappa);
    // Offset surplus beyond the canonical c_kappa * tr(A) becomes gamma * I;
    // the represented function is unchanged.
    const Complex gamma = f.offset() - f.params().c_kappa() * a.trace();
    for (std::size_t i = 0; i < a.size(); ++i) a(i, i) += gamma;
    return a;
}

Complex integral_mean(const AffineObservable& f) {
    const double n = static_cast<double>(f.params().dimension());
    return f.kernel().trace() / n + f.offset();
}

Complex integral_product(const AffineObservable& f, const AffineObservable& g) {
    check_params(f, g, "integral_product");
    const double n = static_cast<double>(f.params().dimension());
    const Complex tf = f.kernel().trace();
    const Complex tg = g.kernel().trace();
    return (trace_product(f.kernel(), g.kernel()) + tf * tg) / (n * (n + 1.0)) +
           f.offset() * tg / n + g.offset() * tf / n + f.offset() * g.offset();
}

AffineObservable star_operator(const AffineObservable& f, const AffineObservable& g) {
    check_params(f, g, "star_operator");
    const QuantParams& q = f.params();
    ComplexMatrix kernel = matmul(preimage(f), preimage(g));
    const Complex offset = q.c_kappa() * kernel.trace();
    kernel *= Complex(q.kappa());
    return AffineObservable(kernel, offset, q);
}

Complex star_geometric(const AffineObservable& f, const AffineObservable& g, const PurePoint& p) {
    check_params(f, g, "star_geometric");
    if (!f.is_real() || !g.is_real())
        throw ValidationError("star_geometric: requires real observables");
    const QuantParams& q = f.params();
    if (p.size() != q.dimension())
        throw DimensionError("star_geometric: point dimension mismatch");
    const double kappa = q.kappa();
    const double n = static_cast<double>(q.dimension());

    const double pb = poisson(f, g).evaluate(p).real();
    const double gm = cometric(f, g, p);
    const double fv = f.evaluate(p).real();
    const double gv = g.evaluate(p).real();
    const double mf = integral_mean(f).real();
    const double mg = integral_mean(g).real();
    const double mfg = integral_product(f, g).real();

    const double real_part =
        0.5 * gm + fv * gv / kappa +
        ((1.0 - kappa) / kappa) * ((n + 1.0) / kappa * mfg - fv * mg - gv * mf) +
        ((1.0 - kappa) / (kappa * kappa)) * (kappa - (n + 1.0)) * mf * mg;
    return Complex(real_part, 0.5 * pb);
}

double cstar_norm(const AffineObservable& f) {
    return norms(preimage(f)).op_norm;
}

AffineObservable jordan(const AffineObservable& f, const AffineObservable& g) {
    AffineObservable s = star_operator(f, g);
    AffineObservable t = star_operator(g, f);
    s += t;
    s *= Complex(0.5);
    return s;
}

AffineObservable lie(const AffineObservable& f, const AffineObservable& g) {
    return poisson(f, g);
}

}  // namespace projqm
