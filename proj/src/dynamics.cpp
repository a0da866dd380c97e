#include "projqm/dynamics.hpp"

#include <cmath>

#include "projqm/eigen.hpp"
#include "projqm/errors.hpp"

namespace projqm {

namespace {

// dp/dt = -i [H, p]
ComplexMatrix flow_derivative(const ComplexMatrix& hm, const ComplexMatrix& p) {
    ComplexMatrix c = commutator(hm, p);
    c *= Complex(0.0, -1.0);
    return c;
}

ComplexMatrix scaled_sum(const ComplexMatrix& a, const ComplexMatrix& b, double s) {
    ComplexMatrix r = a;
    const std::size_t n = r.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) += s * b(i, j);
    return r;
}

void rk4_step(ComplexMatrix& p, const ComplexMatrix& hm, double dt) {
    const ComplexMatrix k1 = flow_derivative(hm, p);
    const ComplexMatrix k2 = flow_derivative(hm, scaled_sum(p, k1, dt / 2.0));
    const ComplexMatrix k3 = flow_derivative(hm, scaled_sum(p, k2, dt / 2.0));
    const ComplexMatrix k4 = flow_derivative(hm, scaled_sum(p, k3, dt));
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            p(i, j) += (dt / 6.0) * (k1(i, j) + 2.0 * k2(i, j) + 2.0 * k3(i, j) + k4(i, j));
}

void hermitize(ComplexMatrix& p) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        p(i, i) = Complex(p(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (p(i, j) + std::conj(p(j, i)));
            p(i, j) = avg;
            p(j, i) = std::conj(avg);
        }
    }
}

// Nearest pure state: the dominant eigenvector. A collapsed spectral gap
// means the integrator drifted off the rank-one stratum beyond repair.
PurePoint top_eigenvector(const ComplexMatrix& p) {
    const std::size_t n = p.size();
    const EigenDecomposition d = eig_hermitian(p);
    if (n >= 2 && d.values[n - 1] - d.values[n - 2] < 1e-8)
        throw ConvergenceError(
            "evolve_flow: state left the pure-state stratum (spectral gap collapsed)");
    std::vector<Complex> psi(n);
    for (std::size_t i = 0; i < n; ++i) psi[i] = d.vectors(i, n - 1);
    return PurePoint::normalized(psi);
}

}  // namespace

PurePoint evolve_exact(const PurePoint& initial, const HermitianOperator& h, double t) {
    if (initial.size() != h.size())
        throw DimensionError("evolve_exact: state and generator dimensions differ");
    const ComplexMatrix u = expm_unitary(h.matrix(), t);
    return PurePoint::normalized(matvec(u, initial.amplitudes()));
}

std::vector<FlowSample> evolve_flow(const PurePoint& initial, const HermitianOperator& h,
                                    const FlowConfig& cfg) {
    if (initial.size() != h.size())
        throw DimensionError("evolve_flow: state and generator dimensions differ");
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
        throw ValidationError("evolve_flow: dt must be positive and finite");
    if (!(cfg.t_final >= 0.0) || !std::isfinite(cfg.t_final))
        throw ValidationError("evolve_flow: t_final must be nonnegative and finite");
    const std::size_t stride = cfg.stride == 0 ? 1 : cfg.stride;
    const ComplexMatrix& hm = h.matrix();

    std::vector<FlowSample> out;
    out.push_back({0.0, initial});

    const std::size_t n_full = static_cast<std::size_t>(std::floor(cfg.t_final / cfg.dt + 1e-9));
    double rem = cfg.t_final - static_cast<double>(n_full) * cfg.dt;
    if (rem < 1e-12 * std::max(1.0, cfg.t_final)) rem = 0.0;
    if (n_full == 0 && rem == 0.0) return out;

    ComplexMatrix p = initial.projector();
    for (std::size_t k = 1; k <= n_full; ++k) {
        rk4_step(p, hm, cfg.dt);
        hermitize(p);
        const bool last = k == n_full && rem == 0.0;
        const bool store = last || k % stride == 0;
        if (cfg.reproject) {
            const PurePoint cur = top_eigenvector(p);
            p = cur.projector();
            if (store)
                out.push_back({last ? cfg.t_final : static_cast<double>(k) * cfg.dt, cur});
        } else if (store) {
            out.push_back(
                {last ? cfg.t_final : static_cast<double>(k) * cfg.dt, top_eigenvector(p)});
        }
    }
    if (rem > 0.0) {
        rk4_step(p, hm, rem);
        hermitize(p);
        out.push_back({cfg.t_final, top_eigenvector(p)});
    }
    return out;
}

ComplexMatrix heisenberg(const HermitianOperator& a, const HermitianOperator& h, double t) {
    if (a.size() != h.size())
        throw DimensionError("heisenberg: observable and generator dimensions differ");
    const ComplexMatrix u = expm_unitary(h.matrix(), t);
    return matmul(matmul(u.adjoint(), a.matrix()), u);
}

KillingCheck killing_check(const PurePoint& p, const std::vector<HermitianOperator>& generators,
                           const HermitianOperator& h, double t, double kappa) {
    if (generators.empty()) throw ValidationError("killing_check: need at least one generator");
    if (p.size() != h.size()) throw DimensionError("killing_check: dimension mismatch");
    for (const HermitianOperator& g : generators)
        if (g.size() != p.size()) throw DimensionError("killing_check: generator size mismatch");

    const ComplexMatrix u = expm_unitary(h.matrix(), t);
    const PurePoint moved = PurePoint::normalized(matvec(u, p.amplitudes()));

    std::vector<TangentVector> before, after;
    before.reserve(generators.size());
    after.reserve(generators.size());
    for (const HermitianOperator& g : generators) {
        before.emplace_back(p, g);
        // The pushforward of -i[A, p] under p -> U p U* is generated by U A U*.
        const ComplexMatrix pushed = matmul(matmul(u, g.matrix()), u.adjoint());
        after.emplace_back(moved, HermitianOperator(pushed));
    }

    KillingCheck r{0.0, 0.0};
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i; j < generators.size(); ++j) {
            const double dg = std::abs(fs_metric(before[i], before[j], kappa) -
                                       fs_metric(after[i], after[j], kappa));
            const double dw =
                std::abs(omega(before[i], before[j], kappa) - omega(after[i], after[j], kappa));
            r.max_metric_deviation = std::max(r.max_metric_deviation, dg);
            r.max_symplectic_deviation = std::max(r.max_symplectic_deviation, dw);
        }
    return r;
}

}  // namespace projqm
