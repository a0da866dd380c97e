#include "projqm/maps.hpp"

#include "projqm/errors.hpp"

#include <cmath>
#include <limits>

namespace projqm {

namespace {

// Solve G x = r for Hermitian positive semidefinite G through its spectrum;
// throws when G is numerically rank-deficient.
std::vector<Complex> solve_psd(const ComplexMatrix& g, const std::vector<Complex>& r,
                               const char* who) {
    const EigenDecomposition d = eig_hermitian(g);
    const std::size_t m = g.size();
    const double lmax = std::max(d.values.back(), 0.0);
    const double floor = std::max(lmax * 1e-12, 1e-300);
    std::vector<Complex> x(m, 0.0);
    for (std::size_t e = 0; e < m; ++e) {
        if (d.values[e] <= floor)
            throw ValidationError(std::string(who) +
                                  ": degenerate sample set (rank-deficient design matrix)");
        Complex proj = 0.0;
        for (std::size_t i = 0; i < m; ++i) proj += std::conj(d.vectors(i, e)) * r[i];
        proj /= d.values[e];
        for (std::size_t i = 0; i < m; ++i) x[i] += proj * d.vectors(i, e);
    }
    return x;
}

}  // namespace

AffineObservable quantize_inverse(const HermitianOperator& a, const QuantParams& q) {
    if (a.size() != q.dimension())
        throw DimensionError("quantize_inverse: operator size does not match parameters");
    ComplexMatrix kernel = a.matrix();
    kernel *= Complex(q.kappa());
    const Complex offset = q.c_kappa() * a.matrix().trace();
    return AffineObservable(kernel, offset, q);
}

LiouvilleDensity state_to_density(const DensityMatrix& sigma, const QuantParams& q) {
    return LiouvilleDensity(sigma, q);
}

ExpectationMatch expectation_match(const DensityMatrix& sigma, const HermitianOperator& a,
                                   const QuantParams& q) {
    if (sigma.size() != q.dimension() || a.size() != q.dimension())
        throw DimensionError("expectation_match: dimension mismatch");
    const double n = static_cast<double>(q.dimension());
    ExpectationMatch r;
    r.quantum = hs_inner(sigma.matrix(), a.matrix()).real();
    // Expand the pairing of rho_sigma with the quantized observable through
    // the two exact moments; no Monte Carlo enters here.
    const double pair = exact_integral_pair(sigma.matrix(), a.matrix()).real();
    const double tr_a = a.matrix().trace().real();
    const double tr_s = sigma.matrix().trace().real();
    r.classical_exact = q.kappa_prime() * q.kappa() * pair +
                        q.kappa_prime() * q.c_kappa() * tr_a * (tr_s / n) +
                        q.c_prime() * q.kappa() * (tr_a / n) + q.c_prime() * q.c_kappa() * tr_a;
    return r;
}

ComplexMatrix dequantize(const AffineObservable& f, double tol) {
    ComplexMatrix a = f.kernel();
    a *= Complex(1.0 / f.params().kappa());
    const Complex expected = f.params().c_kappa() * a.trace();
    if (std::abs(f.offset() - expected) > tol * std::max(1.0, max_abs(f.kernel())))
        throw ValidationError(
            "dequantize: observable is not in canonical operator form (offset mismatch)");
    return a;
}

ComplexMatrix dequantizer_kernel(const PurePoint& p, const QuantParams& q) {
    if (p.size() != q.dimension())
        throw DimensionError("dequantizer_kernel: point dimension mismatch");
    ComplexMatrix w = p.projector();
    w *= Complex(q.kappa_prime());
    for (std::size_t i = 0; i < w.size(); ++i) w(i, i) += q.c_prime();
    return w;
}

MatrixMcEstimate dequantize_blackbox(const std::function<Complex(const PurePoint&)>& f,
                                     const QuantParams& q, std::size_t n_samples,
                                     const SeededSampler& s) {
    if (n_samples == 0) throw ValidationError("dequantize_blackbox: need at least one sample");
    const std::size_t n = q.dimension();
    const std::size_t nn = n * n;
    std::vector<double> sum_re(nn, 0.0), sum_im(nn, 0.0), sq_re(nn, 0.0), sq_im(nn, 0.0);
    const double kp = q.kappa_prime();
    const double cp = q.c_prime();
    const std::size_t chunks = (n_samples + kMcChunk - 1) / kMcChunk;
    for (std::size_t c = 0; c < chunks; ++c) {
        SeededSampler cs = s.split(c);
        const std::size_t m = std::min(kMcChunk, n_samples - c * kMcChunk);
        std::vector<double> csum_re(nn, 0.0), csum_im(nn, 0.0), csq_re(nn, 0.0), csq_im(nn, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            const PurePoint p = sample_pure(cs, n);
            const Complex v = f(p);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NumericError(
                    "dequantize_blackbox: integrand returned a non-finite value at sample " +
                    std::to_string(c * kMcChunk + k));
            const std::vector<Complex>& psi = p.amplitudes();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Complex w = kp * psi[i] * std::conj(psi[j]);
                    if (i == j) w += cp;
                    const Complex t = v * w;
                    const std::size_t idx = i * n + j;
                    csum_re[idx] += t.real();
                    csum_im[idx] += t.imag();
                    csq_re[idx] += t.real() * t.real();
                    csq_im[idx] += t.imag() * t.imag();
                }
        }
        for (std::size_t idx = 0; idx < nn; ++idx) {
            sum_re[idx] += csum_re[idx];
            sum_im[idx] += csum_im[idx];
            sq_re[idx] += csq_re[idx];
            sq_im[idx] += csq_im[idx];
        }
    }
    const double nd = static_cast<double>(n_samples);
    MatrixMcEstimate e{ComplexMatrix(n), ComplexMatrix(n), n_samples};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t idx = i * n + j;
            const double mre = sum_re[idx] / nd;
            const double mim = sum_im[idx] / nd;
            e.mean(i, j) = Complex(mre, mim);
            if (n_samples > 1) {
                const double vre = std::max(0.0, (sq_re[idx] - nd * mre * mre) / (nd - 1.0));
                const double vim = std::max(0.0, (sq_im[idx] - nd * mim * mim) / (nd - 1.0));
                e.std_error(i, j) = Complex(std::sqrt(vre / nd), std::sqrt(vim / nd));
            }
        }
    return e;
}

FrameCheckResult frame_check(const std::function<double(const PurePoint&)>& f, std::size_t n,
                             std::size_t trials, const SeededSampler& s, double tol_frame) {
    if (trials == 0) throw ValidationError("frame_check: need at least one trial");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double mean = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        SeededSampler sub = s.split(t);
        const std::vector<PurePoint> basis = sample_basis(sub, n);
        double sum = 0.0;
        for (const PurePoint& p : basis) {
            const double v = f(p);
            if (!std::isfinite(v))
                throw NumericError("frame_check: function returned a non-finite value");
            sum += v;
        }
        lo = std::min(lo, sum);
        hi = std::max(hi, sum);
        mean += sum;
    }
    mean /= static_cast<double>(trials);
    return FrameCheckResult{hi - lo <= tol_frame, mean, hi - lo, trials};
}

GleasonFit gleason_fit(const std::vector<std::pair<PurePoint, Complex>>& samples, std::size_t n) {
    if (n == 0) throw DimensionError("gleason_fit: dimension must be positive");
    const std::size_t dim = n * n;
    if (samples.size() < dim)
        throw ValidationError("gleason_fit: need at least n^2 = " + std::to_string(dim) +
                              " samples, got " + std::to_string(samples.size()));
    bool real_data = true;
    for (const auto& [p, y] : samples) {
        if (p.size() != n) throw DimensionError("gleason_fit: sample point dimension mismatch");
        if (!std::isfinite(y.real()) || !std::isfinite(y.imag()))
            throw ValidationError("gleason_fit: non-finite sample value");
        if (std::abs(y.imag()) > 1e-9 * (1.0 + std::abs(y))) real_data = false;
    }

    GleasonFit out{ComplexMatrix(n), 0.0, {}};
    if (n == 2)
        out.warnings.push_back(
            "n = 2: frame data does not single out an operator; best-effort affine fit");

    if (real_data) {
        // Hermitian parametrization: diagonal E_ii, then (E_ij + E_ji) and
        // i(E_ij - E_ji) for i < j. Features are tr(p B_k), all real.
        ComplexMatrix g(dim);
        std::vector<Complex> rhs(dim, 0.0);
        std::vector<double> x(dim);
        for (const auto& [p, y] : samples) {
            const std::vector<Complex>& psi = p.amplitudes();
            std::size_t k = n;
            for (std::size_t i = 0; i < n; ++i) x[i] = std::norm(psi[i]);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const Complex pij = psi[i] * std::conj(psi[j]);
                    x[k++] = 2.0 * pij.real();
                    x[k++] = 2.0 * pij.imag();
                }
            for (std::size_t u = 0; u < dim; ++u) {
                rhs[u] += y.real() * x[u];
                for (std::size_t v = 0; v < dim; ++v) g(u, v) += x[u] * x[v];
            }
        }
        const std::vector<Complex> theta = solve_psd(g, rhs, "gleason_fit");
        std::size_t k = n;
        for (std::size_t i = 0; i < n; ++i) out.op(i, i) = theta[i].real();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const Complex a(theta[k].real(), theta[k + 1].real());
                k += 2;
                out.op(i, j) = a;
                out.op(j, i) = std::conj(a);
            }
    } else {
        // General complex kernel: unknown entries A_kl with features p_lk.
        ComplexMatrix g(dim);
        std::vector<Complex> rhs(dim, 0.0);
        std::vector<Complex> phi(dim);
        for (const auto& [p, y] : samples) {
            const std::vector<Complex>& psi = p.amplitudes();
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) phi[k * n + l] = psi[l] * std::conj(psi[k]);
            for (std::size_t u = 0; u < dim; ++u) {
                rhs[u] += std::conj(phi[u]) * y;
                for (std::size_t v = 0; v < dim; ++v) g(u, v) += std::conj(phi[u]) * phi[v];
            }
        }
        const std::vector<Complex> a = solve_psd(g, rhs, "gleason_fit");
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) out.op(k, l) = a[k * n + l];
    }

    double ss = 0.0;
    for (const auto& [p, y] : samples) ss += std::norm(y - p.expectation(out.op));
    out.residual = std::sqrt(ss / static_cast<double>(samples.size()));
    return out;
}

BoundsResult bounds(const HermitianOperator& a, const QuantParams& q) {
    if (a.size() != q.dimension())
        throw DimensionError("bounds: operator size does not match parameters");
    const EigenDecomposition d = eig_hermitian(a.matrix());
    const double lmin = d.values.front();
    const double lmax = d.values.back();
    const double tr = a.matrix().trace().real();
    const double n = static_cast<double>(q.dimension());
    const double c = q.c_kappa();
    BoundsResult r;
    r.min_f = lmin + c * (tr - n * lmin);
    r.max_f = lmax + c * (tr - n * lmax);
    r.o5_holds = q.kappa() <= 1.0;
    r.sup_norm = std::max(std::abs(r.min_f), std::abs(r.max_f));
    const double a_norm = std::max(std::abs(lmin), std::abs(lmax));
    if (q.kappa() <= 1.0)
        r.sup_bound = a_norm;
    else if (q.kappa() >= n + 1.0)
        r.sup_bound = (1.0 + 2.0 * n * std::abs(c)) * a_norm;
    else
        r.sup_bound = std::numeric_limits<double>::quiet_NaN();
    r.sup_bound_holds =
        std::isnan(r.sup_bound) || r.sup_norm <= r.sup_bound * (1.0 + 1e-12) + 1e-12;
    return r;
}

PositivityResult positivity_check(const QuantParams& q, std::size_t trials,
                                  const SeededSampler& s) {
    if (trials == 0) throw ValidationError("positivity_check: need at least one trial");
    const std::size_t n = q.dimension();
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        SeededSampler sub = s.split(t);
        const PurePoint p = sample_pure(sub, n);
        double tr_sp;
        if (t % 2 == 0) {
            // Pure states probe the extreme overlaps.
            const PurePoint sig = sample_pure(sub, n);
            tr_sp = std::norm(sig.overlap(p));
        } else {
            const DensityMatrix sig = random_state(sub, n);
            tr_sp = p.expectation(sig.matrix()).real();
        }
        worst = std::min(worst, q.kappa_prime() * tr_sp + q.c_prime());
    }
    PositivityResult r;
    r.always_nonneg = q.kappa() >= (static_cast<double>(n) + 1.0) * (1.0 - 1e-12);
    r.analytic_worst = q.c_prime();
    r.observed_worst = worst;
    r.negative_witness = worst < 0.0;
    r.trials = trials;
    return r;
}

CharacterizeResult characterize(const std::function<double(const PurePoint&)>& f,
                                const QuantParams& q, std::size_t trials,
                                std::size_t n_samples, const SeededSampler& s) {
    if (trials < 3) throw ValidationError("characterize: need at least 3 probe points");
    if (n_samples < 2) throw ValidationError("characterize: need at least 2 samples");
    const std::size_t n = q.dimension();

    SeededSampler probe_stream = s.split(0);
    std::vector<PurePoint> probes;
    probes.reserve(trials);
    std::vector<double> x(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        probes.push_back(sample_pure(probe_stream, n));
        x[i] = f(probes[i]);
        if (!std::isfinite(x[i]))
            throw NumericError("characterize: function returned a non-finite value");
    }

    // Common samples across probe points: the pairing I(p0) = mean over p of
    // rho_{p0}(p) f(p) reuses one f evaluation per sample for all probes.
    const SeededSampler data_base = s.split(1);
    std::vector<double> sum(trials, 0.0), sq(trials, 0.0);
    const double kp = q.kappa_prime();
    const double cp = q.c_prime();
    const std::size_t chunks = (n_samples + kMcChunk - 1) / kMcChunk;
    for (std::size_t c = 0; c < chunks; ++c) {
        SeededSampler cs = data_base.split(c);
        const std::size_t m = std::min(kMcChunk, n_samples - c * kMcChunk);
        for (std::size_t k = 0; k < m; ++k) {
            const PurePoint p = sample_pure(cs, n);
            const double fv = f(p);
            if (!std::isfinite(fv))
                throw NumericError("characterize: function returned a non-finite value at sample " +
                                   std::to_string(c * kMcChunk + k));
            for (std::size_t i = 0; i < trials; ++i) {
                const double ov = std::norm(probes[i].overlap(p));
                const double term = (kp * ov + cp) * fv;
                sum[i] += term;
                sq[i] += term * term;
            }
        }
    }

    const double nd = static_cast<double>(n_samples);
    std::vector<double> ival(trials), se(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        ival[i] = sum[i] / nd;
        const double var = std::max(0.0, (sq[i] - nd * ival[i] * ival[i]) / (nd - 1.0));
        se[i] = std::sqrt(var / nd);
    }

    double sx = 0.0, sxx = 0.0, sxy = 0.0, sy = 0.0, xscale = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        sx += x[i];
        sxx += x[i] * x[i];
        sxy += x[i] * ival[i];
        sy += ival[i];
        xscale = std::max(xscale, std::abs(x[i]));
    }
    const double td = static_cast<double>(trials);
    const double denom = td * sxx - sx * sx;
    if (denom <= 1e-20 * td * td * std::max(1.0, xscale * xscale))
        throw ValidationError("characterize: degenerate regression (function nearly constant "
                              "on the probe points)");
    CharacterizeResult r;
    r.a = (td * sxy - sx * sy) / denom;
    r.b = (sy - r.a * sx) / td;
    r.max_residual = 0.0;
    r.tolerance = 0.0;
    bool affine = true;
    for (std::size_t i = 0; i < trials; ++i) {
        const double resid = std::abs(ival[i] - (r.a * x[i] + r.b));
        const double tol_i = std::max(5.0 * se[i], 1e-10 * (1.0 + std::abs(ival[i])));
        r.max_residual = std::max(r.max_residual, resid);
        r.tolerance = std::max(r.tolerance, tol_i);
        if (resid > tol_i) affine = false;
    }
    r.is_quantum = affine && std::abs(r.a) > 1e-8;
    return r;
}

double covariance_check(const HermitianOperator& a, const QuantParams& q, std::size_t trials,
                        const SeededSampler& s) {
    if (a.size() != q.dimension()) throw DimensionError("covariance_check: dimension mismatch");
    const std::size_t n = q.dimension();
    const AffineObservable f = quantize_inverse(a, q);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        SeededSampler sub = s.split(t);
        const ComplexMatrix u = sample_unitary(sub, n);
        const PurePoint p = sample_pure(sub, n);
        const PurePoint up = PurePoint::normalized(matvec(u, p.amplitudes()));
        const double lhs = f.evaluate(up).real();
        const ComplexMatrix conjugated = matmul(matmul(u.adjoint(), a.matrix()), u);
        const double rhs =
            quantize_inverse(HermitianOperator(conjugated), q).evaluate(p).real();
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

ComplexMatrix reflection_unitary(const PurePoint& phi, const PurePoint& psi) {
    if (phi.size() != psi.size()) throw DimensionError("reflection_unitary: dimension mismatch");
    const std::size_t n = phi.size();
    const Complex a = phi.overlap(psi);
    std::vector<Complex> r = psi.amplitudes();
    for (std::size_t i = 0; i < n; ++i) r[i] -= a * phi.amplitudes()[i];
    const double b = vec_norm(r);
    if (b <= 1e-14) return ComplexMatrix::identity(n);  // same ray: identity works
    for (Complex& z : r) z /= b;

    // In the orthonormal pair (phi, r), psi = a phi + b r. The phase alpha
    // turns the target into (c, d) with c = |a| >= 0, giving the involutive
    // block [[c, conj(d)], [d, -c]].
    const Complex alpha = std::abs(a) > 0.0 ? std::conj(a) / std::abs(a) : Complex(1.0);
    const double c = std::abs(a);
    const Complex d = alpha * b;
    ComplexMatrix u = ComplexMatrix::identity(n);
    const std::vector<Complex>& e1 = phi.amplitudes();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            u(i, j) += (c - 1.0) * e1[i] * std::conj(e1[j]) + d * r[i] * std::conj(e1[j]) +
                       std::conj(d) * e1[i] * std::conj(r[j]) - (c + 1.0) * r[i] * std::conj(r[j]);
    return u;
}

}  // namespace projqm
