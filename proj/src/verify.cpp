#include "projqm/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "projqm/algebra.hpp"
#include "projqm/dynamics.hpp"
#include "projqm/errors.hpp"
#include "projqm/maps.hpp"
#include "projqm/measures.hpp"

namespace projqm {

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::info: return "info";
        case CheckStatus::skip: return "skip";
    }
    return "?";
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

struct Harness {
    std::vector<CheckResult> out;

    void gate(const std::string& id, const std::string& desc, double viol, double thresh,
              std::string note = "") {
        const bool ok = std::isfinite(viol) && viol <= thresh;
        out.push_back(
            {id, desc, viol, thresh, ok ? CheckStatus::pass : CheckStatus::fail, std::move(note)});
    }

    void flag(const std::string& id, const std::string& desc, bool ok, std::string note = "") {
        out.push_back({id, desc, ok ? 0.0 : 1.0, 0.0,
                       ok ? CheckStatus::pass : CheckStatus::fail, std::move(note)});
    }

    // Runs a block; an exception becomes a failed check instead of ending the suite.
    template <class F>
    void block(const char* id, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            out.push_back({id, "check aborted by exception",
                           std::numeric_limits<double>::quiet_NaN(), 0.0, CheckStatus::fail,
                           e.what()});
        }
    }
};

double offset_delta(const AffineObservable& f, const AffineObservable& g) {
    return hs_distance(f.kernel(), g.kernel()) + std::abs(f.offset() - g.offset());
}

}  // namespace

VerifyReport run_verify(const VerifyConfig& cfg) {
    if (cfg.n < 2) throw ValidationError("verify: dimension must be at least 2");
    const QuantParams q(cfg.n, cfg.kappa);
    const std::size_t n = cfg.n;
    const double nd = static_cast<double>(n);
    SeededSampler root(cfg.seed);
    Harness h;
    const std::size_t draws = 20;

    // --- parameter layer ---------------------------------------------------
    h.block("parameter-defining-identities", [&] {
        double viol = 0.0;
        for (double kap : {cfg.kappa, 1.0, nd + 1.0, 2.0 * (nd + 1.0)}) {
            const QuantParams qq(n, kap);
            viol = std::max(viol, std::abs(qq.kappa() + nd * qq.c_kappa() - 1.0));
            viol = std::max(viol, std::abs(qq.kappa_prime() + nd * qq.c_prime() - nd));
        }
        h.gate("parameter-defining-identities",
               "derived constants satisfy kappa + n c_kappa = 1 and kappa' + n c' = n", viol,
               1e-14);
    });

    // --- linear algebra core -----------------------------------------------
    h.block("eigensolver-reconstruction", [&] {
        SeededSampler s = root.split(101);
        double viol = 0.0;
        for (std::size_t t = 0; t < 5; ++t) {
            const ComplexMatrix a = random_hermitian(s, n);
            const EigenDecomposition d = eig_hermitian(a);
            ComplexMatrix rec(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Complex v = 0.0;
                    for (std::size_t e = 0; e < n; ++e)
                        v += d.vectors(i, e) * d.values[e] * std::conj(d.vectors(j, e));
                    rec(i, j) = v;
                }
            const double scale = std::max(1.0, hs_norm(a));
            viol = std::max(viol, hs_distance(rec, a) / scale);
            const ComplexMatrix gram = matmul(d.vectors.adjoint(), d.vectors);
            viol = std::max(viol, hs_distance(gram, ComplexMatrix::identity(n)));
            for (std::size_t e = 0; e + 1 < n; ++e)
                if (d.values[e] > d.values[e + 1]) viol = std::max(viol, 1.0);
        }
        h.gate("eigensolver-reconstruction",
               "Jacobi eigensolver: A = V diag(w) V*, V orthonormal, w ascending", viol, 1e-12);
    });

    h.block("propagator-unitarity", [&] {
        SeededSampler s = root.split(102);
        const ComplexMatrix hm = random_hermitian(s, n);
        const ComplexMatrix u = expm_unitary(hm, 0.73);
        const ComplexMatrix v = expm_unitary(hm, -0.73);
        double viol = hs_distance(matmul(u.adjoint(), u), ComplexMatrix::identity(n));
        viol = std::max(viol, hs_distance(matmul(u, v), ComplexMatrix::identity(n)));
        h.gate("propagator-unitarity", "exp(-itH) is unitary with inverse exp(+itH)", viol,
               1e-12);
    });

    // --- geometry of the pure-state manifold --------------------------------
    h.block("geometry-pairings", [&] {
        SeededSampler s = root.split(103);
        double v_herm = 0.0, v_tan = 0.0, v_invol = 0.0, v_gsym = 0.0, v_wasym = 0.0;
        double v_wgj = 0.0, v_gjj = 0.0, v_wjj = 0.0, v_wjg = 0.0, v_cert = 0.0, v_pair = 0.0;
        double min_g = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < draws; ++t) {
            const PurePoint p = sample_pure(s, n);
            const HermitianOperator a(random_hermitian(s, n));
            const HermitianOperator b(random_hermitian(s, n));
            const TangentVector u = tangent(p, a);
            const TangentVector v = tangent(p, b);
            const ComplexMatrix pm = p.projector();

            v_herm = std::max(v_herm,
                              std::max(u.matrix().herm_residual(), std::abs(u.matrix().trace())));
            const ComplexMatrix pv = matmul(pm, u.matrix()) + matmul(u.matrix(), pm);
            v_tan = std::max(v_tan, hs_distance(pv, u.matrix()));

            const TangentVector ju = acs(u);
            const TangentVector jv = acs(v);
            const TangentVector jju = acs(ju);
            v_invol = std::max(v_invol, hs_norm(jju.matrix() + u.matrix()));

            const double guv = fs_metric(u, v, cfg.kappa);
            const double guu = fs_metric(u, u, cfg.kappa);
            min_g = std::min(min_g, guu);
            v_gsym = std::max(v_gsym, std::abs(guv - fs_metric(v, u, cfg.kappa)));
            const double wuv = omega(u, v, cfg.kappa);
            v_wasym = std::max(v_wasym, std::abs(wuv + omega(v, u, cfg.kappa)));
            v_wgj = std::max(v_wgj, std::abs(wuv - fs_metric(ju, v, cfg.kappa)));
            v_gjj = std::max(v_gjj, std::abs(fs_metric(ju, jv, cfg.kappa) - guv));
            v_wjj = std::max(v_wjj, std::abs(omega(ju, jv, cfg.kappa) - wuv));
            v_wjg = std::max(v_wjg, std::abs(omega(u, jv, cfg.kappa) - guv));
            v_cert = std::max(v_cert, std::abs(omega(u, ju, cfg.kappa) - guu));

            const AffineObservable fa = quantize_inverse(a, q);
            const AffineObservable fb = quantize_inverse(b, q);
            v_pair = std::max(v_pair, std::abs(wuv - poisson(fa, fb).evaluate(p).real()));
        }
        const std::string nn = std::to_string(draws) + " random (point, generator) draws";
        h.gate("tangent-hermitian-traceless",
               "tangent representatives -i[A,p] are Hermitian and traceless", v_herm, cfg.tol,
               nn);
        h.gate("tangent-space-membership", "tangent representatives satisfy pv + vp = v", v_tan,
               cfg.tol, nn);
        h.gate("complex-structure-involution", "j(j(v)) = -v on tangent vectors", v_invol,
               cfg.tol, nn);
        h.gate("metric-symmetry", "g(u,v) = g(v,u)", v_gsym, cfg.tol, nn);
        h.gate("metric-positivity", "g(u,u) > 0 for nonzero tangent vectors",
               std::max(0.0, -min_g), 0.0, "min g(u,u) = " + fmt(min_g));
        h.gate("symplectic-antisymmetry", "omega(u,v) = -omega(v,u)", v_wasym, cfg.tol, nn);
        h.gate("omega-g-j-compatibility", "omega(u,v) = g(ju, v)", v_wgj, cfg.tol, nn);
        h.gate("metric-j-invariance", "g(ju, jv) = g(u,v)", v_gjj, cfg.tol, nn);
        h.gate("symplectic-j-invariance", "omega(ju, jv) = omega(u,v)", v_wjj, cfg.tol, nn);
        h.gate("omega-j-metric-duality", "omega(u, jv) = g(u,v)", v_wjg, cfg.tol, nn);
        h.gate("nondegeneracy-certificate", "omega(u, ju) = g(u,u) > 0, so omega is nondegenerate",
               v_cert, cfg.tol, nn);
        h.gate("hamiltonian-field-pairing",
               "omega of two Hamiltonian fields equals the Poisson bracket value", v_pair,
               cfg.tol, nn);
    });

    // --- quantization dictionary --------------------------------------------
    h.block("quantization-dictionary", [&] {
        SeededSampler s = root.split(104);
        double v_lin = 0.0, v_poi = 0.0, v_rt = 0.0, v_dual = 0.0, v_exp = 0.0, v_den = 0.0;
        double v_fw = 0.0;
        for (std::size_t t = 0; t < draws; ++t) {
            const HermitianOperator a(random_hermitian(s, n));
            const HermitianOperator b(random_hermitian(s, n));
            const double al = 2.0 * s.next_uniform() - 1.0;
            const double be = 2.0 * s.next_uniform() - 1.0;

            ComplexMatrix comb = a.matrix();
            comb *= Complex(al);
            ComplexMatrix tmp = b.matrix();
            tmp *= Complex(be);
            comb += tmp;
            AffineObservable lhs = quantize_inverse(HermitianOperator(comb), q);
            AffineObservable rhs = quantize_inverse(a, q);
            rhs *= Complex(al);
            AffineObservable fb2 = quantize_inverse(b, q);
            fb2 *= Complex(be);
            rhs += fb2;
            v_lin = std::max(v_lin, offset_delta(lhs, rhs));

            const AffineObservable fa = quantize_inverse(a, q);
            const AffineObservable fb = quantize_inverse(b, q);
            ComplexMatrix cm = commutator(a.matrix(), b.matrix());
            cm *= Complex(0.0, -1.0);
            v_poi = std::max(
                v_poi, offset_delta(poisson(fa, fb), quantize_inverse(HermitianOperator(cm), q)));

            v_rt = std::max(v_rt, hs_distance(dequantize(fa), a.matrix()));

            const DensityMatrix sigma = random_state(s, n);
            const PurePoint p = sample_pure(s, n);
            const LiouvilleDensity rho = state_to_density(sigma, q);
            const double direct = rho.evaluate(p);
            const double via_kernel = hs_inner(sigma.matrix(), dequantizer_kernel(p, q)).real();
            v_dual = std::max(v_dual, std::abs(direct - via_kernel));

            const ExpectationMatch em = expectation_match(sigma, a, q);
            v_exp = std::max(v_exp, std::abs(em.quantum - em.classical_exact));
            v_den = std::max(v_den, std::abs(integral_mean(rho.observable()).real() - 1.0));
            v_fw = std::max(v_fw,
                            std::abs(rho.observable().frame_weight().real() - nd));
        }
        const std::string nn = std::to_string(draws) + " random draws, kappa = " + fmt(cfg.kappa);
        h.gate("quantize-linearity", "operator -> observable map is real-linear", v_lin, cfg.tol,
               nn);
        h.gate("poisson-bracket-homomorphism",
               "Poisson bracket of images equals image of -i[A,B]", v_poi, cfg.tol, nn);
        h.gate("dequantize-roundtrip", "dequantize(quantize(A)) = A", v_rt, cfg.tol, nn);
        h.gate("dequantizer-duality",
               "rho_sigma(p) = tr(sigma Omega(p)) for the sampling kernel Omega", v_dual, cfg.tol,
               nn);
        h.gate("expectation-pairing",
               "tr(sigma A) equals the exact phase-space pairing of density and observable",
               v_exp, cfg.tol, nn);
        h.gate("density-normalization", "densities of states integrate to 1 exactly", v_den,
               cfg.tol, nn);
        h.gate("density-frame-sum", "density values over an orthonormal basis sum to n", v_fw,
               cfg.tol, nn);

        const AffineObservable one = AffineObservable::constant(1.0, q);
        const AffineObservable img =
            quantize_inverse(HermitianOperator(ComplexMatrix::identity(n)), q);
        double v_unit = offset_delta(one, img);
        SeededSampler su = root.split(105);
        for (std::size_t t = 0; t < 5; ++t)
            v_unit = std::max(v_unit, std::abs(img.evaluate(sample_pure(su, n)) - 1.0));
        h.gate("quantize-unit", "the identity operator maps to the constant function 1", v_unit,
               cfg.tol);
    });

    h.block("unitary-covariance", [&] {
        SeededSampler s = root.split(106);
        const HermitianOperator a(random_hermitian(s, n));
        const double viol = covariance_check(a, q, draws, s.split(9999));
        h.gate("unitary-covariance", "observable of A at U p U* equals observable of U*AU at p",
               viol, 1e-11, std::to_string(draws) + " random unitaries");
    });

    h.block("observable-frame-sum", [&] {
        SeededSampler s = root.split(107);
        const HermitianOperator a(random_hermitian(s, n));
        const AffineObservable fa = quantize_inverse(a, q);
        const double tr_a = a.matrix().trace().real();
        const FrameCheckResult fr = frame_check(
            [&](const PurePoint& p) { return fa.evaluate(p).real(); }, n, 10, s.split(1), 1e-8);
        const double viol = std::max(fr.spread, std::abs(fr.weight_estimate - tr_a));
        h.gate("observable-frame-sum",
               "basis sums of a quantized observable equal tr(A), independent of basis", viol,
               1e-8, "10 random orthonormal bases");
    });

    // --- invariant measure and moments ---------------------------------------
    h.block("moment-mean-montecarlo", [&] {
        SeededSampler s = root.split(108);
        const ComplexMatrix a = random_hermitian(s, n);
        const McEstimate est = mc_integrate(
            [&](const PurePoint& p) { return p.expectation(a); }, cfg.samples, s.split(1), n);
        const double dev = std::abs(est.mean - exact_integral(a));
        const double z = dev / std::max(est.std_error, 1e-300);
        h.gate("moment-mean-montecarlo",
               "Monte Carlo mean of tr(pA) matches tr(A)/n within 5 standard errors", z, 5.0,
               fmt(static_cast<double>(cfg.samples)) + " samples, |dev| = " + fmt(dev));
    });

    h.block("moment-pair-montecarlo", [&] {
        SeededSampler s = root.split(109);
        const ComplexMatrix a = random_hermitian(s, n);
        const ComplexMatrix b = random_hermitian(s, n);
        const McEstimate est = mc_integrate(
            [&](const PurePoint& p) {
                return std::conj(p.expectation(a)) * p.expectation(b);
            },
            cfg.samples, s.split(1), n);
        const double dev = std::abs(est.mean - exact_integral_pair(a, b));
        const double z = dev / std::max(est.std_error, 1e-300);
        h.gate("moment-pair-montecarlo",
               "Monte Carlo pair moment matches (tr(A*B) + tr(A*)tr(B))/(n(n+1)) within 5 sigma",
               z, 5.0, fmt(static_cast<double>(cfg.samples)) + " samples, |dev| = " + fmt(dev));
    });

    h.block("hs-inversion-exact", [&] {
        SeededSampler s = root.split(110);
        double viol = 0.0;
        for (std::size_t t = 0; t < draws; ++t) {
            const ComplexMatrix a = random_hermitian(s, n);
            const ComplexMatrix b = random_hermitian(s, n);
            const Complex rec = hs_from_integrals(n, exact_integral_pair(a, b),
                                                  std::conj(exact_integral(a)), exact_integral(b));
            viol = std::max(viol, std::abs(rec - hs_inner(a, b)));
        }
        h.gate("hs-inversion-exact",
               "Hilbert-Schmidt pairing is recovered from the first two exact moments", viol,
               1e-10, std::to_string(draws) + " operator pairs");
    });

    h.block("montecarlo-determinism", [&] {
        SeededSampler s = root.split(111);
        const ComplexMatrix a = random_hermitian(s, n);
        auto f = [&](const PurePoint& p) { return p.expectation(a); };
        const McEstimate e1 = mc_integrate(f, 5000, s.split(7), n);
        const McEstimate e2 = mc_integrate(f, 5000, s.split(7), n);
        h.flag("montecarlo-determinism",
               "repeated integration from the same stream is bit-identical",
               e1.mean == e2.mean && e1.std_error == e2.std_error);
    });

    // --- reconstruction and statistical maps ---------------------------------
    h.block("blackbox-dequantization", [&] {
        SeededSampler s = root.split(112);
        const HermitianOperator a(random_hermitian(s, n));
        const AffineObservable fa = quantize_inverse(a, q);
        const MatrixMcEstimate est = dequantize_blackbox(
            [&](const PurePoint& p) { return fa.evaluate(p); }, q, cfg.samples, s.split(1));
        double z = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const Complex dev = est.mean(i, j) - a.matrix()(i, j);
                z = std::max(z, std::abs(dev.real()) /
                                    std::max(est.std_error(i, j).real(), 1e-300));
                z = std::max(z, std::abs(dev.imag()) /
                                    std::max(est.std_error(i, j).imag(), 1e-300));
            }
        h.gate("blackbox-dequantization",
               "averaging f(p) Omega(p) over the measure recovers A entrywise within 5 sigma", z,
               5.0, fmt(static_cast<double>(cfg.samples)) + " samples");
    });

    h.block("gleason-reconstruction", [&] {
        const std::size_t ng = std::max<std::size_t>(n, 3);
        SeededSampler s = root.split(113);
        const ComplexMatrix a = random_hermitian(s, ng);
        std::vector<std::pair<PurePoint, Complex>> data;
        for (std::size_t t = 0; t < 50; ++t) {
            const PurePoint p = sample_pure(s, ng);
            data.emplace_back(p, p.expectation(a));
        }
        const GleasonFit fit = gleason_fit(data, ng);
        h.gate("gleason-reconstruction",
               "least squares on 50 exact frame values recovers the operator",
               hs_distance(fit.op, a), 1e-10, "dimension " + std::to_string(ng));
    });

    h.block("characterize-accepts-quantum", [&] {
        SeededSampler s = root.split(114);
        const HermitianOperator a(random_hermitian(s, n));
        const AffineObservable fa = quantize_inverse(a, q);
        const CharacterizeResult r = characterize(
            [&](const PurePoint& p) { return fa.evaluate(p).real(); }, q, 12, 32768, s.split(1));
        h.flag("characterize-accepts-quantum",
               "state-density pairing of a quantized observable is affine in its value",
               r.is_quantum,
               "slope " + fmt(r.a) + ", residual " + fmt(r.max_residual) + " <= " +
                   fmt(r.tolerance));
    });

    h.block("characterize-rejects-cubic", [&] {
        SeededSampler s = root.split(115);
        const ComplexMatrix a = random_hermitian(s, n);
        const CharacterizeResult r = characterize(
            [&](const PurePoint& p) {
                const double x = p.expectation(a).real();
                return x * x * x;
            },
            q, 12, 32768, s.split(1));
        h.flag("characterize-rejects-cubic",
               "a cubic function of tr(pA) is flagged as not coming from an operator",
               !r.is_quantum, "residual " + fmt(r.max_residual) + " vs " + fmt(r.tolerance));
    });

    h.block("bounds-exact-attainment", [&] {
        SeededSampler s = root.split(116);
        double viol = 0.0, scan_viol = 0.0;
        for (std::size_t t = 0; t < 5; ++t) {
            const HermitianOperator a(random_hermitian(s, n));
            const AffineObservable fa = quantize_inverse(a, q);
            const BoundsResult br = bounds(a, q);
            const EigenDecomposition d = eig_hermitian(a.matrix());
            std::vector<Complex> lo(n), hi(n);
            for (std::size_t i = 0; i < n; ++i) {
                lo[i] = d.vectors(i, 0);
                hi[i] = d.vectors(i, n - 1);
            }
            viol = std::max(viol,
                            std::abs(fa.evaluate(PurePoint::normalized(lo)).real() - br.min_f));
            viol = std::max(viol,
                            std::abs(fa.evaluate(PurePoint::normalized(hi)).real() - br.max_f));
            SeededSampler sp = s.split(t);
            for (std::size_t k = 0; k < 400; ++k) {
                const double v = fa.evaluate(sample_pure(sp, n)).real();
                scan_viol = std::max(scan_viol, std::max(br.min_f - v, v - br.max_f));
            }
        }
        h.gate("bounds-exact-attainment",
               "spectral range bounds are attained at extremal eigenvectors", viol, cfg.tol);
        h.gate("bounds-contain-scan", "random observable values stay inside the exact bounds",
               std::max(0.0, scan_viol), cfg.tol, "5 operators x 400 points");
    });

    h.block("positivity-regimes", [&] {
        SeededSampler s = root.split(117);
        double worst_above = 0.0;
        bool classified = true;
        for (double kap : {nd + 1.0, 2.0 * (nd + 1.0)}) {
            const PositivityResult r = positivity_check(QuantParams(n, kap), 2000, s.split(77));
            worst_above = std::min(worst_above, r.observed_worst);
            classified = classified && r.always_nonneg && !r.negative_witness;
        }
        h.gate("positivity-above-threshold",
               "state densities stay nonnegative once kappa reaches n + 1",
               classified ? std::max(0.0, -worst_above) : 1.0, 1e-12,
               "kappa in {n+1, 2(n+1)}, 2000 (state, point) pairs each");

        bool witness = true;
        double analytic = 0.0;
        for (double kap : {1.0, nd}) {
            const PositivityResult r = positivity_check(QuantParams(n, kap), 2000, s.split(78));
            witness = witness && r.negative_witness && !r.always_nonneg;
            analytic = std::min(analytic, r.analytic_worst);
        }
        h.flag("positivity-witness-below-threshold",
               "below kappa = n + 1 the scan exhibits a strictly negative density value", witness,
               "analytic infimum c' = " + fmt(analytic));
    });

    h.block("reflection-map-properties", [&] {
        SeededSampler s = root.split(118);
        double viol = 0.0;
        for (std::size_t t = 0; t < draws; ++t) {
            const PurePoint phi = sample_pure(s, n);
            const PurePoint psi = sample_pure(s, n);
            const ComplexMatrix u = reflection_unitary(phi, psi);
            viol = std::max(viol, hs_distance(matmul(u.adjoint(), u), ComplexMatrix::identity(n)));
            viol = std::max(viol, u.herm_residual());
            viol = std::max(viol, hs_distance(matmul(u, u), ComplexMatrix::identity(n)));
            const PurePoint moved = PurePoint::normalized(matvec(u, phi.amplitudes()));
            // Ray equality via the overlap deficiency; the projector distance
            // itself has a sqrt(eps) floor.
            viol = std::max(viol, std::abs(1.0 - std::norm(moved.overlap(psi))));
        }
        h.gate("reflection-map-properties",
               "point swap is realized by a self-adjoint involutive unitary", viol, 1e-10,
               std::to_string(draws) + " random ray pairs");
    });

    // --- dynamics -------------------------------------------------------------
    h.block("flow-matches-exact", [&] {
        SeededSampler s = root.split(119);
        const HermitianOperator hm(random_hermitian(s, n));
        const PurePoint p0 = sample_pure(s, n);
        FlowConfig fc;
        fc.dt = 1e-3;
        fc.t_final = 0.5;
        const std::vector<FlowSample> traj = evolve_flow(p0, hm, fc);
        const PurePoint exact = evolve_exact(p0, hm, fc.t_final);
        h.gate("flow-matches-exact",
               "RK4 projector flow lands on the exact propagated state",
               traj.back().point.distance2(exact), 1e-6, "t = 0.5, dt = 1e-3");

        const AffineObservable fh = quantize_inverse(hm, q);
        const double e0 = fh.evaluate(p0).real();
        double drift = 0.0;
        for (const FlowSample& fs : traj)
            drift = std::max(drift, std::abs(fh.evaluate(fs.point).real() - e0));
        h.gate("flow-energy-conservation",
               "the generator's observable is constant along its own flow", drift, 1e-8);
    });

    h.block("heisenberg-duality", [&] {
        SeededSampler s = root.split(120);
        const HermitianOperator hm(random_hermitian(s, n));
        const HermitianOperator a(random_hermitian(s, n));
        const PurePoint p0 = sample_pure(s, n);
        const double t = 0.7;
        const PurePoint pt = evolve_exact(p0, hm, t);
        const AffineObservable fa = quantize_inverse(a, q);
        const AffineObservable fat =
            quantize_inverse(HermitianOperator(heisenberg(a, hm, t)), q);
        h.gate("heisenberg-duality",
               "time-shifted observable at p equals observable at the flowed point",
               std::abs(fat.evaluate(p0).real() - fa.evaluate(pt).real()), 1e-9, "t = 0.7");
    });

    h.block("flow-isometry", [&] {
        SeededSampler s = root.split(121);
        const HermitianOperator hm(random_hermitian(s, n));
        const PurePoint p0 = sample_pure(s, n);
        std::vector<HermitianOperator> gens;
        for (int k = 0; k < 3; ++k) gens.emplace_back(random_hermitian(s, n));
        const KillingCheck kc = killing_check(p0, gens, hm, 0.7, cfg.kappa);
        h.gate("flow-isometry",
               "the flow preserves metric and symplectic pairings of pushed tangents",
               std::max(kc.max_metric_deviation, kc.max_symplectic_deviation), 1e-10,
               "3 generators, t = 0.7");
    });

    // --- operator algebra on observables --------------------------------------
    h.block("star-products", [&] {
        SeededSampler s = root.split(122);
        double v_geo = 0.0, v_assoc = 0.0, v_unit = 0.0, v_decomp = 0.0;
        for (std::size_t t = 0; t < 10; ++t) {
            const AffineObservable f = quantize_inverse(HermitianOperator(random_hermitian(s, n)), q);
            const AffineObservable g = quantize_inverse(HermitianOperator(random_hermitian(s, n)), q);
            const AffineObservable gh =
                quantize_inverse(HermitianOperator(random_hermitian(s, n)), q);

            const AffineObservable fg = star_operator(f, g);
            for (std::size_t k = 0; k < 5; ++k) {
                const PurePoint p = sample_pure(s, n);
                v_geo = std::max(v_geo, std::abs(fg.evaluate(p) - star_geometric(f, g, p)));
            }
            v_assoc = std::max(v_assoc, offset_delta(star_operator(fg, gh),
                                                     star_operator(f, star_operator(g, gh))));
            const AffineObservable one = AffineObservable::constant(1.0, q);
            v_unit = std::max(v_unit, offset_delta(star_operator(one, f), f));
            v_unit = std::max(v_unit, offset_delta(star_operator(f, one), f));

            AffineObservable dec = lie(f, g);
            dec *= Complex(0.0, 0.5);
            dec += jordan(f, g);
            v_decomp = std::max(v_decomp, offset_delta(fg, dec));
        }
        h.gate("star-operator-vs-geometric",
               "operator-transported product agrees with the geometric formula pointwise", v_geo,
               cfg.tol, "10 pairs x 5 points");
        h.gate("star-associativity", "the transported product is associative", v_assoc, 1e-10);
        h.gate("star-unit", "the constant 1 is a two-sided unit for the product", v_unit,
               cfg.tol);
        h.gate("star-jordan-lie-decomposition",
               "star = jordan part + (i/2) lie part", v_decomp, cfg.tol);
    });

    h.block("cstar-norm", [&] {
        SeededSampler s = root.split(123);
        double v_id = 0.0, v_sup = 0.0;
        for (std::size_t t = 0; t < 5; ++t) {
            ComplexMatrix k(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) k(i, j) = s.next_complex_gaussian();
            const AffineObservable f(k, Complex(0.3, -0.1), q);
            const double nf = cstar_norm(f);
            const double nff = cstar_norm(star_operator(f.conj(), f));
            v_id = std::max(v_id, std::abs(nff - nf * nf) / std::max(1.0, nf * nf));

            const HermitianOperator a(random_hermitian(s, n));
            const AffineObservable fr = quantize_inverse(a, q);
            const double m = integral_mean(fr).real();
            const BoundsResult br = bounds(a, q);
            const double sup = std::max(std::abs(br.min_f - (1.0 - cfg.kappa) * m),
                                        std::abs(br.max_f - (1.0 - cfg.kappa) * m)) /
                               cfg.kappa;
            v_sup = std::max(v_sup, std::abs(cstar_norm(fr) - sup));
        }
        h.gate("cstar-norm-identity", "norm(conj(f) star f) = norm(f)^2", v_id, 1e-10,
               "5 complex observables");
        h.gate("cstar-norm-sup-formula",
               "operator norm equals sup_p |f - (1-kappa) mean(f)| / kappa for real f", v_sup,
               1e-10);
    });

    h.block("variance-identity-kappa-one", [&] {
        const QuantParams q1(n, 1.0);
        SeededSampler s = root.split(124);
        double viol = 0.0;
        for (std::size_t t = 0; t < draws; ++t) {
            const HermitianOperator a(random_hermitian(s, n));
            const PurePoint p = sample_pure(s, n);
            const AffineObservable fa = quantize_inverse(a, q1);
            const double lhs = 0.5 * cometric(fa, fa, p);
            const double ea = p.expectation(a.matrix()).real();
            const double ea2 = p.expectation(matmul(a.matrix(), a.matrix())).real();
            viol = std::max(viol, std::abs(lhs - (ea2 - ea * ea)));
        }
        h.gate("variance-identity-kappa-one",
               "at kappa = 1, half the cometric square equals the quantum variance", viol,
               cfg.tol, std::to_string(draws) + " draws");
    });

    VerifyReport report;
    report.config = cfg;
    report.checks = std::move(h.out);
    report.all_passed = true;
    for (const CheckResult& c : report.checks)
        if (c.status == CheckStatus::fail) report.all_passed = false;
    return report;
}

}  // namespace projqm
