// Acceptance gate. Nine end-to-end criteria, each printing one line:
//   [PASS] criterion k: <statement> (<evidence>; <elapsed>s)
// Run bare for all nine, or pass criterion numbers as arguments. The exit
// code is the number of failed criteria. Every tolerance is pinned below;
// none are read from the environment.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "projqm/algebra.hpp"
#include "projqm/dynamics.hpp"
#include "projqm/geometry.hpp"
#include "projqm/maps.hpp"
#include "projqm/measures.hpp"

using namespace projqm;

namespace {

// ---- pinned tolerances and workloads ----------------------------------
constexpr std::size_t kMcSamples = 100000;   // Monte Carlo samples per estimate
constexpr double kSigmaGate = 4.0;           // statistical gate in standard errors
constexpr int kPairsPerDim = 20;             // operator pairs per dimension, criterion 1
constexpr int kPairHitsRequired = 19;        // of kPairsPerDim
constexpr double kInversionTol = 1e-12;      // moment-inversion identity
constexpr double kTimeLimitMoments = 30.0;   // seconds, criterion 1
constexpr double kFlowTol = 1e-6;            // end-state error at dt = 1e-3
constexpr double kFlowOrderFactor = 15.0;    // error reduction when dt is halved
constexpr double kFlowErrFloor = 1e-13;      // below this the ratio is rounding noise
constexpr double kTimeLimitFlow = 10.0;      // seconds, criterion 2
constexpr double kAlgebraTol = 1e-10;        // bracket/product/norm identities
constexpr double kPairingTol = 1e-12;        // expectation pairing and normalization
constexpr double kPositivityFloor = -1e-12;  // admissible numerical undershoot
constexpr std::size_t kPositivityTrials = 10000;
constexpr double kBoundSlack = 0.05;         // sampled extremum within 5% of the range
constexpr std::size_t kScanSamples = 100000;
constexpr double kAttainTol = 1e-10;         // bound attained at the extremal ray
constexpr double kRecoveryTol = 1e-10;       // operator recovery from 50 samples
constexpr double kCounterexampleResidual = 0.01;  // two-level frame function misfit
constexpr double kFrameSumTol = 1e-10;
constexpr int kFrameBases = 100;
constexpr double kSymmetryTol = 1e-11;       // covariance and isometry deviations
constexpr int kSymmetryDraws = 100;

struct Outcome {
    bool pass;
    std::string details;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

// 1. The closed-form first and second moments of p -> tr(pA) agree with
//    Monte Carlo over the invariant measure, and the inversion back to the
//    Hilbert-Schmidt pairing is exact.
Outcome criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    SeededSampler root(1001);
    int worst_hits = kPairsPerDim;
    double worst_inversion = 0.0;
    for (std::size_t n : {3, 4, 5}) {
        SeededSampler dim = root.split(n);
        int hits = 0;
        for (int pair = 0; pair < kPairsPerDim; ++pair) {
            SeededSampler ps = dim.split(static_cast<std::uint64_t>(pair));
            const ComplexMatrix a = random_hermitian(ps, n);
            const ComplexMatrix b = random_hermitian(ps, n);
            const Complex exact = exact_integral_pair(a, b);
            const McEstimate est = mc_integrate(
                [&](const PurePoint& p) {
                    return std::conj(p.expectation(a)) * p.expectation(b);
                },
                kMcSamples, ps.split(7), n);
            if (std::abs(est.mean - exact) <= kSigmaGate * est.std_error) ++hits;

            const Complex direct = hs_inner(a, b);
            const Complex inverted = hs_from_integrals(
                n, exact, std::conj(exact_integral(a)), exact_integral(b));
            worst_inversion =
                std::max(worst_inversion,
                         std::abs(direct - inverted) / std::max(1.0, std::abs(direct)));
        }
        worst_hits = std::min(worst_hits, hits);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = worst_hits >= kPairHitsRequired && worst_inversion <= kInversionTol &&
                      secs <= kTimeLimitMoments;
    std::ostringstream d;
    d << "worst " << worst_hits << "/" << kPairsPerDim << " pairs within " << kSigmaGate
      << " sigma, inversion residual " << fmt(worst_inversion);
    return {pass, d.str()};
}

// 2. The integrated flow matches the spectral propagator at dt = 1e-3 and
//    gains at least a factor kFlowOrderFactor when the step is halved.
Outcome criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    SeededSampler root(2002);
    const std::size_t n = 4;
    double worst_err = 0.0, worst_ratio = 1e300;
    for (int trial = 0; trial < 5; ++trial) {
        SeededSampler ts = root.split(static_cast<std::uint64_t>(trial));
        const HermitianOperator h(random_hermitian(ts, n));
        const PurePoint psi0 = sample_pure(ts, n);
        const PurePoint exact = evolve_exact(psi0, h, 1.0);

        auto err_at = [&](double dt) {
            FlowConfig cfg;
            cfg.dt = dt;
            cfg.t_final = 1.0;
            cfg.stride = 1000000;  // endpoint only
            return hs_distance(evolve_flow(psi0, h, cfg).back().point.projector(),
                               exact.projector());
        };
        const double e_coarse = err_at(1e-3);
        const double e_fine = err_at(5e-4);
        worst_err = std::max(worst_err, e_coarse);
        if (e_fine > kFlowErrFloor)
            worst_ratio = std::min(worst_ratio, e_coarse / e_fine);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass =
        worst_err <= kFlowTol && worst_ratio >= kFlowOrderFactor && secs <= kTimeLimitFlow;
    std::ostringstream d;
    d << "max end error " << fmt(worst_err) << ", min halving gain " << fmt(worst_ratio) << "x";
    return {pass, d.str()};
}

// 3. Pointwise algebraic identities: the bracket of two observables equals
//    the symplectic pairing of their fields, the geometric and operator
//    builds of the product coincide, and the norm satisfies the C* identity.
Outcome criterion3() {
    SeededSampler root(3003);
    const std::size_t n = 3;
    double worst = 0.0;
    for (double kappa : {1.0, 2.5, double(n + 1)}) {
        const QuantParams q(n, kappa);
        SeededSampler ks = root.split(static_cast<std::uint64_t>(kappa * 8));
        for (int rep = 0; rep < 4; ++rep) {
            const HermitianOperator a(random_hermitian(ks, n));
            const HermitianOperator b(random_hermitian(ks, n));
            const AffineObservable f = quantize_inverse(a, q);
            const AffineObservable g = quantize_inverse(b, q);
            const AffineObservable br = poisson(f, g);
            const AffineObservable st = star_operator(f, g);
            for (int k = 0; k < 25; ++k) {
                const PurePoint p = sample_pure(ks, n);
                const TangentVector xf = hamiltonian_field(a, p);
                const TangentVector xg = hamiltonian_field(b, p);
                const double bval = br.evaluate(p).real();
                worst = std::max(worst, std::abs(omega(xf, xg, kappa) - bval) /
                                            std::max(1.0, std::abs(bval)));
                const Complex sval = st.evaluate(p);
                worst = std::max(worst, std::abs(star_geometric(f, g, p) - sval) /
                                            std::max(1.0, std::abs(sval)));
            }
        }
        // C* identity on general complex kernels
        for (int rep = 0; rep < 5; ++rep) {
            ComplexMatrix m(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m(i, j) = ks.next_complex_gaussian();
            const AffineObservable f(m * Complex(kappa), q.c_kappa() * m.trace(), q);
            const double nf = cstar_norm(f);
            const double nff = cstar_norm(star_operator(f.conj(), f));
            worst = std::max(worst, std::abs(nff - nf * nf) / std::max(1.0, nf * nf));
        }
    }
    return {worst <= kAlgebraTol, "worst relative violation " + fmt(worst)};
}

// 4. The classical pairing of a state density with a quantized operator
//    reproduces tr(sigma A), and every density integrates to one.
Outcome criterion4() {
    SeededSampler root(4004);
    const std::size_t n = 3;
    const double kappas[3] = {1.0, 2.5, double(n + 1)};
    double worst_pair = 0.0, worst_norm = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        SeededSampler ts = root.split(static_cast<std::uint64_t>(trial));
        const QuantParams q(n, kappas[trial % 3]);
        const DensityMatrix sigma = random_state(ts, n);
        const HermitianOperator a(random_hermitian(ts, n));
        const ExpectationMatch m = expectation_match(sigma, a, q);
        worst_pair = std::max(worst_pair, std::abs(m.quantum - m.classical_exact) /
                                              std::max(1.0, std::abs(m.quantum)));
        const LiouvilleDensity rho(sigma, q);
        worst_norm =
            std::max(worst_norm, std::abs(integral_mean(rho.observable()) - Complex(1.0)));
    }
    const bool pass = worst_pair <= kPairingTol && worst_norm <= kPairingTol;
    return {pass, "pairing " + fmt(worst_pair) + ", normalization " + fmt(worst_norm)};
}

// 5. Densities are nonnegative exactly when the deformation parameter
//    reaches n + 1; below that threshold the scan exhibits a negative value.
Outcome criterion5() {
    SeededSampler root(5005);
    const std::size_t n = 3;
    const double kappas[4] = {1.0, double(n), double(n + 1), 2.0 * (n + 1)};
    bool pass = true;
    std::ostringstream d;
    for (int i = 0; i < 4; ++i) {
        const QuantParams q(n, kappas[i]);
        const PositivityResult r =
            positivity_check(q, kPositivityTrials, root.split(static_cast<std::uint64_t>(i)));
        const bool should_hold = kappas[i] >= double(n + 1);
        if (r.always_nonneg != should_hold) pass = false;
        if (should_hold && r.observed_worst < kPositivityFloor) pass = false;
        if (!should_hold && !r.negative_witness) pass = false;
        d << "kappa=" << kappas[i] << " worst " << fmt(r.observed_worst) << "; ";
    }
    return {pass, d.str()};
}

// 6. The closed-form range of a quantized operator contains and tightly
//    brackets a large sampled scan, and is attained at the extremal rays.
Outcome criterion6() {
    SeededSampler root(6006);
    const std::size_t n = 3;
    bool pass = true;
    double worst_gap = 0.0, worst_attain = 0.0;
    int combo = 0;
    for (double kappa : {1.0, 4.0}) {
        for (int rep = 0; rep < 2; ++rep, ++combo) {
            SeededSampler cs = root.split(static_cast<std::uint64_t>(combo));
            const QuantParams q(n, kappa);
            const ComplexMatrix am = random_hermitian(cs, n);
            const HermitianOperator a(am);
            const BoundsResult b = bounds(a, q);
            const AffineObservable f = quantize_inverse(a, q);

            double lo = 1e300, hi = -1e300;
            SeededSampler scan = cs.split(1);
            for (std::size_t k = 0; k < kScanSamples; ++k) {
                const double v = f.evaluate(sample_pure(scan, n)).real();
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            const double spread = b.max_f - b.min_f;
            if (lo < b.min_f - 1e-12 || hi > b.max_f + 1e-12) pass = false;
            worst_gap = std::max(worst_gap,
                                 std::max(lo - b.min_f, b.max_f - hi) / std::max(1e-300, spread));

            // extremal eigenvectors attain the bounds
            const EigenDecomposition d = eig_hermitian(am);
            std::vector<Complex> vmin(n), vmax(n);
            for (std::size_t i = 0; i < n; ++i) {
                vmin[i] = d.vectors(i, 0);
                vmax[i] = d.vectors(i, n - 1);
            }
            const double at_min = f.evaluate(PurePoint::normalized(vmin)).real();
            const double at_max = f.evaluate(PurePoint::normalized(vmax)).real();
            worst_attain = std::max(
                {worst_attain, std::abs(at_min - b.min_f) / std::max(1.0, std::abs(b.min_f)),
                 std::abs(at_max - b.max_f) / std::max(1.0, std::abs(b.max_f))});
        }
    }
    if (worst_gap > kBoundSlack || worst_attain > kAttainTol) pass = false;
    return {pass,
            "scan gap " + fmt(worst_gap * 100.0) + "% of range, attainment " + fmt(worst_attain)};
}

// 7. Operator recovery: least squares on 50 frame values is exact in
//    dimension 3, black-box averaging recovers the operator within error
//    bars, and the two-level counterexample (a frame function that is no
//    quantized operator) is rejected with a visible misfit.
Outcome criterion7() {
    SeededSampler root(7007);
    const std::size_t n = 3;

    SeededSampler gs = root.split(1);
    const ComplexMatrix a = random_hermitian(gs, n);
    std::vector<std::pair<PurePoint, Complex>> data;
    for (int i = 0; i < 50; ++i) {
        const PurePoint p = sample_pure(gs, n);
        data.emplace_back(p, p.expectation(a));
    }
    const GleasonFit fit = gleason_fit(data, n);
    const double rec = hs_distance(fit.op, a) / std::max(1.0, max_abs(a));

    const QuantParams q(n, 4.0);
    const AffineObservable f = quantize_inverse(HermitianOperator(a), q);
    const MatrixMcEstimate est = dequantize_blackbox(
        [&](const PurePoint& p) { return f.evaluate(p); }, q, kMcSamples, root.split(2));
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            z = std::max(z, std::abs(est.mean(i, j).real() - a(i, j).real()) /
                                std::max(1e-12, est.std_error(i, j).real()));
            z = std::max(z, std::abs(est.mean(i, j).imag() - a(i, j).imag()) /
                                std::max(1e-12, est.std_error(i, j).imag()));
        }

    // two-level counterexample: antipodal-odd cube of tr(p sz). Its basis
    // sums vanish identically, yet no operator matches it.
    const ComplexMatrix sz = ComplexMatrix::diagonal(std::vector<double>{1.0, -1.0});
    auto cube = [&](const PurePoint& p) {
        const double x = p.expectation(sz).real();
        return x * x * x;
    };
    const FrameCheckResult frame =
        frame_check([&](const PurePoint& p) { return cube(p); }, 2, 10, root.split(3));
    SeededSampler cs = root.split(4);
    std::vector<std::pair<PurePoint, Complex>> cdata;
    for (int i = 0; i < 50; ++i) {
        const PurePoint p = sample_pure(cs, 2);
        cdata.emplace_back(p, Complex(cube(p)));
    }
    const GleasonFit cfit = gleason_fit(cdata, 2);

    const bool pass = rec <= kRecoveryTol && z <= kSigmaGate && frame.is_frame &&
                      cfit.residual > kCounterexampleResidual;
    std::ostringstream d;
    d << "recovery " << fmt(rec) << ", black-box max z " << fmt(z) << ", counterexample misfit "
      << fmt(cfit.residual);
    return {pass, d.str()};
}

// 8. Frame sums: summed over any orthonormal basis, a quantized operator
//    gives its trace and a state density gives the dimension.
Outcome criterion8() {
    SeededSampler root(8008);
    const std::size_t n = 4;
    const QuantParams q(n, 2.5);
    double worst_obs = 0.0, worst_density = 0.0;
    SeededSampler s = root.split(1);
    ComplexMatrix a = random_hermitian(s, n);
    DensityMatrix sigma = random_state(s, n);
    for (int trial = 0; trial < kFrameBases; ++trial) {
        if (trial % 10 == 9) {  // refresh the pair now and then
            a = random_hermitian(s, n);
            sigma = random_state(s, n);
        }
        const AffineObservable f = quantize_inverse(HermitianOperator(a), q);
        const LiouvilleDensity rho(sigma, q);
        const std::vector<PurePoint> basis = sample_basis(s, n);
        Complex sum_f = 0.0;
        double sum_rho = 0.0;
        for (const PurePoint& b : basis) {
            sum_f += f.evaluate(b);
            sum_rho += rho.evaluate(b);
        }
        const Complex tra = a.trace();
        worst_obs = std::max(worst_obs,
                             std::abs(sum_f - tra) / std::max(1.0, std::abs(tra)));
        worst_density = std::max(worst_density, std::abs(sum_rho - double(n)) / double(n));
    }
    const bool pass = worst_obs <= kFrameSumTol && worst_density <= kFrameSumTol;
    return {pass, "observable " + fmt(worst_obs) + ", density " + fmt(worst_density)};
}

// 9. Symmetry: quantization commutes with the unitary action, and the
//    Hamiltonian flow preserves the metric and the symplectic form.
Outcome criterion9() {
    SeededSampler root(9009);
    const std::size_t n = 3;
    const QuantParams q(n, 2.5);

    SeededSampler cs = root.split(1);
    double worst_cov = 0.0;
    for (int chunk = 0; chunk < 5; ++chunk) {
        const HermitianOperator a(random_hermitian(cs, n));
        worst_cov = std::max(
            worst_cov, covariance_check(a, q, kSymmetryDraws / 5, cs.split(10 + chunk)));
    }

    double worst_iso = 0.0;
    const double times[3] = {0.3, 0.7, 1.1};
    SeededSampler ks = root.split(2);
    for (int draw = 0; draw < kSymmetryDraws; ++draw) {
        const PurePoint p = sample_pure(ks, n);
        const HermitianOperator h(random_hermitian(ks, n));
        std::vector<HermitianOperator> gens;
        gens.emplace_back(random_hermitian(ks, n));
        gens.emplace_back(random_hermitian(ks, n));
        const KillingCheck kc = killing_check(p, gens, h, times[draw % 3], q.kappa());
        worst_iso =
            std::max({worst_iso, kc.max_metric_deviation, kc.max_symplectic_deviation});
    }
    const bool pass = worst_cov <= kSymmetryTol && worst_iso <= kSymmetryTol;
    return {pass, "covariance " + fmt(worst_cov) + ", isometry " + fmt(worst_iso)};
}

struct Criterion {
    const char* statement;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> table = {
        {"exact moment formulas match Monte Carlo and invert to the HS pairing", criterion1},
        {"integrated flow tracks the spectral propagator at fourth order", criterion2},
        {"bracket, product and norm identities hold pointwise", criterion3},
        {"classical pairing reproduces quantum expectations, densities normalize", criterion4},
        {"positivity switches exactly at the dimension threshold", criterion5},
        {"closed-form range brackets the sampled extrema and is attained", criterion6},
        {"operator recovery succeeds in dimension 3 and rejects the 2-level counterexample",
         criterion7},
        {"frame sums reproduce traces and dimensions over random bases", criterion8},
        {"quantization is unitarily covariant and the flow acts by isometries", criterion9},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int k = std::atoi(argv[i]);
        if (k < 1 || k > static_cast<int>(table.size())) {
            std::fprintf(stderr, "unknown criterion \"%s\" (valid: 1..%zu)\n", argv[i],
                         table.size());
            return 99;
        }
        selected.push_back(k);
    }
    if (selected.empty())
        for (int k = 1; k <= static_cast<int>(table.size()); ++k) selected.push_back(k);

    int failures = 0;
    for (int k : selected) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = table[static_cast<std::size_t>(k - 1)].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %d: %s (%s; %.2fs)\n", o.pass ? "PASS" : "FAIL", k,
                    table[static_cast<std::size_t>(k - 1)].statement, o.details.c_str(), secs);
        if (!o.pass) ++failures;
    }
    return failures;
}
