// Command-line front end: verification suite, quantization dictionary,
// spectral bounds, positivity scans, operator reconstruction, sampling and
// Hamiltonian flows. All reports are deterministic functions of the inputs
// and the seed (no timestamps), so reruns are byte-identical.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "projqm/algebra.hpp"
#include "projqm/dynamics.hpp"
#include "projqm/errors.hpp"
#include "projqm/json_io.hpp"
#include "projqm/maps.hpp"
#include "projqm/measures.hpp"
#include "projqm/verify.hpp"

namespace {

using namespace projqm;
using nlohmann::json;

// Exit codes: 0 success, 1 internal failure or failed verification,
// 2 usage, 3 missing file, 4 schema violation, 5 dimension mismatch.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kFileNotFound = 3,
    kSchema = 4,
    kDimension = 5,
};

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Input registry: path -> content hash, embedded into every JSON report.
struct Provenance {
    std::string command;
    json parameters = json::object();
    json inputs = json::object();

    json load(const std::string& path) {
        const std::string bytes = read_file_bytes(path);
        inputs[path] = {{"fnv1a", hex64(fnv1a(bytes))}};
        json j;
        try {
            j = json::parse(bytes);
        } catch (const json::parse_error& e) {
            throw ValidationError("invalid JSON in " + path + ": " + e.what());
        }
        return j;
    }

    json to_json() const {
        return json{{"tool", "projqm"},
                    {"command", command},
                    {"parameters", parameters},
                    {"inputs", inputs}};
    }
};

void emit_text(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output);
    if (!out) throw FileError("cannot open file for writing: " + output);
    out << text;
    if (!out) throw FileError("failed writing file: " + output);
}

void emit_json(const json& j, const std::string& output) {
    emit_text(j.dump(2) + "\n", output);
}

// Config file merge: an explicitly passed flag wins, then the config file,
// then the built-in default.
json load_config(const std::string& path, Provenance& prov) {
    if (path.empty()) return json::object();
    const json cfg = prov.load(path);
    if (!cfg.is_object()) throw ValidationError("config: top level must be an object");
    return cfg;
}

template <typename T>
void merge_value(const json& cfg, const char* key, const CLI::Option* opt, T& value) {
    if (opt != nullptr && opt->count() > 0) return;
    if (!cfg.contains(key)) return;
    try {
        value = cfg.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError(std::string("config: field \"") + key + "\" has the wrong type");
    }
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

Complex value_from_json(const json& j, const char* where) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_object() && j.contains("re") && j.contains("im") && j.at("re").is_number() &&
        j.at("im").is_number())
        return Complex(j.at("re").get<double>(), j.at("im").get<double>());
    throw ValidationError(std::string(where) + ": \"value\" must be a number or {re, im}");
}

// Inputs arrive either bare or wrapped in one of our own reports (quantize
// emits {"observable": ...}, dequantize {"operator": ...}); unwrap so a
// report written with --output pipes straight back in.
AffineObservable observable_from_doc(const json& j) {
    if (j.is_object() && j.contains("observable") && j.at("observable").is_object())
        return observable_from_json(j.at("observable"));
    return observable_from_json(j);
}

ComplexMatrix matrix_from_doc(const json& j) {
    if (j.is_object() && j.contains("operator") && j.at("operator").is_object())
        return matrix_from_json(j.at("operator"));
    return matrix_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "projqm: quantum mechanics on complex projective space (observables as affine "
        "phase-space functions, invariant-measure statistics, Hamiltonian flows)"};
    app.require_subcommand(1);
    int exit_code = kOk;

    // ---- verify --------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "run the library self-check suite");
    struct {
        std::size_t n = 3;
        double kappa = 4.0;
        std::uint64_t seed = 42;
        std::size_t samples = 100000;
        double tol = 1e-10;
        std::string config, output, format = "text";
    } vf;
    auto* vf_n = verify_cmd->add_option("--n", vf.n, "Hilbert space dimension");
    auto* vf_k = verify_cmd->add_option("--kappa", vf.kappa, "deformation parameter");
    auto* vf_seed = verify_cmd->add_option("--seed", vf.seed, "RNG seed");
    auto* vf_s = verify_cmd->add_option("--samples", vf.samples, "Monte Carlo sample count");
    auto* vf_tol = verify_cmd->add_option("--tol", vf.tol, "gate for exact identities");
    verify_cmd->add_option("--config", vf.config, "JSON config file (flags win)");
    verify_cmd->add_option("--output", vf.output, "write the report here instead of stdout");
    verify_cmd->add_option("--format", vf.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    verify_cmd->callback([&] {
        Provenance prov;
        prov.command = "verify";
        const json cfg = load_config(vf.config, prov);
        merge_value(cfg, "n", vf_n, vf.n);
        merge_value(cfg, "kappa", vf_k, vf.kappa);
        merge_value(cfg, "seed", vf_seed, vf.seed);
        merge_value(cfg, "samples", vf_s, vf.samples);
        merge_value(cfg, "tol", vf_tol, vf.tol);
        VerifyConfig vc;
        vc.n = vf.n;
        vc.kappa = vf.kappa;
        vc.seed = vf.seed;
        vc.samples = vf.samples;
        vc.tol = vf.tol;
        prov.parameters = {{"n", vc.n},
                           {"kappa", vc.kappa},
                           {"seed", vc.seed},
                           {"samples", vc.samples},
                           {"tol", vc.tol}};
        const VerifyReport rep = run_verify(vc);

        if (vf.format == "json") {
            json jc = json::array();
            for (const CheckResult& c : rep.checks)
                jc.push_back({{"id", c.id},
                              {"description", c.description},
                              {"violation", c.violation},
                              {"threshold", c.threshold},
                              {"status", to_string(c.status)},
                              {"note", c.note}});
            emit_json(json{{"all_passed", rep.all_passed},
                           {"checks", jc},
                           {"provenance", prov.to_json()}},
                      vf.output);
        } else if (vf.format == "csv") {
            std::ostringstream ss;
            ss << "id,status,violation,threshold\n";
            for (const CheckResult& c : rep.checks)
                ss << c.id << "," << to_string(c.status) << "," << fmt_double(c.violation) << ","
                   << fmt_double(c.threshold) << "\n";
            emit_text(ss.str(), vf.output);
        } else {
            std::ostringstream ss;
            std::size_t passed = 0;
            for (const CheckResult& c : rep.checks) {
                if (c.status == CheckStatus::pass) ++passed;
                ss << "[" << to_string(c.status) << "] " << c.id
                   << "  violation=" << fmt_double(c.violation)
                   << " threshold=" << fmt_double(c.threshold);
                if (!c.note.empty()) ss << "  (" << c.note << ")";
                ss << "\n";
            }
            ss << (rep.all_passed ? "VERIFY PASS" : "VERIFY FAIL") << ": " << passed << "/"
               << rep.checks.size() << " checks passed\n";
            emit_text(ss.str(), vf.output);
        }
        exit_code = rep.all_passed ? kOk : kFailure;
    });

    // ---- quantize --------------------------------------------------------
    auto* quant_cmd =
        app.add_subcommand("quantize", "map a Hermitian operator to its affine observable");
    struct {
        std::string input, config, output;
        double kappa = 0.0;  // 0 means "use n + 1"
    } qz;
    quant_cmd->add_option("--input", qz.input, "operator matrix (JSON)")->required();
    auto* qz_k = quant_cmd->add_option("--kappa", qz.kappa, "deformation parameter (default n+1)");
    quant_cmd->add_option("--config", qz.config, "JSON config file (flags win)");
    quant_cmd->add_option("--output", qz.output, "output path (default stdout)");
    quant_cmd->callback([&] {
        Provenance prov;
        prov.command = "quantize";
        const json cfg = load_config(qz.config, prov);
        merge_value(cfg, "kappa", qz_k, qz.kappa);
        const ComplexMatrix m = matrix_from_doc(prov.load(qz.input));
        const HermitianOperator a(m);
        const double kappa =
            (qz_k->count() > 0 || cfg.contains("kappa")) && qz.kappa > 0.0
                ? qz.kappa
                : static_cast<double>(m.size()) + 1.0;
        const QuantParams q(m.size(), kappa);
        const AffineObservable f = quantize_inverse(a, q);
        prov.parameters = {{"kappa", kappa}, {"n", m.size()}};
        emit_json(json{{"observable", observable_to_json(f)},
                       {"frame_weight", f.frame_weight().real()},
                       {"mean", integral_mean(f).real()},
                       {"provenance", prov.to_json()}},
                  qz.output);
    });

    // ---- dequantize ------------------------------------------------------
    auto* deq_cmd =
        app.add_subcommand("dequantize", "invert an affine observable back to its operator");
    struct {
        std::string input, config, output;
        double tol = 1e-8;
    } dq;
    deq_cmd->add_option("--input", dq.input, "observable (JSON)")->required();
    auto* dq_tol = deq_cmd->add_option("--tol", dq.tol, "canonical-form tolerance");
    deq_cmd->add_option("--config", dq.config, "JSON config file (flags win)");
    deq_cmd->add_option("--output", dq.output, "output path (default stdout)");
    deq_cmd->callback([&] {
        Provenance prov;
        prov.command = "dequantize";
        const json cfg = load_config(dq.config, prov);
        merge_value(cfg, "tol", dq_tol, dq.tol);
        const AffineObservable f = observable_from_doc(prov.load(dq.input));
        const ComplexMatrix a = dequantize(f, dq.tol);
        prov.parameters = {{"tol", dq.tol},
                           {"kappa", f.params().kappa()},
                           {"n", f.params().dimension()}};
        emit_json(json{{"operator", matrix_to_json(a)},
                       {"hermitian", a.is_hermitian(1e-10)},
                       {"trace", {{"re", a.trace().real()}, {"im", a.trace().imag()}}},
                       {"provenance", prov.to_json()}},
                  dq.output);
    });

    // ---- star --------------------------------------------------------------
    auto* star_cmd =
        app.add_subcommand("star", "noncommutative product of two affine observables");
    struct {
        std::string left, right, config, output;
    } st;
    star_cmd->add_option("--left", st.left, "left observable (JSON)")->required();
    star_cmd->add_option("--right", st.right, "right observable (JSON)")->required();
    star_cmd->add_option("--config", st.config, "JSON config file (flags win)");
    star_cmd->add_option("--output", st.output, "output path (default stdout)");
    star_cmd->callback([&] {
        Provenance prov;
        prov.command = "star";
        load_config(st.config, prov);
        const AffineObservable f = observable_from_doc(prov.load(st.left));
        const AffineObservable g = observable_from_doc(prov.load(st.right));
        const AffineObservable fg = star_operator(f, g);
        prov.parameters = {{"kappa", f.params().kappa()}, {"n", f.params().dimension()}};
        emit_json(json{{"star", observable_to_json(fg)},
                       {"jordan", observable_to_json(jordan(f, g))},
                       {"lie", observable_to_json(lie(f, g))},
                       {"cstar_norm_left", cstar_norm(f)},
                       {"cstar_norm_right", cstar_norm(g)},
                       {"cstar_norm_product", cstar_norm(fg)},
                       {"provenance", prov.to_json()}},
                  st.output);
    });

    // ---- bounds --------------------------------------------------------------
    auto* bounds_cmd =
        app.add_subcommand("bounds", "exact range of the observable of a Hermitian operator");
    struct {
        std::string input, config, output;
        double kappa = 0.0;
    } bd;
    bounds_cmd->add_option("--input", bd.input, "operator matrix (JSON)")->required();
    auto* bd_k = bounds_cmd->add_option("--kappa", bd.kappa, "deformation parameter (default n+1)");
    bounds_cmd->add_option("--config", bd.config, "JSON config file (flags win)");
    bounds_cmd->add_option("--output", bd.output, "output path (default stdout)");
    bounds_cmd->callback([&] {
        Provenance prov;
        prov.command = "bounds";
        const json cfg = load_config(bd.config, prov);
        merge_value(cfg, "kappa", bd_k, bd.kappa);
        const ComplexMatrix m = matrix_from_doc(prov.load(bd.input));
        const HermitianOperator a(m);
        const double kappa = (bd_k->count() > 0 || cfg.contains("kappa")) && bd.kappa > 0.0
                                 ? bd.kappa
                                 : static_cast<double>(m.size()) + 1.0;
        const QuantParams q(m.size(), kappa);
        const BoundsResult r = bounds(a, q);
        const EigenDecomposition d = eig_hermitian(a.matrix());
        std::vector<Complex> lo(m.size()), hi(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            lo[i] = d.vectors(i, 0);
            hi[i] = d.vectors(i, m.size() - 1);
        }
        prov.parameters = {{"kappa", kappa}, {"n", m.size()}};
        emit_json(json{{"min", r.min_f},
                       {"max", r.max_f},
                       {"spectrum_min", d.values.front()},
                       {"spectrum_max", d.values.back()},
                       {"range_inside_spectrum", r.o5_holds},
                       {"sup_norm", r.sup_norm},
                       {"sup_bound",
                        std::isnan(r.sup_bound) ? json(nullptr) : json(r.sup_bound)},
                       {"sup_bound_holds", r.sup_bound_holds},
                       {"argmin", vector_to_json(lo)},
                       {"argmax", vector_to_json(hi)},
                       {"provenance", prov.to_json()}},
                  bd.output);
    });

    // ---- positivity ------------------------------------------------------------
    auto* pos_cmd = app.add_subcommand(
        "positivity", "scan state densities for negative values across random (state, point) pairs");
    struct {
        std::size_t n = 3;
        double kappa = 0.0;
        std::uint64_t seed = 42;
        std::size_t samples = 10000;
        std::string config, output;
    } ps;
    auto* ps_n = pos_cmd->add_option("--n", ps.n, "Hilbert space dimension");
    auto* ps_k = pos_cmd->add_option("--kappa", ps.kappa, "deformation parameter (default n+1)");
    auto* ps_seed = pos_cmd->add_option("--seed", ps.seed, "RNG seed");
    auto* ps_s = pos_cmd->add_option("--samples", ps.samples, "number of (state, point) pairs");
    pos_cmd->add_option("--config", ps.config, "JSON config file (flags win)");
    pos_cmd->add_option("--output", ps.output, "output path (default stdout)");
    pos_cmd->callback([&] {
        Provenance prov;
        prov.command = "positivity";
        const json cfg = load_config(ps.config, prov);
        merge_value(cfg, "n", ps_n, ps.n);
        merge_value(cfg, "kappa", ps_k, ps.kappa);
        merge_value(cfg, "seed", ps_seed, ps.seed);
        merge_value(cfg, "samples", ps_s, ps.samples);
        const double kappa = (ps_k->count() > 0 || cfg.contains("kappa")) && ps.kappa > 0.0
                                 ? ps.kappa
                                 : static_cast<double>(ps.n) + 1.0;
        const QuantParams q(ps.n, kappa);
        SeededSampler s(ps.seed);
        const PositivityResult r = positivity_check(q, ps.samples, s);
        prov.parameters = {
            {"n", ps.n}, {"kappa", kappa}, {"seed", ps.seed}, {"samples", ps.samples}};
        emit_json(json{{"always_nonneg", r.always_nonneg},
                       {"kappa_threshold", static_cast<double>(ps.n) + 1.0},
                       {"analytic_worst", r.analytic_worst},
                       {"observed_worst", r.observed_worst},
                       {"negative_witness", r.negative_witness},
                       {"trials", r.trials},
                       {"provenance", prov.to_json()}},
                  ps.output);
    });

    // ---- gleason-fit --------------------------------------------------------
    auto* gl_cmd = app.add_subcommand(
        "gleason-fit", "least-squares operator reconstruction from (point, value) samples");
    struct {
        std::string input, config, output;
    } gl;
    gl_cmd->add_option("--input", gl.input, "samples file (JSON)")->required();
    gl_cmd->add_option("--config", gl.config, "JSON config file (flags win)");
    gl_cmd->add_option("--output", gl.output, "output path (default stdout)");
    gl_cmd->callback([&] {
        Provenance prov;
        prov.command = "gleason-fit";
        load_config(gl.config, prov);
        const json doc = prov.load(gl.input);
        if (!doc.is_object() || !doc.contains("n") || !doc.contains("samples"))
            throw ValidationError("gleason-fit: input must be {\"n\": N, \"samples\": [...]}");
        if (!doc.at("n").is_number_integer() || doc.at("n").get<long long>() <= 0)
            throw ValidationError("gleason-fit: \"n\" must be a positive integer");
        const std::size_t n = doc.at("n").get<std::size_t>();
        if (!doc.at("samples").is_array())
            throw ValidationError("gleason-fit: \"samples\" must be an array");
        std::vector<std::pair<PurePoint, Complex>> data;
        for (const json& row : doc.at("samples")) {
            if (!row.is_object() || !row.contains("psi") || !row.contains("value"))
                throw ValidationError("gleason-fit: each sample needs \"psi\" and \"value\"");
            const std::vector<Complex> psi = vector_from_json(row.at("psi"));
            if (psi.size() != n)
                throw DimensionError("gleason-fit: sample vector length " +
                                     std::to_string(psi.size()) + " does not match n = " +
                                     std::to_string(n));
            data.emplace_back(PurePoint::normalized(psi),
                              value_from_json(row.at("value"), "gleason-fit"));
        }
        const GleasonFit fit = gleason_fit(data, n);
        prov.parameters = {{"n", n}, {"samples", data.size()}};
        emit_json(json{{"operator", matrix_to_json(fit.op)},
                       {"residual", fit.residual},
                       {"hermitian", fit.op.is_hermitian(1e-10)},
                       {"warnings", fit.warnings},
                       {"provenance", prov.to_json()}},
                  gl.output);
    });

    // ---- sample ---------------------------------------------------------------
    auto* sample_cmd =
        app.add_subcommand("sample", "draw points, bases, unitaries, operators or states");
    struct {
        std::size_t n = 3;
        std::uint64_t seed = 42;
        std::size_t count = 5;
        std::string kind = "point";
        std::string measure = "unit";
        std::string config, output, format = "json";
    } sm;
    auto* sm_n = sample_cmd->add_option("--n", sm.n, "Hilbert space dimension");
    auto* sm_seed = sample_cmd->add_option("--seed", sm.seed, "RNG seed");
    auto* sm_c = sample_cmd->add_option("--count", sm.count, "number of draws");
    sample_cmd->add_option("--kind", sm.kind, "point, basis, unitary, hermitian or state")
        ->check(CLI::IsMember({"point", "basis", "unitary", "hermitian", "state"}));
    sample_cmd
        ->add_option("--measure", sm.measure,
                     "reported normalization of the invariant measure: unit mass or total mass n")
        ->check(CLI::IsMember({"unit", "dimension"}));
    sample_cmd->add_option("--config", sm.config, "JSON config file (flags win)");
    sample_cmd->add_option("--output", sm.output, "output path (default stdout)");
    sample_cmd->add_option("--format", sm.format, "json or csv (csv for points only)")
        ->check(CLI::IsMember({"json", "csv"}));
    sample_cmd->callback([&] {
        Provenance prov;
        prov.command = "sample";
        const json cfg = load_config(sm.config, prov);
        merge_value(cfg, "n", sm_n, sm.n);
        merge_value(cfg, "seed", sm_seed, sm.seed);
        merge_value(cfg, "count", sm_c, sm.count);
        if (sm.n == 0) throw ValidationError("sample: dimension must be positive");
        SeededSampler s(sm.seed);
        prov.parameters = {{"n", sm.n},
                           {"seed", sm.seed},
                           {"count", sm.count},
                           {"kind", sm.kind},
                           {"measure", sm.measure}};
        // The normalization choice only affects the reported total mass;
        // draws are identical under both conventions.
        const double total_mass =
            sm.measure == "unit" ? 1.0 : static_cast<double>(sm.n);

        if (sm.format == "csv") {
            if (sm.kind != "point")
                throw ValidationError("sample: csv output is only available for --kind point");
            std::ostringstream ss;
            ss << "# command=sample kind=point n=" << sm.n << " seed=" << sm.seed
               << " measure_total_mass=" << fmt_double(total_mass) << "\n";
            for (std::size_t i = 0; i < sm.n; ++i) ss << "re_" << i << ",";
            for (std::size_t i = 0; i < sm.n; ++i)
                ss << "im_" << i << (i + 1 < sm.n ? "," : "\n");
            for (std::size_t k = 0; k < sm.count; ++k) {
                const PurePoint p = sample_pure(s, sm.n);
                for (std::size_t i = 0; i < sm.n; ++i)
                    ss << fmt_double(p.amplitudes()[i].real()) << ",";
                for (std::size_t i = 0; i < sm.n; ++i)
                    ss << fmt_double(p.amplitudes()[i].imag()) << (i + 1 < sm.n ? "," : "\n");
            }
            emit_text(ss.str(), sm.output);
        } else {
            json draws = json::array();
            for (std::size_t k = 0; k < sm.count; ++k) {
                if (sm.kind == "point") {
                    draws.push_back(vector_to_json(sample_pure(s, sm.n).amplitudes()));
                } else if (sm.kind == "basis") {
                    json cols = json::array();
                    for (const PurePoint& p : sample_basis(s, sm.n))
                        cols.push_back(vector_to_json(p.amplitudes()));
                    draws.push_back(cols);
                } else if (sm.kind == "unitary") {
                    draws.push_back(matrix_to_json(sample_unitary(s, sm.n)));
                } else if (sm.kind == "hermitian") {
                    draws.push_back(matrix_to_json(random_hermitian(s, sm.n)));
                } else {
                    draws.push_back(matrix_to_json(random_state(s, sm.n).matrix()));
                }
            }
            emit_json(json{{"kind", sm.kind},
                           {"n", sm.n},
                           {"measure_total_mass", total_mass},
                           {"draws", draws},
                           {"provenance", prov.to_json()}},
                      sm.output);
        }
    });

    // ---- evolve -----------------------------------------------------------------
    auto* ev_cmd = app.add_subcommand("evolve", "integrate the Hamiltonian flow of an operator");
    struct {
        std::string hamiltonian, state, config, output, format = "json";
        double dt = 1e-3;
        double t_final = 1.0;
        double kappa = 0.0;
        std::size_t stride = 10;
        bool no_reproject = false;
        bool exact = false;
    } ev;
    ev_cmd->add_option("--hamiltonian", ev.hamiltonian, "generator matrix (JSON)")->required();
    ev_cmd->add_option("--state", ev.state, "initial amplitudes (JSON vector)")->required();
    auto* ev_dt = ev_cmd->add_option("--dt", ev.dt, "integrator step");
    auto* ev_tf = ev_cmd->add_option("--t-final", ev.t_final, "end time");
    auto* ev_k = ev_cmd->add_option("--kappa", ev.kappa, "deformation parameter (default n+1)");
    auto* ev_st = ev_cmd->add_option("--stride", ev.stride, "store every stride-th step");
    ev_cmd->add_flag("--no-reproject", ev.no_reproject,
                     "integrate the raw projector equation without pulling back to pure states");
    ev_cmd->add_flag("--exact", ev.exact,
                     "use the spectral propagator instead of the integrator");
    ev_cmd->add_option("--config", ev.config, "JSON config file (flags win)");
    ev_cmd->add_option("--output", ev.output, "output path (default stdout)");
    ev_cmd->add_option("--format", ev.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    ev_cmd->callback([&] {
        Provenance prov;
        prov.command = "evolve";
        const json cfg = load_config(ev.config, prov);
        merge_value(cfg, "dt", ev_dt, ev.dt);
        merge_value(cfg, "t_final", ev_tf, ev.t_final);
        merge_value(cfg, "kappa", ev_k, ev.kappa);
        merge_value(cfg, "stride", ev_st, ev.stride);
        const ComplexMatrix hm = matrix_from_doc(prov.load(ev.hamiltonian));
        const HermitianOperator h(hm);
        const std::vector<Complex> psi0 = vector_from_json(prov.load(ev.state));
        if (psi0.size() != hm.size())
            throw DimensionError("evolve: state length " + std::to_string(psi0.size()) +
                                 " does not match generator size " + std::to_string(hm.size()));
        const PurePoint p0 = PurePoint::normalized(psi0);
        const double kappa = (ev_k->count() > 0 || cfg.contains("kappa")) && ev.kappa > 0.0
                                 ? ev.kappa
                                 : static_cast<double>(hm.size()) + 1.0;
        const QuantParams q(hm.size(), kappa);
        const AffineObservable fh = quantize_inverse(h, q);

        std::vector<FlowSample> traj;
        if (ev.exact) {
            // Sample the spectral propagator on the same time grid.
            FlowConfig fc;
            fc.dt = ev.dt;
            fc.t_final = ev.t_final;
            fc.stride = ev.stride;
            const std::size_t n_full =
                static_cast<std::size_t>(std::floor(fc.t_final / fc.dt + 1e-9));
            traj.push_back({0.0, p0});
            for (std::size_t k = 1; k <= n_full; ++k)
                if (k % fc.stride == 0 && static_cast<double>(k) * fc.dt < fc.t_final)
                    traj.push_back({static_cast<double>(k) * fc.dt,
                                    evolve_exact(p0, h, static_cast<double>(k) * fc.dt)});
            if (fc.t_final > 0.0) traj.push_back({fc.t_final, evolve_exact(p0, h, fc.t_final)});
        } else {
            FlowConfig fc;
            fc.dt = ev.dt;
            fc.t_final = ev.t_final;
            fc.stride = ev.stride;
            fc.reproject = !ev.no_reproject;
            traj = evolve_flow(p0, h, fc);
        }
        const PurePoint exact_end = evolve_exact(p0, h, ev.t_final);
        const double end_error = traj.back().point.distance2(exact_end);

        prov.parameters = {{"dt", ev.dt},
                           {"t_final", ev.t_final},
                           {"kappa", kappa},
                           {"stride", ev.stride},
                           {"reproject", !ev.no_reproject},
                           {"exact", ev.exact},
                           {"n", hm.size()}};

        if (ev.format == "csv") {
            std::ostringstream ss;
            ss << "# command=evolve n=" << hm.size() << " dt=" << fmt_double(ev.dt)
               << " t_final=" << fmt_double(ev.t_final) << " kappa=" << fmt_double(kappa)
               << " end_error=" << fmt_double(end_error) << "\n";
            ss << "t,";
            for (std::size_t i = 0; i < hm.size(); ++i) ss << "re_" << i << ",";
            for (std::size_t i = 0; i < hm.size(); ++i) ss << "im_" << i << ",";
            ss << "energy\n";
            for (const FlowSample& fs : traj) {
                ss << fmt_double(fs.t) << ",";
                for (std::size_t i = 0; i < hm.size(); ++i)
                    ss << fmt_double(fs.point.amplitudes()[i].real()) << ",";
                for (std::size_t i = 0; i < hm.size(); ++i)
                    ss << fmt_double(fs.point.amplitudes()[i].imag()) << ",";
                ss << fmt_double(fh.evaluate(fs.point).real()) << "\n";
            }
            emit_text(ss.str(), ev.output);
        } else {
            json samples = json::array();
            for (const FlowSample& fs : traj)
                samples.push_back({{"t", fs.t},
                                   {"psi", vector_to_json(fs.point.amplitudes())},
                                   {"energy", fh.evaluate(fs.point).real()}});
            emit_json(json{{"n", hm.size()},
                           {"kappa", kappa},
                           {"dt", ev.dt},
                           {"t_final", ev.t_final},
                           {"end_error_vs_exact", end_error},
                           {"samples", samples},
                           {"provenance", prov.to_json()}},
                      ev.output);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFileNotFound;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kSchema;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDimension;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return exit_code;
}
