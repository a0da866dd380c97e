#include "projqm/json_io.hpp"

#include <fstream>

#include "projqm/errors.hpp"

namespace projqm {

namespace {

using nlohmann::json;

void require_field(const json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string(where) + ": missing field \"" + key + "\"");
}

std::size_t read_dim(const json& j, const char* where) {
    require_field(j, "n", where);
    const json& n = j.at("n");
    if (!n.is_number_unsigned() && !(n.is_number_integer() && n.get<long long>() > 0))
        throw ValidationError(std::string(where) + ": \"n\" must be a positive integer");
    const long long v = n.get<long long>();
    if (v <= 0) throw ValidationError(std::string(where) + ": \"n\" must be a positive integer");
    return static_cast<std::size_t>(v);
}

std::vector<double> read_real_array(const json& j, const char* key, std::size_t len,
                                    const char* where) {
    require_field(j, key, where);
    const json& arr = j.at(key);
    if (!arr.is_array())
        throw ValidationError(std::string(where) + ": \"" + key + "\" must be an array");
    if (arr.size() != len)
        throw ValidationError(std::string(where) + ": \"" + key + "\" has " +
                              std::to_string(arr.size()) + " entries, expected " +
                              std::to_string(len));
    std::vector<double> out(len);
    for (std::size_t i = 0; i < len; ++i) {
        if (!arr[i].is_number())
            throw ValidationError(std::string(where) + ": \"" + key + "\" entry " +
                                  std::to_string(i) + " is not a number");
        out[i] = arr[i].get<double>();
    }
    return out;
}

Complex read_complex_scalar(const json& j, const char* where) {
    require_field(j, "re", where);
    require_field(j, "im", where);
    if (!j.at("re").is_number() || !j.at("im").is_number())
        throw ValidationError(std::string(where) + ": \"re\"/\"im\" must be numbers");
    return Complex(j.at("re").get<double>(), j.at("im").get<double>());
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& a) {
    const std::size_t n = a.size();
    std::vector<double> re(n * n), im(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            re[i * n + j] = a(i, j).real();
            im[i * n + j] = a(i, j).imag();
        }
    return nlohmann::json{{"n", n}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    const std::size_t n = read_dim(j, "matrix");
    const std::vector<double> re = read_real_array(j, "re", n * n, "matrix");
    const std::vector<double> im = read_real_array(j, "im", n * n, "matrix");
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) a(i, k) = Complex(re[i * n + k], im[i * n + k]);
    if (!a.finite()) throw ValidationError("matrix: entries must be finite");
    return a;
}

nlohmann::json vector_to_json(const std::vector<Complex>& v) {
    std::vector<double> re(v.size()), im(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        re[i] = v[i].real();
        im[i] = v[i].imag();
    }
    return nlohmann::json{{"n", v.size()}, {"re", re}, {"im", im}};
}

std::vector<Complex> vector_from_json(const nlohmann::json& j) {
    const std::size_t n = read_dim(j, "vector");
    const std::vector<double> re = read_real_array(j, "re", n, "vector");
    const std::vector<double> im = read_real_array(j, "im", n, "vector");
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = Complex(re[i], im[i]);
        if (!std::isfinite(re[i]) || !std::isfinite(im[i]))
            throw ValidationError("vector: entries must be finite");
    }
    return v;
}

nlohmann::json observable_to_json(const AffineObservable& f) {
    return nlohmann::json{{"kappa", f.params().kappa()},
                          {"n", f.params().dimension()},
                          {"kernel", matrix_to_json(f.kernel())},
                          {"offset", {{"re", f.offset().real()}, {"im", f.offset().imag()}}}};
}

AffineObservable observable_from_json(const nlohmann::json& j) {
    require_field(j, "kappa", "observable");
    if (!j.at("kappa").is_number())
        throw ValidationError("observable: \"kappa\" must be a number");
    const double kappa = j.at("kappa").get<double>();
    const std::size_t n = read_dim(j, "observable");
    require_field(j, "kernel", "observable");
    const ComplexMatrix kernel = matrix_from_json(j.at("kernel"));
    if (kernel.size() != n)
        throw DimensionError("observable: kernel size " + std::to_string(kernel.size()) +
                             " does not match \"n\" = " + std::to_string(n));
    require_field(j, "offset", "observable");
    const Complex offset = read_complex_scalar(j.at("offset"), "observable offset");
    return AffineObservable(kernel, offset, QuantParams(n, kappa));
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw FileError("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw FileError("failed writing file: " + path);
}

}  // namespace projqm
