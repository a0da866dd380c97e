#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "projqm/complex_matrix.hpp"
#include "projqm/observables.hpp"

namespace projqm {

// On-disk formats. A matrix is {"n": N, "re": [...], "im": [...]} with N*N
// row-major entries; a vector is the same with N entries. An observable is
// {"kappa": k, "n": N, "kernel": <matrix>, "offset": {"re": x, "im": y}}.
// Malformed documents raise ValidationError, size conflicts DimensionError.

nlohmann::json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const std::vector<Complex>& v);
std::vector<Complex> vector_from_json(const nlohmann::json& j);

nlohmann::json observable_to_json(const AffineObservable& f);
AffineObservable observable_from_json(const nlohmann::json& j);

// File helpers: read/parse (FileError for missing or unreadable paths,
// ValidationError for parse failures) and atomic-enough write.
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace projqm
