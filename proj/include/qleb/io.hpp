#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "qleb/linalg.hpp"

namespace qleb {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

// {"dim": d, "entries": [[re, im], ...]} row-major, d*d entries.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// Complex scalars travel as [re, im] pairs.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// printf("%.17g") for CSV output.
std::string format_double(double x);

}  // namespace qleb
