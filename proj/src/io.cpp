#include "qleb/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qleb {

namespace {

double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::InvalidInput, std::string(what) + " is not a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidInput, std::string(what) + " is not finite");
  return x;
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {finite_number(j, "entry"), 0.0};
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::InvalidInput, "complex value must be a [re, im] pair");
  }
  return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

Json matrix_to_json(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquare, "matrix schema holds square matrices");
  Json entries = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) entries.push_back(complex_to_json(m(i, k)));
  return Json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw Error(ErrorCode::InvalidInput, "matrix object needs \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
    throw Error(ErrorCode::InvalidInput, "\"dim\" must be a positive integer");
  }
  const auto d = static_cast<Index>(j["dim"].get<long long>());
  const Json& entries = j["entries"];
  if (!entries.is_array() || static_cast<Index>(entries.size()) != d * d) {
    std::ostringstream os;
    os << "\"entries\" must hold dim^2 = " << d * d << " values";
    throw Error(ErrorCode::InvalidInput, os.str());
  }
  ComplexMatrix m(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index k = 0; k < d; ++k) m(i, k) = complex_from_json(entries[i * d + k]);
  return m;
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path.string() + ": " + e.what());
  }
  return matrix_from_json(j);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorCode::InvalidInput, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace qleb
