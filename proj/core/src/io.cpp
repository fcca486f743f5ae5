#include "locclab/io.hpp"

#include <fstream>
#include <sstream>

#include "locclab/config.hpp"
#include "locclab/errors.hpp"

namespace locclab::io {
namespace {

int require_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw ParseError(std::string("missing integer field \"") + key + "\"");
  }
  return j.at(key).get<int>();
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex number must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) out.push_back(complex_to_json(m(i, k)));
  }
  return out;
}

Matrix matrix_from_json(const Json& j, int dim) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
    throw ParseError("factor must hold d^2 = " + std::to_string(dim * dim) + " entries");
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) m(i, k) = complex_from_json(j[static_cast<std::size_t>(i * dim + k)]);
  }
  return m;
}

Json state_to_json(const QuditState& s) {
  Json j;
  j["n"] = s.parties();
  j["d"] = s.dim();
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < s.amps().size(); ++i) amps.push_back(complex_to_json(s.amps()[i]));
  j["amps"] = std::move(amps);
  return j;
}

QuditState state_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("QSTATE must be a JSON object");
  const int n = require_int(j, "n");
  const int d = require_int(j, "d");
  if (n < 1 || d < 2) throw ParseError("QSTATE needs n >= 1 and d >= 2");
  if (!j.contains("amps") || !j.at("amps").is_array()) throw ParseError("missing array field \"amps\"");
  const auto& amps = j.at("amps");
  const std::size_t expected = checked_dimension(n, d);
  if (amps.size() != expected) {
    throw ParseError("QSTATE amps has " + std::to_string(amps.size()) + " entries, expected d^n = " +
                     std::to_string(expected));
  }
  Vector v(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(amps[i]);
  return QuditState(n, d, std::move(v));
}

Json operator_to_json(const LocalOperator& op) {
  Json j;
  j["n"] = op.parties();
  j["d"] = op.dim();
  Json factors = Json::array();
  for (const auto& f : op.factors()) factors.push_back(matrix_to_json(f));
  j["factors"] = std::move(factors);
  return j;
}

LocalOperator operator_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("LOCALOP must be a JSON object");
  const int n = require_int(j, "n");
  const int d = require_int(j, "d");
  if (n < 1 || d < 2) throw ParseError("LOCALOP needs n >= 1 and d >= 2");
  if (!j.contains("factors") || !j.at("factors").is_array()) throw ParseError("missing array field \"factors\"");
  const auto& factors = j.at("factors");
  if (factors.size() != static_cast<std::size_t>(n)) {
    throw ParseError("LOCALOP has " + std::to_string(factors.size()) + " factors, expected n = " +
                     std::to_string(n));
  }
  std::vector<Matrix> out;
  for (const auto& f : factors) out.push_back(matrix_from_json(f, d));
  return LocalOperator(std::move(out));
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << dump(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

QuditState read_state(const std::filesystem::path& path) { return state_from_json(read_json_file(path)); }

LocalOperator read_operator(const std::filesystem::path& path) {
  return operator_from_json(read_json_file(path));
}

}  // namespace locclab::io
