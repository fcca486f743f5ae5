#pragma once

// JSON interchange.
//   QSTATE  {"n":int,"d":int,"amps":[[re,im],...]}            (d^n entries)
//   LOCALOP {"n":int,"d":int,"factors":[[[re,im],...d^2...],...n...]}
// Factors are row-major. Amplitude order follows the party-0-most-
// significant convention of tensor.hpp. Doubles are written with 17
// significant digits so a write/read round trip is bit-exact.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "locclab/tensor.hpp"

namespace locclab::io {

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);            // [[re,im],...] row-major
Matrix matrix_from_json(const Json& j, int dim);

Json state_to_json(const QuditState& s);
QuditState state_from_json(const Json& j);
Json operator_to_json(const LocalOperator& op);
LocalOperator operator_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
/// Pretty-printed, field order preserved, trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);
std::string dump(const Json& j);

QuditState read_state(const std::filesystem::path& path);
LocalOperator read_operator(const std::filesystem::path& path);

}  // namespace locclab::io
