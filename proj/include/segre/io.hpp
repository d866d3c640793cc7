#pragma once

// JSON forms of scalars ("p/q" strings), vectors, matrices, instances and
// round-trip reports.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "segre/ratlin.hpp"
#include "segre/reconstruct.hpp"
#include "segre/tensor_space.hpp"

namespace segre::io {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar& s);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);

// These throw ParseError on malformed input.
Scalar scalar_from_json(const Json& j);
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);

Json instance_to_json(const TensorSpaceInstance& inst);
TensorSpaceInstance instance_from_json(const Json& j);

Json report_to_json(const RoundTripReport& report);

Json read_file(const std::string& path);
/// Two-space indentation and a trailing newline, so reruns are byte-identical.
std::string dump(const Json& j);
void write_file(const std::string& path, const Json& j);

}  // namespace segre::io
