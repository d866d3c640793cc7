#include "segre/io.hpp"

#include <fstream>
#include <sstream>

#include "segre/error.hpp"

namespace segre::io {

Json to_json(const Scalar& s) { return to_string(s); }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return parse_scalar(j.dump());
  throw ParseError("expected a rational string or an integer, got " + j.dump());
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of scalars");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = scalar_from_json(j[i]);
  return v;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rows");
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw ParseError("matrix rows have different lengths");
  return Matrix::from_rows(rows, cols);
}

Json instance_to_json(const TensorSpaceInstance& inst) {
  Json j;
  j["m"] = inst.shape().m;
  j["n"] = inst.shape().n;
  j["seed"] = inst.seed();
  j["quadric_count"] = inst.quadrics().size();
  j["scramble"] = to_json(inst.hidden().scramble);
  if (inst.base_point()) j["base_point"] = to_json(*inst.base_point());
  return j;
}

namespace {

std::size_t positive_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<std::int64_t>() < 1)
    throw ParseError(std::string("instance: '") + key + "' must be a positive integer");
  return j[key].get<std::size_t>();
}

}  // namespace

TensorSpaceInstance instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("instance: expected an object");
  FactorShape shape{positive_field(j, "m"), positive_field(j, "n")};
  std::uint64_t seed = 0;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) throw ParseError("instance: bad seed");
    seed = j["seed"].get<std::uint64_t>();
  }
  if (!j.contains("scramble")) throw ParseError("instance: missing scramble");
  Matrix scramble = matrix_from_json(j["scramble"]);
  if (scramble.rows() != shape.dim() || scramble.cols() != shape.dim())
    throw ParseError("instance: scramble must be (m*n) x (m*n)");
  std::optional<Vector> base;
  if (j.contains("base_point")) {
    base = vector_from_json(j["base_point"]);
    if (base->size() != shape.dim()) throw ParseError("instance: base_point has the wrong length");
  }
  try {
    return TensorSpaceInstance::from_scramble(shape, seed, std::move(scramble), std::move(base));
  } catch (const PreconditionViolated& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

Json report_to_json(const RoundTripReport& report) {
  Json j;
  j["success"] = report.success;
  j["m"] = report.m;
  j["n"] = report.n;
  j["swap"] = report.swap;
  j["lambda"] = report.success ? to_json(report.lambda) : Json(nullptr);
  j["oracle_calls"] = report.oracle_calls;
  j["samples_used"] = report.samples_used;
  j["sheet_dims"] = report.sheet_dims;
  if (!report.message.empty()) j["message"] = report.message;
  return j;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << dump(j);
}

}  // namespace segre::io
