#include "cubewalk/io.hpp"

#include <fstream>

namespace cubewalk {

namespace {

Eigen::VectorXd parse_vector(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array())
    throw BodyFormatError("field '" + key + "' must be a numeric array");
  const auto& arr = j[key];
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw BodyFormatError("field '" + key + "' must be a numeric array");
    v[i] = arr[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd parse_matrix(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].empty())
    throw BodyFormatError("field '" + key + "' must be a matrix of rows");
  const auto& rows = j[key];
  const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  if (cols == 0)
    throw BodyFormatError("field '" + key + "' must be a matrix of rows");
  Eigen::MatrixXd m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != cols)
      throw BodyFormatError("field '" + key + "' has ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!rows[r][c].is_number())
        throw BodyFormatError("field '" + key + "' must be numeric");
      m(r, c) = rows[r][c].get<double>();
    }
  }
  return m;
}

LpExponent parse_exponent(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) throw BodyFormatError("field '" + key + "' missing");
  try {
    if (j[key].is_string()) return LpExponent::parse(j[key].get<std::string>());
    if (j[key].is_number()) return LpExponent::finite(j[key].get<double>());
  } catch (const std::exception&) {
  }
  throw BodyFormatError("field '" + key + "' must be a norm exponent");
}

}  // namespace

std::shared_ptr<ConvexBody> body_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw BodyFormatError("body description must be an object");
  std::string type = j.value("type", "");
  if (type.empty()) {
    if (j.contains("lower")) type = "box";
    else if (j.contains("center")) type = "ball";
    else if (j.contains("A")) type = "polytope";
    else
      throw BodyFormatError(
          "field 'type' missing and no recognizable shape fields found");
  }
  try {
    if (type == "box")
      return std::make_shared<AxisBox>(parse_vector(j, "lower"),
                                       parse_vector(j, "upper"));
    if (type == "ball")
      return std::make_shared<LpBall>(
          parse_vector(j, "center"),
          j.contains("radius") && j["radius"].is_number()
              ? j["radius"].get<double>()
              : throw BodyFormatError("field 'radius' must be a number"),
          parse_exponent(j, "p"));
    if (type == "polytope")
      return std::make_shared<HPolytope>(parse_matrix(j, "A"),
                                         parse_vector(j, "b"),
                                         parse_vector(j, "interior_point"));
  } catch (const std::invalid_argument& e) {
    throw BodyFormatError(std::string("inconsistent body fields: ") + e.what());
  }
  throw BodyFormatError("field 'type' must be box, ball, or polytope");
}

std::shared_ptr<ConvexBody> load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BodyFormatError("cannot open body file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw BodyFormatError(std::string("invalid JSON: ") + e.what());
  }
  return body_from_json(j);
}

}  // namespace cubewalk
