#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "cubewalk/body.hpp"

namespace cubewalk {

// Body description file is malformed; the message names the field.
struct BodyFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Body JSON formats (the "type" key is optional, shapes are detected from
// their fields):
//   box:      {"lower": [..], "upper": [..]}
//   ball:     {"center": [..], "radius": r, "p": "1"|"2"|"inf"|number}
//   polytope: {"A": [[..],..], "b": [..], "interior_point": [..]}
std::shared_ptr<ConvexBody> body_from_json(const nlohmann::json& j);

std::shared_ptr<ConvexBody> load_body(const std::string& path);

}  // namespace cubewalk
