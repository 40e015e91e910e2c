#pragma once

#include "json.hpp"
#include "tamer/json_io.hpp"

namespace tamer::detail {

using Json = nlohmann::ordered_json;

/// Parses text, mapping syntax errors to InputError with the byte offset.
Json parse_json(const std::string& text, const std::string& what);

RootStackModel model_from(const Json& j);
Json model_json(const RootStackModel& m);
GradedModule module_from(const Json& j);
Json module_json(const GradedModule& m);

}  // namespace tamer::detail
