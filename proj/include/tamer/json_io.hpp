#pragma once

#include <string>

#include "tamer/orbifold.hpp"
#include "tamer/parabolic.hpp"

namespace tamer {

/// {"curve": "P1" | {"free_rank", "torsion", "degrees"}, "points": [{"branches": [...]}],
///  "classes": [...], "r": [...], "p": optional}. Throws InputError, with the
/// byte position for malformed JSON.
RootStackModel model_from_json(const std::string& text);
/// Canonical compact serialization; model_from_json(model_to_json(m)) == m.
std::string model_to_json(const RootStackModel& m);

/// {"summands": [{"e": int, "d": [...]}]}.
GradedModule module_from_json(const std::string& text);
std::string module_to_json(const GradedModule& m);

}  // namespace tamer
