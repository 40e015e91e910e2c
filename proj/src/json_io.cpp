#include "json_internal.hpp"

#include "tamer/error.hpp"

namespace tamer::detail {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

long integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw InputError(where + " must be an integer");
    return j.get<long>();
}

std::uint64_t positive(const Json& j, const std::string& where) {
    long v = integer(j, where);
    if (v <= 0) throw InputError(where + " must be positive");
    return static_cast<std::uint64_t>(v);
}

std::vector<long> integers(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + " must be an array");
    std::vector<long> out;
    for (const auto& v : j) out.push_back(integer(v, where));
    return out;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("malformed " + what + " JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

RootStackModel model_from(const Json& j) {
    if (!j.is_object()) throw InputError("model must be a JSON object");
    RootStackModel m;
    const auto& curve = field(j, "curve");
    if (curve.is_string()) {
        if (curve.get<std::string>() != "P1") throw InputError("curve must be \"P1\" or an object");
    } else if (curve.is_object()) {
        m.curve.p1 = false;
        m.curve.free_rank = static_cast<std::size_t>(integer(field(curve, "free_rank"), "free_rank"));
        m.curve.torsion.clear();
        for (const auto& t : field(curve, "torsion")) m.curve.torsion.push_back(positive(t, "torsion order"));
        m.curve.degrees = integers(field(curve, "degrees"), "degrees");
    } else {
        throw InputError("curve must be \"P1\" or an object");
    }
    for (const auto& pt : field(j, "points")) {
        MarkedPoint x;
        for (const auto& b : field(pt, "branches")) {
            long i = integer(b, "branch index");
            if (i < 0) throw InputError("branch index must be nonnegative");
            x.branches.push_back(static_cast<std::size_t>(i));
        }
        m.points.push_back(std::move(x));
    }
    for (const auto& c : field(j, "classes")) {
        if (c.is_number_integer()) m.classes.push_back({c.get<long>()});
        else m.classes.push_back(integers(c, "divisor class"));
    }
    for (const auto& r : field(j, "r")) {
        auto v = positive(r, "index r_i");
        if (v > 1u << 20) throw InputError("index r_i too large");
        m.r.push_back(static_cast<std::uint32_t>(v));
    }
    if (j.contains("p")) m.p = positive(j.at("p"), "p");
    m.validate();
    return m;
}

Json model_json(const RootStackModel& m) {
    Json j;
    if (m.curve.p1) {
        j["curve"] = "P1";
    } else {
        j["curve"] = {{"free_rank", m.curve.free_rank}, {"torsion", m.curve.torsion}, {"degrees", m.curve.degrees}};
    }
    j["points"] = Json::array();
    for (const auto& x : m.points) j["points"].push_back({{"branches", x.branches}});
    j["classes"] = Json::array();
    for (const auto& c : m.classes) {
        if (m.curve.p1) j["classes"].push_back(c.at(0));
        else j["classes"].push_back(c);
    }
    j["r"] = m.r;
    if (m.p) j["p"] = *m.p;
    return j;
}

GradedModule module_from(const Json& j) {
    GradedModule m;
    for (const auto& s : field(j, "summands")) {
        Summand x;
        x.e = s.contains("e") ? integer(s.at("e"), "e") : 0;
        x.d = integers(field(s, "d"), "d");
        m.summands.push_back(std::move(x));
    }
    return m;
}

Json module_json(const GradedModule& m) {
    Json j;
    j["summands"] = Json::array();
    for (const auto& s : m.summands) j["summands"].push_back({{"e", s.e}, {"d", s.d}});
    return j;
}

}  // namespace tamer::detail

namespace tamer {

RootStackModel model_from_json(const std::string& text) {
    try {
        return detail::model_from(detail::parse_json(text, "model"));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("model does not match the schema: ") + e.what());
    }
}

std::string model_to_json(const RootStackModel& m) { return detail::model_json(m).dump(); }

GradedModule module_from_json(const std::string& text) {
    try {
        return detail::module_from(detail::parse_json(text, "module"));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("module does not match the schema: ") + e.what());
    }
}

std::string module_to_json(const GradedModule& m) { return detail::module_json(m).dump(); }

}  // namespace tamer
