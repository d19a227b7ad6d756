#include "slopelab/serialization.hpp"

#include <cmath>

#include "slopelab/errors.hpp"
#include "slopelab/extended_real.hpp"

namespace slopelab {

namespace {

[[noreturn]] void bad_document(const std::string& what) {
    throw Error("bad_document", "malformed document: " + what);
}

}  // namespace

json encode_extended(double v) {
    if (is_finite(v)) return v;
    if (v == kInf) return "inf";
    bad_document("value is neither finite nor +inf");
}

double decode_extended(const json& j) {
    if (j.is_number()) {
        const double v = j.get<double>();
        if (!is_finite(v)) bad_document("numeric value out of range");
        return v;
    }
    if (j.is_string() && j.get<std::string>() == "inf") return kInf;
    bad_document("expected a number or \"inf\"");
}

json to_json(const MetricSpace& space) {
    json j;
    j["type"] = "space";
    switch (space.kind()) {
        case SpaceKind::finite: {
            j["kind"] = "finite";
            const int n = space.size();
            json rows = json::array();
            for (int i = 0; i < n; ++i) {
                json row = json::array();
                for (int k = 0; k < n; ++k) row.push_back(space.distance(i, k));
                rows.push_back(std::move(row));
            }
            j["distances"] = std::move(rows);
            break;
        }
        case SpaceKind::grid1d:
            j["kind"] = "grid1d";
            j["a"] = space.grid_a();
            j["b"] = space.grid_b();
            j["nodes"] = space.size();
            break;
        case SpaceKind::analytic2d: {
            j["kind"] = "analytic2d";
            const Rect r = space.rect();
            j["rect"] = {{"x0", r.x0}, {"x1", r.x1}, {"y0", r.y0}, {"y1", r.y1}};
            break;
        }
    }
    return j;
}

SpacePtr space_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) bad_document("space needs a \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "finite") {
        const json& rows = j.at("distances");
        std::vector<std::vector<double>> d;
        d.reserve(rows.size());
        for (const json& row : rows) d.push_back(row.get<std::vector<double>>());
        return MetricSpace::finite(d);
    }
    if (kind == "grid1d")
        return MetricSpace::grid1d(j.at("a").get<double>(), j.at("b").get<double>(), j.at("nodes").get<int>());
    if (kind == "analytic2d") {
        const json& r = j.at("rect");
        return MetricSpace::analytic2d(Rect{r.at("x0").get<double>(), r.at("x1").get<double>(),
                                            r.at("y0").get<double>(), r.at("y1").get<double>()});
    }
    bad_document("unknown space kind \"" + kind + "\"");
}

json to_json(const ExtendedFunction& f) {
    json j;
    j["type"] = "function";
    j["space"] = to_json(*f.space());
    json values = json::array();
    for (int i = 0; i < f.space()->size(); ++i) values.push_back(encode_extended(f.value(i)));
    j["values"] = std::move(values);
    return j;
}

ExtendedFunction function_from_json(const json& j) { return function_from_json(j, space_from_json(j.at("space"))); }

ExtendedFunction function_from_json(const json& j, SpacePtr space) {
    const json& raw = j.at("values");
    std::vector<double> values;
    values.reserve(raw.size());
    for (const json& v : raw) values.push_back(decode_extended(v));
    return ExtendedFunction(std::move(space), std::move(values));
}

json to_json(const Measure& mu) {
    json j;
    j["type"] = "measure";
    j["space"] = to_json(*mu.space());
    j["weights"] = mu.samples();
    return j;
}

Measure measure_from_json(const json& j) {
    SpacePtr space = space_from_json(j.at("space"));
    std::vector<double> w = j.at("weights").get<std::vector<double>>();
    if (space->kind() == SpaceKind::grid1d) return Measure::density(std::move(space), std::move(w));
    return Measure::weights(std::move(space), std::move(w));
}

json to_json(const PointSet& set) {
    json j;
    j["type"] = "point_set";
    j["indices"] = set.indices();
    return j;
}

PointSet point_set_from_json(const json& j, SpacePtr space) {
    return PointSet(std::move(space), j.at("indices").get<std::vector<int>>());
}

json to_json(const ModulusProfile& profile) {
    json j;
    j["type"] = "profile";
    j["kind"] = to_string(profile.kind);
    j["tag"] = profile.tag;
    j["space"] = to_json(*profile.space);
    json values = json::array();
    for (double v : profile.values) values.push_back(encode_extended(v));
    j["values"] = std::move(values);
    if (!profile.stabilization.empty()) {
        json stab = json::array();
        for (double s : profile.stabilization) stab.push_back(encode_extended(s));
        j["stabilization"] = std::move(stab);
    }
    return j;
}

ModulusProfile profile_from_json(const json& j) {
    ModulusProfile out;
    out.space = space_from_json(j.at("space"));
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "local")
        out.kind = ModulusKind::local;
    else if (kind == "global")
        out.kind = ModulusKind::global;
    else if (kind == "average")
        out.kind = ModulusKind::average;
    else if (kind == "diffusion")
        out.kind = ModulusKind::diffusion;
    else if (kind == "composed")
        out.kind = ModulusKind::composed;
    else if (kind == "analytic")
        out.kind = ModulusKind::analytic;
    else
        bad_document("unknown profile kind \"" + kind + "\"");
    out.tag = j.value("tag", kind);
    for (const json& v : j.at("values")) out.values.push_back(decode_extended(v));
    if (j.contains("stabilization"))
        for (const json& s : j.at("stabilization")) out.stabilization.push_back(decode_extended(s));
    return out;
}

}  // namespace slopelab
