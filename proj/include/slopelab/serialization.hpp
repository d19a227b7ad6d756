#pragma once

#include <json.hpp>

#include "slopelab/extended_function.hpp"
#include "slopelab/metric_space.hpp"
#include "slopelab/moduli.hpp"
#include "slopelab/point_set.hpp"

namespace slopelab {

using json = nlohmann::ordered_json;

// Extended reals: finite doubles encode as JSON numbers (shortest exact
// round-trip), +inf as the string "inf".
json encode_extended(double v);
double decode_extended(const json& j);

json to_json(const MetricSpace& space);
SpacePtr space_from_json(const json& j);

json to_json(const ExtendedFunction& f);
ExtendedFunction function_from_json(const json& j);
ExtendedFunction function_from_json(const json& j, SpacePtr space);

json to_json(const Measure& mu);
Measure measure_from_json(const json& j);

json to_json(const PointSet& set);
PointSet point_set_from_json(const json& j, SpacePtr space);

json to_json(const ModulusProfile& profile);
ModulusProfile profile_from_json(const json& j);

}  // namespace slopelab
