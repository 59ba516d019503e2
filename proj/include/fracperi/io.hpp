#pragma once

#include "fracperi/convex_body.hpp"
#include "fracperi/frac1d.hpp"
#include "fracperi/isoperimetric.hpp"
#include "fracperi/limits_sobolev.hpp"
#include "fracperi/region.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace fracperi {

using Json = nlohmann::json;
using Region = std::variant<IntervalUnion, PolygonRegion, PixelSet>;

/// {"type":"polygon","vertices":[[x,y],...]} | {"type":"ball","radius":r} |
/// {"type":"support","directions":[[x,y],...],"values":[...],"provenance":"..."}.
Json body_to_json(const SymmetricBody& k);
SymmetricBody body_from_json(const Json& j);

/// {"type":"intervals","items":[[a,b],...]} | {"type":"polygon","loops":[[[x,y],...],...]} |
/// {"type":"pixels","origin":[x,y],"h":h,"rows":["0110",...]} with rows[0] the top row.
Json region_to_json(const Region& r);
Region region_from_json(const Json& j);

/// {"type":"step","levels":[{"t":t_k,"region":{polygon}},...]}.
Json step_to_json(const StepFunction& f);
StepFunction step_from_json(const Json& j);

/// Reads and parses a JSON file; ValidationError on I/O or syntax problems.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// %.17g: round-trips every double.
std::string format_double(double v);

/// s,raw,scaled,err_est,target,rel_gap; rows ordered toward the limit point.
std::string sweep_csv(const SweepResult& r);
/// epoch,temperature,current_ratio,best_ratio,accept_rate
std::string trace_csv(const std::vector<TraceRow>& trace);

}  // namespace fracperi
