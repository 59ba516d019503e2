#include "fracperi/io.hpp"

#include "fracperi/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fracperi {

namespace {

Json point(Vec2 p) { return Json::array({p.x, p.y}); }

Vec2 read_point(const Json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError("expected a point [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Vec2> read_points(const Json& j)
{
    if (!j.is_array()) throw ValidationError("expected a list of points");
    std::vector<Vec2> out;
    for (const Json& p : j) out.push_back(read_point(p));
    return out;
}

double read_number(const Json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number()) throw ValidationError(std::string("missing numeric field \"") + key + "\"");
    return j[key].get<double>();
}

std::string read_type(const Json& j)
{
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ValidationError("expected an object with a \"type\" field");
    return j["type"].get<std::string>();
}

Json polygon_json(const PolygonRegion& e)
{
    Json loops = Json::array();
    for (const auto& loop : e.loops()) {
        Json l = Json::array();
        for (const Vec2& p : loop) l.push_back(point(p));
        loops.push_back(l);
    }
    return {{"type", "polygon"}, {"loops", loops}};
}

PolygonRegion polygon_from(const Json& j)
{
    if (!j.contains("loops") || !j["loops"].is_array()) throw ValidationError("polygon region needs \"loops\"");
    std::vector<std::vector<Vec2>> loops;
    for (const Json& l : j["loops"]) loops.push_back(read_points(l));
    return PolygonRegion(std::move(loops));
}

}  // namespace

Json body_to_json(const SymmetricBody& k)
{
    return std::visit(
        [](const auto& b) -> Json {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, BallBody>) {
                return {{"type", "ball"}, {"radius", b.radius}};
            } else if constexpr (std::is_same_v<T, PolygonBody>) {
                Json v = Json::array();
                for (const Vec2& p : b.vertices) v.push_back(point(p));
                return {{"type", "polygon"}, {"vertices", v}};
            } else {
                Json d = Json::array();
                for (const Vec2& p : b.directions) d.push_back(point(p));
                return {{"type", "support"}, {"directions", d}, {"values", b.values}, {"provenance", b.provenance}};
            }
        },
        k.variant());
}

SymmetricBody body_from_json(const Json& j)
{
    const std::string type = read_type(j);
    if (type == "ball") return SymmetricBody::ball(read_number(j, "radius"));
    if (type == "polygon") {
        if (!j.contains("vertices")) throw ValidationError("polygon body needs \"vertices\"");
        return SymmetricBody::polygon(read_points(j["vertices"]));
    }
    if (type == "support") {
        if (!j.contains("directions") || !j.contains("values") || !j["values"].is_array())
            throw ValidationError("support body needs \"directions\" and \"values\"");
        std::vector<double> values;
        for (const Json& v : j["values"]) {
            if (!v.is_number()) throw ValidationError("support values must be numbers");
            values.push_back(v.get<double>());
        }
        std::string provenance;
        if (j.contains("provenance") && j["provenance"].is_string()) provenance = j["provenance"].get<std::string>();
        return SymmetricBody::support_backed(read_points(j["directions"]), std::move(values), provenance);
    }
    throw ValidationError("unknown body type \"" + type + "\"");
}

Json region_to_json(const Region& r)
{
    return std::visit(
        [](const auto& e) -> Json {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, IntervalUnion>) {
                Json items = Json::array();
                for (const Interval& iv : e.items()) items.push_back(Json::array({iv.a, iv.b}));
                return {{"type", "intervals"}, {"items", items}};
            } else if constexpr (std::is_same_v<T, PolygonRegion>) {
                return polygon_json(e);
            } else {
                Json rows = Json::array();
                for (int j = e.ny() - 1; j >= 0; --j) {
                    std::string row;
                    for (int i = 0; i < e.nx(); ++i) row += e.at(i, j) ? '1' : '0';
                    rows.push_back(row);
                }
                return {{"type", "pixels"}, {"origin", point(e.origin())}, {"h", e.h()}, {"rows", rows}};
            }
        },
        r);
}

Region region_from_json(const Json& j)
{
    const std::string type = read_type(j);
    if (type == "intervals") {
        if (!j.contains("items") || !j["items"].is_array()) throw ValidationError("interval region needs \"items\"");
        std::vector<Interval> items;
        for (const Json& it : j["items"]) {
            const Vec2 p = read_point(it);
            if (!(p.x < p.y)) throw ValidationError("interval needs a < b");
            items.push_back({p.x, p.y});
        }
        return IntervalUnion(std::move(items));
    }
    if (type == "polygon") return polygon_from(j);
    if (type == "pixels") {
        if (!j.contains("origin") || !j.contains("rows") || !j["rows"].is_array() || j["rows"].empty())
            throw ValidationError("pixel region needs \"origin\", \"h\" and nonempty \"rows\"");
        const int ny = static_cast<int>(j["rows"].size());
        int nx = -1;
        std::vector<std::uint8_t> mask;
        std::vector<std::string> rows;
        for (const Json& r : j["rows"]) {
            if (!r.is_string()) throw ValidationError("pixel rows must be strings");
            rows.push_back(r.get<std::string>());
            if (nx < 0) nx = static_cast<int>(rows.back().size());
            if (static_cast<int>(rows.back().size()) != nx || nx == 0) throw ValidationError("pixel rows must have equal nonzero length");
        }
        mask.assign(static_cast<std::size_t>(nx) * ny, 0);
        for (int r = 0; r < ny; ++r)
            for (int i = 0; i < nx; ++i) {
                const char c = rows[r][i];
                if (c != '0' && c != '1') throw ValidationError("pixel rows may only contain 0 and 1");
                mask[static_cast<std::size_t>(ny - 1 - r) * nx + i] = c == '1';
            }
        return PixelSet(read_point(j["origin"]), read_number(j, "h"), nx, ny, std::move(mask));
    }
    throw ValidationError("unknown region type \"" + type + "\"");
}

Json step_to_json(const StepFunction& f)
{
    Json levels = Json::array();
    for (std::size_t k = 0; k < f.levels(); ++k)
        levels.push_back({{"t", f.thresholds()[k]}, {"region", polygon_json(f.regions()[k])}});
    return {{"type", "step"}, {"levels", levels}};
}

StepFunction step_from_json(const Json& j)
{
    if (read_type(j) != "step") throw ValidationError("expected a step function");
    if (!j.contains("levels") || !j["levels"].is_array()) throw ValidationError("step function needs \"levels\"");
    std::vector<double> t;
    std::vector<PolygonRegion> regions;
    for (const Json& level : j["levels"]) {
        t.push_back(read_number(level, "t"));
        if (!level.contains("region") || read_type(level["region"]) != "polygon")
            throw ValidationError("step levels need a polygon \"region\"");
        regions.push_back(polygon_from(level["region"]));
    }
    return StepFunction(std::move(t), std::move(regions));
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sweep_csv(const SweepResult& r)
{
    std::ostringstream os;
    os << "s,raw,scaled,err_est,target,rel_gap\n";
    // Rows in the order of approach, so the last row is nearest the limit.
    for (std::size_t j = 0; j < r.rows.size(); ++j) {
        const SweepRow& row = r.toward_one ? r.rows[j] : r.rows[r.rows.size() - 1 - j];
        os << format_double(row.s) << ',' << format_double(row.raw) << ',' << format_double(row.scaled) << ','
           << format_double(row.error_estimate) << ',' << format_double(r.target) << ',' << format_double(row.rel_gap) << '\n';
    }
    return os.str();
}

std::string trace_csv(const std::vector<TraceRow>& trace)
{
    std::ostringstream os;
    os << "epoch,temperature,current_ratio,best_ratio,accept_rate\n";
    for (const TraceRow& t : trace)
        os << t.epoch << ',' << format_double(t.temperature) << ',' << format_double(t.current_ratio) << ','
           << format_double(t.best_ratio) << ',' << format_double(t.accept_rate) << '\n';
    return os.str();
}

}  // namespace fracperi
