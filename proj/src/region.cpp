#include "fracperi/region.hpp"

#include "fracperi/errors.hpp"
#include "region_detail.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace fracperi {
namespace {

constexpr double kMinEdge = 1e-12;

double loop_signed_area(std::span<const Vec2> loop)
{
    double a = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) a += cross(loop[i], loop[(i + 1) % loop.size()]);
    return 0.5 * a;
}

int orientation(Vec2 a, Vec2 b, Vec2 c)
{
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
}

bool on_segment_interior(Vec2 a, Vec2 b, Vec2 p)
{
    if (p == a || p == b) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

// True if the segments share anything other than common endpoints.
bool segments_conflict(const Segment& s, const Segment& t)
{
    const int o1 = orientation(s.a, s.b, t.a);
    const int o2 = orientation(s.a, s.b, t.b);
    const int o3 = orientation(t.a, t.b, s.a);
    const int o4 = orientation(t.a, t.b, s.b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && on_segment_interior(s.a, s.b, t.a)) return true;
    if (o2 == 0 && on_segment_interior(s.a, s.b, t.b)) return true;
    if (o3 == 0 && on_segment_interior(t.a, t.b, s.a)) return true;
    if (o4 == 0 && on_segment_interior(t.a, t.b, s.b)) return true;
    // Identical segments (either direction) overlap.
    if ((s.a == t.a && s.b == t.b) || (s.a == t.b && s.b == t.a)) return true;
    return false;
}

double point_segment_distance(Vec2 p, const Segment& e)
{
    const Vec2 d = e.b - e.a;
    const double len2 = dot(d, d);
    double t = len2 > 0.0 ? dot(p - e.a, d) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (e.a + d * t));
}

// Signed offsets perp(u) . p of all vertices.
std::vector<double> vertex_offsets(const PolygonRegion& e, Vec2 u)
{
    std::vector<double> out;
    const Vec2 n = perp(u);
    for (const auto& loop : e.loops())
        for (const Vec2& p : loop) out.push_back(dot(n, p));
    return out;
}

}  // namespace

PolygonRegion::PolygonRegion(std::vector<std::vector<Vec2>> loops) : loops_(std::move(loops))
{
    if (loops_.empty()) throw ValidationError("polygon region: no loops");
    lo_ = hi_ = loops_.front().empty() ? Vec2{} : loops_.front().front();
    double total = 0.0;
    for (const auto& loop : loops_) {
        if (loop.size() < 3) throw ValidationError("polygon region: loop with fewer than 3 vertices");
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const Vec2 a = loop[i];
            const Vec2 b = loop[(i + 1) % loop.size()];
            if (!std::isfinite(a.x) || !std::isfinite(a.y)) throw ValidationError("polygon region: non-finite vertex");
            if (!(norm(b - a) > kMinEdge)) throw ValidationError("polygon region: edge shorter than 1e-12");
            edges_.push_back({a, b});
            lo_ = {std::min(lo_.x, a.x), std::min(lo_.y, a.y)};
            hi_ = {std::max(hi_.x, a.x), std::max(hi_.y, a.y)};
        }
        total += loop_signed_area(loop);
    }
    if (!(total > 0.0)) throw ValidationError("polygon region: total area must be positive");
    for (std::size_t i = 0; i < edges_.size(); ++i)
        for (std::size_t j = i + 1; j < edges_.size(); ++j)
            if (segments_conflict(edges_[i], edges_[j]))
                throw ValidationError("polygon region: boundary edges cross or overlap");
    diameter_ = norm(hi_ - lo_);
    // Orientation convention: material immediately left of every loop, void to the right.
    for (const auto& loop : loops_) {
        const Vec2 a = loop[0], b = loop[1];
        const Vec2 mid = 0.5 * (a + b);
        const Vec2 left = perp((b - a) / norm(b - a)) * (1e-7 * norm(b - a));
        if (!contains(*this, mid + left) || contains(*this, mid - left))
            throw ValidationError("polygon region: loops must be CCW for material and CW for holes");
    }
}

PolygonRegion PolygonRegion::transformed(double a11, double a12, double a21, double a22, Vec2 shift) const
{
    const double det = a11 * a22 - a12 * a21;
    if (det == 0.0) throw ParameterError("transform must be invertible");
    std::vector<std::vector<Vec2>> out;
    for (const auto& loop : loops_) {
        std::vector<Vec2> l;
        for (const Vec2& p : loop) l.push_back(Vec2{a11 * p.x + a12 * p.y, a21 * p.x + a22 * p.y} + shift);
        if (det < 0.0) std::reverse(l.begin(), l.end());
        out.push_back(std::move(l));
    }
    return PolygonRegion(std::move(out));
}

PixelSet::PixelSet(Vec2 origin, double h, int nx, int ny, std::vector<std::uint8_t> mask)
    : origin_(origin), h_(h), nx_(nx), ny_(ny), mask_(std::move(mask))
{
    if (!(h_ > 0.0)) throw ValidationError("pixel set: cell size must be positive");
    if (nx_ < 1 || ny_ < 1) throw ValidationError("pixel set: grid must be at least 1x1");
    if (mask_.size() != static_cast<std::size_t>(nx_) * ny_) throw ValidationError("pixel set: mask size mismatch");
    if (count() == 0) throw ValidationError("pixel set: no cells set");
}

std::size_t PixelSet::count() const
{
    return static_cast<std::size_t>(std::count_if(mask_.begin(), mask_.end(), [](std::uint8_t v) { return v != 0; }));
}

double area(const PolygonRegion& e)
{
    double a = 0.0;
    for (const auto& loop : e.loops()) a += loop_signed_area(loop);
    return a;
}

double area(const PixelSet& e)
{
    return e.h() * e.h() * static_cast<double>(e.count());
}

double perimeter(const PolygonRegion& e)
{
    double p = 0.0;
    for (const Segment& s : e.edges()) p += norm(s.b - s.a);
    return p;
}

Vec2 centroid(const PolygonRegion& e)
{
    Vec2 m{};
    for (const auto& loop : e.loops()) {
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const Vec2 a = loop[i], b = loop[(i + 1) % loop.size()];
            m += (a + b) * (cross(a, b) / 6.0);
        }
    }
    return m / area(e);
}

bool contains(const PolygonRegion& e, Vec2 p)
{
    bool inside = false;
    for (const Segment& s : e.edges()) {
        if ((s.a.y > p.y) != (s.b.y > p.y)) {
            const double x = s.a.x + (p.y - s.a.y) * (s.b.x - s.a.x) / (s.b.y - s.a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

double distance_to_boundary(const PolygonRegion& e, Vec2 p)
{
    double d = std::numeric_limits<double>::infinity();
    for (const Segment& s : e.edges()) d = std::min(d, point_segment_distance(p, s));
    return d;
}

double anisotropic_perimeter(const PolygonRegion& e, const SymmetricBody& body)
{
    double total = 0.0;
    for (const Segment& s : e.edges()) {
        const Vec2 d = s.b - s.a;
        const double len = norm(d);
        total += len * support(body, Vec2{d.y, -d.x} / len);
    }
    return total;
}

LineSlice line_intersection(const PolygonRegion& e, const Line& line)
{
    if (std::abs(norm(line.u) - 1.0) > 1e-12) throw ParameterError("line direction must be a unit vector");
    const std::vector<double> offsets = vertex_offsets(e, line.u);
    const double nudge = 1e-9 * e.diameter();
    LineSlice out;
    out.offset_used = line.offset;
    auto grazes = [&](double y) {
        return std::any_of(offsets.begin(), offsets.end(),
                           [&](double o) { return std::abs(o - y) <= 1e-14 * std::max(1.0, e.diameter()); });
    };
    for (int tries = 0; grazes(out.offset_used) && tries < 16; ++tries) {
        out.offset_used += nudge;
        out.perturbed = true;
    }
    const Vec2 n = perp(line.u);
    std::vector<double> ts;
    for (const Segment& s : e.edges()) {
        const double sa = dot(n, s.a) - out.offset_used;
        const double sb = dot(n, s.b) - out.offset_used;
        if ((sa > 0.0) != (sb > 0.0)) {
            const Vec2 p = s.a + (s.b - s.a) * (sa / (sa - sb));
            ts.push_back(dot(line.u, p));
        }
    }
    std::sort(ts.begin(), ts.end());
    if (ts.size() % 2 != 0) throw NumericalError("line_intersection: odd crossing count");
    std::vector<Interval> items;
    for (std::size_t i = 0; i + 1 < ts.size(); i += 2)
        if (ts[i + 1] > ts[i]) items.push_back({ts[i], ts[i + 1]});
    out.intervals = IntervalUnion(std::move(items));
    return out;
}

std::vector<Interval> ray_complement_segments(const PolygonRegion& e, Vec2 x, Vec2 u)
{
    if (std::abs(norm(u) - 1.0) > 1e-12) throw ParameterError("ray direction must be a unit vector");
    if (!contains(e, x) || distance_to_boundary(e, x) <= 1e-12)
        throw ParameterError("ray_complement_segments: base point must lie strictly inside the region");
    std::vector<double> r;
    detail::ray_crossings(e.edges(), x, u, r);
    std::vector<Interval> out;
    for (std::size_t i = 0; i < r.size(); i += 2) {
        const double b = i + 1 < r.size() ? r[i + 1] : std::numeric_limits<double>::infinity();
        out.push_back({r[i], b});
    }
    if (out.empty() || std::isfinite(out.back().b))
        throw NumericalError("ray_complement_segments: inconsistent crossing parity");
    return out;
}

DirectionalVariation directional_variation(const PolygonRegion& e, Vec2 u)
{
    DirectionalVariation dv{0.0, 0.0};
    for (const Segment& s : e.edges()) dv.boundary_side += std::abs(cross(u, s.b - s.a));

    std::vector<double> events = vertex_offsets(e, u);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    const Vec2 n = perp(u);
    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
        const double mid = 0.5 * (events[k] + events[k + 1]);
        int count = 0;
        for (const Segment& s : e.edges()) {
            const double sa = dot(n, s.a), sb = dot(n, s.b);
            if (std::min(sa, sb) < mid && mid < std::max(sa, sb)) ++count;
        }
        dv.crossing_side += count * (events[k + 1] - events[k]);
    }
    return dv;
}

PolygonRegion pixels_to_polygon(const PixelSet& e)
{
    struct P {
        int i, j;
        bool operator<(const P& o) const { return i < o.i || (i == o.i && j < o.j); }
        bool operator==(const P& o) const = default;
    };
    struct DirEdge {
        P from, to;
        bool used = false;
    };
    auto filled = [&](int i, int j) { return i >= 0 && j >= 0 && i < e.nx() && j < e.ny() && e.at(i, j); };
    std::vector<DirEdge> edges;
    for (int j = 0; j < e.ny(); ++j) {
        for (int i = 0; i < e.nx(); ++i) {
            if (!e.at(i, j)) continue;
            if (!filled(i, j - 1)) edges.push_back({{i, j}, {i + 1, j}});
            if (!filled(i + 1, j)) edges.push_back({{i + 1, j}, {i + 1, j + 1}});
            if (!filled(i, j + 1)) edges.push_back({{i + 1, j + 1}, {i, j + 1}});
            if (!filled(i - 1, j)) edges.push_back({{i, j + 1}, {i, j}});
        }
    }
    std::map<P, std::vector<std::size_t>> outgoing;
    for (std::size_t k = 0; k < edges.size(); ++k) outgoing[edges[k].from].push_back(k);

    std::vector<std::vector<Vec2>> loops;
    for (std::size_t start = 0; start < edges.size(); ++start) {
        if (edges[start].used) continue;
        std::vector<P> chain;
        std::size_t cur = start;
        while (!edges[cur].used) {
            edges[cur].used = true;
            chain.push_back(edges[cur].from);
            const P at = edges[cur].to;
            const int dx = at.i - edges[cur].from.i, dy = at.j - edges[cur].from.j;
            // Prefer the leftmost turn so diagonal neighbours stay in separate loops.
            std::size_t next = cur;
            int best = -2;
            for (std::size_t k : outgoing[at]) {
                if (edges[k].used && k != start) continue;
                const int ex = edges[k].to.i - at.i, ey = edges[k].to.j - at.j;
                const int turn = dx * ey - dy * ex;   // +1 left, 0 straight, -1 right
                const int rank = (dx * ex + dy * ey < 0) ? -2 : turn;
                if (rank > best) {
                    best = rank;
                    next = k;
                }
            }
            cur = next;
        }
        // Drop collinear vertices.
        std::vector<P> simplified;
        const std::size_t n = chain.size();
        for (std::size_t k = 0; k < n; ++k) {
            const P a = chain[(k + n - 1) % n], b = chain[k], c = chain[(k + 1) % n];
            const long cr = static_cast<long>(b.i - a.i) * (c.j - b.j) - static_cast<long>(b.j - a.j) * (c.i - b.i);
            if (cr != 0) simplified.push_back(b);
        }
        std::vector<Vec2> loop;
        for (const P& p : simplified) loop.push_back(e.origin() + Vec2{p.i * e.h(), p.j * e.h()});
        loops.push_back(std::move(loop));
    }
    return PolygonRegion(std::move(loops));
}

double clipped_area(std::span<const Vec2> subject, std::span<const Vec2> clip)
{
    std::vector<Vec2> poly(subject.begin(), subject.end());
    if (loop_signed_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
    for (std::size_t k = 0; k < clip.size() && !poly.empty(); ++k) {
        const Vec2 a = clip[k], b = clip[(k + 1) % clip.size()];
        std::vector<Vec2> out;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Vec2 p = poly[i], q = poly[(i + 1) % poly.size()];
            const double dp = cross(b - a, p - a), dq = cross(b - a, q - a);
            if (dp >= 0.0) out.push_back(p);
            if ((dp >= 0.0) != (dq >= 0.0)) out.push_back(p + (q - p) * (dp / (dp - dq)));
        }
        poly = std::move(out);
    }
    return poly.size() < 3 ? 0.0 : std::abs(loop_signed_area(poly));
}

namespace detail {

void ray_crossings(std::span<const Segment> edges, Vec2 x, Vec2 u, std::vector<double>& out)
{
    out.clear();
    for (const Segment& s : edges) {
        const double sa = cross(u, s.a - x);
        const double sb = cross(u, s.b - x);
        if ((sa > 0.0) != (sb > 0.0)) {
            const Vec2 p = s.a + (s.b - s.a) * (sa / (sa - sb));
            const double r = dot(u, p - x);
            if (r > 0.0) out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
}

double radial_kernel(std::span<const Segment> edges, Vec2 x, Vec2 u, double s, std::vector<double>& scratch)
{
    ray_crossings(edges, x, u, scratch);
    double total = 0.0;
    for (std::size_t i = 0; i < scratch.size(); ++i) {
        const double term = std::exp(-s * std::log(scratch[i]));
        total += (i % 2 == 0) ? term : -term;
    }
    return total / s;
}

}  // namespace detail
}  // namespace fracperi
