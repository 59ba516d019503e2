#include "fracperi/convex_body.hpp"

#include "fracperi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fracperi {
namespace {

constexpr double kDedupTol = 1e-12;
constexpr double kSupportTol = 1e-9;

double polar_angle(Vec2 v)
{
    double a = std::atan2(v.y, v.x);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    return a;
}

// Andrew's monotone chain; strict turns only, so collinear points are dropped.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts, double tol)
{
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<Vec2> unique;
    for (const Vec2& p : pts) {
        if (unique.empty() || norm(p - unique.back()) > tol) unique.push_back(p);
    }
    if (unique.size() < 3) return unique;
    double scale = 0.0;
    for (const Vec2& p : unique) scale = std::max(scale, norm(p));
    const double turn_tol = tol * scale;

    std::vector<Vec2> hull(2 * unique.size());
    std::size_t k = 0;
    for (const Vec2& p : unique) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= turn_tol * norm(p - hull[k - 2])) --k;
        hull[k++] = p;
    }
    for (std::size_t i = unique.size() - 1, lower = k + 1; i-- > 0;) {
        const Vec2 p = unique[i];
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= turn_tol * norm(p - hull[k - 2])) --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    // Wrap-around duplicates can survive when the first and last points coincide within tol.
    while (hull.size() > 1 && norm(hull.front() - hull.back()) <= tol) hull.pop_back();
    return hull;
}

void rotate_to_smallest_angle(std::vector<Vec2>& loop)
{
    auto it = std::min_element(loop.begin(), loop.end(),
                               [](Vec2 a, Vec2 b) { return polar_angle(a) < polar_angle(b); });
    std::rotate(loop.begin(), it, loop.end());
}

double shoelace(std::span<const Vec2> loop)
{
    double a = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) a += cross(loop[i], loop[(i + 1) % loop.size()]);
    return 0.5 * a;
}

// Sutherland-Hodgman clip of a convex loop against {x : v . x >= 0}.
std::vector<Vec2> clip_halfplane(std::span<const Vec2> loop, Vec2 v)
{
    std::vector<Vec2> out;
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = loop[i];
        const Vec2 b = loop[(i + 1) % n];
        const double da = dot(v, a);
        const double db = dot(v, b);
        if (da >= 0.0) out.push_back(a);
        if ((da >= 0.0) != (db >= 0.0)) out.push_back(a + (b - a) * (da / (da - db)));
    }
    return out;
}

// int over the loop of v . x, by fan triangulation.
double linear_moment(std::span<const Vec2> loop, Vec2 v)
{
    double total = 0.0;
    for (std::size_t i = 1; i + 1 < loop.size(); ++i) {
        const Vec2 a = loop[0], b = loop[i], c = loop[i + 1];
        const double area = 0.5 * cross(b - a, c - a);
        total += area * dot(v, a + b + c) / 3.0;
    }
    return total;
}

void edge_constraints(std::span<const Vec2> loop, std::vector<Vec2>& normals, std::vector<double>& offsets)
{
    normals.clear();
    offsets.clear();
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Vec2 d = loop[(i + 1) % loop.size()] - loop[i];
        const Vec2 n = Vec2{d.y, -d.x} / norm(d);
        normals.push_back(n);
        offsets.push_back(dot(n, loop[i]));
    }
}

std::vector<Vec2> support_hull(const SupportBody& sb)
{
    std::vector<Vec2> dual;
    dual.reserve(sb.directions.size());
    for (std::size_t i = 0; i < sb.directions.size(); ++i) dual.push_back(sb.directions[i] / sb.values[i]);
    const std::vector<Vec2> dh = convex_hull(dual, 0.0);
    // Each edge p_a p_b of the dual hull is the polar of a vertex v with p_a . v = p_b . v = 1.
    std::vector<Vec2> hull;
    for (std::size_t i = 0; i < dh.size(); ++i) {
        const Vec2 a = dh[i];
        const Vec2 b = dh[(i + 1) % dh.size()];
        const double det = cross(a, b);
        hull.push_back(Vec2{b.y - a.y, a.x - b.x} / det);
    }
    return hull;
}

void validate_support(const SupportBody& sb)
{
    const std::size_t m = sb.directions.size();
    if (m < 4) throw ValidationError("support-backed body needs at least 4 directions");
    if (sb.values.size() != m) throw ValidationError("support-backed body: directions and values differ in length");
    for (std::size_t i = 0; i < m; ++i) {
        if (!(std::abs(norm(sb.directions[i]) - 1.0) <= kSupportTol))
            throw ValidationError("support-backed body: directions must be unit vectors");
        if (!(sb.values[i] > 0.0) || !std::isfinite(sb.values[i]))
            throw ValidationError("support-backed body: support values must be positive");
    }
    std::vector<double> angles(m);
    for (std::size_t i = 0; i < m; ++i) angles[i] = polar_angle(sb.directions[i]);
    for (std::size_t i = 1; i < m; ++i) {
        if (!(angles[i] > angles[i - 1])) throw ValidationError("support-backed body: duplicate directions");
    }
    // Index of the grid direction matching angle a, or -1.
    auto find_angle = [&](double a) -> long {
        constexpr double tol = 1e-10;
        auto it = std::lower_bound(angles.begin(), angles.end(), a - tol);
        if (it != angles.end() && std::abs(*it - a) <= tol) return it - angles.begin();
        if (a < tol && std::abs(angles.back() - 2.0 * std::numbers::pi - a) <= tol) return static_cast<long>(m) - 1;
        if (a > 2.0 * std::numbers::pi - tol && std::abs(angles.front() + 2.0 * std::numbers::pi - a) <= tol) return 0;
        return -1;
    };
    double hmax = 0.0;
    for (double h : sb.values) hmax = std::max(hmax, h);
    const double tol = kSupportTol * std::max(1.0, hmax);
    for (std::size_t i = 0; i < m; ++i) {
        const long j = find_angle(polar_angle(-sb.directions[i]));
        if (j < 0) throw ValidationError("support-backed body: direction grid is not centrally symmetric");
        if (std::abs(sb.values[i] - sb.values[j]) > tol)
            throw ValidationError("support-backed body: h(-u) != h(u)");
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const Vec2 w = sb.directions[i] + sb.directions[j];
            const double len = norm(w);
            if (len < 1e-9) continue;
            const long k = find_angle(polar_angle(w));
            if (k < 0) continue;
            if (len * sb.values[k] > sb.values[i] + sb.values[j] + tol)
                throw ValidationError("support-backed body: sampled subadditivity violated");
        }
    }
}

}  // namespace

SymmetricBody::SymmetricBody(Variant v) : body_(std::move(v))
{
    if (auto* p = std::get_if<PolygonBody>(&body_)) {
        edge_constraints(p->vertices, normals_, offsets_);
    } else if (auto* s = std::get_if<SupportBody>(&body_)) {
        normals_ = s->directions;
        offsets_ = s->values;
        hull_ = support_hull(*s);
    }
}

SymmetricBody SymmetricBody::polygon(std::span<const Vec2> vertices)
{
    std::vector<Vec2> pts;
    pts.reserve(2 * vertices.size());
    for (const Vec2& v : vertices) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw ValidationError("polygon body: non-finite vertex");
        pts.push_back(v);
        pts.push_back(-v);
    }
    std::vector<Vec2> hull = convex_hull(std::move(pts), kDedupTol);
    if (hull.size() < 4 || !(shoelace(hull) > 0.0))
        throw ValidationError("polygon body: symmetric hull has empty interior");
    rotate_to_smallest_angle(hull);
    return SymmetricBody(PolygonBody{std::move(hull)});
}

SymmetricBody SymmetricBody::ball(double radius)
{
    if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("ball body: radius must be positive");
    return SymmetricBody(BallBody{radius});
}

SymmetricBody SymmetricBody::support_backed(std::vector<Vec2> directions, std::vector<double> values,
                                            std::string provenance)
{
    if (directions.size() != values.size())
        throw ValidationError("support-backed body: directions and values differ in length");
    std::vector<std::size_t> order(directions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return polar_angle(directions[a]) < polar_angle(directions[b]);
    });
    SupportBody sb;
    sb.provenance = std::move(provenance);
    for (std::size_t i : order) {
        sb.directions.push_back(directions[i]);
        sb.values.push_back(values[i]);
    }
    validate_support(sb);
    return SymmetricBody(std::move(sb));
}

double gauge(const SymmetricBody& body, Vec2 x)
{
    if (const auto* b = std::get_if<BallBody>(&body.body_)) return norm(x) / b->radius;
    double g = 0.0;
    for (std::size_t i = 0; i < body.normals_.size(); ++i) g = std::max(g, dot(body.normals_[i], x) / body.offsets_[i]);
    return g;
}

double support(const SymmetricBody& body, Vec2 v)
{
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, BallBody>) {
                return b.radius * norm(v);
            } else {
                const std::vector<Vec2>& verts = [&]() -> const std::vector<Vec2>& {
                    if constexpr (std::is_same_v<T, PolygonBody>) return b.vertices;
                    else return body.hull_;
                }();
                double h = dot(v, verts.front());
                for (const Vec2& p : verts) h = std::max(h, dot(v, p));
                return h;
            }
        },
        body.body_);
}

SymmetricBody polar(const SymmetricBody& body)
{
    if (const auto* b = std::get_if<BallBody>(&body.variant())) return SymmetricBody::ball(1.0 / b->radius);
    if (!body.is_polygon()) throw UnsupportedError("polar: not available for support-backed bodies");
    const auto& verts = body.as_polygon().vertices;
    std::vector<Vec2> normals;
    std::vector<double> offsets;
    edge_constraints(verts, normals, offsets);
    std::vector<Vec2> dual;
    for (std::size_t i = 0; i < normals.size(); ++i) dual.push_back(normals[i] / offsets[i]);
    return SymmetricBody::polygon(dual);
}

double volume(const SymmetricBody& body)
{
    if (const auto* b = std::get_if<BallBody>(&body.variant())) return std::numbers::pi * b->radius * b->radius;
    if (body.is_polygon()) return shoelace(body.as_polygon().vertices);
    return shoelace(body.hull());
}

double abs_moment_integral(const SymmetricBody& body, Vec2 v)
{
    if (const auto* b = std::get_if<BallBody>(&body.variant()))
        return norm(v) * 4.0 / 3.0 * b->radius * b->radius * b->radius;
    if (!body.is_polygon()) throw UnsupportedError("abs_moment_integral: not available for support-backed bodies");
    const auto& verts = body.as_polygon().vertices;
    const double plus = linear_moment(clip_halfplane(verts, v), v);
    const double minus = linear_moment(clip_halfplane(verts, -v), -v);
    return plus + minus;
}

SymmetricBody moment_body(const SymmetricBody& body, int m)
{
    if (m < 16) throw ParameterError("moment_body: need at least 16 directions");
    if (body.is_support_backed()) throw UnsupportedError("moment_body: not available for support-backed bodies");
    std::vector<Vec2> dirs;
    std::vector<double> vals;
    dirs.reserve(m);
    vals.reserve(m);
    for (int i = 0; i < m; ++i) {
        const Vec2 u = unit_from_angle(2.0 * std::numbers::pi * i / m);
        dirs.push_back(u);
        vals.push_back(1.5 * abs_moment_integral(body, u));
    }
    return SymmetricBody::support_backed(std::move(dirs), std::move(vals), "moment");
}

SymmetricBody centroid_body(const SymmetricBody& body, int m)
{
    SymmetricBody mk = moment_body(body, m);
    const double scale = 2.0 / (3.0 * volume(body));
    SupportBody sb = mk.as_support();
    for (double& h : sb.values) h *= scale;
    return SymmetricBody::support_backed(std::move(sb.directions), std::move(sb.values), "centroid");
}

GaugeExtrema gauge_extrema(const SymmetricBody& body, int directions)
{
    GaugeExtrema e{gauge(body, {1.0, 0.0}), gauge(body, {1.0, 0.0})};
    auto visit = [&](Vec2 u) {
        const double g = gauge(body, u / norm(u));
        e.c1 = std::min(e.c1, g);
        e.c2 = std::max(e.c2, g);
    };
    for (int i = 1; i < directions; ++i) visit(unit_from_angle(2.0 * std::numbers::pi * i / directions));
    // The extremes of a polygonal gauge sit at vertex and edge-normal directions.
    if (!body.is_ball()) {
        for (const Vec2& v : boundary_polygon(body)) visit(v);
        for (const Vec2& n : body.normals_) visit(n);
    }
    return e;
}

std::vector<Vec2> regular_polygon(int m, double radius)
{
    std::vector<Vec2> pts;
    pts.reserve(m);
    for (int i = 0; i < m; ++i) pts.push_back(radius * unit_from_angle(2.0 * std::numbers::pi * i / m));
    return pts;
}

std::vector<Vec2> boundary_polygon(const SymmetricBody& body, int ball_vertices)
{
    if (const auto* b = std::get_if<BallBody>(&body.variant())) return regular_polygon(ball_vertices, b->radius);
    if (body.is_polygon()) return body.as_polygon().vertices;
    return body.hull();
}

}  // namespace fracperi
