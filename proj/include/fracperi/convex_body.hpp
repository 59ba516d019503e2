#pragma once

#include "fracperi/vec2.hpp"

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace fracperi {

/// Origin-symmetric convex polygon. Vertices are counterclockwise, strictly
/// convex, closed under negation, and start at the vertex with the smallest
/// polar angle in [0, 2pi).
struct PolygonBody {
    std::vector<Vec2> vertices;
};

struct BallBody {
    double radius = 1.0;
};

/// Body known only through support values at sample directions. Geometry
/// (gauge, volume) uses the outer polygonal hull {x : u_i . x <= h_i}.
struct SupportBody {
    std::vector<Vec2> directions;
    std::vector<double> values;
    std::string provenance;
};

/// min and max of the gauge on the unit circle, sampled at `directions`
/// equispaced unit vectors plus the vertex and edge-normal directions of
/// polygonal bodies (where the extremes are attained).
struct GaugeExtrema {
    double c1;
    double c2;
};

/// Origin-symmetric convex body in the plane. Instances are only created
/// through the factories, which enforce the invariants of each variant.
class SymmetricBody {
public:
    using Variant = std::variant<PolygonBody, BallBody, SupportBody>;

    /// Symmetrizes, takes the convex hull, drops near-duplicates (1e-12) and
    /// collinear points, and orders the result counterclockwise.
    static SymmetricBody polygon(std::span<const Vec2> vertices);
    static SymmetricBody ball(double radius);
    static SymmetricBody support_backed(std::vector<Vec2> directions, std::vector<double> values,
                                        std::string provenance = {});

    const Variant& variant() const { return body_; }
    bool is_polygon() const { return std::holds_alternative<PolygonBody>(body_); }
    bool is_ball() const { return std::holds_alternative<BallBody>(body_); }
    bool is_support_backed() const { return std::holds_alternative<SupportBody>(body_); }
    const PolygonBody& as_polygon() const { return std::get<PolygonBody>(body_); }
    const BallBody& as_ball() const { return std::get<BallBody>(body_); }
    const SupportBody& as_support() const { return std::get<SupportBody>(body_); }

    /// Outer hull vertices for support-backed bodies (counterclockwise).
    const std::vector<Vec2>& hull() const { return hull_; }

private:
    explicit SymmetricBody(Variant v);

    Variant body_;
    // Edge constraints n_i . x <= c_i of the polygon or outer hull, c_i > 0.
    std::vector<Vec2> normals_;
    std::vector<double> offsets_;
    std::vector<Vec2> hull_;

    friend double gauge(const SymmetricBody&, Vec2);
    friend double support(const SymmetricBody&, Vec2);
    friend GaugeExtrema gauge_extrema(const SymmetricBody&, int);
};

/// ||x||_K = inf{lambda > 0 : x in lambda K}.
double gauge(const SymmetricBody& body, Vec2 x);
/// h_K(v) = max{v . x : x in K}.
double support(const SymmetricBody& body, Vec2 v);
/// Polar body. Throws UnsupportedError for support-backed bodies.
SymmetricBody polar(const SymmetricBody& body);
double volume(const SymmetricBody& body);
/// Integral of |v . x| over K, exact for polygons and balls.
double abs_moment_integral(const SymmetricBody& body, Vec2 v);

/// Moment body sampled at m equispaced directions u_i = (cos 2 pi i/m, sin 2 pi i/m):
/// h_MK(u) = 3/2 int_K |u . x| dx. Requires m >= 16.
SymmetricBody moment_body(const SymmetricBody& body, int m = 720);
/// Moment body scaled by 2 / (3 vol K).
SymmetricBody centroid_body(const SymmetricBody& body, int m = 720);

GaugeExtrema gauge_extrema(const SymmetricBody& body, int directions = 720);

/// Polygon approximating the body: the polygon itself, the outer hull of a
/// support-backed body, or the regular m-gon inscribed in a ball.
std::vector<Vec2> boundary_polygon(const SymmetricBody& body, int ball_vertices = 256);

/// Regular m-gon inscribed in the circle of the given radius, first vertex on +x.
std::vector<Vec2> regular_polygon(int m, double radius = 1.0);

}  // namespace fracperi
