#pragma once

#include "fracperi/convex_body.hpp"
#include "fracperi/frac1d.hpp"
#include "fracperi/vec2.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace fracperi {

struct Segment {
    Vec2 a;
    Vec2 b;
};

/// Planar region bounded by simple polygonal loops. Counterclockwise loops
/// carry material, clockwise loops are holes; membership is even-odd. Loops
/// may touch at vertices but never cross.
class PolygonRegion {
public:
    PolygonRegion() = default;
    /// Validates: >= 3 vertices per loop, edges longer than 1e-12, no proper
    /// crossings or overlaps, positive total area.
    explicit PolygonRegion(std::vector<std::vector<Vec2>> loops);

    const std::vector<std::vector<Vec2>>& loops() const { return loops_; }
    /// Boundary edges oriented so that material lies on the left.
    const std::vector<Segment>& edges() const { return edges_; }
    double diameter() const { return diameter_; }
    Vec2 bbox_min() const { return lo_; }
    Vec2 bbox_max() const { return hi_; }

    PolygonRegion transformed(double a11, double a12, double a21, double a22, Vec2 shift = {}) const;
    PolygonRegion scaled(double lambda) const { return transformed(lambda, 0, 0, lambda); }
    PolygonRegion translated(Vec2 shift) const { return transformed(1, 0, 0, 1, shift); }

private:
    std::vector<std::vector<Vec2>> loops_;
    std::vector<Segment> edges_;
    Vec2 lo_{}, hi_{};
    double diameter_ = 0.0;
};

/// Closed union of grid cells [ox + i h, ox + (i+1) h] x [oy + j h, oy + (j+1) h].
/// Cell (i, j) is stored at mask[j * nx + i]; j = 0 is the bottom row.
class PixelSet {
public:
    PixelSet(Vec2 origin, double h, int nx, int ny, std::vector<std::uint8_t> mask);

    Vec2 origin() const { return origin_; }
    double h() const { return h_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    bool at(int i, int j) const { return mask_[static_cast<std::size_t>(j) * nx_ + i] != 0; }
    void set(int i, int j, bool v) { mask_[static_cast<std::size_t>(j) * nx_ + i] = v ? 1 : 0; }
    const std::vector<std::uint8_t>& mask() const { return mask_; }
    std::size_t count() const;
    Vec2 cell_center(int i, int j) const { return origin_ + Vec2{(i + 0.5) * h_, (j + 0.5) * h_}; }

private:
    Vec2 origin_;
    double h_;
    int nx_;
    int ny_;
    std::vector<std::uint8_t> mask_;
};

/// Line {offset * perp(u) + t u : t real}; u is a unit vector.
struct Line {
    Vec2 u;
    double offset;
};

struct LineSlice {
    IntervalUnion intervals;
    /// True when the offset was nudged off a vertex to avoid a grazing configuration.
    bool perturbed = false;
    double offset_used = 0.0;
};

struct DirectionalVariation {
    double boundary_side;   ///< sum over edges of |u . nu_e| len_e
    double crossing_side;   ///< int over the projection of crossing counts
};

double area(const PolygonRegion& e);
double area(const PixelSet& e);
double perimeter(const PolygonRegion& e);
Vec2 centroid(const PolygonRegion& e);
/// Even-odd membership; points on the boundary may go either way.
bool contains(const PolygonRegion& e, Vec2 p);
double distance_to_boundary(const PolygonRegion& e, Vec2 p);

/// sum over boundary edges of length * h_L(outer unit normal).
double anisotropic_perimeter(const PolygonRegion& e, const SymmetricBody& body);

/// Parametric intervals (along u) of the line where the region is material.
LineSlice line_intersection(const PolygonRegion& e, const Line& line);

/// Complement segments (a_k, b_k) along the ray x + r u, r > 0; the last one
/// has b = +infinity. x must lie strictly inside.
std::vector<Interval> ray_complement_segments(const PolygonRegion& e, Vec2 x, Vec2 u);

DirectionalVariation directional_variation(const PolygonRegion& e, Vec2 u);

/// Traces cell boundaries into loops; pinch vertices are resolved by keeping
/// touching components as separate loops.
PolygonRegion pixels_to_polygon(const PixelSet& e);

/// Area of the intersection of a polygon loop (any orientation handled as
/// absolute area) with a convex counterclockwise polygon.
double clipped_area(std::span<const Vec2> subject, std::span<const Vec2> convex_clip);

}  // namespace fracperi
