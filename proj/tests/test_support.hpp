#pragma once

// Shared generators for the test suites.

#include "fracperi/convex_body.hpp"
#include "fracperi/frac1d.hpp"
#include "fracperi/region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace fracperi::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Up to four disjoint intervals in [-3, 3], gaps and lengths >= 1e-3.
inline IntervalUnion random_union(std::mt19937_64& rng)
{
    const int m = 1 + static_cast<int>(rng() % 4);
    std::vector<double> pts;
    for (int i = 0; i < 2 * m; ++i) pts.push_back(uniform(rng, -3.0, 3.0));
    std::sort(pts.begin(), pts.end());
    std::vector<Interval> items;
    for (int i = 0; i < m; ++i) {
        if (pts[2 * i + 1] - pts[2 * i] < 1e-3) continue;
        if (!items.empty() && pts[2 * i] - items.back().b < 1e-3) continue;
        items.push_back({pts[2 * i], pts[2 * i + 1]});
    }
    if (items.empty()) items.push_back({0.0, 1.0});
    return IntervalUnion(items);
}

inline SymmetricBody random_polygon_body(std::mt19937_64& rng)
{
    const int n = 2 + static_cast<int>(rng() % 6);
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) {
        const double r = uniform(rng, 0.5, 2.0);
        const double a = uniform(rng, 0.0, std::numbers::pi);
        pts.push_back(r * unit_from_angle(a));
    }
    pts.push_back({0.3, 0.0});
    pts.push_back({0.0, 0.3});
    return SymmetricBody::polygon(pts);
}

/// Convex polygon (counterclockwise) with vertices at sorted random angles.
inline std::vector<Vec2> random_convex_loop(std::mt19937_64& rng, int n, Vec2 center = {})
{
    std::vector<double> angles;
    for (int i = 0; i < n; ++i) angles.push_back(uniform(rng, 0.0, 2.0 * std::numbers::pi));
    std::sort(angles.begin(), angles.end());
    std::vector<Vec2> loop;
    for (double a : angles) loop.push_back(center + unit_from_angle(a) * uniform(rng, 0.8, 1.2));
    // Keep only the convex hull so the loop is convex and simple.
    std::vector<Vec2> hull;
    std::sort(loop.begin(), loop.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<Vec2> h(2 * loop.size());
    std::size_t k = 0;
    for (const Vec2& p : loop) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], p - h[k - 2]) <= 1e-9) --k;
        h[k++] = p;
    }
    for (std::size_t i = loop.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 1] - h[k - 2], loop[i] - h[k - 2]) <= 1e-9) --k;
        h[k++] = loop[i];
    }
    h.resize(k - 1);
    return h;
}

/// Star-shaped (generally non-convex) loop around `center`.
inline std::vector<Vec2> random_star_loop(std::mt19937_64& rng, int n, Vec2 center = {})
{
    std::vector<Vec2> loop;
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * std::numbers::pi * (i + uniform(rng, -0.3, 0.3)) / n;
        loop.push_back(center + unit_from_angle(a) * uniform(rng, 0.4, 1.5));
    }
    return loop;
}

inline PolygonRegion square_region(double half = 1.0, Vec2 c = {})
{
    return PolygonRegion({{c + Vec2{-half, -half}, c + Vec2{half, -half}, c + Vec2{half, half}, c + Vec2{-half, half}}});
}

inline PolygonRegion square_with_hole()
{
    return PolygonRegion({{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, {{-0.5, -0.5}, {-0.5, 0.5}, {0.5, 0.5}, {0.5, -0.5}}});
}

inline PolygonRegion l_hexagon()
{
    return PolygonRegion({{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}});
}

inline SymmetricBody square_body() { return SymmetricBody::polygon(std::vector<Vec2>{{1, 1}, {1, -1}}); }
inline SymmetricBody diamond_body() { return SymmetricBody::polygon(std::vector<Vec2>{{1, 0}, {0, 1}}); }

}  // namespace fracperi::testing
