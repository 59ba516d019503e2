#include "fracperi/frac_perimeter.hpp"

#include "fracperi/errors.hpp"
#include "fracperi/frac1d.hpp"
#include "fracperi/parallel.hpp"
#include "fracperi/quadrature.hpp"
#include "region_detail.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <tuple>

namespace fracperi {

void QuadratureSpec::validate() const
{
    if (n_theta < 32 || n_theta % 2 != 0) throw ParameterError("n_theta must be even and >= 32");
    if (offsets_per_segment < 2) throw ParameterError("offsets_per_segment must be >= 2");
    if (!(grading_exponent >= 1.0)) throw ParameterError("grading_exponent must be >= 1");
    if (area_refinement < 2) throw ParameterError("area_refinement must be >= 2");
    if (!(rel_tol > 0.0 && rel_tol <= 0.1)) throw ParameterError("rel_tol must lie in (0, 0.1]");
}

namespace {

constexpr int kMaxRefinements = 2;

double sum_in_order(const std::vector<double>& v)
{
    double total = 0.0;
    for (double x : v) total += x;
    return total;
}

std::vector<double> angular_weights(const SymmetricBody& k, double s, int count, double start, double span)
{
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) {
        const Vec2 u = unit_from_angle(start + span * i / count);
        g[i] = std::exp(-(2.0 + s) * std::log(gauge(k, u)));
    }
    return g;
}

// ---- line (Blaschke-Petkantschin) quadrature ----

struct BpResult {
    double value;
    long offset_nodes;
};

BpResult bp_pass(const PolygonRegion& e, const SymmetricBody& k, double s, int n_theta, int n_off, double grading)
{
    const int n_half = n_theta / 2;
    const std::vector<double> g = angular_weights(k, s, n_half, 0.0, std::numbers::pi);
    const Rule1D& rule = graded_unit_rule(n_off, grading);
    const auto& edges = e.edges();
    const double tiny = 1e-15 * std::max(1.0, e.diameter());

    std::vector<double> per_dir(n_half);
    std::vector<long> nodes(n_half);
    parallel_for(static_cast<std::size_t>(n_half), [&](std::size_t idx) {
        const Vec2 u = unit_from_angle(std::numbers::pi * static_cast<double>(idx) / n_half);
        const Vec2 n = perp(u);
        const std::size_t ne = edges.size();
        std::vector<double> sa(ne), sb(ne), ta(ne), tb(ne);
        std::vector<double> events;
        events.reserve(2 * ne);
        for (std::size_t i = 0; i < ne; ++i) {
            sa[i] = dot(n, edges[i].a);
            sb[i] = dot(n, edges[i].b);
            ta[i] = dot(u, edges[i].a);
            tb[i] = dot(u, edges[i].b);
            events.push_back(sa[i]);
        }
        std::sort(events.begin(), events.end());
        events.erase(std::unique(events.begin(), events.end()), events.end());

        std::vector<std::pair<double, std::size_t>> active;
        std::vector<double> endpoints;
        double f = 0.0;
        long count = 0;
        for (std::size_t m = 0; m + 1 < events.size(); ++m) {
            const double y0 = events[m], y1 = events[m + 1];
            if (y1 - y0 <= tiny) continue;
            const double mid = 0.5 * (y0 + y1);
            active.clear();
            for (std::size_t i = 0; i < ne; ++i) {
                if (std::min(sa[i], sb[i]) < mid && mid < std::max(sa[i], sb[i])) {
                    const double lam = (mid - sa[i]) / (sb[i] - sa[i]);
                    active.emplace_back(ta[i] + lam * (tb[i] - ta[i]), i);
                }
            }
            if (active.empty()) continue;
            std::sort(active.begin(), active.end());
            endpoints.resize(active.size());
            double seg = 0.0;
            for (std::size_t r = 0; r < rule.nodes.size(); ++r) {
                const double y = y0 + (y1 - y0) * rule.nodes[r];
                for (std::size_t a = 0; a < active.size(); ++a) {
                    const std::size_t i = active[a].second;
                    const double lam = (y - sa[i]) / (sb[i] - sa[i]);
                    endpoints[a] = ta[i] + lam * (tb[i] - ta[i]);
                }
                seg += rule.weights[r] * line_energy(endpoints, s);
            }
            f += (y1 - y0) * seg;
            count += static_cast<long>(rule.nodes.size());
        }
        per_dir[idx] = g[idx] * f;
        nodes[idx] = count;
    });
    long total_nodes = 0;
    for (long c : nodes) total_nodes += c;
    return {std::numbers::pi / n_half * sum_in_order(per_dir), total_nodes};
}

// ---- ray-casting quadrature ----

struct AreaPiece {
    double x0, x1;
    Segment lower, upper;
    double eta0, eta1;
    bool sing_left, sing_right, sing_bottom, sing_top;
};

double y_at(const Segment& s, double x)
{
    return s.a.y + (x - s.a.x) * (s.b.y - s.a.y) / (s.b.x - s.a.x);
}

// Vertical slab decomposition into trapezoids, each split at boundary vertices
// lying inside its vertical sides so that singular sides are whole sides.
std::vector<AreaPiece> area_pieces(const PolygonRegion& e)
{
    const auto& edges = e.edges();
    std::vector<double> xs;
    std::vector<Vec2> verts;
    for (const auto& loop : e.loops())
        for (const Vec2& p : loop) {
            xs.push_back(p.x);
            verts.push_back(p);
        }
    // Vertices whose abscissae differ only by rounding share one slab wall.
    const double tol = 1e-12 * std::max(1.0, e.diameter());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(), [&](double l, double r) { return r - l <= tol; }), xs.end());
    auto on_wall = [&](double vx, double x) { return std::abs(vx - x) <= tol; };

    auto vertical_covers = [&](double x, double y) {
        for (const Segment& s : edges)
            if (on_wall(s.a.x, x) && on_wall(s.b.x, x) && std::min(s.a.y, s.b.y) < y && y < std::max(s.a.y, s.b.y))
                return true;
        return false;
    };

    std::vector<AreaPiece> pieces;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double x0 = xs[k], x1 = xs[k + 1];
        const double xm = 0.5 * (x0 + x1);
        std::vector<std::pair<double, const Segment*>> crossing;
        for (const Segment& s : edges)
            if (std::min(s.a.x, s.b.x) < xm && xm < std::max(s.a.x, s.b.x)) crossing.emplace_back(y_at(s, xm), &s);
        std::sort(crossing.begin(), crossing.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        for (std::size_t c = 0; c + 1 < crossing.size(); c += 2) {
            const Segment lo = *crossing[c].second;
            const Segment hi = *crossing[c + 1].second;
            const double l0 = y_at(lo, x0), u0 = y_at(hi, x0);
            const double l1 = y_at(lo, x1), u1 = y_at(hi, x1);
            std::vector<double> cuts{0.0, 1.0};
            for (const Vec2& v : verts) {
                if (on_wall(v.x, x0) && l0 + tol < v.y && v.y < u0 - tol) cuts.push_back((v.y - l0) / (u0 - l0));
                if (on_wall(v.x, x1) && l1 + tol < v.y && v.y < u1 - tol) cuts.push_back((v.y - l1) / (u1 - l1));
            }
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                const double ea = cuts[i], eb = cuts[i + 1];
                const double em = 0.5 * (ea + eb);
                AreaPiece p{x0, x1, lo, hi, ea, eb, false, false, ea == 0.0, eb == 1.0};
                p.sing_left = u0 > l0 && vertical_covers(x0, l0 + em * (u0 - l0));
                p.sing_right = u1 > l1 && vertical_covers(x1, l1 + em * (u1 - l1));
                pieces.push_back(p);
            }
        }
    }
    return pieces;
}

struct RayResult {
    double value;
    long area_nodes;
};

RayResult ray_pass(const PolygonRegion& e, const SymmetricBody& k, double s, int n_theta, int n_area,
                   const std::vector<AreaPiece>& pieces)
{
    const std::vector<double> g = angular_weights(k, s, n_theta, 0.0, 2.0 * std::numbers::pi);
    std::vector<Vec2> dirs(n_theta);
    for (int i = 0; i < n_theta; ++i) dirs[i] = unit_from_angle(2.0 * std::numbers::pi * i / n_theta);
    const double dtheta = 2.0 * std::numbers::pi / n_theta;
    const auto& edges = e.edges();

    std::vector<double> per_piece(pieces.size());
    parallel_for(pieces.size(), [&](std::size_t pi) {
        const AreaPiece& p = pieces[pi];
        const double a = p.sing_left ? -s : 0.0, b = p.sing_right ? -s : 0.0;
        const double c = p.sing_bottom ? -s : 0.0, d = p.sing_top ? -s : 0.0;
        const Rule1D& rx = jacobi_unit_rule(n_area, a, b);
        const Rule1D& rz = jacobi_unit_rule(n_area, c, d);
        std::vector<double> scratch;
        double total = 0.0;
        for (std::size_t i = 0; i < rx.nodes.size(); ++i) {
            const double xi = rx.nodes[i];
            const double x = p.x0 + xi * (p.x1 - p.x0);
            const double lo = y_at(p.lower, x), hi = y_at(p.upper, x);
            const double height = hi - lo;
            if (!(height > 0.0)) continue;
            const double wx = std::pow(xi, -a) * std::pow(1.0 - xi, -b);
            double row = 0.0;
            for (std::size_t j = 0; j < rz.nodes.size(); ++j) {
                const double zeta = rz.nodes[j];
                const double eta = p.eta0 + zeta * (p.eta1 - p.eta0);
                const Vec2 pt{x, lo + eta * height};
                double ang = 0.0;
                for (int t = 0; t < n_theta; ++t) ang += g[t] * detail::radial_kernel(edges, pt, dirs[t], s, scratch);
                const double wz = std::pow(zeta, -c) * std::pow(1.0 - zeta, -d);
                row += rz.weights[j] * wz * ang * dtheta;
            }
            total += rx.weights[i] * wx * row * height * (p.eta1 - p.eta0);
        }
        per_piece[pi] = total * (p.x1 - p.x0);
    });
    return {sum_in_order(per_piece), static_cast<long>(pieces.size()) * n_area * n_area};
}

void check_inputs(const PolygonRegion& e, double s, const QuadratureSpec& q)
{
    check_s(s);
    q.validate();
    if (e.edges().empty()) throw ParameterError("empty region");
}

}  // namespace

EnergyBreakdown frac_perimeter_bp(const PolygonRegion& e, const SymmetricBody& k, double s, const QuadratureSpec& q)
{
    check_inputs(e, s, q);
    int n_theta = q.n_theta, n_off = q.offsets_per_segment;
    EnergyBreakdown out;
    out.method = "bp";
    for (int level = 0;; ++level) {
        // Angular and offset errors can have opposite signs, so each is
        // estimated by its own halving rather than one joint re-evaluation.
        const BpResult full = bp_pass(e, k, s, n_theta, n_off, q.grading_exponent);
        const BpResult half_angle = bp_pass(e, k, s, n_theta / 2, n_off, q.grading_exponent);
        const BpResult half_offset = bp_pass(e, k, s, n_theta, std::max(1, n_off / 2), q.grading_exponent);
        out.value = full.value;
        out.error_estimate = std::abs(full.value - half_angle.value) + std::abs(full.value - half_offset.value);
        out.angular_nodes = n_theta;
        out.spatial_nodes = full.offset_nodes;
        if (out.error_estimate <= q.rel_tol * std::abs(out.value) || level == kMaxRefinements) break;
        n_theta *= 2;
        n_off *= 2;
    }
    return out;
}

EnergyBreakdown frac_perimeter_ray(const PolygonRegion& e, const SymmetricBody& k, double s, const QuadratureSpec& q)
{
    check_inputs(e, s, q);
    const std::vector<AreaPiece> pieces = area_pieces(e);
    int n_theta = q.n_theta, n_area = q.area_refinement;
    EnergyBreakdown out;
    out.method = "ray";
    for (int level = 0;; ++level) {
        const RayResult full = ray_pass(e, k, s, n_theta, n_area, pieces);
        const RayResult half_angle = ray_pass(e, k, s, n_theta / 2, n_area, pieces);
        const RayResult half_area = ray_pass(e, k, s, n_theta, std::max(1, n_area / 2), pieces);
        out.value = full.value;
        out.error_estimate = std::abs(full.value - half_angle.value) + std::abs(full.value - half_area.value);
        out.angular_nodes = n_theta;
        out.spatial_nodes = full.area_nodes;
        if (out.error_estimate <= q.rel_tol * std::abs(out.value) || level == kMaxRefinements) break;
        n_theta *= 2;
        n_area *= 2;
    }
    return out;
}

EnergyBreakdown mc_frac_perimeter(const PolygonRegion& e, const SymmetricBody& k, double s, long n_samples,
                                  std::uint64_t seed)
{
    check_s(s);
    if (n_samples < 1000) throw ParameterError("mc_frac_perimeter: need at least 1000 samples");
    const auto& edges = e.edges();
    const double region_area = area(e);
    const double perim = perimeter(e);
    const Vec2 lo = e.bbox_min(), hi = e.bbox_max();
    // Mixture proposal: uniform on E, plus a boundary layer of depth `layer`
    // with inward-distance density proportional to d^-s, which matches the
    // d^-s blow-up of the integrand near edges and keeps the variance finite.
    const double layer = 0.25 * e.diameter();
    const double gamma = s;
    std::vector<double> cumulative, lengths;
    std::vector<Vec2> tangents;
    double acc = 0.0;
    for (const Segment& seg : edges) {
        lengths.push_back(norm(seg.b - seg.a));
        tangents.push_back((seg.b - seg.a) / lengths.back());
        acc += lengths.back();
        cumulative.push_back(acc);
    }

    // A layer sample remembers its generating edge and exact local
    // coordinates: depths far below the rounding of x itself carry real
    // probability mass when s is close to 1.
    struct Sample {
        Vec2 x;
        std::size_t edge = SIZE_MAX;
        double along = 0.0;
        double depth = 0.0;
    };
    auto local = [&](const Sample& p, std::size_t i, double& along, double& depth) {
        if (i == p.edge) {
            along = p.along;
            depth = p.depth;
        } else {
            along = dot(p.x - edges[i].a, tangents[i]);
            depth = dot(p.x - edges[i].a, perp(tangents[i]));
        }
    };

    std::mt19937_64 rng(seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto layer_density = [&](double d) { return (1.0 - gamma) * std::pow(d, -gamma) / std::pow(layer, 1.0 - gamma); };
    auto proposal_density = [&](const Sample& p) {
        double layer_part = 0.0;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            double along, depth;
            local(p, i, along, depth);
            if (along >= 0.0 && along <= lengths[i] && depth > 0.0 && depth <= layer) layer_part += layer_density(depth);
        }
        return 0.5 / region_area + 0.5 * layer_part / perim;
    };
    auto inside = [&](const Sample& p) {
        const double eps = 1e-9 * e.diameter();
        if (p.edge == SIZE_MAX || p.depth >= eps) return contains(e, p.x);
        return contains(e, edges[p.edge].a + tangents[p.edge] * p.along + perp(tangents[p.edge]) * eps);
    };
    std::vector<double> crossings;
    auto kernel = [&](const Sample& p, Vec2 u) {
        crossings.clear();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (i == p.edge) {
                const double c = dot(u, perp(tangents[i]));
                if (c >= 0.0) continue;
                const double r = p.depth / -c;
                const double at = p.along + r * dot(u, tangents[i]);
                if (at >= 0.0 && at < lengths[i]) crossings.push_back(r);
                continue;
            }
            const double sa = cross(u, edges[i].a - p.x);
            const double sb = cross(u, edges[i].b - p.x);
            if ((sa > 0.0) != (sb > 0.0)) {
                const Vec2 q = edges[i].a + (edges[i].b - edges[i].a) * (sa / (sa - sb));
                const double r = dot(u, q - p.x);
                if (r > 0.0) crossings.push_back(r);
            }
        }
        std::sort(crossings.begin(), crossings.end());
        double total = 0.0;
        for (std::size_t i = 0; i < crossings.size(); ++i) {
            const double term = std::exp(-s * std::log(crossings[i]));
            total += (i % 2 == 0) ? term : -term;
        }
        return total / s;
    };

    double mean = 0.0, m2 = 0.0;
    for (long n = 1; n <= n_samples; ++n) {
        Sample p;
        if (uniform() < 0.5) {
            do {
                p.x = {lo.x + (hi.x - lo.x) * uniform(), lo.y + (hi.y - lo.y) * uniform()};
            } while (!contains(e, p.x));
        } else {
            const double pick = uniform() * perim;
            p.edge = std::min<std::size_t>(
                std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin(), edges.size() - 1);
            p.depth = layer * std::pow(uniform(), 1.0 / (1.0 - gamma));
            p.along = lengths[p.edge] * uniform();
            p.x = edges[p.edge].a + tangents[p.edge] * p.along + perp(tangents[p.edge]) * p.depth;
        }
        const double theta = 2.0 * std::numbers::pi * uniform();
        double sample = 0.0;
        if (p.depth > 0.0 || p.edge == SIZE_MAX) {
            if (inside(p)) {
                const Vec2 u = unit_from_angle(theta);
                sample = 2.0 * std::numbers::pi * std::exp(-(2.0 + s) * std::log(gauge(k, u))) * kernel(p, u) /
                         proposal_density(p);
            }
        }
        const double delta = sample - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (sample - mean);
    }
    EnergyBreakdown out;
    out.method = "mc";
    out.value = mean;
    out.error_estimate = std::sqrt(m2 / static_cast<double>(n_samples - 1) / static_cast<double>(n_samples));
    out.angular_nodes = n_samples;
    out.spatial_nodes = n_samples;
    return out;
}

// ---- pixel energy ----

namespace {

QuadratureSpec model_quadrature()
{
    QuadratureSpec q;
    q.n_theta = 1024;
    q.offsets_per_segment = 16;
    q.rel_tol = 1e-6;
    return q;
}

// Unit cells at the given integer positions, traced into a valid region.
PolygonRegion unit_cells(std::initializer_list<std::pair<int, int>> cells)
{
    int i0 = 0, j0 = 0, i1 = 0, j1 = 0;
    for (auto [i, j] : cells) {
        i0 = std::min(i0, i), j0 = std::min(j0, j), i1 = std::max(i1, i), j1 = std::max(j1, j);
    }
    const int nx = i1 - i0 + 1, ny = j1 - j0 + 1;
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(nx) * ny, 0);
    for (auto [i, j] : cells) mask[static_cast<std::size_t>(j - j0) * nx + (i - i0)] = 1;
    return pixels_to_polygon(PixelSet({double(i0), double(j0)}, 1.0, nx, ny, std::move(mask)));
}

// int_{[0,1]^2} int_{[0,1]^2 + d} kernel, for cells that do not touch.
double separated_pair(const SymmetricBody& k, double s, int dx, int dy, int n)
{
    const Rule1D& r = gauss_legendre_unit(n);
    double total = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const Vec2 diff{dx + r.nodes[c] - r.nodes[a], dy + r.nodes[d] - r.nodes[b]};
                    total += r.weights[a] * r.weights[b] * r.weights[c] * r.weights[d] *
                             std::exp(-(2.0 + s) * std::log(gauge(k, diff)));
                }
    return total;
}

std::string body_key(const SymmetricBody& k)
{
    std::string key;
    char buf[96];
    std::visit(
        [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, BallBody>) {
                std::snprintf(buf, sizeof buf, "ball %.17g", b.radius);
                key = buf;
            } else if constexpr (std::is_same_v<T, PolygonBody>) {
                key = "poly";
                for (const Vec2& v : b.vertices) {
                    std::snprintf(buf, sizeof buf, " %.17g,%.17g", v.x, v.y);
                    key += buf;
                }
            } else {
                key = "support";
                for (std::size_t i = 0; i < b.values.size(); ++i) {
                    std::snprintf(buf, sizeof buf, " %.17g,%.17g:%.17g", b.directions[i].x, b.directions[i].y,
                                  b.values[i]);
                    key += buf;
                }
            }
        },
        k.variant());
    return key;
}

}  // namespace

PixelEnergyModel::PixelEnergyModel(double h, double s, const SymmetricBody& k, int reach)
    : h_(h), s_(s), reach_(reach)
{
    check_s(s);
    if (!(h > 0.0)) throw ParameterError("pixel model: cell size must be positive");
    if (reach < 1) throw ParameterError("pixel model: reach must be >= 1");
    const double scale = std::pow(h, 2.0 - s);
    const QuadratureSpec q = model_quadrature();
    const double t0 = frac_perimeter_bp(unit_cells({{0, 0}}), k, s, q).value;
    t0_ = scale * t0;

    const int side = 2 * reach + 1;
    table_.assign(static_cast<std::size_t>(side) * side, 0.0);
    // Touching neighbours: w = (P(A) + P(B) - P(A u B)) / 2.
    std::map<std::pair<int, int>, double> touching;
    for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}, std::pair{1, -1}}) {
        const double joint = frac_perimeter_bp(unit_cells({{0, 0}, {dx, dy}}), k, s, q).value;
        touching[{dx, dy}] = touching[{-dx, -dy}] = 0.5 * (2.0 * t0 - joint);
    }
    for (int dy = -reach; dy <= reach; ++dy) {
        for (int dx = -reach; dx <= reach; ++dx) {
            double w = 0.0;
            if (dx == 0 && dy == 0) {
                w = 0.0;
            } else if (std::abs(dx) <= 1 && std::abs(dy) <= 1) {
                w = touching.at({dx, dy});
            } else if (std::hypot(dx, dy) <= kNearFieldCells) {
                w = separated_pair(k, s, dx, dy, 8);
            } else {
                w = std::exp(-(2.0 + s) * std::log(gauge(k, Vec2{double(dx), double(dy)})));
            }
            table_[static_cast<std::size_t>(dy + reach) * side + (dx + reach)] = scale * w;
        }
    }
}

double PixelEnergyModel::pair(int dx, int dy) const
{
    if (std::abs(dx) > reach_ || std::abs(dy) > reach_) throw ParameterError("pixel model: offset beyond reach");
    const int side = 2 * reach_ + 1;
    return table_[static_cast<std::size_t>(dy + reach_) * side + (dx + reach_)];
}

std::shared_ptr<const PixelEnergyModel> PixelEnergyModel::cached(double h, double s, const SymmetricBody& k,
                                                                 int reach)
{
    static std::map<std::tuple<double, double, std::string, int>, std::shared_ptr<const PixelEnergyModel>> cache;
    static std::mutex m;
    const auto key = std::tuple{h, s, body_key(k), reach};
    {
        std::lock_guard lock(m);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto model = std::make_shared<const PixelEnergyModel>(h, s, k, reach);
    std::lock_guard lock(m);
    return cache.emplace(key, std::move(model)).first->second;
}

namespace {

std::vector<std::pair<int, int>> filled_cells(const PixelSet& e)
{
    std::vector<std::pair<int, int>> cells;
    for (int j = 0; j < e.ny(); ++j)
        for (int i = 0; i < e.nx(); ++i)
            if (e.at(i, j)) cells.emplace_back(i, j);
    return cells;
}

}  // namespace

EnergyBreakdown pixel_energy(const PixelSet& e, const SymmetricBody& k, double s)
{
    const auto model = PixelEnergyModel::cached(e.h(), s, k, std::max({1, e.nx() - 1, e.ny() - 1}));
    const auto cells = filled_cells(e);
    double pairs = 0.0;
    for (std::size_t a = 0; a < cells.size(); ++a)
        for (std::size_t b = a + 1; b < cells.size(); ++b)
            pairs += model->pair(cells[b].first - cells[a].first, cells[b].second - cells[a].second);
    EnergyBreakdown out;
    out.method = "pixel";
    out.value = static_cast<double>(cells.size()) * model->self_energy() - 2.0 * pairs;
    out.error_estimate = 0.0;
    out.spatial_nodes = static_cast<long>(cells.size());
    return out;
}

double pixel_flip_delta(const PixelSet& e, const SymmetricBody& k, double s, int i, int j)
{
    if (i < 0 || j < 0 || i >= e.nx() || j >= e.ny()) throw ParameterError("pixel_flip_delta: cell outside grid");
    const bool present = e.at(i, j);
    if (present && e.count() == 1) throw ParameterError("pixel_flip_delta: flip would empty the set");
    const auto model = PixelEnergyModel::cached(e.h(), s, k, std::max({1, e.nx() - 1, e.ny() - 1}));
    double field = 0.0;
    for (int jj = 0; jj < e.ny(); ++jj)
        for (int ii = 0; ii < e.nx(); ++ii)
            if (e.at(ii, jj)) field += model->pair(ii - i, jj - j);
    return present ? -model->self_energy() + 2.0 * field : model->self_energy() - 2.0 * field;
}

}  // namespace fracperi
