#include "doctest.h"

#include "fracperi/errors.hpp"
#include "fracperi/limits_sobolev.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>

using namespace fracperi;
using namespace fracperi::testing;

namespace {

PolygonRegion diamond_region()
{
    return PolygonRegion({{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}});
}

StepFunction two_level()
{
    return StepFunction({1.0, 2.0}, {square_region(1.0), square_region(0.5, {0.2, -0.1})});
}

}  // namespace

TEST_CASE("extrapolation helper")
{
    CHECK(linear_extrapolate({1, 2, 3}, {5, 7, 9}) == doctest::Approx(3.0));
    CHECK_THROWS_AS(linear_extrapolate({1, 1}, {0, 1}), ParameterError);
}

TEST_CASE("s to 1 recovers the moment-body perimeter")
{
    const PolygonRegion sq = square_region();
    const SweepResult ball = limit_s_to_1(sq, SymmetricBody::ball(1.0));
    CHECK(ball.target == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(ball.rel_gap <= 0.01);
    REQUIRE(ball.rows.size() == 3);
    CHECK(ball.rows[0].s == 0.9);
    CHECK(ball.rows[2].s == 0.99);

    const SweepResult square = limit_s_to_1(sq, square_body());
    CHECK(square.target == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(square.rel_gap <= 0.01);

    // Diamond edges have normals (±1, ±1)/√2, where h_MK = 4/√2: P = 4·√2·2√2.
    const SweepResult diamond = limit_s_to_1(diamond_region(), square_body());
    CHECK(diamond.target == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(diamond.rel_gap <= 0.015);
}

TEST_CASE("s to 0 recovers 2 vol(K) vol(E)")
{
    const PolygonRegion sq = square_region();
    const SweepResult square = limit_s_to_0(sq, square_body());
    CHECK(square.target == doctest::Approx(32.0));
    CHECK(square.rel_gap <= 0.01);
    const SweepResult ball = limit_s_to_0(sq, SymmetricBody::ball(1.0));
    CHECK(ball.target == doctest::Approx(8.0 * std::numbers::pi));
    CHECK(ball.rel_gap <= 0.01);
    REQUIRE(ball.rows.size() == 3);
    CHECK(ball.rows[0].s == 0.01);
}

TEST_CASE("sweep deviations shrink toward s = 1")
{
    std::mt19937_64 rng(12);
    const std::vector<PolygonRegion> shapes{square_region(0.5), square_with_hole(), l_hexagon(),
                                            PolygonRegion({random_star_loop(rng, 7)})};
    const std::vector<SymmetricBody> bodies{SymmetricBody::ball(1.0), square_body(), diamond_body()};
    for (const auto& e : shapes)
        for (const auto& k : bodies) {
            const SweepResult r = limit_s_to_1(e, k);
            CHECK(std::abs(r.rows.back().scaled - r.target) < std::abs(r.rows.front().scaled - r.target));
        }
}

TEST_CASE("grid validation")
{
    const PolygonRegion sq = square_region();
    CHECK_THROWS_AS(limit_s_to_1(sq, square_body(), {0.9, 0.95}), ParameterError);
    CHECK_THROWS_AS(limit_s_to_1(sq, square_body(), {0.5, 0.9, 0.95}), ParameterError);
    CHECK_THROWS_AS(limit_s_to_0(sq, square_body(), {0.1, 0.05, 0.3}), ParameterError);
    CHECK_THROWS_AS(limit_s_to_0(sq, square_body(), {0.1, 0.1, 0.05}), ParameterError);
}

TEST_CASE("step functions")
{
    CHECK_NOTHROW(two_level());
    CHECK_THROWS_AS(StepFunction({1.0, 2.0}, {square_region(0.5), square_region(1.0)}), ValidationError);
    CHECK_THROWS_AS(StepFunction({2.0, 1.0}, {square_region(1.0), square_region(0.5)}), ValidationError);
    CHECK_THROWS_AS(StepFunction({-1.0}, {square_region(1.0)}), ValidationError);
    CHECK_THROWS_AS(StepFunction({1.0}, {}), ValidationError);
    // Shared boundaries are fine.
    CHECK_NOTHROW(StepFunction({1.0, 2.0}, {square_region(1.0), PolygonRegion({{{0, 0}, {1, 0}, {1, 1}, {0, 1}}})}));
}

TEST_CASE("BV seminorm and Lp norm")
{
    const PolygonRegion sq = square_region();
    const SymmetricBody ball = SymmetricBody::ball(1.0);
    CHECK(bv_seminorm(StepFunction::indicator(sq), ball) == doctest::Approx(8.0));
    CHECK(bv_seminorm(StepFunction::indicator(sq, 2.0), ball) == doctest::Approx(16.0));
    CHECK(bv_seminorm(two_level(), square_body()) ==
          doctest::Approx(anisotropic_perimeter(square_region(1.0), square_body()) +
                          anisotropic_perimeter(square_region(0.5, {0.2, -0.1}), square_body())));

    CHECK(lp_norm(StepFunction::indicator(sq), 3.0) == doctest::Approx(std::cbrt(4.0)));
    CHECK(lp_norm(StepFunction::indicator(sq, 2.0), 1.5) == doctest::Approx(2.0 * std::pow(4.0, 1.0 / 1.5)));
    // Shells: value 1 on area 3, value 2 on area 1.
    CHECK(lp_norm(two_level(), 2.0) == doctest::Approx(std::sqrt(3.0 + 4.0)));
    CHECK_THROWS_AS(lp_norm(two_level(), 0.5), ParameterError);
}

TEST_CASE("fractional Sobolev seminorm via coarea")
{
    const PolygonRegion sq = square_region();
    const SymmetricBody k = square_body();
    const double s = 0.4;
    const double p = frac_perimeter_bp(sq, k, s).value;
    CHECK(frac_sobolev_seminorm(StepFunction::indicator(sq), k, s) == 2.0 * p);
    CHECK(frac_sobolev_seminorm(StepFunction::indicator(sq, 3.0), k, s) == doctest::Approx(6.0 * p).epsilon(1e-14));
    const double p2 = frac_perimeter_bp(square_region(0.5, {0.2, -0.1}), k, s).value;
    CHECK(frac_sobolev_seminorm(two_level(), k, s) == doctest::Approx(2.0 * (p + p2)).epsilon(1e-14));
}

TEST_CASE("Sobolev limit")
{
    const PolygonRegion sq = square_region();
    const SymmetricBody ball = SymmetricBody::ball(1.0);
    const SweepResult r = sobolev_limit(StepFunction::indicator(sq), ball);
    CHECK(r.target == doctest::Approx(32.0).epsilon(1e-12));
    // With the Euclidean ball the target is 2 alpha_2 ||f||_BV, alpha_2 = 2.
    CHECK(r.target == doctest::Approx(2.0 * 2.0 * bv_seminorm(StepFunction::indicator(sq), ball)));
    CHECK(r.rel_gap <= 0.015);

    // Indicator rows are exactly twice the perimeter sweep.
    const SweepResult per = limit_s_to_1(sq, ball);
    for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(r.rows[i].scaled == 2.0 * per.rows[i].scaled);

    const SymmetricBody k = square_body();
    const SweepResult two = sobolev_limit(two_level(), k);
    const SymmetricBody mk = moment_body(k);
    CHECK(two.target == doctest::Approx(2.0 * (anisotropic_perimeter(square_region(1.0), mk) +
                                               anisotropic_perimeter(square_region(0.5, {0.2, -0.1}), mk))));
    CHECK(two.rel_gap <= 0.02);
}
