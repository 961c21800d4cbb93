#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "serrin/errors.hpp"
#include "serrin/geometry.hpp"

using namespace serrin;

namespace {
constexpr double kPi = std::numbers::pi;

DomainSpec egg() {
    FourierBoundary b;
    b.c0 = 1.0;
    b.cos_coeffs = {0.1};
    return DomainSpec({0, 0}, b, true, "egg");
}
} // namespace

TEST_CASE("boundary_sample on the unit disk hits the axis points") {
    const auto disk = DomainSpec::disk(1.0);
    const auto pts = boundary_sample(disk, 16);
    REQUIRE(pts.size() == 16);
    CHECK(pts[0].position.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pts[0].position.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pts[4].position.y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pts[8].position.x == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pts[12].position.y == doctest::Approx(-1.0).epsilon(1e-12));
    for (const auto& p : pts) {
        CHECK(std::abs(p.inward_normal.norm() - 1.0) <= 1e-12);
        // Normals of a centered disk point at the center.
        CHECK((p.position + p.inward_normal).norm() <= 1e-12);
        CHECK(p.curvature == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(boundary_sample(disk, 8), ValidationError);
}

TEST_CASE("boundary_sample ellipse curvature peaks at the major axis ends") {
    const auto ell = DomainSpec::ellipse(1.05, 1.0);
    const auto pts = boundary_sample(ell, 360);
    // Closed-form ellipse curvature kappa = a b / (a^2 sin^2 t + b^2 cos^2 t)^{3/2}
    // maximises to a / b^2 at (+-a, 0).
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].curvature > pts[argmax].curvature) argmax = i;
    CHECK(std::abs(pts[argmax].position.y) <= 0.02);
    CHECK(pts[0].curvature == doctest::Approx(1.05).epsilon(1e-10));
    CHECK(pts[90].curvature == doctest::Approx(1.0 / (1.05 * 1.05)).epsilon(1e-10));
}

TEST_CASE("non-star-shaped radial data is rejected") {
    FourierBoundary b;
    b.c0 = 0.4;
    b.cos_coeffs = {0.5}; // rho(pi) = -0.1
    CHECK_THROWS_AS(DomainSpec({0, 0}, b), ValidationError);
}

TEST_CASE("diameter: disk, ellipse, translation and scaling") {
    const auto disk = DomainSpec::disk(1.0);
    CHECK(diameter(disk) == doctest::Approx(2.0).epsilon(1e-9));

    const auto ell = DomainSpec::ellipse(1.05, 1.0);
    CHECK(diameter(ell) == doctest::Approx(2.1).epsilon(1e-9));

    const auto disk2 = DomainSpec::disk(0.75, {3.0, -2.0});
    CHECK(diameter(disk2) == doctest::Approx(1.5).epsilon(1e-9));

    // Translation invariance is exact: the computation is center-relative.
    const auto moved = ell.translated({12.5, -3.25});
    CHECK(diameter(moved) == diameter(ell));
    const auto dd = diameter_detail(ell);
    const auto dm = diameter_detail(moved);
    CHECK(dd.phi_a == dm.phi_a);
    CHECK(dd.phi_b == dm.phi_b);

    const auto scaled = ell.scaled(3.0);
    CHECK(diameter(scaled) == doctest::Approx(3.0 * diameter(ell)).epsilon(1e-12));
}

TEST_CASE("interior sphere radius") {
    CHECK(interior_sphere_radius(DomainSpec::disk(1.0)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(interior_sphere_radius(DomainSpec::disk(2.0)) == doctest::Approx(2.0).epsilon(1e-9));

    const auto ell = DomainSpec::ellipse(1.05, 1.0);
    const double expected = 1.0 / 1.05; // b^2 / a with b = 1
    CHECK(interior_sphere_radius(ell, 2048) == doctest::Approx(expected).epsilon(1e-4));
    CHECK(touching_ball_radius(ell, 0.0) == doctest::Approx(expected).epsilon(1e-4));

    // Never exceeds the curvature cap.
    for (const auto& dom : {DomainSpec::disk(1.0), ell, egg()}) {
        double max_kappa = 0.0;
        for (const auto& p : boundary_sample(dom, 2048))
            max_kappa = std::max(max_kappa, p.curvature);
        CHECK(interior_sphere_radius(dom) <= 1.0 / max_kappa + 1e-6);
    }
}

TEST_CASE("signed distance") {
    const auto disk = DomainSpec::disk(1.0);
    CHECK(signed_distance(disk, {0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(signed_distance(disk, {2, 0}) == doctest::Approx(-1.0).epsilon(1e-12));

    const auto ell = DomainSpec::ellipse(1.05, 1.0);
    CHECK(std::abs(signed_distance(ell, {1.05, 0})) <= 1e-9);
    CHECK(std::abs(signed_distance(ell, {0, -1.0})) <= 1e-9);

    // Generic points: distance to an offset disk has a closed form.
    const auto disk2 = DomainSpec::disk(2.0, {1.0, -1.0});
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const Vec2 p{u(rng), u(rng)};
        const double expected = 2.0 - (p - Vec2{1.0, -1.0}).norm();
        CHECK(signed_distance(disk2, p) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("parallel set membership and smoothness guard") {
    const auto disk = DomainSpec::disk(1.0);
    const double r = interior_sphere_radius(disk);
    CHECK(parallel_set_contains(disk, 0.5, {0, 0}, r));
    CHECK_FALSE(parallel_set_contains(disk, 0.5, {0.6, 0}, r));
    CHECK_THROWS_AS(parallel_set_contains(disk, 1.0, {0, 0}, r), ValidationError);

    const auto ell = DomainSpec::ellipse(1.05, 1.0);
    const double re = interior_sphere_radius(ell);
    REQUIRE(0.9 < re);
    CHECK(parallel_set_contains(ell, 0.9, {0, 0}, re));
}

TEST_CASE("reflection formula, involution, isometry") {
    CHECK(reflect({1, 0}, {1, 0}, 0.0).x == doctest::Approx(-1.0).epsilon(1e-15));
    const Vec2 r = reflect({1, 2}, {1, 0}, 0.3);
    CHECK(r.x == doctest::Approx(-0.4).epsilon(1e-14));
    CHECK(r.y == doctest::Approx(2.0).epsilon(1e-15));

    CHECK_THROWS_AS(reflect({1, 1}, {1, 1}, 0.0), ValidationError);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    for (int i = 0; i < 500; ++i) {
        const Vec2 omega = unit_vector(ang(rng));
        const double mu = u(rng);
        const Vec2 x{u(rng), u(rng)}, y{u(rng), u(rng)};
        const Vec2 rx = reflect(x, omega, mu), ry = reflect(y, omega, mu);
        CHECK((reflect(rx, omega, mu) - x).norm() <= 1e-12);
        CHECK(std::abs((rx - ry).norm() - (x - y).norm()) <= 1e-12);
        // Points on the plane are fixed.
        const Vec2 on_plane = mu * omega + u(rng) * omega.perp();
        CHECK((reflect(on_plane, omega, mu) - on_plane).norm() <= 1e-12);
    }
}

TEST_CASE("inner and outer radii") {
    const auto disk = DomainSpec::disk(1.0);
    auto [ri, re] = inner_outer_radii(disk, {0, 0});
    CHECK(ri == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(re == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(re - ri) <= 1e-9);

    const auto ell = DomainSpec::ellipse(1.05, 1.0);
    auto [ei, ee] = inner_outer_radii(ell, {0, 0});
    CHECK(ei == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ee == doctest::Approx(1.05).epsilon(1e-9));

    auto [oi, oe] = inner_outer_radii(disk, {0.1, 0});
    CHECK(oi == doctest::Approx(0.9).epsilon(1e-9));
    CHECK(oe == doctest::Approx(1.1).epsilon(1e-9));

    CHECK_THROWS_AS(inner_outer_radii(disk, {2.0, 0}), ValidationError);
}

TEST_CASE("summary invariant 0 < r <= d/2 and convexity detection") {
    for (const auto& dom : {DomainSpec::disk(1.0), DomainSpec::ellipse(1.05, 1.0), egg()}) {
        const auto g = summarize(dom);
        CHECK(g.r_Omega > 0.0);
        CHECK(g.r_Omega <= g.d_Omega / 2 + 1e-12);
        CHECK(g.is_convex);
    }
    FourierBoundary b;
    b.c0 = 1.0;
    b.cos_coeffs = {0.0, -0.35}; // pinched waist: not convex
    const DomainSpec dumbbell({0, 0}, b, false, "dumbbell");
    CHECK_FALSE(summarize(dumbbell).is_convex);
}

TEST_CASE("domain json round trip and schema rejection") {
    const auto ell = DomainSpec::ellipse(1.05, 1.0, {0.2, -0.1}, 0.3);
    const auto back = DomainSpec::from_json_text(ell.to_json_text());
    CHECK(back.center().x == ell.center().x);
    CHECK(back.center().y == ell.center().y);
    CHECK(diameter(back) == doctest::Approx(diameter(ell)).epsilon(1e-12));

    CHECK_THROWS_AS(DomainSpec::from_json_text("{\"coeffs\":{\"c0\":1},\"bogus\":1}"),
                    ValidationError);
    CHECK_THROWS_AS(DomainSpec::from_json_text("{\"center\":[0,0]}"), ValidationError);
    CHECK_THROWS_AS(DomainSpec::from_json_text("not json"), ValidationError);
}

TEST_CASE("rotation equivariance of the boundary") {
    const auto ell = DomainSpec::ellipse(1.05, 1.0);
    const auto rot = ell.rotated(kPi / 6);
    // rho_rot(phi) = rho(phi - angle)
    for (double phi : {0.0, 0.7, 2.1, 4.9}) {
        CHECK(rot.rho(phi) == doctest::Approx(ell.rho(phi - kPi / 6)).epsilon(1e-12));
    }
    CHECK(diameter(rot) == doctest::Approx(diameter(ell)).epsilon(1e-10));
    CHECK(interior_sphere_radius(rot) ==
          doctest::Approx(interior_sphere_radius(ell)).epsilon(1e-6));
}
