#include <doctest.h>

#include <cmath>

#include "csf/curve.hpp"
#include "csf/spline.hpp"
#include "csf/support.hpp"
#include "helpers.hpp"

using namespace csf;
using testing_util::circle;
using testing_util::ellipse_by_angle;

TEST_SUITE("curve_core") {

TEST_CASE("unit circle geometry")
{
    SampledCurve c = circle(1.0, 256);
    CurveGeometry g = compute_geometry(c);
    for (double k : g.curvature) CHECK(k == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(g.area == doctest::Approx(pi).epsilon(1e-4));
    CHECK(g.length == doctest::Approx(2 * pi).epsilon(1e-4));
    // vertex 0 is the rightmost point
    CHECK(g.normal[0].x > 0.99);
}

TEST_CASE("circle of radius 2")
{
    CurveGeometry g = compute_geometry(circle(2.0, 512));
    for (double k : g.curvature) CHECK(k == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(g.area == doctest::Approx(4 * pi).epsilon(1e-4));
    CHECK(g.length == doctest::Approx(4 * pi).epsilon(1e-4));
}

TEST_CASE("ellipse curvature at the end of the major axis")
{
    // ab / (a^2 sin^2 + b^2 cos^2)^{3/2} at t = 0 is a/b^2 = 2.
    CurveGeometry g = compute_geometry(ellipse_by_angle(2.0, 1.0, 512));
    CHECK(g.curvature[0] == doctest::Approx(2.0).epsilon(1e-3));
    double t = 2 * pi * 37 / 512;
    double exact = 2.0 / std::pow(4 * std::sin(t) * std::sin(t) + std::cos(t) * std::cos(t), 1.5);
    CHECK(g.curvature[37] == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("curvature converges at second order")
{
    double e[3];
    int ns[3] = {64, 128, 256};
    for (int k = 0; k < 3; ++k) {
        // irregular sampling so that the error is not zero by symmetry
        SampledCurve c;
        for (int i = 0; i < ns[k]; ++i) {
            double t = 2 * pi * i / ns[k] + 0.3 * std::sin(2 * pi * i / ns[k]) / ns[k] * 2 * pi / 4;
            c.vertices.push_back({2 * std::cos(t), std::sin(t)});
        }
        CurveGeometry g = compute_geometry(c);
        double err = 0.0;
        for (int i = 0; i < ns[k]; ++i) {
            double t = std::atan2(c[i].y, c[i].x / 2);
            double ex = 2.0 / std::pow(4 * std::sin(t) * std::sin(t) + std::cos(t) * std::cos(t), 1.5);
            err = std::max(err, std::fabs(g.curvature[i] - ex));
        }
        e[k] = err;
    }
    CHECK(std::log2(e[0] / e[1]) > 1.8);
    CHECK(std::log2(e[1] / e[2]) > 1.8);
}

TEST_CASE("scaling covariance")
{
    SampledCurve c = ellipse_by_angle(1.3, 0.7, 200);
    CurveGeometry g = compute_geometry(c), g3 = compute_geometry(scaled(c, 3.0));
    CHECK(g3.length == doctest::Approx(3 * g.length).epsilon(1e-14));
    CHECK(g3.area == doctest::Approx(9 * g.area).epsilon(1e-14));
    for (std::size_t i = 0; i < c.size(); i += 17) CHECK(g3.curvature[i] == doctest::Approx(g.curvature[i] / 3));
}

TEST_CASE("resample circle from irregular samples")
{
    SampledCurve c;
    for (int i = 0; i < 100; ++i) {
        double t = 2 * pi * (i + 0.35 * std::sin(3.0 * i)) / 100;
        c.vertices.push_back({std::cos(t), std::sin(t)});
    }
    SampledCurve r = resample_by_arclength(c, 64);
    REQUIRE(r.size() == 64);
    double chord = norm(r[1] - r[0]);
    for (std::size_t i = 0; i < 64; ++i) {
        CHECK(std::fabs(norm(r[i]) - 1.0) < 1e-3);
        CHECK(norm(r[(i + 1) % 64] - r[i]) == doctest::Approx(chord).epsilon(1e-9));
    }
}

TEST_CASE("resample is a fixed point on uniform input")
{
    SampledCurve c = circle(1.0, 128);
    SampledCurve r = resample_by_arclength(c, 128);
    for (std::size_t i = 0; i < 128; ++i) CHECK(norm(r[i] - c[i]) < 1e-12);
}

TEST_CASE("resample ellipse gives equal chords")
{
    SampledCurve r = resample_by_arclength(ellipse_by_angle(2.0, 1.0, 256), 256);
    double chord = norm(r[1] - r[0]);
    double worst = 0.0;
    for (std::size_t i = 0; i < 256; ++i) worst = std::max(worst, std::fabs(norm(r[(i + 1) % 256] - r[i]) / chord - 1));
    CHECK(worst < 1e-6);
    CHECK(polyline_length(r) == doctest::Approx(polyline_length(ellipse_by_angle(2.0, 1.0, 4096))).epsilon(1e-3));
}

TEST_CASE("normalize to area pi")
{
    SampledCurve c = normalize_to_area_pi(circle(2.0, 256));
    CHECK(norm(c[0]) == doctest::Approx(std::sqrt(pi / signed_area(circle(2.0, 256))) * 2.0));
    SampledCurve e = normalize_to_area_pi(ellipse_by_angle(2.0, 1.0, 400));
    CHECK(std::fabs(signed_area(e) - pi) < 1e-10);
    SampledCurve same = normalize_to_area_pi(e);
    for (std::size_t i = 0; i < e.size(); i += 7) CHECK(norm(same[i] - e[i]) < 1e-14);
    SampledCurve cw = e;
    std::reverse(cw.vertices.begin(), cw.vertices.end());
    CHECK_THROWS_AS(normalize_to_area_pi(cw), CurveError);
}

TEST_CASE("support to curve")
{
    SampledCurve c = support_to_curve(make_support([](double) { return 1.0; }, 64), 64);
    for (auto& p : c.vertices) CHECK(norm(p) == doctest::Approx(1.0).epsilon(1e-14));
    SampledCurve c3 = support_to_curve(make_support([](double) { return 3.0; }, 64), 256);
    CHECK(compute_geometry(c3).curvature[5] == doctest::Approx(1.0 / 3).epsilon(1e-4));

    SupportFunction s = make_support([](double t) { return 1.0 + 0.1 * std::cos(2 * t); }, 256, true);
    validate(s);
    SampledCurve oval = support_to_curve(s, 1024);
    CurveGeometry g = compute_geometry(oval);
    for (std::size_t i = 0; i < 1024; i += 31) {
        double th = 2 * pi * double(i) / 1024;
        CHECK(1.0 / g.curvature[i] == doctest::Approx(1.0 - 0.3 * std::cos(2 * th)).epsilon(1e-3));
    }
    CHECK(signed_area(oval) > 0);
    CHECK(self_intersection_check(oval));
    CHECK_THROWS_AS(support_to_curve(make_support([](double t) { return 1.0 + 0.5 * std::cos(2 * t); }, 64), 64),
                    CurveError);
}

TEST_CASE("radius of curvature from support")
{
    auto r1 = radius_of_curvature_from_support(make_support([](double) { return 1.0; }, 32));
    for (double r : r1) CHECK(r == doctest::Approx(1.0));
    SupportFunction s = make_support([](double t) { return 1.0 + 0.05 * std::cos(2 * t); }, 128);
    auto r = radius_of_curvature_from_support(s);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(1 - 0.15 * std::cos(2 * s.theta[i])).epsilon(1e-12));
}

TEST_CASE("doubly symmetric flag is checked")
{
    SupportFunction s = make_support([](double t) { return 1.0 + 0.1 * std::cos(t); }, 64, true);
    CHECK_THROWS_AS(validate(s), CurveError);
}

TEST_CASE("vertex count")
{
    VertexCount c = vertex_count(circle(1.0, 256));
    CHECK(c.count == 0);
    CHECK(c.constantCurvature);
    VertexCount e = vertex_count(ellipse_by_angle(2.0, 1.0, 256, 0.01));
    CHECK(e.count == 4);
    CHECK_FALSE(e.constantCurvature);
}

TEST_CASE("self intersection")
{
    CHECK(self_intersection_check(circle(1.0, 64)));
    CHECK(self_intersection_check(ellipse_by_angle(2.0, 1.0, 64)));
    SampledCurve eight;
    for (int i = 0; i < 64; ++i) {
        double t = 2 * pi * i / 64;
        eight.vertices.push_back({std::sin(t), std::sin(t) * std::cos(t)});
    }
    CHECK_FALSE(self_intersection_check(eight));
}

TEST_CASE("winding number")
{
    SampledCurve c = circle(1.0, 64);
    CHECK(winding_number(c, {0.2, 0.1}) == 1);
    CHECK(winding_number(c, {1.5, 0.0}) == 0);
}

TEST_CASE("validation")
{
    SampledCurve small;
    for (int i = 0; i < 5; ++i) small.vertices.push_back({double(i), double(i * i)});
    CHECK_THROWS_AS(validate(small), CurveError);
    SampledCurve dup = circle(1.0, 16);
    dup.vertices[3] = dup.vertices[4];
    CHECK_THROWS_AS(validate(dup), CurveError);
    CHECK_NOTHROW(validate(circle(1.0, 16)));
}

TEST_CASE("spline reproduces the circle")
{
    SampledCurve c = circle(1.0, 256);
    PeriodicSpline sp(c);
    double u = 0.37 * sp.period();
    CHECK(norm(sp.point(u)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sp.curvature(u) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(std::fabs(sp.area_integral(0.0, sp.period()) - pi) < 1e-8);
    CHECK(std::fabs(sp.total_arc_length() - 2 * pi) < 1e-8);
    // wrapped piece equals the sum of its parts
    double a = sp.area_integral(0.9 * sp.period(), 1.2 * sp.period());
    double b = sp.area_integral(0.9 * sp.period(), sp.period()) + sp.area_integral(0.0, 0.2 * sp.period());
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("ellipse body sampled at equal arclength")
{
    EllipseBody e(2.0, 1.0);
    CHECK(e.ConvexBody::area() == doctest::Approx(2 * pi).epsilon(1e-12));
    SampledCurve c = sample_by_arclength(e, 256);
    for (auto& p : c.vertices) CHECK(p.x * p.x / 4 + p.y * p.y == doctest::Approx(1.0).epsilon(1e-13));
    double chord = norm(c[1] - c[0]), worst = 0.0;
    for (std::size_t i = 0; i < 256; ++i) worst = std::max(worst, std::fabs(norm(c[(i + 1) % 256] - c[i]) / chord - 1));
    CHECK(worst < 1e-3);
    CHECK(c[64].x == 0.0);
    CHECK(c[128].y == 0.0);
}

}
