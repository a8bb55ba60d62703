#include <doctest.h>

#include <cmath>

#include "csf/fixtures.hpp"
#include "csf/flow.hpp"
#include "csf/models.hpp"
#include "csf/numerics.hpp"
#include "helpers.hpp"

using namespace csf;

TEST_SUITE("flow_engine") {

TEST_CASE("shrinking circle follows R^2 = R0^2 - 2 tau")
{
    FlowConfig cfg;
    cfg.mode = FlowMode::unnormalized;
    FlowState s = make_state(testing_util::circle(1.0, 256), FlowMode::unnormalized);
    for (int i = 0; i < 3000; ++i) s = csf_step(s, 1e-4, cfg);
    double r = std::sqrt(1.0 - 2 * 0.3);
    for (auto& p : s.curve.vertices) CHECK(std::fabs(norm(p) - r) < 1e-3);
    CHECK(s.time == doctest::Approx(0.3));
}

TEST_CASE("zero step is the identity")
{
    FlowState s = make_state(fixture("ellipse2"), FlowMode::normalized);
    FlowState a = csf_step(s, 0.0), b = ncsf_step(s, 0.0);
    for (std::size_t i = 0; i < s.curve.size(); ++i) {
        CHECK(a.curve[i] == s.curve[i]);
        CHECK(b.curve[i] == s.curve[i]);
    }
}

TEST_CASE("paperclip is tracked by the flow")
{
    FlowConfig cfg;
    cfg.mode = FlowMode::unnormalized;
    cfg.nVertices = 512;
    FlowState s = make_state(paperclip_boundary(-1.0, 512), FlowMode::unnormalized, -1.0);
    for (int i = 0; i < 1000; ++i) s = csf_step(s, 1e-4, cfg);
    double d = 0.0;
    for (auto& p : s.curve.vertices) d = std::max(d, paperclip_distance(-0.9, p));
    CHECK(d < 5e-3);
    // and the exact curve lies near the polyline
    SampledCurve exact = paperclip_boundary(-0.9, 512);
    CHECK(std::fabs(signed_area(exact) - signed_area(s.curve)) < 5e-3);
}

TEST_CASE("unit circle is a fixed point of the normalized flow")
{
    FlowState s = make_state(fixture("circle", 256), FlowMode::normalized);
    FlowState n = ncsf_step(s, 1e-3);
    for (std::size_t i = 0; i < s.curve.size(); ++i) CHECK(norm(n.curve[i] - s.curve[i]) < 1e-8);
}

TEST_CASE("normalized ellipse converges to the circle")
{
    FlowConfig cfg;
    FlowState s = make_state(fixture("ellipse2", 256), FlowMode::normalized);
    EvolveOptions opt;
    opt.sampleSpacing = 1.0;
    auto traj = evolve(s, 5.0, cfg, opt);
    double worst = 0.0;
    for (double k : s.geometry.curvature) worst = std::max(worst, std::fabs(k - 1));
    CHECK(worst < 0.05);
    CHECK(traj.size() == 6);
    CHECK(std::fabs(enclosed_area(s.curve, s.geometry) - pi) < 1e-8);
}

TEST_CASE("circle trajectory samples")
{
    FlowConfig cfg;
    FlowState s = make_state(fixture("circle", 256), FlowMode::normalized);
    int calls = 0;
    EvolveOptions opt;
    opt.sampleSpacing = 0.1;
    opt.observer = [&](const FlowState&) { ++calls; };
    auto traj = evolve(s, 1.0, cfg, opt);
    CHECK(calls == 11);
    for (auto& r : traj) CHECK(std::fabs(r.kappaMax - 1) < 1e-6);
    CHECK(traj.back().t == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("flow invariants on the fixtures")
{
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        FlowConfig cfg;
        cfg.mode = FlowMode::unnormalized;
        FlowState s = make_state(fixture(name, 256), FlowMode::unnormalized);
        double a0 = s.geometry.area;
        double prevRatio = s.geometry.length * s.geometry.length / (4 * pi * s.geometry.area);
        bool monotone = true;
        const double dtau = 1e-4;
        for (int i = 0; i < 500; ++i) {
            s = csf_step(s, dtau, cfg);
            double ratio = s.geometry.length * s.geometry.length / (4 * pi * s.geometry.area);
            if (ratio > prevRatio + 1e-6) monotone = false;
            prevRatio = ratio;
        }
        double rate = (s.geometry.area - a0) / (500 * dtau);
        CHECK(std::fabs(rate + 2 * pi) < 0.01 * 2 * pi);
        CHECK(monotone);
    }
}

TEST_CASE("normalized area is pi after every step")
{
    FlowConfig cfg;
    FlowState s = make_state(fixture("bean", 256), FlowMode::normalized);
    for (int i = 0; i < 200; ++i) {
        s = ncsf_step(s, next_dt(s, cfg), cfg);
        CHECK(std::fabs(enclosed_area(s.curve, s.geometry) - pi) < 1e-8);
    }
}

TEST_CASE("explicit scheme agrees with the semi-implicit one")
{
    FlowConfig ex;
    ex.scheme = Scheme::explicit_euler;
    ex.mode = FlowMode::unnormalized;
    ex.nVertices = 128;
    FlowConfig si = ex;
    si.scheme = Scheme::semi_implicit;
    FlowState a = make_state(fixture("ellipse2", 128), FlowMode::unnormalized);
    FlowState b = a;
    double a0 = signed_area(a.curve);
    double dt = next_dt(a, ex);
    for (int i = 0; i < 200; ++i) {
        a = csf_step(a, dt, ex);
        b = csf_step(b, dt, si);
    }
    double exact = a0 - 2 * pi * 200 * dt;
    CHECK(std::fabs(signed_area(a.curve) / exact - 1) < 5e-3);
    CHECK(std::fabs(signed_area(b.curve) / exact - 1) < 5e-3);
    double d = 0.0;
    for (std::size_t i = 0; i < a.curve.size(); ++i) d = std::max(d, norm(a.curve[i] - b.curve[i]));
    CHECK(d < 5e-3);
}

TEST_CASE("time reparametrization")
{
    CHECK(time_reparametrization({}).empty());
    std::vector<std::pair<double, double>> flat;
    for (int i = 0; i <= 10; ++i) flat.emplace_back(0.1 * i, pi);
    for (auto& [tau, t] : time_reparametrization(flat)) CHECK(t == doctest::Approx(tau));
    const double a0 = 2.0 * pi;
    std::vector<std::pair<double, double>> shrink;
    for (int i = 0; i <= 5000; ++i) {
        double tau = 1e-4 * i;
        shrink.emplace_back(tau, a0 - 2 * pi * tau);
    }
    auto t = time_reparametrization(shrink);
    for (std::size_t i = 0; i < t.size(); i += 500) {
        double tau = t[i].first;
        CHECK(std::fabs(t[i].second + 0.5 * std::log(1 - 2 * pi * tau / a0)) < 1e-6);
    }
    CHECK_THROWS_AS(time_reparametrization({{0.0, 1.0}, {0.1, -1.0}}), std::domain_error);
}

TEST_CASE("bean stays embedded")
{
    SampledCurve b = fixture("bean", 256);
    CHECK(self_intersection_check(b));
    CHECK_FALSE(is_convex(b));
    FlowConfig cfg;
    FlowState s = make_state(b, FlowMode::normalized);
    EvolveOptions opt;
    opt.sampleSpacing = 0.5;
    opt.keepCurves = true;
    auto traj = evolve(s, 4.0, cfg, opt);
    for (auto& r : traj) CHECK(self_intersection_check(*r.curve));
}

TEST_CASE("ellipse4 settles")
{
    FlowConfig cfg;
    FlowState s = make_state(fixture("ellipse4", 256), FlowMode::normalized);
    EvolveOptions opt;
    opt.sampleSpacing = 0.5;
    auto traj = evolve(s, 6.0, cfg, opt);
    CHECK(traj.back().kappaMax < 1.1);
    for (std::size_t i = 3; i < traj.size(); ++i) CHECK(traj[i].kappaMax <= traj[i - 1].kappaMax + 1e-9);
}

}
