#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "csf/comparison.hpp"
#include "csf/curve.hpp"
#include "csf/fixtures.hpp"
#include "csf/models.hpp"
#include "csf/numerics.hpp"

using namespace csf;

namespace {

// Profile of a body on the uniform grid a_k = k pi / N, with v = 0 at both ends.
VProfile body_vprofile(const ConvexBody& body, std::size_t N, double t)
{
    auto g = linspace(0, pi, N + 1);
    std::vector<double> inner(g.begin() + 1, g.end() - 1);
    Profile p = model_profile(body, inner);
    VProfile v;
    v.a = g;
    v.v.assign(N + 1, 0.0);
    v.time = t;
    v.symmetric = true;
    for (std::size_t k = 0; k < inner.size(); ++k) v.v[k + 1] = 0.5 * p.f[k] * p.f[k];
    return v;
}

VProfile paperclip_vprofile(std::size_t N, double t) { return body_vprofile(PaperclipBody::normalized(t), N, t); }

VProfile expander_vprofile(const ExpanderFamily& fam, double t, double aMax, std::size_t N)
{
    auto g = linspace(0, aMax, N + 1);
    std::vector<double> inner(g.begin() + 1, g.end());
    Profile p = expander_profile(fam, t, inner);
    VProfile v;
    v.kind = ProfileKind::exterior;
    v.a = g;
    v.v.assign(N + 1, 0.0);
    v.time = t;
    for (std::size_t k = 0; k < inner.size(); ++k) v.v[k + 1] = 0.5 * p.f[k] * p.f[k];
    return v;
}

double sup_finite(const std::vector<double>& x)
{
    double m = 0.0;
    for (double y : x)
        if (std::isfinite(y)) m = std::max(m, std::fabs(y));
    return m;
}

// Value of -1/E written out directly for the finite branch.
double F_direct(double a, double b)
{
    double E = std::cos(a / 2) / (2 * a * std::sin(a / 2)) - 1 / (a * a) + 1 / (a * a + b);
    return -1 / E;
}

// Richardson extrapolation of the oracle from n and 2n interior nodes.
double oracle_extrapolated(double a, double b, std::size_t n)
{
    double c = calF_oracle(a, b, n), f = calF_oracle(a, b, 2 * n);
    return (4 * f - c) / 3;
}

}

TEST_SUITE("comparison") {

TEST_CASE("inner part and threshold near zero")
{
    CHECK(f_inner_part(0.0) == doctest::Approx(-1.0 / 12).epsilon(1e-14));
    for (double x : {2e-2, 0.1, 1.0, 3.0}) {
        double direct = std::cos(x / 2) / (2 * x * std::sin(x / 2)) - 1 / (x * x);
        CHECK(f_inner_part(x) == doctest::Approx(direct).epsilon(1e-10));
    }
    // The series and the direct formula meet continuously.
    CHECK(std::fabs(f_inner_part(0.0099999) - f_inner_part(0.0100001)) < 1e-9);
    CHECK(f_threshold(0.0) == doctest::Approx(12.0));
    CHECK(f_threshold(pi) == doctest::Approx(0.0).epsilon(1e-12));
    for (double a : {0.5, 1.0, 2.0, 3.0})
        CHECK(f_threshold(a) == doctest::Approx(a * a * a / (2 * std::tan(a / 2) - a)).epsilon(1e-12));
}

TEST_CASE("calF hand values")
{
    auto f1 = calF(1.0, -1.5);
    CHECK(f1.finite());
    CHECK(f1.value == doctest::Approx(F_direct(1.0, -1.5)).epsilon(1e-12));
    CHECK(f1.value == doctest::Approx(0.479672).epsilon(1e-5));
    CHECK(f1.branch == FBranch::expression);

    auto f2 = calF(pi / 2, 0.0);
    CHECK(f2.value == doctest::Approx(-pi).epsilon(1e-12));
    CHECK(f2.inner == doctest::Approx(1 / pi).epsilon(1e-12));
    CHECK(f2.branch == FBranch::zero);

    CHECK(calF(0.0, 1.0).value == doctest::Approx(-12.0 / 11).epsilon(1e-13));
    CHECK_THROWS_AS(calF(0.0, 0.0), FPoleError);
    CHECK_FALSE(calF(0.0, 24.0).finite());
    CHECK_FALSE(calF(1e-9, 24.0).finite());
    CHECK(calF(0.0, 11.9).finite());
}

TEST_CASE("calF domain errors")
{
    CHECK_THROWS_AS(calF(1.0, -1.0), FPoleError);
    CHECK_THROWS_AS(calF(2.0, -4.0), FPoleError);
    CHECK_THROWS_AS(calF(2 * pi, 0.0), std::domain_error);
    CHECK_THROWS_AS(calF_oracle(1.0, 0.0, 16), std::invalid_argument);
}

TEST_CASE("oracle converges at second order")
{
    double exact = -12.0 / 11;
    double e1 = std::fabs(calF_oracle(0.0, 1.0, 64) - exact);
    double e2 = std::fabs(calF_oracle(0.0, 1.0, 128) - exact);
    CHECK(e2 < e1);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
    // phi = 1 gives -1, an upper bound of the infimum.
    CHECK(calF_oracle(0.0, 1.0, 64) < -1.0);
}

TEST_CASE("calF matches the oracle on a grid")
{
    int compared = 0, unbounded = 0;
    for (int i = 0; i < 10; ++i) {
        double a = -5.4 + 1.2 * i;
        for (int j = 0; j < 10; ++j) {
            double b = -30.0 + 5.0 * j + 0.37;
            if (std::fabs(a * a + b) < 0.5) continue;
            double lam = f_threshold(a);
            if (std::fabs(b - lam) < 0.5) continue;
            auto F = calF(a, b);
            auto O = calF_oracle_detail(a, b, 128);
            CAPTURE(a);
            CAPTURE(b);
            REQUIRE(F.finite() == O.bounded);
            if (!F.finite()) {
                ++unbounded;
                continue;
            }
            double ref = oracle_extrapolated(a, b, 128);
            CHECK(std::fabs(F.value - ref) <= 1e-5 * std::max(1.0, std::fabs(F.value)));
            ++compared;
        }
    }
    CHECK(compared > 40);
    CHECK(unbounded > 5);
}

TEST_CASE("G is minus F at the shifted arguments")
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> dv(0.1, 3.0), dp(-3.0, 3.0), dpp(-5.0, -0.01);
    for (int k = 0; k < 500; ++k) {
        double v = dv(rng), vp = dp(rng), vpp = dpp(rng);
        auto G = G_operator(v, vp, vpp);
        auto F = calF(vp, 2 * v * vpp - vp * vp);
        CHECK_FALSE(G.degenerate);
        CHECK(G.value == doctest::Approx(-F.value).epsilon(1e-9));
    }
    CHECK(G_operator(1.0, 0.5, 0.0).degenerate);
    CHECK(G_operator(1.0, 0.5, 0.0).value == 0.0);
    CHECK(G_operator(1.0, 0.5, 0.3).degenerate);
    CHECK_THROWS(G_operator(0.0, 0.5, -1.0));
}

TEST_CASE("disk right-hand side vanishes at second order")
{
    EllipseBody disk(1, 1);
    auto v = body_vprofile(disk, 512, 0);
    auto rhs = comparison_rhs(v);
    auto range = eval_range(v);
    for (std::size_t k = range.lo; k < range.hi; ++k) {
        double h = v.spacing();
        double vpp = (v.v[k + 1] - 2 * v.v[k] + v.v[k - 1]) / (h * h);
        auto G = G_operator(v.v[k], (v.v[k + 1] - v.v[k - 1]) / (2 * h), vpp);
        CHECK(std::isfinite(G.value));
        CHECK(G.value < 0);
    }
    CHECK(std::isnan(rhs.front()));
    CHECK(std::isnan(rhs.back()));
    double s1 = sup_finite(rhs);
    double s2 = sup_finite(comparison_rhs(body_vprofile(disk, 1024, 0)));
    double s3 = sup_finite(comparison_rhs(body_vprofile(disk, 2048, 0)));
    CHECK(s3 < 5e-3);
    CHECK(s1 / s2 > 3.0);
    CHECK(s2 / s3 > 3.0);
}

TEST_CASE("slope guard")
{
    EllipseBody disk(1, 1);
    auto v = body_vprofile(disk, 512, 0);
    // Replace the profile by the linear v = pi a near the ends, inside the collar.
    for (std::size_t k = 0; k < v.a.size(); ++k)
        if (v.a[k] < 0.04) v.v[k] = pi * v.a[k];
    CHECK_THROWS_AS(comparison_rhs(v, 0.0), GuardError);
    CHECK_NOTHROW(comparison_rhs(v));
    for (auto& x : v.v) x *= 1.5;
    CHECK_THROWS_AS(comparison_rhs(v), GuardError);
}

TEST_CASE("paperclip profiles satisfy the equation")
{
    auto res = [](std::size_t N, double t, double d) {
        return pde_residual(paperclip_vprofile(N, t - d), paperclip_vprofile(N, t), paperclip_vprofile(N, t + d), d);
    };
    auto r1 = res(512, 0.0, 1e-3);
    auto r2 = res(1024, 0.0, 5e-4);
    CHECK(r2.sup < 2e-2);
    CHECK(r1.sup / r2.sup > 2.5);
    CHECK(r2.l2 <= r2.sup);
    auto other = res(512, -1.0, 1e-3);
    CHECK(other.sup < 2e-2);
    CHECK_THROWS(pde_residual(paperclip_vprofile(128, -1e-3), paperclip_vprofile(256, 0), paperclip_vprofile(128, 1e-3), 1e-3));
}

TEST_CASE("expander profiles satisfy the exterior equation")
{
    ExpanderFamily fam(1.0);
    double d = 1e-3, aMax = 4.0;
    std::size_t N = 1024;
    auto r = pde_residual(expander_vprofile(fam, 1 - d, aMax, N), expander_vprofile(fam, 1, aMax, N),
                          expander_vprofile(fam, 1 + d, aMax, N), d);
    CHECK(r.sup < 5e-2);
}

TEST_CASE("integrating the equation")
{
    EllipseBody disk(1, 1);
    auto v0 = body_vprofile(disk, 128, 0);
    auto v1 = integrate_comparison_pde(v0, 1.0);
    CHECK(v1.time == doctest::Approx(1.0));
    double drift = 0;
    for (std::size_t k = 0; k < v0.v.size(); ++k) drift = std::max(drift, std::fabs(v1.v[k] - v0.v[k]));
    CHECK(drift < 1e-3);

    auto same = integrate_comparison_pde(v0, 0.0);
    CHECK(same.v == v0.v);

    // Paperclip from t = 0 to t = 1 with the exact profile as boundary data,
    // tabulated in time.
    std::size_t N = 128;
    auto p0 = paperclip_vprofile(N, 0);
    auto times = linspace(0, 1, 21);
    std::vector<VProfile> table;
    for (double t : times) table.push_back(paperclip_vprofile(N, t));
    double h = p0.spacing();
    PdeOptions opt;
    opt.boundary = [&](double a, double t) {
        auto k = std::size_t(std::lround(a / h));
        double s = std::clamp(t, 0.0, 1.0) * 20;
        auto j = std::min<std::size_t>(std::size_t(s), 19);
        double w = s - double(j);
        return (1 - w) * table[j].v[k] + w * table[j + 1].v[k];
    };
    auto p1 = integrate_comparison_pde(p0, 1.0, opt);
    double err = 0, moved = 0;
    for (std::size_t k = 0; k <= N; ++k) {
        err = std::max(err, std::fabs(p1.v[k] - table.back().v[k]));
        moved = std::max(moved, std::fabs(p0.v[k] - table.back().v[k]));
    }
    CHECK(err < 2e-2);
    CHECK(moved > 10 * err);
}

TEST_CASE("concave envelope")
{
    EllipseBody disk(1, 1);
    auto v = body_vprofile(disk, 256, 0);
    auto e = concave_envelope(v);
    CHECK(e.v == v.v);

    auto dented = v;
    for (std::size_t k = 100; k < 120; ++k) dented.v[k] -= 0.2;
    auto env = concave_envelope(dented);
    for (std::size_t k = 0; k < v.v.size(); ++k) CHECK(env.v[k] >= dented.v[k]);
    for (std::size_t k = 1; k + 1 < env.v.size(); ++k)
        CHECK(env.v[k + 1] - 2 * env.v[k] + env.v[k - 1] <= 1e-12);
    CHECK(env.v[110] > dented.v[110] + 0.1);
    CHECK(env.v[50] == dented.v[50]);
    auto again = concave_envelope(env);
    CHECK(again.v == env.v);
}

TEST_CASE("profile domination")
{
    auto g = open_grid(0, pi, 200);
    Profile disk = model_profile(EllipseBody(1, 1), g);
    auto self = profile_dominates(disk, disk);
    CHECK(self.holds);
    CHECK(self.margin == 0.0);
    Profile clip = model_profile(PaperclipBody::normalized(0), g);
    auto d = profile_dominates(disk, clip);
    CHECK(d.holds);
    CHECK(d.margin > 0.0);
    CHECK_FALSE(profile_dominates(clip, disk).holds);

    Profile part = disk;
    part.a.assign(g.begin(), g.begin() + 50);
    part.f.assign(disk.f.begin(), disk.f.begin() + 50);
    part.provenance.assign(disk.provenance.begin(), disk.provenance.begin() + 50);
    Profile far = disk;
    far.a.assign(g.begin() + 100, g.end());
    far.f.assign(disk.f.begin() + 100, disk.f.end());
    far.provenance.assign(disk.provenance.begin() + 100, disk.provenance.end());
    CHECK_THROWS(profile_dominates(part, far));
}

TEST_CASE("first domination time")
{
    auto g = open_grid(0, pi, 200);
    auto model = [&](double t) { return model_profile(PaperclipBody::normalized(t), g); };
    T0Options opt;
    opt.modelKappaMax = [](double t) { return paperclip_max_curvature_normalized(t); };

    Profile disk = model_profile(EllipseBody(1, 1), g);
    auto rd = find_t0(disk, model, opt);
    CHECK(rd.atUpperEnd);

    auto c = fixture("ellipse4", 512);
    Profile psi = generic_profile(c, g);
    opt.kappaMax = compute_geometry(c).kappa_max();
    auto r = find_t0(psi, model, opt);
    CHECK_FALSE(r.atUpperEnd);
    CHECK(r.t0 == doctest::Approx(-2.0762).epsilon(2e-3));
    CHECK(r.margin >= -1e-12);

    Profile lower = psi;
    for (auto& f : lower.f) f -= 0.1;
    opt.kappaMax = csf::nan;
    auto rl = find_t0(lower, model, opt);
    opt.kappaMax = csf::nan;
    auto rp = find_t0(psi, model, opt);
    CHECK(rl.t0 < rp.t0);
}

TEST_CASE("curvature bounds")
{
    CHECK(curvature_upper_bound(0.3, 0.3) == doctest::Approx(1 / std::sqrt(1 - std::exp(-1.0))).epsilon(1e-12));
    CHECK(curvature_upper_bound(0.0, 0.0) == doctest::Approx(1.257766).epsilon(1e-6));
    double excess = curvature_upper_bound(3.0, 0.0) - 1;
    CHECK(excess == doctest::Approx(0.25 * std::exp(-6.0)).epsilon(0.05));
    double prev = inf;
    for (double s = -1; s < 6; s += 0.25) {
        double b = curvature_upper_bound(s, 0);
        CHECK(b < prev);
        CHECK(b > 1);
        prev = b;
    }
    CHECK(curvature_lower_bound(std::log(std::sqrt(2.0)), 1.0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(curvature_lower_bound(0.7, 2.0) == doctest::Approx(curvature_lower_bound(0.7, 1.0) / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(curvature_lower_bound(8.0, 1.0) == doctest::Approx(-std::exp(-8.0)).epsilon(1e-6));
    CHECK_THROWS(curvature_lower_bound(0.0, 1.0));
    CHECK_THROWS(curvature_lower_bound(1.0, 0.0));
}

TEST_CASE("model families meet the second-variation inequality with equality")
{
    for (double ratio : {1.0, 2.0, 4.0}) {
        EllipseBody e(std::sqrt(ratio), 1 / std::sqrt(ratio));
        ModelFamily fam(e);
        double worst = inf;
        for (double a = 0.05; a < pi / 2; a += 0.05) {
            double d = 1e-3;
            double f = fam.member_for_area(a).length;
            double fl = fam.member_for_area(a - d).length, fr = fam.member_for_area(a + d).length;
            double fp = (fr - fl) / (2 * d), fpp = (fr - 2 * f + fl) / (d * d);
            auto m = fam.member_for_area(a);
            double slack = calF(f * fp, f * f * f * fpp).value / f - 2 / m.boundaryRadius;
            worst = std::min(worst, slack);
        }
        CAPTURE(ratio);
        CHECK(worst >= -1e-3);
    }
}

}
