#include "csf/curve.hpp"

#include <algorithm>
#include <cmath>

#include "csf/numerics.hpp"
#include "csf/spline.hpp"

namespace csf {

double CurveGeometry::kappa_max() const { return *std::max_element(curvature.begin(), curvature.end()); }
double CurveGeometry::kappa_min() const { return *std::min_element(curvature.begin(), curvature.end()); }

void validate(const SampledCurve& c)
{
    const std::size_t n = c.size();
    if (n < 8) throw CurveError("curve needs at least 8 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        const PlaneVector& p = c[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw CurveError("non-finite vertex " + std::to_string(i));
        if (i + 1 < n || c.closed) {
            if (p == c[(i + 1) % n]) throw CurveError("repeated vertex " + std::to_string(i));
        }
    }
    if (c.closed && signed_area(c) <= 0.0) throw CurveError("closed curve must be anticlockwise");
}

double signed_area(const SampledCurve& c)
{
    const std::size_t n = c.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += cross(c[i], c[(i + 1) % n]);
    return 0.5 * s;
}

double enclosed_area(const SampledCurve& c, const CurveGeometry& g)
{
    const std::size_t n = c.size();
    double caps = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        double l = norm(c[j] - c[i]);
        double k = 0.5 * (g.curvature[i] + g.curvature[j]);
        double x = 0.5 * l * k;
        if (std::fabs(x) < 1e-3) {
            caps += l * l * l * k / 12.0 * (1.0 + 0.3 * x * x);
        } else {
            double al = std::asin(std::clamp(x, -1.0, 1.0));
            caps += (2 * al - std::sin(2 * al)) / (2 * k * k) * (k > 0 ? 1.0 : -1.0);
        }
    }
    return signed_area(c) + caps;
}

double polyline_length(const SampledCurve& c)
{
    const std::size_t n = c.size();
    double s = 0.0;
    std::size_t m = c.closed ? n : n - 1;
    for (std::size_t i = 0; i < m; ++i) s += norm(c[(i + 1) % n] - c[i]);
    return s;
}

double min_spacing(const SampledCurve& c)
{
    const std::size_t n = c.size();
    double s = inf;
    std::size_t m = c.closed ? n : n - 1;
    for (std::size_t i = 0; i < m; ++i) s = std::min(s, norm(c[(i + 1) % n] - c[i]));
    return s;
}

CurveGeometry compute_geometry(const SampledCurve& c)
{
    const std::size_t n = c.size();
    if (n < 3) throw CurveError("geometry needs at least 3 vertices");
    CurveGeometry g;
    g.tangent.resize(n);
    g.normal.resize(n);
    g.curvature.resize(n);
    g.arclength.resize(n);

    auto interior = [&](std::size_t i, std::size_t im, std::size_t ip) {
        PlaneVector e0 = c[i] - c[im], e1 = c[ip] - c[i];
        double l0 = norm(e0), l1 = norm(e1);
        // Tangent of the circle through the three points.
        g.tangent[i] = normalized(e1 * (l0 / l1) + e0 * (l1 / l0));
        g.curvature[i] = 2.0 * cross(e0, e1) / (l0 * l1 * norm(c[ip] - c[im]));
    };

    if (c.closed) {
        for (std::size_t i = 0; i < n; ++i) interior(i, (i + n - 1) % n, (i + 1) % n);
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i) interior(i, i - 1, i + 1);
        g.tangent[0] = normalized(c[1] - c[0]);
        g.tangent[n - 1] = normalized(c[n - 1] - c[n - 2]);
        g.curvature[0] = g.curvature[1];
        g.curvature[n - 1] = g.curvature[n - 2];
    }
    for (std::size_t i = 0; i < n; ++i) g.normal[i] = rot_right(g.tangent[i]);

    g.arclength[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) g.arclength[i] = g.arclength[i - 1] + norm(c[i] - c[i - 1]);
    g.length = g.arclength[n - 1] + (c.closed ? norm(c[0] - c[n - 1]) : 0.0);
    g.area = c.closed ? signed_area(c) : 0.0;
    return g;
}

namespace {

SampledCurve resample_open(const SampledCurve& c, std::size_t n)
{
    std::vector<double> s(c.size(), 0.0);
    for (std::size_t i = 1; i < c.size(); ++i) s[i] = s[i - 1] + norm(c[i] - c[i - 1]);
    SampledCurve out;
    out.closed = false;
    out.vertices.resize(n);
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double t = s.back() * double(j) / double(n - 1);
        while (k + 2 < s.size() && s[k + 1] < t) ++k;
        double w = (t - s[k]) / (s[k + 1] - s[k]);
        out.vertices[j] = c[k] + (c[k + 1] - c[k]) * w;
    }
    return out;
}

// Places n points on the spline, starting at parameter 0, so that
// consecutive chords have length chord. Returns the parameter reached
// after the n-th chord.
double march(const PeriodicSpline& sp, double chord, std::size_t n, std::vector<double>* params)
{
    double u = 0.0;
    double step = 0.5 * chord;
    if (params) params->assign(1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        PlaneVector p0 = sp.point(u);
        auto f = [&](double v) { return norm(sp.point(v) - p0) - chord; };
        if (!std::isfinite(p0.x) || !std::isfinite(p0.y)) throw CurveError("non-finite curve in resampling");
        double lo = u, hi = u + step;
        int guard = 0;
        while (f(hi) < 0.0) {
            lo = hi;
            hi += step;
            if (++guard > 1000) throw CurveError("resampling failed to advance");
        }
        u = find_root(f, lo, hi);
        if (params && k + 1 < n) params->push_back(u);
    }
    return u;
}

}

SampledCurve resample_by_arclength(const SampledCurve& c, std::size_t n)
{
    if (n < 8) throw CurveError("resample needs n >= 8");
    if (polyline_length(c) <= 0.0) throw CurveError("degenerate curve");
    if (!c.closed) return resample_open(c, n);

    PeriodicSpline sp(c);
    const double period = sp.period();
    double c0 = sp.total_arc_length() / double(n);
    double g0 = march(sp, c0, n, nullptr) - period;
    double c1 = c0 * (1.0 - 1e-4);
    double g1 = march(sp, c1, n, nullptr) - period;
    for (int it = 0; it < 50 && std::fabs(g1) > 1e-14 * period; ++it) {
        if (g1 == g0) break;
        double c2 = c1 - g1 * (c1 - c0) / (g1 - g0);
        c0 = c1;
        g0 = g1;
        c1 = c2;
        g1 = march(sp, c1, n, nullptr) - period;
    }
    std::vector<double> params;
    march(sp, c1, n, &params);
    SampledCurve out;
    out.closed = true;
    out.vertices.reserve(n);
    for (double u : params) out.vertices.push_back(sp.point(u));
    return out;
}

SampledCurve scaled(const SampledCurve& c, double s)
{
    SampledCurve out = c;
    for (auto& p : out.vertices) p *= s;
    return out;
}

SampledCurve normalize_to_area_pi(const SampledCurve& c)
{
    double a = signed_area(c);
    if (!(a > 0.0)) throw CurveError("nonpositive area");
    return scaled(c, std::sqrt(pi / a));
}

VertexCount vertex_count(const SampledCurve& c, double relTol)
{
    CurveGeometry g = compute_geometry(c);
    const std::size_t n = c.size();
    double kmax = 0.0;
    for (double k : g.curvature) kmax = std::max(kmax, std::fabs(k));
    double tol = relTol * kmax;
    std::vector<int> signs;
    for (std::size_t i = 0; i < n; ++i) {
        double d = g.curvature[(i + 1) % n] - g.curvature[i];
        if (std::fabs(d) > tol) signs.push_back(d > 0 ? 1 : -1);
    }
    VertexCount vc;
    if (signs.empty()) {
        vc.constantCurvature = true;
        return vc;
    }
    for (std::size_t i = 0; i < signs.size(); ++i)
        if (signs[i] != signs[(i + 1) % signs.size()]) ++vc.count;
    return vc;
}

namespace {

int orient(const PlaneVector& a, const PlaneVector& b, const PlaneVector& c)
{
    double v = cross(b - a, c - a);
    return (v > 0) - (v < 0);
}

bool on_segment(const PlaneVector& a, const PlaneVector& b, const PlaneVector& p)
{
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const PlaneVector& p1, const PlaneVector& p2, const PlaneVector& q1, const PlaneVector& q2)
{
    int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2), o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

}

bool self_intersection_check(const SampledCurve& c)
{
    const std::size_t n = c.size();
    const std::size_t m = c.closed ? n : n - 1;
    struct Box { double x0, x1, y0, y1; };
    std::vector<Box> box(m);
    for (std::size_t i = 0; i < m; ++i) {
        const PlaneVector &a = c[i], &b = c[(i + 1) % n];
        box[i] = {std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y)};
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 2; j < m; ++j) {
            if (c.closed && i == 0 && j == m - 1) continue;
            if (box[i].x1 < box[j].x0 || box[j].x1 < box[i].x0 || box[i].y1 < box[j].y0 || box[j].y1 < box[i].y0)
                continue;
            if (segments_intersect(c[i], c[(i + 1) % n], c[j], c[(j + 1) % n])) return false;
        }
    }
    return true;
}

bool is_convex(const SampledCurve& c)
{
    const std::size_t n = c.size();
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        PlaneVector e0 = c[i] - c[(i + n - 1) % n], e1 = c[(i + 1) % n] - c[i];
        if (cross(e0, e1) < 0.0) return false;
        turning += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    return std::fabs(turning - 2 * pi) < 1e-6;
}

int winding_number(const SampledCurve& c, PlaneVector p)
{
    const std::size_t n = c.size();
    int w = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const PlaneVector &a = c[i], &b = c[(i + 1) % n];
        if (a.y <= p.y) {
            if (b.y > p.y && cross(b - a, p - a) > 0) ++w;
        } else {
            if (b.y <= p.y && cross(b - a, p - a) < 0) --w;
        }
    }
    return w;
}

}
