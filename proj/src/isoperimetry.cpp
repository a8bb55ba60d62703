#include "csf/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csf/numerics.hpp"
#include "csf/spline.hpp"

namespace csf {

const char* to_string(Provenance p)
{
    switch (p) {
    case Provenance::closed_form: return "closed_form";
    case Provenance::model: return "model";
    case Provenance::search: return "search";
    case Provenance::asymptotic: return "asymptotic";
    case Provenance::hole: return "hole";
    }
    return "unknown";
}

double Profile::at(double area) const
{
    if (a.empty() || area < a.front() || area > a.back()) return nan;
    auto it = std::upper_bound(a.begin(), a.end(), area);
    std::size_t k = it == a.end() ? a.size() - 1 : std::size_t(it - a.begin());
    if (k == 0) return f[0];
    double w = (area - a[k - 1]) / (a[k] - a[k - 1]);
    return (1 - w) * f[k - 1] + w * f[k];
}

namespace {

// (e - sin e cos e) with its small-argument series.
double segment_factor(double e)
{
    if (e < 1e-2) {
        double w = 2 * e, w2 = w * w;
        return w * w2 / 12.0 * (1.0 - w2 / 20.0 + w2 * w2 / 840.0);
    }
    return e - std::sin(e) * std::cos(e);
}

// Interior disk area as a function of theta, with the theta -> pi/2 end
// written through eps = pi/2 - theta.
double disk_area(double theta)
{
    if (theta <= pi / 4) {
        double t = std::tan(theta);
        return theta - t + (pi / 2 - theta) * t * t;
    }
    double e = pi / 2 - theta;
    if (e == 0.0) return pi / 2;
    double ct = std::cos(e) / std::sin(e);
    return ct * ct * segment_factor(e) + (pi / 2 - e) - std::sin(e) * std::cos(e);
}

double disk_exterior_area(double theta)
{
    double e = pi / 2 - theta;
    double t = theta <= pi / 4 ? std::tan(theta) : std::cos(e) / std::sin(e);
    return t - theta + (pi / 2 + theta) * t * t;
}

double cot_times(double e)
{
    // e cot e
    if (e < 1e-4) return 1.0 - e * e / 3.0;
    return e * std::cos(e) / std::sin(e);
}

}

double disk_theta(double a)
{
    if (!(a > 0.0 && a < pi)) throw std::domain_error("disk_profile needs 0 < a < pi");
    double b = std::min(a, pi - a);
    return find_root([&](double th) { return disk_area(th) - b; }, 0.0, pi / 2, 1e-16);
}

double disk_profile(double a)
{
    double th = disk_theta(a);
    if (th <= pi / 4) return (pi - 2 * th) * std::tan(th);
    return 2 * cot_times(pi / 2 - th);
}

double disk_exterior_theta(double a)
{
    if (!(a > 0.0)) throw std::domain_error("disk_exterior_profile needs a > 0");
    double hi = pi / 4;
    while (disk_exterior_area(hi) < a) hi = pi / 2 - (pi / 2 - hi) / 4;
    return find_root([&](double th) { return disk_exterior_area(th) - a; }, 0.0, hi, 1e-16);
}

double disk_exterior_profile(double a)
{
    double th = disk_exterior_theta(a);
    double e = pi / 2 - th;
    double t = th <= pi / 4 ? std::tan(th) : std::cos(e) / std::sin(e);
    return (pi + 2 * th) * t;
}

Profile disk_profile_on(const std::vector<double>& aGrid)
{
    Profile p;
    p.kind = ProfileKind::interior;
    p.domainArea = pi;
    p.a = aGrid;
    for (double a : aGrid) {
        p.f.push_back(disk_profile(a));
        p.provenance.push_back(Provenance::closed_form);
    }
    return p;
}

Profile disk_exterior_profile_on(const std::vector<double>& aGrid)
{
    Profile p;
    p.kind = ProfileKind::exterior;
    p.a = aGrid;
    for (double a : aGrid) {
        p.f.push_back(disk_exterior_profile(a));
        p.provenance.push_back(Provenance::closed_form);
    }
    return p;
}

// ---------------------------------------------------------------- model family

ModelFamily::ModelFamily(const ConvexBody& body) : body_(body)
{
    logLo_ = std::log(std::clamp(body.complement_scale(), 1e-300, 1.0)) - 40.0;
    half_ = integrate(
        [&](double w) {
            double e = std::exp(w);
            BoundaryPoint p = body_.at_complement(e);
            return 2 * p.x.y * p.radius * std::cos(e) * e;
        },
        logLo_, std::log(pi / 2));
}

double ModelFamily::cap(double eps) const
{
    if (eps >= pi / 2) return 0.0;
    auto inEps = [&](double e) {
        BoundaryPoint p = body_.at_complement(e);
        return 2 * p.x.y * p.radius * std::cos(e);
    };
    if (eps > 0.5) return integrate(inEps, eps, pi / 2);
    double inner = integrate([&](double w) { return inEps(std::exp(w)) * std::exp(w); }, logLo_, std::log(eps));
    return half_ - inner;
}

FamilyMember ModelFamily::member(double eps) const
{
    FamilyMember m;
    m.eps = eps;
    BoundaryPoint p = body_.at_complement(eps);
    m.endpoint = p.x;
    m.boundaryRadius = p.radius;
    if (eps >= pi / 2) {
        m.rho = 0.0;
        return m;
    }
    if (eps <= 0.0) {
        m.rho = inf;
        m.length = 2 * p.x.y;
        m.area = half_;
        return m;
    }
    double y = p.x.y;
    m.rho = y / std::sin(eps);
    m.length = 2 * eps * m.rho;
    m.area = m.rho * m.rho * segment_factor(eps) + cap(eps);
    return m;
}

FamilyMember ModelFamily::member_for_area(double a) const
{
    if (!(a > 0.0) || a > half_ * (1 + 1e-14)) throw std::domain_error("family area outside (0, A/2]");
    double wLo = logLo_, wHi = std::log(pi / 2);
    if (member(std::exp(wLo)).area <= a) return member(0.0);
    double w = find_root([&](double w) { return member(std::exp(w)).area - a; }, wLo, wHi, 1e-14);
    return member(std::exp(w));
}

Profile model_profile(const ConvexBody& body, const std::vector<double>& aGrid)
{
    ModelFamily fam(body);
    double A = 2 * fam.half_area();
    Profile p;
    p.kind = ProfileKind::interior;
    p.domainArea = A;
    p.a = aGrid;
    p.f.resize(aGrid.size());
    p.provenance.assign(aGrid.size(), Provenance::model);
    for (std::size_t k = 0; k < aGrid.size(); ++k) {
        double a = aGrid[k];
        if (!(a > 0.0 && a < A)) throw std::domain_error("model_profile grid outside (0, A)");
        p.f[k] = fam.member_for_area(std::min(a, A - a)).length;
    }
    return p;
}

Profile model_profile_from_support(const SupportFunction& h, std::size_t nGrid)
{
    validate(h);
    if (!h.doublySymmetric) throw CurveError("model profile needs a doubly symmetric support function");
    std::vector<double> r = radius_of_curvature_from_support(h);
    std::size_t n = r.size();
    double rmax = *std::max_element(r.begin(), r.end());
    if (*std::min_element(r.begin(), r.end()) <= 0.0) throw CurveError("support function is not strictly convex");
    // Curvature maxima on the x axis: r nondecreasing on [0, pi/2].
    for (std::size_t i = 1; 4 * i <= n; ++i)
        if (r[i] < r[i - 1] - 1e-9 * rmax) throw CurveError("curvature maxima are not on the x axis");
    SupportBody body(h);
    if (std::fabs(body.area() - pi) > 1e-6) throw CurveError("model profile needs a domain of area pi");
    return model_profile(body, open_grid(0.0, pi, nGrid));
}

// ---------------------------------------------------------------- y family

namespace {

// Arc of a member of the family built on the rotated body, tested against
// the outline of the original body.
bool y_member_valid(const FamilyMember& m, const SampledCurve& outline)
{
    if (!std::isfinite(m.rho) || m.rho <= 0.0) return true;
    double cx = m.endpoint.x + m.endpoint.y * std::cos(m.eps) / std::sin(m.eps);
    const int samples = 64;
    for (int j = 1; j < samples; ++j) {
        double s = -m.eps + 2 * m.eps * j / samples;
        PlaneVector q{cx - m.rho * std::cos(s), m.rho * std::sin(s)};
        if (winding_number(outline, rot_left(q)) == 0) return false;
    }
    return true;
}

}

std::vector<YFamilyPoint> y_family_members(const ConvexBody& body, const std::vector<double>& epsGrid)
{
    RotatedBody rot(body);
    ModelFamily fam(rot);
    SampledCurve outline = sample_by_arclength(body, 1024);
    std::vector<YFamilyPoint> out;
    for (double eps : epsGrid) {
        FamilyMember m = fam.member(eps);
        out.push_back({m.area, m.length, y_member_valid(m, outline), eps});
    }
    return out;
}

std::vector<YFamilyPoint> y_family_lengths(const ConvexBody& body, const std::vector<double>& aGrid)
{
    RotatedBody rot(body);
    ModelFamily fam(rot);
    const double A = body.area();
    SampledCurve outline = sample_by_arclength(body, 1024);
    const std::size_t K = 400;
    std::vector<double> eps(K + 1), area(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        double x = double(k) / double(K);
        eps[k] = pi / 2 * (1e-6 + (1 - 1e-6) * x * x);
        area[k] = fam.member(eps[k]).area;
    }
    std::vector<YFamilyPoint> out;
    for (double a : aGrid) {
        double b = std::min(a, A - a);
        YFamilyPoint best;
        best.area = a;
        best.length = nan;
        for (std::size_t k = 0; k < K; ++k) {
            if ((area[k] - b) * (area[k + 1] - b) > 0) continue;
            double e = find_root([&](double x) { return fam.member(x).area - b; }, eps[k], eps[k + 1], 1e-15);
            FamilyMember m = fam.member(e);
            bool valid = y_member_valid(m, outline);
            if (valid && (!best.valid || m.length < best.length)) {
                best.length = m.length;
                best.valid = true;
                best.eps = e;
            } else if (!best.valid && std::isnan(best.length)) {
                best.length = m.length;
                best.eps = e;
            }
        }
        if (b >= area[0] && !best.valid) {
            best.length = 2 * fam.member(0.0).endpoint.y;
            best.valid = true;
            best.eps = 0.0;
        }
        out.push_back(best);
    }
    return out;
}

std::vector<YFamilyPoint> y_family_lengths(const SupportFunction& h, const std::vector<double>& aGrid)
{
    SupportBody body(h);
    return y_family_lengths(body, aGrid);
}

// ---------------------------------------------------------------- expander family

namespace {
constexpr double kExpanderQMax = 30.0;
constexpr std::size_t kExpanderNodes = 1500;

double expander_g(double q, double C)
{
    double q2 = q * q;
    double lead = q2 < 1e-8 ? 2.0 - 2.0 * q2 : -std::expm1(-2 * q2) / q2;
    return lead + 2 * C;
}
}

ExpanderFamily::ExpanderFamily(double C) : exp_(C)
{
    dq_ = kExpanderQMax / double(kExpanderNodes);
    thetaTable_.assign(kExpanderNodes + 1, 0.0);
    capTable_.assign(kExpanderNodes + 1, 0.0);
    areaTable_.assign(kExpanderNodes + 1, 0.0);
    auto g = [&](double q) { return expander_g(q, exp_.C()); };
    for (std::size_t k = 0; k < kExpanderNodes; ++k) {
        double q0 = k * dq_, q1 = q0 + dq_;
        thetaTable_[k + 1] =
            thetaTable_[k] + integrate([&](double p) { return 2.0 * std::exp(-p * p) / std::sqrt(g(p)); }, q0, q1, 1e-14);
    }
    for (std::size_t k = 0; k < kExpanderNodes; ++k) {
        double q0 = k * dq_, q1 = q0 + dq_;
        capTable_[k + 1] = capTable_[k] + integrate([&](double p) { return cap_rate(p); }, q0, q1, 1e-13);
    }
    for (std::size_t k = 0; k <= kExpanderNodes; ++k) areaTable_[k] = member(k * dq_).area;
}

double ExpanderFamily::theta_near(double q) const
{
    std::size_t k = std::min<std::size_t>(std::size_t(q / dq_), kExpanderNodes);
    double q0 = k * dq_;
    if (q == q0) return thetaTable_[k];
    return thetaTable_[k] +
           integrate([&](double p) { return 2.0 * std::exp(-p * p) / std::sqrt(expander_g(p, exp_.C())); }, q0, q, 1e-14);
}

// d(cap)/dq = 2 |y| sin(theta) |r| dtheta/dq.
double ExpanderFamily::cap_rate(double p) const
{
    double th = theta_near(p);
    double gp = expander_g(p, exp_.C());
    double h = std::exp(-p * p), hp = -p * std::sqrt(gp);
    double y = -(h * std::sin(th) + hp * std::cos(th));
    return 2 * y * std::sin(th) * 2 * exp_.C() / std::sqrt(gp);
}

double ExpanderFamily::cap_near(double q) const
{
    std::size_t k = std::min<std::size_t>(std::size_t(q / dq_), kExpanderNodes);
    double q0 = k * dq_;
    if (q == q0) return capTable_[k];
    return capTable_[k] + integrate([&](double p) { return cap_rate(p); }, q0, q, 1e-13);
}

FamilyMember ExpanderFamily::member(double q) const
{
    FamilyMember m;
    double th = theta_near(q);
    double h = std::exp(-q * q);
    double q2 = q * q;
    double gq = expander_g(q, exp_.C());
    double hp = -q * std::sqrt(gq);
    double c = std::cos(th), s = std::sin(th);
    m.endpoint = {h * c - hp * s, h * s + hp * c};
    m.boundaryRadius = exp_.C() * std::exp(q2);
    m.eps = pi / 2 - th;
    if (q == 0.0) {
        m.rho = 0.0;
        return m;
    }
    double y = -m.endpoint.y;
    m.rho = y / c;
    m.length = 2 * m.eps * m.rho;
    m.area = m.rho * m.rho * segment_factor(m.eps) + cap_near(q);
    return m;
}

FamilyMember ExpanderFamily::member_for_area(double a) const
{
    if (!(a > 0.0) || a > areaTable_.back()) throw std::domain_error("expander family area out of range");
    auto it = std::lower_bound(areaTable_.begin(), areaTable_.end(), a);
    std::size_t k = std::size_t(it - areaTable_.begin());
    if (areaTable_[k] == a) return member(k * dq_);
    double q = find_root([&](double q) { return member(q).area - a; }, (k - 1) * dq_, k * dq_, 1e-15);
    return member(q);
}

Profile expander_profile(const ExpanderFamily& fam, double t, const std::vector<double>& aGrid)
{
    double r = expander_scale(fam.expander().C(), t);
    Profile p;
    p.kind = ProfileKind::exterior;
    p.a = aGrid;
    for (double a : aGrid) {
        double b = a / (r * r);
        if (b > 0.0 && b <= fam.max_area()) {
            p.f.push_back(r * fam.member_for_area(b).length);
            p.provenance.push_back(Provenance::model);
        } else {
            p.f.push_back(nan);
            p.provenance.push_back(Provenance::hole);
        }
    }
    return p;
}

// ---------------------------------------------------------------- generic arc search

namespace {

// Circle leaving p in direction d0 and passing through q.
struct ArcGeometry {
    double length = 0.0;
    double radius = inf;
    double alpha = 0.0;  // angle between d0 and the chord
    double loopArea = 0.0;  // signed area of boundary piece p -> q closed by the arc
    double side = 1.0;  // +1 when the arc bends to the left of d0
    PlaneVector center;
};

ArcGeometry arc_geometry(PlaneVector p, PlaneVector d0, PlaneVector q, double pieceArea)
{
    ArcGeometry g;
    PlaneVector d = q - p;
    double dn = norm(d);
    double cr = cross(d0, d);
    g.alpha = std::atan2(std::fabs(cr), dot(d0, d));
    g.side = cr >= 0 ? 1.0 : -1.0;
    double s = std::sin(g.alpha);
    double a = g.alpha;
    g.length = a < 1e-6 ? dn * (1 + a * a / 6) : a * dn / s;
    double seg;
    if (a == 0.0) {
        seg = 0.0;
    } else if (a < 1e-4) {
        seg = dn * dn * a / 6.0;
    } else {
        g.radius = dn / (2 * s);
        seg = g.radius * g.radius * segment_factor(a);
    }
    if (a >= 1e-4) g.center = p + (g.side > 0 ? rot_left(d0) : rot_right(d0)) * g.radius;
    // The arc bulges to the side of d0 relative to the chord p -> q.
    double sign = cross(d, d0) > 0 ? 1.0 : -1.0;
    g.loopArea = pieceArea + 0.5 * cross(q, p) + sign * seg;
    return g;
}

struct ArcFrame {
    double u1;
    PlaneVector p, d0;
};

ArcFrame frame_at(const PeriodicSpline& sp, double u1, bool exterior)
{
    ArcFrame f;
    f.u1 = u1;
    f.p = sp.point(u1);
    PlaneVector nOut = rot_right(normalized(sp.derivative(u1)));
    f.d0 = exterior ? nOut : nOut * -1.0;
    return f;
}

ArcGeometry arc_to(const PeriodicSpline& sp, const ArcFrame& f, double u2)
{
    return arc_geometry(f.p, f.d0, sp.point(u2), sp.area_integral(f.u1, u2));
}

PlaneVector arc_point(const ArcFrame& f, const ArcGeometry& g, PlaneVector q, double frac)
{
    if (!std::isfinite(g.radius) || g.alpha < 1e-4) return f.p + (q - f.p) * frac;
    return g.center + rotate(f.p - g.center, g.side * 2 * g.alpha * frac);
}

bool arc_admissible(const SampledCurve& curve, const ArcFrame& f, const ArcGeometry& g, PlaneVector q,
                    std::size_t samples, bool exterior)
{
    for (std::size_t j = 1; j <= samples; ++j) {
        PlaneVector x = arc_point(f, g, q, double(j) / double(samples + 1));
        bool inside = winding_number(curve, x) != 0;
        if (inside == exterior) return false;
    }
    return true;
}

// Region area measured by a loop value, or a negative number when the
// loop does not describe an admissible region.
double region_area(double loop, double A, bool exterior)
{
    if (!exterior) return loop;
    if (loop < 0) return -loop;
    return loop - A;
}

struct Hit {
    std::size_t target;  // index into the area grid
    std::size_t vertex;
    double u2;
    double length;
};

struct TargetValue {
    double loop;
    std::size_t index;
};

std::vector<TargetValue> loop_targets(const std::vector<double>& a, double A, bool exterior)
{
    std::vector<TargetValue> t;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (exterior) {
            t.push_back({-a[k], k});
            t.push_back({A + a[k], k});
        } else {
            t.push_back({a[k], k});
            t.push_back({A - a[k], k});
        }
    }
    std::sort(t.begin(), t.end(), [](const TargetValue& x, const TargetValue& y) { return x.loop < y.loop; });
    return t;
}

void hits_for_vertex(const PeriodicSpline& sp, std::size_t i, bool exterior, const std::vector<TargetValue>& targets,
                     std::vector<Hit>& out)
{
    const std::size_t n = sp.size();
    const double u1 = sp.knot(i);
    const ArcFrame f = frame_at(sp, u1, exterior);

    auto scan = [&](double ua, double sa, double ub, double sb) {
        double lo = std::min(sa, sb), hi = std::max(sa, sb);
        auto first = std::lower_bound(targets.begin(), targets.end(), lo,
                                      [](const TargetValue& t, double v) { return t.loop < v; });
        for (auto it = first; it != targets.end() && it->loop <= hi; ++it) {
            if (it->loop == sa && ua != u1) continue;  // root at the shared end, counted once
            double tv = it->loop;
            double r = find_root([&](double v) { return arc_to(sp, f, v).loopArea - tv; }, ua, ub,
                                 1e-15 * sp.period());
            ArcGeometry g = arc_to(sp, f, r);
            if (std::fabs(g.loopArea - tv) > 1e-8 * std::max(1.0, std::fabs(tv))) continue;
            out.push_back({it->index, i, r, g.length});
        }
    };

    double prevU = u1, prevS = 0.0;
    double prevSide = 0.0, prevAlpha = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        double u = j < n ? sp.knot((i + j) % n) + (i + j >= n ? sp.period() : 0.0)
                         : u1 + sp.period() * (1 - 1e-9);
        ArcGeometry g = arc_to(sp, f, u);
        // The loop area jumps between -inf and +inf where the circle
        // degenerates to a line through p (alpha = pi); split there.
        if (j > 1 && g.side != prevSide && g.alpha > pi / 2 && prevAlpha > pi / 2) {
            double a = prevU, b = u;
            for (int it = 0; it < 60; ++it) {
                double m = 0.5 * (a + b);
                if (arc_to(sp, f, m).side == prevSide) a = m; else b = m;
            }
            scan(prevU, prevS, a, arc_to(sp, f, a).loopArea);
            scan(b, arc_to(sp, f, b).loopArea, u, g.loopArea);
        } else {
            scan(prevU, prevS, u, g.loopArea);
        }
        prevU = u;
        prevS = g.loopArea;
        prevSide = g.side;
        prevAlpha = g.alpha;
    }
}

double small_area_expansion(double a, double kappa) { return std::sqrt(2 * pi * a) - 4 * kappa * a / (3 * pi); }

Profile search_profile(const SampledCurve& curve, const std::vector<double>& aGrid, const GenericOptions& opt)
{
    validate(curve);
    if (!curve.closed) throw CurveError("profile search needs a closed curve");
    const bool ext = opt.exterior;
    PeriodicSpline sp(curve);
    const std::size_t n = sp.size();
    const double A = sp.area_integral(0.0, sp.period());
    double kmax = -inf, kmin = inf;
    for (std::size_t i = 0; i < n; ++i) {
        double k = sp.curvature(sp.knot(i));
        kmax = std::max(kmax, k);
        kmin = std::min(kmin, k);
    }
    double h = sp.period() / double(n);
    double aMin = opt.minArea > 0 ? opt.minArea : pi / 8 * (2 * h) * (2 * h);

    Profile prof;
    prof.kind = ext ? ProfileKind::exterior : ProfileKind::interior;
    prof.domainArea = ext ? 0.0 : A;
    prof.a = aGrid;
    prof.f.assign(aGrid.size(), nan);
    prof.provenance.assign(aGrid.size(), Provenance::hole);

    std::vector<double> searchA;
    std::vector<std::size_t> searchIdx;
    for (std::size_t k = 0; k < aGrid.size(); ++k) {
        double a = aGrid[k];
        if (!(a > 0.0) || (!ext && !(a < A))) throw std::domain_error("profile grid outside the admissible range");
        double small = ext ? a : std::min(a, A - a);
        if (small < aMin) {
            prof.f[k] = ext ? small_area_expansion(small, -kmin) : small_area_expansion(small, kmax);
            prof.provenance[k] = Provenance::asymptotic;
        } else {
            searchA.push_back(a);
            searchIdx.push_back(k);
        }
    }
    if (searchA.empty()) return prof;
    auto targets = loop_targets(searchA, A, ext);

    std::vector<std::vector<Hit>> perVertex(n);
#pragma omp parallel for schedule(dynamic, 4) if (opt.parallel)
    for (std::size_t i = 0; i < n; ++i) hits_for_vertex(sp, i, ext, targets, perVertex[i]);

    std::vector<std::vector<Hit>> perTarget(searchA.size());
    for (auto& v : perVertex)
        for (const Hit& hh : v) perTarget[hh.target].push_back(hh);

    auto neighbour = [&](std::size_t t, std::size_t vertex, double u2) -> const Hit* {
        const Hit* best = nullptr;
        double bestD = inf;
        for (const Hit& hh : perVertex[vertex]) {
            if (hh.target != t) continue;
            double d = std::fabs(sp.wrap(hh.u2) - sp.wrap(u2));
            d = std::min(d, sp.period() - d);
            if (d < bestD) {
                bestD = d;
                best = &hh;
            }
        }
        return bestD < 0.1 * sp.period() ? best : nullptr;
    };

#pragma omp parallel for schedule(dynamic, 1) if (opt.parallel)
    for (std::size_t t = 0; t < searchA.size(); ++t) {
        auto& hits = perTarget[t];
        std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) {
            return x.length < y.length || (x.length == y.length && x.vertex < y.vertex);
        });
        for (const Hit& hh : hits) {
            ArcFrame f = frame_at(sp, sp.knot(hh.vertex), ext);
            ArcGeometry g = arc_to(sp, f, hh.u2);
            if (!arc_admissible(curve, f, g, sp.point(hh.u2), opt.containmentSamples, ext)) continue;
            double L = hh.length;
            const Hit* lm = neighbour(t, (hh.vertex + n - 1) % n, hh.u2);
            const Hit* lp = neighbour(t, (hh.vertex + 1) % n, hh.u2);
            if (lm && lp) {
                double x0 = sp.knot(hh.vertex);
                double xm = hh.vertex == 0 ? sp.knot(n - 1) - sp.period() : sp.knot(hh.vertex - 1);
                double xp = hh.vertex + 1 == n ? sp.period() : sp.knot(hh.vertex + 1);
                double dm = xm - x0, dp = xp - x0;
                double fm = lm->length - L, fp = lp->length - L;
                // Quadratic through (dm, fm), (0, 0), (dp, fp).
                double c2 = (fp / dp - fm / dm) / (dp - dm);
                double c1 = fp / dp - c2 * dp;
                if (c2 > 0) {
                    double xs = -c1 / (2 * c2);
                    if (xs > dm && xs < dp) L += c1 * xs + c2 * xs * xs;
                }
            }
            prof.f[searchIdx[t]] = L;
            prof.provenance[searchIdx[t]] = Provenance::search;
            break;
        }
    }
    return prof;
}

}

Profile generic_profile(const SampledCurve& curve, const std::vector<double>& aGrid, GenericOptions opt)
{
    opt.exterior = false;
    return search_profile(curve, aGrid, opt);
}

Profile exterior_generic_profile(const SampledCurve& curve, const std::vector<double>& aGrid, GenericOptions opt)
{
    opt.exterior = true;
    return search_profile(curve, aGrid, opt);
}

std::optional<ArcCandidate> best_arc(const SampledCurve& curve, double area, bool exterior)
{
    PeriodicSpline sp(curve);
    const double A = sp.area_integral(0.0, sp.period());
    auto targets = loop_targets({area}, A, exterior);
    std::vector<Hit> hits;
    for (std::size_t i = 0; i < sp.size(); ++i) hits_for_vertex(sp, i, exterior, targets, hits);
    std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.length < y.length; });
    for (const Hit& hh : hits) {
        ArcFrame f = frame_at(sp, sp.knot(hh.vertex), exterior);
        ArcGeometry g = arc_to(sp, f, hh.u2);
        PlaneVector q = sp.point(hh.u2);
        if (!arc_admissible(curve, f, g, q, 32, exterior)) continue;
        ArcCandidate c;
        c.u1 = f.u1;
        c.u2 = hh.u2;
        c.p1 = f.p;
        c.p2 = q;
        c.center = g.center;
        c.radius = g.radius;
        c.chord = !std::isfinite(g.radius);
        c.arcLength = g.length;
        c.enclosedArea = region_area(g.loopArea, A, exterior);
        c.complementArea = exterior ? inf : A - g.loopArea;
        return c;
    }
    return std::nullopt;
}

std::vector<ArcCandidate> arc_candidates(const SampledCurve& curve, double u1, bool exterior)
{
    validate(curve);
    PeriodicSpline sp(curve);
    const std::size_t n = sp.size();
    const double A = sp.area_integral(0.0, sp.period());
    ArcFrame f = frame_at(sp, u1, exterior);
    // Orthogonality residual at the far end: the arc tangent at q is the
    // reflection of d0 in the chord direction.
    auto residual = [&](double u2) {
        PlaneVector q = sp.point(u2);
        PlaneVector d = normalized(q - f.p);
        PlaneVector tq = d * (2 * dot(f.d0, d)) - f.d0;
        return dot(tq, normalized(sp.derivative(u2)));
    };
    std::vector<ArcCandidate> out;
    double w1 = sp.wrap(u1);
    double margin = 1e-6 * sp.period();
    std::vector<double> us;
    us.push_back(w1 + margin);
    for (std::size_t j = 0; j < n; ++j) {
        double u = sp.knot(j);
        if (u <= w1 + margin) u += sp.period();
        if (u < w1 + sp.period() - margin) us.push_back(u);
    }
    std::sort(us.begin(), us.end());
    us.push_back(w1 + sp.period() - margin);
    double prev = residual(us[0]);
    for (std::size_t j = 1; j < us.size(); ++j) {
        double cur = residual(us[j]);
        if ((prev > 0) != (cur > 0)) {
            double r = find_root(residual, us[j - 1], us[j], 1e-15 * sp.period());
            ArcGeometry g = arc_to(sp, f, r);
            PlaneVector q = sp.point(r);
            if (arc_admissible(curve, f, g, q, 32, exterior)) {
                double region = region_area(g.loopArea, A, exterior);
                if (!exterior || (region > 0 && !(g.loopArea >= 0 && g.loopArea <= A))) {
                    ArcCandidate c;
                    c.u1 = w1;
                    c.u2 = sp.wrap(r);
                    c.p1 = f.p;
                    c.p2 = q;
                    c.center = g.center;
                    c.radius = g.radius;
                    c.chord = g.alpha < 1e-4;
                    c.arcLength = g.length;
                    c.enclosedArea = region;
                    c.complementArea = exterior ? inf : A - g.loopArea;
                    out.push_back(c);
                }
            }
        }
        prev = cur;
    }
    return out;
}

double turning_tangents_check(const SampledCurve& curve, const ArcCandidate& c, double f, double fprime)
{
    PeriodicSpline sp(curve);
    double u2 = c.u2 < c.u1 ? c.u2 + sp.period() : c.u2;
    double turning = integrate([&](double u) { return sp.curvature(u) * sp.speed(u); }, c.u1, u2, 1e-12);
    return std::fabs(turning - (pi - f * fprime));
}

double small_area_coefficient(const std::vector<double>& a, const std::vector<double>& f)
{
    if (a.size() != f.size() || a.size() < 2) throw std::invalid_argument("small_area_coefficient needs matching samples");
    double s0 = 0, s1 = 0, s2 = 0, r0 = 0, r1 = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double x = std::sqrt(a[k]);
        double q = (f[k] - std::sqrt(2 * pi * a[k])) / a[k];
        s0 += 1;
        s1 += x;
        s2 += x * x;
        r0 += q;
        r1 += q * x;
    }
    double det = s0 * s2 - s1 * s1;
    return (r0 * s2 - r1 * s1) / det;
}

}
