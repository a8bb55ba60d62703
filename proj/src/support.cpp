#include "csf/support.hpp"

#include <algorithm>
#include <cmath>

#include "csf/numerics.hpp"

namespace csf {

SupportFunction make_support(const std::function<double(double)>& h, std::size_t n, bool doublySymmetric)
{
    SupportFunction s;
    s.theta.resize(n);
    s.h.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.theta[i] = 2 * pi * double(i) / double(n);
        s.h[i] = h(s.theta[i]);
    }
    s.doublySymmetric = doublySymmetric;
    return s;
}

void validate(const SupportFunction& s, double tol)
{
    const std::size_t n = s.theta.size();
    if (n < 8 || s.h.size() != n) throw CurveError("support grid too small or mismatched");
    for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(s.theta[i] - 2 * pi * double(i) / double(n)) > 1e-12)
            throw CurveError("support grid must be uniform on [0, 2pi)");
    if (s.doublySymmetric) {
        if (n % 2 != 0) throw CurveError("symmetric support needs an even grid");
        for (std::size_t i = 0; i < n; ++i) {
            double ref = s.h[i];
            if (std::fabs(s.h[(n - i) % n] - ref) > tol || std::fabs(s.h[(i + n / 2) % n] - ref) > tol)
                throw CurveError("support function is not doubly symmetric");
        }
    }
}

TrigSeries::TrigSeries(const std::vector<double>& v, double dropTol)
{
    const std::size_t n = v.size();
    std::vector<double> cosT(n), sinT(n);
    for (std::size_t j = 0; j < n; ++j) {
        cosT[j] = std::cos(2 * pi * double(j) / double(n));
        sinT[j] = std::sin(2 * pi * double(j) / double(n));
    }
    const std::size_t kmax = n / 2;
    std::vector<double> a(kmax + 1, 0.0), b(kmax + 1, 0.0);
    for (std::size_t k = 0; k <= kmax; ++k) {
        double sa = 0.0, sb = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t idx = (k * j) % n;
            sa += v[j] * cosT[idx];
            sb += v[j] * sinT[idx];
        }
        double w = (k == 0 || 2 * k == n) ? 1.0 / double(n) : 2.0 / double(n);
        a[k] = w * sa;
        b[k] = (2 * k == n) ? 0.0 : w * sb;
    }
    double big = 0.0;
    for (std::size_t k = 0; k <= kmax; ++k) big = std::max({big, std::fabs(a[k]), std::fabs(b[k])});
    std::size_t keep = 1;
    for (std::size_t k = 0; k <= kmax; ++k)
        if (std::fabs(a[k]) > dropTol * big || std::fabs(b[k]) > dropTol * big) keep = k + 1;
    a.resize(keep);
    b.resize(keep);
    a_ = std::move(a);
    b_ = std::move(b);
}

double TrigSeries::eval(double theta, int order) const
{
    double s = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) {
        double c = std::cos(double(k) * theta), sn = std::sin(double(k) * theta), kk = double(k);
        switch (order) {
        case 0: s += a_[k] * c + b_[k] * sn; break;
        case 1: s += kk * (-a_[k] * sn + b_[k] * c); break;
        default: s += -kk * kk * (a_[k] * c + b_[k] * sn); break;
        }
    }
    return s;
}

std::vector<double> radius_of_curvature_from_support(const SupportFunction& s)
{
    TrigSeries t(s.h);
    std::vector<double> r(s.h.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = s.h[i] + t.eval(s.theta[i], 2);
    return r;
}

SampledCurve support_to_curve(const SupportFunction& s, std::size_t n)
{
    TrigSeries t(s.h);
    SampledCurve c;
    c.closed = true;
    c.vertices.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double th = 2 * pi * double(i) / double(n);
        double h = t.eval(th, 0), hp = t.eval(th, 1), hpp = t.eval(th, 2);
        if (h + hpp <= 0.0) throw CurveError("support function is not strictly convex");
        double co = std::cos(th), si = std::sin(th);
        c.vertices[i] = {h * co - hp * si, h * si + hp * co};
    }
    return c;
}

BoundaryPoint ConvexBody::at_complement(double eps) const { return at(pi / 2 - eps); }

double ConvexBody::support(double theta) const
{
    return dot(at(theta).x, {std::cos(theta), std::sin(theta)});
}

double ConvexBody::area() const
{
    if (!doubly_symmetric()) {
        return 0.5 * integrate(
                         [&](double th) {
                             BoundaryPoint p = at(th);
                             return dot(p.x, {std::cos(th), std::sin(th)}) * p.radius;
                         },
                         0.0, 2 * pi);
    }
    double wlo = std::log(complement_scale()) - 40.0, whi = std::log(pi / 2);
    auto f = [&](double w) {
        double e = std::exp(w);
        BoundaryPoint p = at_complement(e);
        double h = p.x.x * std::sin(e) + p.x.y * std::cos(e);
        return h * p.radius * e;
    };
    return 2.0 * integrate(f, wlo, whi);
}

SupportBody::SupportBody(const SupportFunction& s) : series_(s.h), symmetric_(s.doublySymmetric)
{
    std::vector<double> r = radius_of_curvature_from_support(s);
    double sum = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] <= 0.0) throw CurveError("support function is not strictly convex");
        sum += s.h[i] * r[i];
    }
    area_ = 0.5 * sum * 2 * pi / double(r.size());
}

BoundaryPoint SupportBody::at(double theta) const
{
    double h = series_.eval(theta, 0), hp = series_.eval(theta, 1), hpp = series_.eval(theta, 2);
    double c = std::cos(theta), s = std::sin(theta);
    return {{h * c - hp * s, h * s + hp * c}, h + hpp};
}

double SupportBody::area() const { return area_; }

BoundaryPoint EllipseBody::at(double theta) const
{
    double c = std::cos(theta), s = std::sin(theta);
    double h = std::sqrt(a_ * a_ * c * c + b_ * b_ * s * s);
    return {{a_ * a_ * c / h, b_ * b_ * s / h}, a_ * a_ * b_ * b_ / (h * h * h)};
}

double EllipseBody::area() const { return pi * a_ * b_; }

BoundaryPoint RotatedBody::at(double theta) const
{
    BoundaryPoint p = base_.at(theta + pi / 2);
    return {rot_right(p.x), p.radius};
}

SampledCurve sample_by_arclength(const ConvexBody& b, std::size_t n)
{
    if (n % 4 != 0 || n < 8) throw CurveError("arclength sampling needs n divisible by 4");
    const double wlo = std::log(b.complement_scale()) - 40.0, whi = std::log(pi / 2);
    auto f = [&](double w) {
        double e = std::exp(w);
        return b.at_complement(e).radius * e;
    };
    const std::size_t m = 1024;
    std::vector<double> wk(m + 1), sk(m + 1, 0.0);
    for (std::size_t k = 0; k <= m; ++k) wk[k] = wlo + (whi - wlo) * double(k) / double(m);
    for (std::size_t k = 0; k < m; ++k) sk[k + 1] = sk[k] + integrate(f, wk[k], wk[k + 1]);
    const double quarter = sk[m];

    // Points of the first quadrant, from theta = 0 up to theta = pi/2.
    const std::size_t q = n / 4;
    std::vector<PlaneVector> first(q + 1);
    for (std::size_t j = 0; j <= q; ++j) {
        double target = quarter - quarter * double(j) / double(q);
        if (j == 0) {
            first[j] = b.at_complement(pi / 2).x;
            continue;
        }
        if (j == q || target <= sk[0]) {
            first[j] = b.at_complement(0.0).x;
            continue;
        }
        auto it = std::upper_bound(sk.begin(), sk.end(), target);
        std::size_t k = std::min<std::size_t>(std::size_t(it - sk.begin()) - 1, m - 1);
        double w = find_root([&](double ww) { return sk[k] + integrate(f, wk[k], ww) - target; }, wk[k], wk[k + 1],
                             1e-15);
        first[j] = b.at_complement(std::exp(w)).x;
    }
    first[0].y = 0.0;
    first[q].x = 0.0;

    SampledCurve c;
    c.closed = true;
    c.vertices.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t quad = j / q, r = j % q;
        PlaneVector p;
        switch (quad) {
        case 0: p = first[r]; break;
        case 1: p = first[q - r]; p.x = -p.x; break;
        case 2: p = first[r]; p = -p; break;
        default: p = first[q - r]; p.y = -p.y; break;
        }
        c.vertices[j] = p;
    }
    return c;
}

}
