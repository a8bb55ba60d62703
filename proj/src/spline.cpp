#include "csf/spline.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "csf/numerics.hpp"

namespace csf {

namespace {

constexpr std::array<double, 3> gl3x{-0.7745966692414834, 0.0, 0.7745966692414834};
constexpr std::array<double, 3> gl3w{0.5555555555555556, 0.8888888888888888, 0.5555555555555556};
constexpr std::array<double, 5> gl5x{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                     0.9061798459386640};
constexpr std::array<double, 5> gl5w{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                     0.4786286704993665, 0.2369268850561891};

}

PeriodicSpline::PeriodicSpline(const SampledCurve& c) : pts_(c.vertices)
{
    const std::size_t n = pts_.size();
    if (n < 4) throw CurveError("spline needs at least 4 vertices");
    knots_.assign(n + 1, 0.0);
    std::vector<double> h(n);
    for (std::size_t k = 0; k < n; ++k) {
        h[k] = norm(pts_[(k + 1) % n] - pts_[k]);
        if (h[k] <= 0.0) throw CurveError("repeated vertex");
        knots_[k + 1] = knots_[k] + h[k];
    }
    period_ = knots_[n];

    std::vector<double> a(n), b(n), cc(n), dx(n), dy(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t km = (k + n - 1) % n, kp = (k + 1) % n;
        a[k] = h[km];
        b[k] = 2.0 * (h[km] + h[k]);
        cc[k] = h[k];
        PlaneVector r = (pts_[kp] - pts_[k]) / h[k] - (pts_[k] - pts_[km]) / h[km];
        dx[k] = 6.0 * r.x;
        dy[k] = 6.0 * r.y;
    }
    std::vector<double> mx = solve_cyclic_tridiagonal(a, b, cc, dx);
    std::vector<double> my = solve_cyclic_tridiagonal(a, b, cc, dy);
    m_.resize(n);
    for (std::size_t k = 0; k < n; ++k) m_[k] = {mx[k], my[k]};

    cumArea_.assign(n + 1, 0.0);
    cumLength_.assign(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        cumArea_[k + 1] = cumArea_[k] + area_segment(k, 0.0, h[k]);
        cumLength_[k + 1] = cumLength_[k] + length_segment(k, 0.0, h[k]);
    }
}

double PeriodicSpline::wrap(double u) const
{
    double w = std::fmod(u, period_);
    if (w < 0) w += period_;
    if (w >= period_) w = 0.0;
    return w;
}

std::size_t PeriodicSpline::segment(double u) const
{
    auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
    std::size_t k = std::size_t(it - knots_.begin());
    k = k == 0 ? 0 : k - 1;
    return std::min(k, pts_.size() - 1);
}

PlaneVector PeriodicSpline::point(double u) const
{
    u = wrap(u);
    std::size_t k = segment(u), k1 = (k + 1) % pts_.size();
    double h = knots_[k + 1] - knots_[k], s = u - knots_[k], t = h - s;
    return m_[k] * (t * t * t / (6 * h)) + m_[k1] * (s * s * s / (6 * h)) + (pts_[k] / h - m_[k] * (h / 6)) * t +
           (pts_[k1] / h - m_[k1] * (h / 6)) * s;
}

PlaneVector PeriodicSpline::derivative(double u) const
{
    u = wrap(u);
    std::size_t k = segment(u), k1 = (k + 1) % pts_.size();
    double h = knots_[k + 1] - knots_[k], s = u - knots_[k], t = h - s;
    return m_[k] * (-t * t / (2 * h)) + m_[k1] * (s * s / (2 * h)) + (pts_[k1] - pts_[k]) / h -
           (m_[k1] - m_[k]) * (h / 6);
}

PlaneVector PeriodicSpline::second_derivative(double u) const
{
    u = wrap(u);
    std::size_t k = segment(u), k1 = (k + 1) % pts_.size();
    double h = knots_[k + 1] - knots_[k], s = u - knots_[k];
    return m_[k] * ((h - s) / h) + m_[k1] * (s / h);
}

double PeriodicSpline::curvature(double u) const
{
    PlaneVector d1 = derivative(u), d2 = second_derivative(u);
    double sp = norm(d1);
    return cross(d1, d2) / (sp * sp * sp);
}

double PeriodicSpline::area_segment(std::size_t k, double s0, double s1) const
{
    double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0), sum = 0.0;
    for (int q = 0; q < 3; ++q) {
        double u = knots_[k] + mid + half * gl3x[q];
        u = std::min(u, knots_[k + 1] - 1e-300);
        std::size_t k1 = (k + 1) % pts_.size();
        double h = knots_[k + 1] - knots_[k], s = u - knots_[k], t = h - s;
        PlaneVector p = m_[k] * (t * t * t / (6 * h)) + m_[k1] * (s * s * s / (6 * h)) +
                        (pts_[k] / h - m_[k] * (h / 6)) * t + (pts_[k1] / h - m_[k1] * (h / 6)) * s;
        PlaneVector d = m_[k] * (-t * t / (2 * h)) + m_[k1] * (s * s / (2 * h)) + (pts_[k1] - pts_[k]) / h -
                        (m_[k1] - m_[k]) * (h / 6);
        sum += gl3w[q] * cross(p, d);
    }
    return 0.5 * half * sum;
}

double PeriodicSpline::length_segment(std::size_t k, double s0, double s1) const
{
    double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0), sum = 0.0;
    std::size_t k1 = (k + 1) % pts_.size();
    double h = knots_[k + 1] - knots_[k];
    for (int q = 0; q < 5; ++q) {
        double s = mid + half * gl5x[q], t = h - s;
        PlaneVector d = m_[k] * (-t * t / (2 * h)) + m_[k1] * (s * s / (2 * h)) + (pts_[k1] - pts_[k]) / h -
                        (m_[k1] - m_[k]) * (h / 6);
        sum += gl5w[q] * norm(d);
    }
    return half * sum;
}

double PeriodicSpline::area_integral(double u0, double u1) const
{
    auto cum = [&](double u) {
        std::size_t k = segment(u);
        return cumArea_[k] + area_segment(k, 0.0, u - knots_[k]);
    };
    double w0 = wrap(u0);
    double w1 = w0 + (u1 - u0);
    if (w1 <= period_) return cum(w1 >= period_ ? period_ : w1) - cum(w0);
    return cumArea_.back() - cum(w0) + cum(w1 - period_);
}

double PeriodicSpline::arc_length(double u0, double u1) const
{
    auto cum = [&](double u) {
        std::size_t k = segment(u);
        return cumLength_[k] + length_segment(k, 0.0, u - knots_[k]);
    };
    double w0 = wrap(u0);
    double w1 = w0 + (u1 - u0);
    if (w1 <= period_) return cum(w1) - cum(w0);
    return cumLength_.back() - cum(w0) + cum(w1 - period_);
}

double PeriodicSpline::param_at_length(double s) const
{
    s = std::clamp(s, 0.0, cumLength_.back());
    auto it = std::upper_bound(cumLength_.begin(), cumLength_.end(), s);
    std::size_t k = std::size_t(it - cumLength_.begin());
    k = std::min(k == 0 ? 0 : k - 1, pts_.size() - 1);
    double h = knots_[k + 1] - knots_[k];
    double target = s - cumLength_[k];
    double seglen = cumLength_[k + 1] - cumLength_[k];
    double x = h * target / seglen;
    for (int it2 = 0; it2 < 30; ++it2) {
        double g = length_segment(k, 0.0, x) - target;
        double sp = norm(derivative(knots_[k] + x));
        double dx = g / sp;
        x = std::clamp(x - dx, 0.0, h);
        if (std::fabs(dx) < 1e-15 * h) break;
    }
    return knots_[k] + x;
}

}
