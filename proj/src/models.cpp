#include "csf/models.hpp"

#include <cmath>
#include <stdexcept>

#include "csf/numerics.hpp"

namespace csf {

namespace {

// asinh(z e^{-tau}) without overflow for very negative tau.
double asinh_shifted(double z, double tau)
{
    if (z == 0.0) return 0.0;
    double la = std::log(std::fabs(z)) - tau;
    double v = la > 30.0 ? std::log(2.0) + la : std::asinh(std::exp(la));
    return z < 0 ? -v : v;
}

}

PaperclipBody::PaperclipBody(double tau, double scale) : tau_(tau), scale_(scale)
{
    if (!(tau < 0.0)) throw std::domain_error("paperclip needs tau < 0");
    k_ = std::sqrt(-std::expm1(2 * tau));
    e2_ = std::exp(2 * tau);
}

PaperclipBody PaperclipBody::normalized(double t) { return PaperclipBody(-0.5 * std::exp(-2 * t), std::exp(t)); }

BoundaryPoint PaperclipBody::eval(double c, double s) const
{
    // The normal (c, s) is parallel to the gradient (e^tau sinh x, sin y).
    double xt = asinh_shifted(k_ * c, tau_);
    double cy = std::sqrt(c * c + e2_ * s * s);
    double yt = std::atan2(k_ * s, cy);
    return {{scale_ * xt, scale_ * yt}, scale_ * k_ / cy};
}

BoundaryPoint PaperclipBody::at(double theta) const { return eval(std::cos(theta), std::sin(theta)); }

BoundaryPoint PaperclipBody::at_complement(double eps) const { return eval(std::sin(eps), std::cos(eps)); }

double PaperclipBody::complement_scale() const { return std::max(std::exp(tau_), 1e-300); }

double PaperclipBody::area() const { return -2 * pi * tau_ * scale_ * scale_; }

SampledCurve paperclip_boundary(double tau, std::size_t n) { return sample_by_arclength(PaperclipBody(tau), n); }

SampledCurve paperclip_normalized(double t, std::size_t n)
{
    return sample_by_arclength(PaperclipBody::normalized(t), n);
}

double paperclip_level(double tau, PlaneVector p) { return std::exp(tau) * std::cosh(p.x) - std::cos(p.y); }

double paperclip_distance(double tau, PlaneVector p)
{
    double f = paperclip_level(tau, p);
    double gx = std::exp(tau) * std::sinh(p.x), gy = std::sin(p.y);
    return std::fabs(f) / std::hypot(gx, gy);
}

double paperclip_curvature(double tau, PlaneVector p, double tol)
{
    if (!(tau < 0.0)) throw std::domain_error("paperclip needs tau < 0");
    if (std::fabs(paperclip_level(tau, p)) > tol) throw std::domain_error("point is not on the paperclip");
    return std::cos(p.y) / std::sqrt(-std::expm1(2 * tau));
}

double paperclip_max_curvature_normalized(double t)
{
    return std::exp(-t) / std::sqrt(-std::expm1(-std::exp(-2 * t)));
}

SampledCurve grim_reaper(std::size_t n, double yMargin)
{
    if (!(yMargin > 0.0 && yMargin < pi / 2)) throw std::domain_error("yMargin must lie in (0, pi/2)");
    // Arclength from the tip: y = atan(sinh s), x = -log cosh s.
    double ymax = pi / 2 - yMargin;
    double smax = std::asinh(std::tan(ymax));
    SampledCurve c;
    c.closed = false;
    c.vertices.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = -smax + 2 * smax * double(j) / double(n - 1);
        c.vertices[j] = {-std::log(std::cosh(s)), std::atan(std::sinh(s))};
    }
    return c;
}

Expander::Expander(double C) : c_(C), d_(2 * C)
{
    if (!(C > 0.0)) throw std::domain_error("expander needs C > 0");
    theta0_ = theta_of_q(12.0);
}

double Expander::g(double q) const
{
    // (1 - z^2 - 2C log z) / q^2 with z = exp(-q^2).
    double q2 = q * q;
    double lead = q2 < 1e-8 ? 2.0 - 2.0 * q2 : -std::expm1(-2 * q2) / q2;
    return lead + d_;
}

double Expander::wedge_half_angle() const { return pi / 2 - theta0_; }

double Expander::theta_of_q(double q) const
{
    return integrate([&](double p) { return 2.0 * std::exp(-p * p) / std::sqrt(g(p)); }, 0.0, q, 1e-14);
}

double Expander::q_of_theta(double theta) const
{
    if (theta < 0.0 || theta >= theta0_) throw std::domain_error("angle outside the expander's normal range");
    if (theta == 0.0) return 0.0;
    double hi = 1.0;
    while (theta_of_q(hi) < theta) hi *= 2.0;
    return find_root([&](double q) { return theta_of_q(q) - theta; }, 0.0, hi, 1e-15);
}

ExpanderPoint Expander::at_q(double q) const
{
    ExpanderPoint p;
    p.theta = theta_of_q(q);
    p.h = std::exp(-q * q);
    double hp = -q * std::sqrt(g(q));
    double c = std::cos(p.theta), s = std::sin(p.theta);
    p.x = {p.h * c - hp * s, p.h * s + hp * c};
    p.radius = c_ * std::exp(q * q);
    return p;
}

double Expander::arclength_of_q(double q) const
{
    return integrate([&](double p) { return 2.0 * c_ / std::sqrt(g(p)); }, 0.0, q, 1e-14);
}

double Expander::q_of_arclength(double s) const
{
    if (s <= 0.0) return 0.0;
    double hi = 1.0;
    while (arclength_of_q(hi) < s) hi *= 2.0;
    return find_root([&](double q) { return arclength_of_q(q) - s; }, 0.0, hi, 1e-15);
}

OpenSupport expander_support(double C, const std::vector<double>& thetaGrid)
{
    Expander e(C);
    OpenSupport out;
    out.C = C;
    out.theta0 = e.theta0();
    out.theta = thetaGrid;
    out.h.resize(thetaGrid.size());
    for (std::size_t i = 0; i < thetaGrid.size(); ++i) {
        double q = e.q_of_theta(std::fabs(thetaGrid[i]));
        out.h[i] = std::exp(-q * q);
    }
    return out;
}

double expander_scale(double C, double t)
{
    if (!(t > 0.0)) throw std::domain_error("expander needs t > 0");
    return std::sqrt(std::expm1(2 * t) / C);
}

SampledCurve expander_curve(double C, double t, std::size_t n, double halfLength)
{
    Expander e(C);
    double r = expander_scale(C, t);
    double s0 = halfLength / r;
    SampledCurve c;
    c.closed = false;
    c.vertices.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = -s0 + 2 * s0 * double(j) / double(n - 1);
        ExpanderPoint p = e.at_q(e.q_of_arclength(std::fabs(s)));
        PlaneVector x = p.x;
        if (s < 0) x.y = -x.y;
        c.vertices[j] = x * r;
    }
    return c;
}

}
