#pragma once

#include <vector>

#include "csf/curve.hpp"
#include "csf/support.hpp"

namespace csf {

// Paperclip e^tau cosh x = cos y, optionally scaled by a constant factor.
class PaperclipBody : public ConvexBody {
public:
    explicit PaperclipBody(double tau, double scale = 1.0);
    // Normalized solution at time t: tau = -e^{-2t}/2, scale e^t.
    static PaperclipBody normalized(double t);

    BoundaryPoint at(double theta) const override;
    BoundaryPoint at_complement(double eps) const override;
    double complement_scale() const override;
    double area() const override;

    double tau() const { return tau_; }
    double scale() const { return scale_; }

private:
    BoundaryPoint eval(double c, double s) const;
    double tau_, scale_, k_, e2_;
};

SampledCurve paperclip_boundary(double tau, std::size_t n);
SampledCurve paperclip_normalized(double t, std::size_t n);
double paperclip_level(double tau, PlaneVector p);
// Distance estimate |F| / |grad F| for F = e^tau cosh x - cos y.
double paperclip_distance(double tau, PlaneVector p);
// Throws std::domain_error if p is off the curve by more than tol.
double paperclip_curvature(double tau, PlaneVector p, double tol = 1e-8);
double paperclip_max_curvature_normalized(double t);

SampledCurve grim_reaper(std::size_t n, double yMargin);

struct ExpanderPoint {
    PlaneVector x;     // point with theta >= 0 (lower branch, y <= 0)
    double theta = 0;  // normal angle of the inward normal
    double radius = 0; // radius of curvature
    double h = 0;      // support value
};

// Homothetically expanding soliton with curvature scale C.
class Expander {
public:
    explicit Expander(double C);

    double C() const { return c_; }
    double theta0() const { return theta0_; }
    double wedge_half_angle() const;

    // Parametrization by q >= 0 with h = exp(-q^2).
    double theta_of_q(double q) const;
    double q_of_theta(double theta) const;
    ExpanderPoint at_q(double q) const;
    // Arclength from the tip to the point with parameter q.
    double arclength_of_q(double q) const;
    double q_of_arclength(double s) const;

private:
    double g(double q) const;
    double c_, d_, theta0_;
};

struct OpenSupport {
    std::vector<double> theta;
    std::vector<double> h;
    double C = 0;
    double theta0 = 0;
};

OpenSupport expander_support(double C, const std::vector<double>& thetaGrid);
double expander_scale(double C, double t);
// Expander scaled by r(t), sampled at equal arclength over arclength
// [-halfLength, halfLength] of the scaled curve.
SampledCurve expander_curve(double C, double t, std::size_t n, double halfLength = 8.0);

}
