#pragma once

#include <functional>
#include <vector>

#include "csf/curve.hpp"

namespace csf {

struct SupportFunction {
    std::vector<double> theta;  // uniform on [0, 2pi)
    std::vector<double> h;
    bool doublySymmetric = false;
};

SupportFunction make_support(const std::function<double(double)>& h, std::size_t n, bool doublySymmetric = false);

// Throws CurveError when the grid is not uniform or the symmetry flag is
// inconsistent with the data.
void validate(const SupportFunction& s, double tol = 1e-9);

// Truncated trigonometric interpolant of grid values.
class TrigSeries {
public:
    explicit TrigSeries(const std::vector<double>& values, double dropTol = 1e-15);
    // order 0, 1 or 2.
    double eval(double theta, int order = 0) const;
    std::size_t modes() const { return a_.size(); }

private:
    std::vector<double> a_, b_;
};

// r = h'' + h on the grid.
std::vector<double> radius_of_curvature_from_support(const SupportFunction& s);

// Vertices (h + i h') e^{i theta} at n uniform angles.
SampledCurve support_to_curve(const SupportFunction& s, std::size_t n);

struct BoundaryPoint {
    PlaneVector x;
    double radius = 0.0;  // radius of curvature
};

// Strictly convex body described through its normal-angle parametrization.
class ConvexBody {
public:
    virtual ~ConvexBody() = default;
    // Boundary point with outward normal (cos theta, sin theta).
    virtual BoundaryPoint at(double theta) const = 0;
    // Same at theta = pi/2 - eps, for bodies that need extra precision there.
    virtual BoundaryPoint at_complement(double eps) const;
    // Scale of eps below which the body has no further structure near
    // theta = pi/2.
    virtual double complement_scale() const { return 1.0; }
    virtual double area() const;
    virtual bool doubly_symmetric() const { return true; }

    double support(double theta) const;
};

class SupportBody : public ConvexBody {
public:
    explicit SupportBody(const SupportFunction& s);
    BoundaryPoint at(double theta) const override;
    double area() const override;
    bool doubly_symmetric() const override { return symmetric_; }

private:
    TrigSeries series_;
    bool symmetric_;
    double area_;
};

class EllipseBody : public ConvexBody {
public:
    EllipseBody(double ax, double by) : a_(ax), b_(by) {}
    BoundaryPoint at(double theta) const override;
    double area() const override;

private:
    double a_, b_;
};

// Rotated copy: normal angle theta of the result corresponds to theta + pi/2
// of the original.
class RotatedBody : public ConvexBody {
public:
    explicit RotatedBody(const ConvexBody& b) : base_(b) {}
    BoundaryPoint at(double theta) const override;
    double area() const override { return base_.area(); }

private:
    const ConvexBody& base_;
};

// n vertices (n divisible by 4) at equal arclength along a doubly symmetric
// body, starting on the positive x axis.
SampledCurve sample_by_arclength(const ConvexBody& b, std::size_t n);

}
