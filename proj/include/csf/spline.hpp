#pragma once

#include <vector>

#include "csf/curve.hpp"

namespace csf {

// Interpolating periodic cubic spline through the vertices of a closed
// curve, parametrized by cumulative chord length.
class PeriodicSpline {
public:
    explicit PeriodicSpline(const SampledCurve& c);

    double period() const { return period_; }
    std::size_t size() const { return pts_.size(); }
    double knot(std::size_t i) const { return knots_[i]; }

    PlaneVector point(double u) const;
    PlaneVector derivative(double u) const;
    PlaneVector second_derivative(double u) const;
    double curvature(double u) const;
    double speed(double u) const { return norm(derivative(u)); }

    // Signed area integral (1/2) int x dy - y dx over the forward piece
    // from u0 to u1, u1 >= u0, possibly wrapping.
    double area_integral(double u0, double u1) const;
    // Arclength of the forward piece from u0 to u1.
    double arc_length(double u0, double u1) const;
    double total_arc_length() const { return cumLength_.back(); }
    // Parameter at arclength s from the start, s in [0, total].
    double param_at_length(double s) const;

    double wrap(double u) const;

private:
    std::size_t segment(double u) const;
    double area_segment(std::size_t k, double s0, double s1) const;
    double length_segment(std::size_t k, double s0, double s1) const;

    std::vector<PlaneVector> pts_;
    std::vector<PlaneVector> m_;   // second derivatives at knots
    std::vector<double> knots_;    // size n+1
    std::vector<double> cumArea_;  // size n+1
    std::vector<double> cumLength_;
    double period_ = 0.0;
};

}
