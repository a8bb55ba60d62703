#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "csf/vec2.hpp"

namespace csf {

class CurveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SampledCurve {
    std::vector<PlaneVector> vertices;
    bool closed = true;

    std::size_t size() const { return vertices.size(); }
    const PlaneVector& operator[](std::size_t i) const { return vertices[i]; }
};

struct CurveGeometry {
    std::vector<PlaneVector> tangent;
    std::vector<PlaneVector> normal;   // outward for anticlockwise curves
    std::vector<double> curvature;
    std::vector<double> arclength;     // u at each vertex, u[0] = 0
    double length = 0.0;
    double area = 0.0;                 // signed, positive when anticlockwise

    double kappa_max() const;
    double kappa_min() const;
};

// Throws CurveError if the curve is too short, has repeated vertices or
// (when closed) is clockwise.
void validate(const SampledCurve& c);

double signed_area(const SampledCurve& c);
// Shoelace area plus a circular cap on every edge, using the mean of the
// vertex curvatures at its ends. Exact for polygons inscribed in a circle.
double enclosed_area(const SampledCurve& c, const CurveGeometry& g);
double polyline_length(const SampledCurve& c);
double min_spacing(const SampledCurve& c);

CurveGeometry compute_geometry(const SampledCurve& c);

// Equal-arclength resampling through a cubic spline of the vertices.
SampledCurve resample_by_arclength(const SampledCurve& c, std::size_t n);
SampledCurve normalize_to_area_pi(const SampledCurve& c);
SampledCurve scaled(const SampledCurve& c, double s);

struct VertexCount {
    int count = 0;
    bool constantCurvature = false;
};
VertexCount vertex_count(const SampledCurve& c, double relTol = 1e-6);

bool self_intersection_check(const SampledCurve& c);
bool is_convex(const SampledCurve& c);

// Winding number of the closed polyline around p.
int winding_number(const SampledCurve& c, PlaneVector p);

}
