#pragma once

#include <cmath>

#include "csf/curve.hpp"
#include "csf/numerics.hpp"

namespace testing_util {

inline csf::SampledCurve ellipse_by_angle(double a, double b, std::size_t n, double phase = 0.0)
{
    csf::SampledCurve c;
    for (std::size_t i = 0; i < n; ++i) {
        double t = 2 * csf::pi * double(i) / double(n) + phase;
        c.vertices.push_back({a * std::cos(t), b * std::sin(t)});
    }
    return c;
}

inline csf::SampledCurve circle(double r, std::size_t n) { return ellipse_by_angle(r, r, n); }

}
