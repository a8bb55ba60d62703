#pragma once

#include <string>
#include <vector>

#include "csf/curve.hpp"
#include "csf/support.hpp"

namespace csf {

// Built-in curves, all anticlockwise:
//   circle    unit circle
//   ellipse2  ellipse with semi-axes sqrt2, 1/sqrt2 (area pi)
//   ellipse4  ellipse with semi-axes 2, 1/2 (area pi)
//   oval4     support h = 1 + 0.2 cos 2t + 0.01 cos 4t scaled to area pi
//   bean      polar r = 1 + 0.3 cos 2p + 0.1 cos 3p scaled to area pi
// Convex fixtures are sampled at equal arclength; n must be divisible by 4.
std::vector<std::string> fixture_names();
SampledCurve fixture(const std::string& name, std::size_t n = 256);

SupportFunction oval4_support(std::size_t grid = 1024);

}
