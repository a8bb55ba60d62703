#include "csf/fixtures.hpp"

#include <cmath>
#include <stdexcept>

#include "csf/numerics.hpp"

namespace csf {

std::vector<std::string> fixture_names() { return {"circle", "ellipse2", "ellipse4", "oval4", "bean"}; }

SupportFunction oval4_support(std::size_t grid)
{
    auto raw = [](double t) { return 1.0 + 0.2 * std::cos(2 * t) + 0.01 * std::cos(4 * t); };
    // area = (1/2) int h (h + h'') = pi (1 - 3 * 0.2^2 / 2 - 15 * 0.01^2 / 2)
    double area = pi * (1.0 - 1.5 * 0.04 - 7.5 * 1e-4);
    double s = std::sqrt(pi / area);
    return make_support([&](double t) { return s * raw(t); }, grid, true);
}

SampledCurve fixture(const std::string& name, std::size_t n)
{
    if (name == "circle") {
        SampledCurve c;
        for (std::size_t i = 0; i < n; ++i) {
            double t = 2 * pi * double(i) / double(n);
            c.vertices.push_back({std::cos(t), std::sin(t)});
        }
        return c;
    }
    if (name == "ellipse2") return sample_by_arclength(EllipseBody(std::sqrt(2.0), std::sqrt(0.5)), n);
    if (name == "ellipse4") return sample_by_arclength(EllipseBody(2.0, 0.5), n);
    if (name == "oval4") return sample_by_arclength(SupportBody(oval4_support()), n);
    if (name == "bean") {
        SampledCurve dense;
        const std::size_t m = 8192;
        for (std::size_t i = 0; i < m; ++i) {
            double p = 2 * pi * double(i) / double(m);
            double r = 1.0 + 0.3 * std::cos(2 * p) + 0.1 * std::cos(3 * p);
            dense.vertices.push_back({r * std::cos(p), r * std::sin(p)});
        }
        return normalize_to_area_pi(resample_by_arclength(dense, n));
    }
    throw std::invalid_argument("unknown fixture: " + name);
}

}
