#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "csf/numerics.hpp"

namespace csf {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Command { evolve, profile, models, compare, verify };

Command parse_command(const std::string& s);
const char* to_string(Command c);

// Acceptance thresholds. Upper bounds unless noted.
struct Tolerances {
    double diskClosedForm = 1e-9;
    double diskSearch = 5e-4;
    double smallAreaRel = 3e-2;
    double supportVsSearch = 5e-4;
    double firstVariationRel = 2e-2;
    double secondVariationSlack = 1e-3;
    double paperclipCurvatureRel = 1e-5;
    double paperclipArea = 1e-5;
    double paperclipKappaMax = 1e-5;
    double stepOrder = 1.8;  // lower bound
    double pdeResidual = 2e-2;
    double pdeRefinement = 1.7;  // lower bound
    double diskStationary = 1e-3;
    double dominationSlack = 2e-3;
    double curvatureFactor = 1e-2;
    double solitonResidual = 1e-4;
    double areaRateRel = 1e-2;
    double normalizedArea = 1e-8;
    double isoperimetricSlack = 1e-6;
    double oracleRel = 1e-5;     // at 128 oracle nodes, scaled by (128/n)^2
    double oracleOrder = 1.8;    // lower bound
    double identityRel = 1e-12;
};

struct ExperimentConfig {
    Command command = Command::verify;
    std::string fixture;    // named built-in curve
    std::string curveFile;  // or a curve file (CSV or JSON)
    std::size_t n = 256;    // vertices
    std::size_t grid = 200;  // profile grid points
    double tEnd = 6.0;
    double sampleSpacing = 0.25;
    bool exterior = false;
    double aMax = pi;  // upper end of the exterior area grid
    std::string model = "paperclip";
    double tau = -1.0;  // paperclip (unnormalized)
    double t = 0.0;     // normalized time of the paperclip or expander
    double C = 1.0;     // expander curvature scale
    std::string format = "csv";
    std::string output;  // empty: standard output
    bool embedCurves = false;
    std::vector<std::string> checks;  // verify: empty runs all
    double gridScale = 1.0;           // verify: multiplies the convergence-check grids
    Tolerances tol;
};

// Unknown keys and out-of-range values throw ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig parse_config(const std::string& text);
nlohmann::json to_json(const ExperimentConfig& c);
void validate(const ExperimentConfig& c);

}
