#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "csf/config.hpp"
#include "csf/curve.hpp"
#include "csf/isoperimetry.hpp"

namespace csf {

// Fixture (sampled with config.n vertices) or curve file.
SampledCurve load_curve(const ExperimentConfig& c);

// JSON-lines trajectory of the normalized flow. Throws StepRejected.
std::string run_evolve(const ExperimentConfig& c);
// CSV "a,f,provenance" on an open grid of (0, A) or, for the exterior
// profile, on (0, a_max].
std::string run_profile(const ExperimentConfig& c);
// Model curve as CSV or JSON.
std::string run_models(const ExperimentConfig& c);

// ---------------------------------------------------------------- comparison run

struct CompareOptions {
    std::size_t grid = 200;   // interior area grid
    std::size_t flowVertices = 256;
    double tEnd = 6.0;
    double sampleSpacing = 0.25;
    double slack = 2e-3;
    double curvatureFactor = 1e-2;
    double lowerFrom = 0.5;   // lower curvature bound checked for t >= lowerFrom
    double exteriorAMax = 30.0;
    std::size_t exteriorGrid = 300;
    double maxC = 22026.465794806718;  // e^10
};

struct CompareSample {
    double t = 0.0;
    double margin = 0.0;  // min of Psi(Omega_t) - Psi(Theta_{t + t0})
    double kappaMax = 0.0;
    double boundUpper = 0.0;
    double kappaMin = 0.0;
    double boundLower = 0.0;  // NaN at t = 0
};

struct CompareReport {
    double t0 = 0.0;
    bool t0AtUpperEnd = false;
    double C = 0.0;
    bool CCapped = false;
    std::vector<CompareSample> samples;
    double worstMargin = inf;
    double worstUpperRatio = 0.0;   // max kappa_max / bound_upper
    double worstLowerExcess = -inf; // max bound_lower (1 + factor) - kappa_min for t >= lowerFrom
    bool verdict = false;
};

// Largest expander scale C whose wedge profile sqrt(4 beta(C) a) lies below
// the exterior profile; capped at maxC. Sets capped when the cap is active.
double wedge_scale_below(const Profile& exterior, double maxC, bool* capped = nullptr);

CompareReport run_compare(const SampledCurve& initial, const CompareOptions& opt = {});
CompareOptions compare_options(const ExperimentConfig& c);
nlohmann::json to_json(const CompareReport& r);

// ---------------------------------------------------------------- verification

struct CheckDetail {
    std::string label;
    double measured = 0.0;
    double tolerance = 0.0;
    bool lowerBound = false;  // pass when measured >= tolerance
    bool pass = false;
};

struct CheckRecord {
    int id = 0;
    std::string name;
    std::string status;  // pass, fail or error
    double measured = 0.0;
    double tolerance = 0.0;
    std::string anchor;
    std::string message;
    std::vector<CheckDetail> details;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    bool verdict = false;  // every check passed
};

// Names in acceptance order.
const std::vector<std::string>& check_names();

// Runs the selected checks (all when config.checks is empty). Failures and
// exceptions are recorded in the report. Throws ConfigError on unknown names.
VerificationReport run_verify(const ExperimentConfig& c);
nlohmann::json to_json(const VerificationReport& r);

}
