#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "csf/curve.hpp"

namespace csf {

enum class FlowMode { normalized, unnormalized };
enum class Scheme { explicit_euler, semi_implicit };

struct FlowConfig {
    FlowMode mode = FlowMode::normalized;
    Scheme scheme = Scheme::semi_implicit;
    double dtSafety = 0.25;      // explicit: dt <= dtSafety * h_min^2
    double dtCurvature = 0.01;   // semi-implicit: dt <= dtCurvature / kappa_max^2
    double dtMax = 1e-3;
    std::size_t resampleEvery = 10;
    std::size_t nVertices = 256;  // 0 keeps the current count
    double kappaCeiling = 1e4;
    std::size_t maxSteps = 50'000'000;
};

void validate(const FlowConfig& c);

struct FlowState {
    SampledCurve curve;
    double time = 0.0;
    CurveGeometry geometry;
    FlowMode mode = FlowMode::normalized;
    std::size_t steps = 0;
};

class StepRejected : public std::runtime_error {
public:
    StepRejected(const std::string& what, double time, std::size_t vertex)
        : std::runtime_error(what), time_(time), vertex_(vertex) {}
    double time() const { return time_; }
    std::size_t vertex() const { return vertex_; }

private:
    double time_;
    std::size_t vertex_;
};

FlowState make_state(SampledCurve c, FlowMode mode, double time = 0.0);

// One step of the unnormalized flow; time advances by dtau.
FlowState csf_step(const FlowState& s, double dtau, const FlowConfig& cfg = {});
// One step of the normalized flow followed by exact rescaling to area pi.
FlowState ncsf_step(const FlowState& s, double dt, const FlowConfig& cfg = {});

struct TrajectoryRecord {
    double t = 0.0;
    double kappaMax = 0.0;
    double kappaMin = 0.0;
    double length = 0.0;
    double area = 0.0;
    std::optional<SampledCurve> curve;
};

using Observer = std::function<void(const FlowState&)>;
// Called after every accepted step with the previous and new state.
using StepObserver = std::function<void(const FlowState&, const FlowState&)>;

struct EvolveOptions {
    double sampleSpacing = 0.1;
    bool keepCurves = false;
    Observer observer;
    StepObserver stepObserver;
};

std::vector<TrajectoryRecord> evolve(FlowState& s, double tEnd, const FlowConfig& cfg, const EvolveOptions& opt);

double next_dt(const FlowState& s, const FlowConfig& cfg);

// Cumulative trapezoid integral of pi / A over a (tau, A) series.
std::vector<std::pair<double, double>> time_reparametrization(const std::vector<std::pair<double, double>>& areaSeries);

}
