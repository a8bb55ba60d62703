#include "csf/flow.hpp"

#include <algorithm>
#include <cmath>

#include "csf/numerics.hpp"

namespace csf {

void validate(const FlowConfig& c)
{
    if (!(c.dtSafety > 0.0 && c.dtSafety <= 0.5)) throw std::invalid_argument("dtSafety must lie in (0, 0.5]");
    if (c.nVertices != 0 && c.nVertices < 64) throw std::invalid_argument("nVertices must be at least 64");
    if (!(c.dtMax > 0.0) || !(c.dtCurvature > 0.0)) throw std::invalid_argument("time steps must be positive");
    if (c.resampleEvery == 0) throw std::invalid_argument("resampleEvery must be positive");
}

FlowState make_state(SampledCurve c, FlowMode mode, double time)
{
    validate(c);
    FlowState s;
    s.geometry = compute_geometry(c);
    s.curve = std::move(c);
    s.time = time;
    s.mode = mode;
    return s;
}

namespace {

SampledCurve move_curve(const FlowState& s, double dtau, const FlowConfig& cfg)
{
    const SampledCurve& c = s.curve;
    const CurveGeometry& g = s.geometry;
    const std::size_t n = c.size();
    SampledCurve out = c;
    if (cfg.scheme == Scheme::explicit_euler) {
        for (std::size_t i = 0; i < n; ++i) out.vertices[i] -= g.normal[i] * (dtau * g.curvature[i]);
        return out;
    }
    std::vector<double> len(n);
    for (std::size_t i = 0; i < n; ++i) len[i] = norm(c[(i + 1) % n] - c[i]);
    std::vector<double> a(n), b(n), cc(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t im = (i + n - 1) % n, ip = (i + 1) % n;
        double l0 = len[im], l1 = len[i];
        double alpha = 2.0 / ((l0 + l1) * l1), beta = 2.0 / ((l0 + l1) * l0);
        b[i] = 1.0 + dtau * (alpha + beta);
        cc[i] = -dtau * alpha * dot(g.normal[i], g.normal[ip]);
        a[i] = -dtau * beta * dot(g.normal[i], g.normal[im]);
        d[i] = -dtau * g.curvature[i];
    }
    std::vector<double> w = solve_cyclic_tridiagonal(a, b, cc, d);
    for (std::size_t i = 0; i < n; ++i) out.vertices[i] += g.normal[i] * w[i];
    return out;
}

void check_curve(const SampledCurve& c, const CurveGeometry& g, double time, const FlowConfig& cfg)
{
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!std::isfinite(g.curvature[i]) || std::fabs(g.curvature[i]) > cfg.kappaCeiling)
            throw StepRejected("curvature overflow", time, i);
    }
    if (!(g.area > 0.0)) throw StepRejected("orientation lost", time, 0);
}

FlowState finish(const FlowState& s, SampledCurve moved, double newTime, const FlowConfig& cfg, bool normalize)
{
    FlowState out;
    out.mode = s.mode;
    out.steps = s.steps + 1;
    out.time = newTime;
    bool resample = out.steps % cfg.resampleEvery == 0;
    if (resample) {
        if (!self_intersection_check(moved)) throw StepRejected("self-intersection", newTime, 0);
        moved = resample_by_arclength(moved, cfg.nVertices ? cfg.nVertices : moved.size());
    }
    if (normalize) {
        double a = enclosed_area(moved, compute_geometry(moved));
        if (!(a > 0.0)) throw StepRejected("orientation lost", newTime, 0);
        moved = scaled(moved, std::sqrt(pi / a));
    }
    out.geometry = compute_geometry(moved);
    out.curve = std::move(moved);
    check_curve(out.curve, out.geometry, newTime, cfg);
    return out;
}

}

FlowState csf_step(const FlowState& s, double dtau, const FlowConfig& cfg)
{
    if (dtau < 0.0) throw std::invalid_argument("negative time step");
    if (dtau == 0.0) return s;
    return finish(s, move_curve(s, dtau, cfg), s.time + dtau, cfg, false);
}

FlowState ncsf_step(const FlowState& s, double dt, const FlowConfig& cfg)
{
    if (dt < 0.0) throw std::invalid_argument("negative time step");
    if (dt == 0.0) return s;
    // The X dt term is a dilation about the origin, which the rescaling
    // to area pi absorbs.
    return finish(s, move_curve(s, dt, cfg), s.time + dt, cfg, true);
}

double next_dt(const FlowState& s, const FlowConfig& cfg)
{
    if (cfg.scheme == Scheme::explicit_euler) {
        double h = min_spacing(s.curve);
        return cfg.dtSafety * h * h;
    }
    double k = std::max(std::fabs(s.geometry.kappa_max()), std::fabs(s.geometry.kappa_min()));
    return std::min(cfg.dtMax, cfg.dtCurvature / (k * k));
}

std::vector<TrajectoryRecord> evolve(FlowState& s, double tEnd, const FlowConfig& cfg, const EvolveOptions& opt)
{
    if (!(tEnd > s.time)) throw std::invalid_argument("tEnd must exceed the current time");
    std::vector<TrajectoryRecord> out;
    auto record = [&]() {
        TrajectoryRecord r;
        r.t = s.time;
        r.kappaMax = s.geometry.kappa_max();
        r.kappaMin = s.geometry.kappa_min();
        r.length = s.geometry.length;
        r.area = enclosed_area(s.curve, s.geometry);
        if (opt.keepCurves) r.curve = s.curve;
        out.push_back(std::move(r));
        if (opt.observer) opt.observer(s);
    };
    const double t0 = s.time;
    const double spacing = opt.sampleSpacing > 0 ? opt.sampleSpacing : tEnd - t0;
    std::size_t k = 0;
    record();
    std::size_t steps = 0;
    while (true) {
        double nextSample = std::min(tEnd, t0 + spacing * double(k + 1));
        while (s.time < nextSample) {
            double dt = next_dt(s, cfg);
            bool last = s.time + dt >= nextSample * (1 - 1e-14) - 1e-14;
            if (last) dt = nextSample - s.time;
            FlowState n = s.mode == FlowMode::normalized ? ncsf_step(s, dt, cfg) : csf_step(s, dt, cfg);
            if (last) n.time = nextSample;
            if (opt.stepObserver) opt.stepObserver(s, n);
            s = std::move(n);
            if (++steps > cfg.maxSteps) throw StepRejected("step limit reached", s.time, 0);
        }
        ++k;
        if (!self_intersection_check(s.curve)) throw StepRejected("self-intersection", s.time, 0);
        record();
        if (nextSample >= tEnd) break;
    }
    return out;
}

std::vector<std::pair<double, double>> time_reparametrization(const std::vector<std::pair<double, double>>& series)
{
    std::vector<std::pair<double, double>> out;
    out.reserve(series.size());
    double t = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!(series[i].second > 0.0)) throw std::domain_error("nonpositive area sample");
        if (i > 0) {
            if (!(series[i].first > series[i - 1].first)) throw std::domain_error("tau must increase");
            t += 0.5 * (series[i].first - series[i - 1].first) * (pi / series[i].second + pi / series[i - 1].second);
        }
        out.emplace_back(series[i].first, t);
    }
    return out;
}

}
