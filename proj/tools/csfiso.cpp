#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csf/config.hpp"
#include "csf/experiments.hpp"
#include "csf/flow.hpp"
#include "csf/io.hpp"

using namespace csf;

namespace {

enum Exit { ok = 0, check_failure = 1, usage_error = 2, numeric_failure = 3 };

int report_error(const char* kind, const std::string& message, int code, nlohmann::json extra = {})
{
    nlohmann::json j = {{"error", kind}, {"message", message}};
    if (extra.is_object()) j.update(extra);
    std::cerr << j.dump() << '\n';
    return code;
}

struct Overrides {
    std::string config;
    std::optional<std::string> fixture, curveFile, model, format, output;
    std::optional<std::size_t> n, grid;
    std::optional<double> tEnd, sampleSpacing, aMax, tau, t, C, gridScale;
    bool exterior = false, embedCurves = false;
    std::vector<std::string> checks;
};

void add_curve_options(CLI::App* app, Overrides& o)
{
    app->add_option("--fixture", o.fixture, "Built-in curve: circle, ellipse2, ellipse4, oval4, bean");
    app->add_option("--curve", o.curveFile, "Curve file (CSV x,y or JSON)");
    app->add_option("-n,--vertices", o.n, "Number of vertices");
}

ExperimentConfig build_config(Command cmd, const Overrides& o, CLI::App* app)
{
    ExperimentConfig c;
    if (!o.config.empty()) c = parse_config(read_text_file(o.config));
    c.command = cmd;
    if (o.fixture) {
        c.fixture = *o.fixture;
        if (!o.curveFile) c.curveFile.clear();
    }
    if (o.curveFile) {
        c.curveFile = *o.curveFile;
        if (!o.fixture) c.fixture.clear();
    }
    if (o.model) c.model = *o.model;
    if (o.format) c.format = *o.format;
    if (o.output) c.output = *o.output;
    if (o.n) c.n = *o.n;
    if (o.grid) c.grid = *o.grid;
    if (o.tEnd) c.tEnd = *o.tEnd;
    if (o.sampleSpacing) c.sampleSpacing = *o.sampleSpacing;
    if (o.aMax) c.aMax = *o.aMax;
    if (o.tau) c.tau = *o.tau;
    if (o.t) c.t = *o.t;
    if (o.C) c.C = *o.C;
    if (o.gridScale) c.gridScale = *o.gridScale;
    auto given = [&](const char* name) {
        const CLI::Option* opt = app->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--exterior")) c.exterior = o.exterior;
    if (given("--embed-curves")) c.embedCurves = o.embedCurves;
    if (!o.checks.empty()) c.checks = o.checks;
    validate(c);
    return c;
}

int run(Command cmd, const ExperimentConfig& c)
{
    switch (cmd) {
    case Command::evolve:
        write_text_output(c.output, run_evolve(c));
        return ok;
    case Command::profile:
        write_text_output(c.output, run_profile(c));
        return ok;
    case Command::models:
        write_text_output(c.output, run_models(c));
        return ok;
    case Command::compare: {
        CompareReport r = run_compare(load_curve(c), compare_options(c));
        write_text_output(c.output, to_json(r).dump(2) + "\n");
        return r.verdict ? ok : check_failure;
    }
    case Command::verify: {
        VerificationReport r = run_verify(c);
        for (const auto& ch : r.checks)
            std::fprintf(stderr, "[%s] %2d %-24s measured %.6g tolerance %.6g\n", ch.status.c_str(), ch.id, ch.name.c_str(),
                         ch.measured, ch.tolerance);
        write_text_output(c.output, to_json(r).dump(2) + "\n");
        return r.verdict ? ok : check_failure;
    }
    }
    return usage_error;
}

}

int main(int argc, char** argv)
{
    CLI::App app{"Curve shortening flow and isoperimetric profile experiments"};
    app.require_subcommand(1);
    Overrides o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", o.config, "JSON config; flags override its fields");
        sub->add_option("-o,--output", o.output, "Output file (standard output when omitted)");
    };

    auto* evolve = app.add_subcommand("evolve", "Normalized flow trajectory as JSON lines");
    common(evolve);
    add_curve_options(evolve, o);
    evolve->add_option("--t-end", o.tEnd, "Final time");
    evolve->add_option("--sample-spacing", o.sampleSpacing, "Time between records");
    evolve->add_flag("--embed-curves", o.embedCurves, "Include vertices in each record");

    auto* profile = app.add_subcommand("profile", "Isoperimetric profile as CSV a,f,provenance");
    common(profile);
    add_curve_options(profile, o);
    profile->add_option("--grid", o.grid, "Number of areas");
    profile->add_flag("--exterior", o.exterior, "Exterior profile");
    profile->add_option("--a-max", o.aMax, "Largest area of the exterior grid");

    auto* models = app.add_subcommand("models", "Model curves as CSV or JSON");
    common(models);
    models->add_option("--model", o.model, "paperclip, paperclip_normalized, grim_reaper, expander");
    models->add_option("-n,--vertices", o.n, "Number of vertices");
    models->add_option("--tau", o.tau, "Paperclip time (negative)");
    models->add_option("--t", o.t, "Normalized time");
    models->add_option("--C", o.C, "Expander curvature scale");
    models->add_option("--format", o.format, "csv or json");

    auto* compare = app.add_subcommand("compare", "Evolve a curve and compare it with the paperclip");
    common(compare);
    add_curve_options(compare, o);
    compare->add_option("--model", o.model, "Model family (paperclip)");
    compare->add_option("--grid", o.grid, "Number of areas");
    compare->add_option("--t-end", o.tEnd, "Final time");
    compare->add_option("--sample-spacing", o.sampleSpacing, "Time between samples");

    auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
    common(verify);
    verify->add_option("--check", o.checks, "Run only the named checks");
    verify->add_option("--grid-scale", o.gridScale, "Multiply the convergence-check grids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage_error;
    }

    CLI::App* sub = app.get_subcommands().front();
    Command cmd = parse_command(sub->get_name());
    ExperimentConfig cfg;
    try {
        cfg = build_config(cmd, o, sub);
        if (cmd == Command::compare && cfg.model != "paperclip")
            throw ConfigError("compare supports the paperclip model only");
    } catch (const ConfigError& e) {
        return report_error("usage", e.what(), usage_error);
    } catch (const IoError& e) {
        return report_error("io", e.what(), usage_error);
    }

    try {
        return run(cmd, cfg);
    } catch (const ConfigError& e) {
        return report_error("usage", e.what(), usage_error);
    } catch (const IoError& e) {
        return report_error("io", e.what(), usage_error);
    } catch (const CurveError& e) {
        return report_error("invalid_curve", e.what(), usage_error);
    } catch (const StepRejected& e) {
        return report_error("step_rejected", e.what(), numeric_failure, {{"time", e.time()}, {"vertex", e.vertex()}});
    } catch (const std::exception& e) {
        return report_error("numeric", e.what(), numeric_failure);
    }
}
