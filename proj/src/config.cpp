#include "csf/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace csf {

namespace {

using nlohmann::json;

struct TolField {
    const char* key;
    double Tolerances::*field;
};

const TolField kTolFields[] = {
    {"disk_closed_form", &Tolerances::diskClosedForm},
    {"disk_search", &Tolerances::diskSearch},
    {"small_area_rel", &Tolerances::smallAreaRel},
    {"support_vs_search", &Tolerances::supportVsSearch},
    {"first_variation_rel", &Tolerances::firstVariationRel},
    {"second_variation_slack", &Tolerances::secondVariationSlack},
    {"paperclip_curvature_rel", &Tolerances::paperclipCurvatureRel},
    {"paperclip_area", &Tolerances::paperclipArea},
    {"paperclip_kappa_max", &Tolerances::paperclipKappaMax},
    {"step_order", &Tolerances::stepOrder},
    {"pde_residual", &Tolerances::pdeResidual},
    {"pde_refinement", &Tolerances::pdeRefinement},
    {"disk_stationary", &Tolerances::diskStationary},
    {"domination_slack", &Tolerances::dominationSlack},
    {"curvature_factor", &Tolerances::curvatureFactor},
    {"soliton_residual", &Tolerances::solitonResidual},
    {"area_rate_rel", &Tolerances::areaRateRel},
    {"normalized_area", &Tolerances::normalizedArea},
    {"isoperimetric_slack", &Tolerances::isoperimetricSlack},
    {"oracle_rel", &Tolerances::oracleRel},
    {"oracle_order", &Tolerances::oracleOrder},
    {"identity_rel", &Tolerances::identityRel},
};

template <class T>
T get_as(const json& v, const std::string& key)
{
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("wrong type for " + key);
    }
}

double get_number(const json& v, const std::string& key)
{
    if (!v.is_number()) throw ConfigError(key + " must be a number");
    return v.get<double>();
}

std::size_t get_count(const json& v, const std::string& key)
{
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw ConfigError(key + " must be a non-negative integer");
    return v.get<std::size_t>();
}

void require(bool ok, const std::string& what)
{
    if (!ok) throw ConfigError(what);
}

}

Command parse_command(const std::string& s)
{
    if (s == "evolve") return Command::evolve;
    if (s == "profile") return Command::profile;
    if (s == "models") return Command::models;
    if (s == "compare") return Command::compare;
    if (s == "verify") return Command::verify;
    throw ConfigError("unknown command " + s);
}

const char* to_string(Command c)
{
    switch (c) {
    case Command::evolve: return "evolve";
    case Command::profile: return "profile";
    case Command::models: return "models";
    case Command::compare: return "compare";
    case Command::verify: return "verify";
    }
    return "?";
}

ExperimentConfig config_from_json(const json& j)
{
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    ExperimentConfig c;
    using Setter = std::function<void(const json&)>;
    const std::map<std::string, Setter> setters = {
        {"command", [&](const json& v) { c.command = parse_command(get_as<std::string>(v, "command")); }},
        {"fixture", [&](const json& v) { c.fixture = get_as<std::string>(v, "fixture"); }},
        {"curve_file", [&](const json& v) { c.curveFile = get_as<std::string>(v, "curve_file"); }},
        {"n", [&](const json& v) { c.n = get_count(v, "n"); }},
        {"grid", [&](const json& v) { c.grid = get_count(v, "grid"); }},
        {"t_end", [&](const json& v) { c.tEnd = get_number(v, "t_end"); }},
        {"sample_spacing", [&](const json& v) { c.sampleSpacing = get_number(v, "sample_spacing"); }},
        {"exterior", [&](const json& v) { c.exterior = get_as<bool>(v, "exterior"); }},
        {"a_max", [&](const json& v) { c.aMax = get_number(v, "a_max"); }},
        {"model", [&](const json& v) { c.model = get_as<std::string>(v, "model"); }},
        {"tau", [&](const json& v) { c.tau = get_number(v, "tau"); }},
        {"t", [&](const json& v) { c.t = get_number(v, "t"); }},
        {"C", [&](const json& v) { c.C = get_number(v, "C"); }},
        {"format", [&](const json& v) { c.format = get_as<std::string>(v, "format"); }},
        {"output", [&](const json& v) { c.output = get_as<std::string>(v, "output"); }},
        {"embed_curves", [&](const json& v) { c.embedCurves = get_as<bool>(v, "embed_curves"); }},
        {"checks", [&](const json& v) { c.checks = get_as<std::vector<std::string>>(v, "checks"); }},
        {"grid_scale", [&](const json& v) { c.gridScale = get_number(v, "grid_scale"); }},
        {"tolerances",
         [&](const json& v) {
             if (!v.is_object()) throw ConfigError("tolerances must be an object");
             for (const auto& [k, x] : v.items()) {
                 auto it = std::find_if(std::begin(kTolFields), std::end(kTolFields),
                                        [&](const TolField& f) { return k == f.key; });
                 if (it == std::end(kTolFields)) throw ConfigError("unknown tolerance " + k);
                 c.tol.*(it->field) = get_number(x, k);
             }
         }},
    };
    for (const auto& [k, v] : j.items()) {
        auto it = setters.find(k);
        if (it == setters.end()) throw ConfigError("unknown key " + k);
        it->second(v);
    }
    validate(c);
    return c;
}

ExperimentConfig parse_config(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

json to_json(const ExperimentConfig& c)
{
    json j;
    j["command"] = to_string(c.command);
    j["fixture"] = c.fixture;
    j["curve_file"] = c.curveFile;
    j["n"] = c.n;
    j["grid"] = c.grid;
    j["t_end"] = c.tEnd;
    j["sample_spacing"] = c.sampleSpacing;
    j["exterior"] = c.exterior;
    j["a_max"] = c.aMax;
    j["model"] = c.model;
    j["tau"] = c.tau;
    j["t"] = c.t;
    j["C"] = c.C;
    j["format"] = c.format;
    j["output"] = c.output;
    j["embed_curves"] = c.embedCurves;
    j["checks"] = c.checks;
    j["grid_scale"] = c.gridScale;
    json tol;
    for (const auto& f : kTolFields) tol[f.key] = c.tol.*(f.field);
    j["tolerances"] = tol;
    return j;
}

void validate(const ExperimentConfig& c)
{
    require(c.fixture.empty() || c.curveFile.empty(), "give either fixture or curve_file, not both");
    require(c.n >= 16 && c.n <= 65536, "n must lie in [16, 65536]");
    require(c.grid >= 4 && c.grid <= 20000, "grid must lie in [4, 20000]");
    require(std::isfinite(c.tEnd) && c.tEnd > 0 && c.tEnd <= 50, "t_end must lie in (0, 50]");
    require(std::isfinite(c.sampleSpacing) && c.sampleSpacing > 0 && c.sampleSpacing <= c.tEnd,
            "sample_spacing must lie in (0, t_end]");
    require(std::isfinite(c.aMax) && c.aMax > 0 && c.aMax <= 1e4, "a_max must lie in (0, 1e4]");
    require(std::isfinite(c.tau) && c.tau < 0, "tau must be negative");
    require(std::isfinite(c.t) && std::fabs(c.t) <= 50, "t must lie in [-50, 50]");
    require(std::isfinite(c.C) && c.C > 0 && c.C <= 1e6, "C must lie in (0, 1e6]");
    require(c.format == "csv" || c.format == "json", "format must be csv or json");
    require(std::isfinite(c.gridScale) && c.gridScale >= 0.25 && c.gridScale <= 4, "grid_scale must lie in [0.25, 4]");
    for (const auto& f : kTolFields) {
        double x = c.tol.*(f.field);
        require(std::isfinite(x) && x > 0, std::string("tolerance ") + f.key + " must be positive");
    }
}

}
