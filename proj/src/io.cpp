#include "csf/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace csf {

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

nlohmann::json vertices_json(const SampledCurve& c)
{
    auto v = nlohmann::json::array();
    for (const auto& p : c.vertices) v.push_back({p.x, p.y});
    return v;
}

}

std::string format_double(double x)
{
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

double parse_double(const std::string& s)
{
    std::string t = trim(s);
    double x = 0.0;
    auto r = std::from_chars(t.data(), t.data() + t.size(), x);
    if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size())
        throw IoError("not a number: '" + s + "'");
    return x;
}

void write_curve_csv(std::ostream& out, const SampledCurve& c)
{
    out << "x,y\n";
    for (const auto& p : c.vertices) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

SampledCurve read_curve_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || trim(line) != "x,y") throw IoError("curve CSV must start with the header x,y");
    SampledCurve c;
    std::size_t lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (trim(line).empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw IoError("line " + std::to_string(lineNo) + ": expected two fields");
        c.vertices.push_back({parse_double(line.substr(0, comma)), parse_double(line.substr(comma + 1))});
    }
    return c;
}

void write_curve_json(std::ostream& out, const SampledCurve& c)
{
    nlohmann::json j;
    j["closed"] = c.closed;
    j["vertices"] = vertices_json(c);
    out << j.dump() << '\n';
}

SampledCurve read_curve_json(std::istream& in)
{
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("curve JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices")) throw IoError("curve JSON needs a vertices array");
    for (const auto& [k, v] : j.items())
        if (k != "closed" && k != "vertices") throw IoError("curve JSON: unknown key " + k);
    SampledCurve c;
    try {
        c.closed = j.value("closed", true);
        for (const auto& p : j.at("vertices")) {
            if (!p.is_array() || p.size() != 2) throw IoError("curve JSON: vertices must be [x, y] pairs");
            c.vertices.push_back({p[0].get<double>(), p[1].get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("curve JSON: ") + e.what());
    }
    return c;
}

SampledCurve read_curve_file(const std::string& path)
{
    std::istringstream in(read_text_file(path));
    bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    return json ? read_curve_json(in) : read_curve_csv(in);
}

void write_profile_csv(std::ostream& out, const Profile& p)
{
    out << "a,f,provenance\n";
    for (std::size_t k = 0; k < p.size(); ++k)
        out << format_double(p.a[k]) << ',' << format_double(p.f[k]) << ',' << to_string(p.provenance[k]) << '\n';
}

void write_trajectory_record(std::ostream& out, const TrajectoryRecord& r)
{
    nlohmann::json j;
    j["t"] = r.t;
    j["kappa_max"] = r.kappaMax;
    j["kappa_min"] = r.kappaMin;
    j["length"] = r.length;
    j["area"] = r.area;
    if (r.curve) j["curve"] = vertices_json(*r.curve);
    out << j.dump() << '\n';
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_text_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

}
