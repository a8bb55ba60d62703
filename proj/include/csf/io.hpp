#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "csf/curve.hpp"
#include "csf/flow.hpp"
#include "csf/isoperimetry.hpp"

namespace csf {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shortest form that reads back to the same double (at most 17 digits).
std::string format_double(double x);
// Whole-string parse in the C locale; throws IoError.
double parse_double(const std::string& s);

// CSV: header "x,y", one vertex per line, closed implied.
void write_curve_csv(std::ostream& out, const SampledCurve& c);
SampledCurve read_curve_csv(std::istream& in);
// JSON: {"closed": bool, "vertices": [[x, y], ...]}.
void write_curve_json(std::ostream& out, const SampledCurve& c);
SampledCurve read_curve_json(std::istream& in);
// Chooses the format from the extension (.json, otherwise CSV).
SampledCurve read_curve_file(const std::string& path);

// CSV "a,f,provenance".
void write_profile_csv(std::ostream& out, const Profile& p);

// One JSON object per line.
void write_trajectory_record(std::ostream& out, const TrajectoryRecord& r);

// Whole-file read; throws IoError when the file cannot be opened.
std::string read_text_file(const std::string& path);
// Writes to path, or to standard output when path is empty or "-".
void write_text_output(const std::string& path, const std::string& text);

}
