#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csf/curve.hpp"
#include "csf/models.hpp"
#include "csf/support.hpp"

namespace csf {

enum class ProfileKind { interior, exterior };
enum class Provenance { closed_form, model, search, asymptotic, hole };

const char* to_string(Provenance p);

struct Profile {
    ProfileKind kind = ProfileKind::interior;
    double domainArea = 0.0;  // interior only
    std::vector<double> a;
    std::vector<double> f;
    std::vector<Provenance> provenance;

    std::size_t size() const { return a.size(); }
    // Linear interpolation; NaN outside the sampled range or across holes.
    double at(double area) const;
};

// Interior and exterior profile of the unit disk.
double disk_profile(double a);
double disk_exterior_profile(double a);
// Angle parameter of the closed forms, theta in (0, pi/2].
double disk_theta(double a);
double disk_exterior_theta(double a);
Profile disk_profile_on(const std::vector<double>& aGrid);
Profile disk_exterior_profile_on(const std::vector<double>& aGrid);

// Region cut off by the arc with center on the x axis through X(pi/2 - eps)
// and its mirror image.
struct FamilyMember {
    double eps = 0.0;
    double area = 0.0;
    double length = 0.0;
    double rho = 0.0;             // arc radius, infinite for the chord
    double boundaryRadius = 0.0;  // radius of curvature of the body at the endpoints
    PlaneVector endpoint;         // upper endpoint
};

class ModelFamily {
public:
    explicit ModelFamily(const ConvexBody& body);
    double half_area() const { return half_; }
    FamilyMember member(double eps) const;
    // 0 < a <= half_area.
    FamilyMember member_for_area(double a) const;

private:
    double cap(double eps) const;
    const ConvexBody& body_;
    double half_ = 0.0;
    double logLo_ = 0.0;
};

Profile model_profile(const ConvexBody& body, const std::vector<double>& aGrid);
// Validates symmetry, strict convexity, curvature maxima on the x axis and
// area pi, then returns the profile on an nGrid-point interior grid of (0, pi).
Profile model_profile_from_support(const SupportFunction& h, std::size_t nGrid);

struct YFamilyPoint {
    double area = 0.0;
    double length = 0.0;
    bool valid = false;  // false when the arc leaves the body
    double eps = 0.0;    // family parameter
};
// Members with centres on the y axis at parameters eps = pi/2 - theta.
std::vector<YFamilyPoint> y_family_members(const ConvexBody& body, const std::vector<double>& epsGrid);
// Shortest valid member for each area.
std::vector<YFamilyPoint> y_family_lengths(const ConvexBody& body, const std::vector<double>& aGrid);
std::vector<YFamilyPoint> y_family_lengths(const SupportFunction& h, const std::vector<double>& aGrid);

// Exterior model built from the expander: the compact pieces cut off by arcs
// centred on its axis, scaled by r(t).
class ExpanderFamily {
public:
    explicit ExpanderFamily(double C);
    const Expander& expander() const { return exp_; }
    FamilyMember member(double q) const;
    FamilyMember member_for_area(double a) const;
    double max_area() const { return areaTable_.back(); }

private:
    double theta_near(double q) const;
    double cap_near(double q) const;
    double cap_rate(double q) const;
    Expander exp_;
    double dq_ = 0.0;
    std::vector<double> thetaTable_, capTable_, areaTable_;
};

Profile expander_profile(const ExpanderFamily& fam, double t, const std::vector<double>& aGrid);

struct ArcCandidate {
    double u1 = 0.0, u2 = 0.0;  // spline parameters
    PlaneVector p1, p2;
    PlaneVector center;
    double radius = 0.0;  // infinite for chords
    double arcLength = 0.0;
    double enclosedArea = 0.0;  // area of the piece bounded by the arc and the forward boundary piece u1 -> u2
    double complementArea = 0.0;
    bool chord = false;
};

std::vector<ArcCandidate> arc_candidates(const SampledCurve& curve, double u1, bool exterior = false);

struct GenericOptions {
    bool exterior = false;
    bool parallel = true;
    // Below this area the two-term small-area expansion is used; 0 selects
    // pi/8 (2h)^2 with h the mean spacing.
    double minArea = 0.0;
    std::size_t containmentSamples = 32;
};

Profile generic_profile(const SampledCurve& curve, const std::vector<double>& aGrid, GenericOptions opt = {});
Profile exterior_generic_profile(const SampledCurve& curve, const std::vector<double>& aGrid, GenericOptions opt = {});

// Best arc found for one target area, for inspection.
std::optional<ArcCandidate> best_arc(const SampledCurve& curve, double area, bool exterior = false);

// |turning of the boundary piece cut off by the arc - (pi - f f')|.
double turning_tangents_check(const SampledCurve& curve, const ArcCandidate& c, double f, double fprime);

// Least-squares fit of (f - sqrt(2 pi a)) / a = c0 + c1 sqrt(a); returns c0.
double small_area_coefficient(const std::vector<double>& a, const std::vector<double>& f);

}
