#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "csf/isoperimetry.hpp"
#include "csf/numerics.hpp"

namespace csf {

// ---------------------------------------------------------------- F and G
//
// F[a, b] is the infimum of  int phi'^2 - a^2 int phi^2 - b (int phi)^2
// over phi on [0, 1] with phi(0) = phi(1) = 1. With
//   E(a, b) = cos(a/2) / (2a sin(a/2)) - 1/a^2 + 1/(a^2 + b)
// the infimum is -1/E when b < lambda(a) = a^3 / (2 tan(a/2) - a), where the
// form is positive definite, and -infinity otherwise.

class FPoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Which branch of min{E, 0} is active: the expression (E < 0) or zero.
enum class FBranch { expression, zero };

struct FValue {
    double value = 0.0;  // -inf when the form is unbounded below
    double inner = 0.0;  // E(a, b)
    FBranch branch = FBranch::expression;
    bool finite() const { return value > -inf; }
};

// cos(x/2) / (2x sin(x/2)) - 1/x^2, with the limit -1/12 at x = 0.
double f_inner_part(double x);
// Positive definiteness threshold lambda(a); 12 at a = 0.
double f_threshold(double a);

// |a| < 2 pi; throws FPoleError when a^2 + b = 0.
FValue calF(double a, double b);

class OracleError : public std::runtime_error {
public:
    OracleError(const std::string& what, double condition) : std::runtime_error(what), condition(condition) {}
    double condition;
};

struct OracleResult {
    double value = 0.0;  // -inf when unbounded
    bool bounded = true;
    double minEigenvalue = 0.0;
    double condition = 0.0;
};

// Direct minimization over piecewise linear phi with n >= 32 interior nodes.
OracleResult calF_oracle_detail(double a, double b, std::size_t n);
double calF_oracle(double a, double b, std::size_t n);

struct GValue {
    double value = 0.0;
    bool degenerate = false;  // vpp >= 0
};

// 1 / (1/(2 v v'') - 1/v'^2 + cos(v'/2) / (2 v' sin(v'/2))) for v'' < 0.
GValue G_operator(double v, double vp, double vpp);

// ---------------------------------------------------------------- comparison equation

struct VProfile {
    ProfileKind kind = ProfileKind::interior;
    std::vector<double> a;  // uniform, [0, pi] or [0, aMax]
    std::vector<double> v;  // f^2 / 2
    double time = 0.0;
    bool symmetric = false;

    double spacing() const { return a[1] - a[0]; }
};

VProfile to_vprofile(const Profile& p, double time = 0.0);
Profile to_profile(const VProfile& v);

class GuardError : public std::runtime_error {
public:
    GuardError(const std::string& what, double area) : std::runtime_error(what), area(area) {}
    double area;
};

inline constexpr double kDefaultCollar = 0.02 * pi;

// Indices where the equation is evaluated: a in [collar, pi - collar]
// (interior) or a >= collar away from the last sample (exterior).
struct EvalRange {
    std::size_t lo = 0, hi = 0;  // half-open
};
EvalRange eval_range(const VProfile& v, double collar = kDefaultCollar);

// dv/dt = G[v] + 2v + v'(pi - 2a) - v'^2 on the evaluated range, NaN
// elsewhere. Throws GuardError when |v'| >= pi inside the range.
std::vector<double> comparison_rhs(const VProfile& v, double collar = kDefaultCollar);

struct Residual {
    double sup = 0.0;
    double l2 = 0.0;
};

// Central time difference of (before, after) at spacing 2 delta minus the
// right-hand side at mid.
Residual pde_residual(const VProfile& before, const VProfile& mid, const VProfile& after, double delta,
                      double collar = kDefaultCollar);

// Dirichlet data outside the evaluated range.
using BoundaryData = std::function<double(double a, double t)>;

struct PdeOptions {
    double collar = kDefaultCollar;
    double dtFactor = 0.2;  // dt = dtFactor * da^2, further limited by the local diffusion
    double concavitySlack = 1e-10;
    BoundaryData boundary;  // frozen initial values when empty
    double blowUp = 1e6;
};

VProfile integrate_comparison_pde(const VProfile& v0, double tEnd, const PdeOptions& opt = {});

VProfile concave_envelope(const VProfile& v);

// ---------------------------------------------------------------- domination and bounds

struct Domination {
    bool holds = false;
    double margin = 0.0;  // min(big - small) over the common points
};

// Compares on the union of both grids over the common range; NaN samples
// are skipped.
Domination profile_dominates(const Profile& big, const Profile& small, double slack = 0.0);

using ModelProfileAt = std::function<Profile(double t)>;

struct T0Options {
    double tHi = 4.0;
    double tMin = -3.0;
    double step = 0.5;
    double tol = 1e-3;
    // Curvature maximum of the initial curve; the model must be at least as
    // curved so that domination also holds below the grid. NaN disables.
    double kappaMax = nan;
    std::function<double(double t)> modelKappaMax;
};

struct T0Result {
    double t0 = 0.0;
    bool atUpperEnd = false;  // domination at every tested t
    double margin = 0.0;
};

T0Result find_t0(const Profile& psi0, const ModelProfileAt& model, const T0Options& opt = {});

double curvature_upper_bound(double t, double t0);
double curvature_lower_bound(double t, double C);

}
