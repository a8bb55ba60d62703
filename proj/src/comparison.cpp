#include "csf/comparison.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace csf {

double f_inner_part(double x)
{
    if (std::fabs(x) < 1e-2) {
        double y2 = x * x / 4;
        return -1.0 / 12.0 - y2 / 180.0 - y2 * y2 / 1890.0;
    }
    return std::cos(x / 2) / (2 * x * std::sin(x / 2)) - 1.0 / (x * x);
}

double f_threshold(double a)
{
    if (std::fabs(a) < 1e-3) {
        double a2 = a * a;
        return 12.0 / (1.0 + a2 / 10.0 + 17.0 * a2 * a2 / 1680.0);
    }
    if (std::fabs(a) == pi) return 0.0;
    return a * a * a / (2 * std::tan(a / 2) - a);
}

FValue calF(double a, double b)
{
    if (!(std::fabs(a) < 2 * pi)) throw std::domain_error("calF needs |a| < 2 pi");
    double s = a * a + b;
    if (s == 0.0) throw FPoleError("calF pole at a^2 + b = 0");
    FValue out;
    out.inner = f_inner_part(a) + 1.0 / s;
    out.branch = out.inner < 0 ? FBranch::expression : FBranch::zero;
    out.value = (b < f_threshold(a) && out.inner != 0.0) ? -1.0 / out.inner : -inf;
    return out;
}

OracleResult calF_oracle_detail(double a, double b, std::size_t n)
{
    if (n < 32) throw std::invalid_argument("calF_oracle needs n >= 32");
    const std::size_t m = n + 2;
    const double h = 1.0 / double(n + 1);
    // Full quadratic form on all nodes: stiffness - a^2 mass - b w w^T.
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd w = Eigen::VectorXd::Constant(m, h);
    w(0) = w(m - 1) = h / 2;
    for (std::size_t e = 0; e + 1 < m; ++e) {
        const std::size_t i = e, j = e + 1;
        double k = 1.0 / h, mass = a * a * h / 6.0;
        Q(i, i) += k - 2 * mass;
        Q(j, j) += k - 2 * mass;
        Q(i, j) += -k - mass;
        Q(j, i) += -k - mass;
    }
    Q -= b * w * w.transpose();

    Eigen::MatrixXd Aii = Q.block(1, 1, n, n);
    Eigen::VectorXd g = Q.block(1, 0, n, 1) + Q.block(1, m - 1, n, 1);
    double c = Q(0, 0) + Q(m - 1, m - 1) + 2 * Q(0, m - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Aii, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    double lmin = ev(0), lmax = std::max(std::fabs(ev(0)), std::fabs(ev(n - 1)));
    OracleResult r;
    r.minEigenvalue = lmin;
    r.condition = std::fabs(lmin) > 0 ? lmax / std::fabs(lmin) : inf;
    if (std::fabs(lmin) <= 1e-12 * lmax) throw OracleError("discrete form is singular", r.condition);
    if (lmin < 0) {
        r.bounded = false;
        r.value = -inf;
        return r;
    }
    Eigen::VectorXd x = Aii.ldlt().solve(g);
    r.value = c - g.dot(x);
    return r;
}

double calF_oracle(double a, double b, std::size_t n) { return calF_oracle_detail(a, b, n).value; }

GValue G_operator(double v, double vp, double vpp)
{
    if (!(v > 0.0)) throw std::domain_error("G needs v > 0");
    if (vpp >= 0.0) return {0.0, true};
    double e = 1.0 / (2 * v * vpp) + f_inner_part(vp);
    return {1.0 / e, false};
}

// ---------------------------------------------------------------- comparison equation

VProfile to_vprofile(const Profile& p, double time)
{
    if (p.size() < 3) throw std::invalid_argument("profile too short");
    double h = p.a[1] - p.a[0];
    for (std::size_t k = 1; k < p.size(); ++k)
        if (std::fabs(p.a[k] - p.a[k - 1] - h) > 1e-9 * h) throw std::invalid_argument("profile grid is not uniform");
    VProfile v;
    v.kind = p.kind;
    v.a = p.a;
    v.time = time;
    for (double f : p.f) v.v.push_back(0.5 * f * f);
    return v;
}

Profile to_profile(const VProfile& v)
{
    Profile p;
    p.kind = v.kind;
    p.domainArea = v.kind == ProfileKind::interior ? v.a.back() : 0.0;
    p.a = v.a;
    for (double x : v.v) {
        p.f.push_back(std::sqrt(2 * std::max(x, 0.0)));
        p.provenance.push_back(Provenance::model);
    }
    return p;
}

EvalRange eval_range(const VProfile& v, double collar)
{
    const std::size_t n = v.a.size();
    EvalRange r;
    r.lo = 1;
    while (r.lo < n && v.a[r.lo] < v.a.front() + collar) ++r.lo;
    r.hi = n - 1;
    if (v.kind == ProfileKind::interior)
        while (r.hi > r.lo && v.a[r.hi - 1] > v.a.back() - collar) --r.hi;
    return r;
}

namespace {

struct Derivs {
    double vp, vpp;
};

Derivs derivs(const VProfile& v, std::size_t k)
{
    double h = v.spacing();
    return {(v.v[k + 1] - v.v[k - 1]) / (2 * h), (v.v[k + 1] - 2 * v.v[k] + v.v[k - 1]) / (h * h)};
}

double rhs_at(const VProfile& v, std::size_t k)
{
    Derivs d = derivs(v, k);
    if (!(std::fabs(d.vp) < pi)) throw GuardError("|v'| >= pi inside the evaluated range", v.a[k]);
    double G = G_operator(v.v[k], d.vp, d.vpp).value;
    return G + 2 * v.v[k] + d.vp * (pi - 2 * v.a[k]) - d.vp * d.vp;
}

}

std::vector<double> comparison_rhs(const VProfile& v, double collar)
{
    if (v.a.size() != v.v.size() || v.a.size() < 3) throw std::invalid_argument("malformed VProfile");
    std::vector<double> out(v.a.size(), nan);
    EvalRange r = eval_range(v, collar);
    for (std::size_t k = r.lo; k < r.hi; ++k) out[k] = rhs_at(v, k);
    return out;
}

Residual pde_residual(const VProfile& before, const VProfile& mid, const VProfile& after, double delta, double collar)
{
    if (before.a != mid.a || after.a != mid.a) throw std::invalid_argument("mismatched grids");
    std::vector<double> rhs = comparison_rhs(mid, collar);
    EvalRange r = eval_range(mid, collar);
    Residual res;
    double sum = 0.0;
    for (std::size_t k = r.lo; k < r.hi; ++k) {
        double d = (after.v[k] - before.v[k]) / (2 * delta) - rhs[k];
        res.sup = std::max(res.sup, std::fabs(d));
        sum += d * d;
    }
    res.l2 = std::sqrt(sum * mid.spacing());
    return res;
}

VProfile integrate_comparison_pde(const VProfile& v0, double tEnd, const PdeOptions& opt)
{
    VProfile v = v0;
    if (tEnd <= v0.time) return v;
    const double h = v.spacing();
    const EvalRange r = eval_range(v, opt.collar);
    const std::size_t n = v.a.size();
    std::vector<double> rhs(n, 0.0);
    double scale = *std::max_element(v.v.begin(), v.v.end());
    while (v.time < tEnd) {
        double dmax = 0.0;
        for (std::size_t k = r.lo; k < r.hi; ++k) {
            rhs[k] = rhs_at(v, k);
            dmax = std::max(dmax, 2 * v.v[k]);
        }
        double dt = std::min(opt.dtFactor * h * h, 0.45 * h * h / dmax);
        bool last = v.time + dt >= tEnd;
        if (last) dt = tEnd - v.time;
        for (std::size_t k = r.lo; k < r.hi; ++k) v.v[k] += dt * rhs[k];
        v.time = last ? tEnd : v.time + dt;
        if (opt.boundary) {
            for (std::size_t k = 0; k < r.lo; ++k) v.v[k] = opt.boundary(v.a[k], v.time);
            for (std::size_t k = r.hi; k < n; ++k) v.v[k] = opt.boundary(v.a[k], v.time);
        }
        bool concave = true;
        for (std::size_t k = 1; k + 1 < n && concave; ++k)
            if (v.v[k + 1] - 2 * v.v[k] + v.v[k - 1] > opt.concavitySlack * scale) concave = false;
        if (!concave) v = concave_envelope(v);
        for (std::size_t k = 0; k < n; ++k)
            if (!std::isfinite(v.v[k]) || std::fabs(v.v[k]) > opt.blowUp * scale)
                throw std::runtime_error("comparison equation blew up");
    }
    return v;
}

VProfile concave_envelope(const VProfile& v)
{
    const std::size_t n = v.a.size();
    std::vector<std::size_t> hull;
    for (std::size_t k = 0; k < n; ++k) {
        while (hull.size() >= 2) {
            std::size_t i = hull[hull.size() - 2], j = hull.back();
            PlaneVector d1{v.a[j] - v.a[i], v.v[j] - v.v[i]}, d2{v.a[k] - v.a[i], v.v[k] - v.v[i]};
            if (cross(d1, d2) >= 0) hull.pop_back();
            else break;
        }
        hull.push_back(k);
    }
    double scale = 0.0;
    for (double x : v.v) scale = std::max(scale, std::fabs(x));
    VProfile out = v;
    std::size_t seg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        while (seg + 1 < hull.size() && hull[seg + 1] < k) ++seg;
        if (seg + 1 >= hull.size()) break;
        std::size_t i = hull[seg], j = hull[seg + 1];
        double w = (v.a[k] - v.a[i]) / (v.a[j] - v.a[i]);
        double line = (1 - w) * v.v[i] + w * v.v[j];
        if (v.v[k] < line - 1e-12 * scale) out.v[k] = line;
    }
    return out;
}

// ---------------------------------------------------------------- domination and bounds

Domination profile_dominates(const Profile& big, const Profile& small, double slack)
{
    if (big.a.empty() || small.a.empty()) throw std::invalid_argument("empty profile");
    double lo = std::max(big.a.front(), small.a.front()), hi = std::min(big.a.back(), small.a.back());
    if (lo > hi) throw std::invalid_argument("profiles have disjoint area ranges");
    std::vector<double> pts;
    for (double x : big.a)
        if (x >= lo && x <= hi) pts.push_back(x);
    for (double x : small.a)
        if (x >= lo && x <= hi) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Domination d;
    d.margin = inf;
    bool any = false;
    for (double x : pts) {
        double fb = big.at(x), fs = small.at(x);
        if (std::isnan(fb) || std::isnan(fs)) continue;
        any = true;
        d.margin = std::min(d.margin, fb - fs);
    }
    if (!any) throw std::invalid_argument("profiles have no comparable samples");
    d.holds = d.margin >= -slack;
    return d;
}

T0Result find_t0(const Profile& psi0, const ModelProfileAt& model, const T0Options& opt)
{
    auto check = [&](double t, double& margin) {
        Domination d = profile_dominates(psi0, model(t));
        margin = d.margin;
        if (!d.holds) return false;
        if (!std::isnan(opt.kappaMax) && opt.modelKappaMax && opt.modelKappaMax(t) < opt.kappaMax) return false;
        return true;
    };
    T0Result res;
    double margin = 0.0;
    if (check(opt.tHi, margin)) {
        res.t0 = opt.tHi;
        res.atUpperEnd = true;
        res.margin = margin;
        return res;
    }
    double hi = opt.tHi, lo = opt.tHi - opt.step;
    while (!check(lo, margin)) {
        if (lo <= opt.tMin) throw std::runtime_error("no domination down to the lowest model time");
        hi = lo;
        lo = std::max(lo - opt.step, opt.tMin);
    }
    double loMargin = margin;
    while (hi - lo > opt.tol) {
        double mid = 0.5 * (lo + hi);
        if (check(mid, margin)) {
            lo = mid;
            loMargin = margin;
        } else {
            hi = mid;
        }
    }
    res.t0 = lo;
    res.margin = loMargin;
    return res;
}

double curvature_upper_bound(double t, double t0)
{
    double s = t - t0;
    return std::exp(-s) / std::sqrt(-std::expm1(-std::exp(-2 * s)));
}

double curvature_lower_bound(double t, double C)
{
    if (!(t > 0.0)) throw std::domain_error("lower curvature bound needs t > 0");
    if (!(C > 0.0)) throw std::domain_error("lower curvature bound needs C > 0");
    return -1.0 / std::sqrt(C * std::expm1(2 * t));
}

}
