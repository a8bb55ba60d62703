#include "csf/numerics.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

namespace csf {

std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& a, const std::vector<double>& b,
                                             const std::vector<double>& c, const std::vector<double>& d)
{
    const std::size_t n = b.size();
    if (n < 3) throw std::invalid_argument("cyclic system needs at least 3 unknowns");
    // Sherman-Morrison around the Thomas algorithm.
    const double gamma = -b[0];
    std::vector<double> bb(b);
    bb[0] = b[0] - gamma;
    bb[n - 1] = b[n - 1] - c[n - 1] * a[0] / gamma;

    auto thomas = [&](std::vector<double> rhs) {
        std::vector<double> cp(n), x(n);
        cp[0] = c[0] / bb[0];
        rhs[0] /= bb[0];
        for (std::size_t i = 1; i < n; ++i) {
            double m = bb[i] - a[i] * cp[i - 1];
            cp[i] = (i + 1 < n) ? c[i] / m : 0.0;
            rhs[i] = (rhs[i] - a[i] * rhs[i - 1]) / m;
        }
        x[n - 1] = rhs[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) x[i] = rhs[i] - cp[i] * x[i + 1];
        return x;
    };

    std::vector<double> x = thomas(d);
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = c[n - 1];
    std::vector<double> z = thomas(u);
    const double vx = x[0] + a[0] / gamma * x[n - 1];
    const double vz = z[0] + a[0] / gamma * z[n - 1];
    const double f = vx / (1.0 + vz);
    for (std::size_t i = 0; i < n; ++i) x[i] -= f * z[i];
    return x;
}

namespace {

// Gauss-Kronrod 7/15 nodes on [-1, 1].
constexpr double xk[8] = {0.991455371120812639, 0.949107912342758525, 0.864864423359769073,
                          0.741531185599394440, 0.586087235467691130, 0.405845151377397167,
                          0.207784955007898468, 0.0};
constexpr double wk[8] = {0.022935322010529225, 0.063092092629978553, 0.104790010322250184,
                          0.140653259715525919, 0.169004726639267903, 0.190350578064785410,
                          0.204432940075298892, 0.209482141084727828};
constexpr double wg[4] = {0.129484966168869693, 0.279705391489276668, 0.381830050505118945,
                          0.417959183673469388};

struct Piece {
    double value, error, l1;
};

Piece gk15(const std::function<double(double)>& f, double lo, double hi)
{
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double fc = f(c);
    double k = wk[7] * fc, g = wg[3] * fc, l1 = wk[7] * std::fabs(fc);
    for (int i = 0; i < 7; ++i) {
        double f1 = f(c - h * xk[i]), f2 = f(c + h * xk[i]);
        k += wk[i] * (f1 + f2);
        l1 += wk[i] * (std::fabs(f1) + std::fabs(f2));
        if (i % 2 == 1) g += wg[i / 2] * (f1 + f2);
    }
    return {k * h, std::fabs((k - g) * h), l1 * std::fabs(h)};
}

double adapt(const std::function<double(double)>& f, double lo, double hi, Piece p, double relTol, unsigned depth)
{
    double floor = 50 * std::numeric_limits<double>::epsilon() * p.l1;
    if (p.error <= std::max(relTol * std::fabs(p.value), floor) || depth == 0) return p.value;
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return p.value;
    return adapt(f, lo, mid, gk15(f, lo, mid), relTol, depth - 1) +
           adapt(f, mid, hi, gk15(f, mid, hi), relTol, depth - 1);
}

}

double integrate(const std::function<double(double)>& f, double lo, double hi, double relTol, unsigned maxDepth)
{
    if (lo == hi) return 0.0;
    return adapt(f, lo, hi, gk15(f, lo, hi), relTol, maxDepth);
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double xTol, int maxIter)
{
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw std::domain_error("root not bracketed");
    boost::uintmax_t it = static_cast<boost::uintmax_t>(maxIter);
    auto tol = [xTol](double x0, double x1) {
        double w = std::fabs(x1 - x0);
        return w <= xTol || w <= 4 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(x0), std::fabs(x1));
    };
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, it);
    return 0.5 * (r.first + r.second);
}

std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> v(n);
    if (n == 1) { v[0] = lo; return v; }
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return v;
}

std::vector<double> open_grid(double lo, double hi, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i + 1) / double(n + 1);
    return v;
}

double interp_linear(const std::vector<double>& x, const std::vector<double>& y, double xq)
{
    if (x.empty()) return nan;
    if (xq <= x.front()) return y.front();
    if (xq >= x.back()) return y.back();
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    std::size_t k = std::size_t(it - x.begin()) - 1;
    double w = (xq - x[k]) / (x[k + 1] - x[k]);
    return y[k] + w * (y[k + 1] - y[k]);
}

}
