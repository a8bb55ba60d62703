#pragma once

#include <cmath>

namespace csf {

struct PlaneVector {
    double x = 0.0;
    double y = 0.0;

    PlaneVector operator+(const PlaneVector& o) const { return {x + o.x, y + o.y}; }
    PlaneVector operator-(const PlaneVector& o) const { return {x - o.x, y - o.y}; }
    PlaneVector operator-() const { return {-x, -y}; }
    PlaneVector operator*(double s) const { return {x * s, y * s}; }
    PlaneVector operator/(double s) const { return {x / s, y / s}; }
    PlaneVector& operator+=(const PlaneVector& o) { x += o.x; y += o.y; return *this; }
    PlaneVector& operator-=(const PlaneVector& o) { x -= o.x; y -= o.y; return *this; }
    PlaneVector& operator*=(double s) { x *= s; y *= s; return *this; }
    bool operator==(const PlaneVector&) const = default;
};

inline PlaneVector operator*(double s, const PlaneVector& v) { return v * s; }
inline double dot(const PlaneVector& a, const PlaneVector& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const PlaneVector& a, const PlaneVector& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const PlaneVector& a) { return std::hypot(a.x, a.y); }
inline PlaneVector normalized(const PlaneVector& a) { return a / norm(a); }
// Rotation by +pi/2 and -pi/2.
inline PlaneVector rot_left(const PlaneVector& a) { return {-a.y, a.x}; }
inline PlaneVector rot_right(const PlaneVector& a) { return {a.y, -a.x}; }
inline PlaneVector rotate(const PlaneVector& a, double phi)
{
    double c = std::cos(phi), s = std::sin(phi);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

}
