#pragma once

#include <cmath>

namespace hardylab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline Vec2 normalized(Vec2 a) {
    const double n = norm(a);
    return {a.x / n, a.y / n};
}

}  // namespace hardylab
