#pragma once

#include <cmath>

namespace cardio {

// 2D point/vector in millimetres. The whole model lives on a flat
// 100x100 mm tissue sheet, so plain doubles are plenty.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double length(Vec2 v) { return std::hypot(v.x, v.y); }

inline Vec2 normalized(Vec2 v) {
    const double n = length(v);
    return {v.x / n, v.y / n};
}

} // namespace cardio
