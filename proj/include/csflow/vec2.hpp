#pragma once

#include <cmath>

namespace csflow {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

    constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
    constexpr double norm_sq() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }

    // counter-clockwise rotation by pi/2
    constexpr Vec2 perp() const { return {-y, x}; }

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

// 2x2 matrix, row major
struct Mat2 {
    double a00 = 0.0, a01 = 0.0;
    double a10 = 0.0, a11 = 0.0;

    constexpr Vec2 operator*(Vec2 v) const {
        return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y};
    }
    constexpr Mat2 operator+(Mat2 o) const {
        return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11};
    }
    constexpr Mat2 operator-(Mat2 o) const {
        return {a00 - o.a00, a01 - o.a01, a10 - o.a10, a11 - o.a11};
    }
    constexpr Mat2 operator*(double s) const {
        return {a00 * s, a01 * s, a10 * s, a11 * s};
    }
    constexpr Mat2 transpose() const { return {a00, a10, a01, a11}; }
    constexpr double det() const { return a00 * a11 - a01 * a10; }

    bool finite() const {
        return std::isfinite(a00) && std::isfinite(a01) &&
               std::isfinite(a10) && std::isfinite(a11);
    }

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 zero() { return {}; }
    static constexpr Mat2 outer(Vec2 a, Vec2 b) {
        return {a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y};
    }
};

constexpr Mat2 operator*(double s, Mat2 m) { return m * s; }

} // namespace csflow
