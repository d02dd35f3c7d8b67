#pragma once

#include <memory>
#include <string>

#include "csflow/vec2.hpp"

namespace csflow {

// All derivative data of the level set function F at one point.
struct BoundaryDerivatives {
    double value = 0.0;
    Vec2 grad;
    Vec2 grad_perp; // (-dF/dy, dF/dx)
    Mat2 hess;
    Mat2 d2perp; // [[-Fxy, -Fyy], [Fxx, Fxy]] = Jacobian of p -> grad_perp(p)
};

// Fixed domain boundary given as the zero level set of a smooth F with
// |grad F| = 1 on the boundary itself.
class BoundaryGeometry {
public:
    virtual ~BoundaryGeometry() = default;

    virtual std::string name() const = 0;
    virtual double value(Vec2 p) const = 0;
    virtual Vec2 gradient(Vec2 p) const = 0;
    virtual Mat2 hessian(Vec2 p) const = 0;

    Vec2 gradient_perp(Vec2 p) const { return gradient(p).perp(); }
    Mat2 d2perp(Vec2 p) const;

    // Consistent bundle of all derivative data at p. Throws NonFinite.
    BoundaryDerivatives eval_all(Vec2 p) const;
};

// F(x, y) = y, the upper half plane boundary
class HalfPlane final : public BoundaryGeometry {
public:
    std::string name() const override { return "half-plane"; }
    double value(Vec2 p) const override { return p.y; }
    Vec2 gradient(Vec2) const override { return {0.0, 1.0}; }
    Mat2 hessian(Vec2) const override { return Mat2::zero(); }
};

// F(x, y) = (x^2 + y^2 - 1) / 2, the unit disc boundary
class UnitDisc final : public BoundaryGeometry {
public:
    std::string name() const override { return "unit-disc"; }
    double value(Vec2 p) const override { return 0.5 * (p.norm_sq() - 1.0); }
    Vec2 gradient(Vec2 p) const override { return p; }
    Mat2 hessian(Vec2) const override { return Mat2::identity(); }
};

// Geometry selection by name: "half-plane" | "unit-disc".
std::shared_ptr<const BoundaryGeometry> make_geometry(const std::string& name);

// Samples points on the zero level set (projected from a ring of probes)
// and returns the largest deviation of |grad F| from 1 found there.
double max_unit_gradient_deviation(const BoundaryGeometry& geom,
                                   int sample_count = 100);

} // namespace csflow
