#pragma once

#include <span>
#include <vector>

#include "csflow/errors.hpp"
#include "csflow/vec2.hpp"

namespace csflow {

// Uniform partition of the parameter interval [0,1] into J elements.
struct ParameterGrid {
    int element_count = 0; // J
    double h = 0.0;        // 1/J

    static ParameterGrid uniform(int element_count);

    int node_count() const { return element_count + 1; }
    double node(int j) const {
        return static_cast<double>(j) / static_cast<double>(element_count);
    }
};

// Nodal positions of the polygonal curve at one time level.
struct CurveState {
    ParameterGrid grid;
    std::vector<Vec2> nodes; // J+1 points
    double time = 0.0;
};

// Nodal values of the on-curve scalar field at one time level.
struct FieldState {
    ParameterGrid grid;
    std::vector<double> values; // J+1 scalars
    double time = 0.0;
};

// Geometric data on one element: chord length, squared chord, unit frame.
// normal is the tangent rotated counter-clockwise by pi/2.
struct ElementFrame {
    double length = 0.0;
    double length_sq = 0.0;
    Vec2 tangent;
    Vec2 normal;
};

inline constexpr double kDefaultLengthEps = 1e-14;

// Per-element lengths, squared chords and unit frames.
// Throws DegenerateElement if any chord is shorter than eps_len.
std::vector<ElementFrame> element_frames(const CurveState& curve,
                                         double eps_len = kDefaultLengthEps);

// Discrete (mass lumped) inner product of two nodal functions: the exact
// integral of the piecewise linear interpolant of their nodal product.
double lumped_inner_product(std::span<const double> a, std::span<const double> b,
                            const ParameterGrid& grid);

// Exact squared L2 norm of the piecewise linear function with the given
// nodal values; the Vec2 overload sums componentwise.
double l2_norm_sq_pwlinear(std::span<const double> e, const ParameterGrid& grid);
double l2_norm_sq_pwlinear(std::span<const Vec2> e, const ParameterGrid& grid);

// Exact squared L2 norm of (piecewise linear nodal function) minus
// (piecewise constant element function).
double l2_norm_sq_mixed(std::span<const double> linear_nodal,
                        std::span<const double> const_elem,
                        const ParameterGrid& grid);
double l2_norm_sq_mixed(std::span<const Vec2> linear_nodal,
                        std::span<const Vec2> const_elem,
                        const ParameterGrid& grid);

} // namespace csflow
