#include "csflow/mesh.hpp"

#include <cmath>
#include <string>

namespace csflow {

ParameterGrid ParameterGrid::uniform(int element_count) {
    if (element_count < 1) {
        throw ConfigInvalid("ParameterGrid: element count must be >= 1, got " +
                            std::to_string(element_count));
    }
    ParameterGrid grid;
    grid.element_count = element_count;
    grid.h = 1.0 / static_cast<double>(element_count);
    return grid;
}

std::vector<ElementFrame> element_frames(const CurveState& curve, double eps_len) {
    const int n_elem = curve.grid.element_count;
    if (static_cast<int>(curve.nodes.size()) != n_elem + 1) {
        throw ConfigInvalid("element_frames: node count does not match grid");
    }
    std::vector<ElementFrame> frames(n_elem);
    for (int e = 0; e < n_elem; ++e) {
        const Vec2 chord = curve.nodes[e + 1] - curve.nodes[e];
        const double len = chord.norm();
        if (!(len > eps_len)) {
            throw DegenerateElement("element " + std::to_string(e + 1) +
                                    " has length " + std::to_string(len));
        }
        frames[e].length = len;
        frames[e].length_sq = chord.norm_sq();
        frames[e].tangent = chord / len;
        frames[e].normal = frames[e].tangent.perp();
    }
    return frames;
}

double lumped_inner_product(std::span<const double> a, std::span<const double> b,
                            const ParameterGrid& grid) {
    const int n_elem = grid.element_count;
    if (static_cast<int>(a.size()) != n_elem + 1 ||
        static_cast<int>(b.size()) != n_elem + 1) {
        throw ConfigInvalid("lumped_inner_product: arrays must have J+1 entries");
    }
    // trapezoidal weights: h at interior nodes, h/2 at the ends
    double sum = 0.5 * (a[0] * b[0] + a[n_elem] * b[n_elem]);
    for (int j = 1; j < n_elem; ++j) {
        sum += a[j] * b[j];
    }
    return grid.h * sum;
}

namespace {

// exact integral over one element of the square of the linear function
// with endpoint values (va, vb)
inline double element_sq_integral(double va, double vb, double h) {
    return (h / 3.0) * (va * va + va * vb + vb * vb);
}

} // namespace

double l2_norm_sq_pwlinear(std::span<const double> e, const ParameterGrid& grid) {
    const int n_elem = grid.element_count;
    if (static_cast<int>(e.size()) != n_elem + 1) {
        throw ConfigInvalid("l2_norm_sq_pwlinear: array must have J+1 entries");
    }
    double sum = 0.0;
    for (int j = 0; j < n_elem; ++j) {
        sum += element_sq_integral(e[j], e[j + 1], grid.h);
    }
    return sum;
}

double l2_norm_sq_pwlinear(std::span<const Vec2> e, const ParameterGrid& grid) {
    const int n_elem = grid.element_count;
    if (static_cast<int>(e.size()) != n_elem + 1) {
        throw ConfigInvalid("l2_norm_sq_pwlinear: array must have J+1 entries");
    }
    double sum = 0.0;
    for (int j = 0; j < n_elem; ++j) {
        sum += element_sq_integral(e[j].x, e[j + 1].x, grid.h);
        sum += element_sq_integral(e[j].y, e[j + 1].y, grid.h);
    }
    return sum;
}

double l2_norm_sq_mixed(std::span<const double> linear_nodal,
                        std::span<const double> const_elem,
                        const ParameterGrid& grid) {
    const int n_elem = grid.element_count;
    if (static_cast<int>(linear_nodal.size()) != n_elem + 1 ||
        static_cast<int>(const_elem.size()) != n_elem) {
        throw ConfigInvalid("l2_norm_sq_mixed: array sizes do not match grid");
    }
    double sum = 0.0;
    for (int j = 0; j < n_elem; ++j) {
        sum += element_sq_integral(linear_nodal[j] - const_elem[j],
                                   linear_nodal[j + 1] - const_elem[j], grid.h);
    }
    return sum;
}

double l2_norm_sq_mixed(std::span<const Vec2> linear_nodal,
                        std::span<const Vec2> const_elem,
                        const ParameterGrid& grid) {
    const int n_elem = grid.element_count;
    if (static_cast<int>(linear_nodal.size()) != n_elem + 1 ||
        static_cast<int>(const_elem.size()) != n_elem) {
        throw ConfigInvalid("l2_norm_sq_mixed: array sizes do not match grid");
    }
    double sum = 0.0;
    for (int j = 0; j < n_elem; ++j) {
        sum += element_sq_integral(linear_nodal[j].x - const_elem[j].x,
                                   linear_nodal[j + 1].x - const_elem[j].x, grid.h);
        sum += element_sq_integral(linear_nodal[j].y - const_elem[j].y,
                                   linear_nodal[j + 1].y - const_elem[j].y, grid.h);
    }
    return sum;
}

} // namespace csflow
