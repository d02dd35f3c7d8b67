#pragma once

#include <functional>
#include <vector>

#include "csflow/mesh.hpp"

namespace csflow {

// Source g as a function of (rho, t, v, w) with v the discrete normal
// velocity and w the lagged field value.
using SourceG = std::function<double(double rho, double t, double v, double w)>;

enum class SourceTime { PrevTime, CurrTime };

struct FieldStepParams {
    SourceG source;    // empty means g = 0
    double w_b = 0.0;  // Dirichlet value at both endpoints
    double dt = 0.0;
    // The explicit t passed to g lags to the previous level by default,
    // like the other lagged inputs; this reproduces the reference tables.
    SourceTime g_time = SourceTime::PrevTime;
    double eps_len = kDefaultLengthEps;
};

// Tangential and normal velocity components per element and adjacent node,
// using the difference quotient D_t X at the node and the frame of the
// element at the current time level.
struct ElementVelocities {
    // index e: element between nodes e and e+1
    std::vector<double> tangential_left;  // Psi at node e on element e
    std::vector<double> tangential_right; // Psi at node e+1 on element e
    std::vector<double> normal_left;      // V at node e on element e
    std::vector<double> normal_right;     // V at node e+1 on element e
};

ElementVelocities element_velocities(const CurveState& prev, const CurveState& curr,
                                     double dt, double eps_len = kDefaultLengthEps);

// Solves the implicit mass-lumped reaction-diffusion step on the updated
// curve: a scalar tridiagonal system over the interior nodes with both
// endpoint values eliminated to w_b.
FieldState field_step(const CurveState& prev_curve, const CurveState& curr_curve,
                      const FieldState& prev_field, const FieldStepParams& params);

} // namespace csflow
