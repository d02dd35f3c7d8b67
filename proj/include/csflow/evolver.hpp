#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "csflow/boundary.hpp"
#include "csflow/mesh.hpp"

namespace csflow {

enum class SchemeKind { Newton, LinearDE98 };
enum class ForcingTime { PrevTime, CurrTime };

// Normal forcing f as a function of (rho, t, w).
using ForcingF = std::function<double(double rho, double t, double w)>;

struct CurveStepParams {
    double alpha = 1.0; // in (0, 1]
    double dt = 0.0;
    ForcingF forcing;                                 // empty means f = 0
    double newton_tol = 1e-12;                        // endpoint constraint tolerance
    double newton_delta_tol = 1e-12;                  // max-norm increment tolerance
    int newton_max_iter = 25;
    SchemeKind scheme = SchemeKind::Newton;
    ForcingTime f_time = ForcingTime::PrevTime;       // t argument passed to f
    double eps_len = kDefaultLengthEps;
};

struct NewtonReport {
    int iterations = 0;
    double final_constraint_violation = 0.0; // max over both endpoints of |F|
    bool converged = false;
};

// Linear system with 2x2 blocks coupling each node to its neighbours only.
// lower[0] and upper[n-1] are unused.
struct BlockTridiagonalSystem {
    std::vector<Mat2> diag;
    std::vector<Mat2> lower;
    std::vector<Mat2> upper;
    std::vector<Vec2> rhs;

    std::size_t size() const { return diag.size(); }
};

// Direct block elimination (block Thomas). Throws SingularSystem.
std::vector<Vec2> solve_block_tridiagonal(BlockTridiagonalSystem sys);

// Residual of the fully discrete curve equation at the candidate state,
// scaled by the element width h. Entry j holds:
//   interior node: the vector equation tested with the nodal hat function;
//   endpoint node: (tangential equation tested with grad_perp F(X_j) * hat,
//                   constraint F(X_j)).
// Element data (squared chords, normals) and the forcing values are lagged
// to the previous state; boundary directions are taken at the candidate.
std::vector<Vec2> assemble_residual(const CurveState& prev,
                                    const FieldState& prev_field,
                                    const CurveState& cand,
                                    const BoundaryGeometry& geom,
                                    const CurveStepParams& params);

// Jacobian of assemble_residual with respect to the candidate nodes,
// with right-hand side equal to minus the residual.
BlockTridiagonalSystem assemble_newton_system(const CurveState& prev,
                                              const FieldState& prev_field,
                                              const CurveState& cand,
                                              const BoundaryGeometry& geom,
                                              const CurveStepParams& params);

// One implicit time step by Newton iteration on the discrete system with
// hard endpoint constraints F(X_0) = F(X_J) = 0.
std::pair<CurveState, NewtonReport> newton_step(const CurveState& prev,
                                                const FieldState& prev_field,
                                                const BoundaryGeometry& geom,
                                                const CurveStepParams& params);

// One step of the linear variant: all geometric data including the boundary
// directions are evaluated at the previous state and the endpoint constraint
// is imposed only through its linearization (X^n - X^{n-1}) . grad F = 0.
CurveState linear_scheme_step(const CurveState& prev,
                              const FieldState& prev_field,
                              const BoundaryGeometry& geom,
                              const CurveStepParams& params);

} // namespace csflow
