#include "csflow/surface_pde.hpp"

#include <cmath>
#include <string>

#include "csflow/errors.hpp"

namespace csflow {

ElementVelocities element_velocities(const CurveState& prev, const CurveState& curr,
                                     double dt, double eps_len) {
    if (prev.grid.element_count != curr.grid.element_count) {
        throw ConfigInvalid("element_velocities: states share no common grid");
    }
    if (!(dt > 0.0)) {
        throw ConfigInvalid("element_velocities: time step must be positive");
    }
    const std::vector<ElementFrame> frames = element_frames(curr, eps_len);
    const int n_elem = curr.grid.element_count;

    ElementVelocities vel;
    vel.tangential_left.resize(n_elem);
    vel.tangential_right.resize(n_elem);
    vel.normal_left.resize(n_elem);
    vel.normal_right.resize(n_elem);
    for (int e = 0; e < n_elem; ++e) {
        const Vec2 dtx_left = (curr.nodes[e] - prev.nodes[e]) / dt;
        const Vec2 dtx_right = (curr.nodes[e + 1] - prev.nodes[e + 1]) / dt;
        vel.tangential_left[e] = dtx_left.dot(frames[e].tangent);
        vel.tangential_right[e] = dtx_right.dot(frames[e].tangent);
        vel.normal_left[e] = dtx_left.dot(frames[e].normal);
        vel.normal_right[e] = dtx_right.dot(frames[e].normal);
    }
    return vel;
}

FieldState field_step(const CurveState& prev_curve, const CurveState& curr_curve,
                      const FieldState& prev_field, const FieldStepParams& params) {
    if (prev_curve.grid.element_count != curr_curve.grid.element_count ||
        prev_curve.grid.element_count != prev_field.grid.element_count) {
        throw ConfigInvalid("field_step: states share no common grid");
    }
    if (!(params.dt > 0.0)) {
        throw ConfigInvalid("field_step: time step must be positive");
    }
    const int last = curr_curve.grid.element_count; // node index J
    const double dt = params.dt;
    const double t_source = (params.g_time == SourceTime::PrevTime) ? prev_curve.time
                                                                    : curr_curve.time;
    const std::vector<ElementFrame> frames_prev = element_frames(prev_curve, params.eps_len);
    const std::vector<ElementFrame> frames_curr = element_frames(curr_curve, params.eps_len);
    const ElementVelocities vel = element_velocities(prev_curve, curr_curve, dt, params.eps_len);

    FieldState next;
    next.grid = prev_field.grid;
    next.time = curr_curve.time;
    next.values.assign(last + 1, params.w_b);
    if (last < 2) {
        return next; // no interior nodes, field is the boundary value
    }

    // scalar tridiagonal system over interior nodes 1..J-1
    const int n = last - 1;
    std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);

    for (int j = 1; j < last; ++j) {
        const int row = j - 1;
        const double len_left = frames_curr[j - 1].length;
        const double len_right = frames_curr[j].length;

        diag[row] = 0.5 * (len_left + len_right) / dt + 1.0 / len_left + 1.0 / len_right +
                    0.5 * (vel.tangential_right[j - 1] - vel.tangential_left[j]);
        sub[row] = -1.0 / len_left + 0.5 * vel.tangential_left[j - 1];
        sup[row] = -1.0 / len_right - 0.5 * vel.tangential_right[j];

        const double w_prev = prev_field.values[j];
        const double rho = prev_field.grid.node(j);
        double source = 0.0;
        if (params.source) {
            source = 0.5 * (len_left * params.source(rho, t_source, vel.normal_right[j - 1], w_prev) +
                            len_right * params.source(rho, t_source, vel.normal_left[j], w_prev));
        }
        rhs[row] = 0.5 * (frames_prev[j - 1].length + frames_prev[j].length) * w_prev / dt +
                   source;
    }
    // eliminate the Dirichlet endpoints
    rhs[0] -= sub[0] * params.w_b;
    rhs[n - 1] -= sup[n - 1] * params.w_b;

    // Thomas elimination
    for (int i = 1; i < n; ++i) {
        const double pivot = diag[i - 1];
        if (!std::isfinite(pivot) || std::abs(pivot) <= 1e-300) {
            throw SingularSystem("field system pivot vanished at row " + std::to_string(i - 1));
        }
        const double factor = sub[i] / pivot;
        diag[i] -= factor * sup[i - 1];
        rhs[i] -= factor * rhs[i - 1];
    }
    if (!std::isfinite(diag[n - 1]) || std::abs(diag[n - 1]) <= 1e-300) {
        throw SingularSystem("field system pivot vanished at last row");
    }
    next.values[last - 1] = rhs[n - 1] / diag[n - 1];
    for (int i = n - 2; i >= 0; --i) {
        next.values[i + 1] = (rhs[i] - sup[i] * next.values[i + 2]) / diag[i];
    }
    for (double v : next.values) {
        if (!std::isfinite(v)) {
            throw NonFinite("field solve produced non-finite values");
        }
    }
    return next;
}

} // namespace csflow
