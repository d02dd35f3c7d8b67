#include "csflow/evolver.hpp"

#include <cmath>
#include <string>

#include "csflow/errors.hpp"

namespace csflow {

namespace {

// robust 2x2 solve used by the block elimination
Vec2 solve2(const Mat2& m, Vec2 r) {
    const double det = m.det();
    const double scale = std::abs(m.a00 * m.a11) + std::abs(m.a01 * m.a10);
    if (!std::isfinite(det) || std::abs(det) <= 1e-14 * scale + 1e-300) {
        throw SingularSystem("2x2 block is singular (det = " + std::to_string(det) + ")");
    }
    return {(r.x * m.a11 - r.y * m.a01) / det, (r.y * m.a00 - r.x * m.a10) / det};
}

Mat2 inverse2(const Mat2& m) {
    const double det = m.det();
    const double scale = std::abs(m.a00 * m.a11) + std::abs(m.a01 * m.a10);
    if (!std::isfinite(det) || std::abs(det) <= 1e-14 * scale + 1e-300) {
        throw SingularSystem("2x2 block is singular (det = " + std::to_string(det) + ")");
    }
    return {m.a11 / det, -m.a01 / det, -m.a10 / det, m.a00 / det};
}

Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a.a00 * b.a00 + a.a01 * b.a10, a.a00 * b.a01 + a.a01 * b.a11,
            a.a10 * b.a00 + a.a11 * b.a10, a.a10 * b.a01 + a.a11 * b.a11};
}

// Data lagged to the previous time level: squared chords q, element mass
// operators M = alpha*I + (1-alpha) N (x) N, and nodal forcing values.
struct LaggedData {
    std::vector<ElementFrame> frames;
    std::vector<Mat2> mass; // per element
    std::vector<double> f;  // per node
};

LaggedData lag_data(const CurveState& prev, const FieldState& prev_field,
                    const CurveStepParams& params) {
    if (prev.grid.element_count != prev_field.grid.element_count) {
        throw ConfigInvalid("curve and field grids do not match");
    }
    if (!(params.alpha > 0.0 && params.alpha <= 1.0)) {
        throw ConfigInvalid("alpha must lie in (0, 1]");
    }
    if (!(params.dt > 0.0)) {
        throw ConfigInvalid("time step must be positive");
    }
    LaggedData data;
    data.frames = element_frames(prev, params.eps_len);
    const int n_elem = prev.grid.element_count;
    data.mass.resize(n_elem);
    for (int e = 0; e < n_elem; ++e) {
        data.mass[e] = params.alpha * Mat2::identity() +
                       (1.0 - params.alpha) * Mat2::outer(data.frames[e].normal,
                                                          data.frames[e].normal);
    }
    data.f.assign(n_elem + 1, 0.0);
    if (params.forcing) {
        const double t_f = (params.f_time == ForcingTime::PrevTime)
                               ? prev.time
                               : prev.time + params.dt;
        for (int j = 0; j <= n_elem; ++j) {
            data.f[j] = params.forcing(prev.grid.node(j), t_f, prev_field.values[j]);
        }
    }
    return data;
}

} // namespace

std::vector<Vec2> solve_block_tridiagonal(BlockTridiagonalSystem sys) {
    const std::size_t n = sys.size();
    if (n == 0 || sys.lower.size() != n || sys.upper.size() != n || sys.rhs.size() != n) {
        throw ConfigInvalid("block tridiagonal system has inconsistent sizes");
    }
    // forward elimination
    for (std::size_t i = 1; i < n; ++i) {
        const Mat2 factor = mul(sys.lower[i], inverse2(sys.diag[i - 1]));
        sys.diag[i] = sys.diag[i] - mul(factor, sys.upper[i - 1]);
        sys.rhs[i] -= factor * sys.rhs[i - 1];
    }
    // back substitution
    std::vector<Vec2> x(n);
    x[n - 1] = solve2(sys.diag[n - 1], sys.rhs[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = solve2(sys.diag[i], sys.rhs[i] - sys.upper[i] * x[i + 1]);
    }
    for (const Vec2& v : x) {
        if (!v.finite()) {
            throw SingularSystem("block tridiagonal solve produced non-finite values");
        }
    }
    return x;
}

std::vector<Vec2> assemble_residual(const CurveState& prev,
                                    const FieldState& prev_field,
                                    const CurveState& cand,
                                    const BoundaryGeometry& geom,
                                    const CurveStepParams& params) {
    if (prev.grid.element_count != cand.grid.element_count) {
        throw ConfigInvalid("previous and candidate states share no common grid");
    }
    const LaggedData lag = lag_data(prev, prev_field, params);
    const int last = prev.grid.element_count; // node index J
    const double dt = params.dt;

    std::vector<Vec2> residual(last + 1);

    for (int j = 1; j < last; ++j) {
        const Vec2 dtx = (cand.nodes[j] - prev.nodes[j]) / dt;
        const double q_left = lag.frames[j - 1].length_sq;
        const double q_right = lag.frames[j].length_sq;
        Vec2 r = 0.5 * q_left * (lag.mass[j - 1] * dtx) +
                 0.5 * q_right * (lag.mass[j] * dtx);
        r -= cand.nodes[j - 1] - 2.0 * cand.nodes[j] + cand.nodes[j + 1];
        r -= 0.5 * lag.f[j] *
             (q_left * lag.frames[j - 1].normal + q_right * lag.frames[j].normal);
        residual[j] = r;
    }

    // endpoint rows: (tangential test with grad_perp F, constraint F = 0)
    const auto endpoint = [&](int node, int inner, int elem) {
        const BoundaryDerivatives bd = geom.eval_all(cand.nodes[node]);
        const Vec2 dtx = (cand.nodes[node] - prev.nodes[node]) / dt;
        const double q = lag.frames[elem].length_sq;
        double tan = 0.5 * q * (lag.mass[elem] * dtx).dot(bd.grad_perp);
        tan -= (cand.nodes[inner] - cand.nodes[node]).dot(bd.grad_perp);
        tan -= 0.5 * q * lag.f[node] * lag.frames[elem].normal.dot(bd.grad_perp);
        residual[node] = {tan, bd.value};
    };
    endpoint(0, 1, 0);
    endpoint(last, last - 1, last - 1);

    for (const Vec2& r : residual) {
        if (!r.finite()) {
            throw NonFinite("curve residual contains non-finite entries");
        }
    }
    return residual;
}

BlockTridiagonalSystem assemble_newton_system(const CurveState& prev,
                                              const FieldState& prev_field,
                                              const CurveState& cand,
                                              const BoundaryGeometry& geom,
                                              const CurveStepParams& params) {
    const std::vector<Vec2> residual = assemble_residual(prev, prev_field, cand, geom, params);
    const LaggedData lag = lag_data(prev, prev_field, params);
    const int last = prev.grid.element_count;
    const double dt = params.dt;

    BlockTridiagonalSystem sys;
    sys.diag.assign(last + 1, Mat2::zero());
    sys.lower.assign(last + 1, Mat2::zero());
    sys.upper.assign(last + 1, Mat2::zero());
    sys.rhs.resize(last + 1);
    for (int j = 0; j <= last; ++j) {
        sys.rhs[j] = -residual[j];
    }

    for (int j = 1; j < last; ++j) {
        const double q_left = lag.frames[j - 1].length_sq;
        const double q_right = lag.frames[j].length_sq;
        sys.diag[j] = (0.5 / dt) * (q_left * lag.mass[j - 1] + q_right * lag.mass[j]) +
                      2.0 * Mat2::identity();
        sys.lower[j] = -1.0 * Mat2::identity();
        sys.upper[j] = -1.0 * Mat2::identity();
    }

    // Endpoint rows. Row 0 of each block is the derivative of the tangential
    // equation, row 1 the derivative of the constraint F(X) = 0. The lagged
    // mass operator and normals are data, so only the candidate-dependent
    // boundary directions contribute derivative terms.
    const auto endpoint = [&](int node, int inner, int elem) {
        const BoundaryDerivatives bd = geom.eval_all(cand.nodes[node]);
        const Vec2 dtx = (cand.nodes[node] - prev.nodes[node]) / dt;
        const double q = lag.frames[elem].length_sq;
        const Mat2 d2perp_t = bd.d2perp.transpose();

        Vec2 row = 0.5 * (q / dt) * (lag.mass[elem] * bd.grad_perp);
        row += 0.5 * q * (d2perp_t * (lag.mass[elem] * dtx));
        row += bd.grad_perp;
        row -= d2perp_t * (cand.nodes[inner] - cand.nodes[node]);
        row -= 0.5 * q * lag.f[node] * (d2perp_t * lag.frames[elem].normal);

        sys.diag[node] = {row.x, row.y, bd.grad.x, bd.grad.y};
        const Mat2 coupling{-bd.grad_perp.x, -bd.grad_perp.y, 0.0, 0.0};
        if (node == 0) {
            sys.upper[node] = coupling;
        } else {
            sys.lower[node] = coupling;
        }
    };
    endpoint(0, 1, 0);
    endpoint(last, last - 1, last - 1);

    return sys;
}

std::pair<CurveState, NewtonReport> newton_step(const CurveState& prev,
                                                const FieldState& prev_field,
                                                const BoundaryGeometry& geom,
                                                const CurveStepParams& params) {
    CurveState cand = prev;
    cand.time = prev.time + params.dt;

    NewtonReport report;
    for (int iter = 1; iter <= params.newton_max_iter; ++iter) {
        BlockTridiagonalSystem sys =
            assemble_newton_system(prev, prev_field, cand, geom, params);
        const std::vector<Vec2> delta = solve_block_tridiagonal(std::move(sys));

        double delta_max = 0.0;
        for (std::size_t j = 0; j < delta.size(); ++j) {
            cand.nodes[j] += delta[j];
            delta_max = std::max(delta_max, std::max(std::abs(delta[j].x),
                                                     std::abs(delta[j].y)));
        }
        element_frames(cand, params.eps_len); // throws if an element collapsed

        const double violation =
            std::max(std::abs(geom.value(cand.nodes.front())),
                     std::abs(geom.value(cand.nodes.back())));
        report.iterations = iter;
        report.final_constraint_violation = violation;
        if (violation <= params.newton_tol && delta_max <= params.newton_delta_tol) {
            report.converged = true;
            return {std::move(cand), report};
        }
    }
    throw NewtonDiverged("Newton iteration did not converge within " +
                         std::to_string(params.newton_max_iter) + " iterations");
}

CurveState linear_scheme_step(const CurveState& prev,
                              const FieldState& prev_field,
                              const BoundaryGeometry& geom,
                              const CurveStepParams& params) {
    const LaggedData lag = lag_data(prev, prev_field, params);
    const int last = prev.grid.element_count;
    const double dt = params.dt;

    // System for the increment Y = X^n - X^{n-1}; every geometric quantity,
    // including the boundary directions, is taken at the previous state.
    BlockTridiagonalSystem sys;
    sys.diag.assign(last + 1, Mat2::zero());
    sys.lower.assign(last + 1, Mat2::zero());
    sys.upper.assign(last + 1, Mat2::zero());
    sys.rhs.resize(last + 1);

    for (int j = 1; j < last; ++j) {
        const double q_left = lag.frames[j - 1].length_sq;
        const double q_right = lag.frames[j].length_sq;
        sys.diag[j] = (0.5 / dt) * (q_left * lag.mass[j - 1] + q_right * lag.mass[j]) +
                      2.0 * Mat2::identity();
        sys.lower[j] = -1.0 * Mat2::identity();
        sys.upper[j] = -1.0 * Mat2::identity();
        sys.rhs[j] = prev.nodes[j - 1] - 2.0 * prev.nodes[j] + prev.nodes[j + 1];
        sys.rhs[j] += 0.5 * lag.f[j] * (q_left * lag.frames[j - 1].normal +
                                        q_right * lag.frames[j].normal);
    }

    const auto endpoint = [&](int node, int inner, int elem) {
        const BoundaryDerivatives bd = geom.eval_all(prev.nodes[node]);
        const double q = lag.frames[elem].length_sq;
        const Vec2 row = 0.5 * (q / dt) * (lag.mass[elem] * bd.grad_perp) + bd.grad_perp;
        sys.diag[node] = {row.x, row.y, bd.grad.x, bd.grad.y};
        const Mat2 coupling{-bd.grad_perp.x, -bd.grad_perp.y, 0.0, 0.0};
        if (node == 0) {
            sys.upper[node] = coupling;
        } else {
            sys.lower[node] = coupling;
        }
        double tan = (prev.nodes[inner] - prev.nodes[node]).dot(bd.grad_perp);
        tan += 0.5 * q * lag.f[node] * lag.frames[elem].normal.dot(bd.grad_perp);
        sys.rhs[node] = {tan, 0.0}; // constraint row: Y . grad F = 0
    };
    endpoint(0, 1, 0);
    endpoint(last, last - 1, last - 1);

    const std::vector<Vec2> increment = solve_block_tridiagonal(std::move(sys));
    CurveState next = prev;
    next.time = prev.time + params.dt;
    for (int j = 0; j <= last; ++j) {
        next.nodes[j] += increment[j];
    }
    element_frames(next, params.eps_len);
    return next;
}

} // namespace csflow
