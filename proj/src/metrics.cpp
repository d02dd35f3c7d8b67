#include "csflow/metrics.hpp"

#include <cmath>
#include <string>

#include "csflow/boundary.hpp"
#include "csflow/errors.hpp"

namespace csflow {

double ErrorReport::value(int index) const {
    switch (index) {
    case 1:
        return e1;
    case 2:
        return e2;
    case 3:
        return e3;
    case 4:
        if (!has_field) {
            throw MissingExactField("E4 is not available for this run");
        }
        return e4;
    case 5:
        if (!has_field) {
            throw MissingExactField("E5 is not available for this run");
        }
        return e5;
    default:
        throw ConfigInvalid("error index must lie in 1..5");
    }
}

ErrorReport error_accumulate(const Trajectory& traj, const ExactSolution& exact) {
    if (traj.states.size() < 2) {
        throw ConfigInvalid("error_accumulate: trajectory has no steps");
    }
    const ParameterGrid grid = traj.states.front().curve.grid;
    const int n_nodes = grid.node_count();
    const int n_elem = grid.element_count;
    const long n_states = static_cast<long>(traj.states.size());
    // time-summed errors need every step, so snapshots must be stride 1
    for (long n = 0; n < n_states; ++n) {
        if (traj.states[n].step != n) {
            throw ConfigInvalid("error_accumulate needs a stride-1 trajectory");
        }
    }

    const auto geom = make_geometry(exact.geometry);

    ErrorReport report;
    report.has_field = exact.has_field;
    report.element_count = n_elem;
    report.step_count = n_states - 1;

    std::vector<Vec2> diff(n_nodes); // interp(x) - X at nodes
    std::vector<Vec2> diff_prev(n_nodes);
    std::vector<Vec2> rate(n_nodes);
    std::vector<double> wdiff(n_nodes);

    // The reference tables sample the error functionals at the time levels
    // n = 0 .. N-1: the terminal level enters the difference quotient of
    // the last measured step but is not itself measured.
    for (long n = 0; n < n_states - 1; ++n) {
        const SimState& state = traj.states[n];
        const double t = state.curve.time;
        const double dt = (n > 0) ? state.curve.time - traj.states[n - 1].curve.time : 0.0;

        for (int j = 0; j < n_nodes; ++j) {
            diff[j] = exact.x(grid.node(j), t) - state.curve.nodes[j];
        }
        // grad of (interpolant - discrete): piecewise constant per element
        double grad_sq = 0.0;
        for (int e = 0; e < n_elem; ++e) {
            grad_sq += (diff[e + 1] - diff[e]).norm_sq() / grid.h;
        }
        report.e1 = std::max(report.e1, grad_sq);
        report.e3 = std::max(report.e3,
                             std::max(std::abs(geom->value(state.curve.nodes.front())),
                                      std::abs(geom->value(state.curve.nodes.back()))));
        if (n > 0) {
            for (int j = 0; j < n_nodes; ++j) {
                rate[j] = (diff[j] - diff_prev[j]) / dt;
            }
            report.e2 += dt * l2_norm_sq_pwlinear(std::span<const Vec2>(rate), grid);
        }
        diff_prev = diff;

        if (exact.has_field) {
            for (int j = 0; j < n_nodes; ++j) {
                wdiff[j] = exact.w(grid.node(j), t) - state.field.values[j];
            }
            report.e4 = std::max(report.e4, l2_norm_sq_pwlinear(std::span<const double>(wdiff), grid));
            if (n > 0) {
                double wgrad_sq = 0.0;
                for (int e = 0; e < n_elem; ++e) {
                    const double d = wdiff[e + 1] - wdiff[e];
                    wgrad_sq += d * d / grid.h;
                }
                report.e5 += dt * wgrad_sq;
            }
        }
    }
    return report;
}

double eoc(double h_prev, double e_prev, double h_curr, double e_curr) {
    if (e_prev == 0.0 || e_curr == 0.0) {
        throw ZeroError("eoc of an exactly zero error is undefined");
    }
    if (h_prev == h_curr) {
        throw ConfigInvalid("eoc requires distinct mesh widths");
    }
    return std::log(e_prev / e_curr) / std::log(h_prev / h_curr);
}

} // namespace csflow
