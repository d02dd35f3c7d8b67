#include "csflow/simulate.hpp"

#include <cmath>
#include <string>

#include "csflow/errors.hpp"

namespace csflow {

DtRule DtRule::ch(double c) {
    if (!(c > 0.0)) {
        throw ConfigInvalid("dt rule ch requires a positive constant");
    }
    DtRule rule;
    rule.kind = Kind::CH;
    rule.c = c;
    return rule;
}

DtRule DtRule::explicit_n(long n) {
    if (n < 1) {
        throw ConfigInvalid("dt rule n requires a positive step count");
    }
    DtRule rule;
    rule.kind = Kind::ExplicitN;
    rule.n = n;
    return rule;
}

DtRule DtRule::parse(const std::string& text) {
    if (text == "h2") {
        return h2();
    }
    if (text.rfind("ch:", 0) == 0) {
        try {
            return ch(std::stod(text.substr(3)));
        } catch (const std::logic_error&) {
            throw ConfigInvalid("cannot parse dt rule \"" + text + "\"");
        }
    }
    if (text.rfind("n:", 0) == 0) {
        try {
            return explicit_n(std::stol(text.substr(2)));
        } catch (const std::logic_error&) {
            throw ConfigInvalid("cannot parse dt rule \"" + text + "\"");
        }
    }
    throw ConfigInvalid("unknown dt rule \"" + text + "\" (expected h2, ch:<c> or n:<N>)");
}

std::string DtRule::describe() const {
    switch (kind) {
    case Kind::H2:
        return "h2";
    case Kind::CH:
        return "ch:" + std::to_string(c);
    case Kind::ExplicitN:
        return "n:" + std::to_string(n);
    }
    return "?";
}

long SimConfig::step_count() const {
    if (!(final_time > 0.0)) {
        throw ConfigInvalid("final time T must be positive");
    }
    if (element_count < 2) {
        throw ConfigInvalid("J must be >= 2");
    }
    double dt_raw = 0.0;
    switch (dt_rule.kind) {
    case DtRule::Kind::H2: {
        const double h = 1.0 / element_count;
        dt_raw = h * h;
        break;
    }
    case DtRule::Kind::CH:
        dt_raw = dt_rule.c / element_count;
        break;
    case DtRule::Kind::ExplicitN:
        if (dt_rule.n < 1) {
            throw ConfigInvalid("explicit step count must be positive");
        }
        return dt_rule.n;
    }
    const double ratio = final_time / dt_raw;
    const long n = std::lround(ratio);
    if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-6) {
        throw ConfigInvalid("T / dt = " + std::to_string(ratio) +
                            " is not a positive integer for dt rule " + dt_rule.describe());
    }
    return n;
}

double SimConfig::dt() const { return final_time / static_cast<double>(step_count()); }

void SimConfig::validate() const {
    if (element_count < 2) {
        throw ConfigInvalid("J must be >= 2");
    }
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw ConfigInvalid("alpha must lie in (0, 1]");
    }
    if (!(newton_tol > 0.0)) {
        throw ConfigInvalid("newton_tol must be positive");
    }
    if (newton_max_iter < 1) {
        throw ConfigInvalid("newton_max_iter must be positive");
    }
    if (snapshot_stride < 1) {
        throw ConfigInvalid("snapshot_stride must be positive");
    }
    step_count();          // validates T and the dt rule
    make_geometry(geometry);
    lookup_forcing(f_name);
    lookup_source(g_name);
    if (initial == "custom") {
        if (static_cast<int>(custom_nodes.size()) != element_count + 1) {
            throw ConfigInvalid("custom initial data must supply J+1 nodes");
        }
    } else {
        initial_curve_point(initial, 0.0);
    }
    initial_field_value(w0_name, 0.0);
}

CurveStepParams SimConfig::curve_params() const {
    CurveStepParams p;
    p.alpha = alpha;
    p.dt = dt();
    p.forcing = lookup_forcing(f_name);
    p.newton_tol = newton_tol;
    p.newton_delta_tol = newton_tol;
    p.newton_max_iter = newton_max_iter;
    p.scheme = scheme;
    p.f_time = f_time;
    return p;
}

FieldStepParams SimConfig::field_params() const {
    FieldStepParams p;
    p.source = lookup_source(g_name);
    p.w_b = w_b;
    p.dt = dt();
    p.g_time = g_time;
    return p;
}

ForcingF lookup_forcing(const std::string& name) {
    if (name == "none") {
        return {};
    }
    if (name == "example2") {
        return [](double rho, double t, double) {
            const double a = 1.0 - 2.0 * t;
            return 4.0 * (rho - 0.5) / (a * a + 1.0);
        };
    }
    if (name == "example3-f") {
        return [](double rho, double t, double w) {
            const double a = 1.0 - 2.0 * t;
            return 4.0 * (rho * rho - w / (1.0 - t) - 0.5) / (a * a + 1.0);
        };
    }
    throw ConfigInvalid("unknown forcing f \"" + name + "\"");
}

SourceG lookup_source(const std::string& name) {
    if (name == "none") {
        return {};
    }
    if (name == "example3-g") {
        return [](double, double t, double, double w) {
            return 0.5 * (t - 1.0) - w / (1.0 - t);
        };
    }
    throw ConfigInvalid("unknown source g \"" + name + "\"");
}

Vec2 initial_curve_point(const std::string& name, double rho) {
    if (name == "semicircle") {
        return {std::cos(M_PI * rho), std::sin(M_PI * rho)};
    }
    if (name == "diameter") {
        const double u = std::sqrt(2.0) * (rho - 0.5);
        return {u, u};
    }
    throw ConfigInvalid("unknown initial curve \"" + name + "\"");
}

double initial_field_value(const std::string& name, double rho) {
    if (name == "zero") {
        return 0.0;
    }
    if (name == "example3") {
        return rho * (rho - 1.0);
    }
    throw ConfigInvalid("unknown initial field \"" + name + "\"");
}

SimState initialize(const SimConfig& config) {
    config.validate();
    const ParameterGrid grid = ParameterGrid::uniform(config.element_count);

    SimState state;
    state.step = 0;
    state.curve.grid = grid;
    state.curve.time = 0.0;
    state.curve.nodes.resize(grid.node_count());
    if (config.initial == "custom") {
        state.curve.nodes = config.custom_nodes;
    } else {
        for (int j = 0; j < grid.node_count(); ++j) {
            state.curve.nodes[j] = initial_curve_point(config.initial, grid.node(j));
        }
    }
    state.field.grid = grid;
    state.field.time = 0.0;
    state.field.values.resize(grid.node_count());
    for (int j = 0; j < grid.node_count(); ++j) {
        state.field.values[j] = initial_field_value(config.w0_name, grid.node(j));
    }

    const auto geom = make_geometry(config.geometry);
    const double violation = std::max(std::abs(geom->value(state.curve.nodes.front())),
                                      std::abs(geom->value(state.curve.nodes.back())));
    if (violation > 1e-12) {
        throw ConstraintViolatedAtStart("initial endpoints are off the boundary by " +
                                        std::to_string(violation));
    }
    return state;
}

namespace {

// rethrow preserving the concrete error type, with the step index attached
[[noreturn]] void rethrow_with_step(const Error& err, long step) {
    const std::string msg = "step " + std::to_string(step) + ": " + err.what();
    if (dynamic_cast<const NewtonDiverged*>(&err)) {
        throw NewtonDiverged(msg);
    }
    if (dynamic_cast<const SingularSystem*>(&err)) {
        throw SingularSystem(msg);
    }
    if (dynamic_cast<const DegenerateElement*>(&err)) {
        throw DegenerateElement(msg);
    }
    if (dynamic_cast<const NonFinite*>(&err)) {
        throw NonFinite(msg);
    }
    throw Error(msg);
}

} // namespace

SimState advance(const SimState& state, const SimConfig& config) {
    const auto geom = make_geometry(config.geometry);
    const CurveStepParams curve_p = config.curve_params();
    const FieldStepParams field_p = config.field_params();
    const double dt = config.dt();

    SimState next;
    next.step = state.step + 1;
    try {
        if (config.scheme == SchemeKind::Newton) {
            auto [curve, report] = newton_step(state.curve, state.field, *geom, curve_p);
            next.curve = std::move(curve);
        } else {
            next.curve = linear_scheme_step(state.curve, state.field, *geom, curve_p);
        }
        // accumulate time as n * dt so the terminal time lands on T
        next.curve.time = static_cast<double>(next.step) * dt;
        next.field = field_step(state.curve, next.curve, state.field, field_p);
        next.field.time = next.curve.time;
    } catch (const Error& err) {
        rethrow_with_step(err, next.step);
    }
    return next;
}

Trajectory run(const SimConfig& config) {
    const long n_steps = config.step_count();
    Trajectory traj;
    traj.states.push_back(initialize(config));

    const auto geom = make_geometry(config.geometry);
    const CurveStepParams curve_p = config.curve_params();
    const FieldStepParams field_p = config.field_params();
    const double dt = config.dt();

    SimState current = traj.states.front();
    for (long step = 1; step <= n_steps; ++step) {
        SimState next;
        next.step = step;
        try {
            if (config.scheme == SchemeKind::Newton) {
                auto [curve, report] = newton_step(current.curve, current.field, *geom, curve_p);
                next.curve = std::move(curve);
                traj.reports.push_back(report);
            } else {
                next.curve = linear_scheme_step(current.curve, current.field, *geom, curve_p);
            }
            next.curve.time = static_cast<double>(step) * dt;
            next.field = field_step(current.curve, next.curve, current.field, field_p);
            next.field.time = next.curve.time;
        } catch (const Error& err) {
            traj.failure = StepFailure{step, err.what()};
            break;
        }
        current = next;
        if (step % config.snapshot_stride == 0 || step == n_steps) {
            traj.states.push_back(current);
        }
    }
    return traj;
}

} // namespace csflow
