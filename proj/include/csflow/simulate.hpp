#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csflow/evolver.hpp"
#include "csflow/surface_pde.hpp"

namespace csflow {

// How the uniform time step is derived from the mesh width.
struct DtRule {
    enum class Kind { H2, CH, ExplicitN };
    Kind kind = Kind::H2;
    double c = 1.0; // for CH: dt = c * h
    long n = 0;     // for ExplicitN

    static DtRule h2() { return {}; }
    static DtRule ch(double c);
    static DtRule explicit_n(long n);
    // "h2" | "ch:<c>" | "n:<N>"
    static DtRule parse(const std::string& text);
    std::string describe() const;
};

struct SimConfig {
    std::string geometry = "unit-disc";
    double alpha = 1.0;
    int element_count = 10; // J, must be >= 2
    double final_time = 0.0;
    DtRule dt_rule;
    SchemeKind scheme = SchemeKind::Newton;
    std::string f_name = "none";
    std::string g_name = "none";
    ForcingTime f_time = ForcingTime::PrevTime;
    SourceTime g_time = SourceTime::PrevTime;
    double w_b = 0.0;
    std::string initial = "semicircle"; // "semicircle" | "diameter" | "custom"
    std::vector<Vec2> custom_nodes;     // used when initial == "custom"
    std::string w0_name = "zero";       // "zero" | "example3"
    double newton_tol = 1e-12;
    int newton_max_iter = 25;
    int snapshot_stride = 1;

    // derived quantities; both validate the configuration
    long step_count() const; // N = T / dt, must be a positive integer
    double dt() const;       // T / N

    void validate() const;
    CurveStepParams curve_params() const;
    FieldStepParams field_params() const;
};

struct SimState {
    long step = 0;
    CurveState curve;
    FieldState field;
};

struct StepFailure {
    long step = 0;
    std::string what;
};

struct Trajectory {
    std::vector<SimState> states;      // per stride; first entry is the initial data
    std::vector<NewtonReport> reports; // one per executed step (Newton scheme)
    std::optional<StepFailure> failure;

    const SimState& terminal() const { return states.back(); }
};

// Nodal interpolants of the initial data; verifies both endpoints lie on
// the boundary to 1e-12. Throws ConfigInvalid / ConstraintViolatedAtStart.
SimState initialize(const SimConfig& config);

// One coupled step: curve first (with the lagged field), then the field on
// the updated curve. Solver errors are rethrown with the step index attached.
SimState advance(const SimState& state, const SimConfig& config);

// Full time loop; on solver failure the partial trajectory is returned with
// the failure recorded instead of throwing.
Trajectory run(const SimConfig& config);

// Forcing registries (registered by name to keep configs declarative):
//   f: "none", "example2", "example3-f"
//   g: "none", "example3-g"
//   initial curves: "semicircle", "diameter"
//   initial fields: "zero", "example3"
ForcingF lookup_forcing(const std::string& name);
SourceG lookup_source(const std::string& name);
Vec2 initial_curve_point(const std::string& name, double rho);
double initial_field_value(const std::string& name, double rho);

} // namespace csflow
