#pragma once

#include "csflow/evolver.hpp"
#include "csflow/exact.hpp"
#include "csflow/simulate.hpp"

namespace csflow {

// Error functionals of one run against the exact solution, following the
// conventions of the reference tables: E1/E2/E4/E5 are squared norms of
// interpolant-minus-discrete differences, E3 is the largest endpoint level
// set violation, and the functionals sample the time levels 0 .. N-1.
struct ErrorReport {
    double e1 = 0.0; // sup_n  || (interp(x) - X)_rho ||^2      (pw constant)
    double e2 = 0.0; // sum_n dt || D_t(interp(x) - X) ||^2     (pw linear)
    double e3 = 0.0; // sup_n max(|F(X_0)|, |F(X_J)|)
    double e4 = 0.0; // sup_n  || interp(w) - W ||^2            (pw linear)
    double e5 = 0.0; // sum_n dt || (interp(w) - W)_rho ||^2    (pw constant)
    bool has_field = false;
    int element_count = 0;
    long step_count = 0;
    double alpha = 0.0;
    SchemeKind scheme = SchemeKind::Newton;

    double value(int index) const; // index in 1..5
};

// Accumulates E1..E5 over a stride-1 trajectory. E4/E5 are produced only
// when the exact solution carries a field.
ErrorReport error_accumulate(const Trajectory& traj, const ExactSolution& exact);

// Experimental order of convergence between two refinement levels:
// log(e_prev / e_curr) / log(h_prev / h_curr). Throws ZeroError when an
// error vanishes exactly (the ratio is then reported as "exact").
double eoc(double h_prev, double e_prev, double h_curr, double e_curr);

} // namespace csflow
