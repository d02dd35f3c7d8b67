#pragma once

#include <string>

#include "csflow/vec2.hpp"

namespace csflow {

enum class ExampleId { Semicircle, Diameter, Coupled };

ExampleId parse_example(const std::string& name);
std::string example_name(ExampleId id);

// Closed-form solution of one benchmark problem, together with the
// configuration (geometry, forcings, horizon) that produces it.
struct ExactSolution {
    ExampleId id;
    std::string geometry;
    double final_time = 0.0;
    std::string f_name = "none";
    std::string g_name = "none";
    std::string initial;      // initial curve registry key
    std::string w0_name = "zero";
    double w_b = 0.0;
    bool has_field = false;

    Vec2 (*x)(double rho, double t) = nullptr;
    Vec2 (*x_rho)(double rho, double t) = nullptr;
    double (*w)(double rho, double t) = nullptr;     // null unless has_field
    double (*w_rho)(double rho, double t) = nullptr; // null unless has_field
};

const ExactSolution& exact_catalog(ExampleId id);

// Self-consistency of one catalog entry: endpoints stay on the boundary
// and the stated derivatives match central finite differences. Returns the
// worst deviation found (used by the verification tests).
struct ExactSelfCheck {
    double max_endpoint_violation = 0.0;
    double max_derivative_mismatch = 0.0;
};
ExactSelfCheck exact_self_check(const ExactSolution& exact, int sample_count = 100,
                                unsigned seed = 12345);

} // namespace csflow
