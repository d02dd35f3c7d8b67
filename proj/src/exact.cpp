#include "csflow/exact.hpp"

#include <cmath>
#include <random>

#include "csflow/boundary.hpp"
#include "csflow/errors.hpp"

namespace csflow {

ExampleId parse_example(const std::string& name) {
    if (name == "semicircle") {
        return ExampleId::Semicircle;
    }
    if (name == "diameter") {
        return ExampleId::Diameter;
    }
    if (name == "coupled") {
        return ExampleId::Coupled;
    }
    throw ConfigInvalid("unknown example \"" + name +
                        "\" (expected semicircle, diameter or coupled)");
}

std::string example_name(ExampleId id) {
    switch (id) {
    case ExampleId::Semicircle:
        return "semicircle";
    case ExampleId::Diameter:
        return "diameter";
    case ExampleId::Coupled:
        return "coupled";
    }
    return "?";
}

namespace {

// shrinking semicircle, radius sqrt(1 - 2t), meeting y = 0 orthogonally
Vec2 semicircle_x(double rho, double t) {
    const double r = std::sqrt(1.0 - 2.0 * t);
    return {r * std::cos(M_PI * rho), r * std::sin(M_PI * rho)};
}

Vec2 semicircle_x_rho(double rho, double t) {
    const double r = std::sqrt(1.0 - 2.0 * t);
    return {-M_PI * r * std::sin(M_PI * rho), M_PI * r * std::cos(M_PI * rho)};
}

// straight line spanning a rotating diameter of the unit disc
Vec2 diameter_x(double rho, double t) {
    const double a = 1.0 - 2.0 * t;
    const double scale = 2.0 * (rho - 0.5) / std::sqrt(a * a + 1.0);
    return {scale * a, scale};
}

Vec2 diameter_x_rho(double rho, double t) {
    (void)rho;
    const double a = 1.0 - 2.0 * t;
    const double scale = 2.0 / std::sqrt(a * a + 1.0);
    return {scale * a, scale};
}

// shrinking parabola on the rotating diameter
double parabola_w(double rho, double t) { return (1.0 - t) * rho * (rho - 1.0); }

double parabola_w_rho(double rho, double t) { return (1.0 - t) * (2.0 * rho - 1.0); }

} // namespace

const ExactSolution& exact_catalog(ExampleId id) {
    static const ExactSolution semicircle = [] {
        ExactSolution ex;
        ex.id = ExampleId::Semicircle;
        ex.geometry = "half-plane";
        ex.final_time = 0.4;
        ex.f_name = "none";
        ex.g_name = "none";
        ex.initial = "semicircle";
        ex.x = semicircle_x;
        ex.x_rho = semicircle_x_rho;
        return ex;
    }();
    static const ExactSolution diameter = [] {
        ExactSolution ex;
        ex.id = ExampleId::Diameter;
        ex.geometry = "unit-disc";
        ex.final_time = 0.5;
        ex.f_name = "example2";
        ex.g_name = "none";
        ex.initial = "diameter";
        ex.x = diameter_x;
        ex.x_rho = diameter_x_rho;
        return ex;
    }();
    static const ExactSolution coupled = [] {
        ExactSolution ex;
        ex.id = ExampleId::Coupled;
        ex.geometry = "unit-disc";
        ex.final_time = 0.5;
        ex.f_name = "example3-f";
        ex.g_name = "example3-g";
        ex.initial = "diameter";
        ex.w0_name = "example3";
        ex.has_field = true;
        ex.x = diameter_x;
        ex.x_rho = diameter_x_rho;
        ex.w = parabola_w;
        ex.w_rho = parabola_w_rho;
        return ex;
    }();
    switch (id) {
    case ExampleId::Semicircle:
        return semicircle;
    case ExampleId::Diameter:
        return diameter;
    case ExampleId::Coupled:
        return coupled;
    }
    throw ConfigInvalid("unknown example id");
}

ExactSelfCheck exact_self_check(const ExactSolution& exact, int sample_count,
                                unsigned seed) {
    const auto geom = make_geometry(exact.geometry);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    ExactSelfCheck check;
    const double t_max = 0.98 * exact.final_time;
    for (int k = 0; k < sample_count; ++k) {
        const double t = unit(rng) * t_max;
        for (double rho_end : {0.0, 1.0}) {
            check.max_endpoint_violation =
                std::max(check.max_endpoint_violation,
                         std::abs(geom->value(exact.x(rho_end, t))));
        }
        const double rho = 0.02 + 0.96 * unit(rng);
        const double step = 1e-6;
        const Vec2 fd = (exact.x(rho + step, t) - exact.x(rho - step, t)) / (2.0 * step);
        const Vec2 diff = fd - exact.x_rho(rho, t);
        check.max_derivative_mismatch =
            std::max(check.max_derivative_mismatch,
                     std::max(std::abs(diff.x), std::abs(diff.y)));
        if (exact.has_field) {
            const double fd_w = (exact.w(rho + step, t) - exact.w(rho - step, t)) / (2.0 * step);
            check.max_derivative_mismatch =
                std::max(check.max_derivative_mismatch, std::abs(fd_w - exact.w_rho(rho, t)));
        }
    }
    return check;
}

} // namespace csflow
