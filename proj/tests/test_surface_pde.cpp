#include <doctest.h>

#include <cmath>

#include "csflow/errors.hpp"
#include "csflow/exact.hpp"
#include "csflow/simulate.hpp"
#include "csflow/surface_pde.hpp"
#include "support/oracles.hpp"

using namespace csflow;

namespace {

CurveState horizontal_segment(int n_elem, double y = 0.0) {
    CurveState curve;
    curve.grid = ParameterGrid::uniform(n_elem);
    curve.nodes.resize(n_elem + 1);
    for (int j = 0; j <= n_elem; ++j) {
        curve.nodes[j] = {curve.grid.node(j), y};
    }
    return curve;
}

FieldState make_field(int n_elem, const std::vector<double>& values, double time = 0.0) {
    FieldState field;
    field.grid = ParameterGrid::uniform(n_elem);
    field.values = values;
    field.time = time;
    return field;
}

} // namespace

TEST_CASE("velocities vanish for a static curve") {
    const CurveState curve = horizontal_segment(6);
    const auto vel = element_velocities(curve, curve, 0.1);
    for (int e = 0; e < 6; ++e) {
        CHECK(vel.tangential_left[e] == 0.0);
        CHECK(vel.tangential_right[e] == 0.0);
        CHECK(vel.normal_left[e] == 0.0);
        CHECK(vel.normal_right[e] == 0.0);
    }
}

TEST_CASE("rigid vertical translation is purely normal motion") {
    const double dt = 0.05;
    const double speed = 3.0;
    const CurveState prev = horizontal_segment(5, 0.0);
    CurveState curr = horizontal_segment(5, speed * dt);
    curr.time = dt;
    const auto vel = element_velocities(prev, curr, dt);
    for (int e = 0; e < 5; ++e) {
        CHECK(vel.tangential_left[e] == doctest::Approx(0.0));
        CHECK(vel.tangential_right[e] == doctest::Approx(0.0));
        CHECK(vel.normal_left[e] == doctest::Approx(speed));
        CHECK(vel.normal_right[e] == doctest::Approx(speed));
    }
}

TEST_CASE("velocities of the rotating diameter match the closed form") {
    // nodes from the exact solution at consecutive time levels; the frame
    // of the straight line is spatially constant, so tangential and normal
    // components follow directly from the difference quotient
    const int n_elem = 10;
    const double dt = 0.01;
    const double t_prev = 0.2;
    const double t_curr = t_prev + dt;
    const ExactSolution& ex = exact_catalog(ExampleId::Diameter);

    CurveState prev, curr;
    prev.grid = curr.grid = ParameterGrid::uniform(n_elem);
    prev.nodes.resize(n_elem + 1);
    curr.nodes.resize(n_elem + 1);
    for (int j = 0; j <= n_elem; ++j) {
        prev.nodes[j] = ex.x(prev.grid.node(j), t_prev);
        curr.nodes[j] = ex.x(curr.grid.node(j), t_curr);
    }
    prev.time = t_prev;
    curr.time = t_curr;

    const double a = 1.0 - 2.0 * t_curr;
    const double scale = std::sqrt(a * a + 1.0);
    const Vec2 tangent{a / scale, 1.0 / scale};
    const Vec2 normal{-1.0 / scale, a / scale};

    const auto vel = element_velocities(prev, curr, dt);
    for (int e = 0; e < n_elem; ++e) {
        for (int k = 0; k < 2; ++k) {
            const int node = e + k;
            const Vec2 dtx = (curr.nodes[node] - prev.nodes[node]) / dt;
            const double psi = (k == 0) ? vel.tangential_left[e] : vel.tangential_right[e];
            const double v = (k == 0) ? vel.normal_left[e] : vel.normal_right[e];
            CHECK(std::abs(psi - dtx.dot(tangent)) <= 1e-13);
            CHECK(std::abs(v - dtx.dot(normal)) <= 1e-13);
        }
    }
}

TEST_CASE("frame decomposition recovers the squared velocity") {
    const int n_elem = 7;
    CurveState prev = horizontal_segment(n_elem);
    CurveState curr = prev;
    curr.time = 0.02;
    for (auto& p : curr.nodes) {
        p += Vec2{oracles::uniform(-0.01, 0.01), oracles::uniform(-0.01, 0.01)};
    }
    const auto vel = element_velocities(prev, curr, 0.02);
    for (int e = 0; e < n_elem; ++e) {
        for (int k = 0; k < 2; ++k) {
            const int node = e + k;
            const Vec2 dtx = (curr.nodes[node] - prev.nodes[node]) / 0.02;
            const double psi = (k == 0) ? vel.tangential_left[e] : vel.tangential_right[e];
            const double v = (k == 0) ? vel.normal_left[e] : vel.normal_right[e];
            CHECK(std::abs(psi * psi + v * v - dtx.norm_sq()) <= 1e-12);
        }
    }
}

TEST_CASE("zero data stays zero on a static line") {
    const int n_elem = 8;
    const CurveState curve = horizontal_segment(n_elem);
    FieldState field = make_field(n_elem, std::vector<double>(n_elem + 1, 0.0));
    FieldStepParams params;
    params.dt = 0.01;
    for (int n = 0; n < 5; ++n) {
        field = field_step(curve, curve, field, params);
        for (double v : field.values) {
            CHECK(v == 0.0);
        }
    }
}

TEST_CASE("implicit heat step obeys the discrete maximum principle") {
    const int n_elem = 8;
    const CurveState curve = horizontal_segment(n_elem);
    std::vector<double> hat(n_elem + 1, 0.0);
    hat[n_elem / 2] = 1.0;
    FieldState field = make_field(n_elem, hat);
    FieldStepParams params;
    params.dt = 0.004;
    double previous_max = 1.0;
    for (int n = 0; n < 20; ++n) {
        field = field_step(curve, curve, field, params);
        double current_max = 0.0;
        for (double v : field.values) {
            current_max = std::max(current_max, std::abs(v));
        }
        CHECK(current_max <= previous_max + 1e-14);
        previous_max = current_max;
        CHECK(field.values.front() == 0.0);
        CHECK(field.values.back() == 0.0);
    }
}

TEST_CASE("field step matches the dense weak form transcription") {
    const int n_elem = 8;
    CurveState prev = horizontal_segment(n_elem);
    for (auto& p : prev.nodes) {
        p += Vec2{oracles::uniform(-0.01, 0.01), oracles::uniform(-0.01, 0.01)};
    }
    CurveState curr = prev;
    curr.time = 0.01;
    for (auto& p : curr.nodes) {
        p += Vec2{oracles::uniform(-0.02, 0.02), oracles::uniform(-0.02, 0.02)};
    }
    std::vector<double> start(n_elem + 1);
    for (double& v : start) {
        v = oracles::uniform(-1.0, 1.0);
    }
    FieldState field = make_field(n_elem, start);

    FieldStepParams params;
    params.dt = 0.01;
    params.w_b = 0.25;
    params.source = [](double rho, double t, double v, double w) {
        return std::sin(3.0 * rho) + 0.5 * t - 0.2 * v * w;
    };

    const FieldState fast = field_step(prev, curr, field, params);
    const FieldState dense = oracles::dense_field_step(prev, curr, field, params);
    for (int j = 0; j <= n_elem; ++j) {
        CHECK(std::abs(fast.values[j] - dense.values[j]) <= 1e-12);
    }
    CHECK(fast.values.front() == params.w_b);
    CHECK(fast.values.back() == params.w_b);
}

TEST_CASE("field step validates its inputs") {
    const CurveState curve = horizontal_segment(4);
    const FieldState field = make_field(4, std::vector<double>(5, 0.0));
    FieldStepParams params;
    params.dt = 0.0;
    CHECK_THROWS_AS(field_step(curve, curve, field, params), ConfigInvalid);

    params.dt = 0.01;
    CurveState degenerate = curve;
    degenerate.nodes[1] = degenerate.nodes[2];
    CHECK_THROWS_AS(field_step(curve, degenerate, field, params), DegenerateElement);
}
