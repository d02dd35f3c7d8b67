#pragma once

// Test-only oracles, kept independent of the library's solution paths:
// dense linear algebra, Gauss quadrature, a weak-form residual assembled
// element by element from the variational statement, a finite difference
// Jacobian, a generic dense Newton solver and a dense field-step assembly.

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "csflow/boundary.hpp"
#include "csflow/evolver.hpp"
#include "csflow/mesh.hpp"
#include "csflow/surface_pde.hpp"

namespace oracles {

using csflow::BoundaryGeometry;
using csflow::CurveState;
using csflow::CurveStepParams;
using csflow::FieldState;
using csflow::Vec2;

using Matrix = std::vector<std::vector<double>>;

// dense LU with partial pivoting
inline std::vector<double> dense_solve(Matrix a, std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) {
                pivot = r;
            }
        }
        if (std::abs(a[pivot][col]) < 1e-300) {
            throw std::runtime_error("dense_solve: singular matrix");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double sum = b[i];
        for (std::size_t c = i + 1; c < n; ++c) {
            sum -= a[i][c] * x[c];
        }
        x[i] = sum / a[i][i];
    }
    return x;
}

// composite 5 point Gauss-Legendre quadrature on [a, b]
inline double gauss_integrate(const std::function<double(double)>& f, double a, double b,
                              int panels = 1) {
    static const double xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
    static const double ws[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};
    double total = 0.0;
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * width;
        for (int k = 0; k < 5; ++k) {
            total += ws[k] * f(mid + 0.5 * width * xs[k]);
        }
    }
    return total * 0.5 * width;
}

// Residual of the discrete curve equation tested against an arbitrary
// piecewise linear vector test function, assembled element by element from
// the variational form (mass and forcing through the interpolated product
// rule, stiffness exactly, boundary term from the one-sided derivatives),
// then scaled by h. Mirrors the weak statement, not the nodal closed forms.
inline double weak_form_scalar_residual(const CurveState& prev, const FieldState& prev_field,
                                        const CurveState& cand, const BoundaryGeometry& geom,
                                        const CurveStepParams& params,
                                        const std::vector<Vec2>& test) {
    const int n_elem = prev.grid.element_count;
    const double h = prev.grid.h;
    const double dt = params.dt;
    const double t_f = (params.f_time == csflow::ForcingTime::PrevTime) ? prev.time
                                                                        : prev.time + dt;

    double total = 0.0;
    for (int e = 0; e < n_elem; ++e) {
        const Vec2 chord_prev = prev.nodes[e + 1] - prev.nodes[e];
        const double q = chord_prev.norm_sq();
        const Vec2 tangent = chord_prev / chord_prev.norm();
        const Vec2 normal = tangent.perp();
        const csflow::Mat2 mass_op =
            params.alpha * csflow::Mat2::identity() +
            (1.0 - params.alpha) * csflow::Mat2::outer(normal, normal);

        // (|X_rho^{n-1}|^2 [mass_op D_t X], xi)^h over this element
        for (int k = 0; k < 2; ++k) {
            const int node = e + k;
            const Vec2 dtx = (cand.nodes[node] - prev.nodes[node]) / dt;
            total += 0.5 * h * (q / (h * h)) * (mass_op * dtx).dot(test[node]);
        }
        // (X_rho^n, xi_rho) exactly
        const Vec2 x_rho = (cand.nodes[e + 1] - cand.nodes[e]) / h;
        const Vec2 xi_rho = (test[e + 1] - test[e]) / h;
        total += h * x_rho.dot(xi_rho);
        // forcing (|X_rho^{n-1}|^2 f N^{n-1}, xi)^h
        if (params.forcing) {
            for (int k = 0; k < 2; ++k) {
                const int node = e + k;
                const double f_val = params.forcing(prev.grid.node(node), t_f,
                                                    prev_field.values[node]);
                total -= 0.5 * h * (q / (h * h)) * f_val * normal.dot(test[node]);
            }
        }
    }
    // boundary term [ <X_rho . grad F> <xi . grad F> ]_0^1 with one sided X_rho
    const Vec2 grad_start = geom.gradient(cand.nodes.front());
    const Vec2 grad_end = geom.gradient(cand.nodes.back());
    const Vec2 x_rho_start = (cand.nodes[1] - cand.nodes[0]) / h;
    const Vec2 x_rho_end = (cand.nodes[n_elem] - cand.nodes[n_elem - 1]) / h;
    total -= x_rho_end.dot(grad_end) * test[n_elem].dot(grad_end) -
             x_rho_start.dot(grad_start) * test[0].dot(grad_start);
    return h * total;
}

// full residual via the weak form: interior hats, grad_perp tests and the
// endpoint constraints
inline std::vector<Vec2> weak_form_residual(const CurveState& prev,
                                            const FieldState& prev_field,
                                            const CurveState& cand,
                                            const BoundaryGeometry& geom,
                                            const CurveStepParams& params) {
    const int last = prev.grid.element_count;
    std::vector<Vec2> residual(last + 1);
    std::vector<Vec2> test(last + 1);
    for (int j = 1; j < last; ++j) {
        test.assign(last + 1, Vec2{});
        test[j] = {1.0, 0.0};
        const double rx = weak_form_scalar_residual(prev, prev_field, cand, geom, params, test);
        test[j] = {0.0, 1.0};
        const double ry = weak_form_scalar_residual(prev, prev_field, cand, geom, params, test);
        residual[j] = {rx, ry};
    }
    for (int node : {0, last}) {
        test.assign(last + 1, Vec2{});
        test[node] = geom.gradient_perp(cand.nodes[node]);
        const double tan = weak_form_scalar_residual(prev, prev_field, cand, geom, params, test);
        residual[node] = {tan, geom.value(cand.nodes[node])};
    }
    return residual;
}

inline std::vector<double> flatten(const std::vector<Vec2>& v) {
    std::vector<double> out;
    out.reserve(2 * v.size());
    for (const Vec2& p : v) {
        out.push_back(p.x);
        out.push_back(p.y);
    }
    return out;
}

// central finite difference Jacobian of the residual w.r.t. the candidate
inline Matrix fd_jacobian(const CurveState& prev, const FieldState& prev_field,
                          const CurveState& cand, const BoundaryGeometry& geom,
                          const CurveStepParams& params, double step = 1e-7) {
    const std::size_t n = 2 * cand.nodes.size();
    Matrix jac(n, std::vector<double>(n, 0.0));
    CurveState probe = cand;
    for (std::size_t col = 0; col < n; ++col) {
        double* entry = (col % 2 == 0) ? &probe.nodes[col / 2].x : &probe.nodes[col / 2].y;
        const double saved = *entry;
        *entry = saved + step;
        const auto plus = flatten(assemble_residual(prev, prev_field, probe, geom, params));
        *entry = saved - step;
        const auto minus = flatten(assemble_residual(prev, prev_field, probe, geom, params));
        *entry = saved;
        for (std::size_t r = 0; r < n; ++r) {
            jac[r][col] = (plus[r] - minus[r]) / (2.0 * step);
        }
    }
    return jac;
}

// generic dense Newton solver on the same residual, finite difference
// Jacobian and dense LU; independent of the block elimination path
inline CurveState dense_newton_solve(const CurveState& prev, const FieldState& prev_field,
                                     const BoundaryGeometry& geom,
                                     const CurveStepParams& params,
                                     int max_iter = 50, double tol = 1e-13) {
    CurveState cand = prev;
    cand.time = prev.time + params.dt;
    for (int iter = 0; iter < max_iter; ++iter) {
        const auto residual = flatten(assemble_residual(prev, prev_field, cand, geom, params));
        double worst = 0.0;
        for (double r : residual) {
            worst = std::max(worst, std::abs(r));
        }
        if (worst <= tol) {
            return cand;
        }
        const Matrix jac = fd_jacobian(prev, prev_field, cand, geom, params);
        std::vector<double> rhs(residual.size());
        for (std::size_t i = 0; i < residual.size(); ++i) {
            rhs[i] = -residual[i];
        }
        const auto delta = dense_solve(jac, rhs);
        for (std::size_t j = 0; j < cand.nodes.size(); ++j) {
            cand.nodes[j].x += delta[2 * j];
            cand.nodes[j].y += delta[2 * j + 1];
        }
    }
    throw std::runtime_error("dense_newton_solve: no convergence");
}

// dense transcription of the field step: elementwise assembly of the weak
// form of the reaction-diffusion scheme, Dirichlet rows eliminated by
// identity rows, solved densely
inline FieldState dense_field_step(const CurveState& prev_curve, const CurveState& curr_curve,
                                   const FieldState& prev_field,
                                   const csflow::FieldStepParams& params) {
    const int last = curr_curve.grid.element_count;
    const int n = last + 1;
    const double h = curr_curve.grid.h;
    const double dt = params.dt;
    const double t_source = (params.g_time == csflow::SourceTime::PrevTime)
                                ? prev_curve.time
                                : curr_curve.time;

    Matrix a(n, std::vector<double>(n, 0.0));
    std::vector<double> rhs(n, 0.0);

    for (int e = 0; e < last; ++e) {
        const double len_curr = (curr_curve.nodes[e + 1] - curr_curve.nodes[e]).norm();
        const double len_prev = (prev_curve.nodes[e + 1] - prev_curve.nodes[e]).norm();
        const Vec2 tangent = (curr_curve.nodes[e + 1] - curr_curve.nodes[e]) / len_curr;
        const Vec2 normal = tangent.perp();
        for (int k = 0; k < 2; ++k) {
            const int node = e + k;
            const Vec2 dtx = (curr_curve.nodes[node] - prev_curve.nodes[node]) / dt;
            const double psi = dtx.dot(tangent);
            const double v = dtx.dot(normal);
            // D_t[(|X_rho| W, eta)^h]: lumped mass at both time levels
            a[node][node] += 0.5 * len_curr / dt;
            rhs[node] += 0.5 * len_prev * prev_field.values[node] / dt;
            // (Psi W, eta_rho)^h: eta_rho = +-1/h on the element
            const double sign_a = -1.0; // contribution to row e from this node
            const double sign_b = 1.0;  // contribution to row e+1
            a[e][node] += sign_a * 0.5 * psi;
            a[e + 1][node] += sign_b * 0.5 * psi;
            // source (|X_rho| g, eta)^h with lagged w
            if (params.source) {
                rhs[node] += 0.5 * len_curr *
                             params.source(curr_curve.grid.node(node), t_source, v,
                                           prev_field.values[node]);
            }
        }
        // diffusion (W_rho / |X_rho|, eta_rho) exactly: h * (dW/h)(deta/h) / (L/h)
        const double k_diff = 1.0 / len_curr;
        a[e][e] += k_diff;
        a[e][e + 1] -= k_diff;
        a[e + 1][e + 1] += k_diff;
        a[e + 1][e] -= k_diff;
        (void)h;
    }
    // Dirichlet rows
    for (int node : {0, last}) {
        for (int c = 0; c < n; ++c) {
            a[node][c] = 0.0;
        }
        a[node][node] = 1.0;
        rhs[node] = params.w_b;
    }
    const auto solution = dense_solve(a, rhs);
    FieldState next;
    next.grid = prev_field.grid;
    next.time = curr_curve.time;
    next.values = solution;
    return next;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(987654321u);
    return gen;
}

inline double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng());
}

} // namespace oracles
