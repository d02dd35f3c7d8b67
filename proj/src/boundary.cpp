#include "csflow/boundary.hpp"

#include <cmath>

#include "csflow/errors.hpp"

namespace csflow {

Mat2 BoundaryGeometry::d2perp(Vec2 p) const {
    const Mat2 hess = hessian(p);
    return {-hess.a01, -hess.a11, hess.a00, hess.a01};
}

BoundaryDerivatives BoundaryGeometry::eval_all(Vec2 p) const {
    if (!p.finite()) {
        throw NonFinite("boundary evaluation at non-finite point");
    }
    BoundaryDerivatives out;
    out.value = value(p);
    out.grad = gradient(p);
    out.grad_perp = out.grad.perp();
    out.hess = hessian(p);
    out.d2perp = {-out.hess.a01, -out.hess.a11, out.hess.a00, out.hess.a01};
    if (!std::isfinite(out.value) || !out.grad.finite() || !out.hess.finite()) {
        throw NonFinite("boundary derivatives are not finite at (" +
                        std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
    }
    return out;
}

std::shared_ptr<const BoundaryGeometry> make_geometry(const std::string& name) {
    if (name == "half-plane") {
        return std::make_shared<HalfPlane>();
    }
    if (name == "unit-disc") {
        return std::make_shared<UnitDisc>();
    }
    throw ConfigInvalid("unknown geometry \"" + name +
                        "\" (expected \"half-plane\" or \"unit-disc\")");
}

double max_unit_gradient_deviation(const BoundaryGeometry& geom, int sample_count) {
    // Probe points on a ring of radius 2, projected onto F = 0 along grad F.
    double worst = 0.0;
    for (int k = 0; k < sample_count; ++k) {
        const double angle = 2.0 * M_PI * k / sample_count;
        Vec2 p{2.0 * std::cos(angle), 2.0 * std::sin(angle)};
        bool on_boundary = false;
        for (int it = 0; it < 50; ++it) {
            const double f = geom.value(p);
            const Vec2 g = geom.gradient(p);
            const double gg = g.norm_sq();
            if (gg < 1e-14) {
                break; // stationary point of F, cannot project from here
            }
            p -= g * (f / gg);
            if (std::abs(geom.value(p)) < 1e-13) {
                on_boundary = true;
                break;
            }
        }
        if (!on_boundary) {
            continue;
        }
        worst = std::max(worst, std::abs(geom.gradient(p).norm() - 1.0));
    }
    return worst;
}

} // namespace csflow
