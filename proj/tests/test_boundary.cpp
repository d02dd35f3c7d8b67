#include <doctest.h>

#include <cmath>
#include <limits>

#include "csflow/boundary.hpp"
#include "csflow/errors.hpp"
#include "support/oracles.hpp"

using namespace csflow;

TEST_CASE("half plane derivative bundle") {
    HalfPlane geom;
    const auto bd = geom.eval_all({3.0, 2.0});
    CHECK(bd.value == 2.0);
    CHECK(bd.grad.x == 0.0);
    CHECK(bd.grad.y == 1.0);
    CHECK(bd.grad_perp.x == -1.0);
    CHECK(bd.grad_perp.y == 0.0);
    CHECK(bd.d2perp.a00 == 0.0);
    CHECK(bd.d2perp.a01 == 0.0);
    CHECK(bd.d2perp.a10 == 0.0);
    CHECK(bd.d2perp.a11 == 0.0);
}

TEST_CASE("unit disc derivative bundle") {
    UnitDisc geom;
    SUBCASE("on the circle") {
        const auto bd = geom.eval_all({1.0, 0.0});
        CHECK(bd.value == 0.0);
        CHECK(bd.grad.x == 1.0);
        CHECK(bd.grad.y == 0.0);
        CHECK(bd.grad_perp.x == 0.0);
        CHECK(bd.grad_perp.y == 1.0);
        CHECK(bd.d2perp.a00 == 0.0);
        CHECK(bd.d2perp.a01 == -1.0);
        CHECK(bd.d2perp.a10 == 1.0);
        CHECK(bd.d2perp.a11 == 0.0);
    }
    SUBCASE("at the centre the gradient vanishes") {
        const auto bd = geom.eval_all({0.0, 0.0});
        CHECK(bd.value == doctest::Approx(-0.5));
        CHECK(bd.grad.x == 0.0);
        CHECK(bd.grad.y == 0.0);
    }
}

TEST_CASE("grad_perp is orthogonal to grad by construction") {
    UnitDisc geom;
    for (int k = 0; k < 20; ++k) {
        const Vec2 p{oracles::uniform(-2.0, 2.0), oracles::uniform(-2.0, 2.0)};
        CHECK(geom.gradient_perp(p).dot(geom.gradient(p)) == 0.0);
    }
}

TEST_CASE("unit gradient on the zero level set") {
    CHECK(max_unit_gradient_deviation(HalfPlane{}) <= 1e-12);
    CHECK(max_unit_gradient_deviation(UnitDisc{}) <= 1e-12);
}

TEST_CASE("d2perp matches the directional derivative of grad_perp") {
    const double step = 1e-6;
    for (const auto geom_name : {"half-plane", "unit-disc"}) {
        const auto geom = make_geometry(geom_name);
        for (int k = 0; k < 25; ++k) {
            const Vec2 p{oracles::uniform(-1.5, 1.5), oracles::uniform(-1.5, 1.5)};
            const Vec2 dir{oracles::uniform(-1.0, 1.0), oracles::uniform(-1.0, 1.0)};
            const Vec2 plus = geom->gradient_perp(p + step * dir);
            const Vec2 minus = geom->gradient_perp(p - step * dir);
            const Vec2 fd = (plus - minus) / (2.0 * step);
            const Vec2 analytic = geom->d2perp(p) * dir;
            CHECK(std::abs(fd.x - analytic.x) <= 2e-6);
            CHECK(std::abs(fd.y - analytic.y) <= 2e-6);
        }
    }
}

TEST_CASE("geometry factory") {
    CHECK(make_geometry("half-plane")->name() == "half-plane");
    CHECK(make_geometry("unit-disc")->name() == "unit-disc");
    CHECK_THROWS_AS(make_geometry("moebius"), ConfigInvalid);
}

TEST_CASE("eval_all rejects non finite points") {
    UnitDisc geom;
    CHECK_THROWS_AS(geom.eval_all({std::numeric_limits<double>::quiet_NaN(), 0.0}), NonFinite);
    CHECK_THROWS_AS(geom.eval_all({0.0, std::numeric_limits<double>::infinity()}), NonFinite);
}
