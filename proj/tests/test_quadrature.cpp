#include "convdiff/quadrature.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace convdiff;

TEST_CASE("gauss rule exactness on monomials") {
    for (int npts : {1, 2, 3, 5, 8, 12}) {
        const auto rule = QuadratureRule::gauss_legendre(npts);
        double wsum = 0.0;
        for (double w : rule.weights) {
            CHECK(w > 0.0);
            wsum += w;
        }
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        for (double p : rule.points) CHECK(std::abs(p) < 1.0);

        for (int deg = 0; deg <= 2 * npts - 1; ++deg) {
            double num = 0.0;
            for (std::size_t k = 0; k < rule.points.size(); ++k)
                num += rule.weights[k] * std::pow(rule.points[k], deg);
            const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
            CHECK(num == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
        }
    }
}

TEST_CASE("integrate basics") {
    const auto policy = CompositePolicy::plain();
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, policy) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const Mesh mesh(8);
    const double h = mesh.h();
    CHECK(integrate([&](double x) { return bubble(mesh, 1, x); }, 0.0, h, policy) ==
          doctest::Approx(2.0 * h / 3.0).epsilon(1e-14));

    CHECK_THROWS(integrate([](double x) { return 1.0 / (x - 0.5) * 0.0 + 1.0 / 0.0; }, 0.0, 1.0, policy));
    CHECK_THROWS(integrate([](double) { return 1.0; }, 1.0, 0.0, policy));
}

namespace {

// Abscissae near x = 1 carry an absolute rounding of ~ulp(1), which perturbs
// e^{(x-1)/eps} by ~ulp(1)/eps relatively; below eps ~ 1e-9 that floor sits
// above 1e-10 no matter how the cells are placed.
double layer_accuracy_floor(double eps) {
    return std::max(1e-10, 0.01 * std::numeric_limits<double>::epsilon() / eps);
}

} // namespace

TEST_CASE("layer splitting resolves the exponential boundary layer") {
    for (double eps : {1e-3, 1e-4, 1e-6, 1e-8, 1e-10}) {
        const auto policy = CompositePolicy::layered(eps);
        const auto g = [eps](double x) { return std::exp((x - 1.0) / eps); };
        const double got = integrate(g, 0.0, 1.0, policy);
        const double exact = eps * (1.0 - std::exp(-1.0 / eps));
        CHECK(std::abs(got - exact) / exact < layer_accuracy_floor(eps));
    }
}

TEST_CASE("layer splitting over the last element") {
    const double h = 1.0 / 64.0;
    for (double eps : {1e-4, 1e-6, 1e-8, 1e-10}) {
        const auto policy = CompositePolicy::layered(eps);
        const auto g = [eps](double x) { return std::exp((x - 1.0) / eps); };
        const double got = integrate(g, 1.0 - h, 1.0, policy);
        const double exact = eps * -std::expm1(-h / eps);
        CHECK(std::abs(got - exact) / exact < layer_accuracy_floor(eps));
    }
}

TEST_CASE("load_p1") {
    const auto policy = CompositePolicy::plain();

    const Mesh mesh(8);
    for (double v : load_p1(Forcing::one(), mesh, policy))
        CHECK(v == doctest::Approx(mesh.h()).epsilon(1e-14));

    const Mesh m4(4);
    const auto lin = load_p1(Forcing::two_x(), m4, policy);
    for (int i = 1; i < 4; ++i)
        CHECK(lin[i - 1] == doctest::Approx(2.0 * m4.node(i) * m4.h()).epsilon(1e-14));

    const Mesh m101(101);
    const auto f = Forcing::cos_seven_pi_half();
    const auto got = load_p1(f, m101, policy);
    for (int i = 1; i < m101.n(); ++i) {
        const double want = oracles::refined_integral(
            [&](double x) { return f(x) * hat(m101, i, x); }, m101.node(i - 1), m101.node(i), 64) +
            oracles::refined_integral(
                [&](double x) { return f(x) * hat(m101, i, x); }, m101.node(i), m101.node(i + 1), 64);
        CHECK(got[i - 1] == doctest::Approx(want).epsilon(1e-12).scale(1e-2));
    }
}

TEST_CASE("load_bubble") {
    const auto policy = CompositePolicy::plain();
    const Mesh mesh(8);

    for (double v : load_bubble(Forcing::one(), mesh, policy))
        CHECK(v == doctest::Approx(2.0 * mesh.h() / 3.0).epsilon(1e-14));

    for (double v : load_bubble(Forcing::custom([](double) { return 0.0; }), mesh, policy))
        CHECK(v == 0.0);

    const auto f = Forcing::two_x();
    const auto got = load_bubble(f, mesh, policy);
    for (int i = 1; i <= mesh.n(); ++i) {
        const double want = oracles::refined_integral(
            [&](double x) { return f(x) * bubble(mesh, i, x); }, mesh.node(i - 1), mesh.node(i), 64);
        CHECK(got[i - 1] == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("load_p1_deriv") {
    const auto policy = CompositePolicy::plain();
    const Mesh mesh(8);

    for (double v : load_p1_deriv(Forcing::one(), mesh, policy))
        CHECK(std::abs(v) < 1e-15);

    for (double v : load_p1_deriv(Forcing::two_x(), mesh, policy))
        CHECK(v == doctest::Approx(-2.0 * mesh.h()).epsilon(1e-13));

    const Mesh m64(64);
    const auto f = Forcing::cos_seven_pi_half();
    const auto got = load_p1_deriv(f, m64, policy);
    for (int i = 1; i < m64.n(); ++i) {
        const double want = oracles::refined_integral(
            [&](double x) { return f(x) * hat_deriv(m64, i, x); }, m64.node(i - 1), m64.node(i), 128) +
            oracles::refined_integral(
                [&](double x) { return f(x) * hat_deriv(m64, i, x); }, m64.node(i), m64.node(i + 1), 128);
        CHECK(got[i - 1] == doctest::Approx(want).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("PG and SD load differences vanish for f = 1") {
    const auto policy = CompositePolicy::plain();
    const Mesh mesh(16);
    const auto fb = load_bubble(Forcing::one(), mesh, policy);
    for (int i = 1; i < mesh.n(); ++i)
        CHECK(fb[i - 1] - fb[i] == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}
