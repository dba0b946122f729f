#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

#include "qbcool/dressed.hpp"

using namespace qbcool;

namespace {

model::SystemParams params_with(double omega_dd, double rabi) {
    model::SystemParams p;
    p.omega_dd = omega_dd;
    p.rabi = rabi;
    return p;
}

} // namespace

TEST_CASE("drive-off limit gives the symmetric/ground split") {
    const auto basis = model::build_dressed_basis(params_with(28.0, 0.0));
    CHECK(basis.lambda3 == doctest::Approx(28.0).epsilon(1e-15));
    CHECK(basis.lambda4 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(basis.a_bar == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-15));
    CHECK(basis.b_bar == 0.0);
    CHECK(basis.c_bar == 0.0);
    CHECK(basis.d_bar == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-15));
    CHECK(basis.g_eff == 0.0);
}

TEST_CASE("closed-form roots and coefficients at omega_dd=28, rabi=2.8") {
    const auto basis = model::build_dressed_basis(params_with(28.0, 2.8));
    CHECK(basis.lambda3 == doctest::Approx(29.0784614599766).epsilon(1e-12));
    CHECK(basis.lambda4 == doctest::Approx(-1.07846145997661).epsilon(1e-12));
    CHECK(basis.a_bar == doctest::Approx(0.694348019887228).epsilon(1e-12));
    CHECK(basis.b_bar == doctest::Approx(0.133719210582045).epsilon(1e-12));
    CHECK(basis.c_bar == doctest::Approx(-0.133719210582044).epsilon(1e-12));
    CHECK(basis.d_bar == doctest::Approx(0.694348019887228).epsilon(1e-12));
}

TEST_CASE("eigenvalues match an independent dense eigensolver") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> odd(1.0, 100.0);
    std::uniform_real_distribution<double> rabi(0.0, 20.0);
    for (int k = 0; k < 50; ++k) {
        const auto p = params_with(odd(rng), rabi(rng));
        const auto basis = model::build_dressed_basis(p);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(model::interaction_hamiltonian(p));
        Eigen::Vector4d ours;
        ours << basis.lambda1, basis.lambda2, basis.lambda3, basis.lambda4;
        std::sort(ours.data(), ours.data() + 4);
        for (int j = 0; j < 4; ++j) {
            CHECK(ours(j) == doctest::Approx(solver.eigenvalues()(j)).epsilon(1e-12).scale(p.omega_dd));
        }
    }
}

TEST_CASE("transform rows are orthonormal eigenvectors") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> odd(1.0, 100.0);
    std::uniform_real_distribution<double> rabi(0.0, 20.0);
    for (int k = 0; k < 200; ++k) {
        const auto p = params_with(odd(rng), rabi(rng));
        const auto basis = model::build_dressed_basis(p);

        const Eigen::Matrix4d gram = basis.transform * basis.transform.transpose();
        CHECK((gram - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-12);

        const Eigen::Matrix4d h = model::interaction_hamiltonian(p);
        const double lambdas[4] = {basis.lambda1, basis.lambda2, basis.lambda3, basis.lambda4};
        for (int j = 0; j < 4; ++j) {
            const Eigen::Vector4d v = basis.transform.row(j).transpose();
            CHECK((h * v - lambdas[j] * v).cwiseAbs().maxCoeff() < 1e-12 * p.omega_dd);
        }

        // Vieta relations of the quadratic in the symmetric sector
        CHECK(basis.lambda3 + basis.lambda4
              == doctest::Approx(p.omega_dd).epsilon(1e-13).scale(p.omega_dd));
        CHECK(basis.lambda3 * basis.lambda4
              == doctest::Approx(-4.0 * p.rabi * p.rabi).epsilon(1e-13).scale(p.omega_dd * p.omega_dd));
        CHECK(basis.lambda2 == -p.omega_dd);
        CHECK(basis.lambda1 == 0.0);

        CHECK(2.0 * (basis.a_bar * basis.a_bar + basis.b_bar * basis.b_bar)
              == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(2.0 * (basis.c_bar * basis.c_bar + basis.d_bar * basis.d_bar)
              == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(std::abs(2.0 * (basis.a_bar * basis.c_bar + basis.b_bar * basis.d_bar)) < 1e-13);

        if (p.rabi > 0.0) {
            CHECK(basis.c_bar < 0.0);
            CHECK(basis.d_bar > 0.0);
            CHECK(basis.a_bar > 0.0);
            CHECK(basis.b_bar > 0.0);
        }
    }
}

TEST_CASE("coefficients vary smoothly through small drives") {
    const double odd = 28.0;
    double prev = model::build_dressed_basis(params_with(odd, 1e-6)).a_bar;
    for (double w : {1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5}) {
        const double cur = model::build_dressed_basis(params_with(odd, w)).a_bar;
        CHECK(std::abs(cur - prev) < 0.05);
        prev = cur;
    }
    // the rabi -> 0 coefficients continue the w > 0 branch
    const auto tiny = model::build_dressed_basis(params_with(odd, 1e-8));
    const auto zero = model::build_dressed_basis(params_with(odd, 0.0));
    CHECK(std::abs(tiny.a_bar - zero.a_bar) < 1e-8);
    CHECK(std::abs(tiny.c_bar - zero.c_bar) < 1e-8);
    CHECK(std::abs(tiny.d_bar - zero.d_bar) < 1e-8);
}

TEST_CASE("delta defaults to lambda3 - omega and is overridable") {
    auto p = params_with(28.0, 2.8);
    p.omega = 30.0;
    const auto basis = model::build_dressed_basis(p);
    CHECK(basis.delta == doctest::Approx(basis.lambda3 - 30.0).epsilon(1e-15));
    p.delta_override = 0.25;
    CHECK(model::build_dressed_basis(p).delta == 0.25);
}

TEST_CASE("parameter validation rejects bad inputs") {
    auto p = params_with(28.0, 2.8);
    p.rabi = -1.0;
    CHECK_THROWS_AS(model::build_dressed_basis(p), std::invalid_argument);
    p = params_with(0.0, 2.8);
    CHECK_THROWS_AS(model::build_dressed_basis(p), std::invalid_argument);
    p = params_with(-3.0, 2.8);
    CHECK_THROWS_AS(model::build_dressed_basis(p), std::invalid_argument);
}
