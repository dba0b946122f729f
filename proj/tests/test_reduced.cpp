#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qbcool/reduced.hpp"

using namespace qbcool;
using num::Complex;

namespace {

model::SystemParams small_params() {
    model::SystemParams p;
    p.chi_r = 0.98;
    p.omega_dd = 28.0;
    p.omega = 30.0;
    p.g = 2.0;
    p.kappa = 1e-3;
    p.nbar = 0.1;
    p.rabi = 2.8;
    return p;
}

reduced::GeneratorMatrix generator_for(const model::SystemParams& p, int n_max) {
    const auto basis = model::build_dressed_basis(p);
    const auto rates = model::compute_rates(basis, p);
    return reduced::build_generator(p, basis, rates, model::FockTruncation{n_max});
}

// mean of the geometric distribution truncated at n_max
double truncated_thermal_mean(double nbar, int n_max) {
    const double r = model::thermal_ratio(nbar);
    if (r == 0.0) return 0.0;
    double s0 = 0.0, s1 = 0.0, term = 1.0;
    for (int n = 0; n <= n_max; ++n, term *= r) {
        s0 += term;
        s1 += n * term;
    }
    return s1 / s0;
}

Complex entry(const reduced::GeneratorMatrix& gen, int fi, int ni, int fj, int nj) {
    return gen.matrix.coeff(reduced::state_index(fi, ni, gen.n_max),
                            reduced::state_index(fj, nj, gen.n_max));
}

} // namespace

TEST_CASE("trace-family row carries the printed ladder and coupling entries") {
    const auto p = small_params();
    const auto basis = model::build_dressed_basis(p);
    const auto gen = generator_for(p, 12);
    const double kp = p.kappa * (1.0 + p.nbar);
    const double kn = p.kappa * p.nbar;
    for (int n = 1; n < 12; ++n) {
        CHECK(entry(gen, 0, n, 0, n) == Complex(-(kn * (n + 1.0) + kp * n)));
        CHECK(entry(gen, 0, n, 0, n - 1) == Complex(kn * n));
        CHECK(entry(gen, 0, n, 0, n + 1) == Complex(kp * (n + 1.0)));
        CHECK(entry(gen, 0, n, 4, n) == Complex(0.0, basis.g_eff));
        CHECK(entry(gen, 0, n, 6, n) == Complex(0.0, -basis.g_eff));
    }
    // closed chain at the top level: no pump out of n_max
    CHECK(entry(gen, 0, 12, 0, 12) == Complex(-kp * 12.0));
}

TEST_CASE("kappa ladder of the trace family conserves probability column-wise") {
    auto p = small_params();
    p.g = 0.0;
    const auto gen = generator_for(p, 20);
    for (int m = 0; m <= 20; ++m) {
        Complex flux(0.0);
        for (int n = 0; n <= 20; ++n) flux += entry(gen, 0, n, 0, m);
        CHECK(std::abs(flux) < 1e-16);
    }
}

TEST_CASE("decoupled mode thermalizes: distribution, mean and g2") {
    auto p = small_params();
    p.g = 0.0;
    p.nbar = 0.5;
    const int n_max = 40;
    const auto solved = reduced::steady_state(generator_for(p, n_max));

    const double r = model::thermal_ratio(p.nbar);
    double norm = 0.0;
    for (int n = 0; n <= n_max; ++n) norm += std::pow(r, n);
    for (int n = 0; n <= n_max; ++n) {
        CHECK(std::abs(solved.state.p(0, n) - Complex(std::pow(r, n) / norm)) < 1e-12);
    }
    CHECK(reduced::mean_phonon(solved.state)
          == doctest::Approx(truncated_thermal_mean(p.nbar, n_max)).epsilon(1e-10));
    CHECK(reduced::mean_phonon(solved.state) == doctest::Approx(p.nbar).epsilon(1e-6));
    CHECK(reduced::g2(solved.state) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("mean and g2 on synthetic distributions") {
    reduced::ReducedState fock(Eigen::VectorXcd::Zero(reduced::kFamilies * 11), 10);
    fock.p(0, 3) = 1.0;
    CHECK(reduced::mean_phonon(fock) == doctest::Approx(3.0));
    fock.p(0, 3) = 0.0;
    fock.p(0, 2) = 1.0;
    CHECK(reduced::g2(fock) == doctest::Approx(0.5).epsilon(1e-14));

    const int n_max = 200;
    reduced::ReducedState thermal(Eigen::VectorXcd::Zero(reduced::kFamilies * (n_max + 1)), n_max);
    const double nbar = 20.0;
    const double r = model::thermal_ratio(nbar);
    double norm = 0.0;
    for (int n = 0; n <= n_max; ++n) norm += std::pow(r, n);
    for (int n = 0; n <= n_max; ++n) thermal.p(0, n) = std::pow(r, n) / norm;
    CHECK(reduced::mean_phonon(thermal)
          == doctest::Approx(truncated_thermal_mean(nbar, n_max)).epsilon(1e-12));

    reduced::ReducedState empty(Eigen::VectorXcd::Zero(reduced::kFamilies * 3), 2);
    empty.p(0, 0) = 1.0;
    CHECK_THROWS_AS(reduced::g2(empty), std::domain_error);
}

TEST_CASE("steady state has the stated reality structure") {
    const auto solved = reduced::steady_state(generator_for(small_params(), 10));
    const int real_families[] = {0, 1, 2, 3, 5, 7, 11};
    const int imag_families[] = {4, 6, 10};
    for (int n = 0; n <= 10; ++n) {
        for (int f : real_families) CHECK(std::abs(solved.state.p(f, n).imag()) < 1e-8);
        for (int f : imag_families) CHECK(std::abs(solved.state.p(f, n).real()) < 1e-8);
    }
}

TEST_CASE("steady state is a fixed point of the evolution") {
    const auto p = small_params();
    const auto gen = generator_for(p, 10);
    const auto solved = reduced::steady_state(gen);
    const auto evolved = reduced::evolve(gen, solved.state, 25.0, 1e-8);
    CHECK((evolved.values - solved.state.values).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("decoupled mode heats from vacuum along the textbook law") {
    auto p = small_params();
    p.g = 0.0;
    p.nbar = 1.0;
    p.kappa = 0.01;
    const int n_max = 20;
    const auto gen = generator_for(p, n_max);
    reduced::ReducedState x0(Eigen::VectorXcd::Zero(reduced::kFamilies * (n_max + 1)), n_max);
    x0.p(0, 0) = 1.0;
    x0.p(2, 0) = 1.0;
    const double t = 100.0;
    const auto xt = reduced::evolve(gen, x0, t, 1e-8);
    const double expected = p.nbar * (1.0 - std::exp(-p.kappa * t));
    CHECK(reduced::mean_phonon(xt) == doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("long evolution matches the constrained steady state") {
    const auto p = small_params();
    const auto gen = generator_for(p, 10);
    const auto basis = model::build_dressed_basis(p);
    const auto x0 = reduced::initial_state(p, basis, model::FockTruncation{10});
    const auto xt = reduced::evolve(gen, x0, 8.0 / p.kappa, 1e-6);
    const auto solved = reduced::steady_state(gen);
    CHECK((xt.values - solved.state.values).cwiseAbs().maxCoeff() < 1e-6);

    // initial-condition independence: restart from vacuum
    reduced::ReducedState vac(Eigen::VectorXcd::Zero(reduced::kFamilies * 11), 10);
    vac.p(0, 0) = 1.0;
    vac.p(2, 0) = 1.0;
    const auto xt2 = reduced::evolve(gen, vac, 8.0 / p.kappa, 1e-6);
    CHECK((xt2.values - solved.state.values).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("truncation convergence at the working sizes") {
    const auto p = small_params();
    const auto coarse = reduced::steady_state(generator_for(p, 12));
    const auto fine = reduced::steady_state(generator_for(p, 15));
    auto rel = [](double a, double b) {
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12});
    };
    CHECK(rel(reduced::mean_phonon(coarse.state), reduced::mean_phonon(fine.state)) < 1e-6);
    CHECK(rel(reduced::g2(coarse.state), reduced::g2(fine.state)) < 1e-6);
    const auto mc = reduced::qubit_marginals(coarse.state);
    const auto mf = reduced::qubit_marginals(fine.state);
    CHECK(rel(mc.rho11, mf.rho11) < 1e-6);
    CHECK(rel(mc.rho22, mf.rho22) < 1e-6);
    CHECK(rel(mc.rho33, mf.rho33) < 1e-6);
    CHECK(rel(mc.rho44, mf.rho44) < 1e-6);
}

TEST_CASE("marginals flag negative populations and sum to one") {
    const auto solved = reduced::steady_state(generator_for(small_params(), 10));
    const auto m = reduced::qubit_marginals(solved.state);
    CHECK(m.rho11 + m.rho22 + m.rho33 + m.rho44 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.rho11 >= -1e-8);
    CHECK(std::abs(m.coh_plus.imag()) < 1e-8);
    CHECK(std::abs(m.coh_minus.real()) < 1e-8);

    reduced::ReducedState bad(Eigen::VectorXcd::Zero(reduced::kFamilies * 3), 2);
    bad.p(0, 0) = 1.0;
    bad.p(1, 0) = -1e-6;
    CHECK_THROWS_AS(reduced::qubit_marginals(bad), std::runtime_error);
}

TEST_CASE("dressed-state population ordering in the cooling regime") {
    const auto solved = reduced::steady_state(generator_for(small_params(), 10));
    const auto m = reduced::qubit_marginals(solved.state);
    CHECK(m.rho11 > m.rho33);
}

TEST_CASE("generator rejects an absurd truncation") {
    const auto p = small_params();
    const auto basis = model::build_dressed_basis(p);
    const auto rates = model::compute_rates(basis, p);
    CHECK_THROWS_AS(reduced::build_generator(p, basis, rates,
                                             model::FockTruncation{reduced::kMaxFockLevels + 1}),
                    std::invalid_argument);
}
