#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qbcool/liouville.hpp"
#include "qbcool/rates.hpp"

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

Eigen::MatrixXcd random_hermitian(int dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    }
    Eigen::MatrixXcd h = m + m.adjoint();
    h /= h.trace();
    return h;
}

num::VectorXc vec_of(const Eigen::MatrixXcd& rho) {
    return Eigen::Map<const num::VectorXc>(rho.data(), rho.size());
}

} // namespace

TEST_CASE("both superoperators preserve the trace functional") {
    const auto p = small_params();
    const auto basis = model::build_dressed_basis(p);
    const model::FockTruncation trunc{6};
    const auto bare = liouville::build_bare_liouvillian(p, trunc);
    const auto dressed = liouville::build_dressed_liouvillian(p, basis, trunc);
    CHECK(liouville::trace_functional_defect(bare) < 1e-10 * num::infinity_norm(bare.matrix));
    CHECK(liouville::trace_functional_defect(dressed) < 1e-10 * num::infinity_norm(dressed.matrix));
}

TEST_CASE("both superoperators map Hermitian operators to Hermitian derivatives") {
    const auto p = small_params();
    const auto basis = model::build_dressed_basis(p);
    const model::FockTruncation trunc{4};
    const int dim = 4 * (trunc.n_max + 1);
    std::mt19937 rng(5);
    for (const auto& sup : {liouville::build_bare_liouvillian(p, trunc),
                            liouville::build_dressed_liouvillian(p, basis, trunc)}) {
        for (int k = 0; k < 5; ++k) {
            const Eigen::MatrixXcd rho = random_hermitian(dim, rng);
            const num::VectorXc dvec = sup.matrix * vec_of(rho);
            const Eigen::MatrixXcd drho = Eigen::Map<const Eigen::MatrixXcd>(dvec.data(), dim, dim);
            CHECK(liouville::hermiticity_defect(drho) < 1e-10 * dvec.cwiseAbs().maxCoeff());
        }
    }
}

TEST_CASE("undriven, uncoupled steady state is ground x thermal") {
    auto p = small_params();
    p.rabi = 0.0;
    p.g = 0.0;
    p.nbar = 0.2;
    const model::FockTruncation trunc{8};
    const auto solved = liouville::steady_state_dm(liouville::build_bare_liouvillian(p, trunc));

    const int nf = trunc.n_max + 1;
    const double r = model::thermal_ratio(p.nbar);
    double norm = 0.0;
    for (int n = 0; n < nf; ++n) norm += std::pow(r, n);
    for (int n = 0; n < nf; ++n) {
        CHECK(std::abs(solved.rho.rho(3 * nf + n, 3 * nf + n).real() - std::pow(r, n) / norm) < 1e-9);
    }
    double ground_weight = 0.0;
    for (int n = 0; n < nf; ++n) ground_weight += solved.rho.rho(3 * nf + n, 3 * nf + n).real();
    CHECK(ground_weight == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(liouville::mean_phonon(solved.rho) == doctest::Approx(p.nbar).epsilon(1e-6));
}

TEST_CASE("independent qubits decay exponentially when uncoupled") {
    auto p = small_params();
    p.rabi = 0.0;
    p.g = 0.0;
    p.chi_r = 0.0;
    p.nbar = 0.0;
    const model::FockTruncation trunc{2};
    const auto sup = liouville::build_bare_liouvillian(p, trunc);
    const int nf = trunc.n_max + 1;
    const int dim = 4 * nf;

    Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(dim, dim);
    rho0(0, 0) = 1.0; // |22> x |0>
    const double t = 1.5;
    const auto vec_t = num::integrate_stiff_linear(sup.matrix, vec_of(rho0), t, 1e-8);
    const Eigen::MatrixXcd rho_t = Eigen::Map<const Eigen::MatrixXcd>(vec_t.data(), dim, dim);

    // excited population of qubit 1 sums the |22> and |21> blocks
    double excited = 0.0;
    for (int q : {0, 1}) {
        for (int n = 0; n < nf; ++n) excited += rho_t(q * nf + n, q * nf + n).real();
    }
    CHECK(excited == doctest::Approx(std::exp(-p.gamma * t)).epsilon(1e-5));
}

TEST_CASE("dressed generator decouples the mode at zero drive") {
    auto p = small_params();
    p.rabi = 0.0;
    p.nbar = 0.3;
    const auto basis = model::build_dressed_basis(p);
    CHECK(basis.g_eff == 0.0);
    const model::FockTruncation trunc{8};
    const auto solved = liouville::steady_state_dm(liouville::build_dressed_liouvillian(p, basis, trunc));
    CHECK(liouville::mean_phonon(solved.rho) == doctest::Approx(p.nbar).epsilon(1e-6));
    CHECK(liouville::g2(solved.rho) == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("smallest-magnitude eigenvalue of the generator is zero") {
    const auto p = small_params();
    const model::FockTruncation trunc{2};
    const auto sup = liouville::build_bare_liouvillian(p, trunc);
    Eigen::MatrixXcd dense(sup.matrix);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(dense, false);
    double smallest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < solver.eigenvalues().size(); ++i) {
        smallest = std::min(smallest, std::abs(solver.eigenvalues()(i)));
    }
    CHECK(smallest < 1e-10);
}

TEST_CASE("steady state of the dressed generator is positive semidefinite") {
    const auto p = small_params();
    const auto basis = model::build_dressed_basis(p);
    const auto solved = liouville::steady_state_dm(
        liouville::build_dressed_liouvillian(p, basis, model::FockTruncation{8}));
    CHECK(liouville::hermiticity_defect(solved.rho.rho) < 1e-10);
    CHECK(std::abs(solved.rho.rho.trace() - Complex(1.0)) < 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(solved.rho.rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-8);
}

TEST_CASE("projection of simple pure states") {
    const int n_max = 4;
    const int nf = n_max + 1;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4 * nf, 4 * nf);
    rho(0, 0) = 1.0; // |Psi_1> x |0>
    const liouville::FullDensityOperator op{rho, liouville::Basis::dressed, n_max};
    const auto state = liouville::project_to_reduced(op);
    CHECK(std::abs(state.p(1, 0) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(state.p(0, 0) - Complex(1.0)) < 1e-15);
    double rest = 0.0;
    for (int f = 2; f < reduced::kFamilies; ++f) {
        for (int n = 0; n <= n_max; ++n) rest += std::abs(state.p(f, n));
    }
    CHECK(rest == 0.0);
}

TEST_CASE("projection of a Hermitian operator has the family reality structure") {
    const int n_max = 5;
    std::mt19937 rng(23);
    const Eigen::MatrixXcd rho = random_hermitian(4 * (n_max + 1), rng);
    const auto state = liouville::project_to_reduced({rho, liouville::Basis::dressed, n_max});
    for (int n = 0; n <= n_max; ++n) {
        for (int f : {0, 1, 2, 3, 5, 7, 9, 11, 13}) CHECK(std::abs(state.p(f, n).imag()) < 1e-12);
        for (int f : {4, 6, 8, 10, 12}) CHECK(std::abs(state.p(f, n).real()) < 1e-12);
    }
    CHECK_THROWS_AS(liouville::project_to_reduced({rho, liouville::Basis::bare, n_max}),
                    std::invalid_argument);
}

TEST_CASE("boson observables are invariant under the qubit basis change") {
    const auto p = small_params();
    const auto basis = model::build_dressed_basis(p);
    const auto solved = liouville::steady_state_dm(
        liouville::build_bare_liouvillian(p, model::FockTruncation{6}));
    const auto dressed = liouville::to_dressed(solved.rho, basis);
    CHECK(liouville::mean_phonon(dressed)
          == doctest::Approx(liouville::mean_phonon(solved.rho)).epsilon(1e-12));
    CHECK(liouville::g2(dressed) == doctest::Approx(liouville::g2(solved.rho)).epsilon(1e-12));
    const auto back = liouville::to_bare(dressed, basis);
    CHECK((back.rho - solved.rho.rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("uncoupled dressed generator keeps each Fock block's population fixed") {
    auto p = small_params();
    p.rabi = 0.0;      // g_eff = 0
    p.kappa = 1e-300;  // effectively no boson damping
    const auto basis = model::build_dressed_basis(p);
    const model::FockTruncation trunc{4};
    const auto sup = liouville::build_dressed_liouvillian(p, basis, trunc);
    const int nf = trunc.n_max + 1;
    const int dim = 4 * nf;
    std::mt19937 rng(31);
    const Eigen::MatrixXcd rho = random_hermitian(dim, rng);
    const num::VectorXc dvec = sup.matrix * vec_of(rho);
    const Eigen::MatrixXcd drho = Eigen::Map<const Eigen::MatrixXcd>(dvec.data(), dim, dim);
    for (int n = 0; n < nf; ++n) {
        Complex block(0.0);
        for (int q = 0; q < 4; ++q) block += drho(q * nf + n, q * nf + n);
        CHECK(std::abs(block) < 1e-12 * num::infinity_norm(sup.matrix));
    }
}

TEST_CASE("oracle dimension cap is enforced") {
    const auto p = small_params();
    CHECK_THROWS_AS(liouville::build_bare_liouvillian(
                        p, model::FockTruncation{liouville::kMaxOracleFockLevels + 1}),
                    std::invalid_argument);
}

TEST_CASE("reduced solver agrees with the dressed-generator projection") {
    const auto p = small_params();
    const auto basis = model::build_dressed_basis(p);
    const auto rates = model::compute_rates(basis, p);
    const model::FockTruncation trunc{8};

    const auto red = reduced::steady_state(reduced::build_generator(p, basis, rates, trunc));
    const auto dm = liouville::steady_state_dm(liouville::build_dressed_liouvillian(p, basis, trunc));
    const auto projected = liouville::project_to_reduced(dm.rho);

    CHECK(reduced::mean_phonon(projected)
          == doctest::Approx(reduced::mean_phonon(red.state)).epsilon(1e-8));
    CHECK(reduced::g2(projected) == doctest::Approx(reduced::g2(red.state)).epsilon(1e-8));
    CHECK((projected.values - red.state.values).cwiseAbs().maxCoeff() < 1e-8);
}
