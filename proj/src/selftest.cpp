#include "qbcool/selftest.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "qbcool/dressed.hpp"
#include "qbcool/entanglement.hpp"
#include "qbcool/rates.hpp"
#include "qbcool/reduced.hpp"
#include "qbcool/sweep.hpp"

namespace qbcool {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct Checker {
    std::ostream& os;
    int failures{0};

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        os << (ok ? "[pass] " : "[FAIL] ") << name;
        if (!ok && !detail.empty()) os << " (" << detail << ")";
        os << '\n';
        if (!ok) ++failures;
    }
};

model::SystemParams small_caption_params() {
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

void check_dressed_basis(Checker& chk) {
    std::mt19937 rng(20260809);
    std::uniform_real_distribution<double> odd_dist(1.0, 100.0);
    std::uniform_real_distribution<double> rabi_dist(0.0, 20.0);

    double worst_orth = 0.0;
    double worst_eigen = 0.0;
    double worst_vieta = 0.0;
    for (int k = 0; k < 200; ++k) {
        model::SystemParams p;
        p.omega_dd = odd_dist(rng);
        p.rabi = rabi_dist(rng);
        const auto basis = model::build_dressed_basis(p);
        const Eigen::Matrix4d gram = basis.transform * basis.transform.transpose();
        worst_orth = std::max(worst_orth, (gram - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff());

        const Eigen::Matrix4d h = model::interaction_hamiltonian(p);
        const double lambdas[4] = {basis.lambda1, basis.lambda2, basis.lambda3, basis.lambda4};
        for (int j = 0; j < 4; ++j) {
            const Eigen::Vector4d v = basis.transform.row(j).transpose();
            worst_eigen = std::max(worst_eigen,
                                   (h * v - lambdas[j] * v).cwiseAbs().maxCoeff() / p.omega_dd);
        }
        worst_vieta = std::max(worst_vieta,
                               std::abs(basis.lambda3 + basis.lambda4 - p.omega_dd)
                                   / std::max(1.0, p.omega_dd));
        worst_vieta = std::max(worst_vieta,
                               std::abs(basis.lambda3 * basis.lambda4 + 4.0 * p.rabi * p.rabi)
                                   / std::max(1.0, 4.0 * p.rabi * p.rabi));
        worst_orth = std::max(worst_orth, std::abs(2.0 * (basis.a_bar * basis.a_bar
                                                          + basis.b_bar * basis.b_bar) - 1.0));
        worst_orth = std::max(worst_orth, std::abs(2.0 * (basis.c_bar * basis.c_bar
                                                          + basis.d_bar * basis.d_bar) - 1.0));
        worst_orth = std::max(worst_orth, std::abs(2.0 * (basis.a_bar * basis.c_bar
                                                          + basis.b_bar * basis.d_bar)));
    }
    chk.check("dressed basis orthonormality (1e-12)", worst_orth < 1e-12,
              "worst " + sweep::format_double(worst_orth));
    chk.check("dressed basis eigen-relations (1e-12)", worst_eigen < 1e-12,
              "worst " + sweep::format_double(worst_eigen));
    chk.check("dressed eigenvalue Vieta relations (1e-12)", worst_vieta < 1e-12,
              "worst " + sweep::format_double(worst_vieta));
}

void check_rate_aliases(Checker& chk) {
    auto p = small_caption_params();
    const auto basis = model::build_dressed_basis(p);
    const auto r = model::compute_rates(basis, p);
    const bool ok = r.gamma5_5 == r.gamma4_4 && r.gamma5_9 == r.gamma4_8
                    && r.gamma6_6 == r.gamma5_5 && r.gamma6_12 == r.gamma5_9
                    && r.gamma7_7 == r.gamma6_6 && r.gamma7_13 == r.gamma6_12
                    && r.gamma9_5 == r.gamma8_4 && r.gamma9_9 == r.gamma8_8
                    && r.gamma12_6 == r.gamma8_4 && r.gamma13_7 == r.gamma8_4
                    && r.gamma12_12 == r.gamma8_8 && r.gamma13_13 == r.gamma8_8;
    chk.check("rate-table aliases (exact)", ok);
}

void check_trace_preservation(Checker& chk) {
    auto p = small_caption_params();
    const auto basis = model::build_dressed_basis(p);
    const auto rates = model::compute_rates(basis, p);
    const model::FockTruncation trunc{10};
    const auto gen = reduced::build_generator(p, basis, rates, trunc);
    const auto x0 = reduced::initial_state(p, basis, trunc);
    const double rel_tol = 1e-6;
    try {
        const auto xt = reduced::evolve(gen, x0, 50.0, rel_tol); // evolve throws beyond 10*rel_tol
        double trace = 0.0;
        for (int n = 0; n <= trunc.n_max; ++n) trace += xt.p(0, n).real();
        chk.check("trace preservation under evolution (10*rel_tol)",
                  std::abs(trace - 1.0) <= 10.0 * rel_tol,
                  "drift " + sweep::format_double(std::abs(trace - 1.0)));
    } catch (const std::exception& e) {
        chk.check("trace preservation under evolution (10*rel_tol)", false, e.what());
    }
}

void check_reality_structure(Checker& chk) {
    auto p = small_caption_params();
    const auto basis = model::build_dressed_basis(p);
    const auto rates = model::compute_rates(basis, p);
    const auto gen = reduced::build_generator(p, basis, rates, model::FockTruncation{10});
    const auto solved = reduced::steady_state(gen);

    double worst = 0.0;
    const int real_families[] = {0, 1, 2, 3, 5, 7, 11};
    const int imag_families[] = {4, 6, 10};
    for (int n = 0; n <= 10; ++n) {
        for (int f : real_families) worst = std::max(worst, std::abs(solved.state.p(f, n).imag()));
        for (int f : imag_families) worst = std::max(worst, std::abs(solved.state.p(f, n).real()));
    }
    chk.check("steady-state reality structure (1e-8)", worst < 1e-8,
              "worst " + sweep::format_double(worst));
}

void check_truncation_convergence(Checker& chk) {
    auto p = small_caption_params();
    p.nbar = 0.5;
    try {
        const auto point = sweep::solve_point(p, std::nullopt, 4096);
        const auto finer = sweep::solve_point(p, (point.n_max * 5 + 3) / 4, 4096);
        auto rel = [](double a, double b) {
            return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12});
        };
        double d = rel(point.mean_n, finer.mean_n);
        d = std::max(d, rel(point.g2, finer.g2));
        d = std::max(d, rel(point.marginals.rho11, finer.marginals.rho11));
        d = std::max(d, rel(point.marginals.rho22, finer.marginals.rho22));
        d = std::max(d, rel(point.marginals.rho33, finer.marginals.rho33));
        d = std::max(d, rel(point.marginals.rho44, finer.marginals.rho44));
        chk.check("truncation convergence under +25% n_max (1e-6)", d < 1e-6,
                  "observable shift " + sweep::format_double(d));
    } catch (const std::exception& e) {
        chk.check("truncation convergence under +25% n_max (1e-6)", false, e.what());
    }
}

ent::BareDensityMatrix make_bare(const Eigen::Matrix4cd& m) {
    ent::BareDensityMatrix b;
    b.rho = m;
    return b;
}

void check_concurrence(Checker& chk) {
    Eigen::Matrix4cd bell = Eigen::Matrix4cd::Zero();
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    const double c_bell = ent::concurrence(make_bare(bell)).value;
    chk.check("concurrence of a Bell state = 1", std::abs(c_bell - 1.0) < 1e-12,
              sweep::format_double(c_bell));

    Eigen::Matrix4cd ground = Eigen::Matrix4cd::Zero();
    ground(3, 3) = 1.0;
    const double c_ground = ent::concurrence(make_bare(ground)).value;
    chk.check("concurrence of a product state = 0", c_ground == 0.0,
              sweep::format_double(c_ground));

    double worst = 0.0;
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        const Eigen::Matrix4cd werner =
            p * bell + (1.0 - p) * 0.25 * Eigen::Matrix4cd::Identity();
        const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
        worst = std::max(worst, std::abs(ent::concurrence(make_bare(werner)).value - expected));
    }
    chk.check("Werner-state concurrence matches (3p-1)/2 (1e-10)", worst < 1e-10,
              "worst " + sweep::format_double(worst));
}

} // namespace

int run_selftest(std::ostream& os) {
    Checker chk{os};
    check_dressed_basis(chk);
    check_rate_aliases(chk);
    check_trace_preservation(chk);
    check_reality_structure(chk);
    check_truncation_convergence(chk);
    check_concurrence(chk);
    os << (chk.failures == 0 ? "selftest: all checks passed\n"
                             : "selftest: " + std::to_string(chk.failures) + " check(s) failed\n");
    return chk.failures;
}

} // namespace qbcool
