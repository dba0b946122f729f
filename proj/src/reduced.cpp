#include "qbcool/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qbcool::reduced {

namespace {

using num::TripletXc;

// Normalized thermal weights on the truncated support [0, n_max].
std::vector<double> thermal_weights(double nbar, int n_max) {
    std::vector<double> w(n_max + 1, 0.0);
    const double r = model::thermal_ratio(nbar);
    if (r == 0.0) {
        w[0] = 1.0;
        return w;
    }
    double sum = 0.0;
    double term = 1.0;
    for (int n = 0; n <= n_max; ++n, term *= r) {
        w[n] = term;
        sum += term;
    }
    for (double& v : w) v /= sum;
    return w;
}

} // namespace

GeneratorMatrix build_generator(const model::SystemParams& params,
                                const model::DressedBasis& basis,
                                const model::RateTable& rates,
                                const model::FockTruncation& trunc) {
    params.validate();
    trunc.validate();
    if (trunc.n_max > kMaxFockLevels) {
        throw std::invalid_argument("build_generator: n_max exceeds the dimension cap");
    }

    const int n_max = trunc.n_max;
    const Eigen::Index dim = static_cast<Eigen::Index>(kFamilies) * (n_max + 1);
    const double kp = params.kappa * (1.0 + params.nbar); // cooling rate
    const double kn = params.kappa * params.nbar;         // heating rate
    const Complex ig(0.0, basis.g_eff);
    const Complex idel(0.0, basis.delta);
    const Complex il4(0.0, basis.lambda4);
    const Complex il4d(0.0, basis.lambda4 - basis.delta);
    const auto& r = rates;

    std::vector<TripletXc> t;
    t.reserve(static_cast<std::size_t>(dim) * 12);
    auto add = [&](int fi, int n, int fj, int m, Complex v) {
        if (v != Complex(0.0)) {
            t.emplace_back(state_index(fi, n, n_max), state_index(fj, m, n_max), v);
        }
    };

    for (int n = 0; n <= n_max; ++n) {
        const bool top = (n == n_max);
        const double dn = n;

        // birth-death ladder shared by the single-ladder families; the pump
        // out of the top level is dropped so the chain is closed
        auto kappa_chain = [&](int f) {
            const double heat_out = top ? 0.0 : kn * (dn + 1.0);
            add(f, n, f, n, Complex(-(heat_out + kp * dn)));
            if (n > 0) add(f, n, f, n - 1, Complex(kn * dn));
            if (!top) add(f, n, f, n + 1, Complex(kp * (dn + 1.0)));
        };

        // family 0: boson-number distribution
        add(0, n, 4, n, ig);
        add(0, n, 6, n, -ig);
        kappa_chain(0);

        // family 1: population of |Psi_1>
        add(1, n, 4, n, ig);
        kappa_chain(1);
        add(1, n, 0, n, Complex(r.gamma1_0));
        add(1, n, 1, n, Complex(-r.gamma1_1));
        add(1, n, 2, n, Complex(-r.gamma1_2));
        add(1, n, 3, n, Complex(-r.gamma1_3));
        add(1, n, 11, n, Complex(r.gamma1_11));

        // family 2: population of |Psi_2>
        kappa_chain(2);
        add(2, n, 0, n, Complex(r.gamma2_0));
        add(2, n, 1, n, Complex(r.gamma2_1));
        add(2, n, 2, n, Complex(-r.gamma2_2));
        add(2, n, 3, n, Complex(r.gamma2_3));
        add(2, n, 11, n, Complex(-r.gamma2_11));

        // family 3: population of |Psi_3>
        add(3, n, 6, n, -ig);
        kappa_chain(3);
        add(3, n, 0, n, Complex(r.gamma3_0));
        add(3, n, 1, n, Complex(r.gamma3_1));
        add(3, n, 2, n, Complex(-r.gamma3_2));
        add(3, n, 3, n, Complex(-r.gamma3_3));
        add(3, n, 11, n, Complex(-r.gamma3_11));

        // family 4
        add(4, n, 5, n, -idel);
        add(4, n, 1, n, 2.0 * ig * dn);
        if (n > 0) add(4, n, 3, n - 1, -2.0 * ig * dn);
        add(4, n, 6, n, Complex(-kp));
        add(4, n, 4, n, Complex(-kp * (2.0 * dn - 1.0) * 0.5 - kn * (2.0 * dn + 1.0) * 0.5 - r.gamma4_4));
        if (!top) add(4, n, 4, n + 1, Complex(kp * (dn + 1.0)));
        if (n > 0) add(4, n, 4, n - 1, Complex(kn * dn));
        add(4, n, 8, n, Complex(r.gamma4_8));

        // family 5
        add(5, n, 4, n, -idel);
        add(5, n, 7, n, Complex(-kp));
        add(5, n, 5, n, Complex(-kp * (2.0 * dn - 1.0) * 0.5 - kn * (2.0 * dn + 1.0) * 0.5 - r.gamma5_5));
        if (!top) add(5, n, 5, n + 1, Complex(kp * (dn + 1.0)));
        if (n > 0) add(5, n, 5, n - 1, Complex(kn * dn));
        add(5, n, 9, n, Complex(r.gamma5_9));

        if (top) {
            // these four families are identically zero at the top level under
            // the truncation; decay-only rows pin them there
            const Complex decay67(-kp * (2.0 * dn + 1.0) * 0.5 - kn * (2.0 * dn + 3.0) * 0.5);
            add(6, n, 6, n, decay67 - r.gamma6_6);
            add(7, n, 7, n, decay67 - r.gamma7_7);
            add(12, n, 12, n, decay67 - r.gamma12_12);
            add(13, n, 13, n, decay67 - r.gamma13_13);
        } else {
            // family 6
            add(6, n, 7, n, -idel);
            add(6, n, 1, n + 1, 2.0 * ig * (dn + 1.0));
            add(6, n, 3, n, -2.0 * ig * (dn + 1.0));
            add(6, n, 6, n, Complex(-kp * (2.0 * dn + 1.0) * 0.5 - kn * (2.0 * dn + 3.0) * 0.5 - r.gamma6_6));
            add(6, n, 6, n + 1, Complex(kp * (dn + 1.0)));
            if (n > 0) add(6, n, 6, n - 1, Complex(kn * dn));
            add(6, n, 4, n, Complex(kn));
            add(6, n, 12, n, Complex(r.gamma6_12));

            // family 7
            add(7, n, 6, n, -idel);
            add(7, n, 7, n, Complex(-kp * (2.0 * dn + 1.0) * 0.5 - kn * (2.0 * dn + 3.0) * 0.5 - r.gamma7_7));
            add(7, n, 7, n + 1, Complex(kp * (dn + 1.0)));
            if (n > 0) add(7, n, 7, n - 1, Complex(kn * dn));
            add(7, n, 5, n, Complex(kn));
            add(7, n, 13, n, Complex(r.gamma7_13));

            // family 12
            add(12, n, 13, n, il4d);
            add(12, n, 11, n + 1, ig * (dn + 1.0));
            add(12, n, 6, n, Complex(r.gamma12_6));
            add(12, n, 12, n, Complex(-kp * (2.0 * dn + 1.0) * 0.5 - kn * (2.0 * dn + 3.0) * 0.5 - r.gamma12_12));
            add(12, n, 12, n + 1, Complex(kp * (dn + 1.0)));
            if (n > 0) add(12, n, 12, n - 1, Complex(kn * dn));
            add(12, n, 8, n, Complex(kn));

            // family 13
            add(13, n, 12, n, il4d);
            add(13, n, 10, n + 1, ig * (dn + 1.0));
            add(13, n, 7, n, Complex(r.gamma13_7));
            add(13, n, 13, n, Complex(-kp * (2.0 * dn + 1.0) * 0.5 - kn * (2.0 * dn + 3.0) * 0.5 - r.gamma13_13));
            add(13, n, 13, n + 1, Complex(kp * (dn + 1.0)));
            if (n > 0) add(13, n, 13, n - 1, Complex(kn * dn));
            add(13, n, 9, n, Complex(kn));
        }

        // family 8
        add(8, n, 9, n, il4d);
        add(8, n, 11, n, ig * dn);
        add(8, n, 8, n, Complex(-kn * (2.0 * dn + 1.0) * 0.5 - kp * (2.0 * dn - 1.0) * 0.5 - r.gamma8_8));
        if (n > 0) add(8, n, 8, n - 1, Complex(kn * dn));
        add(8, n, 12, n, Complex(-kp));
        if (!top) add(8, n, 8, n + 1, Complex(kp * (dn + 1.0)));
        add(8, n, 4, n, Complex(r.gamma8_4));

        // family 9
        add(9, n, 8, n, il4d);
        add(9, n, 10, n, ig * dn);
        add(9, n, 9, n, Complex(-kn * (2.0 * dn + 1.0) * 0.5 - kp * (2.0 * dn - 1.0) * 0.5 - r.gamma9_9));
        if (n > 0) add(9, n, 9, n - 1, Complex(kn * dn));
        add(9, n, 13, n, Complex(-kp));
        if (!top) add(9, n, 9, n + 1, Complex(kp * (dn + 1.0)));
        add(9, n, 5, n, Complex(r.gamma9_5));

        // family 10
        add(10, n, 11, n, il4);
        add(10, n, 9, n, ig);
        kappa_chain(10);
        add(10, n, 10, n, Complex(-r.gamma10_10));

        // family 11
        add(11, n, 10, n, il4);
        add(11, n, 8, n, ig);
        kappa_chain(11);
        add(11, n, 0, n, Complex(r.gamma11_0));
        add(11, n, 1, n, Complex(-r.gamma11_1));
        add(11, n, 2, n, Complex(-r.gamma11_2));
        add(11, n, 3, n, Complex(-r.gamma11_3));
        add(11, n, 11, n, Complex(-r.gamma11_11));
    }

    GeneratorMatrix gen;
    gen.matrix = num::assemble(dim, std::move(t));
    gen.n_max = n_max;
    return gen;
}

SteadyStateResult steady_state(const GeneratorMatrix& gen) {
    const int n_max = gen.n_max;
    const Eigen::Index dim = gen.matrix.rows();
    num::VectorXc constraint = num::VectorXc::Zero(dim);
    for (int n = 0; n <= n_max; ++n) constraint(state_index(0, n, n_max)) = Complex(1.0);

    auto [x, report] = num::solve_constrained_nullspace(gen.matrix, constraint, Complex(1.0),
                                                        state_index(0, 0, n_max));

    const double bound = 1e-10 * num::infinity_norm(gen.matrix) * x.cwiseAbs().maxCoeff();
    if (report.residual > bound) {
        throw num::solve_error("steady_state: residual " + std::to_string(report.residual)
                               + " exceeds bound " + std::to_string(bound), report.residual);
    }
    return {ReducedState(std::move(x), n_max), report};
}

ReducedState evolve(const GeneratorMatrix& gen, const ReducedState& x0,
                    double t_final, double rel_tol) {
    if (x0.n_max != gen.n_max) throw std::invalid_argument("evolve: truncation mismatch");
    auto trace = [&](const Eigen::VectorXcd& v) {
        Complex s(0.0);
        for (int n = 0; n <= gen.n_max; ++n) s += v(state_index(0, n, gen.n_max));
        return s;
    };
    const Complex trace0 = trace(x0.values);
    Eigen::VectorXcd xt = num::integrate_stiff_linear(gen.matrix, x0.values, t_final, rel_tol);
    const double drift = std::abs(trace(xt) - trace0);
    if (drift > 10.0 * rel_tol * std::max(std::abs(trace0), 1.0)) {
        throw num::solve_error("evolve: trace drift " + std::to_string(drift)
                               + " exceeds 10 * rel_tol", drift);
    }
    return {std::move(xt), gen.n_max};
}

ReducedState initial_state(const model::SystemParams& params,
                           const model::DressedBasis& basis,
                           const model::FockTruncation& trunc) {
    trunc.validate();
    ReducedState state(Eigen::VectorXcd::Zero(kFamilies * (trunc.n_max + 1)), trunc.n_max);
    const auto weights = thermal_weights(params.nbar, trunc.n_max);
    const double lambdas[4] = {basis.lambda1, basis.lambda2, basis.lambda3, basis.lambda4};
    const int lowest = static_cast<int>(std::min_element(lambdas, lambdas + 4) - lambdas) + 1;
    for (int n = 0; n <= trunc.n_max; ++n) {
        state.p(0, n) = weights[n];
        if (lowest <= 3) state.p(lowest, n) = weights[n]; // |Psi_4> population is implicit
    }
    return state;
}

double mean_phonon(const ReducedState& state) {
    double sum = 0.0;
    for (int n = 0; n <= state.n_max; ++n) sum += n * state.p(0, n).real();
    return sum;
}

double g2(const ReducedState& state) {
    const double mean = mean_phonon(state);
    if (mean < 1e-12) {
        throw std::domain_error("g2: undefined statistics, mean occupation below 1e-12");
    }
    double sum = 0.0;
    for (int n = 0; n <= state.n_max; ++n) sum += static_cast<double>(n) * (n - 1.0) * state.p(0, n).real();
    return sum / (mean * mean);
}

QubitMarginals qubit_marginals(const ReducedState& state) {
    QubitMarginals m;
    for (int n = 0; n <= state.n_max; ++n) {
        m.rho11 += state.p(1, n).real();
        m.rho22 += state.p(2, n).real();
        m.rho33 += state.p(3, n).real();
        m.coh_plus += state.p(11, n);
        m.coh_minus += state.p(10, n);
    }
    m.rho44 = 1.0 - m.rho11 - m.rho22 - m.rho33;
    const double populations[4] = {m.rho11, m.rho22, m.rho33, m.rho44};
    for (double p : populations) {
        if (p < -1e-8) {
            throw std::runtime_error("qubit_marginals: population negative beyond tolerance");
        }
    }
    return m;
}

} // namespace qbcool::reduced
