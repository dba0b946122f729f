// reduced.hpp — Reduced equations of motion over a truncated Fock space

#pragma once

#include <complex>

#include "qbcool/dressed.hpp"
#include "qbcool/numerics.hpp"
#include "qbcool/params.hpp"
#include "qbcool/rates.hpp"

namespace qbcool::reduced {

using num::Complex;

constexpr int kFamilies = 14;

inline Eigen::Index state_index(int family, int n, int n_max) {
    return static_cast<Eigen::Index>(family) * (n_max + 1) + n;
}

// Fourteen coupled families P^(i)_n, i in 0..13, n in 0..n_max. Family 0 is
// the boson-number distribution; 1..3 are the dressed populations of
// |Psi_1..3>; the rest are coherence families dressed with ladder operators.
struct ReducedState {
    Eigen::VectorXcd values;
    int n_max{0};

    ReducedState() = default;
    ReducedState(Eigen::VectorXcd v, int nm) : values(std::move(v)), n_max(nm) {}

    Complex p(int family, int n) const { return values(state_index(family, n, n_max)); }
    Complex& p(int family, int n) { return values(state_index(family, n, n_max)); }
    Eigen::Index size() const { return values.size(); }
};

struct GeneratorMatrix {
    num::SparseMatrixXc matrix;
    int n_max{0};
};

// Upper bound on n_max accepted by the generator builder.
constexpr int kMaxFockLevels = 1 << 16;

// Assemble the sparse generator L with d/dt P = L P. Couplings that would
// reference Fock levels above n_max are dropped; the thermal pump out of the
// top level is dropped with them, which closes the kappa chain and keeps the
// generator exactly singular with a physical kernel. The four families that
// are identically zero at the top level under the truncation are pinned there
// by decay-only rows.
GeneratorMatrix build_generator(const model::SystemParams& params,
                                const model::DressedBasis& basis,
                                const model::RateTable& rates,
                                const model::FockTruncation& trunc);

struct SteadyStateResult {
    ReducedState state;
    num::SolveReport report;
};

// Null vector of L normalized by sum_n P^(0)_n = 1 (the redundant row of the
// probability chain is replaced with the normalization constraint).
SteadyStateResult steady_state(const GeneratorMatrix& gen);

// Stiff time integration of the same generator.
ReducedState evolve(const GeneratorMatrix& gen, const ReducedState& x0,
                    double t_final, double rel_tol);

// Thermal boson distribution in the trace family, qubits in the dressed state
// of lowest eigenvalue, all coherences zero.
ReducedState initial_state(const model::SystemParams& params,
                           const model::DressedBasis& basis,
                           const model::FockTruncation& trunc);

double mean_phonon(const ReducedState& state);

// Equal-time second-order correlation; requires a nonzero mean occupation.
double g2(const ReducedState& state);

struct QubitMarginals {
    double rho11{0.0};
    double rho22{0.0};
    double rho33{0.0};
    double rho44{0.0};
    Complex coh_plus{0.0};  // rho_14 + rho_41, real for physical states
    Complex coh_minus{0.0}; // rho_14 - rho_41, imaginary for physical states
};

QubitMarginals qubit_marginals(const ReducedState& state);

} // namespace qbcool::reduced
