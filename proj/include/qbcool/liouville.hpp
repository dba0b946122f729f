// liouville.hpp — Full superoperators over the joint qubit-pair x Fock space

#pragma once

#include <Eigen/Dense>

#include "qbcool/dressed.hpp"
#include "qbcool/numerics.hpp"
#include "qbcool/params.hpp"
#include "qbcool/reduced.hpp"

namespace qbcool::liouville {

using num::Complex;

enum class Basis { bare, dressed };

// Joint density operator, index q * (n_max + 1) + n with q the qubit-pair
// state (bare {|22>,|21>,|12>,|11>} or dressed {|Psi_1..4>}) and n the Fock level.
struct FullDensityOperator {
    Eigen::MatrixXcd rho;
    Basis basis{Basis::bare};
    int n_max{0};
};

struct Superoperator {
    num::SparseMatrixXc matrix; // acts on vec(rho), column-major
    Basis basis{Basis::bare};
    int n_max{0};
    int equation{0}; // 1: full master equation, 5: dressed secular equation
    model::SystemParams params;
};

// Largest Fock index accepted by the superoperator builders.
constexpr int kMaxOracleFockLevels = 40;

// Full master equation in the bare basis: coherent part, collective qubit
// dissipator, thermal boson dissipator.
Superoperator build_bare_liouvillian(const model::SystemParams& params,
                                     const model::FockTruncation& trunc);

// Dressed secular master equation with every printed commutator term.
Superoperator build_dressed_liouvillian(const model::SystemParams& params,
                                        const model::DressedBasis& basis,
                                        const model::FockTruncation& trunc);

struct SteadyStateDmResult {
    FullDensityOperator rho;
    num::SolveReport report;
};

// Null vector reshaped, Hermitized and trace-normalized.
SteadyStateDmResult steady_state_dm(const Superoperator& liouvillian);

// Exact projection of a dressed-basis density operator onto the fourteen
// reduced families. Rejects bare-basis input.
reduced::ReducedState project_to_reduced(const FullDensityOperator& rho);

FullDensityOperator to_dressed(const FullDensityOperator& rho, const model::DressedBasis& basis);
FullDensityOperator to_bare(const FullDensityOperator& rho, const model::DressedBasis& basis);

double mean_phonon(const FullDensityOperator& rho);
double g2(const FullDensityOperator& rho);

// Populations of |Psi_1..4|; requires dressed basis.
Eigen::Vector4d dressed_populations(const FullDensityOperator& rho);

// ||trace . L||_inf, zero for a trace-preserving generator.
double trace_functional_defect(const Superoperator& liouvillian);

double hermiticity_defect(const Eigen::MatrixXcd& rho);

} // namespace qbcool::liouville
