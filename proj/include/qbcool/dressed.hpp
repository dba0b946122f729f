// dressed.hpp — Dressed eigenbasis of the driven, dipole-coupled qubit pair

#pragma once

#include <Eigen/Dense>

#include "qbcool/params.hpp"

namespace qbcool::model {

// Bare two-qubit basis ordering used throughout: {|22>, |21>, |12>, |11>}.
// Dressed states |Psi_1..4> diagonalize the drive + dipole-dipole Hamiltonian.
struct DressedBasis {
    double lambda1{0.0};
    double lambda2{0.0};
    double lambda3{0.0};
    double lambda4{0.0};
    double a_bar{0.0}; // |Psi_4> = -a(|22>+|11>) + b(|21>+|12>)
    double b_bar{0.0};
    double c_bar{0.0}; // |Psi_3> = -c(|22>+|11>) + d(|21>+|12>)
    double d_bar{0.0};
    Eigen::Matrix4d transform{Eigen::Matrix4d::Zero()}; // row j: |Psi_{j+1}> over the bare basis
    double g_eff{0.0}; // sqrt(2) g c_bar
    double delta{0.0}; // lambda3 - omega unless overridden
};

// Drive + dipole-dipole Hamiltonian in the bare basis, units of gamma.
Eigen::Matrix4d interaction_hamiltonian(const SystemParams& params);

// Closed-form diagonalization. The rabi -> 0 limit is taken analytically
// (c_bar -> 0, d_bar -> 1/sqrt(2)), so rabi = 0 is a regular input.
DressedBasis build_dressed_basis(const SystemParams& params);

} // namespace qbcool::model
