// entanglement.hpp — Bare-basis two-qubit reconstruction and concurrence

#pragma once

#include <Eigen/Dense>

#include <array>

#include "qbcool/dressed.hpp"
#include "qbcool/params.hpp"
#include "qbcool/reduced.hpp"

namespace qbcool::ent {

using num::Complex;

// Two-qubit density matrix over {|2_1 2_2>, |2_1 1_2>, |1_1 2_2>, |1_1 1_2>},
// symmetric under qubit exchange by construction.
struct BareDensityMatrix {
    Eigen::Matrix4cd rho;
    double psd_defect{0.0}; // magnitude of the most negative eigenvalue before clamping
    reduced::QubitMarginals source;
};

// Rebuild the bare-basis matrix from the dressed marginals. Defects beyond
// 1e-4 signal an upstream bug or a regime breakdown and raise; smaller ones
// are clamped with renormalization and recorded.
BareDensityMatrix reconstruct_bare_dm(const reduced::QubitMarginals& marginals,
                                      const model::DressedBasis& basis,
                                      const model::SystemParams& params);

struct ConcurrenceResult {
    double value{0.0};
    std::array<double, 4> s{}; // square-rooted eigenvalues, descending
    double psd_defect{0.0};
};

ConcurrenceResult concurrence(const BareDensityMatrix& rho);

// Population of the symmetric Dicke state (|21> + |12>)/sqrt(2).
double symmetric_population(const BareDensityMatrix& rho);

} // namespace qbcool::ent
