#include "qbcool/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbcool::ent {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

Eigen::Matrix4cd spin_flip_kernel() {
    // sigma_y x sigma_y over the bare product basis
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
}

} // namespace

BareDensityMatrix reconstruct_bare_dm(const reduced::QubitMarginals& marginals,
                                      const model::DressedBasis& basis,
                                      const model::SystemParams& params) {
    const double p11 = marginals.rho11;
    const double p22 = marginals.rho22;
    const double p33 = marginals.rho33;
    const double p44 = marginals.rho44;
    const Complex r14 = 0.5 * (marginals.coh_plus + marginals.coh_minus);
    const Complex r41 = 0.5 * (marginals.coh_plus - marginals.coh_minus);

    const double root = std::sqrt(params.omega_dd * params.omega_dd + 16.0 * params.rabi * params.rabi);
    const double f = params.omega_dd / root;
    const double h = params.rabi / root;
    const double a = basis.a_bar;
    const double c = basis.c_bar;

    Eigen::Matrix4cd m;
    const Complex m11 = 0.25 * (1.0 + p11 - p22) - 0.25 * f * (p33 - p44) - a / kSqrt2 * (r41 + r14);
    const Complex m12 = h * (p33 - p44) - c / kSqrt2 * r41;
    const Complex m14 = 0.25 * (1.0 + f) * p44 - a / kSqrt2 * (r41 - r14) + 0.25 * (1.0 - f) * p33
                        - 0.5 * p11;
    const Complex m22 = 0.25 * (1.0 + p22 - p11) + 0.25 * f * (p33 - p44);
    const Complex m23 = 0.25 * (1.0 - f) * p44 - 0.5 * p22 + 0.25 * (1.0 + f) * p33;
    const Complex m24 = h * (p33 - p44) + c / kSqrt2 * r14;
    const Complex m44 = 0.25 * (1.0 + p11 - p22) - 0.25 * f * (p33 - p44) + a / kSqrt2 * (r41 + r14);

    m << m11,            m12,            m12,            m14,
         std::conj(m12), m22,            m23,            m24,
         std::conj(m12), m23,            m22,            m24,
         std::conj(m14), std::conj(m24), std::conj(m24), m44;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m);
    const double min_eig = solver.eigenvalues().minCoeff();
    const double defect = min_eig < 0.0 ? -min_eig : 0.0;
    if (defect > 1e-4) {
        throw std::runtime_error("reconstruct_bare_dm: reconstruction inconsistency, PSD defect "
                                 + std::to_string(defect));
    }
    if (defect > 0.0) {
        Eigen::Vector4d clamped = solver.eigenvalues().cwiseMax(0.0);
        clamped /= clamped.sum();
        m = solver.eigenvectors() * clamped.asDiagonal().toDenseMatrix().cast<Complex>()
            * solver.eigenvectors().adjoint();
    }

    BareDensityMatrix out;
    out.rho = m;
    out.psd_defect = defect;
    out.source = marginals;
    return out;
}

ConcurrenceResult concurrence(const BareDensityMatrix& rho) {
    const Eigen::Matrix4cd yy = spin_flip_kernel();
    const Eigen::Matrix4cd q = rho.rho * yy * rho.rho.conjugate() * yy;

    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(q, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("concurrence: eigenvalue computation failed");
    }

    ConcurrenceResult out;
    out.psd_defect = rho.psd_defect;
    std::array<double, 4> values{};
    for (int i = 0; i < 4; ++i) {
        const Complex ev = solver.eigenvalues()(i);
        if (std::abs(ev.imag()) > 1e-8) {
            throw std::runtime_error("concurrence: complex eigenvalue residue "
                                     + std::to_string(ev.imag()));
        }
        double real = ev.real();
        if (real < 0.0) {
            if (real < -1e-10) {
                throw std::runtime_error("concurrence: negative eigenvalue beyond tolerance "
                                         + std::to_string(real));
            }
            real = 0.0;
        }
        values[i] = std::sqrt(real);
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    out.s = values;
    out.value = std::max(0.0, values[0] - values[1] - values[2] - values[3]);
    return out;
}

double symmetric_population(const BareDensityMatrix& rho) {
    return rho.rho(1, 1).real() + rho.rho(1, 2).real();
}

} // namespace qbcool::ent
