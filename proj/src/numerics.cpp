#include "qbcool/numerics.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace qbcool::num {

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

SparseMatrixXc assemble(Eigen::Index dim, std::vector<TripletXc> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](const TripletXc& x, const TripletXc& y) {
        return x.col() != y.col() ? x.col() < y.col() : x.row() < y.row();
    });
    std::vector<TripletXc> merged;
    merged.reserve(triplets.size());
    for (const auto& t : triplets) {
        if (t.row() < 0 || t.row() >= dim || t.col() < 0 || t.col() >= dim) {
            throw std::invalid_argument("assemble: triplet index out of range");
        }
        if (!merged.empty() && merged.back().row() == t.row() && merged.back().col() == t.col()) {
            merged.back() = TripletXc(t.row(), t.col(), merged.back().value() + t.value());
        } else {
            merged.push_back(t);
        }
    }
    SparseMatrixXc m(dim, dim);
    m.setFromTriplets(merged.begin(), merged.end());
    m.makeCompressed();
    return m;
}

double infinity_norm(const SparseMatrixXc& m) {
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(m.rows());
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrixXc::InnerIterator it(m, k); it; ++it) {
            row_sums(it.row()) += std::abs(it.value());
        }
    }
    return m.rows() > 0 ? row_sums.maxCoeff() : 0.0;
}

std::pair<VectorXc, SolveReport> solve_constrained_nullspace(const SparseMatrixXc& a,
                                                             const VectorXc& constraint,
                                                             Complex rhs_value,
                                                             Eigen::Index replace_row) {
    const auto start = std::chrono::steady_clock::now();
    const Eigen::Index dim = a.rows();
    if (a.cols() != dim) throw std::invalid_argument("solve_constrained_nullspace: matrix not square");
    if (constraint.size() != dim) throw std::invalid_argument("solve_constrained_nullspace: constraint size mismatch");
    if (replace_row < 0 || replace_row >= dim) throw std::invalid_argument("solve_constrained_nullspace: row out of range");

    std::vector<TripletXc> triplets;
    triplets.reserve(a.nonZeros() + dim);
    for (int k = 0; k < a.outerSize(); ++k) {
        for (SparseMatrixXc::InnerIterator it(a, k); it; ++it) {
            if (it.row() != replace_row) triplets.emplace_back(it.row(), it.col(), it.value());
        }
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
        if (constraint(j) != Complex(0.0)) triplets.emplace_back(replace_row, j, constraint(j));
    }
    const SparseMatrixXc modified = assemble(dim, std::move(triplets));

    VectorXc rhs = VectorXc::Zero(dim);
    rhs(replace_row) = rhs_value;

    SolveReport report;
    VectorXc x;
    if (dim <= 2000) {
        Eigen::MatrixXcd dense(modified);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(dense);
        x = lu.solve(rhs);
        const auto diag = lu.matrixLU().diagonal();
        double log_sum = 0.0;
        double min_abs = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double v = std::abs(diag(i));
            min_abs = std::min(min_abs, v);
            log_sum += v > 0.0 ? std::log10(v) : -std::numeric_limits<double>::infinity();
        }
        if (min_abs == 0.0 || !x.allFinite()) {
            throw solve_error("solve_constrained_nullspace: singular after row replacement "
                              "(kernel dimension > 1 or constraint orthogonal to kernel)",
                              std::numeric_limits<double>::infinity());
        }
        report.pivot_health = log_sum / static_cast<double>(dim);
    } else {
        Eigen::SparseLU<SparseMatrixXc> lu;
        lu.compute(modified);
        if (lu.info() != Eigen::Success) {
            throw solve_error("solve_constrained_nullspace: singular after row replacement "
                              "(kernel dimension > 1 or constraint orthogonal to kernel)",
                              std::numeric_limits<double>::infinity());
        }
        x = lu.solve(rhs);
        if (!x.allFinite()) {
            throw solve_error("solve_constrained_nullspace: non-finite solution", std::numeric_limits<double>::infinity());
        }
        report.pivot_health = lu.logAbsDeterminant() / std::numbers::ln10 / static_cast<double>(dim);
    }

    report.residual = (a * x).cwiseAbs().maxCoeff();
    report.kernel_dim = 1;
    report.wall_seconds = elapsed_seconds(start);
    return {std::move(x), report};
}

namespace {

// One TR-BDF2 step for x' = A x. Both stages share the factorization of
// (I - d h A) with d = 1 - 1/sqrt(2).
struct TrBdf2Stepper {
    const SparseMatrixXc* a{nullptr};
    double h{-1.0};
    bool dense{false};
    Eigen::SparseLU<SparseMatrixXc> sparse_lu;
    Eigen::PartialPivLU<Eigen::MatrixXcd> dense_lu;

    static constexpr double kD = 1.0 - std::numbers::sqrt2 / 2.0;
    static constexpr double kC1 = (std::numbers::sqrt2 + 1.0) / 2.0;
    static constexpr double kC0 = -(std::numbers::sqrt2 - 1.0) / 2.0;

    void prepare(const SparseMatrixXc& matrix, double step) {
        if (a == &matrix && h == step) return;
        a = &matrix;
        h = step;
        const Eigen::Index dim = matrix.rows();
        SparseMatrixXc identity(dim, dim);
        identity.setIdentity();
        SparseMatrixXc system = identity - Complex(kD * step) * matrix;
        dense = dim <= 512;
        if (dense) {
            dense_lu.compute(Eigen::MatrixXcd(system));
        } else {
            sparse_lu.compute(system);
            if (sparse_lu.info() != Eigen::Success) {
                throw solve_error("integrate_stiff_linear: stage factorization failed", 0.0);
            }
        }
    }

    VectorXc solve(const VectorXc& rhs) const {
        return dense ? dense_lu.solve(rhs) : sparse_lu.solve(rhs);
    }

    VectorXc step(const VectorXc& x) const {
        const VectorXc ax = (*a) * x;
        const VectorXc stage1 = solve(x + Complex(kD * h) * ax);
        return solve(Complex(kC1) * stage1 + Complex(kC0) * x);
    }
};

} // namespace

VectorXc integrate_stiff_linear(const SparseMatrixXc& a, const VectorXc& x0,
                                double t_final, double rel_tol) {
    if (a.rows() != a.cols() || a.rows() != x0.size()) {
        throw std::invalid_argument("integrate_stiff_linear: dimension mismatch");
    }
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
        throw std::invalid_argument("integrate_stiff_linear: t_final must be finite and >= 0");
    }
    if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate_stiff_linear: rel_tol must be > 0");
    if (t_final == 0.0) return x0;

    const double norm_a = infinity_norm(a);
    double h = norm_a > 0.0 ? std::min(t_final, 0.1 / norm_a) : t_final;
    double t = 0.0;
    VectorXc x = x0;
    TrBdf2Stepper coarse, fine;

    const double h_min = t_final * 1e-14;
    while (t < t_final) {
        h = std::min(h, t_final - t);
        if (h < h_min) {
            throw solve_error("integrate_stiff_linear: step size underflow at t = " + std::to_string(t)
                              + "; consider a looser rel_tol", h);
        }
        coarse.prepare(a, h);
        fine.prepare(a, 0.5 * h);
        const VectorXc one_step = coarse.step(x);
        const VectorXc two_steps = fine.step(fine.step(x));
        const double scale = std::max({two_steps.cwiseAbs().maxCoeff(), x.cwiseAbs().maxCoeff(), 1e-300});
        const double err = (one_step - two_steps).cwiseAbs().maxCoeff() / scale;
        // Error per unit step with a floor, so local control stays above the
        // rounding noise of the stage solves on long horizons.
        const double tol_step = rel_tol * std::max(h / t_final, 0.02);
        const bool accepted = err <= tol_step || h <= 2.0 * h_min;
        if (accepted) {
            x = two_steps;
            t += h;
        }
        const double growth = err > 1e-14 ? 0.9 * std::cbrt(tol_step / err) : 4.0;
        const double h_new = h * std::clamp(growth, 0.1, 4.0);
        // keep the cached factorizations while the step barely changes
        if (!accepted || h_new > 1.3 * h || h_new < 0.9 * h) h = h_new;
    }
    return x;
}

} // namespace qbcool::num
