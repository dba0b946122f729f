// numerics.hpp — Sparse assembly, constrained null-space solves, stiff linear integration

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbcool::num {

using Complex = std::complex<double>;
using SparseMatrixXc = Eigen::SparseMatrix<Complex>;
using TripletXc = Eigen::Triplet<Complex>;
using VectorXc = Eigen::VectorXcd;

// Solver failure carrying the residual that was reached.
class solve_error : public std::runtime_error {
public:
    solve_error(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

struct SolveReport {
    double residual{0.0};       // ||A x||_inf over the original matrix
    int kernel_dim{0};          // estimated null-space dimension
    double pivot_health{0.0};   // mean log10 |pivot| of the factorization
    double wall_seconds{0.0};
};

// Compress triplets into a sparse matrix. Duplicates are summed in canonical
// (column, row) order, so the result is independent of insertion order.
SparseMatrixXc assemble(Eigen::Index dim, std::vector<TripletXc> triplets);

// Induced infinity norm: max over rows of the absolute row sum.
double infinity_norm(const SparseMatrixXc& m);

// Solve A x = 0 subject to constraint . x = rhs_value by replacing the row
// `replace_row` of A with the constraint. Requires a one-dimensional kernel;
// a singular factorization after replacement raises solve_error.
std::pair<VectorXc, SolveReport> solve_constrained_nullspace(const SparseMatrixXc& a,
                                                             const VectorXc& constraint,
                                                             Complex rhs_value,
                                                             Eigen::Index replace_row);

// Integrate x' = A x from x0 to t_final with an L-stable one-step scheme
// (TR-BDF2) and step-doubling error control. The accumulated local error is
// held near rel_tol over the whole interval.
VectorXc integrate_stiff_linear(const SparseMatrixXc& a, const VectorXc& x0,
                                double t_final, double rel_tol);

} // namespace qbcool::num
