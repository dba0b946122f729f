#include "qbcool/liouville.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qbcool::liouville {

namespace {

using num::SparseMatrixXc;
using num::TripletXc;
using num::VectorXc;

constexpr double kSqrt2 = std::numbers::sqrt2;

// c * A rho B, the building block of every generator term
struct ProductTerm {
    Complex c;
    SparseMatrixXc a;
    SparseMatrixXc b;
};

SparseMatrixXc sparse_from_dense4(const Eigen::Matrix4cd& m) {
    SparseMatrixXc s(4, 4);
    std::vector<TripletXc> t;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (m(i, j) != Complex(0.0)) t.emplace_back(i, j, m(i, j));
        }
    }
    s.setFromTriplets(t.begin(), t.end());
    return s;
}

SparseMatrixXc qubit_unit(int alpha, int beta) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(alpha, beta) = 1.0;
    return sparse_from_dense4(m);
}

SparseMatrixXc identity(Eigen::Index dim) {
    SparseMatrixXc m(dim, dim);
    m.setIdentity();
    return m;
}

SparseMatrixXc annihilator(int n_max) {
    SparseMatrixXc b(n_max + 1, n_max + 1);
    std::vector<TripletXc> t;
    for (int n = 1; n <= n_max; ++n) t.emplace_back(n - 1, n, Complex(std::sqrt(double(n))));
    b.setFromTriplets(t.begin(), t.end());
    return b;
}

SparseMatrixXc number_operator(int n_max) {
    SparseMatrixXc m(n_max + 1, n_max + 1);
    std::vector<TripletXc> t;
    for (int n = 1; n <= n_max; ++n) t.emplace_back(n, n, Complex(double(n)));
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

SparseMatrixXc kron(const SparseMatrixXc& q, const SparseMatrixXc& f) {
    SparseMatrixXc out(q.rows() * f.rows(), q.cols() * f.cols());
    std::vector<TripletXc> t;
    t.reserve(static_cast<std::size_t>(q.nonZeros()) * f.nonZeros());
    for (int kq = 0; kq < q.outerSize(); ++kq) {
        for (SparseMatrixXc::InnerIterator iq(q, kq); iq; ++iq) {
            for (int kf = 0; kf < f.outerSize(); ++kf) {
                for (SparseMatrixXc::InnerIterator jf(f, kf); jf; ++jf) {
                    t.emplace_back(iq.row() * f.rows() + jf.row(),
                                   iq.col() * f.cols() + jf.col(),
                                   iq.value() * jf.value());
                }
            }
        }
    }
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

void append_commutator(std::vector<ProductTerm>& terms, Complex c,
                       const SparseMatrixXc& x, const SparseMatrixXc& y,
                       const SparseMatrixXc& id) {
    terms.push_back({c, SparseMatrixXc(x * y), id}); // c X Y rho
    terms.push_back({-c, y, x});                     // -c Y rho X
}

void append_hamiltonian(std::vector<ProductTerm>& terms, const SparseMatrixXc& h,
                        const SparseMatrixXc& id) {
    terms.push_back({Complex(0.0, -1.0), h, id});
    terms.push_back({Complex(0.0, 1.0), id, h});
}

// Hermitian-conjugate partner of every dissipator term, for Hermitian rho:
// (c A rho B)^dagger = conj(c) B^dagger rho A^dagger.
void append_hermitian_conjugates(std::vector<ProductTerm>& terms, std::size_t first) {
    const std::size_t count = terms.size();
    for (std::size_t k = first; k < count; ++k) {
        const auto& t = terms[k];
        terms.push_back({std::conj(t.c), SparseMatrixXc(t.b.adjoint()), SparseMatrixXc(t.a.adjoint())});
    }
}

// vec(A rho B) = (B^T kron A) vec(rho), column-major vec
SparseMatrixXc superoperator_from_terms(const std::vector<ProductTerm>& terms, Eigen::Index dim) {
    std::vector<TripletXc> triplets;
    for (const auto& term : terms) {
        for (int ka = 0; ka < term.a.outerSize(); ++ka) {
            for (SparseMatrixXc::InnerIterator ia(term.a, ka); ia; ++ia) {
                for (int kb = 0; kb < term.b.outerSize(); ++kb) {
                    for (SparseMatrixXc::InnerIterator ib(term.b, kb); ib; ++ib) {
                        // rho index (k, l) feeds output index (i, j):
                        // S[i + dim j, k + dim l] += c A(i, k) B(l, j)
                        triplets.emplace_back(ia.row() + dim * ib.col(),
                                              ia.col() + dim * ib.row(),
                                              term.c * ia.value() * ib.value());
                    }
                }
            }
        }
    }
    return num::assemble(dim * dim, std::move(triplets));
}

void check_oracle_cap(const model::FockTruncation& trunc) {
    trunc.validate();
    if (trunc.n_max > kMaxOracleFockLevels) {
        throw std::invalid_argument("liouville: n_max exceeds the superoperator dimension cap ("
                                    + std::to_string(kMaxOracleFockLevels) + ")");
    }
}

} // namespace

Superoperator build_bare_liouvillian(const model::SystemParams& params,
                                     const model::FockTruncation& trunc) {
    params.validate();
    check_oracle_cap(trunc);
    const int nf = trunc.n_max + 1;
    const Eigen::Index dim = 4 * nf;

    const SparseMatrixXc id_f = identity(nf);
    const SparseMatrixXc id4 = identity(4);
    const SparseMatrixXc id = identity(dim);
    const SparseMatrixXc b = annihilator(trunc.n_max);
    const SparseMatrixXc bdag(b.adjoint());
    const SparseMatrixXc num_op = number_operator(trunc.n_max);

    // qubit operators over {|22>,|21>,|12>,|11>}
    Eigen::Matrix4cd s1p_m = Eigen::Matrix4cd::Zero();
    s1p_m(0, 2) = 1.0;
    s1p_m(1, 3) = 1.0;
    Eigen::Matrix4cd s2p_m = Eigen::Matrix4cd::Zero();
    s2p_m(0, 1) = 1.0;
    s2p_m(2, 3) = 1.0;
    const SparseMatrixXc s1p = kron(sparse_from_dense4(s1p_m), id_f);
    const SparseMatrixXc s2p = kron(sparse_from_dense4(s2p_m), id_f);
    const SparseMatrixXc s1m(s1p.adjoint());
    const SparseMatrixXc s2m(s2p.adjoint());
    Eigen::Matrix4cd sz_m = Eigen::Matrix4cd::Zero();
    sz_m(0, 0) = 1.0;
    sz_m(3, 3) = -1.0;

    const Eigen::Matrix4d h_i = model::interaction_hamiltonian(params);
    SparseMatrixXc h = kron(id4, SparseMatrixXc(Complex(params.omega) * num_op));
    h = h + kron(sparse_from_dense4(sz_m), SparseMatrixXc(Complex(params.g) * (b + bdag)));
    h = h + kron(sparse_from_dense4(h_i.cast<Complex>()), id_f);

    std::vector<ProductTerm> terms;
    append_hamiltonian(terms, h, id);

    const std::size_t dissipator_start = terms.size();
    const double g_same = params.gamma / 2.0;
    const double g_cross = params.gamma * params.chi_r / 2.0;
    const SparseMatrixXc* sp[2] = {&s1p, &s2p};
    const SparseMatrixXc* sm[2] = {&s1m, &s2m};
    for (int j = 0; j < 2; ++j) {
        for (int l = 0; l < 2; ++l) {
            const double rate = (j == l) ? g_same : g_cross;
            append_commutator(terms, Complex(-rate), *sp[j], *sm[l], id);
        }
    }
    const SparseMatrixXc bf = kron(id4, b);
    const SparseMatrixXc bfdag = kron(id4, bdag);
    append_commutator(terms, Complex(-params.kappa / 2.0 * (1.0 + params.nbar)), bfdag, bf, id);
    append_commutator(terms, Complex(-params.kappa / 2.0 * params.nbar), bf, bfdag, id);
    append_hermitian_conjugates(terms, dissipator_start);

    Superoperator out;
    out.matrix = superoperator_from_terms(terms, dim);
    out.basis = Basis::bare;
    out.n_max = trunc.n_max;
    out.equation = 1;
    out.params = params;
    return out;
}

Superoperator build_dressed_liouvillian(const model::SystemParams& params,
                                        const model::DressedBasis& basis,
                                        const model::FockTruncation& trunc) {
    params.validate();
    check_oracle_cap(trunc);
    const int nf = trunc.n_max + 1;
    const Eigen::Index dim = 4 * nf;

    const SparseMatrixXc id_f = identity(nf);
    const SparseMatrixXc id = identity(dim);
    const SparseMatrixXc b = annihilator(trunc.n_max);
    const SparseMatrixXc bdag(b.adjoint());
    const SparseMatrixXc num_op = number_operator(trunc.n_max);

    // R_{alpha beta} = |Psi_alpha><Psi_beta| x identity, indices 1..4
    auto r_op = [&](int alpha, int beta) { return kron(qubit_unit(alpha - 1, beta - 1), id_f); };

    const double a = basis.a_bar, bb = basis.b_bar;
    const double c = basis.c_bar, d = basis.d_bar;
    const double q = a * d + bb * c;

    // R31 b + b^dagger R13
    const SparseMatrixXc jaynes = kron(qubit_unit(2, 0), b) + kron(qubit_unit(0, 2), bdag);
    SparseMatrixXc h = Complex(basis.lambda4) * r_op(4, 4)
                       - kron(identity(4), SparseMatrixXc(Complex(basis.delta) * num_op))
                       - Complex(basis.g_eff) * jaynes;

    std::vector<ProductTerm> terms;
    append_hamiltonian(terms, h, id);

    const std::size_t dissipator_start = terms.size();
    const double pre1 = -params.gamma / 2.0 * (1.0 + params.chi_r);
    const double pre2 = -params.gamma / 2.0 * (1.0 - params.chi_r);

    const SparseMatrixXc v1 = SparseMatrixXc(
        Complex(c * d) * r_op(4, 4) + Complex(a * bb) * r_op(3, 3)
        + Complex(c / (2.0 * kSqrt2)) * (r_op(4, 1) - r_op(1, 4)));
    const SparseMatrixXc w1 = SparseMatrixXc(
        Complex(4.0) * (Complex(c * d) * r_op(4, 4) + Complex(a * bb) * r_op(3, 3))
        + Complex(kSqrt2 * c) * (r_op(1, 4) - r_op(4, 1)));

    append_commutator(terms, Complex(2.0 * pre1), v1, w1, id);
    append_commutator(terms, Complex(2.0 * q * q * pre1), r_op(3, 4), r_op(4, 3), id);
    append_commutator(terms, Complex(2.0 * q * q * pre1), r_op(4, 3), r_op(3, 4), id);
    append_commutator(terms, Complex(a * a * pre1), r_op(1, 3), r_op(3, 1), id);
    append_commutator(terms, Complex(a * a * pre1), r_op(3, 1), r_op(1, 3), id);
    const double mix1 = kSqrt2 * a * q * pre1;
    append_commutator(terms, Complex(-mix1), r_op(4, 3), r_op(3, 1), id);
    append_commutator(terms, Complex(-mix1), r_op(1, 3), r_op(3, 4), id);
    append_commutator(terms, Complex(mix1), r_op(3, 4), r_op(1, 3), id);
    append_commutator(terms, Complex(mix1), r_op(3, 1), r_op(4, 3), id);

    append_commutator(terms, Complex(bb * bb * pre2), r_op(3, 2), r_op(2, 3), id);
    append_commutator(terms, Complex(bb * bb * pre2), r_op(2, 3), r_op(3, 2), id);
    append_commutator(terms, Complex(d * d * pre2), r_op(2, 4), r_op(4, 2), id);
    append_commutator(terms, Complex(d * d * pre2), r_op(4, 2), r_op(2, 4), id);
    append_commutator(terms, Complex(0.5 * pre2), r_op(1, 2), r_op(2, 1), id);
    append_commutator(terms, Complex(0.5 * pre2), r_op(2, 1), r_op(1, 2), id);
    const double mix2 = d / kSqrt2 * pre2;
    append_commutator(terms, Complex(-mix2), r_op(4, 2), r_op(2, 1), id);
    append_commutator(terms, Complex(-mix2), r_op(1, 2), r_op(2, 4), id);
    append_commutator(terms, Complex(mix2), r_op(2, 4), r_op(1, 2), id);
    append_commutator(terms, Complex(mix2), r_op(2, 1), r_op(4, 2), id);

    const SparseMatrixXc bf = kron(identity(4), b);
    const SparseMatrixXc bfdag = kron(identity(4), bdag);
    append_commutator(terms, Complex(-params.kappa / 2.0 * (1.0 + params.nbar)), bfdag, bf, id);
    append_commutator(terms, Complex(-params.kappa / 2.0 * params.nbar), bf, bfdag, id);
    append_hermitian_conjugates(terms, dissipator_start);

    Superoperator out;
    out.matrix = superoperator_from_terms(terms, dim);
    out.basis = Basis::dressed;
    out.n_max = trunc.n_max;
    out.equation = 5;
    out.params = params;
    return out;
}

SteadyStateDmResult steady_state_dm(const Superoperator& liouvillian) {
    const int nf = liouvillian.n_max + 1;
    const Eigen::Index dim = 4 * nf;
    VectorXc constraint = VectorXc::Zero(dim * dim);
    for (Eigen::Index i = 0; i < dim; ++i) constraint(i + dim * i) = Complex(1.0);

    auto [x, report] = num::solve_constrained_nullspace(liouvillian.matrix, constraint, Complex(1.0), 0);

    Eigen::MatrixXcd rho = Eigen::Map<Eigen::MatrixXcd>(x.data(), dim, dim);
    rho = 0.5 * (rho + rho.adjoint().eval());
    rho /= rho.trace();

    const VectorXc vec_rho = Eigen::Map<const VectorXc>(rho.data(), dim * dim);
    report.residual = (liouvillian.matrix * vec_rho).cwiseAbs().maxCoeff();
    if (report.residual > 1e-10) {
        throw num::solve_error("steady_state_dm: residual above 1e-10", report.residual);
    }

    SteadyStateDmResult out;
    out.rho = {std::move(rho), liouvillian.basis, liouvillian.n_max};
    out.report = report;
    return out;
}

reduced::ReducedState project_to_reduced(const FullDensityOperator& rho) {
    if (rho.basis != Basis::dressed) {
        throw std::invalid_argument("project_to_reduced: density operator must be in the dressed basis");
    }
    const int n_max = rho.n_max;
    const int nf = n_max + 1;
    auto el = [&](int alpha, int m, int beta, int n) {
        return rho.rho(alpha * nf + m, beta * nf + n);
    };

    reduced::ReducedState state(Eigen::VectorXcd::Zero(reduced::kFamilies * nf), n_max);
    for (int n = 0; n < nf; ++n) {
        state.p(0, n) = el(0, n, 0, n) + el(1, n, 1, n) + el(2, n, 2, n) + el(3, n, 3, n);
        state.p(1, n) = el(0, n, 0, n);
        state.p(2, n) = el(1, n, 1, n);
        state.p(3, n) = el(2, n, 2, n);
        const double rn = std::sqrt(double(n));
        if (n > 0) {
            state.p(4, n) = rn * (el(2, n - 1, 0, n) - el(0, n, 2, n - 1));
            state.p(5, n) = rn * (el(2, n - 1, 0, n) + el(0, n, 2, n - 1));
            state.p(8, n) = rn * (el(2, n - 1, 3, n) - el(3, n, 2, n - 1));
            state.p(9, n) = rn * (el(2, n - 1, 3, n) + el(3, n, 2, n - 1));
        }
        const double rn1 = std::sqrt(double(n) + 1.0);
        if (n < n_max) {
            state.p(6, n) = rn1 * (el(2, n, 0, n + 1) - el(0, n + 1, 2, n));
            state.p(7, n) = rn1 * (el(2, n, 0, n + 1) + el(0, n + 1, 2, n));
            state.p(12, n) = rn1 * (el(2, n, 3, n + 1) - el(3, n + 1, 2, n));
            state.p(13, n) = rn1 * (el(2, n, 3, n + 1) + el(3, n + 1, 2, n));
        }
        state.p(10, n) = el(0, n, 3, n) - el(3, n, 0, n);
        state.p(11, n) = el(0, n, 3, n) + el(3, n, 0, n);
    }
    return state;
}

namespace {

FullDensityOperator transform_basis(const FullDensityOperator& rho, const model::DressedBasis& basis,
                                    bool to_dressed_basis) {
    const int nf = rho.n_max + 1;
    Eigen::MatrixXd t = basis.transform;
    if (!to_dressed_basis) t.transposeInPlace();
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(4 * nf, 4 * nf);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (t(i, j) != 0.0) {
                big.block(i * nf, j * nf, nf, nf) =
                    Complex(t(i, j)) * Eigen::MatrixXcd::Identity(nf, nf);
            }
        }
    }
    FullDensityOperator out;
    out.rho = big * rho.rho * big.transpose();
    out.basis = to_dressed_basis ? Basis::dressed : Basis::bare;
    out.n_max = rho.n_max;
    return out;
}

} // namespace

FullDensityOperator to_dressed(const FullDensityOperator& rho, const model::DressedBasis& basis) {
    if (rho.basis == Basis::dressed) return rho;
    return transform_basis(rho, basis, true);
}

FullDensityOperator to_bare(const FullDensityOperator& rho, const model::DressedBasis& basis) {
    if (rho.basis == Basis::bare) return rho;
    return transform_basis(rho, basis, false);
}

double mean_phonon(const FullDensityOperator& rho) {
    const int nf = rho.n_max + 1;
    double sum = 0.0;
    for (int q = 0; q < 4; ++q) {
        for (int n = 0; n < nf; ++n) sum += n * rho.rho(q * nf + n, q * nf + n).real();
    }
    return sum;
}

double g2(const FullDensityOperator& rho) {
    const int nf = rho.n_max + 1;
    const double mean = mean_phonon(rho);
    if (mean < 1e-12) throw std::domain_error("g2: undefined statistics, mean occupation below 1e-12");
    double sum = 0.0;
    for (int q = 0; q < 4; ++q) {
        for (int n = 0; n < nf; ++n) sum += n * (n - 1.0) * rho.rho(q * nf + n, q * nf + n).real();
    }
    return sum / (mean * mean);
}

Eigen::Vector4d dressed_populations(const FullDensityOperator& rho) {
    if (rho.basis != Basis::dressed) {
        throw std::invalid_argument("dressed_populations: density operator must be in the dressed basis");
    }
    const int nf = rho.n_max + 1;
    Eigen::Vector4d pops = Eigen::Vector4d::Zero();
    for (int q = 0; q < 4; ++q) {
        for (int n = 0; n < nf; ++n) pops(q) += rho.rho(q * nf + n, q * nf + n).real();
    }
    return pops;
}

double trace_functional_defect(const Superoperator& liouvillian) {
    const Eigen::Index dim = 4 * (liouvillian.n_max + 1);
    VectorXc trace_vec = VectorXc::Zero(dim * dim);
    for (Eigen::Index i = 0; i < dim; ++i) trace_vec(i + dim * i) = Complex(1.0);
    return (liouvillian.matrix.transpose() * trace_vec).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Eigen::MatrixXcd& rho) {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace qbcool::liouville
