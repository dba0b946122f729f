#include "qbcool/dressed.hpp"

#include <cmath>
#include <numbers>

namespace qbcool::model {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
}

Eigen::Matrix4d interaction_hamiltonian(const SystemParams& params) {
    const double w = params.rabi;
    const double odd = params.omega_dd;
    Eigen::Matrix4d h;
    h << 0.0, w,   w,   0.0,
         w,   0.0, odd, w,
         w,   odd, 0.0, w,
         0.0, w,   w,   0.0;
    return h;
}

DressedBasis build_dressed_basis(const SystemParams& params) {
    params.validate();
    const double odd = params.omega_dd;
    const double w = params.rabi;
    const double root = std::sqrt(odd * odd + 16.0 * w * w);

    DressedBasis basis;
    basis.lambda1 = 0.0;
    basis.lambda2 = -odd;
    basis.lambda3 = 0.5 * (odd + root);
    basis.lambda4 = 0.5 * (odd - root);

    if (w == 0.0) {
        basis.a_bar = 1.0 / kSqrt2;
        basis.b_bar = 0.0;
        basis.c_bar = 0.0;
        basis.d_bar = 1.0 / kSqrt2;
    } else {
        auto coefficients = [&](double lambda, double& u, double& v) {
            const double den = std::sqrt((odd - lambda) * (odd - lambda) + 4.0 * w * w);
            u = (odd - lambda) / kSqrt2 / den;
            v = kSqrt2 * w / den;
        };
        coefficients(basis.lambda4, basis.a_bar, basis.b_bar);
        coefficients(basis.lambda3, basis.c_bar, basis.d_bar);
    }

    const double a = basis.a_bar, b = basis.b_bar;
    const double c = basis.c_bar, d = basis.d_bar;
    basis.transform << 1.0 / kSqrt2, 0.0,          0.0,          -1.0 / kSqrt2,
                       0.0,          1.0 / kSqrt2, -1.0 / kSqrt2, 0.0,
                       -c,           d,            d,             -c,
                       -a,           b,            b,             -a;

    basis.g_eff = kSqrt2 * params.g * basis.c_bar;
    basis.delta = params.delta_override.value_or(basis.lambda3 - params.omega);
    return basis;
}

} // namespace qbcool::model
