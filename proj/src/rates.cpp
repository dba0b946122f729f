#include "qbcool/rates.hpp"

#include <numbers>
#include <stdexcept>

namespace qbcool::model {

RateTable compute_rates(const DressedBasis& basis, const SystemParams& params) {
    const double s2 = std::numbers::sqrt2;
    const double gam = params.gamma;
    const double plus = 1.0 + params.chi_r;
    const double minus = 1.0 - params.chi_r;
    const double a = basis.a_bar, b = basis.b_bar;
    const double c = basis.c_bar, d = basis.d_bar;
    const double a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d;
    const double q = a * d + b * c;

    RateTable r;
    r.gamma1_0 = gam * c2 * plus;
    r.gamma1_1 = gam * ((a2 + 2.0 * c2) * plus + 0.5 * minus);
    r.gamma1_2 = gam * (c2 * plus - 0.5 * minus);
    r.gamma1_3 = gam * plus * (c2 - a2);
    r.gamma1_11 = gam * (plus * (a * q / s2 + s2 * d * c2) + d / (2.0 * s2) * minus);

    r.gamma2_0 = gam * d2 * minus;
    r.gamma2_1 = gam * minus * (0.5 - d2);
    r.gamma2_2 = gam * minus * (0.5 + b2 + 2.0 * d2);
    r.gamma2_3 = gam * minus * (b2 - d2);
    r.gamma2_11 = gam * d * minus / s2;

    r.gamma3_0 = 2.0 * gam * q * q * plus;
    r.gamma3_1 = gam * (a2 - 2.0 * q * q) * plus;
    r.gamma3_2 = gam * (2.0 * q * q * plus - b2 * minus);
    r.gamma3_3 = 2.0 * gam * ((2.0 * q * q + 0.5 * a2) * plus + 0.5 * b2 * minus);
    r.gamma3_11 = s2 * a * gam * q * plus;

    r.gamma4_4 = gam * ((4.0 * a2 * b2 + q * q + a2 + 0.5 * c2) * plus + (0.5 + b2) * 0.5 * minus);
    r.gamma4_8 = gam * ((s2 * c * (2.0 * a * b + c * d) + a * q / s2) * plus + d / (2.0 * s2) * minus);
    r.gamma5_5 = r.gamma4_4;
    r.gamma5_9 = r.gamma4_8;
    r.gamma6_6 = r.gamma5_5;
    r.gamma6_12 = r.gamma5_9;
    r.gamma7_7 = r.gamma6_6;
    r.gamma7_13 = r.gamma6_12;

    r.gamma8_4 = gam * ((s2 * c * (c * d - 2.0 * a * b) + a * q / s2) * plus + d / (2.0 * s2) * minus);
    r.gamma8_8 = gam * ((4.0 * (a * b - c * d) * (a * b - c * d) + 2.0 * q * q + 0.5 * a2 + 0.5 * c2) * plus
                        + (d2 + b2) * 0.5 * minus);
    r.gamma9_5 = r.gamma8_4;
    r.gamma9_9 = r.gamma8_8;

    r.gamma10_10 = gam * ((4.0 * c2 * d2 + q * q + 0.5 * a2) * plus + (0.5 + d2) * 0.5 * minus);

    r.gamma11_0 = 2.0 * gam * ((3.0 * s2 * d * c2 + a * q / s2) * plus + d / (2.0 * s2) * minus);
    r.gamma11_1 = 2.0 * s2 * gam * d * c2 * plus;
    r.gamma11_2 = 2.0 * gam * ((3.0 * s2 * d * c2 + a * q / s2) * plus - d / (2.0 * s2) * minus);
    r.gamma11_3 = 2.0 * gam * ((3.0 * s2 * d * c2 - a * q / s2) * plus + d / (2.0 * s2) * minus);
    r.gamma11_11 = gam * ((4.0 * c2 * d2 + q * q + 0.5 * a2 + 2.0 * c2) * plus + (0.5 + d2) * 0.5 * minus);

    r.gamma12_6 = r.gamma8_4;
    r.gamma12_12 = r.gamma8_8;
    r.gamma13_7 = r.gamma8_4;
    r.gamma13_13 = r.gamma8_8;

    // diagonal loss rates are sums of squares scaled by nonnegative factors
    const double diag[] = {r.gamma1_1, r.gamma2_2, r.gamma3_3, r.gamma4_4, r.gamma5_5,
                           r.gamma6_6, r.gamma7_7, r.gamma8_8, r.gamma9_9, r.gamma10_10,
                           r.gamma11_11, r.gamma12_12, r.gamma13_13};
    for (double v : diag) {
        if (!(v >= 0.0)) throw std::logic_error("compute_rates: negative diagonal loss rate");
    }
    return r;
}

} // namespace qbcool::model
