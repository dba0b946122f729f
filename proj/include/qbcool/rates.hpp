// rates.hpp — Decay-rate coefficients of the reduced equations of motion

#pragma once

#include "qbcool/dressed.hpp"
#include "qbcool/params.hpp"

namespace qbcool::model {

// gammaI_J couples family J into the equation of motion of family I.
// Several coefficients are exact aliases of others; those are copied,
// not recomputed, so the aliases hold bit-exactly.
struct RateTable {
    double gamma1_0{}, gamma1_1{}, gamma1_2{}, gamma1_3{}, gamma1_11{};
    double gamma2_0{}, gamma2_1{}, gamma2_2{}, gamma2_3{}, gamma2_11{};
    double gamma3_0{}, gamma3_1{}, gamma3_2{}, gamma3_3{}, gamma3_11{};
    double gamma4_4{}, gamma4_8{};
    double gamma5_5{}, gamma5_9{};
    double gamma6_6{}, gamma6_12{};
    double gamma7_7{}, gamma7_13{};
    double gamma8_4{}, gamma8_8{};
    double gamma9_5{}, gamma9_9{};
    double gamma10_10{};
    double gamma11_0{}, gamma11_1{}, gamma11_2{}, gamma11_3{}, gamma11_11{};
    double gamma12_6{}, gamma12_12{};
    double gamma13_7{}, gamma13_13{};
};

RateTable compute_rates(const DressedBasis& basis, const SystemParams& params);

} // namespace qbcool::model
