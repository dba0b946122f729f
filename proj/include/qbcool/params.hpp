// params.hpp — Physical inputs and Fock-space truncation policy

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace qbcool::model {

// All frequencies and rates are expressed in units of the single-qubit
// spontaneous decay rate gamma. The drive is resonant with the qubit
// transition, so the model lives in the frame rotating at the laser
// frequency and no explicit laser frequency appears anywhere.
struct SystemParams {
    double gamma{1.0};     // single-qubit decay rate (the unit)
    double chi_r{0.98};    // collective radiative coupling, in [0, 1]
    double omega_dd{28.0}; // dipole-dipole shift
    double rabi{0.0};      // Rabi frequency of the coherent drive
    double g{2.0};         // qubit-boson longitudinal coupling
    double omega{30.0};    // boson mode frequency
    double kappa{1e-3};    // boson damping rate
    double nbar{20.0};     // mean thermal occupation of the boson bath
    std::optional<double> delta_override{}; // detuning; absent -> lambda3 - omega

    void validate() const {
        auto fail = [](const std::string& what) {
            throw std::invalid_argument("SystemParams: " + what);
        };
        if (!(gamma > 0.0) || !std::isfinite(gamma)) fail("gamma must be > 0");
        if (!(chi_r >= 0.0 && chi_r <= 1.0)) fail("chi_r must lie in [0, 1]");
        if (!(omega_dd > 0.0) || !std::isfinite(omega_dd)) fail("omega_dd must be > 0");
        if (!(rabi >= 0.0) || !std::isfinite(rabi)) fail("rabi must be >= 0");
        if (!(g >= 0.0) || !std::isfinite(g)) fail("g must be finite and >= 0");
        if (!(omega > 0.0) || !std::isfinite(omega)) fail("omega must be > 0");
        if (!(kappa > 0.0) || !std::isfinite(kappa)) fail("kappa must be > 0");
        if (!(nbar >= 0.0) || !std::isfinite(nbar)) fail("nbar must be >= 0");
        if (delta_override && !std::isfinite(*delta_override)) fail("delta_override must be finite");
    }
};

enum class FockPolicy {
    absorbing // couplings referencing levels above n_max are dropped
};

struct FockTruncation {
    int n_max{1};
    FockPolicy policy{FockPolicy::absorbing};

    void validate() const {
        if (n_max < 1) throw std::invalid_argument("FockTruncation: n_max must be >= 1");
    }
};

// Boltzmann ratio of the thermal distribution P_n ~ r^n.
inline double thermal_ratio(double nbar) {
    return nbar > 0.0 ? nbar / (1.0 + nbar) : 0.0;
}

// Weight of the thermal distribution beyond n_max: sum_{n>n_max} (1-r) r^n = r^{n_max+1}.
inline double thermal_tail_weight(double nbar, int n_max) {
    const double r = thermal_ratio(nbar);
    return r > 0.0 ? std::pow(r, n_max + 1) : 0.0;
}

// Starting point of the automatic truncation search.
inline int auto_n_max_start(double nbar) {
    return static_cast<int>(std::ceil(8.0 * (nbar + 1.0)));
}

} // namespace qbcool::model
