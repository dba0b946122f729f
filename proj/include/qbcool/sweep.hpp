// sweep.hpp — Parameter sweeps, config parsing, CSV/JSON emission, validation runs

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qbcool/entanglement.hpp"
#include "qbcool/params.hpp"
#include "qbcool/reduced.hpp"

namespace qbcool::sweep {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SweepVariable { rabi_over_omegadd, delta, nbar, g };
enum class Scale { linear, log };

struct SweepConfig {
    model::SystemParams base{};
    SweepVariable variable{SweepVariable::rabi_over_omegadd};
    double start{0.005};
    double stop{0.3};
    int points{60};
    Scale scale{Scale::linear};
    std::optional<int> n_max{};   // absent -> automatic selection
    int n_max_cap{4096};
    bool with_and_without_g{false};
    bool run_oracle{false};
    std::string out{};
    std::string format{"csv"};
    double validation_threshold{1e-6};

    void validate() const;
};

// Flat key=value text; '#' starts a comment; unknown keys are errors.
SweepConfig parse_config(std::istream& in);
SweepConfig parse_config_file(const std::string& path);

// One fully solved parameter point: steady state, boson observables,
// marginals, reconstruction and concurrence.
struct PointResult {
    model::SystemParams params;
    int n_max{0};
    double residual{0.0};
    double mean_n{0.0};
    double g2{0.0}; // nan when the mean occupation vanishes
    reduced::QubitMarginals marginals;
    double concurrence{0.0};
    double pi_s{0.0};
    double psd_defect{0.0};
    double wall_seconds{0.0};
};

// Solves at fixed n_max when given, otherwise doubles the truncation until
// both the thermal-tail bound and the observable-convergence check pass.
PointResult solve_point(const model::SystemParams& params,
                        std::optional<int> n_max_fixed, int n_max_cap);

struct SweepRow {
    double sweep_value{0.0};
    double mean_n{0.0};
    double mean_n_over_nbar{0.0};
    double g2{0.0};
    double concurrence{0.0};
    double pi_s{0.0};
    double rho11{0.0}, rho22{0.0}, rho33{0.0}, rho44{0.0};
    double coh_plus{0.0};
    double coh_minus_imag{0.0};
    int n_max{0};
    double residual{0.0};
    std::string status{"ok"}; // ok | ok_g0 | fail | fail_g0
    std::string message{};    // failure detail, JSON output only
    double wall_seconds{0.0};
    double oracle_dev{std::numeric_limits<double>::quiet_NaN()};
};

std::vector<SweepRow> run_sweep(const SweepConfig& config, int jobs);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);
void write_json(std::ostream& os, const std::vector<SweepRow>& rows, const SweepConfig& config);

// Deterministic shortest-roundtrip formatting at 17 significant digits.
std::string format_double(double v);

struct ValidationPoint {
    double delta{0.0};
    double omega{0.0};
    double mean_reduced{0.0}, mean_dressed{0.0}, mean_bare{0.0};
    double g2_reduced{0.0}, g2_dressed{0.0}, g2_bare{0.0};
    Eigen::Vector4d pops_reduced{}, pops_dressed{}, pops_bare{};
    double dev_reduced_vs_dressed{0.0}; // frame-shared, gated
    double dev_bare_vs_dressed{0.0};    // frame-invariant observables only
    double state_vector_dev{0.0};       // projected oracle state vs reduced state
};

struct ValidationReport {
    std::vector<ValidationPoint> points;
    double g0_max_dev{0.0};   // all three solvers against <b^dag b> = nbar at g = 0
    double max_dev_reduced_vs_dressed{0.0};
    double max_dev_bare_vs_dressed{0.0};
    double threshold{0.0};
    bool threshold_exceeded{false};
};

// Cross-checks the three solvers at a small-occupation configuration over a
// detuning scan. Refuses configurations beyond the oracle dimension cap.
ValidationReport run_validation(const SweepConfig& config);

void write_validation_text(std::ostream& os, const ValidationReport& report);
void write_validation_json(std::ostream& os, const ValidationReport& report, const SweepConfig& config);

} // namespace qbcool::sweep
