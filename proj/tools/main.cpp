#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qbcool/dressed.hpp"
#include "qbcool/numerics.hpp"
#include "qbcool/rates.hpp"
#include "qbcool/reduced.hpp"
#include "qbcool/selftest.hpp"
#include "qbcool/sweep.hpp"

namespace {

using namespace qbcool;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::string nmax;
    int jobs{1};
};

void add_common(CLI::App* sub, CommonOptions& opt, bool with_jobs = true) {
    sub->add_option("--config", opt.config_path, "path to a key=value config file");
    sub->add_option("--out", opt.out_path, "output path (default: stdout)");
    sub->add_option("--format", opt.format, "output format: csv|json");
    sub->add_option("--nmax", opt.nmax, "Fock truncation: integer or 'auto'");
    if (with_jobs) sub->add_option("--jobs", opt.jobs, "worker threads for sweep points")->check(CLI::PositiveNumber);
}

sweep::SweepConfig load_config(const CommonOptions& opt) {
    sweep::SweepConfig config;
    if (!opt.config_path.empty()) config = sweep::parse_config_file(opt.config_path);
    if (!opt.format.empty()) {
        if (opt.format != "csv" && opt.format != "json") {
            throw sweep::config_error("--format must be csv or json");
        }
        config.format = opt.format;
    }
    if (!opt.out_path.empty()) config.out = opt.out_path;
    if (!opt.nmax.empty()) {
        if (opt.nmax == "auto") {
            config.n_max.reset();
        } else {
            try {
                config.n_max = std::stoi(opt.nmax);
            } catch (const std::exception&) {
                throw sweep::config_error("--nmax expects an integer or 'auto'");
            }
            if (*config.n_max < 1) throw sweep::config_error("--nmax must be >= 1");
        }
    }
    return config;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw sweep::config_error("cannot open output file '" + path + "'");
    return out;
}

int cmd_sweep(const CommonOptions& opt) {
    const auto config = load_config(opt);
    const auto rows = sweep::run_sweep(config, opt.jobs);
    auto emit = [&](std::ostream& os) {
        if (config.format == "json") {
            sweep::write_json(os, rows, config);
        } else {
            sweep::write_csv(os, rows);
        }
    };
    if (config.out.empty()) {
        emit(std::cout);
    } else {
        auto out = open_output(config.out);
        emit(out);
    }
    for (const auto& r : rows) {
        if (r.status == "fail" || r.status == "fail_g0") return 2;
    }
    return 0;
}

int cmd_point(const CommonOptions& opt, double evolve_time) {
    const auto config = load_config(opt);
    const auto point = sweep::solve_point(config.base, config.n_max, config.n_max_cap);
    const auto basis = model::build_dressed_basis(config.base);

    auto print_text = [&](std::ostream& os) {
        os << "lambda3 = " << sweep::format_double(basis.lambda3)
           << "  lambda4 = " << sweep::format_double(basis.lambda4)
           << "  g_eff = " << sweep::format_double(basis.g_eff)
           << "  delta = " << sweep::format_double(basis.delta) << '\n';
        os << "n_max = " << point.n_max
           << "  residual = " << sweep::format_double(point.residual) << '\n';
        os << "mean_n = " << sweep::format_double(point.mean_n);
        if (config.base.nbar > 0.0) {
            os << "  mean_n/nbar = " << sweep::format_double(point.mean_n / config.base.nbar);
        }
        os << "  g2 = " << sweep::format_double(point.g2) << '\n';
        os << "rho11 = " << sweep::format_double(point.marginals.rho11)
           << "  rho22 = " << sweep::format_double(point.marginals.rho22)
           << "  rho33 = " << sweep::format_double(point.marginals.rho33)
           << "  rho44 = " << sweep::format_double(point.marginals.rho44) << '\n';
        os << "coh_plus = " << sweep::format_double(point.marginals.coh_plus.real())
           << "  coh_minus_imag = " << sweep::format_double(point.marginals.coh_minus.imag()) << '\n';
        os << "concurrence = " << sweep::format_double(point.concurrence)
           << "  pi_s = " << sweep::format_double(point.pi_s)
           << "  psd_defect = " << sweep::format_double(point.psd_defect) << '\n';
    };

    auto row = [&](const sweep::PointResult& p) {
        std::vector<sweep::SweepRow> rows;
        rows.resize(1);
        auto& r = rows[0];
        r.sweep_value = config.base.rabi / config.base.omega_dd;
        r.mean_n = p.mean_n;
        r.mean_n_over_nbar = config.base.nbar > 0.0 ? p.mean_n / config.base.nbar
                                                    : std::numeric_limits<double>::quiet_NaN();
        r.g2 = p.g2;
        r.concurrence = p.concurrence;
        r.pi_s = p.pi_s;
        r.rho11 = p.marginals.rho11;
        r.rho22 = p.marginals.rho22;
        r.rho33 = p.marginals.rho33;
        r.rho44 = p.marginals.rho44;
        r.coh_plus = p.marginals.coh_plus.real();
        r.coh_minus_imag = p.marginals.coh_minus.imag();
        r.n_max = p.n_max;
        r.residual = p.residual;
        return rows;
    };

    if (config.format == "json" || !config.out.empty()) {
        auto rows = row(point);
        if (config.out.empty()) {
            sweep::write_json(std::cout, rows, config);
        } else {
            auto out = open_output(config.out);
            if (config.format == "json") {
                sweep::write_json(out, rows, config);
            } else {
                sweep::write_csv(out, rows);
            }
        }
    }
    print_text(std::cout);

    if (evolve_time > 0.0) {
        const auto rates = model::compute_rates(basis, config.base);
        const model::FockTruncation trunc{point.n_max};
        const auto gen = reduced::build_generator(config.base, basis, rates, trunc);
        const auto x0 = reduced::initial_state(config.base, basis, trunc);
        const auto xt = reduced::evolve(gen, x0, evolve_time, 1e-6);
        const auto marg = reduced::qubit_marginals(xt);
        const auto dm = ent::reconstruct_bare_dm(marg, basis, config.base);
        std::cout << "t = " << sweep::format_double(evolve_time)
                  << "  mean_n(t) = " << sweep::format_double(reduced::mean_phonon(xt))
                  << "  concurrence(t) = " << sweep::format_double(ent::concurrence(dm).value)
                  << "  pi_s(t) = " << sweep::format_double(ent::symmetric_population(dm)) << '\n';
    }
    return 0;
}

int cmd_validate(const CommonOptions& opt) {
    const auto config = load_config(opt);
    const auto report = sweep::run_validation(config);
    if (config.out.empty()) {
        sweep::write_validation_text(std::cout, report);
    } else {
        auto out = open_output(config.out);
        sweep::write_validation_json(out, report, config);
        sweep::write_validation_text(std::cout, report);
    }
    return report.threshold_exceeded ? 3 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qbcool: steady states, phonon statistics and two-qubit entanglement of a "
                 "driven qubit pair longitudinally coupled to a damped thermal boson mode"};
    app.require_subcommand(1);

    CommonOptions sweep_opt, point_opt, validate_opt;
    double evolve_time = -1.0;

    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep and emit a table");
    add_common(sweep_cmd, sweep_opt);
    auto* point_cmd = app.add_subcommand("point", "solve a single parameter set and print all observables");
    add_common(point_cmd, point_opt, false);
    point_cmd->add_option("--evolve", evolve_time, "also time-evolve to the given time and report");
    auto* validate_cmd = app.add_subcommand("validate", "cross-check the reduced solver against the full Liouvillians");
    add_common(validate_cmd, validate_opt, false);
    auto* selftest_cmd = app.add_subcommand("selftest", "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_opt);
        if (point_cmd->parsed()) return cmd_point(point_opt, evolve_time);
        if (validate_cmd->parsed()) return cmd_validate(validate_opt);
        if (selftest_cmd->parsed()) return qbcool::run_selftest(std::cout) == 0 ? 0 : 2;
    } catch (const sweep::config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
