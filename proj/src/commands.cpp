#include "qzeno/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qzeno/correlations.hpp"
#include "qzeno/decay.hpp"
#include "qzeno/errors.hpp"
#include "qzeno/oracle.hpp"
#include "qzeno/regime.hpp"
#include "qzeno/simd/ohmic_integrand.hpp"

namespace qzeno {

namespace {

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const QuadratureNonConvergence& e) {
        err << "error: " << e.what() << " (best estimate " << e.best_estimate() << ", achieved error "
            << e.achieved_error() << ")\n";
        return kExitNonConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
}

ValidatedConfig checked(const RunConfig& rc, std::ostream& err) {
    auto v = validate(rc.model());
    if (!v.ok()) throw ValidationError(std::move(v.errors));
    for (const auto& w : v.warnings) err << "warning: " << w << '\n';
    return std::move(*v.config);
}

// Every file is produced in memory first so a failed computation never
// leaves a partial CSV behind.
void write_file(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << contents;
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

std::string script_path(const std::string& csv) {
    std::filesystem::path p(csv);
    p.replace_extension(".gp");
    return p.string();
}

std::string compact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

RunConfig figure_base() {
    RunConfig rc;
    rc.tau_min = kFigureTauMin;
    rc.tau_max = kFigureTauMax;
    rc.tau_steps = kFigureTauSteps;
    return rc;
}

} // namespace

int cmd_eval(const RunConfig& config, double tau, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto vc = checked(config, err);
        if (!(tau > 0.0)) {
            throw ValidationError(
                std::vector<ConfigError>{{ConfigErrorKind::BadTauRange, "tau", "tau must be > 0"}});
        }
        const RatePoint p = rate(vc, tau, config.quadrature);
        RateCurve single;
        single.points.push_back(p);
        write_curve_csv(out, single, canonical_form(vc.config()));
        if (!p.ok()) err << "warning: survival " << format_number(p.survival) << " is outside (0, 1]\n";
        return kExitOk;
    });
}

int cmd_curve(const RunConfig& config, std::ostream& err) {
    return guarded(err, [&] {
        const auto vc = checked(config, err);
        const auto taus = linear_grid(config.tau_min, config.tau_max, config.tau_steps);
        err << "computing " << taus.size() << " rate points\n";
        const RateCurve curve = rate_curve(vc, taus, config.quadrature);
        std::ostringstream os;
        write_curve_csv(os, curve, canonical_form(vc.config()));
        write_file(config.output, os.str());
        if (config.emit_plot_script)
            write_file(script_path(config.output),
                       plot_script("Gamma(tau)", {{std::filesystem::path(config.output).filename().string(),
                                                   "Gamma"}}));
        const auto n_bad = curve.points.size() - curve.analyzable_size();
        if (n_bad > 0) err << "warning: " << n_bad << " trailing points have survival outside (0, 1]\n";
        err << "wrote " << config.output << '\n';
        return kExitOk;
    });
}

int cmd_transition(const RunConfig& config, std::ostream& err) {
    return guarded(err, [&] {
        const auto vc = checked(config, err);
        const int n_grid = std::max(config.tau_steps, 16);
        const auto report = find_transitions(vc, config.tau_min, config.tau_max, n_grid, config.quadrature);
        for (const auto& w : report.warnings) err << "warning: " << w << '\n';
        std::ostringstream os;
        write_transitions_csv(os, report, canonical_form(vc.config()));
        write_file(config.output, os.str());
        err << "found " << report.transitions.size() << " extrema; wrote " << config.output << '\n';
        return kExitOk;
    });
}

int cmd_compare(const RunConfig& config, std::ostream& err) {
    return guarded(err, [&] {
        RunConfig with = config, without = config;
        with.strong_enabled = true;
        without.strong_enabled = false;
        const auto two = checked(with, err);
        const auto one = checked(without, err);
        const auto taus = linear_grid(config.tau_min, config.tau_max, config.tau_steps);
        const auto c0 = rate_curve(two, taus, config.quadrature);
        const auto c1 = rate_curve(one, taus, config.quadrature);
        std::vector<ComparisonRow> rows;
        rows.reserve(taus.size());
        for (std::size_t i = 0; i < taus.size(); ++i) rows.push_back({taus[i], c0.points[i], c1.points[i]});
        std::ostringstream os;
        write_compare_csv(os, rows, canonical_form(two.config()));
        write_file(config.output, os.str());
        err << "wrote " << config.output << '\n';
        return kExitOk;
    });
}

std::vector<FigureCurve> figure_curves(std::string_view name) {
    std::vector<FigureCurve> out;
    if (name == "1a") {
        for (double g : {0.4, 0.8, 1.5}) {
            auto rc = figure_base();
            rc.strong_bath.coupling = g;
            out.push_back({"fig1a_G" + compact(g) + ".csv", "G = " + compact(g), rc});
        }
    } else if (name == "1b" || name == "2b") {
        for (double f : {0.03, 0.05, 0.1}) {
            auto rc = figure_base();
            rc.strong_bath.coupling = 1.5;
            rc.weak_bath.coupling = f;
            out.push_back({"fig" + std::string(name) + "_F" + compact(f) + ".csv", "F = " + compact(f), rc});
        }
    } else if (name == "2a") {
        for (double f : {0.03, 0.05, 0.1}) {
            auto rc = figure_base();
            rc.strong_enabled = false;
            rc.weak_bath.coupling = f;
            out.push_back({"fig2a_F" + compact(f) + ".csv", "F = " + compact(f), rc});
        }
    } else {
        throw std::invalid_argument("unknown figure '" + std::string(name) + "' (expected 1a, 1b, 2a or 2b)");
    }
    return out;
}

int cmd_figure(std::string_view name, const std::filesystem::path& out_dir, bool emit_plot_script,
               std::ostream& err) {
    std::vector<FigureCurve> curves;
    try {
        curves = figure_curves(name);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return guarded(err, [&] {
        std::vector<ModelConfig> models;
        for (const auto& c : curves) models.push_back(c.config.model());
        const auto& base = curves.front().config;
        err << "figure " << name << ": " << curves.size() << " curves x " << base.tau_steps << " points\n";
        const auto results = sweep(models, base.tau_min, base.tau_max, base.tau_steps, base.quadrature);

        std::vector<std::pair<std::filesystem::path, std::string>> files;
        std::vector<PlotSeries> series;
        for (std::size_t i = 0; i < curves.size(); ++i) {
            if (results[i].error) {
                err << "error: " << curves[i].label << ": " << *results[i].error << '\n';
                return kExitNonConvergence;
            }
            std::ostringstream os;
            write_curve_csv(os, results[i], canonical_form(models[i]));
            files.emplace_back(out_dir / curves[i].file_name, os.str());
            series.push_back({curves[i].file_name, curves[i].label});
        }
        if (emit_plot_script)
            files.emplace_back(out_dir / ("fig" + std::string(name) + ".gp"),
                               plot_script("Figure " + std::string(name), series));
        for (const auto& [path, text] : files) {
            write_file(path, text);
            err << "wrote " << path.string() << '\n';
        }
        return kExitOk;
    });
}

int cmd_selftest(std::ostream& out, std::ostream& err, const std::optional<std::filesystem::path>& fixture_path) {
    return guarded(err, [&]() -> int {
        int failures = 0;
        auto report = [&](const std::string& what, const oracle::OracleReport& r) {
            if (!r.pass) ++failures;
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s %-44s prod=%.12g ref=%.12g rel=%.2e tol=%.0e\n",
                          r.pass ? "PASS" : "FAIL", what.c_str(), r.production_value, r.oracle_value, r.rel_diff,
                          r.tolerance);
            out << buf;
        };
        out << "simd: " << simd::to_string(simd::active_level()) << '\n';

        constexpr double kSurvivalTol = 1e-6;
        constexpr int kGrid = 400;
        std::ostringstream fixture;
        fixture << "# oracle fixture: double_integral_2d n=" << kGrid << ", closed-form kernels\n"
                << "figure,curve,tau,oracle_survival,production_survival\n";
        for (const char* fig : {"1a", "1b", "2a"}) {
            for (const auto& c : figure_curves(fig)) {
                const auto vc = validate_or_throw(c.config.model());
                for (double tau : {0.25, 0.5, 1.0, 2.0}) {
                    const auto r = oracle::check(vc, tau, kSurvivalTol, kGrid);
                    report("fig" + std::string(fig) + " " + c.label + " tau=" + compact(tau), r);
                    fixture << fig << ',' << c.label << ',' << format_number(tau) << ','
                            << format_number(r.oracle_value) << ',' << format_number(r.production_value) << '\n';
                }
            }
        }

        // Kernel quadrature against the oracle's trapezoid rule, including a
        // finite temperature and non-Ohmic baths where no closed form exists.
        constexpr double kKernelTol = 1e-5;
        const SpectralDensity ohmic{0.4, 1.0, 1.0}, sub_ohmic{0.4, 0.7, 1.0}, super_ohmic{0.4, 2.0, 1.0},
            weak{0.03, 1.0, 1.0};
        const Temperature warm = Temperature::finite(2.0);
        for (double t : {0.5, 1.0, 2.0}) {
            const std::string at = " t=" + compact(t);
            report("phi_r1 ohmic zero-T" + at, oracle::compare(phi_r1(ohmic, Temperature::zero(), t),
                                                               oracle::kernel_quadrature_reference(
                                                                   oracle::Kernel::PhiR1, ohmic,
                                                                   Temperature::zero(), t),
                                                               kKernelTol));
            report("phi_r1 ohmic beta=2" + at,
                   oracle::compare(phi_r1(ohmic, warm, t),
                                   oracle::kernel_quadrature_reference(oracle::Kernel::PhiR1, ohmic, warm, t),
                                   kKernelTol));
            report("phi_r1 s=0.7" + at,
                   oracle::compare(phi_r1(sub_ohmic, Temperature::zero(), t),
                                   oracle::kernel_quadrature_reference(oracle::Kernel::PhiR1, sub_ohmic,
                                                                       Temperature::zero(), t),
                                   kKernelTol));
            report("phi_i1 s=2" + at,
                   oracle::compare(phi_i1(super_ohmic, t),
                                   oracle::kernel_quadrature_reference(oracle::Kernel::PhiI1, super_ohmic,
                                                                       Temperature::zero(), t),
                                   kKernelTol));
            report("phi_r2 beta=2" + at,
                   oracle::compare(phi_r2(weak, warm, t),
                                   oracle::kernel_quadrature_reference(oracle::Kernel::PhiR2, weak, warm, t),
                                   kKernelTol));
            report("phi_i2 zero-T" + at,
                   oracle::compare(phi_i2(weak, t),
                                   oracle::kernel_quadrature_reference(oracle::Kernel::PhiI2, weak,
                                                                       Temperature::zero(), t),
                                   kKernelTol));
        }

        if (fixture_path) {
            write_file(*fixture_path, fixture.str());
            err << "wrote " << fixture_path->string() << '\n';
        }
        out << (failures == 0 ? "selftest passed\n" : "selftest FAILED: " + std::to_string(failures) + " checks\n");
        return failures == 0 ? kExitOk : kExitSelftestFailed;
    });
}

} // namespace qzeno
