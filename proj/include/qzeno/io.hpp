#pragma once

// Run configuration files and CSV output.
//
// Config files are flat `key = value` text, one pair per line, `#` starts a
// comment. Keys (defaults in brackets):
//   epsilon [1]  delta [0.05]  G [0.4]  omega_c [1]  s [1]
//   F [0.03]  alpha_c [1]  r [1]  beta [inf]  strong [true]
//   tau_min [0.05]  tau_max [3]  tau_steps [60]
//   abs_tol [1e-10]  rel_tol [1e-8]  max_subdivisions [2000]
//   output [curve.csv]  plot_script [false]
// `strong = false` drops the dephasing reservoir (weak-reservoir-only rate).

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qzeno/model.hpp"
#include "qzeno/quadrature.hpp"
#include "qzeno/regime.hpp"

namespace qzeno {

struct RunConfig {
    SystemParams system{};
    SpectralDensity strong_bath{0.4, 1.0, 1.0};
    bool strong_enabled{true};
    SpectralDensity weak_bath{0.03, 1.0, 1.0};
    Temperature temperature{Temperature::zero()};
    double tau_min{0.05};
    double tau_max{3.0};
    int tau_steps{60};
    std::string output{"curve.csv"};
    QuadratureSpec quadrature{};
    bool emit_plot_script{false};

    ModelConfig model() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ParseError (with line number), UnknownKey, or ValidationError
/// listing every invalid field.
RunConfig parse_config(std::string_view text);

/// Multi-line form accepted by parse_config; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& c);

/// Single-line `key=value; ...` form used in CSV metadata comments.
std::string render_inline(const RunConfig& c);

/// 12 significant digits.
std::string format_number(double v);

/// `# config: ...` line, then `tau,gamma,survival,validity`. Invalid points
/// leave the gamma field empty.
void write_curve_csv(std::ostream& os, const RateCurve& curve, const std::string& config_line,
                     const std::vector<std::string>& extra_comments = {});

struct ComparisonRow {
    double tau;
    RatePoint two_reservoir;
    RatePoint weak_only;
};

/// Header `tau,gamma0,gamma1`.
void write_compare_csv(std::ostream& os, const std::vector<ComparisonRow>& rows, const std::string& config_line);

/// Header `tau_star,kind,gamma`.
void write_transitions_csv(std::ostream& os, const TransitionReport& report, const std::string& config_line);

struct PlotSeries {
    std::string csv_file;
    std::string title;
};

/// Gnuplot script drawing gamma against tau for each CSV.
std::string plot_script(const std::string& title, const std::vector<PlotSeries>& series);

} // namespace qzeno
