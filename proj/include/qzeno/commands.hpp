#pragma once

// Entry points behind the command-line tool. Each returns a process exit
// status; results go to files (or `out` for eval), diagnostics to `err`.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qzeno/io.hpp"

namespace qzeno {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalidInput = 1,
    kExitNonConvergence = 2,
    kExitSelftestFailed = 3,
};

int cmd_eval(const RunConfig& config, double tau, std::ostream& out, std::ostream& err);
int cmd_curve(const RunConfig& config, std::ostream& err);
int cmd_transition(const RunConfig& config, std::ostream& err);
int cmd_compare(const RunConfig& config, std::ostream& err);

struct FigureCurve {
    std::string file_name;
    std::string label;
    RunConfig config;
};

inline constexpr double kFigureTauMin = 0.02;
inline constexpr double kFigureTauMax = 4.0;
inline constexpr int kFigureTauSteps = 200;

/// Curves plotted in figure `name` (1a, 1b, 2a or 2b). Throws
/// std::invalid_argument for any other name.
std::vector<FigureCurve> figure_curves(std::string_view name);

int cmd_figure(std::string_view name, const std::filesystem::path& out_dir, bool emit_plot_script,
               std::ostream& err);

/// Oracle comparison on every figure parameter set. Optionally writes the
/// oracle values as a fixture CSV.
int cmd_selftest(std::ostream& out, std::ostream& err,
                 const std::optional<std::filesystem::path>& fixture_path = std::nullopt);

} // namespace qzeno
