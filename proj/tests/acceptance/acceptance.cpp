// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qzeno/commands.hpp"
#include "qzeno/correlations.hpp"
#include "qzeno/decay.hpp"
#include "qzeno/oracle.hpp"
#include "qzeno/quadrature.hpp"
#include "qzeno/regime.hpp"

using namespace qzeno;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ModelConfig make(std::optional<double> g, double f, double delta = 0.05) {
    ModelConfig c;
    if (g)
        c.strong = SpectralDensity{*g, 1.0, 1.0};
    else
        c.strong.reset();
    c.weak = SpectralDensity{f, 1.0, 1.0};
    c.system = {1.0, delta};
    return c;
}

ValidatedConfig v(const ModelConfig& c) { return validate_or_throw(c); }

double gamma_of(const ModelConfig& c, double tau) {
    const auto p = rate(v(c), tau);
    return p.ok() ? *p.gamma : std::nan("");
}

const double kFs[] = {0.03, 0.05, 0.1};
const double kGs[] = {0.4, 0.8, 1.5};

Outcome kernel_agreement() {
    const SpectralDensity strong{0.4, 1.0, 1.0}, weak{0.03, 1.0, 1.0};
    const auto zero = Temperature::zero();
    constexpr double kTol = 1e-6;
    double worst = 0.0, worst_t = 0.0;
    const char* worst_name = "";
    for (int i = 0; i < 30; ++i) {
        const double t = std::pow(10.0, -3.0 + 5.0 * i / 29.0);
        const std::pair<const char*, std::pair<double, double>> pairs[] = {
            {"phi_r1", {by_quadrature::phi_r1(strong, zero, t), closed_form::phi_r1(strong, t)}},
            {"phi_i1", {by_quadrature::phi_i1(strong, t), closed_form::phi_i1(strong, t)}},
            {"phi_r2", {by_quadrature::phi_r2(weak, zero, t), closed_form::phi_r2(weak, t)}},
            {"phi_i2", {by_quadrature::phi_i2(weak, t), closed_form::phi_i2(weak, t)}},
        };
        for (const auto& [name, values] : pairs) {
            const double r = rel(values.first, values.second);
            if (r > worst) {
                worst = r;
                worst_t = t;
                worst_name = name;
            }
        }
    }
    return {worst <= kTol, fmt("worst rel %.2e", worst) + " (" + worst_name + fmt(" at t=%.4g)", worst_t) +
                               ", tol 1e-6, 120 values"};
}

Outcome reduction_identity() {
    constexpr double kTol = 1e-6;
    constexpr int kGrid = 400;
    std::vector<ModelConfig> sets;
    for (double g : kGs) sets.push_back(make(g, 0.03));
    for (double f : kFs) sets.push_back(make(1.5, f));
    double worst = 0.0;
    int n = 0;
    for (const auto& cfg : sets) {
        const auto c = v(cfg);
        for (double tau : {0.25, 0.5, 1.0, 2.0}) {
            const double p2 = weighted_time_integral(decay_integrand_two_batch(c), tau);
            const double r2 =
                oracle::double_integral_2d([&](double u) { return decay_integrand_two(c, u); }, tau, kGrid);
            const double p1 = weighted_time_integral(decay_integrand_one_batch(c), tau);
            const double r1 =
                oracle::double_integral_2d([&](double u) { return decay_integrand_one(c, u); }, tau, kGrid);
            worst = std::max({worst, rel(p2, r2), rel(p1, r1)});
            n += 2;
        }
    }
    return {worst <= kTol, fmt("worst rel %.2e", worst) + ", tol 1e-6, n=400, " + std::to_string(n) + " comparisons"};
}

Outcome g_zero_degeneration() {
    constexpr double kTol = 1e-8;
    const auto taus = linear_grid(0.05, 3.0, 50);
    double worst = 0.0;
    for (double f : kFs) {
        const auto with = v(make(0.0, f)), without = v(make(std::nullopt, f));
        for (double tau : taus) {
            const auto a = gamma0(with, tau), b = gamma1(without, tau);
            if (!a.ok() || !b.ok()) return {false, fmt("invalid rate at tau=%.4g", tau)};
            worst = std::max(worst, std::abs(*a.gamma - *b.gamma));
        }
    }
    return {worst < kTol, fmt("max |diff| %.2e", worst) + ", tol 1e-8, 150 points"};
}

Outcome closed_form_pin() {
    constexpr double kTol = 1e-8;
    const double want = -std::log(0.9975) / std::numbers::pi;
    const auto p = gamma1(v(make(std::nullopt, 0.0)), std::numbers::pi);
    if (!p.ok()) return {false, "rate invalid"};
    const double r = rel(*p.gamma, want);
    return {r <= kTol, fmt("gamma1=%.10e", *p.gamma) + fmt(" want %.10e", want) + fmt(" rel %.2e, tol 1e-8", r)};
}

Outcome small_tau_asymptote() {
    constexpr double kTol = 1e-2;
    constexpr double tau = 1e-3;
    const double f0 = 0.03 * 1.0 + 0.05 * 0.05 / 4.0;
    double worst = 0.0;
    std::vector<ModelConfig> sets;
    for (double g : kGs) sets.push_back(make(g, 0.03));
    sets.push_back(make(std::nullopt, 0.03));
    for (const auto& c : sets) worst = std::max(worst, std::abs(gamma_of(c, tau) / tau - f0) / f0);
    return {worst < kTol, fmt("worst rel %.2e", worst) + ", tol 1e-2 (gamma0 at G=0.4,0.8,1.5 and gamma1)"};
}

Outcome linearity_in_f() {
    constexpr double kTol = 1e-9;
    // Below the default quadrature tolerance, so integrate tighter here.
    const QuadratureSpec tight{1e-15, 1e-13, 4000};
    double worst = 0.0;
    for (std::optional<double> g : {std::optional<double>(0.4), std::optional<double>(1.5), std::optional<double>()}) {
        const auto c1 = v(make(g, 0.03, 0.0)), c2 = v(make(g, 0.06, 0.0));
        for (double tau : {0.5, 1.0, 2.0}) {
            const double ratio = (1.0 - survival(c2, tau, tight)) / (1.0 - survival(c1, tau, tight));
            worst = std::max(worst, std::abs(ratio - 2.0) / 2.0);
        }
    }
    return {worst <= kTol, fmt("worst rel %.2e", worst) + ", tol 1e-9 (G=0.4, G=1.5, weak only)"};
}

template <class Order>
Outcome ordered(const std::vector<ModelConfig>& sets, Order strictly_before, const std::string& what) {
    const auto taus = linear_grid(0.1, 2.0, 40);
    double margin = std::numeric_limits<double>::infinity();
    for (double tau : taus) {
        for (std::size_t i = 0; i + 1 < sets.size(); ++i) {
            const double a = gamma_of(sets[i], tau), b = gamma_of(sets[i + 1], tau);
            if (!std::isfinite(a) || !std::isfinite(b)) return {false, fmt("invalid rate at tau=%.4g", tau)};
            if (!strictly_before(a, b)) return {false, what + fmt(" violated at tau=%.4g", tau)};
            margin = std::min(margin, std::abs(b - a) / std::max(std::abs(a), std::abs(b)));
        }
    }
    return {true, what + fmt(" holds on 40 points, smallest relative gap %.2e", margin)};
}

Outcome strong_inhibits() {
    std::vector<ModelConfig> sets;
    for (double g : kGs) sets.push_back(make(g, 0.03));
    return ordered(sets, std::greater<>(), "gamma0(G=0.4) > gamma0(G=0.8) > gamma0(G=1.5)");
}

Outcome weak_enhances() {
    std::vector<ModelConfig> with, without;
    for (double f : kFs) {
        with.push_back(make(1.5, f));
        without.push_back(make(std::nullopt, f));
    }
    const auto a = ordered(with, std::less<>(), "gamma0 increasing in F");
    const auto b = ordered(without, std::less<>(), "gamma1 increasing in F");
    return {a.pass && b.pass, a.detail + "; " + b.detail};
}

Outcome strong_inhibits_weak() {
    std::string detail;
    bool pass = true;
    for (double f : kFs) {
        const auto r = ordered({make(1.5, f), make(std::nullopt, f)}, std::less<>(), fmt("F=%.2g: gamma0 < gamma1", f));
        pass = pass && r.pass;
        detail += (detail.empty() ? "" : "; ") + r.detail;
    }
    return {pass, detail};
}

Outcome transition_shift() {
    constexpr double kWidth = 1e-3;
    constexpr double lo = 0.05, hi = 3.0;
    std::vector<std::optional<TransitionPoint>> first;
    std::string detail;
    for (double g : kGs) {
        const auto report = find_transitions(v(make(g, 0.03)), lo, hi, 128);
        first.push_back(report.first_maximum());
        detail += fmt("G=%g: ", g);
        if (first.back())
            detail += fmt("tau*=%.6f", first.back()->tau_star) + fmt(" (width %.1e)", first.back()->bracket_width);
        else
            detail += "no maximum in (0.05, 3)";
        detail += "; ";
    }
    bool pass = true;
    for (const auto& t : first) pass = pass && t && t->bracket_width < kWidth;
    if (pass) pass = first[2]->tau_star < first[1]->tau_star && first[1]->tau_star < first[0]->tau_star;
    if (!first[0]) {
        // Report how far the G = 0.4 rate keeps rising before perturbation theory fails.
        const auto wide = find_transitions(v(make(0.4, 0.03)), lo, 60.0, 240);
        detail += "G=0.4 on (0.05, 60): " + std::to_string(wide.transitions.size()) + " extrema" +
                  fmt(", rate valid up to tau=%.3g", wide.analyzable_end);
    }
    return {pass, detail};
}

double bare_rate_maximum() {
    const double k = 0.5 * 0.05 * 0.05;
    auto d = [k](double t) {
        const double s = 1.0 - k * (1.0 - std::cos(t));
        return k * t * std::sin(t) / s + std::log(s);
    };
    double a = 2.0, b = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        ((d(a) > 0.0) == (d(m) > 0.0) ? a : b) = m;
    }
    return 0.5 * (a + b);
}

double linearised_maximum() {
    auto d = [](double t) { return t * std::sin(t) - 1.0 + std::cos(t); };
    double a = 2.0, b = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        ((d(a) > 0.0) == (d(m) > 0.0) ? a : b) = m;
    }
    return 0.5 * (a + b);
}

Outcome transition_pin() {
    constexpr double kTol = 1e-3;
    const auto report = find_transitions(v(make(std::nullopt, 0.0)), 0.5, 8.0, 128);
    const auto first = report.first_maximum();
    if (!first) return {false, "no maximum found"};
    const double want = bare_rate_maximum();
    const double err = std::abs(first->tau_star - want);
    return {err < kTol && first->bracket_width < kTol,
            fmt("tau*=%.6f", first->tau_star) + fmt(" oracle %.6f", want) + fmt(" |diff| %.1e, tol 1e-3", err) +
                fmt("; (1-cos tau)/tau root %.6f", linearised_maximum())};
}

Outcome determinism() {
    const fs::path base = fs::temp_directory_path() / ("qzeno_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(base);
    std::ostringstream sink;
    const int a = cmd_figure("1a", base / "run1", false, sink);
    const int b = cmd_figure("1a", base / "run2", false, sink);
    if (a != 0 || b != 0) return {false, "cmd_figure failed: " + sink.str()};
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream os;
        os << f.rdbuf();
        return os.str();
    };
    int files = 0;
    bool same = true;
    for (const auto& c : figure_curves("1a")) {
        const auto x = slurp(base / "run1" / c.file_name), y = slurp(base / "run2" / c.file_name);
        same = same && !x.empty() && x == y;
        ++files;
    }
    fs::remove_all(base);
    return {same && files == 3, std::to_string(files) + (same ? " CSVs byte-identical" : " CSVs differ")};
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"closed-form vs quadrature kernels", kernel_agreement},
        {"reduction identity vs 2D Simpson", reduction_identity},
        {"G = 0 degenerates to the weak-only rate", g_zero_degeneration},
        {"closed-form pin of the bare rate at tau = pi", closed_form_pin},
        {"small-tau Zeno asymptote", small_tau_asymptote},
        {"survival deficit linear in F", linearity_in_f},
        {"strong coupling inhibits decay", strong_inhibits},
        {"weak coupling enhances decay", weak_enhances},
        {"strong reservoir inhibits the weak one", strong_inhibits_weak},
        {"transition moves to smaller tau with G", transition_shift},
        {"transition finder pin", transition_pin},
        {"figure output deterministic", determinism},
    };
    int failed = 0, index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::printf("%s %2d %-44s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
