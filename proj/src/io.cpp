#include "qzeno/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "qzeno/errors.hpp"

namespace qzeno {

ModelConfig RunConfig::model() const {
    ModelConfig m;
    m.system = system;
    if (strong_enabled)
        m.strong = strong_bath;
    else
        m.strong.reset();
    m.weak = weak_bath;
    m.temperature = temperature;
    return m;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view v, int line, std::string_view key) {
    double out = 0.0;
    const auto* first = v.data();
    const auto* last = v.data() + v.size();
    if (!v.empty() && v.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || v.empty() || first == last)
        throw ParseError(line, "'" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
    return out;
}

int to_int(std::string_view v, int line, std::string_view key) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
        throw ParseError(line, "'" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
    return out;
}

bool to_bool(std::string_view v, int line, std::string_view key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParseError(line, "'" + std::string(key) + "' expects true or false, got '" + std::string(v) + "'");
}

using Setter = std::function<void(RunConfig&, std::string_view, int)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table = [] {
        std::map<std::string, Setter, std::less<>> t;
        auto number = [&t](const char* key, double RunConfig::*group_field) {
            t[key] = [group_field, key](RunConfig& c, std::string_view v, int line) {
                c.*group_field = to_double(v, line, key);
            };
        };
        auto bath = [&t](const char* key, SpectralDensity RunConfig::*bath_member, double SpectralDensity::*field) {
            t[key] = [bath_member, field, key](RunConfig& c, std::string_view v, int line) {
                (c.*bath_member).*field = to_double(v, line, key);
            };
        };
        t["epsilon"] = [](RunConfig& c, std::string_view v, int line) { c.system.epsilon = to_double(v, line, "epsilon"); };
        t["delta"] = [](RunConfig& c, std::string_view v, int line) { c.system.delta = to_double(v, line, "delta"); };
        bath("G", &RunConfig::strong_bath, &SpectralDensity::coupling);
        bath("omega_c", &RunConfig::strong_bath, &SpectralDensity::cutoff);
        bath("s", &RunConfig::strong_bath, &SpectralDensity::ohmicity);
        bath("F", &RunConfig::weak_bath, &SpectralDensity::coupling);
        bath("alpha_c", &RunConfig::weak_bath, &SpectralDensity::cutoff);
        bath("r", &RunConfig::weak_bath, &SpectralDensity::ohmicity);
        t["beta"] = [](RunConfig& c, std::string_view v, int line) {
            if (v == "inf" || v == "infinity")
                c.temperature = Temperature::zero();
            else
                c.temperature = Temperature::finite(to_double(v, line, "beta"));
        };
        t["strong"] = [](RunConfig& c, std::string_view v, int line) { c.strong_enabled = to_bool(v, line, "strong"); };
        number("tau_min", &RunConfig::tau_min);
        number("tau_max", &RunConfig::tau_max);
        t["tau_steps"] = [](RunConfig& c, std::string_view v, int line) { c.tau_steps = to_int(v, line, "tau_steps"); };
        t["abs_tol"] = [](RunConfig& c, std::string_view v, int line) { c.quadrature.abs_tol = to_double(v, line, "abs_tol"); };
        t["rel_tol"] = [](RunConfig& c, std::string_view v, int line) { c.quadrature.rel_tol = to_double(v, line, "rel_tol"); };
        t["max_subdivisions"] = [](RunConfig& c, std::string_view v, int line) {
            c.quadrature.max_subdivisions = to_int(v, line, "max_subdivisions");
        };
        t["output"] = [](RunConfig& c, std::string_view v, int line) {
            if (v.empty()) throw ParseError(line, "'output' must not be empty");
            c.output = std::string(v);
        };
        t["plot_script"] = [](RunConfig& c, std::string_view v, int line) {
            c.emit_plot_script = to_bool(v, line, "plot_script");
        };
        return t;
    }();
    return table;
}

std::string full_precision(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::pair<std::string, std::string>> rendered_pairs(const RunConfig& c) {
    return {
        {"epsilon", full_precision(c.system.epsilon)},
        {"delta", full_precision(c.system.delta)},
        {"G", full_precision(c.strong_bath.coupling)},
        {"omega_c", full_precision(c.strong_bath.cutoff)},
        {"s", full_precision(c.strong_bath.ohmicity)},
        {"F", full_precision(c.weak_bath.coupling)},
        {"alpha_c", full_precision(c.weak_bath.cutoff)},
        {"r", full_precision(c.weak_bath.ohmicity)},
        {"beta", c.temperature.is_zero() ? "inf" : full_precision(c.temperature.beta())},
        {"strong", c.strong_enabled ? "true" : "false"},
        {"tau_min", full_precision(c.tau_min)},
        {"tau_max", full_precision(c.tau_max)},
        {"tau_steps", std::to_string(c.tau_steps)},
        {"abs_tol", full_precision(c.quadrature.abs_tol)},
        {"rel_tol", full_precision(c.quadrature.rel_tol)},
        {"max_subdivisions", std::to_string(c.quadrature.max_subdivisions)},
        {"output", c.output},
        {"plot_script", c.emit_plot_script ? "true" : "false"},
    };
}

std::string optional_number(const RatePoint& p) { return p.ok() ? format_number(*p.gamma) : std::string{}; }

} // namespace

RunConfig parse_config(std::string_view text) {
    RunConfig c;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const auto line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(line_no, "missing key before '='");
        const auto it = setters().find(key);
        if (it == setters().end()) throw UnknownKey(line_no, std::string(key));
        if (!seen.insert(std::string(key)).second)
            throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
        it->second(c, value, line_no);
    }

    auto v = validate(c.model());
    std::vector<ConfigError> errors = std::move(v.errors);
    if (!(c.tau_min > 0.0) || !std::isfinite(c.tau_min))
        errors.push_back({ConfigErrorKind::BadTauRange, "tau_min", "tau_min must be finite and > 0"});
    if (!(c.tau_max > c.tau_min) || !std::isfinite(c.tau_max))
        errors.push_back({ConfigErrorKind::BadTauRange, "tau_max", "tau_max must be finite and > tau_min"});
    if (c.tau_steps < 2)
        errors.push_back({ConfigErrorKind::BadTauRange, "tau_steps", "tau_steps must be >= 2"});
    try {
        c.quadrature.check();
    } catch (const ValidationError& e) {
        errors.insert(errors.end(), e.errors().begin(), e.errors().end());
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));
    return c;
}

std::string render_config(const RunConfig& c) {
    std::string out;
    for (const auto& [k, v] : rendered_pairs(c)) out += k + " = " + v + "\n";
    return out;
}

std::string render_inline(const RunConfig& c) {
    std::string out;
    for (const auto& [k, v] : rendered_pairs(c)) {
        if (!out.empty()) out += "; ";
        out += k + "=" + v;
    }
    return out;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_curve_csv(std::ostream& os, const RateCurve& curve, const std::string& config_line,
                     const std::vector<std::string>& extra_comments) {
    os << "# config: " << config_line << '\n';
    for (const auto& c : extra_comments) os << "# " << c << '\n';
    os << "tau,gamma,survival,validity\n";
    for (const auto& p : curve.points)
        os << format_number(p.tau) << ',' << optional_number(p) << ',' << format_number(p.survival) << ','
           << to_string(p.validity) << '\n';
}

void write_compare_csv(std::ostream& os, const std::vector<ComparisonRow>& rows, const std::string& config_line) {
    os << "# config: " << config_line << '\n';
    os << "tau,gamma0,gamma1\n";
    for (const auto& r : rows)
        os << format_number(r.tau) << ',' << optional_number(r.two_reservoir) << ',' << optional_number(r.weak_only)
           << '\n';
}

void write_transitions_csv(std::ostream& os, const TransitionReport& report, const std::string& config_line) {
    os << "# config: " << config_line << '\n';
    for (const auto& w : report.warnings) os << "# warning: " << w << '\n';
    os << "tau_star,kind,gamma\n";
    for (const auto& t : report.transitions)
        os << format_number(t.tau_star) << ',' << to_string(t.kind) << ',' << format_number(t.gamma_at) << '\n';
}

std::string plot_script(const std::string& title, const std::vector<PlotSeries>& series) {
    std::ostringstream os;
    os << "# gnuplot script\n"
       << "set datafile separator ','\n"
       << "set title '" << title << "'\n"
       << "set xlabel 'tau'\n"
       << "set ylabel 'Gamma(tau)'\n"
       << "set key top right\n"
       << "plot";
    for (std::size_t i = 0; i < series.size(); ++i) {
        os << (i == 0 ? " " : ", \\\n     ") << "'" << series[i].csv_file << "' every ::1 using 1:2 with lines title '"
           << series[i].title << "'";
    }
    os << '\n';
    return os.str();
}

} // namespace qzeno
