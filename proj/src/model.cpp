#include "qzeno/model.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

namespace qzeno {

const char* to_string(ConfigErrorKind kind) noexcept {
    switch (kind) {
    case ConfigErrorKind::NonPositiveEpsilon: return "NonPositiveEpsilon";
    case ConfigErrorKind::NegativeDelta: return "NegativeDelta";
    case ConfigErrorKind::NegativeCoupling: return "NegativeCoupling";
    case ConfigErrorKind::NonPositiveCutoff: return "NonPositiveCutoff";
    case ConfigErrorKind::NonPositiveOhmicity: return "NonPositiveOhmicity";
    case ConfigErrorKind::BadBeta: return "BadBeta";
    case ConfigErrorKind::BadTauRange: return "BadTauRange";
    case ConfigErrorKind::BadQuadratureSpec: return "BadQuadratureSpec";
    }
    return "Unknown";
}

namespace {

std::string join_errors(const std::vector<ConfigError>& errors) {
    std::ostringstream os;
    os << "invalid configuration:";
    for (const auto& e : errors)
        os << "\n  " << to_string(e.kind) << " (" << e.field << "): " << e.message;
    return os.str();
}

void check_density(const SpectralDensity& j, const std::string& prefix,
                   const std::string& coupling_name, std::vector<ConfigError>& out) {
    if (!(j.coupling >= 0.0) || !std::isfinite(j.coupling))
        out.push_back({ConfigErrorKind::NegativeCoupling, coupling_name,
                       "coupling must be finite and >= 0"});
    if (!(j.cutoff > 0.0) || !std::isfinite(j.cutoff))
        out.push_back({ConfigErrorKind::NonPositiveCutoff, prefix + ".cutoff",
                       "cutoff frequency must be finite and > 0"});
    if (!(j.ohmicity > 0.0) || !std::isfinite(j.ohmicity))
        out.push_back({ConfigErrorKind::NonPositiveOhmicity, prefix + ".ohmicity",
                       "ohmicity exponent must be finite and > 0"});
}

} // namespace

ValidationError::ValidationError(std::vector<ConfigError> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

double SpectralDensity::operator()(double w) const noexcept {
    if (w <= 0.0) return 0.0;
    const double x = w / cutoff;
    // w^s * wc^(1-s) = wc * x^s
    return coupling * cutoff * std::pow(x, ohmicity) * std::exp(-x);
}

double Temperature::coth_factor(double w) const noexcept {
    if (is_zero()) return 1.0;
    const double x = 0.5 * *beta_ * w;
    if (x > 20.0) return 1.0 + 2.0 * std::exp(-2.0 * x);
    return 1.0 / std::tanh(x);
}

bool ValidatedConfig::closed_form() const noexcept {
    if (!config_.temperature.is_zero() || !config_.weak.is_ohmic()) return false;
    return !config_.strong || config_.strong->is_ohmic();
}

Validation Validation::run(const ModelConfig& c) {
    Validation v;
    if (!(c.system.epsilon > 0.0) || !std::isfinite(c.system.epsilon))
        v.errors.push_back({ConfigErrorKind::NonPositiveEpsilon, "epsilon",
                            "energy splitting must be finite and > 0"});
    if (!(c.system.delta >= 0.0) || !std::isfinite(c.system.delta))
        v.errors.push_back({ConfigErrorKind::NegativeDelta, "delta",
                            "tunneling amplitude must be finite and >= 0"});
    if (c.strong) check_density(*c.strong, "strong", "G", v.errors);
    check_density(c.weak, "weak", "F", v.errors);
    if (!c.temperature.is_zero()) {
        const double b = c.temperature.beta();
        if (!(b > 0.0) || !std::isfinite(b))
            v.errors.push_back({ConfigErrorKind::BadBeta, "beta",
                                "inverse temperature must be finite and > 0 (use zero temperature for beta = inf)"});
    }
    if (v.errors.empty()) {
        if (c.strong && c.strong->coupling < c.weak.coupling)
            v.warnings.push_back("strong coupling G is below weak coupling F; "
                                 "the polaron-frame treatment assumes G >> F");
        v.config = ValidatedConfig{c};
    }
    return v;
}

std::string canonical_form(const ModelConfig& c) {
    char buf[64];
    std::string out;
    auto put = [&](const char* key, double v) {
        if (!out.empty()) out += "; ";
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += key;
        out += '=';
        out += buf;
    };
    put("epsilon", c.system.epsilon);
    put("delta", c.system.delta);
    if (c.strong) {
        put("G", c.strong->coupling);
        put("omega_c", c.strong->cutoff);
        put("s", c.strong->ohmicity);
    }
    put("F", c.weak.coupling);
    put("alpha_c", c.weak.cutoff);
    put("r", c.weak.ohmicity);
    if (c.temperature.is_zero())
        out += "; beta=inf";
    else
        put("beta", c.temperature.beta());
    out += c.strong ? "; strong=true" : "; strong=false";
    return out;
}

std::string digest(const ModelConfig& c) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canonical_form(c)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ValidatedConfig validate_or_throw(const ModelConfig& c) {
    auto v = validate(c);
    if (!v.ok()) throw ValidationError(std::move(v.errors));
    return std::move(*v.config);
}

} // namespace qzeno
