#include "qzeno/regime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "qzeno/errors.hpp"

namespace qzeno {

namespace {

constexpr double kStationaryFraction = 1e-6;
constexpr double kMergeDistance = 1e-6;
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

int sign_of(double d) { return (d > 0.0) - (d < 0.0); }

struct Refined {
    double x, fx, width;
};

// Golden-section search for a maximum (sense = +1) or minimum (sense = -1).
std::optional<Refined> golden(const std::function<double(double)>& g, double a, double b, double tol, int sense) {
    auto h = [&](double x) { return sense * g(x); };
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double hc = h(c), hd = h(d);
    while (b - a > tol) {
        if (!std::isfinite(hc) || !std::isfinite(hd)) return std::nullopt;
        if (hc > hd) {
            b = d;
            d = c;
            hd = hc;
            c = b - kInvPhi * (b - a);
            hc = h(c);
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + kInvPhi * (b - a);
            hd = h(d);
        }
    }
    if (!std::isfinite(hc) || !std::isfinite(hd)) return std::nullopt;
    return hc > hd ? Refined{c, sense * hc, b - a} : Refined{d, sense * hd, b - a};
}

} // namespace

const char* to_string(Regime r) noexcept {
    switch (r) {
    case Regime::Zeno: return "Zeno";
    case Regime::AntiZeno: return "AntiZeno";
    case Regime::Stationary: return "Stationary";
    }
    return "?";
}

const char* to_string(ExtremumKind k) noexcept {
    return k == ExtremumKind::MaxToAntiZenoBoundary ? "MaxToAntiZenoBoundary" : "MinBoundary";
}

std::size_t RateCurve::analyzable_size() const noexcept {
    std::size_t n = 0;
    while (n < points.size() && points[n].ok()) ++n;
    return n;
}

std::optional<TransitionPoint> TransitionReport::first_maximum() const {
    for (const auto& t : transitions)
        if (t.kind == ExtremumKind::MaxToAntiZenoBoundary) return t;
    return std::nullopt;
}

Regime classify(const RateCurve& curve, double tau) {
    const std::size_t m = curve.analyzable_size();
    if (m < 2) throw InsufficientData("classify: fewer than two valid points");
    const auto& p = curve.points;
    const double lo = p.front().tau, hi = p[m - 1].tau;
    if (!(tau >= lo && tau <= hi)) {
        std::ostringstream os;
        os << "classify: tau=" << tau << " outside analyzable range [" << lo << ", " << hi << "]";
        throw InsufficientData(os.str());
    }

    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(*p[i].gamma));

    auto slope = [&](std::size_t i, std::size_t j) { return (*p[j].gamma - *p[i].gamma) / (p[j].tau - p[i].tau); };
    const auto it = std::lower_bound(p.begin(), p.begin() + m, tau,
                                     [](const RatePoint& q, double t) { return q.tau < t; });
    const std::size_t k = static_cast<std::size_t>(it - p.begin());
    const double snap = 1e-12 * std::max(1.0, std::abs(tau));
    std::optional<std::size_t> on_grid;
    if (k < m && std::abs(p[k].tau - tau) <= snap)
        on_grid = k;
    else if (k > 0 && std::abs(p[k - 1].tau - tau) <= snap)
        on_grid = k - 1;
    double d;
    if (on_grid) {
        const std::size_t j = *on_grid;
        d = j == 0 ? slope(0, 1) : j == m - 1 ? slope(m - 2, m - 1) : slope(j - 1, j + 1);
    } else {
        d = slope(k - 1, k);
    }

    if (std::abs(d) < kStationaryFraction * scale || d == 0.0) return Regime::Stationary;
    return d > 0.0 ? Regime::Zeno : Regime::AntiZeno;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    if (n < 2) throw std::invalid_argument("linear_grid: need at least two points");
    if (!(hi > lo)) throw std::invalid_argument("linear_grid: need hi > lo");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    g.back() = hi;
    return g;
}

RateCurve rate_curve(const ValidatedConfig& config, std::span<const double> taus, const QuadratureSpec& spec) {
    for (std::size_t i = 1; i < taus.size(); ++i)
        if (!(taus[i] > taus[i - 1])) throw std::invalid_argument("rate_curve: taus must be strictly increasing");
    RateCurve curve;
    curve.config_digest = digest(config.config());
    curve.points.resize(taus.size());
    detail::parallel_for(taus.size(), [&](std::size_t i) { curve.points[i] = rate(config, taus[i], spec); });
    return curve;
}

TransitionReport find_extrema(const std::function<double(double)>& gamma, double lo, double hi,
                              const ExtremumSearch& search) {
    if (!(lo > 0.0)) throw std::invalid_argument("find_extrema: tau range must start above 0");
    if (search.n_grid < 16) throw std::invalid_argument("find_extrema: n_grid must be >= 16");
    const auto grid = linear_grid(lo, hi, search.n_grid);
    std::vector<double> g(grid.size());
    if (search.parallel)
        detail::parallel_for(grid.size(), [&](std::size_t i) { g[i] = gamma(grid[i]); });
    else
        for (std::size_t i = 0; i < grid.size(); ++i) g[i] = gamma(grid[i]);

    TransitionReport report;
    std::size_t m = 0;
    while (m < g.size() && std::isfinite(g[m])) ++m;
    if (m < g.size()) {
        std::ostringstream os;
        os << "rate invalid from tau=" << grid[m] << "; analysis truncated";
        report.warnings.push_back(os.str());
    }
    if (m == 0) return report;
    report.analyzable_end = grid[m - 1];
    const double tol = search.refine_fraction * (hi - lo);

    // Walk the discrete slopes; a bracket spans from the start of the last
    // signed slope to the end of the first slope with the opposite sign.
    int last_sign = 0;
    std::size_t last_start = 0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const int s = sign_of(g[k + 1] - g[k]);
        if (s == 0) continue;
        if (last_sign != 0 && s != last_sign) {
            const double a = grid[last_start], b = grid[k + 1];
            const int sense = last_sign > 0 ? 1 : -1;
            const auto r = golden(gamma, a, b, tol, sense);
            if (!r) {
                std::ostringstream os;
                os << "bracket [" << a << ", " << b << "] hit an invalid rate during refinement; discarded";
                report.warnings.push_back(os.str());
            } else {
                const Refined& best = *r;
                if (best.x > lo && best.x < hi)
                    report.transitions.push_back({best.x,
                                                  sense > 0 ? ExtremumKind::MaxToAntiZenoBoundary
                                                            : ExtremumKind::MinBoundary,
                                                  best.fx, best.width});
            }
        }
        last_sign = s;
        last_start = k;
    }

    std::sort(report.transitions.begin(), report.transitions.end(),
              [](const auto& x, const auto& y) { return x.tau_star < y.tau_star; });
    std::vector<TransitionPoint> merged;
    for (const auto& t : report.transitions)
        if (merged.empty() || std::abs(t.tau_star - merged.back().tau_star) >= kMergeDistance ||
            t.kind != merged.back().kind)
            merged.push_back(t);
    report.transitions = std::move(merged);
    return report;
}

TransitionReport find_transitions(const ValidatedConfig& config, double lo, double hi, int n_grid,
                                  const QuadratureSpec& spec, double refine_fraction) {
    const auto gamma = [&config, &spec](double tau) {
        const RatePoint p = rate(config, tau, spec);
        return p.ok() ? *p.gamma : std::numeric_limits<double>::quiet_NaN();
    };
    ExtremumSearch search;
    search.n_grid = n_grid;
    search.refine_fraction = refine_fraction;
    return find_extrema(gamma, lo, hi, search);
}

std::vector<RateCurve> sweep(std::span<const ModelConfig> configs, double lo, double hi, int n_grid,
                             const QuadratureSpec& spec) {
    const auto taus = linear_grid(lo, hi, n_grid);
    std::vector<RateCurve> out(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        out[i].config_digest = digest(configs[i]);
        const auto v = validate(configs[i]);
        if (!v.ok()) {
            out[i].error = ValidationError(v.errors).what();
            continue;
        }
        try {
            out[i] = rate_curve(*v.config, taus, spec);
        } catch (const std::exception& e) {
            out[i].points.clear();
            out[i].error = e.what();
        }
    }
    return out;
}

} // namespace qzeno
