#include "qzeno/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qzeno/errors.hpp"

namespace qzeno {

namespace {

constexpr std::size_t kPoints = 21;

struct Rule {
    // Kronrod abscissae on [-1, 1]: index 0 is the centre, then symmetric pairs.
    std::array<double, 11> x{};
    std::array<double, 11> wk{};
    // Gauss weights for the odd-indexed abscissae 1, 3, ..., 9.
    std::array<double, 5> wg{};
};

const Rule& rule() {
    static const Rule r = [] {
        Rule out;
        const auto& a = boost::math::quadrature::gauss_kronrod<double, kPoints>::abscissa();
        const auto& w = boost::math::quadrature::gauss_kronrod<double, kPoints>::weights();
        const auto& g = boost::math::quadrature::gauss<double, 10>::weights();
        std::copy(a.begin(), a.end(), out.x.begin());
        std::copy(w.begin(), w.end(), out.wk.begin());
        std::copy(g.begin(), g.end(), out.wg.begin());
        return out;
    }();
    return r;
}

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// Node layout for one panel: [centre, left_1, right_1, left_2, right_2, ...].
void fill_nodes(double a, double b, std::span<double> x) {
    const auto& r = rule();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    x[0] = c;
    for (std::size_t k = 1; k < 11; ++k) {
        x[2 * k - 1] = c - h * r.x[k];
        x[2 * k] = c + h * r.x[k];
    }
}

Panel reduce(double a, double b, std::span<const double> y) {
    const auto& r = rule();
    const double h = 0.5 * (b - a);
    double kron = r.wk[0] * y[0];
    double gauss = 0.0;
    for (std::size_t k = 1; k < 11; ++k) {
        const double pair = y[2 * k - 1] + y[2 * k];
        kron += r.wk[k] * pair;
        if (k % 2 == 1) gauss += r.wg[k / 2] * pair;
    }
    const double mean = 0.5 * kron;
    double asc = r.wk[0] * std::abs(y[0] - mean);
    for (std::size_t k = 1; k < 11; ++k)
        asc += r.wk[k] * (std::abs(y[2 * k - 1] - mean) + std::abs(y[2 * k] - mean));

    const double value = kron * h;
    double err = std::abs((kron - gauss) * h);
    const double resasc = asc * std::abs(h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    for (double v : y) {
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "integrand is not finite on [" << a << ", " << b << "]";
            throw QuadratureNonConvergence(os.str(), std::numeric_limits<double>::quiet_NaN(),
                                           std::numeric_limits<double>::infinity());
        }
    }
    return {a, b, value, err};
}

// Evaluates one batch covering every panel in `spans`.
void eval_panels(const BatchIntegrand& f, std::span<const std::pair<double, double>> spans,
                 std::vector<double>& x, std::vector<double>& y, std::vector<Panel>& out) {
    x.resize(spans.size() * kPoints);
    y.resize(x.size());
    for (std::size_t i = 0; i < spans.size(); ++i)
        fill_nodes(spans[i].first, spans[i].second, std::span(x).subspan(i * kPoints, kPoints));
    f(x, y);
    out.clear();
    for (std::size_t i = 0; i < spans.size(); ++i)
        out.push_back(reduce(spans[i].first, spans[i].second,
                             std::span<const double>(y).subspan(i * kPoints, kPoints)));
}

} // namespace

void QuadratureSpec::check() const {
    std::vector<ConfigError> errs;
    if (!(abs_tol > 0.0)) errs.push_back({ConfigErrorKind::BadQuadratureSpec, "abs_tol", "must be > 0"});
    if (!(rel_tol > 0.0)) errs.push_back({ConfigErrorKind::BadQuadratureSpec, "rel_tol", "must be > 0"});
    if (max_subdivisions < 1)
        errs.push_back({ConfigErrorKind::BadQuadratureSpec, "max_subdivisions", "must be >= 1"});
    if (!errs.empty()) throw ValidationError(std::move(errs));
}

IntegrationResult integrate(const BatchIntegrand& f, std::span<const double> breakpoints,
                            const QuadratureSpec& spec) {
    spec.check();
    if (breakpoints.size() < 2) throw std::invalid_argument("integrate: need at least two breakpoints");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] >= breakpoints[i - 1]))
            throw std::invalid_argument("integrate: breakpoints must be sorted ascending");

    std::vector<std::pair<double, double>> spans;
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (breakpoints[i] > breakpoints[i - 1]) spans.emplace_back(breakpoints[i - 1], breakpoints[i]);
    if (spans.empty()) return {0.0, 0.0, 0};

    std::vector<double> x, y;
    std::vector<Panel> fresh;
    eval_panels(f, spans, x, y, fresh);

    std::priority_queue<Panel> heap;
    double total = 0.0, total_err = 0.0;
    for (const auto& p : fresh) {
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    int bisections = 0;
    auto converged = [&] { return total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (!converged()) {
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (bisections >= spec.max_subdivisions || !(mid > worst.a && mid < worst.b)) {
            std::ostringstream os;
            os << "adaptive quadrature did not converge on [" << spans.front().first << ", "
               << spans.back().second << "] after " << bisections << " bisections (error "
               << total_err << ")";
            throw QuadratureNonConvergence(os.str(), total, total_err);
        }
        heap.pop();
        const std::array<std::pair<double, double>, 2> halves{{{worst.a, mid}, {mid, worst.b}}};
        eval_panels(f, halves, x, y, fresh);
        total += fresh[0].value + fresh[1].value - worst.value;
        total_err += fresh[0].error + fresh[1].error - worst.error;
        heap.push(fresh[0]);
        heap.push(fresh[1]);
        ++bisections;
    }

    // Re-sum from the panels to shed accumulated cancellation in the running totals.
    IntegrationResult res;
    res.intervals = static_cast<int>(heap.size());
    while (!heap.empty()) {
        res.value += heap.top().value;
        res.error += heap.top().error;
        heap.pop();
    }
    return res;
}

IntegrationResult integrate(const BatchIntegrand& f, double a, double b, const QuadratureSpec& spec) {
    if (!(a <= b)) throw std::invalid_argument("integrate: require a <= b");
    const std::array<double, 2> ends{a, b};
    return integrate(f, ends, spec);
}

double weighted_time_integral(const BatchIntegrand& f, double tau, const QuadratureSpec& spec) {
    if (!(tau > 0.0)) throw std::invalid_argument("weighted_time_integral: tau must be > 0");
    const BatchIntegrand weighted = [&f, tau](std::span<const double> u, std::span<double> y) {
        f(u, y);
        for (std::size_t i = 0; i < u.size(); ++i) y[i] *= tau - u[i];
    };
    return integrate(weighted, 0.0, tau, spec).value;
}

} // namespace qzeno
