#ifndef QWALK_QUADRATURE_HPP
#define QWALK_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qwalk {

// Thrown when an iterative numerical procedure fails to reach its target
// accuracy within its work budget.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GLRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Returns the n-point rule, computed once and cached.
const GLRule& gl_rule(int n);

// Panel count that resolves `cycles` full oscillation periods with at least
// eight panels per period.
inline long oscillation_panels(double cycles) {
    return std::max<long>(64, static_cast<long>(std::ceil(8.0 * cycles)));
}

namespace detail {

template <std::size_t N, class F>
std::array<double, N> composite_gl(F&& f, const std::vector<double>& edges, long panels,
                                   long min_per) {
    const GLRule& rule = gl_rule(16);
    const double total = edges.back() - edges.front();
    // Compensated summation across panels: at a million-plus panels the drift
    // of a plain running sum reaches the 1e-11 scale of the convergence test
    // and the successive-difference deltas stop shrinking.
    std::array<double, N> sum{}, carry{};
    long used = 0;
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
        const double a = edges[s], b = edges[s + 1];
        long np = (s + 2 == edges.size())
                      ? std::max<long>(min_per, panels - used)
                      : std::max<long>(min_per, std::lround(panels * (b - a) / total));
        used += np;
        const double h = (b - a) / static_cast<double>(np);
        for (long p = 0; p < np; ++p) {
            const double lo = a + h * static_cast<double>(p);
            const double mid = lo + 0.5 * h, half = 0.5 * h;
            std::array<double, N> acc{};
            for (std::size_t i = 0; i < rule.x.size(); ++i) {
                const std::array<double, N> v = f(mid + half * rule.x[i]);
                for (std::size_t j = 0; j < N; ++j) acc[j] += rule.w[i] * v[j];
            }
            for (std::size_t j = 0; j < N; ++j) {
                const double y = half * acc[j] - carry[j];
                const double t = sum[j] + y;
                carry[j] = (t - sum[j]) - y;
                sum[j] = t;
            }
        }
    }
    return sum;
}

}  // namespace detail

// Composite Gauss-Legendre integration over [a, b] with panel doubling, for a
// function returning N simultaneous components (shared evaluation work, e.g.
// several moments of one expensive kernel).
//
// Interior points of `splits` become fixed panel boundaries (integrable
// kinks, branch points).  `seed_panels` sets the initial resolution; for an
// oscillatory integrand it must scale with the oscillation count, see
// oscillation_panels().  Refinement doubles the panel count until two
// successive composite values agree to tol (relative to max(1, |I_j|)) in
// every component.  Panels are shared out by segment length, with a
// per-segment floor that doubles along with the budget: a fixed floor would
// let short segments keep the same panel count from one refinement to the
// next, and the loop would stall on their unchanged error while the
// successive-difference test reports convergence.
// Throws ConvergenceError if the work budget is exhausted first.
template <std::size_t N, class F>
std::array<double, N> integrate_adaptive_many(F&& f, double a, double b,
                                              std::vector<double> splits,
                                              long seed_panels, double tol = 1e-11) {
    if (!(a < b)) throw std::domain_error("integration interval must satisfy a < b");
    std::vector<double> edges;
    edges.push_back(a);
    std::sort(splits.begin(), splits.end());
    for (double s : splits)
        if (s > a && s < b && s != edges.back()) edges.push_back(s);
    edges.push_back(b);

    constexpr long kMaxPanels = 1L << 21;
    long panels = std::max<long>(seed_panels, static_cast<long>(edges.size()) - 1);
    long min_per = 1;
    std::array<double, N> prev = detail::composite_gl<N>(f, edges, panels, min_per);
    double delta = 0.0;
    while (2 * panels <= kMaxPanels) {
        panels *= 2;
        min_per *= 2;
        const std::array<double, N> cur = detail::composite_gl<N>(f, edges, panels, min_per);
        bool done = true;
        delta = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            const double dj = std::abs(cur[j] - prev[j]);
            delta = std::max(delta, dj);
            if (dj > tol * std::max(1.0, std::abs(cur[j]))) done = false;
        }
        if (done) return cur;
        prev = cur;
    }
    std::ostringstream os;
    os << "quadrature failed to converge: delta=" << delta << " at " << panels
       << " panels (tol " << tol << ")";
    throw ConvergenceError(os.str());
}

// Single-component convenience form of integrate_adaptive_many.
template <class F>
double integrate_adaptive(F&& f, double a, double b, std::vector<double> splits,
                          long seed_panels, double tol = 1e-11) {
    return integrate_adaptive_many<1>(
        [&](double x) { return std::array<double, 1>{f(x)}; }, a, b, std::move(splits),
        seed_panels, tol)[0];
}

}  // namespace qwalk

#endif
