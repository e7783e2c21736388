#include "qwalk/exit_probs.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "qwalk/quadrature.hpp"

namespace qwalk {

using std::numbers::pi;

namespace {

// Arrival generating functions on the unit circle z = exp(i*theta) for the
// rho-family coin (phases zero):
//
//   S = sqrt(1 - 2(1-2 rho) z^2 + z^4)
//   F = (1 + z^2 - S) / (2 sqrt(1-rho) z)      left-moving start component
//   G = (1 - z^2 - S) / (2 sqrt(rho) z)        right-moving start component
//
// The principal square root is the branch that matches the power series at
// z = 0; the radicand never meets the negative real axis, so S is continuous
// except at the four branch points on the circle.
struct CircleEval {
    double rho, sa, sc;

    explicit CircleEval(double rho_)
        : rho(rho_), sa(std::sqrt(rho_)), sc(std::sqrt(1.0 - rho_)) {}

    void operator()(double theta, cdouble& F, cdouble& G) const {
        const cdouble z = std::polar(1.0, theta);
        const cdouble z2 = z * z;
        const cdouble S = std::sqrt(1.0 - 2.0 * (1.0 - 2.0 * rho) * z2 + z2 * z2);
        F = (1.0 + z2 - S) / (2.0 * sc * z);
        G = (1.0 - z2 - S) / (2.0 * sa * z);
    }
};

// Panel boundaries: the four branch points theta in {+-theta_b, +-(pi-theta_b)}
// plus a geometric ladder around each.  |G| = 1 on the arcs through theta = 0
// and theta = pi; on the remaining arcs |G| < 1 with a boundary layer of
// width ~ 1/M^2 next to each branch point, which the ladder resolves.
std::vector<double> branch_splits(double rho, long M) {
    const double tb = 0.5 * std::acos(1.0 - 2.0 * rho);
    const double floor_width =
        std::max(1e-13, 0.05 / (static_cast<double>(M) * static_cast<double>(M)));
    std::vector<double> splits;
    for (double b : {tb, pi - tb, -tb, -(pi - tb)}) {
        splits.push_back(b);
        for (double d = 0.3; d > floor_width; d *= 0.25) {
            splits.push_back(b - d);
            splits.push_back(b + d);
        }
    }
    return splits;
}

double combine(double p, double q, double cross, const StartSpinor& start) {
    const double l = start.l(), r = start.r();
    return l * l * p + r * r * q + 2.0 * l * r * std::cos(start.Phi()) * cross;
}

struct ExitKernel {
    double p, q, cross;
};

// The contour integrals depend only on (rho, M, tol), not on the start state,
// and are deterministic; caching them makes sweeps over starts at a fixed
// geometry cost only the recombination.
ExitKernel exit_kernel(double rho, long M, double tol) {
    using Key = std::tuple<double, long, double>;
    static std::map<Key, ExitKernel> cache;
    static std::mutex mutex;
    const Key key{rho, M, tol};
    {
        const std::lock_guard<std::mutex> lock(mutex);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const CircleEval eval(rho);
    const std::array<double, 3> ints = integrate_adaptive_many<3>(
        [&](double theta) {
            cdouble F, G;
            eval(theta, F, G);
            const double tail = std::pow(std::norm(G), M - 1);
            return std::array<double, 3>{std::norm(F) * tail, std::norm(G) * tail,
                                         (F * std::conj(G)).real() * tail};
        },
        -pi, pi, branch_splits(rho, M), 256, tol);

    const ExitKernel kernel{ints[0] / (2.0 * pi), ints[1] / (2.0 * pi),
                            ints[2] / (2.0 * pi)};
    const std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, kernel);
    return kernel;
}

}  // namespace

ExitProbs exit_prob_one_wall(double rho, const StartSpinor& start, long M, double tol) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::domain_error("exit probabilities require rho in (0, 1)");
    if (M < 1) throw std::domain_error("wall distance must satisfy M >= 1");

    const ExitKernel kernel = exit_kernel(rho, M, tol);
    ExitProbs out;
    out.p = kernel.p;
    out.q = kernel.q;
    out.cross = kernel.cross;
    out.r = combine(out.p, out.q, out.cross, start);
    return out;
}

ExitProbs exit_prob_one_wall(const Coin& coin, const StartSpinor& start, long M,
                             double tol) {
    return exit_prob_one_wall(coin.rho, compensated_start(coin, start), M, tol);
}

ExitProbs exit_prob_limit(double rho, const StartSpinor& start) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::domain_error("exit probabilities require rho in (0, 1)");
    ExitProbs out;
    const double ratio = std::sqrt(1.0 / rho - 1.0);
    out.p = 2.0 / (pi * ratio) + rho * std::acos(1.0 - 2.0 * rho) / ((1.0 - rho) * pi) -
            rho / (1.0 - rho);
    out.q = std::asin(2.0 * rho - 1.0) / pi + 0.5;
    const double clr = 1.0 / ratio -
                       (2.0 / pi) * (1.0 + (2.0 * rho - 1.0) /
                                               std::sqrt(rho * (1.0 - rho)) *
                                               std::asin(std::sqrt(rho)));
    out.cross = -0.5 * clr;
    out.r = combine(out.p, out.q, out.cross, start);
    return out;
}

ExitProbs asymptotic_exit(long M, int terms, const StartSpinor& start) {
    if (M < 2) throw std::domain_error("asymptotic expansion requires M >= 2");
    if (terms < 1 || terms > 5)
        throw std::domain_error("asymptotic expansion supports 1 to 5 terms");

    // Correction coefficients for powers 1/M^2 .. 1/M^6 (balanced coin).
    static const double cp[5] = {1.0 / (2 * pi), 1.0 / pi, 2.0 / pi, 4.0 / pi,
                                 79.0 / (8 * pi)};
    static const double cq[5] = {1.0 / (2 * pi), 0.0, 1.0 / (2 * pi), 0.0,
                                 19.0 / (8 * pi)};
    static const double cx[5] = {0.0, -1.0 / (2 * pi), -3.0 / (4 * pi), -2.0 / pi,
                                 -15.0 / (4 * pi)};

    ExitProbs out;
    out.p = 2.0 / pi - 0.5;
    out.q = 0.5;
    out.cross = 1.0 / pi - 0.5;
    double inv = 1.0 / (static_cast<double>(M) * static_cast<double>(M));
    for (int k = 0; k < terms; ++k) {
        out.p += cp[k] * inv;
        out.q += cq[k] * inv;
        out.cross += cx[k] * inv;
        inv /= static_cast<double>(M);
    }
    out.r = combine(out.p, out.q, out.cross, start);
    return out;
}

}  // namespace qwalk
