#include "qwalk/escape.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "qwalk/exit_probs.hpp"
#include "qwalk/modes.hpp"
#include "qwalk/quadrature.hpp"

namespace qwalk {

using std::numbers::pi;

namespace {

// Escape density of the one-wall problem, resolved into the ell^2, r^2 and
// ell*r*cos(Phi) coefficient densities:
//
//   L_M(k) = l^2 * dl(k) + r^2 * dr(k) + l r cos(Phi) * dlr(k)
//
// with c_k = cos k / sqrt(1/rho - sin^2 k) and s = (-1)^M (exact parity, not
// a floating-point cosine):
//
//   dl  = (1 - c_k) ((1/rho + cos 2k)/(1/rho - 1) + s cos(2k(M-1)))
//   dr  = (1 - c_k) (1 - s cos(2kM))
//   dlr = 2 (cos k/sqrt(1/rho - 1)) (1 - c_k) (cos k - s cos(k(2M-1)))
//
// Valid for M > 1; the escape probability is (1/pi) times its k-integral
// over (-pi/2, pi/2).
struct EscapeDensity {
    double inv_rho, ratio, s;
    double M;

    EscapeDensity(double rho, long M_)
        : inv_rho(1.0 / rho),
          ratio(std::sqrt(1.0 / rho - 1.0)),
          s(M_ % 2 == 0 ? 1.0 : -1.0),
          M(static_cast<double>(M_)) {}

    void operator()(double k, double& dl, double& dr, double& dlr) const {
        const double sk = std::sin(k), co = std::cos(k);
        const double c = co / std::sqrt(inv_rho - sk * sk);
        const double one_minus = 1.0 - c;
        dl = one_minus *
             ((inv_rho + std::cos(2.0 * k)) / (inv_rho - 1.0) +
              s * std::cos(2.0 * k * (M - 1.0)));
        dr = one_minus * (1.0 - s * std::cos(2.0 * k * M));
        dlr = 2.0 * (co / ratio) * one_minus *
              (co - s * std::cos(k * (2.0 * M - 1.0)));
    }
};

double combine(double cl, double cr, double clr, const StartSpinor& start) {
    const double l = start.l(), r = start.r();
    return l * l * cl + r * r * cr + l * r * std::cos(start.Phi()) * clr;
}

struct DensityIntegrals {
    double cl, cr, clr;
};

// Integrates the three coefficient densities together (optionally weighted by
// the repeated reflection factor 1/(1 + P_r) = (1 + c_k)/2) over k in
// (-pi/2, pi/2).  The integrals depend only on the geometry, not on the
// start state, and are deterministic, so they are cached.
DensityIntegrals density_integrals(double rho, long M, double tol, bool reflect_weight) {
    using Key = std::tuple<double, long, double, bool>;
    static std::map<Key, DensityIntegrals> cache;
    static std::mutex mutex;
    const Key key{rho, M, tol, reflect_weight};
    {
        const std::lock_guard<std::mutex> lock(mutex);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const EscapeDensity d(rho, M);
    const std::array<double, 3> ints = integrate_adaptive_many<3>(
        [&](double k) {
            double dl, dr, dlr;
            d(k, dl, dr, dlr);
            const double w =
                reflect_weight ? 1.0 / (1.0 + reflection_prob(rho, k)) : 1.0;
            return std::array<double, 3>{dl * w, dr * w, dlr * w};
        },
        -pi / 2.0, pi / 2.0, {}, oscillation_panels(static_cast<double>(M)), tol);

    const DensityIntegrals result{ints[0] / pi, ints[1] / pi, ints[2] / pi};
    const std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, result);
    return result;
}

EscapeResult from_density(double rho, const StartSpinor& start, long M, double tol,
                          bool reflect_weight) {
    const DensityIntegrals ints = density_integrals(rho, M, tol, reflect_weight);
    EscapeResult out;
    out.C_l = ints.cl;
    out.C_r = ints.cr;
    out.C_lr = ints.clr;
    out.Lambda = combine(out.C_l, out.C_r, out.C_lr, start);
    return out;
}

// One-step reduction for a wall adjacent to the start site: after one step
// the surviving amplitude alpha sqrt(rho) + beta sqrt(1-rho) sits at -1 in
// the pure left-moving state, which is the M = 2 left-start problem.
EscapeResult reduce_nearest_wall(double rho, const StartSpinor& start, double base) {
    EscapeResult out;
    out.C_l = rho * base;
    out.C_r = (1.0 - rho) * base;
    out.C_lr = 2.0 * std::sqrt(rho * (1.0 - rho)) * base;
    out.Lambda = combine(out.C_l, out.C_r, out.C_lr, start);
    return out;
}

}  // namespace

EscapeResult escape_prob_one_wall(double rho, const StartSpinor& start, long M,
                                  double tol) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::domain_error("escape probability requires rho in (0, 1)");
    if (M < 1) throw std::domain_error("wall distance must satisfy M >= 1");
    if (M == 1) {
        const EscapeResult two = from_density(rho, start, 2, tol, false);
        return reduce_nearest_wall(rho, start, two.C_l);
    }
    return from_density(rho, start, M, tol, false);
}

EscapeResult escape_prob_limit(double rho, const StartSpinor& start) {
    const ExitProbs lim = exit_prob_limit(rho, start);
    EscapeResult out;
    out.C_l = 1.0 - lim.p;
    out.C_r = 1.0 - lim.q;
    out.C_lr = -2.0 * lim.cross;
    out.Lambda = combine(out.C_l, out.C_r, out.C_lr, start);
    return out;
}

EscapeResult transmission_two_wall(const StartSpinor& start, long M_R, double tol) {
    if (M_R < 1) throw std::domain_error("wall distance must satisfy M_R >= 1");
    const double rho = 0.5;
    if (M_R == 1) {
        const EscapeResult two = from_density(rho, start, 2, tol, true);
        return reduce_nearest_wall(rho, start, two.C_l);
    }
    return from_density(rho, start, M_R, tol, true);
}

double survival_asymptote(const BoundaryConfig& bc, double t, double P_inf) {
    if (!(t > 0.0)) throw std::domain_error("survival asymptote requires t > 0");
    switch (bc.kind) {
        case BoundaryConfig::Kind::two_wall:
            return std::sqrt(static_cast<double>(bc.M_R) / (pi * t));
        case BoundaryConfig::Kind::one_wall: {
            const double M = static_cast<double>(bc.M);
            return P_inf + M * M / (pi * t * t);
        }
        default:
            throw std::domain_error("survival asymptote requires an absorbing wall");
    }
}

}  // namespace qwalk
