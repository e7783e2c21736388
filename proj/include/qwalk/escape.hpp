#ifndef QWALK_ESCAPE_HPP
#define QWALK_ESCAPE_HPP

#include "qwalk/coin.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

// Escape (or transmission) probability resolved into start-component
// coefficients:
//
//   Lambda = l^2 C_l + r^2 C_r + l r cos(Phi) C_lr
//
// with l = |alpha|, r = |beta|, Phi the relative start phase.
struct EscapeResult {
    double Lambda;
    double C_l;
    double C_r;
    double C_lr;
};

// Probability of escape to n -> -infinity with one absorbing wall at +M,
// computed by quadrature of the mode-resolved escape density over
// k in (-pi/2, pi/2).  M = 1 reduces to the M = 2 left-start problem after
// one hand-evolved step: Lambda_1 = |alpha sqrt(rho) + beta sqrt(1-rho)|^2
// times the M = 2 left-start escape probability.
//
// Requires rho in (0, 1) and M >= 1.  Coin phases enter only through the
// start spinor; pass a compensated start for a phased coin (Phi -> Phi+2phi).
EscapeResult escape_prob_one_wall(double rho, const StartSpinor& start, long M,
                                  double tol = 1e-11);

// Closed-form M -> infinity limit of the escape coefficients.
EscapeResult escape_prob_limit(double rho, const StartSpinor& start);

// Transmission through the distant left wall when the right wall sits at
// M_R and the left wall recedes to -infinity (balanced coin only).  Each
// mode escaping leftward is summed over repeated reflections, which weights
// the escape density by 1/(1 + P_r(k)).  M_R = 1 reduces to the M_R = 2
// left-start problem exactly as above.
EscapeResult transmission_two_wall(const StartSpinor& start, long M_R,
                                   double tol = 1e-11);

// Closed-form long-time survival law: sqrt(M/(pi t)) between two walls at
// -M and +M (pass a two-wall config with M_L = M_R), and P_inf + M^2/(pi t^2)
// with a single wall at M, where P_inf is the escape probability Lambda_M.
// Requires t > 0.
double survival_asymptote(const BoundaryConfig& bc, double t, double P_inf = 0.0);

}  // namespace qwalk

#endif
