#ifndef QWALK_EXIT_PROBS_HPP
#define QWALK_EXIT_PROBS_HPP

#include "qwalk/coin.hpp"

namespace qwalk {

// Total arrival probability at a wall M sites to the right of the origin,
// resolved by start component:
//
//   r = |alpha|^2 p + |beta|^2 q + 2 |alpha||beta| cos(Phi) cross
//
// p weights the left-moving start component, q the right-moving one, and
// cross the interference between them (Phi is the relative start phase).
struct ExitProbs {
    double p;
    double q;
    double cross;
    double r;
};

// Evaluates p, q, cross as contour integrals of the arrival generating
// functions over the unit circle, using composite Gauss-Legendre panels
// refined toward the four branch points of the square root.
//
// Requires rho in (0, 1) and M >= 1.  Coin phases do not change p, q, cross;
// for a coin with nonzero phases pass the start spinor compensated for them
// (see compensated_start), which shifts Phi by 2*phi.
ExitProbs exit_prob_one_wall(double rho, const StartSpinor& start, long M,
                             double tol = 1e-11);

// Convenience overload: compensates the start for the coin phases and
// evaluates at the coin's rho.
ExitProbs exit_prob_one_wall(const Coin& coin, const StartSpinor& start, long M,
                             double tol = 1e-11);

// Closed-form M -> infinity limits of p, q, cross (and their combination r)
// for parameter rho in (0, 1).
ExitProbs exit_prob_limit(double rho, const StartSpinor& start);

// Truncated large-M expansion of the arrival probabilities for the balanced
// coin (rho = 1/2).  `terms` in [1, 5] adds corrections in powers 1/M^2
// through 1/M^6 on top of the M -> infinity limits; requires M >= 2.
ExitProbs asymptotic_exit(long M, int terms,
                          const StartSpinor& start = make_start({0, 0}, {1, 0}));

}  // namespace qwalk

#endif
