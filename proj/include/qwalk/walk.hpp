#ifndef QWALK_WALK_HPP
#define QWALK_WALK_HPP

#include <utility>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

struct BoundaryConfig {
    enum class Kind { none, one_wall, two_wall };
    Kind kind = Kind::none;
    long M = 1;    // right wall site (one-wall case)
    long M_L = 1;  // left wall at -M_L, right wall at M_R (two-wall case)
    long M_R = 1;
};

// Complex amplitude pair (L, R) on a finite window of lattice sites.
// Cell i holds site offset + i; [lo, hi] is the occupied site range (amplitudes
// outside it are exactly zero).
struct WalkState1D {
    long offset = 0;
    std::vector<cdouble> ampL, ampR;
    long lo = 0, hi = 0;

    cdouble L(long n) const;
    cdouble R(long n) const;
};

WalkState1D make_point_state(const StartSpinor& start);

// One application of the coined step: coin on every site, then the L component
// shifts one site left and the R component one site right,
//   L(n, t) = a L(n+1, t-1) + c R(n+1, t-1)
//   R(n, t) = b L(n-1, t-1) + d R(n-1, t-1).
// The window grows as needed; norm is preserved.
WalkState1D step(const WalkState1D& state, const Coin& coin);

double state_norm(const WalkState1D& state);

// Per-step absorbed probability series plus the measured probability still in
// the walk after each step.  Entry t-1 corresponds to step t; per_step_left
// stays empty for one-wall runs.
struct AbsorptionRecord {
    std::vector<double> per_step_left;
    std::vector<double> per_step_right;
    std::vector<double> remaining;
    long T = 0;

    double cumulative_left() const;
    double cumulative_right() const;
};

// Alternate a full step with a projective measurement at the wall site(s);
// the surviving state stays sub-normalized (no renormalization), so cumulative
// absorbed probabilities are exit probabilities directly.
AbsorptionRecord run_one_wall(const Coin& coin, const StartSpinor& start, long M, long T);
AbsorptionRecord run_two_wall(const Coin& coin, const StartSpinor& start, long M_L, long M_R,
                              long T);

// Cumulative one-wall absorption after T steps.  Identical stepping and
// absorption arithmetic to run_one_wall (bit-equal to its
// cumulative_right()), skipping the per-step survival sweep; use when only
// the total is needed and the record would dominate the cost.
double one_wall_absorption(const Coin& coin, const StartSpinor& start, long M, long T);

// Launches R(n,0) ~ exp(-n^2/width^2) cos(k0 n) against a wall at M and
// returns (measured group speed, measured reflection probability).
// Speed: centroid of the n >= 1 component tracked between one quarter and one
// half of the first-contact time.  Reflection: the incident-band weight W is
// measured just before contact as the probability at n >= 1; long after the
// collision remaining(T) = (1 - W) + W * P_r, which is solved for P_r.
// Throws std::domain_error if the packet does not fit (M < 5 width).
std::pair<double, double> wavepacket_reflection(const Coin& coin, double k0, double width,
                                                long M, long T);

}  // namespace qwalk

#endif
