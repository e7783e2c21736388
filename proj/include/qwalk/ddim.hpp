#ifndef QWALK_DDIM_HPP
#define QWALK_DDIM_HPP

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

// One real 2x2 orthogonal coin block, row-major: m[row][col].
struct CoinBlock {
    double m[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
};

// Block-diagonal coin for the d-dimensional walk: block j acts on the
// direction pair (2j-1, 2j) = (left, right) along axis j.  The assembled
// 2d x 2d coin matrix is block-diagonal with these blocks.
struct CoinBlocks {
    int d = 1;
    std::vector<CoinBlock> blocks;
};

double block_det(const CoinBlock& block);

// Validates d >= 1 and orthogonality of every block to 1e-12; throws
// std::domain_error otherwise.
CoinBlocks make_blocks(std::vector<CoinBlock> blocks);

// All d blocks equal to the real balanced coin (the rho = 1/2, zero-phase
// 1D coin, taken entrywise so the d = 1 reduction is bit-exact).
CoinBlocks hadamard_blocks(int d);

// Dense amplitude field over the hypercubic window [win_lo[j], win_hi[j]]
// per axis, with 2d direction components per site.  Direction convention:
// s = 2j-1 moves one step toward -e_j, s = 2j toward +e_j (1-based s,
// axis j in [1, d]).  Storage is site-major with the last axis fastest and
// the direction index innermost.  box_lo/box_hi track the occupied
// (light-cone) bounds; amplitudes outside the box are exactly zero.
struct DdimState {
    int d = 1;
    std::vector<long> win_lo, win_hi;
    std::vector<long> box_lo, box_hi;
    std::vector<long> stride;  // flat-site-index stride per axis
    std::vector<cdouble> amps;

    // Bounds-checked read; returns 0 outside the window.  s in [1, 2d].
    cdouble amp(const long* n, int s) const;
    cdouble amp(std::initializer_list<long> n, int s) const;
    long site_count() const;
};

// Zeroed state on the given per-axis window (inclusive bounds).
DdimState make_ddim_state(int d, const std::vector<long>& win_lo,
                          const std::vector<long>& win_hi);

// Point start at the origin with the 2d direction amplitudes start[s-1];
// the window must contain the origin.
DdimState make_point_ddim(const CoinBlocks& coins, const std::vector<cdouble>& start,
                          const std::vector<long>& win_lo, const std::vector<long>& win_hi);

// One step: coin toss (block j mixes the pair (2j-1, 2j) at every site),
// then each direction component moves one lattice step along its own axis.
// Norm is preserved; the window grows automatically when the light cone
// reaches its edge.
DdimState step_ddim(const DdimState& state, const CoinBlocks& coins);

// The 2d x 2d one-step matrix in the momentum representation at wavevector
// q (length d): block j carries phases e^{+i q_j} on its first row and
// e^{-i q_j} on its second.  Row-major.
std::vector<cdouble> uq_matrix(const CoinBlocks& coins, const std::vector<double>& q);

// The 2d eigenfrequencies omega of the momentum-space step at q, i.e. the
// eigenvalues of uq_matrix are e^{-i omega}.  Sorted ascending; each
// |q_j| <= pi (throws std::domain_error otherwise).
std::vector<double> dispersion_ddim(const CoinBlocks& coins, const std::vector<double>& q);

// Free evolution from a point start, with per-step diagnostics
// (entry t-1 describes the state after step t):
//   norm          total probability (conserved),
//   front_leakage fraction of probability at sites with some
//                 |n_j| > v_max * t + margin, where v_max is the largest
//                 per-axis group speed max_j |block_j[0][0]|,
//   peak_amp      max over sites and directions of |amplitude|.
struct FreeRun {
    DdimState state;
    std::vector<double> norm, front_leakage, peak_amp;
};

FreeRun run_free(const CoinBlocks& coins, const std::vector<cdouble>& start, long T,
                 double margin = 10.0);

// Evolution with an absorbing hyperplane at n_1 = M: after every step the
// amplitudes on the hyperplane are measured and removed.  Returns the same
// record layout as the 1D one-wall run (per_step_left stays empty); at
// d = 1 the record is identical to run_one_wall bit for bit.
AbsorptionRecord run_absorbing_hyperplane(const CoinBlocks& coins,
                                          const std::vector<cdouble>& start, long M, long T);

// Survival-probability estimate from a hyperplane record: the remaining
// probability at T minus the slow 1/t^2 tail of the axis-1 escape,
// axis1_weight * M^2 / (pi T^2), where axis1_weight is the probability the
// start carries in the axis-1 direction pair.
double hyperplane_survival_estimate(const AbsorptionRecord& record, double axis1_weight,
                                    long M);

// Peak memory estimate in bytes for a T-step run at dimension d (two dense
// buffers over the window [-T, max(T, M)] x [-T, T]^{d-1} with 2d complex
// components per site).  Pass M = 0 for a free run.
double ddim_memory_bytes(int d, long T, long M);

}  // namespace qwalk

#endif
