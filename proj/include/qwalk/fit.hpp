#ifndef QWALK_FIT_HPP
#define QWALK_FIT_HPP

#include "qwalk/walk.hpp"

namespace qwalk {

enum class DecayModel { power_law, power_law_plus_constant };

struct DecayFit {
    double exponent = 0.0;
    double coefficient = 0.0;
    double constant = 0.0;
};

// Least-squares fit of log(remaining - constant) against log t on the step
// window [t_lo, t_hi], ordinary least squares with uniform weights.  The pure
// power-law model pins the constant at zero; the plus-constant model first
// extracts the constant from three geometrically spaced samples at t_hi/4,
// t_hi/2, t_hi (exact for data of the form c + A t^s) and then runs the same
// least squares on the shifted values.
// Throws std::domain_error if the window leaves [1, T] or remaining is not
// strictly positive on it.
DecayFit fit_decay(const AbsorptionRecord& record, DecayModel model, long t_lo, long t_hi);

}  // namespace qwalk

#endif
