#ifndef QWALK_SERIES_HPP
#define QWALK_SERIES_HPP

#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

// Truncated power series in z; coeffs[t] is the coefficient of z^t.
struct PowerSeries {
    std::vector<cdouble> coeffs;
    int order = 0;  // highest retained power

    cdouble at(int t) const {
        return (t >= 0 && t < static_cast<int>(coeffs.size())) ? coeffs[t] : cdouble{};
    }
};

PowerSeries mul(const PowerSeries& x, const PowerSeries& y, int order);
PowerSeries pow(const PowerSeries& x, int k, int order);

// First-arrival amplitude series for the site one step to the right of the
// start: f for a walker launched in |0,L>, g for |0,R>.  Both satisfy
//   f = b z + a z f g,    g = d z + c z f g,
// with closed forms
//   f = (1 - (ad-bc) z^2 - sqrt(1 - 2(ad+bc) z^2 + (ad-bc)^2 z^4)) / (2 c z)
//   g = (1 + (ad-bc) z^2 - sqrt(1 - 2(ad+bc) z^2 + (ad-bc)^2 z^4)) / (2 a z).
// The closed form is used when the dividing entry is nonzero; otherwise the
// functional-equation recurrence is used (it needs no division).
// Throws std::domain_error for order < 1.
PowerSeries series_f(const Coin& coin, int order);
PowerSeries series_g(const Coin& coin, int order);

// Both series by iterating the functional equations; exposed so the two
// routes can be compared termwise.
std::pair<PowerSeries, PowerSeries> series_fg_recurrence(const Coin& coin, int order);

// First-arrival series at a wall at distance M >= 1 for start (alpha, beta):
// alpha f g^{M-1} + beta g^M.
PowerSeries wall_arrival_series(const Coin& coin, const StartSpinor& start, int M, int order);

}  // namespace qwalk

#endif
