#include "qwalk/series.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

PowerSeries mul(const PowerSeries& x, const PowerSeries& y, int order) {
    PowerSeries out;
    out.order = order;
    out.coeffs.assign(order + 1, cdouble{});
    const int nx = static_cast<int>(x.coeffs.size());
    const int ny = static_cast<int>(y.coeffs.size());
    for (int i = 0; i < nx && i <= order; ++i) {
        if (x.coeffs[i] == cdouble{}) continue;
        const int jmax = std::min(ny - 1, order - i);
        for (int j = 0; j <= jmax; ++j)
            out.coeffs[i + j] += x.coeffs[i] * y.coeffs[j];
    }
    return out;
}

PowerSeries pow(const PowerSeries& x, int k, int order) {
    PowerSeries out;
    out.order = order;
    out.coeffs.assign(order + 1, cdouble{});
    out.coeffs[0] = 1.0;
    for (int i = 0; i < k; ++i) out = mul(out, x, order);
    return out;
}

namespace {

// Coefficients s_t of the principal sqrt(1 + p2 z^2 + p4 z^4) from
// (sum s z^t)^2 = 1 + p2 z^2 + p4 z^4; only even powers are nonzero.
std::vector<cdouble> sqrt_series(cdouble p2, cdouble p4, int order) {
    std::vector<cdouble> s(order + 1, cdouble{});
    s[0] = 1.0;
    for (int t = 2; t <= order; t += 2) {
        cdouble rhs = (t == 2) ? p2 : (t == 4) ? p4 : cdouble{};
        for (int j = 2; j <= t - 2; j += 2) rhs -= s[j] * s[t - j];
        s[t] = rhs / 2.0;
    }
    return s;
}

// Numerator is 1 -/+ det z^2 - S(z) for f/g; its z^0 term cancels against
// S(0)=1, so the division by z leaves a clean series starting at z^1.
PowerSeries closed_form(const Coin& coin, bool want_f, int order) {
    const cdouble X = coin.a() * coin.d();
    const cdouble Y = coin.b() * coin.c();
    const std::vector<cdouble> s = sqrt_series(-2.0 * (X + Y), (X - Y) * (X - Y), order + 1);
    const cdouble det = X - Y;
    const cdouble det_sign = want_f ? cdouble{-1.0} : cdouble{1.0};
    const cdouble div = 2.0 * (want_f ? coin.c() : coin.a());
    PowerSeries out;
    out.order = order;
    out.coeffs.assign(order + 1, cdouble{});
    for (int t = 1; t <= order; t += 2) {
        cdouble num = -s[t + 1];
        if (t == 1) num += det_sign * det;
        out.coeffs[t] = num / div;
    }
    return out;
}

}  // namespace

std::pair<PowerSeries, PowerSeries> series_fg_recurrence(const Coin& coin, int order) {
    if (order < 1) throw std::domain_error("series order must be >= 1");
    PowerSeries f, g;
    f.order = g.order = order;
    f.coeffs.assign(order + 1, cdouble{});
    g.coeffs.assign(order + 1, cdouble{});
    f.coeffs[1] = coin.b();
    g.coeffs[1] = coin.d();
    // (f g)_{t-1} depends on coefficients of order < t, so one forward sweep
    // closes the recursion f_t = a (f g)_{t-1}, g_t = c (f g)_{t-1}.
    for (int t = 2; t <= order; ++t) {
        cdouble conv{};
        for (int j = 1; j <= t - 2; ++j) conv += f.coeffs[j] * g.coeffs[t - 1 - j];
        f.coeffs[t] = coin.a() * conv;
        g.coeffs[t] = coin.c() * conv;
    }
    return {f, g};
}

PowerSeries series_f(const Coin& coin, int order) {
    if (order < 1) throw std::domain_error("series order must be >= 1");
    if (std::abs(coin.c()) < 1e-14) return series_fg_recurrence(coin, order).first;
    return closed_form(coin, true, order);
}

PowerSeries series_g(const Coin& coin, int order) {
    if (order < 1) throw std::domain_error("series order must be >= 1");
    if (std::abs(coin.a()) < 1e-14) return series_fg_recurrence(coin, order).second;
    return closed_form(coin, false, order);
}

PowerSeries wall_arrival_series(const Coin& coin, const StartSpinor& start, int M, int order) {
    if (M < 1) throw std::domain_error("wall distance M must be >= 1");
    const PowerSeries f = series_f(coin, order);
    const PowerSeries g = series_g(coin, order);
    const PowerSeries gm1 = pow(g, M - 1, order);
    PowerSeries out;
    out.order = order;
    out.coeffs.assign(order + 1, cdouble{});
    const PowerSeries fg = mul(f, gm1, order);
    const PowerSeries gg = mul(g, gm1, order);
    for (int t = 0; t <= order; ++t)
        out.coeffs[t] = start.alpha * fg.coeffs[t] + start.beta * gg.coeffs[t];
    return out;
}

}  // namespace qwalk
