#include "qwalk/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qwalk {

namespace {

struct OlsResult {
    double slope = 0.0, intercept = 0.0, ssr = 0.0;
};

OlsResult ols_loglog(const std::vector<double>& logt, const std::vector<double>& vals,
                     double constant) {
    const size_t n = vals.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> ys(n);
    for (size_t i = 0; i < n; ++i) {
        ys[i] = std::log(vals[i] - constant);
        sx += logt[i];
        sy += ys[i];
        sxx += logt[i] * logt[i];
        sxy += logt[i] * ys[i];
    }
    const double dn = static_cast<double>(n);
    OlsResult r;
    r.slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    r.intercept = (sy - r.slope * sx) / dn;
    for (size_t i = 0; i < n; ++i) {
        const double resid = ys[i] - (r.intercept + r.slope * logt[i]);
        r.ssr += resid * resid;
    }
    return r;
}

}  // namespace

DecayFit fit_decay(const AbsorptionRecord& record, DecayModel model, long t_lo, long t_hi) {
    if (t_lo < 1 || t_hi > record.T || t_lo >= t_hi)
        throw std::domain_error("fit window must satisfy 1 <= t_lo < t_hi <= T");
    std::vector<double> logt, vals;
    logt.reserve(t_hi - t_lo + 1);
    vals.reserve(t_hi - t_lo + 1);
    double vmin = 1.0;
    for (long t = t_lo; t <= t_hi; ++t) {
        const double v = record.remaining[t - 1];
        if (v <= 0.0)
            throw std::domain_error("remaining probability must be strictly positive on the fit window");
        logt.push_back(std::log(static_cast<double>(t)));
        vals.push_back(v);
        vmin = std::min(vmin, v);
    }

    DecayFit fit;
    if (model == DecayModel::power_law) {
        const OlsResult r = ols_loglog(logt, vals, 0.0);
        fit.exponent = r.slope;
        fit.coefficient = std::exp(r.intercept);
        fit.constant = 0.0;
        return fit;
    }

    // The plateau cannot come from residual minimization: data of the form
    // c + A t^s with s < 0 looks almost perfectly flat on log-log axes, so
    // least squares prefers (exponent 0, constant 0) over the true split.
    // Instead, three geometrically spaced samples pin the constant: for
    // v(t) = c + A t^s,
    //   (v(t/4) - v(t/2)) / (v(t/2) - v(t)) = 2^{-s},
    // then A t^s = (v(t/2) - v(t)) / (2^{-s} - 1) and c = v(t) - A t^s.
    const double v2 = record.remaining[t_hi - 1];
    const double v1 = record.remaining[std::max<long>(1, t_hi / 2) - 1];
    const double v0 = record.remaining[std::max<long>(1, t_hi / 4) - 1];
    const double d01 = v0 - v1, d12 = v1 - v2;
    double c = 0.0;
    if (d12 > 0.0 && d01 > d12) c = v2 - d12 / (d01 / d12 - 1.0);
    c = std::min(std::max(c, 0.0), vmin * (1.0 - 1e-12));
    const OlsResult r = ols_loglog(logt, vals, c);
    fit.exponent = r.slope;
    fit.coefficient = std::exp(r.intercept);
    fit.constant = c;
    return fit;
}

}  // namespace qwalk
