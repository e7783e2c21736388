#include "qwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwalk {

cdouble WalkState1D::L(long n) const {
    const long i = n - offset;
    return (i >= 0 && i < static_cast<long>(ampL.size())) ? ampL[i] : cdouble{};
}

cdouble WalkState1D::R(long n) const {
    const long i = n - offset;
    return (i >= 0 && i < static_cast<long>(ampR.size())) ? ampR[i] : cdouble{};
}

double AbsorptionRecord::cumulative_left() const {
    double acc = 0.0;
    for (double v : per_step_left) acc += v;
    return acc;
}

double AbsorptionRecord::cumulative_right() const {
    double acc = 0.0;
    for (double v : per_step_right) acc += v;
    return acc;
}

namespace {

bool coin_is_real(const Coin& coin) {
    return coin.U(0, 0).imag() == 0.0 && coin.U(0, 1).imag() == 0.0 &&
           coin.U(1, 0).imag() == 0.0 && coin.U(1, 1).imag() == 0.0;
}

// Fixed-buffer engine: amplitudes live in [offset, offset + size); a step
// reads the occupied cells from (L, R) and writes the shifted result into the
// scratch pair, then swaps.  Walls only cap the occupied range; cells at a
// wall are zeroed by the projection, so writes past it stay exactly zero.
struct Engine {
    long offset = 0;
    std::vector<cdouble> L, R, sL, sR;
    long lo = 0, hi = 0;  // occupied site range

    // real-path coefficients (used when every coin entry has zero imaginary
    // part, which keeps the heavy runs on plain double arithmetic)
    bool real_path = false;
    double ar = 0, br = 0, cr = 0, dr = 0;
    cdouble ac, bc, cc, dc;

    void init(const Coin& coin, long window_lo, long window_hi) {
        offset = window_lo;
        const size_t n = static_cast<size_t>(window_hi - window_lo + 1);
        L.assign(n, cdouble{});
        R.assign(n, cdouble{});
        sL.assign(n, cdouble{});
        sR.assign(n, cdouble{});
        real_path = coin_is_real(coin);
        ac = coin.a();
        bc = coin.b();
        cc = coin.c();
        dc = coin.d();
        ar = ac.real();
        br = bc.real();
        cr = cc.real();
        dr = dc.real();
    }

    long idx(long n) const { return n - offset; }

    void place(long n, cdouble l, cdouble r) {
        L[idx(n)] = l;
        R[idx(n)] = r;
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }

    // One coined step over the occupied range; caller adjusts lo/hi caps.
    void advance() {
        const long i0 = idx(lo), i1 = idx(hi);
        sL[i1] = sL[i1 + 1] = cdouble{};
        sR[i0 - 1] = sR[i0] = cdouble{};
        if (real_path) {
            for (long i = i0; i <= i1; ++i) {
                const cdouble Li = L[i], Ri = R[i];
                sL[i - 1] = cdouble{ar * Li.real() + cr * Ri.real(),
                                    ar * Li.imag() + cr * Ri.imag()};
                sR[i + 1] = cdouble{br * Li.real() + dr * Ri.real(),
                                    br * Li.imag() + dr * Ri.imag()};
            }
        } else {
            for (long i = i0; i <= i1; ++i) {
                const cdouble Li = L[i], Ri = R[i];
                sL[i - 1] = ac * Li + cc * Ri;
                sR[i + 1] = bc * Li + dc * Ri;
            }
        }
        L.swap(sL);
        R.swap(sR);
        --lo;
        ++hi;
    }

    // Projective measurement at site n: returns the detected probability and
    // removes the amplitude there.
    double absorb(long n) {
        const long i = idx(n);
        double p = std::norm(L[i]);
        p += std::norm(R[i]);
        L[i] = cdouble{};
        R[i] = cdouble{};
        return p;
    }

    double norm_sum() const {
        double acc = 0.0;
        for (long i = idx(lo); i <= idx(hi); ++i) {
            acc += std::norm(L[i]);
            acc += std::norm(R[i]);
        }
        return acc;
    }
};

}  // namespace

WalkState1D make_point_state(const StartSpinor& start) {
    WalkState1D s;
    s.offset = -2;
    s.ampL.assign(5, cdouble{});
    s.ampR.assign(5, cdouble{});
    s.ampL[2] = start.alpha;
    s.ampR[2] = start.beta;
    s.lo = s.hi = 0;
    return s;
}

WalkState1D step(const WalkState1D& state, const Coin& coin) {
    WalkState1D out;
    out.offset = state.lo - 2;
    const long n = state.hi - state.lo + 5;
    out.ampL.assign(n, cdouble{});
    out.ampR.assign(n, cdouble{});
    out.lo = state.lo - 1;
    out.hi = state.hi + 1;
    const bool real_path = coin_is_real(coin);
    const double ar = coin.a().real(), br = coin.b().real(), cr = coin.c().real(),
                 dr = coin.d().real();
    for (long site = state.lo; site <= state.hi; ++site) {
        const cdouble Li = state.L(site), Ri = state.R(site);
        cdouble tl, tr;
        if (real_path) {
            tl = cdouble{ar * Li.real() + cr * Ri.real(), ar * Li.imag() + cr * Ri.imag()};
            tr = cdouble{br * Li.real() + dr * Ri.real(), br * Li.imag() + dr * Ri.imag()};
        } else {
            tl = coin.a() * Li + coin.c() * Ri;
            tr = coin.b() * Li + coin.d() * Ri;
        }
        out.ampL[site - 1 - out.offset] += tl;
        out.ampR[site + 1 - out.offset] += tr;
    }
    return out;
}

double state_norm(const WalkState1D& state) {
    double acc = 0.0;
    for (long n = state.lo; n <= state.hi; ++n) {
        acc += std::norm(state.L(n));
        acc += std::norm(state.R(n));
    }
    return acc;
}

AbsorptionRecord run_one_wall(const Coin& coin, const StartSpinor& start, long M, long T) {
    if (M < 1) throw std::domain_error("wall distance M must be >= 1");
    if (T < 1) throw std::domain_error("step count T must be >= 1");
    Engine e;
    e.init(coin, -T - 1, M + 1);
    e.place(0, start.alpha, start.beta);
    AbsorptionRecord rec;
    rec.T = T;
    rec.per_step_right.reserve(T);
    rec.remaining.reserve(T);
    for (long t = 1; t <= T; ++t) {
        e.advance();
        e.hi = std::min(e.hi, M);
        rec.per_step_right.push_back(e.absorb(M));
        rec.remaining.push_back(e.norm_sum());
    }
    return rec;
}

double one_wall_absorption(const Coin& coin, const StartSpinor& start, long M, long T) {
    if (M < 1) throw std::domain_error("wall distance M must be >= 1");
    if (T < 1) throw std::domain_error("step count T must be >= 1");
    Engine e;
    e.init(coin, -T - 1, M + 1);
    e.place(0, start.alpha, start.beta);
    double acc = 0.0;
    for (long t = 1; t <= T; ++t) {
        e.advance();
        e.hi = std::min(e.hi, M);
        acc += e.absorb(M);
    }
    return acc;
}

AbsorptionRecord run_two_wall(const Coin& coin, const StartSpinor& start, long M_L, long M_R,
                              long T) {
    if (M_L < 1 || M_R < 1) throw std::domain_error("wall distances must be >= 1");
    if (T < 1) throw std::domain_error("step count T must be >= 1");
    Engine e;
    e.init(coin, -M_L - 1, M_R + 1);
    e.place(0, start.alpha, start.beta);
    AbsorptionRecord rec;
    rec.T = T;
    rec.per_step_left.reserve(T);
    rec.per_step_right.reserve(T);
    rec.remaining.reserve(T);
    for (long t = 1; t <= T; ++t) {
        e.advance();
        e.hi = std::min(e.hi, M_R);
        e.lo = std::max(e.lo, -M_L);
        // the two measurements commute; right first by convention
        rec.per_step_right.push_back(e.absorb(M_R));
        rec.per_step_left.push_back(e.absorb(-M_L));
        rec.remaining.push_back(e.norm_sum());
    }
    return rec;
}

std::pair<double, double> wavepacket_reflection(const Coin& coin, double k0, double width,
                                                long M, long T) {
    if (M < 1) throw std::domain_error("wall distance M must be >= 1");
    if (T < 2) throw std::domain_error("step count T must be >= 2");
    if (width <= 0.0) throw std::domain_error("packet width must be positive");
    if (static_cast<double>(M) < 5.0 * width)
        throw std::domain_error("packet overlaps the wall: require M >= 5 width");

    const long ncut = std::min<long>(M - 1, static_cast<long>(std::ceil(6.0 * width)));
    Engine e;
    e.init(coin, -T - ncut - 1, M + 1);
    double norm2 = 0.0;
    for (long n = -ncut; n <= ncut; ++n) {
        const double env = std::exp(-static_cast<double>(n) * n / (width * width));
        norm2 += env * env * std::cos(k0 * n) * std::cos(k0 * n);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (long n = -ncut; n <= ncut; ++n) {
        const double env = std::exp(-static_cast<double>(n) * n / (width * width));
        e.place(n, cdouble{}, cdouble{scale * env * std::cos(k0 * n), 0.0});
    }

    std::vector<double> centroid_pos(T + 1, 0.0), mass_pos(T + 1, 0.0);
    auto probe = [&](long t) {
        double m = 0.0, c = 0.0;
        for (long n = std::max(e.lo, 1L); n <= e.hi; ++n) {
            const double p = std::norm(e.L[e.idx(n)]) + std::norm(e.R[e.idx(n)]);
            m += p;
            c += p * static_cast<double>(n);
        }
        mass_pos[t] = m;
        centroid_pos[t] = (m > 0.0) ? c / m : 0.0;
    };
    probe(0);

    long contact = 0;
    double remaining = 1.0;
    for (long t = 1; t <= T; ++t) {
        e.advance();
        e.hi = std::min(e.hi, M);
        const double absorbed = e.absorb(M);
        if (contact == 0 && absorbed > 1e-9) contact = t;
        probe(t);
        if (t == T) remaining = e.norm_sum();
    }
    if (contact == 0) contact = T;

    const long t1 = std::max(1L, contact / 4);
    const long t2 = std::max(t1 + 1, contact / 2);
    const double speed = (centroid_pos[t2] - centroid_pos[t1]) / static_cast<double>(t2 - t1);
    const double w_inc = mass_pos[t2];
    const double reflection = (w_inc > 0.0) ? (remaining - (1.0 - w_inc)) / w_inc : 0.0;
    return {speed, reflection};
}

}  // namespace qwalk
