#include "qwalk/ddim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace qwalk {

namespace {

const double pi = std::acos(-1.0);

void validate_coins(const CoinBlocks& coins) {
    if (coins.d < 1) throw std::domain_error("dimension d must be >= 1");
    if (static_cast<long>(coins.blocks.size()) != coins.d)
        throw std::domain_error("coin must provide one block per axis");
}

void validate_start(const CoinBlocks& coins, const std::vector<cdouble>& start) {
    if (static_cast<long>(start.size()) != 2L * coins.d)
        throw std::domain_error("start must provide 2 d direction amplitudes");
}

// Lexicographic site sweep over [lo, hi] (last axis fastest), handing the
// callback the coordinates and the flat site index within ref's window.
template <class F>
void for_each_site(const DdimState& ref, const std::vector<long>& lo,
                   const std::vector<long>& hi, F&& fn) {
    const int d = ref.d;
    for (int j = 0; j < d; ++j)
        if (lo[j] > hi[j]) return;
    std::vector<long> n(lo);
    long flat = 0;
    for (int j = 0; j < d; ++j) flat += (lo[j] - ref.win_lo[j]) * ref.stride[j];
    for (;;) {
        fn(n.data(), flat);
        int ax = d - 1;
        for (; ax >= 0; --ax) {
            if (n[ax] < hi[ax]) {
                ++n[ax];
                flat += ref.stride[ax];
                break;
            }
            flat -= (hi[ax] - lo[ax]) * ref.stride[ax];
            n[ax] = lo[ax];
        }
        if (ax < 0) break;
    }
}

// One step from src into dst (same window).  Gather form: every cell of the
// grown box is assigned, reads outside src's box count as zero, so dst may
// hold stale data on entry.  The component arithmetic matches the 1D
// engine's real path term for term, which keeps the d = 1 reduction
// bit-exact.
void gather_step(const DdimState& src, DdimState& dst, const CoinBlocks& coins) {
    const int d = src.d;
    const int twod = 2 * d;
    for (int j = 0; j < d; ++j) {
        dst.box_lo[j] = src.box_lo[j] - 1;
        dst.box_hi[j] = src.box_hi[j] + 1;
    }
    const cdouble* in = src.amps.data();
    cdouble* out = dst.amps.data();
    bool inbox[8];
    for_each_site(src, dst.box_lo, dst.box_hi, [&](const long* n, long flat) {
        int in_count = 0;
        for (int j = 0; j < d; ++j) {
            inbox[j] = n[j] >= src.box_lo[j] && n[j] <= src.box_hi[j];
            in_count += inbox[j];
        }
        cdouble* cell = out + flat * twod;
        for (int j = 0; j < d; ++j) {
            const CoinBlock& B = coins.blocks[j];
            const int need = d - 1 + (inbox[j] ? 1 : 0);
            const long sj = src.stride[j];
            cdouble hiL{}, hiR{}, loL{}, loR{};
            if (in_count >= need) {
                if (n[j] + 1 >= src.box_lo[j] && n[j] + 1 <= src.box_hi[j]) {
                    const cdouble* nb = in + (flat + sj) * twod;
                    hiL = nb[2 * j];
                    hiR = nb[2 * j + 1];
                }
                if (n[j] - 1 >= src.box_lo[j] && n[j] - 1 <= src.box_hi[j]) {
                    const cdouble* nb = in + (flat - sj) * twod;
                    loL = nb[2 * j];
                    loR = nb[2 * j + 1];
                }
            }
            cell[2 * j] = cdouble{B.m[0][0] * hiL.real() + B.m[0][1] * hiR.real(),
                                  B.m[0][0] * hiL.imag() + B.m[0][1] * hiR.imag()};
            cell[2 * j + 1] = cdouble{B.m[1][0] * loL.real() + B.m[1][1] * loR.real(),
                                      B.m[1][0] * loL.imag() + B.m[1][1] * loR.imag()};
        }
    });
}

double box_norm(const DdimState& s) {
    const int twod = 2 * s.d;
    const cdouble* a = s.amps.data();
    double acc = 0.0;
    for_each_site(s, s.box_lo, s.box_hi, [&](const long*, long flat) {
        const cdouble* cell = a + flat * twod;
        for (int c = 0; c < twod; ++c) acc += std::norm(cell[c]);
    });
    return acc;
}

}  // namespace

double block_det(const CoinBlock& b) {
    return b.m[0][0] * b.m[1][1] - b.m[0][1] * b.m[1][0];
}

CoinBlocks make_blocks(std::vector<CoinBlock> blocks) {
    if (blocks.empty()) throw std::domain_error("dimension d must be >= 1");
    for (const CoinBlock& b : blocks) {
        const double g00 = b.m[0][0] * b.m[0][0] + b.m[1][0] * b.m[1][0];
        const double g11 = b.m[0][1] * b.m[0][1] + b.m[1][1] * b.m[1][1];
        const double g01 = b.m[0][0] * b.m[0][1] + b.m[1][0] * b.m[1][1];
        if (std::abs(g00 - 1.0) > 1e-12 || std::abs(g11 - 1.0) > 1e-12 ||
            std::abs(g01) > 1e-12)
            throw std::domain_error("coin block must be orthogonal");
    }
    CoinBlocks c;
    c.d = static_cast<int>(blocks.size());
    c.blocks = std::move(blocks);
    return c;
}

CoinBlocks hadamard_blocks(int d) {
    if (d < 1) throw std::domain_error("dimension d must be >= 1");
    const Coin h = hadamard_coin();
    CoinBlock b;
    b.m[0][0] = h.a().real();
    b.m[0][1] = h.c().real();
    b.m[1][0] = h.b().real();
    b.m[1][1] = h.d().real();
    return make_blocks(std::vector<CoinBlock>(d, b));
}

cdouble DdimState::amp(const long* n, int s) const {
    long flat = 0;
    for (int j = 0; j < d; ++j) {
        if (n[j] < win_lo[j] || n[j] > win_hi[j]) return cdouble{};
        flat += (n[j] - win_lo[j]) * stride[j];
    }
    return amps[flat * (2 * d) + (s - 1)];
}

cdouble DdimState::amp(std::initializer_list<long> n, int s) const {
    return amp(n.begin(), s);
}

long DdimState::site_count() const {
    long total = 1;
    for (int j = 0; j < d; ++j) total *= win_hi[j] - win_lo[j] + 1;
    return total;
}

DdimState make_ddim_state(int d, const std::vector<long>& win_lo,
                          const std::vector<long>& win_hi) {
    if (d < 1 || d > 8) throw std::domain_error("dimension d must be in [1, 8]");
    if (static_cast<long>(win_lo.size()) != d || static_cast<long>(win_hi.size()) != d)
        throw std::domain_error("window bounds must have one entry per axis");
    for (int j = 0; j < d; ++j)
        if (win_lo[j] > win_hi[j]) throw std::domain_error("window bounds out of order");
    DdimState s;
    s.d = d;
    s.win_lo = win_lo;
    s.win_hi = win_hi;
    s.stride.assign(d, 1);
    for (int j = d - 2; j >= 0; --j)
        s.stride[j] = s.stride[j + 1] * (win_hi[j + 1] - win_lo[j + 1] + 1);
    s.amps.assign(static_cast<size_t>(s.site_count()) * 2 * d, cdouble{});
    // empty box: lo > hi on every axis
    s.box_lo.assign(d, 1);
    s.box_hi.assign(d, 0);
    return s;
}

DdimState make_point_ddim(const CoinBlocks& coins, const std::vector<cdouble>& start,
                          const std::vector<long>& win_lo, const std::vector<long>& win_hi) {
    validate_coins(coins);
    validate_start(coins, start);
    DdimState s = make_ddim_state(coins.d, win_lo, win_hi);
    long flat = 0;
    for (int j = 0; j < s.d; ++j) {
        if (win_lo[j] > 0 || win_hi[j] < 0)
            throw std::domain_error("window must contain the origin");
        flat += (0 - win_lo[j]) * s.stride[j];
    }
    for (int c = 0; c < 2 * s.d; ++c) s.amps[flat * 2 * s.d + c] = start[c];
    s.box_lo.assign(s.d, 0);
    s.box_hi.assign(s.d, 0);
    return s;
}

DdimState step_ddim(const DdimState& state, const CoinBlocks& coins) {
    validate_coins(coins);
    if (coins.d != state.d) throw std::domain_error("coin dimension must match the state");
    const int d = state.d;
    if (state.box_lo[0] > state.box_hi[0]) {
        DdimState out = make_ddim_state(d, state.win_lo, state.win_hi);
        return out;
    }
    const DdimState* src = &state;
    DdimState grown;
    bool need_grow = false;
    for (int j = 0; j < d; ++j)
        need_grow = need_grow || state.box_lo[j] - 1 < state.win_lo[j] ||
                    state.box_hi[j] + 1 > state.win_hi[j];
    if (need_grow) {
        std::vector<long> lo(d), hi(d);
        for (int j = 0; j < d; ++j) {
            lo[j] = std::min(state.win_lo[j], state.box_lo[j] - 16);
            hi[j] = std::max(state.win_hi[j], state.box_hi[j] + 16);
        }
        grown = make_ddim_state(d, lo, hi);
        grown.box_lo = state.box_lo;
        grown.box_hi = state.box_hi;
        const int twod = 2 * d;
        for_each_site(state, state.box_lo, state.box_hi, [&](const long* n, long flat) {
            long dst_flat = 0;
            for (int j = 0; j < d; ++j) dst_flat += (n[j] - grown.win_lo[j]) * grown.stride[j];
            for (int c = 0; c < twod; ++c)
                grown.amps[dst_flat * twod + c] = state.amps[flat * twod + c];
        });
        src = &grown;
    }
    DdimState out = make_ddim_state(d, src->win_lo, src->win_hi);
    gather_step(*src, out, coins);
    return out;
}

std::vector<cdouble> uq_matrix(const CoinBlocks& coins, const std::vector<double>& q) {
    validate_coins(coins);
    const int d = coins.d;
    if (static_cast<long>(q.size()) != d)
        throw std::domain_error("wavevector q must have one entry per axis");
    const int m = 2 * d;
    std::vector<cdouble> U(static_cast<size_t>(m) * m, cdouble{});
    for (int j = 0; j < d; ++j) {
        const cdouble up = std::polar(1.0, q[j]);
        const cdouble dn = std::polar(1.0, -q[j]);
        const CoinBlock& b = coins.blocks[j];
        U[(2 * j) * m + 2 * j] = b.m[0][0] * up;
        U[(2 * j) * m + 2 * j + 1] = b.m[0][1] * up;
        U[(2 * j + 1) * m + 2 * j] = b.m[1][0] * dn;
        U[(2 * j + 1) * m + 2 * j + 1] = b.m[1][1] * dn;
    }
    return U;
}

std::vector<double> dispersion_ddim(const CoinBlocks& coins, const std::vector<double>& q) {
    validate_coins(coins);
    if (static_cast<long>(q.size()) != coins.d)
        throw std::domain_error("wavevector q must have one entry per axis");
    for (double qj : q)
        if (!(std::abs(qj) <= pi)) throw std::domain_error("each |q_j| must be <= pi");
    const int m = 2 * coins.d;
    const std::vector<cdouble> U = uq_matrix(coins, q);
    Eigen::MatrixXcd M(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) M(r, c) = U[static_cast<size_t>(r) * m + c];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, false);
    std::vector<double> omega(m);
    for (int i = 0; i < m; ++i) omega[i] = -std::arg(solver.eigenvalues()[i]);
    std::sort(omega.begin(), omega.end());
    return omega;
}

FreeRun run_free(const CoinBlocks& coins, const std::vector<cdouble>& start, long T,
                 double margin) {
    validate_coins(coins);
    validate_start(coins, start);
    if (T < 1) throw std::domain_error("step count T must be >= 1");
    const int d = coins.d;
    const int twod = 2 * d;
    double v_max = 0.0;
    for (const CoinBlock& b : coins.blocks) v_max = std::max(v_max, std::abs(b.m[0][0]));
    const std::vector<long> lo(d, -T), hi(d, T);
    DdimState cur = make_point_ddim(coins, start, lo, hi);
    DdimState nxt = make_ddim_state(d, lo, hi);
    FreeRun run;
    run.norm.reserve(T);
    run.front_leakage.reserve(T);
    run.peak_amp.reserve(T);
    for (long t = 1; t <= T; ++t) {
        gather_step(cur, nxt, coins);
        std::swap(cur, nxt);
        const double front = v_max * static_cast<double>(t) + margin;
        double total = 0.0, outside = 0.0, peak2 = 0.0;
        const cdouble* a = cur.amps.data();
        for_each_site(cur, cur.box_lo, cur.box_hi, [&](const long* n, long flat) {
            const cdouble* cell = a + flat * twod;
            double p = 0.0;
            for (int c = 0; c < twod; ++c) {
                const double w = std::norm(cell[c]);
                p += w;
                peak2 = std::max(peak2, w);
            }
            total += p;
            bool out = false;
            for (int j = 0; j < d; ++j)
                out = out || std::abs(static_cast<double>(n[j])) > front;
            if (out) outside += p;
        });
        run.norm.push_back(total);
        run.front_leakage.push_back(total > 0.0 ? outside / total : 0.0);
        run.peak_amp.push_back(std::sqrt(peak2));
    }
    run.state = std::move(cur);
    return run;
}

AbsorptionRecord run_absorbing_hyperplane(const CoinBlocks& coins,
                                          const std::vector<cdouble>& start, long M, long T) {
    validate_coins(coins);
    validate_start(coins, start);
    if (M < 1) throw std::domain_error("wall distance M must be >= 1");
    if (T < 1) throw std::domain_error("step count T must be >= 1");
    const int d = coins.d;
    const int twod = 2 * d;
    std::vector<long> lo(d, -T), hi(d, T);
    hi[0] = std::max(T, M);
    DdimState cur = make_point_ddim(coins, start, lo, hi);
    DdimState nxt = make_ddim_state(d, lo, hi);
    AbsorptionRecord rec;
    rec.T = T;
    rec.per_step_right.reserve(T);
    rec.remaining.reserve(T);
    std::vector<long> slice_lo(d), slice_hi(d);
    for (long t = 1; t <= T; ++t) {
        gather_step(cur, nxt, coins);
        std::swap(cur, nxt);
        cur.box_hi[0] = std::min(cur.box_hi[0], M);
        double absorbed = 0.0;
        if (cur.box_hi[0] == M) {
            slice_lo = cur.box_lo;
            slice_hi = cur.box_hi;
            slice_lo[0] = slice_hi[0] = M;
            cdouble* a = cur.amps.data();
            for_each_site(cur, slice_lo, slice_hi, [&](const long*, long flat) {
                cdouble* cell = a + flat * twod;
                for (int c = 0; c < twod; ++c) {
                    absorbed += std::norm(cell[c]);
                    cell[c] = cdouble{};
                }
            });
            cur.box_hi[0] = M - 1;
        }
        rec.per_step_right.push_back(absorbed);
        rec.remaining.push_back(box_norm(cur));
    }
    return rec;
}

double hyperplane_survival_estimate(const AbsorptionRecord& record, double axis1_weight,
                                    long M) {
    if (record.remaining.empty()) throw std::domain_error("record must cover at least one step");
    if (M < 1) throw std::domain_error("wall distance M must be >= 1");
    const double T = static_cast<double>(record.T);
    const double tail = axis1_weight * static_cast<double>(M) * static_cast<double>(M) /
                        (pi * T * T);
    return record.remaining.back() - tail;
}

double ddim_memory_bytes(int d, long T, long M) {
    if (d < 1) throw std::domain_error("dimension d must be >= 1");
    if (T < 1) throw std::domain_error("step count T must be >= 1");
    const double ext0 = static_cast<double>(T) + static_cast<double>(std::max(T, M)) + 1.0;
    const double ext = 2.0 * static_cast<double>(T) + 1.0;
    double sites = ext0;
    for (int j = 1; j < d; ++j) sites *= ext;
    return sites * (2.0 * d) * sizeof(cdouble) * 2.0;
}

}  // namespace qwalk
