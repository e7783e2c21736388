// Acceptance gate: each numbered criterion prints exactly one [PASS]/[FAIL]
// line with its measured values and wall time.  Run with a criterion number
// as the only argument, or with no arguments to run all of them.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/coin.hpp"
#include "qwalk/ddim.hpp"
#include "qwalk/escape.hpp"
#include "qwalk/exit_probs.hpp"
#include "qwalk/fit.hpp"
#include "qwalk/series.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;
using std::numbers::pi;

namespace {

// Collects clause results; the criterion passes when nothing failed.
struct Report {
    std::vector<std::string> fails;
    std::ostringstream notes;

    void require(bool ok, const std::string& msg) {
        if (!ok) fails.push_back(msg);
    }
    template <typename... Args>
    void note(const char* fmt, Args... args) {
        char buf[256];
        std::snprintf(buf, sizeof buf, fmt, args...);
        if (notes.tellp() > 0) notes << ", ";
        notes << buf;
    }
};

std::string fnum(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const double kTable1[5][3] = {
    {1 - 2 / pi, 1 - 2 / pi, 2 - 4 / pi},
    {2 - 4 / pi, 3 - 8 / pi, 3 - 8 / pi},
    {4 - 10 / pi, 13 - 118 / (3 * pi), 11 - 100 / (3 * pi)},
    {14 - 124 / (3 * pi), 65 - 608 / (3 * pi), 53 - 496 / (3 * pi)},
    {66 - 614 / (3 * pi), 341 - 16046 / (15 * pi), 277 - 13036 / (15 * pi)},
};

const double kSqrt2 = std::sqrt(2.0);
const double kTable2[5][3] = {
    {1 - 1 / kSqrt2, 1 - 1 / kSqrt2, 2 - kSqrt2},
    {2 - kSqrt2, 6 - 4 * kSqrt2, 6 - 4 * kSqrt2},
    {7 - 9 / kSqrt2, 35 - 49 / kSqrt2, 30 - 21 * kSqrt2},
    {36 - 25 * kSqrt2, 204 - 144 * kSqrt2, 170 - 120 * kSqrt2},
    {205 - 289 / kSqrt2, 1189 - 1681 / kSqrt2, 986 - 697 * kSqrt2},
};

const StartSpinor kLeft = make_start({1, 0}, {0, 0});
const StartSpinor kRight = make_start({0, 0}, {1, 0});

double slope_loglog(const std::vector<double>& y, long t_lo, long t_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (long t = t_lo; t <= t_hi; ++t) {
        const double x = std::log(static_cast<double>(t)), v = std::log(y[t - 1]);
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
        ++n;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> uq_frequencies(const CoinBlocks& coins, const std::vector<double>& q) {
    const std::vector<cdouble> m = uq_matrix(coins, q);
    const int n = 2 * coins.d;
    Eigen::MatrixXcd u(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) u(r, c) = m[r * n + c];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u, false);
    std::vector<double> w;
    for (int i = 0; i < n; ++i) w.push_back(-std::arg(es.eigenvalues()[i]));
    std::sort(w.begin(), w.end());
    return w;
}

// Greatest chord distance under greedy nearest pairing of the eigenvalue
// sets on the unit circle; immune to the arg branch cut at -pi.
double spectrum_distance(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<cdouble> rest;
    for (double w : b) rest.push_back(std::polar(1.0, -w));
    double worst = 0.0;
    for (double w : a) {
        const cdouble za = std::polar(1.0, -w);
        size_t best = 0;
        for (size_t j = 1; j < rest.size(); ++j)
            if (std::abs(za - rest[j]) < std::abs(za - rest[best])) best = j;
        worst = std::max(worst, std::abs(za - rest[best]));
        rest.erase(rest.begin() + best);
    }
    return worst;
}

CoinBlock rotation_block(double theta) {
    CoinBlock b;
    b.m[0][0] = std::cos(theta);
    b.m[0][1] = -std::sin(theta);
    b.m[1][0] = std::sin(theta);
    b.m[1][1] = std::cos(theta);
    return b;
}

void criterion_1(Report& rep) {
    // Quadrature tol 1e-10 lands the true error near 1e-11, inside the 1e-10
    // gate with margin, and keeps the cold-cache call inside the 1 s budget.
    const ExitProbs e = exit_prob_one_wall(0.5, kLeft, 1, 1e-10);
    const double lim = 2.0 / pi;
    rep.require(std::abs(e.p - lim) <= 1e-10,
                "quadrature p1 off by " + fnum(std::abs(e.p - lim)));
    rep.require(std::abs(e.q - lim) <= 1e-10,
                "quadrature q1 off by " + fnum(std::abs(e.q - lim)));
    // One simulated corroboration fits the runtime budget; the p = q equality
    // itself is already held to 1e-10 by the quadrature clause above.
    const double pr = one_wall_absorption(hadamard_coin(), kRight, 1, 5000);
    rep.require(std::abs(pr - lim) <= 1e-3, "simulated q1 off by " + fnum(std::abs(pr - lim)));
    rep.note("quad err %.1e/%.1e, sim err %.1e", std::abs(e.p - lim),
             std::abs(e.q - lim), std::abs(pr - lim));
}

void criterion_2(Report& rep) {
    const ExitProbs lim = exit_prob_limit(0.5, kRight);
    rep.require(std::abs(lim.p - (2.0 / pi - 0.5)) <= 1e-10, "closed-form p limit");
    rep.require(std::abs(lim.q - 0.5) <= 1e-10, "closed-form q limit");

    Eigen::Matrix2d form;
    form << lim.p, lim.cross, lim.cross, lim.q;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(form);
    const double lo = es.eigenvalues()[0], hi = es.eigenvalues()[1];
    rep.require(std::abs(hi - 0.5753) <= 1e-4,
                "extremal maximum " + fnum(hi) + " vs 0.5753");
    rep.require(std::abs(lo - 0.0614) <= 1e-4,
                "extremal minimum " + fnum(lo) + " vs 0.0614");

    const ExitProbs e = exit_prob_one_wall(0.5, kRight, 1000);
    rep.require(std::abs(e.p - lim.p) <= 1e-4,
                "p at M=1000 off limit by " + fnum(std::abs(e.p - lim.p)));
    rep.require(std::abs(e.q - lim.q) <= 1e-4,
                "q at M=1000 off limit by " + fnum(std::abs(e.q - lim.q)));
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
        const Eigen::Vector2d v = es.eigenvectors().col(i);
        const StartSpinor s = make_start({v[0], 0.0}, {v[1], 0.0});
        const ExitProbs ext = exit_prob_one_wall(0.5, s, 1000);
        worst = std::max(worst, std::abs(ext.r - es.eigenvalues()[i]));
    }
    rep.require(worst <= 1e-4, "extremal starts at M=1000 off by " + fnum(worst));
    rep.note("extrema %.6f/%.6f, worst quad gap %.1e", hi, lo,
             std::max({worst, std::abs(e.p - lim.p), std::abs(e.q - lim.q)}));
}

void criterion_3(Report& rep) {
    double worst = 0.0;
    for (long M = 1; M <= 5; ++M) {
        const EscapeResult e = escape_prob_one_wall(0.5, kLeft, M);
        const double got[3] = {e.C_l, e.C_r, e.C_lr};
        for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(got[c] - kTable1[M - 1][c]));
    }
    rep.require(worst <= 1e-9, "worst coefficient error " + fnum(worst));
    rep.note("15 escape coefficients, max err %.1e", worst);
}

void criterion_4(Report& rep) {
    double worst = 0.0;
    for (long M = 1; M <= 5; ++M) {
        const EscapeResult e = transmission_two_wall(kLeft, M);
        const double got[3] = {e.C_l, e.C_r, e.C_lr};
        for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(got[c] - kTable2[M - 1][c]));
    }
    rep.require(worst <= 1e-9, "worst coefficient error " + fnum(worst));
    rep.note("15 transmission coefficients, max err %.1e", worst);
}

void criterion_5(Report& rep) {
    double errs[3][4];
    const long Ms[3] = {10, 20, 40};
    for (int i = 0; i < 3; ++i) {
        const ExitProbs ex = exit_prob_one_wall(0.5, kRight, Ms[i]);
        const ExitProbs as = asymptotic_exit(Ms[i], 5, kRight);
        errs[i][0] = std::abs(ex.p - as.p);
        errs[i][1] = std::abs(ex.q - as.q);
        errs[i][2] = std::abs(ex.cross - as.cross);
        errs[i][3] = std::abs(ex.r - as.r);
    }
    for (int c = 0; c < 4; ++c)
        rep.require(errs[0][c] > errs[1][c] && errs[1][c] > errs[2][c],
                    "error not decreasing in component " + std::to_string(c));
    // Largest component (p): the decay rate between M=10 and M=40 should sit
    // near the power of the first omitted correction term.
    const double order = std::log(errs[0][0] / errs[2][0]) / std::log(4.0);
    rep.require(6.5 <= order && order <= 8.5,
                "observed omitted-term order " + fnum(order) + " outside [6.5, 8.5]");
    const double at40 = std::max({errs[2][0], errs[2][1], errs[2][2], errs[2][3]});
    rep.require(at40 < 1e-8, "error at M=40 is " + fnum(at40));
    rep.note("errs p %.1e -> %.1e -> %.1e, omitted order %.2f, max at 40 %.1e",
             errs[0][0], errs[1][0], errs[2][0], order, at40);
}

void criterion_6(Report& rep) {
    double worst = 0.0;
    for (double rho : {0.1, 0.3, 0.7, 0.9}) {
        const double target = std::asin(2 * rho - 1) / pi + 0.5;
        const double got = exit_prob_one_wall(rho, kRight, 200).q;
        worst = std::max(worst, std::abs(got - target));
        rep.require(std::abs(got - target) <= 5e-3,
                    "rho=" + fnum(rho) + " off by " + fnum(std::abs(got - target)));
    }
    rep.note("four biases at M=200, max gap %.1e", worst);
}

void criterion_7(Report& rep) {
    const std::pair<double, double> res =
        wavepacket_reflection(hadamard_coin(), pi / 10, 10.0, 100, 3000);
    rep.require(std::abs(res.first - 0.689) <= 0.02,
                "group speed " + fnum(res.first) + " vs 0.689 +- 0.02");
    rep.require(std::abs(res.second - 0.184) <= 0.02,
                "reflection " + fnum(res.second) + " vs 0.184 +- 0.02");
    rep.note("speed %.4f, reflection %.4f", res.first, res.second);
}

void criterion_8(Report& rep) {
    const AbsorptionRecord two =
        run_two_wall(hadamard_coin(), kLeft, 20, 20, 100000);
    const DecayFit ftwo = fit_decay(two, DecayModel::power_law, 1000, 100000);
    const DecayFit fdiff = fit_decay(two, DecayModel::power_law, 400, 1600);
    rep.require(std::abs(ftwo.exponent - (-0.5)) <= 0.05,
                "two-wall exponent over [1e3,1e5] is " + fnum(ftwo.exponent) +
                    "; the window reaches past the slowest-mode lifetime into "
                    "exponential decay (diffusive window [400,1600] gives " +
                    fnum(fdiff.exponent) + ")");

    const AbsorptionRecord one = run_one_wall(hadamard_coin(), kLeft, 20, 20000);
    const DecayFit fone =
        fit_decay(one, DecayModel::power_law_plus_constant, 2000, 20000);
    const double lam = escape_prob_one_wall(0.5, kLeft, 20).Lambda;
    rep.require(std::abs(fone.exponent - (-2.0)) <= 0.2,
                "one-wall exponent " + fnum(fone.exponent) + " vs -2 +- 0.2");
    rep.require(std::abs(fone.constant - lam) <= 1e-3,
                "plateau off Lambda_20 by " + fnum(std::abs(fone.constant - lam)));
    rep.note("one-wall exp %.4f, plateau gap %.1e", fone.exponent,
             std::abs(fone.constant - lam));
}

void criterion_9(Report& rep) {
    const Coin coins[2] = {hadamard_coin(), make_coin(0.3, 0.4, 0.1, 0.2)};
    const StartSpinor starts_a[3] = {kLeft, kRight, make_start({0.6, 0}, {0, 0.8})};
    double worst_a = 0.0;
    for (const Coin& coin : coins)
        for (const StartSpinor& s : starts_a)
            for (long M = 1; M <= 3; ++M) {
                const AbsorptionRecord rec = run_one_wall(coin, s, M, 40);
                const PowerSeries arr = wall_arrival_series(coin, s, M, 40);
                for (long t = 1; t <= 40; ++t)
                    worst_a = std::max(worst_a, std::abs(rec.per_step_right[t - 1] -
                                                         std::norm(arr.at(t))));
            }
    rep.require(worst_a <= 1e-10, "per-step vs squared coefficients gap " + fnum(worst_a));

    const StartSpinor starts_b[5] = {kLeft, kRight, make_start({0.6, 0}, {0.8, 0}),
                                     make_start({0.6, 0}, {0, -0.8}),
                                     make_start({0.36, 0.48}, {0.8, 0})};
    // Quadrature at 1e-10 keeps each side two decades below the 1e-9 gate.
    double worst_b = 0.0;
    for (double rho : {0.3, 0.5, 0.72})
        for (const StartSpinor& s : starts_b)
            for (long M = 1; M <= 10; ++M) {
                const double r = exit_prob_one_wall(rho, s, M, 1e-10).r;
                const double lam = escape_prob_one_wall(rho, s, M, 1e-10).Lambda;
                worst_b = std::max(worst_b, std::abs(r - (1.0 - lam)));
            }
    rep.require(worst_b <= 1e-9, "arrival vs escape complement gap " + fnum(worst_b));
    rep.note("series gap %.1e (720 steps), complement gap %.1e (150 cases)", worst_a,
             worst_b);
}

void criterion_10(Report& rep) {
    const CoinBlocks h2 = hadamard_blocks(2);
    const std::vector<cdouble> uniform(4, cdouble{0.5, 0.0});

    const FreeRun free2 = run_free(h2, uniform, 400);
    double drift = 0.0;
    for (double n : free2.norm) drift = std::max(drift, std::abs(n - 1.0));
    rep.require(drift <= 1e-10, "norm drift " + fnum(drift));

    const Coin c03 = make_coin(0.3, 0.0, 0.0, 0.0);
    CoinBlock b03;
    b03.m[0][0] = c03.a().real();
    b03.m[0][1] = c03.c().real();
    b03.m[1][0] = c03.b().real();
    b03.m[1][1] = c03.d().real();
    struct Case {
        CoinBlocks blocks;
        Coin coin;
        StartSpinor s;
        long M, T;
    };
    const Case cases[2] = {
        {hadamard_blocks(1), hadamard_coin(), make_start({0.6, 0}, {0, 0.8}), 7, 300},
        {make_blocks({b03}), c03, kRight, 5, 200},
    };
    for (const Case& c : cases) {
        const AbsorptionRecord a =
            run_absorbing_hyperplane(c.blocks, {c.s.alpha, c.s.beta}, c.M, c.T);
        const AbsorptionRecord b = run_one_wall(c.coin, c.s, c.M, c.T);
        const bool same =
            a.per_step_right.size() == b.per_step_right.size() &&
            a.remaining.size() == b.remaining.size() &&
            std::memcmp(a.per_step_right.data(), b.per_step_right.data(),
                        a.per_step_right.size() * sizeof(double)) == 0 &&
            std::memcmp(a.remaining.data(), b.remaining.data(),
                        a.remaining.size() * sizeof(double)) == 0;
        rep.require(same, "d=1 record deviates from the 1D engine at bit level");
    }

    const double slope = slope_loglog(free2.peak_amp, 50, 400);
    rep.require(std::abs(slope - (-1.0)) <= 0.15,
                "d=2 peak-amplitude exponent is " + fnum(slope) +
                    " vs -1 +- 0.15; the block coin leaves the axes decoupled, so "
                    "the peak rides a one-dimensional ballistic caustic (local "
                    "exponent -1/3) instead of spreading quadratically");

    const double inv8 = 1.0 / std::sqrt(8.0);
    const std::vector<std::vector<cdouble>> points = {
        {{1, 0}, {0, 0}, {0, 0}, {0, 0}},
        {{0, 0}, {1, 0}, {0, 0}, {0, 0}},
        {uniform},
        {{0.6, 0}, {0, 0}, {0, 0}, {0.8, 0}},
        {{inv8, inv8}, {inv8, -inv8}, {0.5, 0}, {0, 0.5}},
    };
    double smin = 1.0, smax = 0.0;
    for (const std::vector<cdouble>& s : points) {
        const AbsorptionRecord rec = run_absorbing_hyperplane(h2, s, 2, 400);
        const double surv = rec.remaining.back();
        smin = std::min(smin, surv);
        smax = std::max(smax, surv);
        rep.require(surv > 0.0 && surv < 1.0, "survival " + fnum(surv) + " not in (0,1)");
    }

    const CoinBlocks plus = make_blocks({rotation_block(0.7), rotation_block(-0.4)});
    double worst_deg = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double q1 = -pi + (2 * pi * i) / 20.0, q2 = 0.3 + 0.1 * i;
        worst_deg = std::max(worst_deg,
                             spectrum_distance(uq_frequencies(plus, {q1, q2}),
                                               uq_frequencies(plus, {-q1, q2})));
        double qr = pi - q1;
        if (qr > pi) qr -= 2 * pi;
        worst_deg = std::max(worst_deg,
                             spectrum_distance(uq_frequencies(h2, {q1, q2}),
                                               uq_frequencies(h2, {qr, q2})));
    }
    rep.require(worst_deg <= 1e-9, "degeneracy multiset gap " + fnum(worst_deg));
    rep.note("norm drift %.1e, peak exponent %.3f, survival in [%.4f, %.4f], "
             "degeneracy gap %.1e",
             drift, slope, smin, smax, worst_deg);
}

struct Criterion {
    const char* label;
    void (*body)(Report&);
    double budget_s;
};

const Criterion kCriteria[10] = {
    {"nearest-wall arrival probability 2/pi", criterion_1, 1.0},
    {"distant-wall limits and extremal starts", criterion_2, 10.0},
    {"one-wall escape coefficient table", criterion_3, 5.0},
    {"two-wall transmission coefficient table", criterion_4, 5.0},
    {"large-distance asymptotic series", criterion_5, 5.0},
    {"biased-coin arrival limit", criterion_6, 10.0},
    {"wavepacket speed and reflection", criterion_7, 30.0},
    {"survival decay laws", criterion_8, 300.0},
    {"cross-method oracle suite", criterion_9, 60.0},
    {"d-dimensional walk properties", criterion_10, 300.0},
};

bool run_criterion(int id) {
    const Criterion& c = kCriteria[id - 1];
    Report rep;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        c.body(rep);
    } catch (const std::exception& e) {
        rep.fails.push_back(std::string("unexpected exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (elapsed >= c.budget_s)
        rep.fails.push_back("runtime " + fnum(elapsed) + " s exceeds the " +
                            fnum(c.budget_s) + " s budget");
    std::string msg;
    if (rep.fails.empty()) {
        msg = rep.notes.str();
    } else {
        for (size_t i = 0; i < rep.fails.size(); ++i)
            msg += (i ? "; " : "") + rep.fails[i];
        if (rep.notes.tellp() > 0) msg += " | measurements: " + rep.notes.str();
    }
    std::printf("[%s] criterion %d: %s: %s [%.1f s]\n",
                rep.fails.empty() ? "PASS" : "FAIL", id, c.label, msg.c_str(), elapsed);
    return rep.fails.empty();
}

}  // namespace

int main(int argc, char** argv) {
    int failed = 0;
    if (argc > 1) {
        const int id = std::atoi(argv[1]);
        if (id < 1 || id > 10) {
            std::fprintf(stderr, "usage: %s [criterion 1-10]\n", argv[0]);
            return 64;
        }
        failed = run_criterion(id) ? 0 : 1;
    } else {
        for (int id = 1; id <= 10; ++id)
            if (!run_criterion(id)) ++failed;
    }
    return failed;
}
