#include "qwalk/series.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "harness.hpp"

using namespace qwalk;
using harness::check;
using harness::check_near;
using harness::check_throws_domain;
using harness::run_test;
using std::numbers::pi;

int main() {
    run_test("hadamard f leading coefficients", [] {
        const PowerSeries f = series_f(hadamard_coin(), 16);
        const double s = std::sqrt(0.5);
        // f = (z - z^3/2 + z^7/8 - z^11/16 + 5 z^15/128) / sqrt(2)
        check_near(f.at(1), {s, 0.0}, 1e-14, "z^1");
        check_near(f.at(3), {-s / 2, 0.0}, 1e-14, "z^3");
        check_near(f.at(5), {0.0, 0.0}, 1e-14, "z^5");
        check_near(f.at(7), {s / 8, 0.0}, 1e-14, "z^7");
        check_near(f.at(9), {0.0, 0.0}, 1e-14, "z^9");
        check_near(f.at(11), {-s / 16, 0.0}, 1e-14, "z^11");
        check_near(f.at(13), {0.0, 0.0}, 1e-14, "z^13");
        check_near(f.at(15), {5 * s / 128, 0.0}, 1e-14, "z^15");
    });

    run_test("hadamard g equals f minus sqrt(2) z", [] {
        const Coin h = hadamard_coin();
        const PowerSeries f = series_f(h, 40);
        const PowerSeries g = series_g(h, 40);
        for (int t = 0; t <= 40; ++t) {
            const cdouble want = f.at(t) - ((t == 1) ? cdouble{std::sqrt(2.0), 0.0} : cdouble{});
            check_near(g.at(t), want, 1e-12, "term " + std::to_string(t));
        }
    });

    run_test("rho=1 reflection coin: f vanishes, g = -z", [] {
        const Coin c = make_coin(1.0, 0.0, 0.0, 0.0);
        const PowerSeries f = series_f(c, 20);
        const PowerSeries g = series_g(c, 20);
        for (int t = 0; t <= 20; ++t) {
            check_near(f.at(t), {0.0, 0.0}, 0.0, "f term " + std::to_string(t));
            const cdouble want = (t == 1) ? cdouble{-1.0, 0.0} : cdouble{};
            check_near(g.at(t), want, 0.0, "g term " + std::to_string(t));
        }
    });

    run_test("closed form matches functional-equation recurrence", [] {
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> u01(0.02, 0.98), ang(-pi, pi);
        for (int i = 0; i < 20; ++i) {
            const Coin c = make_coin(u01(rng), ang(rng), ang(rng), ang(rng));
            const PowerSeries f = series_f(c, 40);
            const PowerSeries g = series_g(c, 40);
            const auto [fr, gr] = series_fg_recurrence(c, 40);
            for (int t = 0; t <= 40; ++t) {
                check_near(f.at(t), fr.at(t), 1e-12, "f term " + std::to_string(t));
                check_near(g.at(t), gr.at(t), 1e-12, "g term " + std::to_string(t));
            }
        }
    });

    run_test("even coefficients vanish", [] {
        std::mt19937 rng(5150);
        std::uniform_real_distribution<double> u01(0.0, 1.0), ang(-pi, pi);
        for (int i = 0; i < 10; ++i) {
            const Coin c = make_coin(u01(rng), ang(rng), ang(rng), ang(rng));
            const PowerSeries f = series_f(c, 41);
            const PowerSeries g = series_g(c, 41);
            for (int t = 0; t <= 40; t += 2) {
                check(std::abs(f.at(t)) == 0.0, "even f term nonzero");
                check(std::abs(g.at(t)) == 0.0, "even g term nonzero");
            }
        }
    });

    run_test("wall arrival series composes f and powers of g", [] {
        const Coin h = hadamard_coin();
        const StartSpinor s = make_start({0.6, 0.1}, {-0.3, 0.74});
        const PowerSeries f = series_f(h, 30);
        const PowerSeries g = series_g(h, 30);
        for (int M = 1; M <= 3; ++M) {
            const PowerSeries w = wall_arrival_series(h, s, M, 30);
            const PowerSeries fgm = mul(f, pow(g, M - 1, 30), 30);
            const PowerSeries gm = pow(g, M, 30);
            for (int t = 0; t <= 30; ++t)
                check_near(w.at(t), s.alpha * fgm.at(t) + s.beta * gm.at(t), 1e-13,
                           "term " + std::to_string(t));
        }
    });

    run_test("order below 1 is a domain error", [] {
        check_throws_domain([] { series_f(hadamard_coin(), 0); }, "f order 0");
        check_throws_domain([] { series_g(hadamard_coin(), -3); }, "g order -3");
    });

    return harness::summary("test_series");
}
