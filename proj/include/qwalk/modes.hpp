#ifndef QWALK_MODES_HPP
#define QWALK_MODES_HPP

#include <Eigen/Dense>

#include "qwalk/coin.hpp"

namespace qwalk {

enum class Band { plus, minus };

// Plane-wave mode of the free walk at wavevector k: the spinor (A, B) obeys
// U_k (A, B)^T = e^{-i omega} (A, B)^T, with A chosen real and non-negative
// and A^2 + |B|^2 = 1 (unit-cell normalization).
struct EigenMode {
    double k;
    Band band;
    double omega;
    double A;
    cdouble B;
    double v_group;
};

// Momentum-space step operator U_k = diag(e^{ik}, e^{-ik}) * U for a general
// coin.
Eigen::Matrix2cd momentum_step(const Coin& coin, double k);

// Band frequencies: omega_+ = -asin(sqrt(rho) sin k), omega_- = pi - omega_+.
// Requires rho in (0, 1).
double dispersion(double rho, double k, Band band);

// Normalized band spinor (A, B); see EigenMode.
std::pair<double, cdouble> eigvec(double rho, double k, Band band);

// d(omega)/dk = -+ cos k / sqrt(1/rho - sin^2 k) for band +-.
double group_velocity(double rho, double k, Band band);

// All of the above in one record.
EigenMode eigen_mode(double rho, double k, Band band);

// Probability that a mode incident on an absorbing wall is reflected:
// P_r(k) = (sqrt(1 + cos^2 k/(1/rho - 1)) - |cos k|/sqrt(1/rho - 1))^2.
double reflection_prob(double rho, double k);

}  // namespace qwalk

#endif
