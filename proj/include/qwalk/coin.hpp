#ifndef QWALK_COIN_HPP
#define QWALK_COIN_HPP

#include <complex>

#include <Eigen/Dense>

namespace qwalk {

using cdouble = std::complex<double>;

// 2x2 unitary coin, parameterized by (rho, phi, psi, eta):
//
//   U = e^{i eta} [ e^{i(phi+psi)} sqrt(rho)        e^{i(-phi+psi)} sqrt(1-rho) ]
//                 [ e^{i(phi-psi)} sqrt(1-rho)     -e^{i(-phi-psi)} sqrt(rho)   ]
//
// Column s is the image of basis direction s: a = <L|U|L>, b = <R|U|L>,
// c = <L|U|R>, d = <R|U|R>.  rho = 1/2 with zero phases is the Hadamard coin
// (a = b = c = 1/sqrt(2), d = -1/sqrt(2)).
struct Coin {
    double rho = 0.5;
    double phi = 0.0;
    double psi = 0.0;
    double eta = 0.0;
    Eigen::Matrix2cd U;

    cdouble a() const { return U(0, 0); }
    cdouble b() const { return U(1, 0); }
    cdouble c() const { return U(0, 1); }
    cdouble d() const { return U(1, 1); }
};

// Normalized two-component start state (alpha, beta) on the origin site.
// l = |alpha|, r = |beta|, Phi = arg(alpha) - arg(beta).
struct StartSpinor {
    cdouble alpha{1.0, 0.0};
    cdouble beta{0.0, 0.0};

    double l() const { return std::abs(alpha); }
    double r() const { return std::abs(beta); }
    double Phi() const { return std::arg(alpha) - std::arg(beta); }
};

// Throws std::domain_error unless 0 <= rho <= 1.
Coin make_coin(double rho, double phi = 0.0, double psi = 0.0, double eta = 0.0);

Coin hadamard_coin();

// Scales (alpha, beta) to unit norm; throws std::domain_error on the zero vector.
StartSpinor make_start(cdouble alpha, cdouble beta);

// Phase compensation: the walk with coin (rho, phi, psi, eta) and start
// (alpha, beta) has exactly the same site probabilities as the walk with coin
// (rho, 0, 0, 0) and this transformed start.  The start phase difference Phi
// becomes Phi + 2 phi; eta drops out entirely.
StartSpinor compensated_start(const Coin& coin, const StartSpinor& start);

}  // namespace qwalk

#endif
