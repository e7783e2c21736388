#include "qwalk/coin.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

Coin make_coin(double rho, double phi, double psi, double eta) {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::domain_error("coin parameter rho must lie in [0,1]");
    Coin coin;
    coin.rho = rho;
    coin.phi = phi;
    coin.psi = psi;
    coin.eta = eta;
    const double sr = std::sqrt(rho);
    const double sq = std::sqrt(1.0 - rho);
    const cdouble ph = std::polar(1.0, eta);
    coin.U(0, 0) = ph * std::polar(sr, phi + psi);
    coin.U(0, 1) = ph * std::polar(sq, -phi + psi);
    coin.U(1, 0) = ph * std::polar(sq, phi - psi);
    coin.U(1, 1) = -ph * std::polar(sr, -phi - psi);
    return coin;
}

Coin hadamard_coin() { return make_coin(0.5, 0.0, 0.0, 0.0); }

StartSpinor make_start(cdouble alpha, cdouble beta) {
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (n2 <= 0.0)
        throw std::domain_error("start spinor must be nonzero");
    const double inv = 1.0 / std::sqrt(n2);
    return StartSpinor{alpha * inv, beta * inv};
}

StartSpinor compensated_start(const Coin& coin, const StartSpinor& start) {
    StartSpinor out;
    out.alpha = start.alpha * std::polar(1.0, coin.phi - coin.psi);
    out.beta = start.beta * std::polar(1.0, -coin.phi - coin.psi);
    return out;
}

}  // namespace qwalk
