#include "qwalk/modes.hpp"

#include <cmath>
#include <numbers>

namespace qwalk {

namespace {

void require_rho(double rho) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::domain_error("eigenmode operations require rho in (0, 1)");
}

// c_k = cos k / sqrt(1/rho - sin^2 k); band velocities are -+ c_k.
double ck(double rho, double k) {
    const double s = std::sin(k);
    return std::cos(k) / std::sqrt(1.0 / rho - s * s);
}

}  // namespace

Eigen::Matrix2cd momentum_step(const Coin& coin, double k) {
    const cdouble up = std::polar(1.0, k), dn = std::polar(1.0, -k);
    Eigen::Matrix2cd U;
    U << coin.a() * up, coin.c() * up, coin.b() * dn, coin.d() * dn;
    return U;
}

double dispersion(double rho, double k, Band band) {
    require_rho(rho);
    const double wp = -std::asin(std::sqrt(rho) * std::sin(k));
    return band == Band::plus ? wp : std::numbers::pi - wp;
}

std::pair<double, cdouble> eigvec(double rho, double k, Band band) {
    require_rho(rho);
    const double c = ck(rho, k);
    const double sign = band == Band::plus ? 1.0 : -1.0;
    const double A = std::sqrt((1.0 + sign * c) / 2.0);
    const cdouble B = sign * std::polar(std::sqrt((1.0 - sign * c) / 2.0), -k);
    return {A, B};
}

double group_velocity(double rho, double k, Band band) {
    require_rho(rho);
    return (band == Band::plus ? -1.0 : 1.0) * ck(rho, k);
}

EigenMode eigen_mode(double rho, double k, Band band) {
    EigenMode m;
    m.k = k;
    m.band = band;
    m.omega = dispersion(rho, k, band);
    std::tie(m.A, m.B) = eigvec(rho, k, band);
    m.v_group = group_velocity(rho, k, band);
    return m;
}

double reflection_prob(double rho, double k) {
    require_rho(rho);
    const double ratio = std::sqrt(1.0 / rho - 1.0);
    const double x = std::abs(std::cos(k)) / ratio;
    const double root = std::sqrt(1.0 + x * x) - x;
    return root * root;
}

}  // namespace qwalk
