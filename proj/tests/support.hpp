#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <random>

#include "egain/symplectic.hpp"

namespace egain::testing {

inline Matrix random_symmetric(std::mt19937_64 &rng, int n, double scale) {
    std::normal_distribution<double> normal(0.0, scale);
    Matrix a(n, n);
    for(int i = 0; i < n; ++i)
        for(int j = 0; j < n; ++j) a(i, j) = normal(rng);
    return 0.5 * (a + a.transpose());
}

// exp(Delta H) with H symmetric lies in the symplectic group.
inline Matrix random_symplectic(std::mt19937_64 &rng, const PhaseSpace &space, double scale = 0.4) {
    const Matrix h = random_symmetric(rng, space.dim(), scale);
    return (space.delta() * h).exp();
}

inline Matrix williamson_diag(const Vector &nu) {
    Matrix d = Matrix::Zero(2 * nu.size(), 2 * nu.size());
    for(Eigen::Index j = 0; j < nu.size(); ++j) d(2 * j, 2 * j) = d(2 * j + 1, 2 * j + 1) = nu(j);
    return d;
}

inline Vector random_nu(std::mt19937_64 &rng, int modes, double lo = 0.55, double hi = 3.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vector nu(modes);
    for(int j = 0; j < modes; ++j) nu(j) = u(rng);
    return nu;
}

// S^T diag(nu) S: an admissible covariance with known symplectic spectrum.
inline Matrix covariance_with_spectrum(const Matrix &s, const Vector &nu) {
    return s.transpose() * williamson_diag(nu) * s;
}

inline Matrix random_positive_definite(std::mt19937_64 &rng, int n, double floor = 0.2) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix a(n, n);
    for(int i = 0; i < n; ++i)
        for(int j = 0; j < n; ++j) a(i, j) = normal(rng);
    return a * a.transpose() / n + floor * Matrix::Identity(n, n);
}

// Thermal-state eigenvalue sum, independent of the closed-form g.
inline double thermal_entropy_series(double nu) {
    const double a = nu + 0.5;
    const double r = (nu - 0.5) / a;
    double h = 0.0;
    double p = 1.0 / a;
    for(int n = 0; n < 20000 && p > 1e-300; ++n) {
        h -= p * std::log(p);
        p *= r;
    }
    return h;
}

template<typename Derived>
double max_abs(const Eigen::MatrixBase<Derived> &m) {
    return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

} // namespace egain::testing
