#pragma once

// Centered bosonic Gaussian channels Phi*(W(z)) = W(Kz) exp(-z^T mu z / 2),
// acting on covariances as alpha -> K^T alpha K + mu.

#include <string_view>
#include <vector>

#include "egain/gaussian.hpp"

namespace egain {

class GaussianChannel {
  public:
    [[nodiscard]] const PhaseSpace &space() const { return space_; }
    [[nodiscard]] const Matrix &K() const { return k_; }
    [[nodiscard]] const Matrix &mu() const { return mu_; }
    // Certificate for mu - (i/2)(Delta - K^T Delta K). The opposite sign is its
    // complex conjugate and has the same spectrum.
    [[nodiscard]] const HermitianCert &cert() const { return cert_; }
    [[nodiscard]] bool strict() const { return cert_.definite(); }
    [[nodiscard]] bool regular() const { return regular_; }

  private:
    friend GaussianChannel make_channel(Matrix, Matrix, const PhaseSpace &, double);
    GaussianChannel(PhaseSpace space, Matrix k, Matrix mu, HermitianCert cert, bool regular)
        : space_(std::move(space)), k_(std::move(k)), mu_(std::move(mu)), cert_(cert), regular_(regular) {}

    PhaseSpace space_;
    Matrix k_;
    Matrix mu_;
    HermitianCert cert_;
    bool regular_;
};

// Throws InadmissibleError carrying the certificate when
// mu >= (i/2)(Delta - K^T Delta K) fails.
GaussianChannel make_channel(Matrix K, Matrix mu, const PhaseSpace &space, double tol = kDefaultTolerance);

namespace presets {
// One-mode channels with the minimal noise compatible with K = k I.
GaussianChannel attenuator(double k);
GaussianChannel amplifier(double k);
// K = I, mu = noise * I: additive classical noise with per-quadrature variance `noise`.
GaussianChannel classical_noise(double noise);
// Dispatch by name: "attenuator", "amplifier", "classical-noise".
GaussianChannel by_name(std::string_view name, double k, double noise);
} // namespace presets

// Block-diagonal (K1 + K2, mu1 + mu2) on the joint phase space.
GaussianChannel tensor_product(const GaussianChannel &a, const GaussianChannel &b);
// Channel that applies `first`, then `second`.
GaussianChannel compose(const GaussianChannel &first, const GaussianChannel &second);

Matrix apply_to_covariance(const GaussianChannel &channel, const Matrix &alpha);
GaussianState apply(const GaussianChannel &channel, const GaussianState &state);

// log|det K| from the LU factors; -inf when K is singular.
double log_abs_det(const Matrix &k);

// |det K|^{-1}, or +infinity for a non-regular channel.
double phi_of_identity_scale(const GaussianChannel &channel);

// log|det K|. Throws NonRegularError when det K = 0.
double minimal_entropy_gain(const GaussianChannel &channel);

// -log ||Phi[I]||. Coincides with minimal_entropy_gain for Gaussian channels.
double general_lower_bound(const GaussianChannel &channel);

struct GainReport {
    std::vector<double> beta_grid;
    std::vector<double> gains;
    // det alpha'_beta / det alpha_beta, which tends to |det K|^2.
    std::vector<double> det_ratios;
    double closed_form = 0.0;
    double lower_bound_general = 0.0;
    bool converged = false;
};

struct SweepOptions {
    bool adaptive = true;
    double tolerance = 1e-3;
    double beta_floor = 1e-12;
};

// Geometric grid from beta_max down to beta_min.
std::vector<double> default_beta_grid(double beta_max = 1.0, double beta_min = 1e-6, int points = 25);

// Exact Gaussian entropy differences H(Phi[rho_beta]) - H(rho_beta) over a
// descending beta grid. With adaptive extension the grid is continued by
// factors of 10 until the last gap is below options.tolerance or beta reaches
// options.beta_floor.
GainReport gain_beta_sweep(const GaussianChannel &channel, const QuadraticHamiltonian &h,
                           std::vector<double> beta_grid, const SweepOptions &options = {});

} // namespace egain
