#pragma once

// Gaussian states, Gibbs states of quadratic Hamiltonians F = R eps R^T and
// their entropies. Entropies are in nats.

#include "egain/symplectic.hpp"

namespace egain {

class GaussianState {
  public:
    [[nodiscard]] const PhaseSpace &space() const { return space_; }
    [[nodiscard]] const Vector &mean() const { return mean_; }
    [[nodiscard]] const Matrix &alpha() const { return alpha_; }
    // Certificate for alpha + (i/2) Delta; at least semidefinite by construction.
    [[nodiscard]] const HermitianCert &cert() const { return cert_; }
    // alpha - (i/2) Delta > 0, i.e. every symplectic eigenvalue exceeds 1/2.
    [[nodiscard]] bool nondegenerate() const { return nondegenerate_; }

  private:
    friend GaussianState make_gaussian_state(const PhaseSpace &, Vector, Matrix, double);
    GaussianState(PhaseSpace space, Vector mean, Matrix alpha, HermitianCert cert, bool nondegenerate)
        : space_(std::move(space)), mean_(std::move(mean)), alpha_(std::move(alpha)), cert_(cert),
          nondegenerate_(nondegenerate) {}

    PhaseSpace space_;
    Vector mean_;
    Matrix alpha_;
    HermitianCert cert_;
    bool nondegenerate_;
};

// Validates shapes, symmetry and alpha + (i/2)Delta >= 0; throws
// InadmissibleError with the failing certificate otherwise.
GaussianState make_gaussian_state(const PhaseSpace &space, Vector mean, Matrix alpha,
                                  double tol = kDefaultTolerance);

GaussianState vacuum(const PhaseSpace &space);

// The Gaussian state with the given first moments and symmetrized second
// moments Re<R_j R_k>. The covariance is second_moments - mean mean^T.
GaussianState gaussify(const PhaseSpace &space, const Vector &mean, const Matrix &second_moments,
                       double tol = kDefaultTolerance);

class QuadraticHamiltonian {
  public:
    QuadraticHamiltonian(PhaseSpace space, Matrix epsilon, double tol = kDefaultTolerance);

    [[nodiscard]] const PhaseSpace &space() const { return space_; }
    [[nodiscard]] const Matrix &epsilon() const { return epsilon_; }

  private:
    PhaseSpace space_;
    Matrix epsilon_;
};

// Solves 2 Delta^{-1} alpha = cot(beta eps Delta). The product beta*eps is the
// only parameter that enters.
Matrix gibbs_covariance(const QuadraticHamiltonian &h, double beta, double tol = kDefaultTolerance);

// c(beta) = log Tr exp(-beta F) = 1/2 sum_j log(nu_j^2 - 1/4), evaluated as
// -sum_j log(2 sinh(beta w_j)) over the symplectic spectrum w of epsilon.
double log_partition(const QuadraticHamiltonian &h, double beta, double tol = kDefaultTolerance);

// 1/2 log det(Delta^{-1} alpha - (i/2) I) evaluated with a complex LU, the
// matrix route to c(beta). Throws NumericalError if the determinant is not
// real and positive within tolerance.
double half_log_det_shifted(const Matrix &alpha, const PhaseSpace &space, double tol = kDefaultTolerance);

struct GibbsState {
    GaussianState base;
    double beta;
    QuadraticHamiltonian hamiltonian;
    double c_beta;
};

GibbsState gibbs_state(const QuadraticHamiltonian &h, double beta, double tol = kDefaultTolerance);

// g(nu) = (nu + 1/2) log(nu + 1/2) - (nu - 1/2) log(nu - 1/2), with g(1/2) = 0.
double mode_entropy(double nu);

// Sum of g over the symplectic spectrum.
double entropy_of_covariance(const Matrix &alpha, const PhaseSpace &space, double tol = kDefaultTolerance);
double gaussian_entropy(const GaussianState &state);

// Matrix-function route:
//   1/2 log det(Delta^{-1} alpha - i/2) + Sp[(Delta^{-1} alpha) arccot(2 Delta^{-1} alpha)]
// with arccot(z) = arctan(1/z) on the principal branch, evaluated through a
// general (non-normal) complex eigendecomposition of Delta^{-1} alpha.
// Requires a nondegenerate alpha.
double entropy_matrix_function(const Matrix &alpha, const PhaseSpace &space, double tol = kDefaultTolerance);

// Tr rho F = Sp(eps alpha) + m^T eps m.
double energy_expectation(const GaussianState &state, const QuadraticHamiltonian &h);

} // namespace egain
