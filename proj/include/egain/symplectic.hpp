#pragma once

// Dense phase-space primitives. All matrices use the interleaved ordering
// (q1, p1, ..., qs, ps) and the canonical commutation matrix
// Delta = diag([[0, -1], [1, 0]], ...).

#include <Eigen/Dense>
#include <complex>
#include <string_view>

namespace egain {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;

class PhaseSpace {
  public:
    explicit PhaseSpace(int modes);

    [[nodiscard]] int modes() const { return modes_; }
    [[nodiscard]] int dim() const { return 2 * modes_; }
    [[nodiscard]] const Matrix &delta() const { return delta_; }
    // Delta^{-1} = -Delta = Delta^T for the canonical form.
    [[nodiscard]] Matrix delta_inverse() const { return -delta_; }

    bool operator==(const PhaseSpace &other) const { return modes_ == other.modes_; }

  private:
    int modes_;
    Matrix delta_;
};

PhaseSpace canonical_form(int modes);

enum class Definiteness { positive_definite, positive_semidefinite, indefinite };

std::string_view to_string(Definiteness d);

struct HermitianCert {
    double min_eigenvalue = 0.0;
    // Absolute threshold the verdict was decided against (tol scaled by max(1, |M|)).
    double tolerance = 0.0;
    Definiteness verdict = Definiteness::indefinite;

    [[nodiscard]] bool at_least_semidefinite() const { return verdict != Definiteness::indefinite; }
    [[nodiscard]] bool definite() const { return verdict == Definiteness::positive_definite; }
};

// Eigenvalue-based definiteness verdict for a Hermitian matrix. Throws
// InvalidArgument when |M - M^*| > tol * max(1, |M|) (Frobenius norms).
HermitianCert check_hermitian_psd(const CMatrix &m, double tol = kDefaultTolerance);

// M = alpha + (i/2) sign * Delta, the matrix whose semidefiniteness is the
// uncertainty relation.
CMatrix uncertainty_matrix(const Matrix &alpha, const PhaseSpace &space, double sign = +1.0);

// Symplectic spectrum {nu_j} of a symmetric positive definite alpha, sorted
// descending. Computed as the positive half of the spectrum of the Hermitian
// matrix alpha^{1/2} (i Delta^{-1}) alpha^{1/2}.
Vector symplectic_eigenvalues(const Matrix &alpha, const PhaseSpace &space,
                              double tol = kDefaultTolerance);

struct WilliamsonDecomposition {
    // Symplectic T with T^T alpha T = diag(nu_1, nu_1, ..., nu_s, nu_s).
    Matrix transform;
    Vector nu;

    [[nodiscard]] Matrix normal_form() const;
    // alpha = T^{-T} diag(nu) T^{-1}.
    [[nodiscard]] Matrix reconstruct() const;
};

WilliamsonDecomposition williamson(const Matrix &alpha, const PhaseSpace &space,
                                   double tol = kDefaultTolerance);

[[nodiscard]] bool is_symplectic(const Matrix &t, const PhaseSpace &space,
                                 double tol = kDefaultTolerance);

// Checks symmetry to tolerance and returns (m + m^T)/2.
Matrix require_symmetric(const Matrix &m, double tol, std::string_view what);

// Block-diagonal direct sum.
Matrix direct_sum(const Matrix &a, const Matrix &b);

} // namespace egain
