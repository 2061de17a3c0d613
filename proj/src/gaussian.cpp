#include "egain/gaussian.hpp"

#include <cmath>
#include <string>

#include "egain/errors.hpp"

namespace egain {

GaussianState make_gaussian_state(const PhaseSpace &space, Vector mean, Matrix alpha, double tol) {
    if(mean.size() != space.dim()) throw InvalidArgument("gaussian state: mean has wrong length");
    if(alpha.rows() != space.dim() || alpha.cols() != space.dim())
        throw InvalidArgument("gaussian state: covariance shape does not match phase space");
    if(!mean.allFinite()) throw InvalidArgument("gaussian state: mean has non-finite entries");
    alpha = require_symmetric(alpha, tol, "gaussian state");

    const HermitianCert cert = check_hermitian_psd(uncertainty_matrix(alpha, space, +1.0), tol);
    if(!cert.at_least_semidefinite())
        throw InadmissibleError("gaussian state: alpha + (i/2) Delta is not positive semidefinite", cert);
    const bool nondegenerate = check_hermitian_psd(uncertainty_matrix(alpha, space, -1.0), tol).definite();
    return GaussianState(space, std::move(mean), std::move(alpha), cert, nondegenerate);
}

GaussianState vacuum(const PhaseSpace &space) {
    return make_gaussian_state(space, Vector::Zero(space.dim()), 0.5 * Matrix::Identity(space.dim(), space.dim()));
}

GaussianState gaussify(const PhaseSpace &space, const Vector &mean, const Matrix &second_moments, double tol) {
    if(mean.size() != space.dim()) throw InvalidArgument("gaussify: mean has wrong length");
    if(second_moments.rows() != space.dim() || second_moments.cols() != space.dim())
        throw InvalidArgument("gaussify: second moment matrix has wrong shape");
    return make_gaussian_state(space, mean, second_moments - mean * mean.transpose(), tol);
}

QuadraticHamiltonian::QuadraticHamiltonian(PhaseSpace space, Matrix epsilon, double tol)
    : space_(std::move(space)) {
    if(epsilon.rows() != space_.dim() || epsilon.cols() != space_.dim())
        throw InvalidArgument("hamiltonian: epsilon shape does not match phase space");
    epsilon_ = require_symmetric(epsilon, tol, "hamiltonian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(epsilon_, Eigen::EigenvaluesOnly);
    if(es.eigenvalues().minCoeff() <= tol * std::max(1.0, epsilon_.norm()))
        throw InvalidArgument("hamiltonian: epsilon must be positive definite");
}

Matrix gibbs_covariance(const QuadraticHamiltonian &h, double beta, double tol) {
    if(!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("gibbs_covariance: beta must be positive and finite");
    const PhaseSpace &space = h.space();

    // eps Delta = eps^{1/2} A eps^{-1/2} with A = eps^{1/2} Delta eps^{1/2} real
    // antisymmetric, so the spectrum of beta eps Delta is purely imaginary and
    // cot is taken through the Hermitian eigensystem of iA.
    Eigen::SelfAdjointEigenSolver<Matrix> eps(h.epsilon());
    const Matrix root = eps.operatorSqrt();
    const Matrix inv_root = eps.operatorInverseSqrt();
    const Matrix a = root * space.delta() * root;
    const CMatrix ia = Complex(0.0, 1.0) * a.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (ia + ia.adjoint()));
    if(es.info() != Eigen::Success) throw NumericalError("gibbs_covariance: eigensolver failed");

    // A has eigenvalue -i*lambda on each eigenvector of iA; cot(-i beta lambda) = i coth(beta lambda).
    CVector cot_diag(space.dim());
    for(int j = 0; j < space.dim(); ++j) {
        const double x = beta * es.eigenvalues()(j);
        if(x == 0.0) throw NumericalError("gibbs_covariance: cot singularity (zero eigenvalue of beta eps Delta)");
        cot_diag(j) = Complex(0.0, 1.0 / std::tanh(x));
    }
    const CMatrix cot_a = es.eigenvectors() * cot_diag.asDiagonal() * es.eigenvectors().adjoint();
    if(cot_a.imag().norm() > tol * std::max(1.0, cot_a.real().norm()))
        throw NumericalError("gibbs_covariance: cot(beta eps Delta) is not real");

    const Matrix cot = root * cot_a.real() * inv_root;
    const Matrix alpha = 0.5 * space.delta() * cot;
    if((alpha - alpha.transpose()).norm() > tol * std::max(1.0, alpha.norm()))
        throw NumericalError("gibbs_covariance: result is not symmetric");
    return 0.5 * (alpha + alpha.transpose());
}

double log_partition(const QuadraticHamiltonian &h, double beta, double tol) {
    if(!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("log_partition: beta must be positive");
    // nu_j = coth(beta w_j)/2 with w_j the symplectic spectrum of epsilon, so
    // 1/2 log(nu_j^2 - 1/4) = -log(2 sinh(beta w_j)); avoids cancellation in nu_j - 1/2.
    const Vector w = symplectic_eigenvalues(h.epsilon(), h.space(), tol);
    double c = 0.0;
    for(Eigen::Index j = 0; j < w.size(); ++j) {
        const double x = beta * w(j);
        c -= x + std::log(-std::expm1(-2.0 * x));
    }
    return c;
}

double half_log_det_shifted(const Matrix &alpha, const PhaseSpace &space, double tol) {
    const CMatrix m = (space.delta_inverse() * alpha).cast<Complex>() -
                      Complex(0.0, 0.5) * CMatrix::Identity(space.dim(), space.dim());
    const Complex det = m.partialPivLu().determinant();
    if(std::abs(det.imag()) > tol * std::max(1.0, std::abs(det)) || !(det.real() > 0.0))
        throw NumericalError("det(Delta^{-1} alpha - i/2) is not real positive");
    return 0.5 * std::log(det.real());
}

GibbsState gibbs_state(const QuadraticHamiltonian &h, double beta, double tol) {
    Matrix alpha = gibbs_covariance(h, beta, tol);
    GaussianState base = make_gaussian_state(h.space(), Vector::Zero(h.space().dim()), std::move(alpha), tol);
    return GibbsState{std::move(base), beta, h, log_partition(h, beta, tol)};
}

double mode_entropy(double nu) {
    if(!std::isfinite(nu) || nu < 0.5 - kDefaultTolerance)
        throw InvalidArgument("mode_entropy: symplectic eigenvalue below 1/2");
    const double below = nu - 0.5;
    const double above = nu + 0.5;
    if(below <= 0.0) return 0.0;
    // a log a - b log b = log a + b log(1 + 1/b); stable for large nu.
    return std::log(above) + below * std::log1p(1.0 / below);
}

double entropy_of_covariance(const Matrix &alpha, const PhaseSpace &space, double tol) {
    const Vector nu = symplectic_eigenvalues(alpha, space, tol);
    double h = 0.0;
    for(Eigen::Index j = 0; j < nu.size(); ++j) h += mode_entropy(nu(j));
    return h;
}

double gaussian_entropy(const GaussianState &state) { return entropy_of_covariance(state.alpha(), state.space()); }

double entropy_matrix_function(const Matrix &alpha, const PhaseSpace &space, double tol) {
    const Matrix y = space.delta_inverse() * alpha;
    Eigen::EigenSolver<Matrix> es(y);
    if(es.info() != Eigen::Success) throw NumericalError("entropy_matrix_function: eigensolver failed");
    const CMatrix v = es.eigenvectors();
    const CVector lambda = es.eigenvalues();

    CVector arccot(lambda.size());
    for(Eigen::Index j = 0; j < lambda.size(); ++j) {
        const Complex z = 2.0 * lambda(j);
        if(std::abs(std::abs(z) - 1.0) <= tol) throw InvalidArgument("entropy_matrix_function: covariance is degenerate");
        arccot(j) = std::atan(1.0 / z);
    }
    const CMatrix f = v * arccot.asDiagonal() * v.inverse();
    const Complex trace = (y.cast<Complex>() * f).trace();
    if(std::abs(trace.imag()) > 1e3 * tol * std::max(1.0, std::abs(trace)))
        throw NumericalError("entropy_matrix_function: trace term is not real");
    return half_log_det_shifted(alpha, space, tol) + trace.real();
}

double energy_expectation(const GaussianState &state, const QuadraticHamiltonian &h) {
    if(!(state.space() == h.space())) throw InvalidArgument("energy_expectation: phase spaces differ");
    const Matrix &eps = h.epsilon();
    return eps.cwiseProduct(state.alpha()).sum() + state.mean().dot(eps * state.mean());
}

} // namespace egain
