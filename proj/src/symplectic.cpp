#include "egain/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "egain/errors.hpp"

namespace egain {

PhaseSpace::PhaseSpace(int modes) : modes_(modes) {
    if(modes < 1) throw InvalidArgument("phase space needs at least one mode, got " + std::to_string(modes));
    delta_ = Matrix::Zero(2 * modes, 2 * modes);
    for(int j = 0; j < modes; ++j) {
        delta_(2 * j, 2 * j + 1) = -1.0;
        delta_(2 * j + 1, 2 * j) = 1.0;
    }
}

PhaseSpace canonical_form(int modes) { return PhaseSpace(modes); }

std::string_view to_string(Definiteness d) {
    switch(d) {
        case Definiteness::positive_definite: return "positive_definite";
        case Definiteness::positive_semidefinite: return "positive_semidefinite";
        case Definiteness::indefinite: return "indefinite";
    }
    return "unknown";
}

HermitianCert check_hermitian_psd(const CMatrix &m, double tol) {
    if(m.rows() != m.cols() || m.rows() == 0) throw InvalidArgument("check_hermitian_psd: matrix must be square and non-empty");
    const double scale = std::max(1.0, m.norm());
    if((m - m.adjoint()).norm() > tol * scale) throw InvalidArgument("check_hermitian_psd: matrix is not Hermitian within tolerance");

    const CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    if(es.info() != Eigen::Success) throw NumericalError("check_hermitian_psd: eigensolver failed");

    HermitianCert cert;
    cert.min_eigenvalue = es.eigenvalues().minCoeff();
    cert.tolerance = tol * scale;
    if(cert.min_eigenvalue > cert.tolerance)
        cert.verdict = Definiteness::positive_definite;
    else if(cert.min_eigenvalue >= -cert.tolerance)
        cert.verdict = Definiteness::positive_semidefinite;
    else
        cert.verdict = Definiteness::indefinite;
    return cert;
}

CMatrix uncertainty_matrix(const Matrix &alpha, const PhaseSpace &space, double sign) {
    return alpha.cast<Complex>() + Complex(0.0, 0.5 * sign) * space.delta().cast<Complex>();
}

Matrix require_symmetric(const Matrix &m, double tol, std::string_view what) {
    if(m.rows() != m.cols()) throw InvalidArgument(std::string(what) + ": matrix is not square");
    if(!m.allFinite()) throw InvalidArgument(std::string(what) + ": matrix has non-finite entries");
    if((m - m.transpose()).norm() > tol * std::max(1.0, m.norm()))
        throw InvalidArgument(std::string(what) + ": matrix is not symmetric");
    return 0.5 * (m + m.transpose());
}

Matrix direct_sum(const Matrix &a, const Matrix &b) {
    Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

namespace {

struct SymplecticSpectrum {
    Eigen::SelfAdjointEigenSolver<Matrix> cov; // eigensystem of alpha itself
    Vector nu;                                 // descending
    std::vector<CVector> vectors;              // eigenvectors of alpha^{1/2} i Delta^{-1} alpha^{1/2}, same order
};

SymplecticSpectrum spectrum(const Matrix &alpha_in, const PhaseSpace &space, double tol, const char *what) {
    if(alpha_in.rows() != space.dim() || alpha_in.cols() != space.dim())
        throw InvalidArgument(std::string(what) + ": covariance shape does not match phase space");
    const Matrix alpha = require_symmetric(alpha_in, tol, what);

    SymplecticSpectrum out;
    out.cov.compute(alpha);
    if(out.cov.info() != Eigen::Success) throw NumericalError(std::string(what) + ": eigensolver failed");
    if(out.cov.eigenvalues().minCoeff() <= tol * std::max(1.0, alpha.norm()))
        throw InvalidArgument(std::string(what) + ": covariance is not positive definite");

    const Matrix root = out.cov.operatorSqrt();
    const CMatrix h = Complex(0.0, 1.0) * (root * space.delta_inverse() * root).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
    if(es.info() != Eigen::Success) throw NumericalError(std::string(what) + ": eigensolver failed");

    // Spectrum is {-nu_s..., -nu_1, nu_1, ..., nu_s}; the top s entries carry nu.
    const int s = space.modes();
    out.nu.resize(s);
    for(int j = 0; j < s; ++j) {
        const int idx = 2 * s - 1 - j;
        out.nu(j) = es.eigenvalues()(idx);
        out.vectors.push_back(es.eigenvectors().col(idx));
    }
    return out;
}

// Rotates v so its largest entry (first one, within a relative tie window)
// is purely imaginary and positive. Makes T = I for inputs in normal form.
CVector fix_phase(const CVector &v) {
    const double peak = v.cwiseAbs().maxCoeff();
    Eigen::Index p = 0;
    for(Eigen::Index i = 0; i < v.size(); ++i) {
        if(std::abs(v(i)) >= peak * (1.0 - 1e-8)) {
            p = i;
            break;
        }
    }
    const Complex rot = Complex(0.0, std::abs(v(p))) / v(p);
    return v * rot;
}

bool lexicographic_less(const Vector &a, const Vector &b, double tol) {
    for(Eigen::Index i = 0; i < a.size(); ++i) {
        if(a(i) < b(i) - tol) return true;
        if(a(i) > b(i) + tol) return false;
    }
    return false;
}

// Delta-orthonormalization of the column pairs (2j, 2j+1) of t against the
// canonical form, in place.
void symplectic_gram_schmidt(Matrix &t, const PhaseSpace &space) {
    const Matrix &delta = space.delta();
    auto omega = [&](const Vector &u, const Vector &w) { return u.dot(delta * w); };
    for(int j = 0; j < space.modes(); ++j) {
        Vector u = t.col(2 * j);
        Vector w = t.col(2 * j + 1);
        for(int k = 0; k < j; ++k) {
            const Vector e = t.col(2 * k);
            const Vector f = t.col(2 * k + 1);
            u += omega(u, f) * e - omega(u, e) * f;
            w += omega(w, f) * e - omega(w, e) * f;
        }
        const double c = omega(u, w);
        if(!(c < 0.0)) throw NumericalError("williamson: symplectic pairing lost orientation");
        const double scale = 1.0 / std::sqrt(-c);
        t.col(2 * j) = u * scale;
        t.col(2 * j + 1) = w * scale;
    }
}

} // namespace

Vector symplectic_eigenvalues(const Matrix &alpha, const PhaseSpace &space, double tol) {
    return spectrum(alpha, space, tol, "symplectic_eigenvalues").nu;
}

WilliamsonDecomposition williamson(const Matrix &alpha, const PhaseSpace &space, double tol) {
    const SymplecticSpectrum sp = spectrum(alpha, space, tol, "williamson");
    const int s = space.modes();

    // Orthogonal columns (sqrt2 Im v, sqrt2 Re v) bring alpha^{1/2} Delta^{-1} alpha^{1/2}
    // to blocks [[0, nu], [-nu, 0]].
    std::vector<Vector> first(s), second(s);
    for(int j = 0; j < s; ++j) {
        const CVector v = fix_phase(sp.vectors[j]);
        first[j] = std::sqrt(2.0) * v.imag();
        second[j] = std::sqrt(2.0) * v.real();
    }

    std::vector<int> order(s);
    std::iota(order.begin(), order.end(), 0);
    const double tie = tol * std::max(1.0, sp.nu.maxCoeff());
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if(std::abs(sp.nu(a) - sp.nu(b)) > tie) return sp.nu(a) > sp.nu(b);
        return lexicographic_less(first[a], first[b], 1e-12);
    });

    Matrix o(2 * s, 2 * s);
    Vector scale(2 * s);
    WilliamsonDecomposition out;
    out.nu.resize(s);
    for(int j = 0; j < s; ++j) {
        const int src = order[j];
        o.col(2 * j) = first[src];
        o.col(2 * j + 1) = second[src];
        out.nu(j) = sp.nu(src);
        scale(2 * j) = scale(2 * j + 1) = std::sqrt(sp.nu(src));
    }

    out.transform = sp.cov.operatorInverseSqrt() * o * scale.asDiagonal();
    symplectic_gram_schmidt(out.transform, space);
    return out;
}

Matrix WilliamsonDecomposition::normal_form() const {
    Vector diag(2 * nu.size());
    for(Eigen::Index j = 0; j < nu.size(); ++j) diag(2 * j) = diag(2 * j + 1) = nu(j);
    return diag.asDiagonal();
}

Matrix WilliamsonDecomposition::reconstruct() const {
    const Matrix inv = transform.inverse();
    return inv.transpose() * normal_form() * inv;
}

bool is_symplectic(const Matrix &t, const PhaseSpace &space, double tol) {
    if(t.rows() != space.dim() || t.cols() != space.dim()) return false;
    return (t.transpose() * space.delta() * t - space.delta()).norm() <= tol * std::max(1.0, t.squaredNorm());
}

} // namespace egain
