#include "egain/channels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "egain/errors.hpp"

namespace egain {

GaussianChannel make_channel(Matrix K, Matrix mu, const PhaseSpace &space, double tol) {
    const int n = space.dim();
    if(K.rows() != n || K.cols() != n || mu.rows() != n || mu.cols() != n)
        throw InvalidArgument("make_channel: K and mu must be " + std::to_string(n) + "x" + std::to_string(n));
    if(!K.allFinite()) throw InvalidArgument("make_channel: K has non-finite entries");
    mu = require_symmetric(mu, tol, "make_channel mu");

    const Matrix defect = space.delta() - K.transpose() * space.delta() * K;
    const CMatrix m = mu.cast<Complex>() - Complex(0.0, 0.5) * defect.cast<Complex>();
    const HermitianCert cert = check_hermitian_psd(m, tol);
    if(!cert.at_least_semidefinite())
        throw InadmissibleError("make_channel: mu >= (i/2)(Delta - K^T Delta K) is violated", cert);

    const Eigen::JacobiSVD<Matrix> svd(K);
    const Vector &sv = svd.singularValues();
    const bool regular = sv(sv.size() - 1) > tol * std::max(1.0, sv(0));
    return GaussianChannel(space, std::move(K), std::move(mu), cert, regular);
}

namespace presets {

GaussianChannel attenuator(double k) {
    if(!(k > 0.0 && k < 1.0)) throw InvalidArgument("attenuator requires 0 < k < 1");
    const Matrix id = Matrix::Identity(2, 2);
    return make_channel(k * id, 0.5 * (1.0 - k * k) * id, PhaseSpace(1));
}

GaussianChannel amplifier(double k) {
    if(!(k > 1.0) || !std::isfinite(k)) throw InvalidArgument("amplifier requires k > 1");
    const Matrix id = Matrix::Identity(2, 2);
    return make_channel(k * id, 0.5 * (k * k - 1.0) * id, PhaseSpace(1));
}

GaussianChannel classical_noise(double noise) {
    if(!(noise >= 0.0) || !std::isfinite(noise)) throw InvalidArgument("classical noise variance must be >= 0");
    const Matrix id = Matrix::Identity(2, 2);
    return make_channel(id, noise * id, PhaseSpace(1));
}

GaussianChannel by_name(std::string_view name, double k, double noise) {
    if(name == "attenuator") return attenuator(k);
    if(name == "amplifier") return amplifier(k);
    if(name == "classical-noise") {
        if(k != 1.0) throw InvalidArgument("classical-noise preset requires k = 1");
        return classical_noise(noise);
    }
    throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

} // namespace presets

GaussianChannel tensor_product(const GaussianChannel &a, const GaussianChannel &b) {
    const PhaseSpace joint(a.space().modes() + b.space().modes());
    return make_channel(direct_sum(a.K(), b.K()), direct_sum(a.mu(), b.mu()), joint);
}

GaussianChannel compose(const GaussianChannel &first, const GaussianChannel &second) {
    if(!(first.space() == second.space())) throw InvalidArgument("compose: phase spaces differ");
    // K2^T (K1^T a K1 + mu1) K2 + mu2
    const Matrix k = first.K() * second.K();
    const Matrix mu = second.K().transpose() * first.mu() * second.K() + second.mu();
    return make_channel(k, 0.5 * (mu + mu.transpose()), first.space());
}

Matrix apply_to_covariance(const GaussianChannel &channel, const Matrix &alpha) {
    const PhaseSpace &space = channel.space();
    if(alpha.rows() != space.dim() || alpha.cols() != space.dim())
        throw InvalidArgument("apply_to_covariance: covariance shape does not match channel");
    Matrix out = channel.K().transpose() * alpha * channel.K() + channel.mu();
    out = 0.5 * (out + out.transpose());
    const HermitianCert cert = check_hermitian_psd(uncertainty_matrix(out, space, +1.0));
    if(!cert.at_least_semidefinite()) throw NumericalError("apply_to_covariance: output covariance is inadmissible");
    return out;
}

GaussianState apply(const GaussianChannel &channel, const GaussianState &state) {
    if(!(channel.space() == state.space())) throw InvalidArgument("apply: phase spaces differ");
    return make_gaussian_state(state.space(), channel.K().transpose() * state.mean(),
                               apply_to_covariance(channel, state.alpha()));
}

double log_abs_det(const Matrix &k) {
    const Eigen::PartialPivLU<Matrix> lu(k);
    const Matrix &u = lu.matrixLU();
    double sum = 0.0;
    for(Eigen::Index i = 0; i < u.rows(); ++i) {
        const double d = std::abs(u(i, i));
        if(d == 0.0) return -std::numeric_limits<double>::infinity();
        sum += std::log(d);
    }
    return sum;
}

double phi_of_identity_scale(const GaussianChannel &channel) {
    if(!channel.regular()) return std::numeric_limits<double>::infinity();
    return std::exp(-log_abs_det(channel.K()));
}

double minimal_entropy_gain(const GaussianChannel &channel) {
    if(!channel.regular()) throw NonRegularError("non-regular channel: det K = 0, Phi[I] is unbounded");
    return log_abs_det(channel.K());
}

double general_lower_bound(const GaussianChannel &channel) {
    if(!channel.regular()) throw NonRegularError("non-regular channel: det K = 0, Phi[I] is unbounded");
    return -std::log(phi_of_identity_scale(channel));
}

std::vector<double> default_beta_grid(double beta_max, double beta_min, int points) {
    if(!(beta_max > 0.0) || !(beta_min > 0.0) || beta_min > beta_max || points < 1)
        throw InvalidArgument("beta grid needs 0 < beta_min <= beta_max and at least one point");
    std::vector<double> grid;
    grid.reserve(points);
    if(points == 1) {
        grid.push_back(beta_max);
        return grid;
    }
    const double hi = std::log10(beta_max);
    const double lo = std::log10(beta_min);
    for(int i = 0; i < points; ++i) grid.push_back(std::pow(10.0, hi + (lo - hi) * i / (points - 1)));
    grid.front() = beta_max;
    grid.back() = beta_min;
    return grid;
}

namespace {

double log_det_spd(const Matrix &a) {
    const Eigen::LLT<Matrix> llt(a);
    if(llt.info() != Eigen::Success) throw NumericalError("covariance is not positive definite");
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

} // namespace

GainReport gain_beta_sweep(const GaussianChannel &channel, const QuadraticHamiltonian &h,
                           std::vector<double> beta_grid, const SweepOptions &options) {
    if(!channel.regular()) throw NonRegularError("non-regular channel: det K = 0, entropy gain sweep undefined");
    if(!(channel.space() == h.space())) throw InvalidArgument("gain_beta_sweep: hamiltonian and channel spaces differ");
    if(beta_grid.empty()) throw InvalidArgument("gain_beta_sweep: empty beta grid");
    for(std::size_t i = 0; i < beta_grid.size(); ++i) {
        if(!(beta_grid[i] > 0.0)) throw InvalidArgument("gain_beta_sweep: betas must be positive");
        if(i > 0 && !(beta_grid[i] < beta_grid[i - 1])) throw InvalidArgument("gain_beta_sweep: betas must be sorted descending");
    }

    GainReport report;
    report.closed_form = minimal_entropy_gain(channel);
    report.lower_bound_general = general_lower_bound(channel);

    auto evaluate = [&](double beta) {
        const Matrix alpha = gibbs_covariance(h, beta);
        const Matrix out = apply_to_covariance(channel, alpha);
        report.beta_grid.push_back(beta);
        report.gains.push_back(entropy_of_covariance(out, h.space()) - entropy_of_covariance(alpha, h.space()));
        report.det_ratios.push_back(std::exp(log_det_spd(out) - log_det_spd(alpha)));
    };
    for(double beta : beta_grid) evaluate(beta);

    auto gap = [&] { return std::abs(report.gains.back() - report.closed_form); };
    if(options.adaptive) {
        while(gap() >= options.tolerance && report.beta_grid.back() / 10.0 >= options.beta_floor)
            evaluate(report.beta_grid.back() / 10.0);
    }
    report.converged = gap() < options.tolerance;
    return report;
}

} // namespace egain
