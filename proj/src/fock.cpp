#include "egain/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "egain/errors.hpp"

namespace egain::fock {

DensityMatrix make_density(CMatrix rho, double deficit) {
    if(rho.rows() != rho.cols() || rho.rows() < 1) throw InvalidArgument("density matrix must be square and non-empty");
    if(!rho.allFinite()) throw InvalidArgument("density matrix has non-finite entries");
    const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
    if((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InvalidArgument("density matrix is not Hermitian within 1e-12");
    rho = 0.5 * (rho + rho.adjoint());

    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
    if(es.eigenvalues().minCoeff() < -1e-10) throw InvalidArgument("density matrix has a negative eigenvalue below -1e-10");

    const double trace = rho.trace().real();
    if(!(trace > 0.0)) throw InvalidArgument("density matrix has non-positive trace");
    rho /= trace;
    return DensityMatrix{std::move(rho), deficit + (1.0 - trace)};
}

DensityMatrix thermal_state(double nu, int dim) {
    if(!(nu >= 0.5) || !std::isfinite(nu)) throw InvalidArgument("thermal_state requires nu >= 1/2");
    if(dim < 2) throw InvalidArgument("thermal_state requires dim >= 2");
    const double ratio = (nu - 0.5) / (nu + 0.5);
    CMatrix rho = CMatrix::Zero(dim, dim);
    double p = 1.0 / (nu + 0.5);
    for(int n = 0; n < dim; ++n) {
        rho(n, n) = p;
        p *= ratio;
    }
    return make_density(std::move(rho));
}

DensityMatrix number_state(int n, int dim) {
    if(n < 0 || n >= dim) throw InvalidArgument("number_state: level outside truncation");
    CMatrix rho = CMatrix::Zero(dim, dim);
    rho(n, n) = 1.0;
    return make_density(std::move(rho));
}

double von_neumann_entropy(const DensityMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.rho, Eigen::EigenvaluesOnly);
    double h = 0.0;
    for(Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lambda = es.eigenvalues()(i);
        if(lambda > 0.0) h -= lambda * std::log(lambda);
    }
    return h;
}

Moments moments(const DensityMatrix &rho) {
    const int d = rho.dim();
    // Build the ladder operator two levels larger so that the d x d block of
    // every quadratic product is exact.
    const int big = d + 2;
    CMatrix a = CMatrix::Zero(big, big);
    for(int n = 1; n < big; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const CMatrix q = (a + a.adjoint()) / std::numbers::sqrt2;
    const CMatrix p = (a - a.adjoint()) / Complex(0.0, std::numbers::sqrt2);

    auto expect = [&](const CMatrix &op) { return (rho.rho * op.topLeftCorner(d, d)).trace().real(); };

    Moments m;
    m.mean = Vector(2);
    m.mean << expect(q), expect(p);
    const double qq = expect(q * q);
    const double pp = expect(p * p);
    const double sym = 0.5 * expect(q * p + p * q);
    m.second = Matrix(2, 2);
    m.second << qq, sym, sym, pp;
    return m;
}

GaussianState gaussify(const DensityMatrix &rho, double tol) {
    const Moments m = moments(rho);
    return egain::gaussify(PhaseSpace(1), m.mean, m.second, tol);
}

std::string_view to_string(ChannelKind kind) {
    switch(kind) {
        case ChannelKind::attenuator: return "attenuator";
        case ChannelKind::amplifier: return "amplifier";
        case ChannelKind::classical_noise: return "classical-noise";
    }
    return "unknown";
}

ChannelKind kind_from_string(std::string_view name) {
    if(name == "attenuator") return ChannelKind::attenuator;
    if(name == "amplifier") return ChannelKind::amplifier;
    if(name == "classical-noise") return ChannelKind::classical_noise;
    throw InvalidArgument("unknown channel kind '" + std::string(name) + "'");
}

int DilationChannel::boundary_band() const { return static_cast<int>(std::ceil(0.2 * dim)); }

GaussianChannel DilationChannel::gaussian() const {
    switch(kind) {
        case ChannelKind::attenuator: return presets::attenuator(k);
        case ChannelKind::amplifier: return presets::amplifier(k);
        case ChannelKind::classical_noise: return presets::classical_noise(noise);
    }
    throw InvalidArgument("unknown channel kind");
}

namespace {

// First column of exp(G) for the real antisymmetric tridiagonal G with
// G(m+1, m) = g_m = -G(m, m+1). With S = diag(i^m), S^{-1} G S = -i J where J
// is real symmetric tridiagonal with off-diagonal g, so
// exp(G) e_0 = S W exp(-i Lambda) W^T e_0.
Vector first_column_of_exp(const Vector &g) {
    const Eigen::Index n = g.size() + 1;
    if(n == 1) return Vector::Ones(1);
    Vector diag = Vector::Zero(n);
    Eigen::SelfAdjointEigenSolver<Matrix> es;
    es.computeFromTridiagonal(diag, g, Eigen::ComputeEigenvectors);
    if(es.info() != Eigen::Success) throw NumericalError("dilation: tridiagonal eigensolver failed");
    const Matrix &w = es.eigenvectors();
    CVector phase(n);
    for(Eigen::Index k = 0; k < n; ++k) phase(k) = std::exp(Complex(0.0, -es.eigenvalues()(k))) * w(0, k);
    const CVector col = w.cast<Complex>() * phase;

    Vector out(n);
    Complex im_power(1.0, 0.0);
    for(Eigen::Index m = 0; m < n; ++m) {
        const Complex c = im_power * col(m);
        if(std::abs(c.imag()) > 1e-10) throw NumericalError("dilation: two-mode amplitude is not real");
        out(m) = c.real();
        im_power *= Complex(0.0, 1.0);
    }
    return out;
}

// Gauss-Hermite nodes/weights for weight exp(-t^2) by Golub-Welsch.
void gauss_hermite(int order, Vector &nodes, Vector &weights) {
    Vector diag = Vector::Zero(order);
    Vector off(order - 1);
    for(int k = 1; k < order; ++k) off(k - 1) = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Matrix> es;
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    nodes = es.eigenvalues();
    weights = std::sqrt(std::numbers::pi) * es.eigenvectors().row(0).transpose().array().square();
}

// <m|D(beta)|n> for m, n < dim via D_{m,n} = (beta D_{m-1,n} + sqrt(n) D_{m-1,n-1}) / sqrt(m),
// which follows from a D(beta) = D(beta)(a + beta).
CMatrix displacement(Complex beta, int dim) {
    CMatrix d(dim, dim);
    d(0, 0) = std::exp(-0.5 * std::norm(beta));
    for(int n = 1; n < dim; ++n) d(0, n) = -std::conj(beta) / std::sqrt(static_cast<double>(n)) * d(0, n - 1);
    for(int m = 1; m < dim; ++m) {
        const double inv = 1.0 / std::sqrt(static_cast<double>(m));
        d(m, 0) = beta * inv * d(m - 1, 0);
        for(int n = 1; n < dim; ++n) d(m, n) = (beta * d(m - 1, n) + std::sqrt(static_cast<double>(n)) * d(m - 1, n - 1)) * inv;
    }
    return d;
}

std::vector<CMatrix> zero_kraus(int count, int dim) { return std::vector<CMatrix>(count, CMatrix::Zero(dim, dim)); }

std::vector<CMatrix> attenuator_kraus_dilation(double k, int dim) {
    // U = exp(theta (a b^+ - a^+ b)), cos theta = k, on the sector |N - l, l>, N = n.
    const double theta = std::acos(k);
    auto kraus = zero_kraus(dim, dim);
    for(int n = 0; n < dim; ++n) {
        Vector g(n);
        for(int l = 0; l < n; ++l) g(l) = theta * std::sqrt(static_cast<double>(n - l) * (l + 1));
        const Vector c = first_column_of_exp(g);
        for(int l = 0; l <= n; ++l) kraus[l](n - l, n) = c(l);
    }
    return kraus;
}

std::vector<CMatrix> amplifier_kraus_dilation(double k, int dim, int padding) {
    // U = exp(r (a^+ b^+ - a b)), cosh r = k, on the sector |n + m, m>. The
    // environment is truncated at dim - n + padding levels.
    const double r = std::acosh(k);
    auto kraus = zero_kraus(dim, dim);
    for(int n = 0; n < dim; ++n) {
        const int levels = dim - n + padding;
        Vector g(levels - 1);
        for(int m = 0; m + 1 < levels; ++m) g(m) = r * std::sqrt(static_cast<double>(n + m + 1) * (m + 1));
        const Vector c = first_column_of_exp(g);
        for(int m = 0; n + m < dim; ++m) kraus[m](n + m, n) = c(m);
    }
    return kraus;
}

std::vector<CMatrix> classical_noise_kraus(double noise, int dim, int order) {
    if(order < 2) throw InvalidArgument("classical noise quadrature order must be >= 2");
    Vector t, w;
    gauss_hermite(order, t, w);
    const double spread = std::sqrt(2.0 * noise);
    std::vector<CMatrix> kraus;
    kraus.reserve(static_cast<std::size_t>(order) * order);
    for(int a = 0; a < order; ++a) {
        for(int b = 0; b < order; ++b) {
            const double weight = w(a) * w(b) / std::numbers::pi;
            // Shifts of q and p by x_a, x_b correspond to beta = (x_a + i x_b) / sqrt2.
            const Complex beta = Complex(spread * t(a), spread * t(b)) / std::numbers::sqrt2;
            kraus.push_back(std::sqrt(weight) * displacement(beta, dim));
        }
    }
    return kraus;
}

double log_binomial(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

} // namespace

DilationChannel build_dilation(ChannelKind kind, double k, int dim, double noise, const DilationOptions &options) {
    if(dim < 2) throw InvalidArgument("build_dilation: dim must be >= 2");
    DilationChannel ch{kind, k, 0.0, dim, {}};
    switch(kind) {
        case ChannelKind::attenuator:
            if(!(k > 0.0 && k < 1.0)) throw InvalidArgument("attenuator requires 0 < k < 1");
            ch.kraus = attenuator_kraus_dilation(k, dim);
            break;
        case ChannelKind::amplifier:
            if(!(k > 1.0) || !std::isfinite(k)) throw InvalidArgument("amplifier requires k > 1");
            if(options.environment_padding < 0) throw InvalidArgument("environment padding must be >= 0");
            ch.kraus = amplifier_kraus_dilation(k, dim, options.environment_padding);
            break;
        case ChannelKind::classical_noise:
            if(k != 1.0) throw InvalidArgument("classical noise requires k = 1");
            if(!(noise > 0.0) || !std::isfinite(noise)) throw InvalidArgument("classical noise requires noise > 0");
            ch.noise = noise;
            ch.kraus = classical_noise_kraus(noise, dim, options.quadrature_order);
            break;
    }
    return ch;
}

std::vector<CMatrix> attenuator_kraus_closed_form(double k, int dim) {
    if(!(k > 0.0 && k < 1.0)) throw InvalidArgument("attenuator requires 0 < k < 1");
    const double eta = k * k;
    auto kraus = zero_kraus(dim, dim);
    for(int l = 0; l < dim; ++l)
        for(int n = l; n < dim; ++n)
            kraus[l](n - l, n) = std::exp(0.5 * (log_binomial(n, l) + (n - l) * std::log(eta) + l * std::log1p(-eta)));
    return kraus;
}

std::vector<CMatrix> amplifier_kraus_closed_form(double k, int dim) {
    if(!(k > 1.0)) throw InvalidArgument("amplifier requires k > 1");
    // <n+m, m| U |n, 0> = sqrt(C(n+m, m)) tanh(r)^m / cosh(r)^(n+1)
    const double log_tanh = 0.5 * std::log1p(-1.0 / (k * k));
    auto kraus = zero_kraus(dim, dim);
    for(int m = 0; m < dim; ++m)
        for(int n = 0; n + m < dim; ++n)
            kraus[m](n + m, n) = std::exp(0.5 * log_binomial(n + m, m) + m * log_tanh - (n + 1) * std::log(k));
    return kraus;
}

CMatrix kraus_completeness(const DilationChannel &channel) {
    CMatrix sum = CMatrix::Zero(channel.dim, channel.dim);
    for(const auto &v : channel.kraus) sum.noalias() += v.adjoint() * v;
    return sum;
}

CMatrix phi_of_identity(const DilationChannel &channel) {
    CMatrix sum = CMatrix::Zero(channel.dim, channel.dim);
    for(const auto &v : channel.kraus) sum.noalias() += v * v.adjoint();
    return sum;
}

ChannelOutput apply_channel(const DilationChannel &channel, const DensityMatrix &rho, double threshold) {
    if(rho.dim() != channel.dim) throw InvalidArgument("apply_channel: state and channel dimensions differ");
    // Only the occupied leading block of rho contributes.
    int support = 0;
    for(int i = 0; i < rho.dim(); ++i)
        if(rho.rho.row(i).cwiseAbs().maxCoeff() > 0.0) support = i + 1;
    if(support == 0) throw InvalidArgument("apply_channel: zero density matrix");

    const CMatrix block = rho.rho.topLeftCorner(support, support);
    CMatrix out = CMatrix::Zero(channel.dim, channel.dim);
    for(const auto &v : channel.kraus) {
        const CMatrix vs = v.leftCols(support);
        out.noalias() += vs * block * vs.adjoint();
    }

    ChannelOutput result{make_density(std::move(out), rho.trace_deficit), 0.0, true};
    const int band = channel.boundary_band();
    for(int n = channel.dim - band; n < channel.dim; ++n) result.top_band_population += result.state.rho(n, n).real();
    result.reliable = result.state.trace_deficit <= threshold && result.top_band_population <= threshold;
    return result;
}

double slack(double deficit) { return 50.0 * deficit + 1e-6; }

Prop1Result verify_prop1(const DilationChannel &channel, const DensityMatrix &rho) {
    const ChannelOutput out = apply_channel(channel, rho);
    Prop1Result r;
    r.gain = von_neumann_entropy(out.state) - von_neumann_entropy(rho);
    r.bound = minimal_entropy_gain(channel.gaussian());
    r.deficit = out.state.trace_deficit;
    r.reliable = out.reliable && rho.trace_deficit <= kReliabilityThreshold;
    r.holds = r.gain >= r.bound - slack(r.deficit);
    return r;
}

Prop3Result verify_prop3(std::span<const DilationChannel> stages, const DensityMatrix &rho) {
    if(stages.empty()) throw InvalidArgument("verify_prop3: no channel stages");
    GaussianChannel composed = stages.front().gaussian();
    for(std::size_t i = 1; i < stages.size(); ++i) composed = compose(composed, stages[i].gaussian());
    if(!composed.strict())
        throw HypothesisViolation("verify_prop3: channel is not strict, mu > (i/2)(Delta - K^T Delta K) fails");
    const GaussianState g = gaussify(rho);
    if(!g.nondegenerate()) throw HypothesisViolation("verify_prop3: covariance of rho is degenerate, alpha - (i/2)Delta > 0 fails");

    Prop3Result r;
    DensityMatrix current = rho;
    r.reliable = rho.trace_deficit <= kReliabilityThreshold;
    for(const auto &stage : stages) {
        ChannelOutput out = apply_channel(stage, current);
        r.reliable = r.reliable && out.reliable;
        current = std::move(out.state);
    }
    r.gain = von_neumann_entropy(current) - von_neumann_entropy(rho);
    r.gaussian_gain = entropy_of_covariance(apply_to_covariance(composed, g.alpha()), g.space()) - gaussian_entropy(g);
    r.deficit = current.trace_deficit;
    r.holds = r.gain >= r.gaussian_gain - slack(r.deficit);
    return r;
}

Prop3Result verify_prop3(const DilationChannel &channel, const DensityMatrix &rho) {
    return verify_prop3(std::span<const DilationChannel>(&channel, 1), rho);
}

DensityMatrix random_low_support_state(std::mt19937_64 &rng, int dim, int support, int max_components) {
    if(support < 1 || support > dim) throw InvalidArgument("random state support must lie in [1, dim]");
    if(max_components < 1) throw InvalidArgument("random state needs at least one component");
    std::uniform_int_distribution<int> count(1, max_components);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);

    const int components = count(rng);
    std::vector<double> weights(components);
    double total = 0.0;
    for(auto &w : weights) total += (w = expo(rng));

    CMatrix rho = CMatrix::Zero(dim, dim);
    for(int c = 0; c < components; ++c) {
        CVector psi = CVector::Zero(dim);
        for(int n = 0; n < support; ++n) {
            const double re = normal(rng);
            const double im = normal(rng);
            psi(n) = Complex(re, im);
        }
        psi.normalize();
        rho += (weights[c] / total) * psi * psi.adjoint();
    }
    return make_density(std::move(rho));
}

std::uint64_t seed_for_trial(std::uint64_t seed, int trial) {
    // splitmix64 step on seed + (trial + 1) * golden gamma
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CampaignResult run_campaign(const CampaignConfig &config) {
    if(config.stages.empty()) throw InvalidArgument("run_campaign: no channel stages");
    if(config.trials < 0) throw InvalidArgument("run_campaign: negative trial count");
    if(config.check == CampaignCheck::prop1 && config.stages.size() != 1)
        throw InvalidArgument("run_campaign: prop1 campaigns take a single channel");
    const int dim = config.stages.front().dim;

    CampaignResult result;
    CampaignSummary &s = result.summary;
    s.worst_margin = std::numeric_limits<double>::infinity();
    for(int t = 0; t < config.trials; ++t) {
        TrialRecord rec;
        rec.seed = seed_for_trial(config.seed, t);
        std::mt19937_64 rng(rec.seed);
        DensityMatrix input = [&] {
            if(config.states == CampaignStates::thermal) {
                rec.nu = std::uniform_real_distribution<double>(0.55, 2.0)(rng);
                return thermal_state(rec.nu, dim);
            }
            return random_low_support_state(rng, dim);
        }();

        if(config.check == CampaignCheck::prop1) {
            const Prop1Result r = verify_prop1(config.stages.front(), input);
            rec.gain = r.gain;
            rec.bound = r.bound;
            rec.deficit = r.deficit;
            rec.reliable = r.reliable;
            rec.holds = r.holds;
        } else {
            const Prop3Result r = verify_prop3(config.stages, input);
            rec.gain = r.gain;
            rec.bound = r.gaussian_gain;
            rec.deficit = r.deficit;
            rec.reliable = r.reliable;
            rec.holds = r.holds;
        }
        if(config.keep_states) {
            rec.input_rho = input.rho;
            DensityMatrix current = input;
            for(const auto &stage : config.stages) current = apply_channel(stage, current).state;
            rec.output_rho = current.rho;
        }

        ++s.trials;
        if(rec.holds) ++s.holds_count;
        if(rec.reliable) {
            ++s.reliable_count;
            if(!rec.holds) ++s.violations;
            s.worst_margin = std::min(s.worst_margin, rec.gain - rec.bound);
        } else {
            ++s.unreliable_count;
        }
        s.max_deficit = std::max(s.max_deficit, rec.deficit);
        result.records.push_back(std::move(rec));
    }
    return result;
}

} // namespace egain::fock
