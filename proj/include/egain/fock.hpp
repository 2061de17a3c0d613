#pragma once

// Brute-force one-mode oracle in a truncated number basis {|0>, ..., |d-1>}.
// Used to check the Gaussian closed forms on Gaussian and non-Gaussian inputs.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "egain/channels.hpp"

namespace egain::fock {

inline constexpr int kDefaultDim = 60;
inline constexpr double kReliabilityThreshold = 1e-6;

struct DensityMatrix {
    CMatrix rho;
    // 1 - trace before renormalization, accumulated along the processing chain.
    double trace_deficit = 0.0;

    [[nodiscard]] int dim() const { return static_cast<int>(rho.rows()); }
};

// Validates Hermiticity (1e-12) and positivity (eigenvalues >= -1e-10), then
// renormalizes to unit trace; the missing mass is added to `deficit`.
DensityMatrix make_density(CMatrix rho, double deficit = 0.0);

DensityMatrix thermal_state(double nu, int dim);
DensityMatrix number_state(int n, int dim);

double von_neumann_entropy(const DensityMatrix &rho);

// First moments (<q>, <p>) and symmetrized second moments Re<R_j R_k> with
// q = (a + a^+)/sqrt2, p = (a - a^+)/(i sqrt2).
struct Moments {
    Vector mean;
    Matrix second;
};
Moments moments(const DensityMatrix &rho);

// Delta = canonical one-mode form; delegates to egain::gaussify.
GaussianState gaussify(const DensityMatrix &rho, double tol = kDefaultTolerance);

enum class ChannelKind { attenuator, amplifier, classical_noise };

std::string_view to_string(ChannelKind kind);
ChannelKind kind_from_string(std::string_view name);

struct DilationOptions {
    // Per-quadrature Gauss-Hermite order for the classical-noise mixture.
    int quadrature_order = 24;
    // Extra environment levels kept beyond the system truncation when
    // exponentiating the two-mode squeezer.
    int environment_padding = 60;
};

struct DilationChannel {
    ChannelKind kind;
    double k;
    double noise; // classical-noise variance per quadrature; 0 otherwise
    int dim;
    std::vector<CMatrix> kraus;

    // Top levels excluded from operator-identity checks: ceil(0.2 d).
    [[nodiscard]] int boundary_band() const;
    // (K, mu) of the channel this dilation realizes.
    [[nodiscard]] GaussianChannel gaussian() const;
};

// attenuator: beamsplitter of transmissivity k^2 against vacuum (0 < k < 1).
// amplifier: two-mode squeezer with cosh r = k against vacuum (k > 1).
// classical_noise: Gauss-Hermite mixture of displacements with per-quadrature
// variance `noise` > 0; k must be 1.
DilationChannel build_dilation(ChannelKind kind, double k, int dim, double noise = 0.0,
                               const DilationOptions &options = {});

// Closed-form Kraus families, kept as cross-checks of the dilation route.
std::vector<CMatrix> attenuator_kraus_closed_form(double k, int dim);
std::vector<CMatrix> amplifier_kraus_closed_form(double k, int dim);

// Sum V^* V and the truncated Phi[I] = sum V V^*.
CMatrix kraus_completeness(const DilationChannel &channel);
CMatrix phi_of_identity(const DilationChannel &channel);

struct ChannelOutput {
    DensityMatrix state;
    double top_band_population = 0.0;
    bool reliable = true;
};

ChannelOutput apply_channel(const DilationChannel &channel, const DensityMatrix &rho,
                            double threshold = kReliabilityThreshold);

// slack(deficit) = 50 deficit + 1e-6.
double slack(double deficit);

struct Prop1Result {
    double gain = 0.0;
    double bound = 0.0;
    double deficit = 0.0;
    bool reliable = true;
    bool holds = false;
};

// H(Phi[rho]) - H(rho) against the bound log|det K|.
Prop1Result verify_prop1(const DilationChannel &channel, const DensityMatrix &rho);

struct Prop3Result {
    double gain = 0.0;
    double gaussian_gain = 0.0;
    double deficit = 0.0;
    bool reliable = true;
    bool holds = false;
};

// Gain of rho against the exact Gaussian gain of gaussify(rho) through the
// composed channel stages[0], then stages[1], ... Throws HypothesisViolation
// unless the composed Gaussian channel is strict and the covariance of rho is
// nondegenerate.
Prop3Result verify_prop3(std::span<const DilationChannel> stages, const DensityMatrix &rho);
Prop3Result verify_prop3(const DilationChannel &channel, const DensityMatrix &rho);

// Mixture of 1..max_components Haar-random pure states on the bottom
// `support` levels with uniform-simplex weights.
DensityMatrix random_low_support_state(std::mt19937_64 &rng, int dim, int support = 10, int max_components = 5);

enum class CampaignCheck { prop1, prop3 };
enum class CampaignStates { random, thermal };

struct CampaignConfig {
    CampaignCheck check = CampaignCheck::prop1;
    CampaignStates states = CampaignStates::random;
    std::vector<DilationChannel> stages;
    int trials = 100;
    std::uint64_t seed = 0;
    bool keep_states = false;
};

struct TrialRecord {
    std::uint64_t seed = 0;
    double gain = 0.0;
    // log|det K| for prop1, the Gaussian gain of gaussify(rho) for prop3.
    double bound = 0.0;
    double deficit = 0.0;
    bool reliable = true;
    bool holds = false;
    // Thermal inputs only: nu of the input.
    double nu = 0.0;
    CMatrix input_rho;
    CMatrix output_rho;
};

struct CampaignSummary {
    int trials = 0;
    int holds_count = 0;
    int reliable_count = 0;
    int unreliable_count = 0;
    // Violations among reliable trials.
    int violations = 0;
    // min(gain - bound) over reliable trials.
    double worst_margin = 0.0;
    double max_deficit = 0.0;
};

struct CampaignResult {
    std::vector<TrialRecord> records;
    CampaignSummary summary;
};

// Trial t draws its input from a generator seeded with seed_for_trial(seed, t),
// so results do not depend on execution order.
std::uint64_t seed_for_trial(std::uint64_t seed, int trial);
CampaignResult run_campaign(const CampaignConfig &config);

} // namespace egain::fock
