#include "egain/classical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "egain/errors.hpp"

namespace egain::classical {

namespace {

double unnormalized(Index n) {
    const double x = static_cast<double>(n);
    const double l = std::log1p(x);
    return 1.0 / (x * l * l);
}

// Gauss-Laguerre rule for weight e^{-s} on [0, inf), by Golub-Welsch.
struct LaguerreRule {
    Eigen::VectorXd nodes, weights;
    explicit LaguerreRule(int order) {
        Eigen::VectorXd diag(order), off(order - 1);
        for(int i = 0; i < order; ++i) diag(i) = 2.0 * i + 1.0;
        for(int i = 0; i + 1 < order; ++i) off(i) = i + 1.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
        nodes = es.eigenvalues();
        weights = es.eigenvectors().row(0).transpose().array().square();
    }
};

// sum_{n > N} f(n) by Euler-Maclaurin: int_N^inf f - f(N)/2 - f'(N)/12.
// int_N^inf f = 1/L + int_L^inf du / ((e^u - 1) u^2) with L = log(N+1); the
// remainder, after u = L + s, is a smooth Laguerre integral.
double tail_sum(Index n_max) {
    static const LaguerreRule rule(48);
    const double x = static_cast<double>(n_max);
    const double l = std::log1p(x);
    double rest = 0.0;
    for(Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        const double u = l + rule.nodes(i);
        rest += rule.weights(i) / (-std::expm1(-u) * u * u);
    }
    rest *= std::exp(-l);
    const double f = unnormalized(n_max);
    const double fprime = -f * (1.0 / x + 2.0 / ((x + 1.0) * l));
    return 1.0 / l + rest - 0.5 * f - fprime / 12.0;
}

// Neumaier-compensated running sum.
class CompensatedSum {
  public:
    void add(double v) {
        const double t = sum_ + v;
        if(std::abs(sum_) >= std::abs(v))
            carry_ += (sum_ - t) + v;
        else
            carry_ += (v - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + carry_; }

  private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

double entropy_term(const HeavyTailDistribution &dist, Index n) {
    const double q = dist.weight(n);
    return -q * std::log(q);
}

} // namespace

HeavyTailDistribution::HeavyTailDistribution(Index terms) {
    if(terms < 1) throw InvalidArgument("heavy tail: need at least one explicit term");
    CompensatedSum s;
    for(Index n = 1; n <= terms; ++n) s.add(unnormalized(n));
    normalizer_ = s.value() + tail_sum(terms);
}

double HeavyTailDistribution::weight(Index n) const {
    if(n < 1) throw InvalidArgument("heavy tail is indexed from 1");
    return unnormalized(n) / normalizer_;
}

double HeavyTailDistribution::truncated_entropy(Index n_max) const {
    CompensatedSum s;
    for(Index n = 1; n <= n_max; ++n) s.add(entropy_term(*this, n));
    return s.value();
}

double HeavyTailDistribution::tail_mass(Index n_max) const {
    if(n_max < 1) throw InvalidArgument("tail_mass: N must be >= 1");
    return tail_sum(n_max) / normalizer_;
}

double HeavyTailDistribution::tail_entropy_lower_bound(Index n_min, Index n_max) const {
    if(n_min < 3) throw InvalidArgument("tail entropy bound needs N >= 3");
    if(n_max <= n_min) return 0.0;
    const double lo = static_cast<double>(n_min);
    const double hi = static_cast<double>(n_max);
    const double eps = 1.0 / (lo * std::log(lo));
    return (std::log(std::log1p(hi)) - std::log(std::log1p(lo))) / (normalizer_ * (1.0 + eps) * (1.0 + eps));
}

const HeavyTailDistribution &heavy_tail() {
    static const HeavyTailDistribution shared(kDefaultNormalizerTerms);
    return shared;
}

HeavyTailDistribution heavy_tail(Index terms) { return HeavyTailDistribution(terms); }

double channel_row_entropy(const HeavyTailDistribution &dist, const PermutationFamily &perms, Index i, Index n_max) {
    if(i < 1) throw InvalidArgument("channel_row_entropy: rows are indexed from 1");
    std::vector<Index> idx;
    idx.reserve(n_max);
    for(Index j = 1; j <= n_max; ++j) idx.push_back(perms(i, j));
    std::sort(idx.begin(), idx.end());
    CompensatedSum s;
    for(Index n : idx) s.add(entropy_term(dist, n));
    return s.value();
}

bool doubly_stochastic_check(const PermutationFamily &perms, unsigned k) {
    if(k >= 32) throw InvalidArgument("doubly_stochastic_check: prefix too large");
    const Index n = Index{1} << k;
    std::vector<char> seen(n + 1);
    auto line_ok = [&](auto value_at) {
        std::fill(seen.begin(), seen.end(), 0);
        for(Index t = 1; t <= n; ++t) {
            const Index v = value_at(t);
            if(v < 1 || v > n || seen[v]) return false;
            seen[v] = 1;
        }
        return true;
    };
    for(Index i = 1; i <= n; ++i)
        if(!line_ok([&](Index j) { return perms(i, j); })) return false;
    for(Index j = 1; j <= n; ++j)
        if(!line_ok([&](Index i) { return perms(i, j); })) return false;
    return true;
}

TableVerification verify_xor_table(unsigned k_max) {
    if(k_max >= 32) throw InvalidArgument("verify_xor_table: prefix too large");
    TableVerification out;
    const Index n = Index{1} << k_max;

    for(Index i = 1; i <= n; ++i)
        if(permutation(i, 1) != i || permutation(1, i) != i) out.boundary = false;

    // Closure: entry (i, j) lies in the smallest dyadic prefix containing both i and j.
    // Injectivity of the full rows and columns plus closure gives bijectivity of every prefix.
    std::vector<std::uint64_t> bits((n + 63) / 64);
    auto mark = [&](Index v) {
        std::uint64_t &w = bits[(v - 1) >> 6];
        const std::uint64_t b = std::uint64_t{1} << ((v - 1) & 63);
        const bool fresh = (w & b) == 0;
        w |= b;
        return fresh;
    };
    for(Index i = 1; i <= n && out.rows_bijective; ++i) {
        std::fill(bits.begin(), bits.end(), 0);
        for(Index j = 1; j <= n; ++j) {
            const Index v = permutation(i, j);
            const Index m = std::max(i, j) - 1;
            const Index bound = m == 0 ? 1 : std::bit_ceil(m + 1);
            if(v < 1 || v > bound) out.prefix_closed = false;
            if(!mark(v)) {
                out.rows_bijective = false;
                break;
            }
        }
    }
    for(Index j = 1; j <= n && out.columns_bijective; ++j) {
        std::fill(bits.begin(), bits.end(), 0);
        for(Index i = 1; i <= n; ++i) {
            if(!mark(permutation(i, j))) {
                out.columns_bijective = false;
                break;
            }
        }
    }

    // [X Y; Y X] shape of a 2h x 2h block with top-left corner (r0, c0).
    auto two_by_two = [](Index r0, Index c0, Index h) {
        for(Index i = 0; i < h; ++i)
            for(Index j = 0; j < h; ++j) {
                const Index x = permutation(r0 + i, c0 + j);
                if(permutation(r0 + i + h, c0 + j + h) != x) return false;
                if(permutation(r0 + i + h, c0 + j) != permutation(r0 + i, c0 + j + h)) return false;
            }
        return true;
    };
    for(unsigned k = 1; k <= k_max && out.block_recursion; ++k) {
        const Index h = Index{1} << (k - 1);
        // A_k = [A_{k-1} B_{k-1}; B_{k-1} A_{k-1}]
        if(!two_by_two(1, 1, h)) out.block_recursion = false;
        // B_k, the top-right block of A_{k+1}, is [C_{k-1} D_{k-1}; D_{k-1} C_{k-1}].
        if(k < k_max && !two_by_two(1, 2 * h + 1, h)) out.block_recursion = false;
    }
    return out;
}

std::vector<double> apply_to_distribution(const HeavyTailDistribution &dist, const PermutationFamily &perms,
                                          const std::vector<double> &input, unsigned k) {
    const Index n = Index{1} << k;
    if(input.size() > n) throw InvalidArgument("apply_to_distribution: input support exceeds prefix");
    std::vector<double> out(n, 0.0);
    for(Index i = 1; i <= input.size(); ++i) {
        const double p = input[i - 1];
        if(p == 0.0) continue;
        for(Index j = 1; j <= n; ++j) out[j - 1] += p * dist.weight(perms(i, j));
    }
    return out;
}

double shannon_entropy(const std::vector<double> &p) {
    CompensatedSum s;
    for(double v : p)
        if(v > 0.0) s.add(-v * std::log(v));
    return s.value();
}

std::vector<EntropyGrowthRow> entropy_growth(const HeavyTailDistribution &dist, const PermutationFamily &perms,
                                             unsigned k_max, const std::vector<Index> &rows) {
    std::vector<EntropyGrowthRow> out;
    for(unsigned k = 1; k <= k_max; ++k) {
        const Index n = Index{1} << k;
        EntropyGrowthRow row;
        row.k = k;
        row.entropy = dist.truncated_entropy(n);
        row.doubly_stochastic = doubly_stochastic_check(perms, k);
        for(Index i : rows)
            row.row_entropies.push_back(i <= n ? channel_row_entropy(dist, perms, i, n)
                                               : std::numeric_limits<double>::quiet_NaN());
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace egain::classical
