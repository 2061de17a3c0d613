#pragma once

// Classical unital channel with infinite entropy gain: the stochastic matrix
// p_ij = q_{n_j(i)} built from a heavy-tailed distribution Q with infinite
// entropy and a family of permutations n_j(i) whose rows and columns are both
// permutations of the positive integers.

#include <cstdint>
#include <functional>
#include <vector>

namespace egain::classical {

using Index = std::uint64_t;

// n_j(i) = ((i - 1) xor (j - 1)) + 1, indices starting at 1.
inline Index permutation(Index i, Index j) { return ((i - 1) ^ (j - 1)) + 1; }

class PermutationFamily {
  public:
    using Evaluator = std::function<Index(Index i, Index j)>;

    explicit PermutationFamily(Evaluator eval) : eval_(std::move(eval)) {}
    static PermutationFamily xor_table() { return PermutationFamily(permutation); }

    Index operator()(Index i, Index j) const { return eval_(i, j); }

  private:
    Evaluator eval_;
};

// q_n proportional to 1 / (n log^2(n + 1)), n >= 1.
class HeavyTailDistribution {
  public:
    // Normalizer: exact partial sum over n <= terms plus an Euler-Maclaurin tail.
    explicit HeavyTailDistribution(Index terms);

    [[nodiscard]] double normalizer() const { return normalizer_; }
    [[nodiscard]] double weight(Index n) const;
    // -sum_{n <= N} q_n log q_n with the exact (not renormalized) q_n.
    [[nodiscard]] double truncated_entropy(Index n_max) const;
    // Mass beyond N, approximately 1 / (Z log(N + 1)).
    [[nodiscard]] double tail_mass(Index n_max) const;
    // Lower bound on -sum_{N < n <= M} q_n log q_n, valid for N >= 3:
    //   (log log(M + 1) - log log(N + 1)) / (Z (1 + 1/(N log N))^2).
    // It is unbounded in M, which is why H(Q) is infinite.
    [[nodiscard]] double tail_entropy_lower_bound(Index n_min, Index n_max) const;

  private:
    double normalizer_;
};

inline constexpr Index kDefaultNormalizerTerms = 100'000'000;

// Shared instance with the default normalizer, computed once per process.
const HeavyTailDistribution &heavy_tail();
HeavyTailDistribution heavy_tail(Index terms);

// Entropy of {q_{n_j(i)}}_{j <= N}. Terms are summed in index order so that
// any row that permutes the same prefix gives a bit-identical value.
double channel_row_entropy(const HeavyTailDistribution &dist, const PermutationFamily &perms, Index i, Index n_max);

// True iff every row and column of [n_j(i)] restricted to i, j <= 2^k is a
// permutation of {1..2^k}; then each row and column of [q_{n_j(i)}] carries the
// multiset {q_1..q_{2^k}}.
bool doubly_stochastic_check(const PermutationFamily &perms, unsigned k);

// Exhaustive structural checks of the XOR table up to prefix 2^k_max.
struct TableVerification {
    bool boundary = true;        // n_1(i) = i, n_j(1) = j
    bool prefix_closed = true;   // n_j(i) <= 2^k for i, j <= 2^k
    bool rows_bijective = true;
    bool columns_bijective = true;
    bool block_recursion = true; // A_k = [A B; B A], B_k = [C D; D C]
    [[nodiscard]] bool ok() const {
        return boundary && prefix_closed && rows_bijective && columns_bijective && block_recursion;
    }
};

TableVerification verify_xor_table(unsigned k_max);

// Output distribution Phi[P] on j <= 2^k for an input P on {1..2^k}.
std::vector<double> apply_to_distribution(const HeavyTailDistribution &dist, const PermutationFamily &perms,
                                          const std::vector<double> &input, unsigned k);

double shannon_entropy(const std::vector<double> &p);

struct EntropyGrowthRow {
    unsigned k = 0;
    double entropy = 0.0;          // H_{2^k}
    bool doubly_stochastic = false;
    std::vector<double> row_entropies; // per sampled i; NaN when 2^k < i
};

std::vector<EntropyGrowthRow> entropy_growth(const HeavyTailDistribution &dist, const PermutationFamily &perms,
                                             unsigned k_max, const std::vector<Index> &rows);

} // namespace egain::classical
