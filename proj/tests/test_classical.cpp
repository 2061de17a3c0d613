#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "egain/classical.hpp"
#include "egain/errors.hpp"

using namespace egain::classical;

namespace {
// Normalizer from a short explicit sum: cheap but accurate to ~1e-12 thanks to the tail formula.
const HeavyTailDistribution &small() {
    static const HeavyTailDistribution d(1'000'000);
    return d;
}
// Explicit partial sums between two cut points agree with the difference of tail masses.
bool tail_mass_consistent(const HeavyTailDistribution &d) {
    double between = 0.0;
    for(Index n = 1001; n <= 50000; ++n) between += d.weight(n);
    return std::abs(between - (d.tail_mass(1000) - d.tail_mass(50000))) < 1e-14;
}
} // namespace

TEST_CASE("permutation table values") {
    for(Index i = 1; i <= 64; ++i) {
        CHECK(permutation(i, 1) == i);
        CHECK(permutation(1, i) == i);
    }
    CHECK(permutation(3, 2) == 4);
    CHECK(permutation(4, 2) == 3);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<Index> u(1, Index{1} << 40);
    for(int t = 0; t < 1000; ++t) {
        const Index i = u(rng), j = u(rng);
        CHECK(permutation(permutation(i, j), j) == i);
        CHECK(permutation(i, j) == permutation(j, i));
    }
}

TEST_CASE("doubly stochastic prefix check") {
    const auto table = PermutationFamily::xor_table();
    CHECK(doubly_stochastic_check(table, 1));
    CHECK(doubly_stochastic_check(table, 10));
    // corrupted evaluator: one duplicated entry
    const PermutationFamily broken([](Index i, Index j) { return (i == 3 && j == 5) ? Index{1} : permutation(i, j); });
    CHECK(!doubly_stochastic_check(broken, 3));
    CHECK(doubly_stochastic_check(broken, 2));
    // cyclic shift mod n is a bijection of one prefix but not closed under smaller prefixes
    const PermutationFamily cyclic([](Index i, Index j) { return (i + j - 2) % 8 + 1; });
    CHECK(doubly_stochastic_check(cyclic, 3));
    CHECK(!doubly_stochastic_check(cyclic, 2));
}

TEST_CASE("exhaustive block verification") {
    const TableVerification v = verify_xor_table(10);
    CHECK(v.boundary);
    CHECK(v.prefix_closed);
    CHECK(v.rows_bijective);
    CHECK(v.columns_bijective);
    CHECK(v.block_recursion);
    CHECK(v.ok());
    CHECK_THROWS_AS(verify_xor_table(32), egain::InvalidArgument);
}

TEST_CASE("heavy tail distribution") {
    const auto &d = small();
    // frozen high-precision normalizer
    CHECK(d.normalizer() == doctest::Approx(3.3877355319520023).epsilon(1e-14));
    for(Index n = 1; n < 1000; ++n) CHECK(d.weight(n + 1) < d.weight(n));
    CHECK(d.weight(1) > 0.0);
    CHECK_THROWS_AS((void)d.weight(0), egain::InvalidArgument);

    // mass: explicit prefix plus analytic tail sums to one
    double mass = 0.0;
    for(Index n = 1; n <= 10000; ++n) mass += d.weight(n);
    CHECK(mass + d.tail_mass(10000) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tail_mass_consistent(d));

    const double frozen[][2] = {{2, 0.5562575821219312}, {4, 0.8097935192296076}, {1024, 1.7063273912045366},
                                {16384, 1.8714239931596375}, {10000, 1.8466969516127613}};
    for(const auto &row : frozen)
        CHECK(d.truncated_entropy(static_cast<Index>(row[0])) == doctest::Approx(row[1]).epsilon(1e-14));

    // unboundedness witness: the analytic tail bound grows without limit
    const double b1 = d.tail_entropy_lower_bound(16384, Index{1} << 40);
    const double b2 = d.tail_entropy_lower_bound(16384, Index{1} << 62);
    CHECK(b1 > 0.0);
    CHECK(b2 > b1);
    CHECK(d.tail_entropy_lower_bound(100, 50) == 0.0);
    CHECK_THROWS_AS((void)d.tail_entropy_lower_bound(2, 10), egain::InvalidArgument);
    // the bound is below the actual entropy between N and M
    CHECK(d.tail_entropy_lower_bound(1000, 100000) < d.truncated_entropy(100000) - d.truncated_entropy(1000));
    CHECK_THROWS_AS(HeavyTailDistribution(0), egain::InvalidArgument);
}

TEST_CASE("row entropies") {
    const auto &d = small();
    const auto table = PermutationFamily::xor_table();
    for(unsigned k = 1; k <= 12; ++k) {
        const Index n = Index{1} << k;
        const double h1 = channel_row_entropy(d, table, 1, n);
        CHECK(h1 == d.truncated_entropy(n));
        for(Index i : {Index{2}, Index{5}, Index{100}, n})
            if(i <= n) CHECK(channel_row_entropy(d, table, i, n) == h1);
    }
    CHECK_THROWS_AS(channel_row_entropy(d, table, 0, 4), egain::InvalidArgument);
}

TEST_CASE("entropy growth table") {
    const auto &d = small();
    const auto rows = entropy_growth(d, PermutationFamily::xor_table(), 12, {1, 5, 100});
    REQUIRE(rows.size() == 12);
    for(std::size_t r = 0; r < rows.size(); ++r) {
        CHECK(rows[r].doubly_stochastic);
        if(r > 0) CHECK(rows[r].entropy > rows[r - 1].entropy);
        CHECK(rows[r].row_entropies[0] == rows[r].entropy);
    }
    CHECK(std::isnan(rows[0].row_entropies[1]));  // 2 < 5
    CHECK(std::isnan(rows[5].row_entropies[2]));  // 64 < 100
    CHECK(rows[6].row_entropies[2] == rows[6].entropy);
}

TEST_CASE("channel action and concavity consequence") {
    const auto &d = small();
    const auto table = PermutationFamily::xor_table();
    std::mt19937_64 rng(3);
    for(int trial = 0; trial < 10; ++trial) {
        const unsigned k = 8;
        const Index n = Index{1} << k;
        std::vector<double> p(n);
        std::exponential_distribution<double> e(1.0);
        double total = 0.0;
        for(auto &x : p) total += (x = e(rng));
        for(auto &x : p) x /= total;
        const auto out = apply_to_distribution(d, table, p, k);
        double min_row = 1e300;
        for(Index i = 1; i <= n; ++i) min_row = std::min(min_row, channel_row_entropy(d, table, i, n));
        CHECK(shannon_entropy(out) >= min_row - 1e-12);
    }
    // point mass: output is the row distribution
    std::vector<double> delta(4, 0.0);
    delta[2] = 1.0;
    CHECK(shannon_entropy(apply_to_distribution(d, table, delta, 4)) ==
          doctest::Approx(d.truncated_entropy(16)).epsilon(1e-14));
    CHECK_THROWS_AS(apply_to_distribution(d, table, std::vector<double>(5, 0.2), 2), egain::InvalidArgument);
}
