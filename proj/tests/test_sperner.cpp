#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ncp/absolute_order.hpp"
#include "ncp/sperner.hpp"
#include "test_util.hpp"

using namespace ncp;
using ncptest::fixture;

namespace {

GradedPoset chain_poset(int length) {
    GradedPoset p;
    p.m = length + 1;
    p.rank.resize(p.m);
    p.up.resize(p.m);
    for (int i = 0; i <= length; ++i) {
        p.rank[i] = i;
        if (i < length) p.up[i].push_back(i + 1);
    }
    return p;
}

GradedPoset antichain_poset(int m) {
    GradedPoset p;
    p.m = m;
    p.rank.assign(m, 0);
    p.up.resize(m);
    return p;
}

}  // namespace

TEST_CASE("width") {
    CHECK(width(chain_poset(4)) == 1);
    CHECK(width(fixture("width_gap_poset.json")) == 4);
    CHECK(width(to_graded_poset(build_nc_lattice({5, 3}))) == 12);
}

TEST_CASE("minimum chain cover realizes the width") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const auto p = ncptest::random_graded_poset(rng);
        const auto rel = transitive_closure(p);
        const auto chains = minimum_chain_cover(p);
        CHECK(static_cast<int>(chains.size()) == width(p));
        std::vector<char> seen(p.m, 0);
        for (const auto& chain : chains)
            for (std::size_t i = 0; i < chain.size(); ++i) {
                CHECK(!seen[chain[i]]);
                seen[chain[i]] = 1;
                if (i + 1 < chain.size()) CHECK(rel.less(chain[i], chain[i + 1]));
            }
        for (int e = 0; e < p.m; ++e) CHECK(seen[e]);
    }
}

TEST_CASE("shade") {
    const auto b2 = boolean_lattice(2);
    CHECK(shade(b2, {}).empty());
    CHECK(shade(b2, {1}) == std::vector<int>{3});
    const auto p = fixture("decomp_demo_poset.json");
    CHECK(shade(p, elements_of_rank(p, 1)) == elements_of_rank(p, 2));
    CHECK_THROWS_AS(shade(p, std::vector<int>{0, 1}), input_error);
}

TEST_CASE("truncation") {
    SECTION("removing the big middle rank leaves the expected poset") {
        const auto p = truncate(fixture("two_family_gap_poset.json"));
        CHECK(p.m == 8);
        CHECK(is_isomorphic(p, fixture("width_gap_poset.json")));
    }
    SECTION("an antichain truncates to nothing") {
        CHECK(truncate(antichain_poset(5)).m == 0);
    }
    SECTION("the middle of a Boolean square collapses to a 2-chain") {
        const auto p = truncate(boolean_lattice(2));
        CHECK(p.m == 2);
        CHECK(is_isomorphic(p, chain_poset(1)));
    }
    SECTION("truncations of graded posets stay graded") {
        std::mt19937 rng(5);
        for (int trial = 0; trial < 50; ++trial) {
            auto p = ncptest::random_graded_poset(rng);
            while (p.m > 0) {
                REQUIRE(is_graded(p));
                p = truncate(p, trial % 2 ? TruncateTieBreak::LargestRank
                                          : TruncateTieBreak::SmallestRank);
            }
        }
    }
}

TEST_CASE("Sperner decisions on the fixtures") {
    CHECK(is_sperner(fixture("decomp_demo_poset.json")));
    CHECK_FALSE(is_sperner(fixture("width_gap_poset.json")));
    CHECK(is_sperner(boolean_lattice(4)));

    const auto report = is_strongly_sperner(fixture("two_family_gap_poset.json"));
    CHECK_FALSE(report.strongly_sperner);
    REQUIRE(report.verdicts.size() >= 2);
    CHECK(report.verdicts[0].sperner);        // the poset itself is Sperner
    CHECK_FALSE(report.verdicts[1].sperner);  // its first truncation is not

    CHECK(is_strongly_sperner(antichain_poset(6)).strongly_sperner);
    CHECK(is_strongly_sperner(fixture("decomp_demo_poset.json")).strongly_sperner);

    // the verdict is the conjunction of the per-truncation verdicts
    for (const char* name : {"two_family_gap_poset.json", "decomp_demo_poset.json"}) {
        const auto r = is_strongly_sperner(fixture(name));
        bool all = true;
        for (const auto& v : r.verdicts) all = all && v.sperner;
        CHECK(r.strongly_sperner == all);
    }
}

TEST_CASE("constructed lattices are strongly Sperner") {
    for (int d = 2; d <= 4; ++d)
        for (int n = 2; n <= 4; ++n) {
            const auto p = to_graded_poset(build_nc_lattice({d, n}));
            CHECK(is_strongly_sperner(p).strongly_sperner);
        }
}

TEST_CASE("brute-force k-families") {
    CHECK(max_k_family_bruteforce(boolean_lattice(3), 2) == 6);
    CHECK(max_k_family_bruteforce(fixture("two_family_gap_poset.json"), 2) == 8);
    CHECK(max_k_family_bruteforce(chain_poset(4), 2) == 2);
    CHECK(max_k_family_bruteforce(fixture("width_gap_poset.json"), 2) == 6);
    CHECK_THROWS_AS(max_k_family_bruteforce(antichain_poset(21), 1), resource_limit_error);
}

TEST_CASE("width agrees with the brute-force 1-family maximum") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const auto p = ncptest::random_graded_poset(rng);
        CHECK(width(p) == max_k_family_bruteforce(p, 1));
    }
    for (const char* name : {"decomp_demo_poset.json", "two_family_gap_poset.json",
                             "width_gap_poset.json"}) {
        const auto p = fixture(name);
        CHECK(width(p) == max_k_family_bruteforce(p, 1));
    }
}

TEST_CASE("rank-removal verdict equals the definition, under both tie-breaks") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        const auto p = ncptest::random_graded_poset(rng);
        const bool expected = ncptest::strongly_sperner_by_definition(p);
        CHECK(is_strongly_sperner(p, TruncateTieBreak::SmallestRank).strongly_sperner == expected);
        CHECK(is_strongly_sperner(p, TruncateTieBreak::LargestRank).strongly_sperner == expected);
    }
}

TEST_CASE("normalized matching") {
    for (int k = 1; k <= 5; ++k) CHECK(normalized_matching(boolean_lattice(k)).first);
    SECTION("the width-gap fixture fails and the failing pair is reported") {
        const auto [ok, failing] = normalized_matching(fixture("width_gap_poset.json"));
        CHECK_FALSE(ok);
        REQUIRE(failing.has_value());
    }
    CHECK(normalized_matching(to_graded_poset(build_nc_lattice({5, 3}))).first);
    SECTION("flow agrees with exhaustive subset checking") {
        std::mt19937 rng(777);
        int checked = 0;
        for (int trial = 0; trial < 80; ++trial) {
            const auto p = ncptest::random_graded_poset(rng);
            bool small_ranks = true;
            for (long long c : rank_profile(p).rank_vector) small_ranks = small_ranks && c <= 12;
            if (!small_ranks) continue;
            ++checked;
            CHECK(normalized_matching(p).first == ncptest::normalized_matching_exhaustive(p));
        }
        CHECK(checked > 40);
    }
}

TEST_CASE("chain-decomposition existence certificate") {
    for (int d = 2; d <= 4; ++d)
        for (int n = 2; n <= 4; ++n)
            CHECK(griggs_scd_exists(to_graded_poset(build_nc_lattice({d, n}))));
    CHECK_FALSE(griggs_scd_exists(fixture("width_gap_poset.json")));
    for (int k = 1; k <= 5; ++k) CHECK(griggs_scd_exists(boolean_lattice(k)));
}
