#include <catch2/catch_amalgamated.hpp>

#include "ncp/absolute_order.hpp"
#include "ncp/io.hpp"
#include "ncp/poset.hpp"

using namespace ncp;

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

GradedPoset fixture(const std::string& name) {
    return import_poset(std::string(NCPART_TEST_DATA_DIR) + "/" + name).poset;
}

Decomposition fixture_decomp(const std::string& name) {
    return import_decomposition(std::string(NCPART_TEST_DATA_DIR) + "/" + name);
}

std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
    std::vector<long long> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

TEST_CASE("rank profiles and gamma vectors") {
    SECTION("a symmetric non-unimodal-free example with a negative gamma entry") {
        const auto profile = rank_profile(fixture("decomp_demo_poset.json"));
        CHECK(profile.rank_vector == std::vector<long long>{1, 3, 4, 3, 1});
        CHECK(profile.symmetric);
        CHECK(profile.unimodal);
        REQUIRE(profile.gamma_vector);
        CHECK(*profile.gamma_vector == std::vector<long long>{1, -1, 0});
        CHECK_FALSE(profile.gamma_nonnegative);
    }
    SECTION("the 25-element demo poset") {
        const auto profile = rank_profile(fixture("sbd_demo_poset.json"));
        CHECK(profile.rank_vector == std::vector<long long>{1, 6, 11, 6, 1});
        REQUIRE(profile.gamma_vector);
        CHECK(*profile.gamma_vector == std::vector<long long>{1, 2, 1});
        CHECK(profile.gamma_nonnegative);
    }
    SECTION("triangular solve from a bare rank vector") {
        CHECK(gamma_vector_of({1, 12, 12, 1}) == std::vector<long long>{1, 9});
        CHECK(gamma_vector_of({1, 15, 15, 1}) == std::vector<long long>{1, 12});
        CHECK_THROWS_AS(gamma_vector_of({1, 2, 3}), input_error);
    }
}

TEST_CASE("direct products") {
    const auto two = chain_poset(1);
    SECTION("two 2-chains make a Boolean square") {
        CHECK(is_isomorphic(direct_product(two, two), boolean_lattice(2)));
    }
    SECTION("rank polynomials multiply") {
        GradedPoset diamond = boolean_lattice(1);  // (1,1)
        GradedPoset mid;                            // (1,3,1)
        mid.m = 5;
        mid.rank = {0, 1, 1, 1, 2};
        mid.up = {{1, 2, 3}, {4}, {4}, {4}, {}};
        const auto prod = direct_product(diamond, mid);
        CHECK(rank_profile(prod).rank_vector == std::vector<long long>{1, 4, 4, 1});
        CHECK(rank_profile(prod).rank_vector ==
              poly_mul(rank_profile(diamond).rank_vector, rank_profile(mid).rank_vector));
    }
    SECTION("squaring the 5-element lattice") {
        const auto nc3 = to_graded_poset(build_nc_lattice({1, 3}));
        CHECK(direct_product(nc3, nc3).m == 25);
    }
    SECTION("product of gamma-nonnegative symmetric posets stays gamma-nonnegative") {
        const auto a = fixture("sbd_demo_poset.json");
        for (const auto& b : {boolean_lattice(3), fixture("sbd_demo_poset.json")}) {
            const auto profile = rank_profile(direct_product(a, b));
            CHECK(profile.rank_vector ==
                  poly_mul(rank_profile(a).rank_vector, rank_profile(b).rank_vector));
            CHECK(profile.symmetric);
            CHECK(profile.gamma_nonnegative);
        }
    }
}

TEST_CASE("boolean lattices") {
    CHECK(boolean_lattice(0).m == 1);
    CHECK(is_isomorphic(boolean_lattice(1), chain_poset(1)));
    CHECK(rank_profile(boolean_lattice(3)).rank_vector == std::vector<long long>{1, 3, 3, 1});
}

TEST_CASE("isomorphism") {
    CHECK(is_isomorphic(boolean_lattice(2), direct_product(chain_poset(1), chain_poset(1))));
    CHECK_FALSE(is_isomorphic(boolean_lattice(2), chain_poset(3)));
    CHECK_FALSE(is_isomorphic(fixture("width_gap_poset.json"), boolean_lattice(3)));
    GradedPoset big;
    big.m = 65;
    big.rank.assign(65, 0);
    big.up.resize(65);
    CHECK_THROWS_AS(is_isomorphic(big, big), resource_limit_error);
}

TEST_CASE("transitive closure") {
    SECTION("chain of three elements") {
        const auto rel = transitive_closure(chain_poset(2));
        int pairs = 0;
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v) pairs += rel.less(u, v);
        CHECK(pairs == 3);
    }
    SECTION("antichain") {
        const auto rel = transitive_closure(antichain_poset(4));
        int pairs = 0;
        for (int u = 0; u < 4; ++u)
            for (int v = 0; v < 4; ++v) pairs += rel.less(u, v);
        CHECK(pairs == 0);
    }
    SECTION("boolean square") {
        const auto rel = transitive_closure(boolean_lattice(2));
        int pairs = 0;
        for (int u = 0; u < 4; ++u)
            for (int v = 0; v < 4; ++v) pairs += rel.less(u, v);
        CHECK(pairs == 5);
    }
}

TEST_CASE("decomposition verification on the demo fixtures") {
    const auto p = fixture("decomp_demo_poset.json");
    SECTION("three parts: valid plain, not symmetric") {
        const auto d = fixture_decomp("decomp_demo_three_parts.json");
        CHECK(verify_decomposition(p, d, VerifyMode::Plain).ok);
        CHECK_FALSE(verify_decomposition(p, d, VerifyMode::Symmetric).ok);
    }
    SECTION("two-part symmetric decomposition") {
        const auto d = fixture_decomp("decomp_demo_symmetric.json");
        CHECK(verify_decomposition(p, d, VerifyMode::Symmetric).ok);
    }
    SECTION("symmetric chain decomposition") {
        const auto d = fixture_decomp("decomp_demo_chains.json");
        CHECK(verify_decomposition(p, d, VerifyMode::Chain).ok);
    }
    SECTION("a non-partition is rejected") {
        Decomposition d = fixture_decomp("decomp_demo_symmetric.json");
        d.parts[0].elements.pop_back();
        CHECK_THROWS_AS(verify_decomposition(p, d, VerifyMode::Plain), input_error);
    }
    SECTION("a disconnected part is reported") {
        Decomposition d;
        d.parts.resize(2);
        d.parts[0].elements = {0, 11};  // bottom and top, nothing between
        for (int e = 1; e <= 10; ++e) d.parts[1].elements.push_back(e);
        const auto report = verify_decomposition(p, d, VerifyMode::Plain);
        CHECK_FALSE(report.ok);
    }
}

TEST_CASE("symmetric Boolean verification and the part census") {
    const auto p = fixture("sbd_demo_poset.json");
    const auto d = fixture_decomp("sbd_demo_parts.json");
    CHECK(verify_decomposition(p, d, VerifyMode::Boolean).ok);
    CHECK(gamma_from_boolean_parts(p, d) == std::vector<long long>{1, 2, 1});
    CHECK(gamma_from_boolean_parts(p, d) == *rank_profile(p).gamma_vector);

    SECTION("a corrupted declared rank is flagged") {
        auto bad = d;
        bad.parts[0].type_rank += 1;
        CHECK_FALSE(verify_decomposition(p, bad, VerifyMode::Boolean).ok);
    }
    SECTION("a misassembled part is flagged") {
        auto bad = d;
        // swap one element between the two rank-2 Boolean parts
        std::swap(bad.parts[1].elements.back(), bad.parts[2].elements.back());
        for (auto& part : bad.parts) std::sort(part.elements.begin(), part.elements.end());
        CHECK_FALSE(verify_decomposition(p, bad, VerifyMode::Boolean).ok);
    }
}

TEST_CASE("whole Boolean lattices verify as single-part decompositions") {
    for (int k = 0; k <= 6; ++k) {
        const auto b = boolean_lattice(k);
        Decomposition d;
        d.parts.resize(1);
        for (int e = 0; e < b.m; ++e) d.parts[0].elements.push_back(e);
        d.parts[0].type = PartType::Boolean;
        d.parts[0].type_rank = k;
        CHECK(verify_decomposition(b, d, VerifyMode::Boolean).ok);
        const auto gamma = gamma_from_boolean_parts(b, d);
        std::vector<long long> expected(k / 2 + 1, 0);
        expected[0] = 1;
        CHECK(gamma == expected);
    }
}
