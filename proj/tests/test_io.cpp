#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "ncp/absolute_order.hpp"
#include "ncp/catalog.hpp"
#include "ncp/io.hpp"
#include "ncp/nc_decomp.hpp"
#include "test_util.hpp"

using namespace ncp;

namespace {

std::string temp_path(const std::string& name) {
    return std::string("io_test_") + name;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("poset files round-trip") {
    const auto lat = build_nc_lattice({2, 3});
    const auto poset = to_graded_poset(lat);
    PosetMeta meta;
    meta.family = "gddn";
    meta.d = 2;
    meta.n = 3;
    meta.coxeter = to_cycle_string(lat.gamma);
    const auto path = temp_path("roundtrip.json");
    export_poset(poset, meta, path);
    const auto loaded = import_poset(path);
    CHECK(loaded.poset.m == poset.m);
    CHECK(loaded.poset.rank == poset.rank);
    CHECK(loaded.poset.up == poset.up);
    CHECK(loaded.poset.labels == poset.labels);
    CHECK(loaded.meta.family == "gddn");
    CHECK(loaded.meta.coxeter == meta.coxeter);
    const auto path2 = temp_path("roundtrip2.json");
    export_poset(loaded.poset, loaded.meta, path2);
    CHECK(slurp(path) == slurp(path2));
    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("fixture files parse with the expected profiles") {
    const auto p = ncptest::fixture("decomp_demo_poset.json");
    CHECK(p.m == 12);
    CHECK(rank_profile(p).rank_vector == std::vector<long long>{1, 3, 4, 3, 1});
}

TEST_CASE("schema violations are reported") {
    auto base = poset_to_json(ncptest::fixture("width_gap_poset.json"));
    SECTION("cover jumping two ranks") {
        auto j = base;
        j["covers"].push_back({0, 7});  // bottom to top
        CHECK_THROWS_AS(poset_from_json(j), input_error);
    }
    SECTION("duplicate cover") {
        auto j = base;
        j["covers"].push_back(j["covers"][0]);
        CHECK_THROWS_AS(poset_from_json(j), input_error);
    }
    SECTION("ids must be dense") {
        auto j = base;
        j["elements"][3]["id"] = 99;
        CHECK_THROWS_AS(poset_from_json(j), input_error);
    }
    SECTION("wrong format marker") {
        auto j = base;
        j["format"] = "something-else";
        CHECK_THROWS_AS(poset_from_json(j), input_error);
    }
}

TEST_CASE("DOT export is deterministic and rank-clustered") {
    const auto p = ncptest::fixture("width_gap_poset.json");
    const auto a = temp_path("a.dot"), b = temp_path("b.dot");
    export_dot(p, a);
    export_dot(p, b);
    const auto text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text.find("rank=same") != std::string::npos);
    CHECK(text.find("e0 -> e1") != std::string::npos);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("decomposition files re-verify after a round-trip") {
    const auto lat = build_nc_lattice({3, 3});
    const auto poset = to_graded_poset(lat);
    const auto d = sbd(lat);
    const auto path = temp_path("decomp.json");
    export_decomposition(d, poset, "sbd", path);
    const auto loaded = import_decomposition(path);
    CHECK(verify_decomposition(poset, loaded, VerifyMode::Boolean).ok);
    CHECK(gamma_from_boolean_parts(poset, loaded) == gamma_from_boolean_parts(poset, d));
    std::remove(path.c_str());
}

TEST_CASE("catalog") {
    SECTION("gddn invariants") {
        const auto inv = catalog("gddn", 5, 3);
        CHECK(inv.degrees == std::vector<int>{3, 5, 10});
        CHECK(inv.h == 10);
        CHECK(inv.catalan == 26);
        CHECK(catalog("gddn", 2, 3).catalan == 14);
    }
    SECTION("g11n invariants") {
        const auto inv = catalog("g11n", 1, 4);
        CHECK(inv.degrees == std::vector<int>{2, 3, 4});
        CHECK(inv.h == 4);
        CHECK(inv.catalan == 14);
    }
    SECTION("catalan equals the built lattice size") {
        for (int n = 2; n <= 6; ++n)
            CHECK(catalog("g11n", 1, n).catalan == build_nc_lattice({1, n}).size());
        for (int d = 2; d <= 4; ++d)
            for (int n = 2; n <= 4; ++n)
                CHECK(catalog("gddn", d, n).catalan == build_nc_lattice({d, n}).size());
    }
    SECTION("errors") {
        CHECK_THROWS_AS(catalog("g41n", 4, 2), input_error);
        CHECK_THROWS_AS(catalog("gddn", 1, 3), input_error);
        CHECK_THROWS_AS(catalog("g11n", 2, 3), input_error);
    }
}

TEST_CASE("narayana numbers") {
    CHECK(narayana(4, 2) == 6);
    for (int n = 1; n <= 8; ++n) CHECK(narayana(n, 1) == 1);
    long long sum = 0;
    for (int k = 1; k <= 4; ++k) sum += narayana(4, k);
    CHECK(sum == 14);
    CHECK_THROWS_AS(narayana(4, 5), input_error);
    CHECK_THROWS_AS(narayana(4, 0), input_error);
}

TEST_CASE("reference table verification") {
    SECTION("synthetic lattice with the G23 profile") {
        const auto report = verify_reference_table(
            std::string(NCPART_TEST_DATA_DIR) + "/g23_synthetic.json", "G23");
        CHECK(report.rank_match);
        CHECK(report.gamma_match);
        CHECK(report.strongly_sperner);
        CHECK(report.ok());
        CHECK(report.computed_gamma_vector == std::vector<long long>{1, 12});
    }
    SECTION("self-generated lattice against its own profile") {
        const auto poset = to_graded_poset(build_nc_lattice({5, 3}));
        const auto report = verify_reference_table(poset, {{1, 12, 12, 1}, {1, 9}});
        CHECK(report.ok());
    }
    SECTION("mismatches are reported, not thrown") {
        const auto poset = to_graded_poset(build_nc_lattice({5, 3}));
        const auto report = verify_reference_table(poset, {{1, 11, 11, 1}, {1, 9}});
        CHECK_FALSE(report.rank_match);
        CHECK_FALSE(report.ok());
        CHECK(report.strongly_sperner);
    }
    SECTION("unknown group name") {
        CHECK_THROWS_AS(verify_reference_table("nowhere.json", "G99"), input_error);
    }
}
