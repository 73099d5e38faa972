#include "doctest.h"

#include <set>

#include "excov/analyse.hpp"
#include "excov/canon.hpp"
#include "excov/enumerate.hpp"
#include "excov/verify.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace excov;
using namespace excov::test;

TEST_CASE("base arrays are exact by construction") {
    for (int v = 2; v <= 6; ++v) {
        const Array b = base_array(v);
        CHECK(b.n_rows == v * (v + 1));
        CHECK(verify_cax(b, 2, true).pass);
    }
    // v=2 rows: 00 00 01 10 11 11
    const Array b2 = base_array(2);
    CHECK(b2.entries == std::vector<Symbol>{0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1});
}

TEST_CASE("placements match the subset-enumeration oracle") {
    const Array b2 = base_array(2);
    const auto got0 = placements(b2, 0);
    const auto want0 = oracle_placements(b2, 0);
    REQUIRE(got0.size() == want0.size());
    std::set<std::uint64_t> gs, ws;
    for (const auto& p : got0) gs.insert(p.row_mask);
    for (auto m : want0) ws.insert(m);
    CHECK(gs == ws);

    const Array b3 = base_array(3);
    for (int nu = 0; nu < 3; ++nu) {
        std::set<std::uint64_t> a, b;
        for (const auto& p : placements(b3, Symbol(nu))) a.insert(p.row_mask);
        for (auto m : oracle_placements(b3, nu)) b.insert(m);
        CHECK(a == b);
    }
}

TEST_CASE("placements for distinct symbols are disjoint as sets of sets") {
    const Array b2 = base_array(2);
    std::set<std::uint64_t> p0, p1;
    for (const auto& p : placements(b2, 0)) p0.insert(p.row_mask);
    for (const auto& p : placements(b2, 1)) p1.insert(p.row_mask);
    for (auto m : p0) CHECK(p1.count(m) == 0);
}

TEST_CASE("placements on the 42-row array have v+1 rows each") {
    const Array fig2 = fig_cax_42_2_5_6();
    for (int nu = 0; nu < 6; ++nu) {
        const auto pls = placements(fig2, Symbol(nu));
        for (const auto& p : pls) CHECK(std::popcount(p.row_mask) == 7);
    }
}

TEST_CASE("every extension is exact; the unique 42x5 array does not extend") {
    const Array b3 = base_array(3);
    const auto children = extend(b3);
    CHECK_FALSE(children.empty());
    for (const auto& c : children) {
        CHECK(c.n_cols == 3);
        CHECK(verify_cax(c, 2, true).pass);
    }
    CHECK(extend(fig_cax_42_2_5_6()).empty());
}

TEST_CASE("placements and extension reject non-exact input") {
    Array junk = make_array(6, 2, 2);
    CHECK_THROWS_AS(placements(junk, 0), std::invalid_argument);
    CHECK_THROWS_AS(extend(junk), std::invalid_argument);
}

TEST_CASE("catalogue counts for v=2 and v=3 match the published table") {
    EnumerateOptions opts;
    auto counts = [&](int v, int k) {
        const auto cat = build_catalogue(v, k, opts);
        const auto cen = census(cat);
        return std::pair<std::uint64_t, std::uint64_t>{cen.oa_count, cen.non_oa_count};
    };
    CHECK(counts(2, 3) == std::pair<std::uint64_t, std::uint64_t>{1, 0});
    CHECK(counts(2, 4) == std::pair<std::uint64_t, std::uint64_t>{0, 1});
    CHECK(build_catalogue(2, 5, opts).members.empty());
    CHECK(counts(3, 3) == std::pair<std::uint64_t, std::uint64_t>{3, 1});
    CHECK(counts(3, 4) == std::pair<std::uint64_t, std::uint64_t>{2, 1});
    CHECK(build_catalogue(3, 5, opts).members.empty());
}

TEST_CASE("catalogue equals the naive reference for v <= 3") {
    EnumerateOptions opts;
    for (int v = 2; v <= 3; ++v)
        for (int k = 3; k <= 5; ++k) {
            const auto fast = build_catalogue(v, k, opts);
            const auto naive = naive_catalogue(v, k);
            REQUIRE(fast.members.size() == naive.members.size());
            for (size_t i = 0; i < fast.members.size(); ++i)
                CHECK(fast.members[i] == naive.members[i]);
        }
}

TEST_CASE("catalogue members are canonical, exact, deduplicated and sorted") {
    EnumerateOptions opts;
    const auto cat = build_catalogue(4, 3, opts);
    CHECK(cat.members.size() == 27);
    std::vector<std::vector<std::uint8_t>> keys;
    for (const auto& m : cat.members) {
        CHECK(verify_cax(m, 2, true).pass);
        CHECK(canonical_form(m).representative == m);
        keys.push_back(pack_entries(m));
    }
    for (size_t i = 1; i < keys.size(); ++i) CHECK(keys[i - 1] < keys[i]);
}

TEST_CASE("two-column extension agrees with two single extensions up to isomorphism") {
    for (int v = 2; v <= 3; ++v) {
        const Array base = base_array(v);
        std::set<std::vector<Symbol>> via_two, via_pairs;
        for (const auto& c : extend_two_columns(base)) {
            CHECK(verify_cax(c, 2, true).pass);
            via_two.insert(canonical_form(c).representative.entries);
        }
        for (const auto& c1 : extend(base))
            for (const auto& c2 : extend(c1)) via_pairs.insert(canonical_form(c2).representative.entries);
        CHECK(via_two == via_pairs);
    }
}

TEST_CASE("two-column extension of the binary base contains the published class") {
    const auto children = extend_two_columns(base_array(2));
    const auto want = canonical_form(fig_cax_6_2_4_2());
    bool found = false;
    for (const auto& c : children)
        if (canonical_form(c) == want) { found = true; break; }
    CHECK(found);
}

TEST_CASE("oa-free catalogues match the classified full counts") {
    EnumerateOptions opts;
    EnumerateOptions oafree = opts;
    oafree.oa_free = true;
    for (int v = 2; v <= 3; ++v)
        for (int k = 3; k <= 4; ++k) {
            const auto full = build_catalogue(v, k, opts);
            std::set<std::vector<Symbol>> expect;
            for (const auto& m : full.members)
                if (!contains_oa(m)) expect.insert(m.entries);
            const auto got = build_catalogue(v, k, oafree);
            std::set<std::vector<Symbol>> have;
            for (const auto& m : got.members) have.insert(m.entries);
            CHECK(have == expect);
        }
}

TEST_CASE("extend_catalogue is one depth of the pipeline") {
    EnumerateOptions opts;
    const auto k3 = build_catalogue(3, 3, opts);
    const auto k4 = extend_catalogue(k3, opts);
    CHECK(k4.members.size() == 3);
    CHECK(k4.k == 4);
}

TEST_CASE("catalogues are identical across thread counts") {
    EnumerateOptions one;
    one.jobs = 1;
    EnumerateOptions four;
    four.jobs = 4;
    const auto a = build_catalogue(4, 4, one);
    const auto b = build_catalogue(4, 4, four);
    REQUIRE(a.members.size() == b.members.size());
    for (size_t i = 0; i < a.members.size(); ++i) CHECK(a.members[i] == b.members[i]);
}

TEST_CASE("perfect-cover search: tiny instances") {
    const auto s33 = find_psca(3, 3);
    REQUIRE(s33.status == PscaSearchResult::Status::Found);
    CHECK(s33.sca.perms.size() == 6);
    CHECK(verify_psca(s33.sca, 3, 1).pass);

    const auto s34 = find_psca(4, 3);
    REQUIRE(s34.status == PscaSearchResult::Status::Found);
    CHECK(s34.sca.perms.size() == 6);
    CHECK(verify_psca(s34.sca, 3, 1).pass);
    CHECK(verify_sca(s34.sca, 3).pass);
}

TEST_CASE("perfect-cover search honors the node limit") {
    const auto res = find_psca(7, 4, 50);
    CHECK(res.status == PscaSearchResult::Status::Aborted);
}
