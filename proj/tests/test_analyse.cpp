#include "doctest.h"

#include "excov/analyse.hpp"
#include "excov/enumerate.hpp"
#include "excov/verify.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace excov;
using namespace excov::test;

TEST_CASE("orthogonal array content by the constant-row criterion") {
    CHECK_FALSE(contains_oa(fig_cax_42_2_5_6()));
    CHECK_FALSE(contains_oa(fig_cax_42_2_4_6()));
    for (int v = 2; v <= 5; ++v) CHECK(contains_oa(base_array(v)));
    CHECK_THROWS_AS(contains_oa(make_array(3, 2, 2)), std::invalid_argument);
}

TEST_CASE("criterion agrees with the direct subarray check on whole catalogues") {
    EnumerateOptions opts;
    for (int v = 2; v <= 4; ++v)
        for (int k = 3; k <= (v == 4 ? 4 : 4); ++k) {
            const auto cat = build_catalogue(v, k, opts);
            for (const auto& m : cat.members) CHECK(contains_oa(m) == contains_oa_direct(m));
        }
}

TEST_CASE("census reproduces the v=4 published cells") {
    EnumerateOptions opts;
    const auto c3 = census(build_catalogue(4, 3, opts));
    CHECK(c3.oa_count == 15);
    CHECK(c3.non_oa_count == 12);
    const auto c4 = census(build_catalogue(4, 4, opts));
    CHECK(c4.oa_count == 32);
    CHECK(c4.non_oa_count == 6);
}

TEST_CASE("column deletions of the 42x4 array all contain an orthogonal array") {
    const auto reports = column_deletion_analysis(fig_cax_42_2_4_6());
    REQUIRE(reports.size() == 4);
    for (const auto& rep : reports) CHECK(rep.contains_oa);
}

TEST_CASE("column deletions of the binary 6x4 array all form a constant one-row") {
    const Array fig1 = fig_cax_6_2_4_2();
    const auto reports = column_deletion_analysis(fig1);
    for (int drop = 0; drop < 4; ++drop) {
        // deleting any column leaves some row of all ones
        bool has_ones_row = false;
        for (int r = 0; r < fig1.n_rows; ++r) {
            bool all1 = true;
            for (int c = 0; c < 4; ++c)
                if (c != drop && fig1.at(r, c) != 1) { all1 = false; break; }
            if (all1) has_ones_row = true;
        }
        CHECK(has_ones_row);
        CHECK(reports[drop].contains_oa);
    }
}

TEST_CASE("column deletions of the unique 42x5 array: two classes, neither with an orthogonal array") {
    const auto reports = column_deletion_analysis(fig_cax_42_2_5_6());
    REQUIRE(reports.size() == 5);
    std::vector<CanonicalForm> classes;
    for (const auto& rep : reports) {
        CHECK_FALSE(rep.contains_oa);
        bool known = false;
        for (const auto& c : classes)
            if (c == rep.cls) { known = true; break; }
        if (!known) classes.push_back(rep.cls);
    }
    CHECK(classes.size() == 2);
}

TEST_CASE("oa-free arrays with five or more columns keep an oa-free deletion") {
    EnumerateOptions opts;
    const auto cat = build_catalogue(4, 5, opts);
    for (const auto& m : cat.members) {
        if (contains_oa(m)) continue;
        bool some_deletion_oa_free = false;
        for (const auto& rep : column_deletion_analysis(m))
            if (!rep.contains_oa) some_deletion_oa_free = true;
        CHECK(some_deletion_oa_free);
    }
}

TEST_CASE("latin square extraction from the unique 42x5 array") {
    const Array fig2 = fig_cax_42_2_5_6();
    const auto ext = latin_square_extract(fig2, 1, 2);
    CHECK(verify_oa(ext.oa, 2).pass);
    CHECK(ext.transversals == 32);  // frozen from the pre-build brute-force oracle
    CHECK(ext.transversals == oracle_transversals([&] {
        std::vector<std::vector<int>> sq(6, std::vector<int>(6));
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) sq[r][c] = ext.square.at(r, c);
        return sq;
    }()));

    // species-equivalent to the published square
    LatinSquare fig4;
    fig4.n = 6;
    for (const auto& row : fig_latin_6())
        for (int x : row) fig4.cells.push_back(Symbol(x));
    CHECK(latin_species_canonical(ext.square) == latin_species_canonical(fig4));
    CHECK(transversal_count(fig4) == 32);
}

TEST_CASE("dropping a pair including the fixed column is rejected") {
    // those deletions do not force a constant row per symbol
    CHECK_THROWS_AS(latin_square_extract(fig_cax_42_2_5_6(), 0, 1), std::invalid_argument);
}

TEST_CASE("order-2 latin square has no transversals") {
    LatinSquare sq;
    sq.n = 2;
    sq.cells = {0, 1, 1, 0};
    CHECK(transversal_count(sq) == 0);
}

TEST_CASE("obstruction report withholds on wrong input and concludes on the real class") {
    // negative control: a synthetic catalogue whose member has constant rows
    Catalogue fake;
    fake.v = 6;
    fake.k = 5;
    fake.complete = true;
    Array with_consts = make_array(42, 5, 6);  // all zeros: plenty of constant rows
    fake.members.push_back(with_consts);
    const auto withheld = obstruction_report(fake);
    CHECK_FALSE(withheld.concluded);

    Catalogue incomplete;
    incomplete.v = 6;
    incomplete.k = 5;
    incomplete.complete = false;
    incomplete.members.push_back(fig_cax_42_2_5_6());
    CHECK_FALSE(obstruction_report(incomplete).concluded);

    Catalogue real;
    real.v = 6;
    real.k = 5;
    real.complete = true;
    real.members.push_back(fig_cax_42_2_5_6());
    const auto rep = obstruction_report(real);
    CHECK(rep.concluded);
    CHECK(rep.conclusion.find("7,10") != std::string::npos);
}

TEST_CASE("every row of the unique 42x5 array has a repeated symbol") {
    const auto rec = classify_array(fig_cax_42_2_5_6());
    CHECK(rec.every_row_has_repeat);
    CHECK(rec.constant_row_count == 0);
}

TEST_CASE("sequence covering array size bounds") {
    CHECK(scan_bound(7, 11, 5, 43) == 5160);
    CHECK(scan_bound(6, 11, 4, 31) == 744);
    CHECK(scan_bound(4, 7, 2, 13) == 26);
    CHECK_THROWS_AS(scan_bound(3, 2, 1, 5), std::invalid_argument);
}

TEST_CASE("published bound holds on catalogued classes") {
    EnumerateOptions opts;
    for (int v = 2; v <= 4; ++v) {
        int max_k = 0;
        for (int k = 3; k <= v + 3; ++k) {
            const auto cat = build_catalogue(v, k, opts);
            if (cat.members.empty()) break;
            max_k = k;
        }
        CHECK(max_k <= v + 2);
    }
}
