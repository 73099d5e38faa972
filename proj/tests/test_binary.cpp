#include "doctest.h"

#include "excov/binary.hpp"
#include "excov/canon.hpp"
#include "excov/verify.hpp"

using namespace excov;

TEST_CASE("forced row counts") {
    CHECK(binary_row_count(2) == 6);
    CHECK(binary_row_count(3) == 24);
    CHECK(binary_row_count(7) == 40320);
    // identity: sum over j of C(t,j) j! (t-j)! telescopes to (t+1)!
    for (int t = 1; t <= 10; ++t) {
        BigInt sum = 0;
        for (int j = 0; j <= t; ++j) {
            BigInt c = factorial_big(t) / (factorial_big(j) * factorial_big(t - j));
            sum += c * factorial_big(j) * factorial_big(t - j);
        }
        CHECK(sum == binary_row_count(t));
    }
}

TEST_CASE("family counts match floor(t/2)! ceil(t/2)! + 1 for t up to 12") {
    for (int t = 1; t <= 12; ++t) {
        const auto fam = family_k_t_plus_1(t);
        const BigInt expect = factorial_big(t / 2) * factorial_big((t + 1) / 2) + 1;
        CHECK(BigInt(fam.size()) == expect);
        // spot-check the recurrence on the first and last profiles
        for (const auto& p : {fam.front(), fam.back()})
            for (int i = 0; i <= t; ++i)
                CHECK(p.x[i] + p.x[i + 1] == factorial_big(i) * factorial_big(t - i));
    }
}

TEST_CASE("profile chain identity x_i + x_{i+1} = x_{t+1-i} + x_{t-i}") {
    for (int t : {3, 4, 5, 8}) {
        for (const auto& p : family_k_t_plus_1(t))
            for (int i = 0; i <= t; ++i)
                CHECK(p.x[i] + p.x[i + 1] == p.x[t + 1 - i] + p.x[t - i]);
    }
}

TEST_CASE("materialized profiles verify exactly at strength t for t <= 4") {
    for (int t = 1; t <= 4; ++t) {
        const auto fam = family_k_t_plus_1(t);
        for (const auto& p : fam) {
            const Array a = materialize(p);
            CHECK(BigInt(a.n_rows) == binary_row_count(t));
            CHECK(verify_cax(a, t, true).pass);
        }
    }
}

TEST_CASE("complement pairing structure for t <= 8") {
    for (int t = 1; t <= 8; ++t) {
        const auto cls = family_isomorphism_classes(t);
        const auto fam = family_k_t_plus_1(t);
        if (t % 2 == 1) {
            CHECK(cls.pairs.empty());
            CHECK(cls.singletons.size() == fam.size());
            CHECK(cls.class_count == fam.size());
        } else {
            CHECK(cls.singletons.size() == 1);
            CHECK(cls.pairs.size() == (fam.size() - 1) / 2);
            CHECK(cls.class_count == cls.pairs.size() + 1);
        }
    }
}

TEST_CASE("complemented profiles materialize to 0/1-swapped arrays") {
    for (int t = 2; t <= 3; ++t) {
        const auto fam = family_k_t_plus_1(t);
        for (const auto& p : fam) {
            WeightProfile rev;
            rev.t = p.t;
            rev.k = p.k;
            rev.x.assign(p.x.rbegin(), p.x.rend());
            const Array a = materialize(p);
            Array swapped = a;
            for (auto& e : swapped.entries) e = Symbol(1 - e);
            swapped.sort_rows();
            Array b = materialize(rev);
            b.sort_rows();
            CHECK(swapped == b);
            CHECK(are_isomorphic(a, b));
        }
    }
}

TEST_CASE("k2t at t=1 by hand expansion") {
    const auto res = k2t_feasibility(1);
    REQUIRE(res.feasible);
    const auto& x = res.solution->x;
    REQUIRE(x.size() == 3);
    CHECK(x[0] + x[1] == 1);
    CHECK(x[1] + x[2] == 1);
    CHECK(x[0] == x[2]);
}

TEST_CASE("k2t feasible for t up to 12") {
    for (int t = 1; t <= 12; ++t) {
        const auto res = k2t_feasibility(t);
        REQUIRE(res.feasible);
        const auto& x = res.solution->x;
        REQUIRE(static_cast<int>(x.size()) == 2 * t + 1);
        // solution satisfies the banded system
        for (int i = 0; i <= t; ++i) {
            BigInt lhs = 0;
            for (int j = 0; j <= t; ++j) {
                BigInt c = factorial_big(t) / (factorial_big(j) * factorial_big(t - j));
                lhs += c * x[i + j];
            }
            CHECK(lhs == factorial_big(i) * factorial_big(t - i));
        }
        for (const auto& xi : x) CHECK(xi >= 0);
    }
}

TEST_CASE("k2t solutions materialize to exact arrays for t <= 3") {
    for (int t = 1; t <= 3; ++t) {
        const auto res = k2t_feasibility(t);
        REQUIRE(res.feasible);
        const Array a = materialize(*res.solution);
        CHECK(BigInt(a.n_rows) == binary_row_count(t));
        CHECK(verify_cax(a, t, true).pass);
    }
}

TEST_CASE("profile serialization") {
    WeightProfile p;
    p.t = 2;
    p.k = 3;
    p.x = {2, 0, 1, 2};
    CHECK(p.to_line() == "2 3 2 0 1 2");
}
