// Acceptance suite: one line per criterion. Default mode runs everything
// desk-scale; --deep validates the long checkpointed reproductions against
// stage catalogues (EXCOV_DEEP_DIR, default ./deepwork) and is skipped with
// exit 77 when none are present.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "excov/analyse.hpp"
#include "excov/binary.hpp"
#include "excov/canon.hpp"
#include "excov/derive.hpp"
#include "excov/enumerate.hpp"
#include "excov/io.hpp"
#include "excov/verify.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace excov;
using namespace excov::test;

namespace {

int g_fail = 0;
int g_deep_ran = 0;
int g_deep_skipped = 0;

void line(int n, const std::string& what, bool pass) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << n << ": " << what << "\n";
    if (!pass) ++g_fail;
}

void skip(int n, const std::string& what) {
    std::cout << "SKIP criterion " << n << ": " << what << "\n";
    ++g_deep_skipped;
}

std::string cli() { return EXCOV_CLI_PATH; }

int run_cli(const std::string& args) {
    const int status = std::system((cli() + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string deep_dir() {
    if (const char* env = std::getenv("EXCOV_DEEP_DIR")) return env;
    return "deepwork";
}

std::string stage(int v, int k) {
    return deep_dir() + "/cat_v" + std::to_string(v) + "_k" + std::to_string(k) + ".caxcat";
}

bool have_stage(int v, int k) { return std::filesystem::exists(stage(v, k)); }

std::string tmpfile(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

// --- criterion 1 -----------------------------------------------------------

void criterion_1() {
    bool ok = true;
    ok &= run_cli("verify " + tmpfile("acc_fig1.cax", serialize(fig_cax_6_2_4_2())) + " --kind cax --t 2 --exact") == 0;
    ok &= run_cli("verify " + tmpfile("acc_fig2.cax", serialize(fig_cax_42_2_5_6())) + " --kind cax --t 2 --exact") == 0;
    ok &= run_cli("verify " + tmpfile("acc_fig3.cax", serialize(fig_cax_42_2_4_6())) + " --kind cax --t 2 --exact") == 0;
    const auto ext = latin_square_extract(fig_cax_42_2_5_6(), 1, 2);
    ok &= run_cli("verify " + tmpfile("acc_fig2_oa.cax", serialize(ext.oa)) + " --kind oa --t 2") == 0;
    line(1, "published arrays verify exactly; derived 36-row remainder is an orthogonal array", ok);
}

// --- criteria 2 + 3, desk scale --------------------------------------------

void criteria_2_3_default() {
    EnumerateOptions opts;
    struct Cell { int v, k; std::uint64_t oa, non; };
    const std::vector<Cell> cells = {
        {2, 3, 1, 0}, {2, 4, 0, 1}, {3, 3, 3, 1}, {3, 4, 2, 1},
        {4, 3, 15, 12}, {4, 4, 32, 6}, {4, 5, 80, 5},
        {5, 3, 283, 1067}, {5, 4, 2234, 3805},
    };
    bool counts_ok = true;
    for (const auto& cell : cells) {
        const auto cen = census(build_catalogue(cell.v, cell.k, opts));
        const bool ok = cen.oa_count == cell.oa && cen.non_oa_count == cell.non;
        if (!ok)
            std::cout << "  (v=" << cell.v << ",k=" << cell.k << ") got " << cen.oa_count << "|" << cen.non_oa_count
                      << " want " << cell.oa << "|" << cell.non << "\n";
        counts_ok &= ok;
    }
    line(3, "catalogue counts with/without orthogonal arrays, v <= 4 and (5,3), (5,4)", counts_ok);

    bool maxk_ok = true;
    maxk_ok &= build_catalogue(2, 5, opts).members.empty();
    maxk_ok &= build_catalogue(3, 5, opts).members.empty();
    maxk_ok &= build_catalogue(4, 6, opts).members.empty();
    line(2, "maximum column counts at desk scale: 4 for v=2, 4 for v=3, 5 for v=4", maxk_ok);
}

// --- deep criteria 2 + 3 ----------------------------------------------------

void criteria_2_3_deep() {
    struct Cell { int v, k; std::uint64_t oa, non; };
    const std::vector<Cell> cells = {
        {5, 5, 104146, 348}, {5, 6, 2073801, 0},
        {6, 3, 190472, 1666259}, {6, 4, 0, 39802785}, {6, 5, 0, 1},
    };
    for (const auto& cell : cells) {
        if (!have_stage(cell.v, cell.k)) {
            skip(3, "(v=" + std::to_string(cell.v) + ",k=" + std::to_string(cell.k) +
                        ") stage catalogue not present; run the deep enumeration first");
            continue;
        }
        ++g_deep_ran;
        const auto cen = census_file(stage(cell.v, cell.k));
        const bool ok = cen.oa_count == cell.oa && cen.non_oa_count == cell.non;
        if (!ok)
            std::cout << "  (v=" << cell.v << ",k=" << cell.k << ") got " << cen.oa_count << "|" << cen.non_oa_count
                      << " want " << cell.oa << "|" << cell.non << "\n";
        line(3, "deep catalogue counts (v=" + std::to_string(cell.v) + ",k=" + std::to_string(cell.k) + ")", ok);
    }

    // max k: the next depth must be empty
    if (have_stage(5, 7)) {
        ++g_deep_ran;
        line(2, "no 7-column exact array exists for v=5 (max k = 6)", catalogue_info(stage(5, 7)).count == 0);
    } else {
        skip(2, "v=5 k=7 emptiness needs the deep stage catalogue");
    }
    if (have_stage(6, 6)) {
        ++g_deep_ran;
        line(2, "no 6-column exact array exists for v=6 (max k = 5)", catalogue_info(stage(6, 6)).count == 0);
    } else {
        skip(2, "v=6 k=6 emptiness needs the deep stage catalogue");
    }
}

// --- criterion 4 -------------------------------------------------------------

void criterion_4_deep() {
    if (!have_stage(6, 5)) {
        skip(4, "needs the complete (v=6,k=5) stage catalogue");
        return;
    }
    ++g_deep_ran;
    Catalogue cat = read_catalogue(stage(6, 5));
    bool ok = cat.members.size() == 1;
    if (ok) {
        const auto rec = classify_array(cat.members.front());
        ok &= rec.constant_row_count == 0;
        ok &= rec.every_row_has_repeat;
        ok &= are_isomorphic(cat.members.front(), fig_cax_42_2_5_6());
    }
    const auto rep = obstruction_report(cat);
    ok &= rep.concluded;
    line(4, "unique (6,5) class, no constant rows, every row repeats; obstruction concluded", ok);
}

// --- criterion 5 -------------------------------------------------------------

void criterion_5_deep() {
    if (!have_stage(6, 4)) {
        skip(5, "needs the complete (v=6,k=4) stage catalogue");
        return;
    }
    ++g_deep_ran;
    const auto cen = census_file(stage(6, 4));
    const std::map<int, std::uint64_t> want = {
        {0, 3034497}, {1, 10418576}, {2, 12826409}, {3, 7994870}, {4, 2393309},
        {5, 2729090}, {6, 387172},   {7, 18385},    {8, 468},     {9, 9},
    };
    const bool ok = cen.constant_row_histogram == want;
    if (!ok)
        for (const auto& [consts, count] : cen.constant_row_histogram)
            std::cout << "  " << consts << " -> " << count << "\n";
    line(5, "constant-row histogram of the (6,4) catalogue matches all ten rows", ok);
}

// --- criterion 6 -------------------------------------------------------------

void criterion_6() {
    const auto rep = automorphisms(fig_cax_42_2_5_6());
    bool ok = rep.order == 12;
    ok &= rep.element_order_histogram == std::map<int, std::uint64_t>{{1, 1}, {2, 3}, {3, 8}};
    std::multiset<size_t> sizes;
    for (const auto& orb : rep.column_orbits) sizes.insert(orb.size());
    ok &= sizes == std::multiset<size_t>{1, 4};
    line(6, "automorphism group order 12 with the alternating-group profile and column orbits {1,4}", ok);
}

// --- criterion 7 -------------------------------------------------------------

void criterion_7() {
    const auto ext = latin_square_extract(fig_cax_42_2_5_6(), 1, 2);
    bool ok = ext.transversals == 32;  // frozen brute-force oracle value
    std::vector<std::vector<int>> sq(6, std::vector<int>(6));
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) sq[r][c] = ext.square.at(r, c);
    ok &= oracle_transversals(sq) == 32;
    LatinSquare fig4;
    fig4.n = 6;
    for (const auto& row : fig_latin_6())
        for (int x : row) fig4.cells.push_back(Symbol(x));
    ok &= latin_species_canonical(ext.square) == latin_species_canonical(fig4);
    line(7, "extracted latin square is species-equivalent to the published one with 32 transversals", ok);
}

// --- criterion 8 -------------------------------------------------------------

bool construction_checks(const ScaSet& x, int v, int t) {
    bool ok = verify_psca(x, t, 1).pass && static_cast<int>(x.perms.size()) == int(factorial_u64(t));
    for (int a = 1; a < t && ok; ++a) {
        const auto family = derive_family(x, a);
        ok &= family.size() == factorial_u64(v) / factorial_u64(v - a);
        std::uint64_t constant_rows = 0;
        for (const auto& c : family) {
            ok &= verify_cax(c, t - a, true).pass;
            for (int r = 0; r < c.n_rows; ++r) {
                bool constant = true;
                for (int col = 1; col < c.n_cols; ++col)
                    if (c.at(r, col) != c.at(r, 0)) { constant = false; break; }
                if (constant) ++constant_rows;
            }
        }
        for (const auto& [vec, count] : multiplicity_census(family)) ok &= count == factorial_u64(t);
        ok &= BigRat(constant_rows, family.size()) == constant_row_average(t, v, a);
    }
    return ok;
}

void criterion_8_default() {
    bool ok = true;
    for (const auto& [v, t] : std::vector<std::pair<int, int>>{{3, 3}, {4, 3}, {4, 4}}) {
        const auto res = find_psca(v, t);
        ok &= res.status == PscaSearchResult::Status::Found;
        if (res.status == PscaSearchResult::Status::Found) ok &= construction_checks(res.sca, v, t);
    }
    line(8, "derived families from oracle perfect covers: exact verification, censuses, averages", ok);
}

void criterion_8_deep() {
    ++g_deep_ran;
    const auto res = find_psca(5, 4, 500'000'000);
    if (res.status == PscaSearchResult::Status::Aborted) {
        skip(8, "perfect cover search for (v=5,t=4) hit the node budget; reported, not passed");
        return;
    }
    bool ok = res.status == PscaSearchResult::Status::Found && construction_checks(res.sca, 5, 4);
    line(8, "deep oracle perfect cover (5,4): families verify with exact censuses and averages", ok);
}

// --- criterion 9 -------------------------------------------------------------

void criterion_9_default() {
    bool ok = true;
    for (int t = 1; t <= 12; ++t) {
        const auto fam = family_k_t_plus_1(t);
        ok &= BigInt(fam.size()) == factorial_big(t / 2) * factorial_big((t + 1) / 2) + 1;
    }
    for (int t = 1; t <= 4; ++t)
        for (const auto& p : family_k_t_plus_1(t)) ok &= verify_cax(materialize(p), t, true).pass;
    for (int t = 1; t <= 8; ++t) {
        const auto cls = family_isomorphism_classes(t);
        if (t % 2 == 1)
            ok &= cls.pairs.empty() && cls.singletons.size() == cls.profile_count;
        else
            ok &= cls.singletons.size() == 1 && cls.pairs.size() == (cls.profile_count - 1) / 2;
    }
    const auto start = std::chrono::steady_clock::now();
    for (int t = 1; t <= 12; ++t) ok &= k2t_feasibility(t).feasible;
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok &= secs < 300.0;
    std::ostringstream what;
    what << "binary families, classes and k=2t feasibility for t <= 12 (" << secs << " s)";
    line(9, what.str(), ok);
}

void criterion_9_deep() {
    ++g_deep_ran;
    bool ok = true;
    for (int t = 13; t <= 17; ++t) {
        const auto res = k2t_feasibility(t, 4'000'000'000ULL);
        if (!res.feasible && !res.exhausted) {
            skip(9, "k=2t search for t=" + std::to_string(t) + " hit the node budget; reported, not passed");
            return;
        }
        ok &= res.feasible;
    }
    const auto res18 = k2t_feasibility(18, 4'000'000'000ULL);
    if (!res18.feasible && !res18.exhausted) {
        skip(9, "k=2t exhaustion for t=18 hit the node budget; reported, not passed");
        return;
    }
    ok &= !res18.feasible && res18.exhausted;
    line(9, "k=2t feasible for t <= 17 and proved infeasible at t = 18", ok);
}

// --- criterion 10 ------------------------------------------------------------

void criterion_10() {
    bool ok = true;

    // canonical invariance under 1000 random transforms per test array
    std::mt19937 rng(424242);
    for (const Array& a : {fig_cax_6_2_4_2(), fig_cax_42_2_5_6(), fig_cax_42_2_4_6()}) {
        const auto form = canonical_form(a);
        for (int trial = 0; trial < 1000 && ok; ++trial) {
            std::vector<Symbol> sigma(a.v);
            std::iota(sigma.begin(), sigma.end(), Symbol{0});
            std::shuffle(sigma.begin(), sigma.end(), rng);
            std::vector<int> rho(a.n_cols);
            std::iota(rho.begin(), rho.end(), 0);
            std::shuffle(rho.begin(), rho.end(), rng);
            ok &= canonical_form(transform(a, sigma, rho)) == form;
        }
    }

    // enumerate vs naive for v <= 3, all k
    EnumerateOptions opts;
    for (int v = 2; v <= 3 && ok; ++v)
        for (int k = 3; k <= 5 && ok; ++k) {
            const auto fast = build_catalogue(v, k, opts);
            const auto naive = naive_catalogue(v, k);
            ok &= fast.members.size() == naive.members.size();
            for (size_t i = 0; i < fast.members.size() && ok; ++i) ok &= fast.members[i] == naive.members[i];
        }

    // constant-row criterion vs direct subarray check over catalogued classes
    for (int v = 2; v <= 4 && ok; ++v)
        for (int k = 3; k <= 5 && ok; ++k) {
            const auto cat = build_catalogue(v, k, opts);
            for (const auto& m : cat.members) ok &= contains_oa(m) == contains_oa_direct(m);
        }

    // serialization round-trip
    for (const Array& a : {fig_cax_6_2_4_2(), fig_cax_42_2_5_6(), base_array(5)}) {
        std::istringstream in(serialize(a));
        ok &= std::get<Array>(parse_records(in).front()) == a;
    }

    // deterministic catalogues across jobs 1 and 4
    EnumerateOptions j1, j4;
    j1.jobs = 1;
    j4.jobs = 4;
    const auto a1 = build_catalogue(4, 5, j1);
    const auto a4 = build_catalogue(4, 5, j4);
    ok &= a1.members.size() == a4.members.size();
    for (size_t i = 0; i < a1.members.size() && ok; ++i) ok &= a1.members[i] == a4.members[i];

    line(10, "property suites: canonical invariance, naive equivalence, criterion cross-check, round-trips, determinism", ok);
}

}  // namespace

int main(int argc, char** argv) {
    const bool deep = argc > 1 && std::string(argv[1]) == "--deep";

    if (!deep) {
        criterion_1();
        criteria_2_3_default();
        skip(2, "v=5 and v=6 maxima are deep targets; run the deep suite");
        skip(3, "(5,5), (5,6), (6,3), (6,4), (6,5) are deep targets; run the deep suite");
        skip(4, "needs the deep (6,5) catalogue");
        skip(5, "needs the deep (6,4) catalogue");
        criterion_6();
        criterion_7();
        criterion_8_default();
        skip(8, "(5,4) oracle cover is a deep target");
        criterion_9_default();
        skip(9, "t <= 17 and t = 18 stretch targets are deep");
        criterion_10();
        return g_fail == 0 ? 0 : 1;
    }

    criteria_2_3_deep();
    criterion_4_deep();
    criterion_5_deep();
    criterion_8_deep();
    criterion_9_deep();
    if (g_fail != 0) return 1;
    if (g_deep_ran == 0) return 77;  // nothing to validate yet
    return 0;
}
