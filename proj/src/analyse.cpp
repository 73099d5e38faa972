#include "excov/analyse.hpp"

#include <algorithm>
#include <numeric>

#include "excov/derive.hpp"
#include "excov/enumerate.hpp"
#include "excov/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace excov {

namespace {

void require_exact(const Array& c) {
    const auto rep = verify_cax(c, 2, true, 1);
    if (!rep.pass)
        throw std::invalid_argument("array is not an exact strength-2 excess coverage array");
}

bool row_is_constant(const Array& c, int r, Symbol& sym) {
    sym = c.at(r, 0);
    for (int col = 1; col < c.n_cols; ++col)
        if (c.at(r, col) != sym) return false;
    return true;
}

}  // namespace

bool contains_oa(const Array& c) {
    require_exact(c);
    return has_constant_row_per_symbol(c);
}

bool contains_oa_direct(const Array& c) {
    require_exact(c);
    // Remove one constant row per symbol; if any symbol has none, there is no
    // orthogonal array. Otherwise the remaining rows must cover each pair
    // exactly once.
    std::vector<bool> removed_for(c.v, false);
    std::vector<bool> keep(c.n_rows, true);
    for (int r = 0; r < c.n_rows; ++r) {
        Symbol sym;
        if (row_is_constant(c, r, sym) && !removed_for[sym]) {
            removed_for[sym] = true;
            keep[r] = false;
        }
    }
    for (int s = 0; s < c.v; ++s)
        if (!removed_for[s]) return false;
    Array rest = make_array(c.n_rows - c.v, c.n_cols, c.v);
    int out = 0;
    for (int r = 0; r < c.n_rows; ++r) {
        if (!keep[r]) continue;
        for (int col = 0; col < c.n_cols; ++col) rest.at(out, col) = c.at(r, col);
        ++out;
    }
    return verify_oa(rest, 2, 1).pass;
}

ClassificationRecord classify_array(const Array& c, bool with_automorphisms) {
    ClassificationRecord rec;
    rec.constant_row_count = 0;
    bool all_rows_repeat = true;
    for (int r = 0; r < c.n_rows; ++r) {
        Symbol sym;
        if (row_is_constant(c, r, sym)) {
            ++rec.constant_row_count;
            rec.constant_row_symbols.push_back(sym);
        }
        const auto m = row_multiplicities(c, r);
        bool repeat = false;
        for (int cnt : m.counts)
            if (cnt >= 2) { repeat = true; break; }
        all_rows_repeat &= repeat;
    }
    std::sort(rec.constant_row_symbols.begin(), rec.constant_row_symbols.end());
    rec.every_row_has_repeat = all_rows_repeat;
    rec.contains_oa = has_constant_row_per_symbol(c);
    if (with_automorphisms) rec.automorphism_order = automorphisms(c).order;
    return rec;
}

namespace {

CensusResult census_members(const std::vector<Array>& members) {
    CensusResult out;
    std::vector<std::pair<int, bool>> rows(members.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(members.size()); ++i) {
        const auto rec = classify_array(members[i]);
        rows[i] = {rec.constant_row_count, rec.contains_oa};
    }
    for (const auto& [consts, has_oa] : rows) {
        ++(has_oa ? out.oa_count : out.non_oa_count);
        ++out.constant_row_histogram[consts];
    }
    return out;
}

}  // namespace

CensusResult census(const Catalogue& cat) { return census_members(cat.members); }

CensusResult census_file(const std::string& path, int jobs) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#endif
    CensusResult out;
    for_each_catalogue_member(path, [&](const Array& a) {
        const auto rec = classify_array(a);
        ++(rec.contains_oa ? out.oa_count : out.non_oa_count);
        ++out.constant_row_histogram[rec.constant_row_count];
    });
    return out;
}

std::vector<ColumnDeletionReport> column_deletion_analysis(const Array& c) {
    require_exact(c);
    if (c.n_cols < 3) throw std::invalid_argument("column deletion needs at least 3 columns");
    std::vector<ColumnDeletionReport> out;
    for (int drop = 0; drop < c.n_cols; ++drop) {
        Array d = make_array(c.n_rows, c.n_cols - 1, c.v);
        for (int r = 0; r < c.n_rows; ++r) {
            int j = 0;
            for (int col = 0; col < c.n_cols; ++col) {
                if (col == drop) continue;
                d.at(r, j++) = c.at(r, col);
            }
        }
        ColumnDeletionReport rep;
        rep.column = drop;
        rep.contains_oa = has_constant_row_per_symbol(d);
        rep.cls = canonical_form(d);
        out.push_back(std::move(rep));
    }
    return out;
}

LatinExtraction latin_square_extract(const Array& c, int drop1, int drop2) {
    require_exact(c);
    if (drop1 == drop2 || drop1 < 0 || drop2 < 0 || drop1 >= c.n_cols || drop2 >= c.n_cols)
        throw std::invalid_argument("drop columns must be two distinct valid columns");
    if (c.n_cols - 2 != 3)
        throw std::invalid_argument("extraction needs exactly 3 remaining columns");

    Array rem = make_array(c.n_rows, 3, c.v);
    for (int r = 0; r < c.n_rows; ++r) {
        int j = 0;
        for (int col = 0; col < c.n_cols; ++col) {
            if (col == drop1 || col == drop2) continue;
            rem.at(r, j++) = c.at(r, col);
        }
    }
    // One forced constant row per symbol must come out.
    std::vector<bool> removed_for(c.v, false);
    std::vector<bool> keep(rem.n_rows, true);
    for (int r = 0; r < rem.n_rows; ++r) {
        Symbol sym;
        if (row_is_constant(rem, r, sym) && !removed_for[sym]) {
            removed_for[sym] = true;
            keep[r] = false;
        }
    }
    for (int s = 0; s < c.v; ++s)
        if (!removed_for[s])
            throw std::invalid_argument("no constant row for symbol " + std::to_string(s) +
                                        " after dropping columns; not an orthogonal array remainder");

    LatinExtraction ext;
    ext.oa = make_array(rem.n_rows - c.v, 3, c.v);
    int out = 0;
    for (int r = 0; r < rem.n_rows; ++r) {
        if (!keep[r]) continue;
        for (int col = 0; col < 3; ++col) ext.oa.at(out, col) = rem.at(r, col);
        ++out;
    }
    const auto rep = verify_oa(ext.oa, 2, 1);
    if (!rep.pass) {
        std::string what = "remainder is not an orthogonal array";
        if (!rep.witnesses.empty()) {
            const auto& w = rep.witnesses.front();
            const auto& inter = std::get<Interaction>(w.subject);
            what += "; interaction {(" + std::to_string(inter.pairs[0].first) + "," +
                    std::to_string(int(inter.pairs[0].second)) + "),(" + std::to_string(inter.pairs[1].first) +
                    "," + std::to_string(int(inter.pairs[1].second)) + ")} covered " + std::to_string(w.observed) +
                    " times";
        }
        throw std::invalid_argument(what);
    }

    ext.square.n = c.v;
    ext.square.cells.assign(static_cast<size_t>(c.v) * c.v, 0);
    for (int r = 0; r < ext.oa.n_rows; ++r)
        ext.square.cells[static_cast<size_t>(ext.oa.at(r, 0)) * c.v + ext.oa.at(r, 1)] = ext.oa.at(r, 2);
    ext.transversals = transversal_count(ext.square);
    return ext;
}

std::uint64_t transversal_count(const LatinSquare& sq) {
    // DFS over rows, one cell per column, all symbols distinct.
    std::uint64_t count = 0;
    std::uint32_t cols_used = 0, syms_used = 0;
    auto rec = [&](auto&& self, int r) -> void {
        if (r == sq.n) {
            ++count;
            return;
        }
        for (int c = 0; c < sq.n; ++c) {
            if (cols_used >> c & 1) continue;
            const Symbol s = sq.at(r, c);
            if (syms_used >> s & 1) continue;
            cols_used |= 1u << c;
            syms_used |= 1u << s;
            self(self, r + 1);
            cols_used &= ~(1u << c);
            syms_used &= ~(1u << s);
        }
    };
    rec(rec, 0);
    return count;
}

std::vector<Symbol> latin_species_canonical(const LatinSquare& sq) {
    const int n = sq.n;
    // The six conjugates permute the roles (row, column, symbol).
    std::vector<std::vector<Symbol>> conjugates;
    static const int role_perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& rp : role_perms) {
        std::vector<Symbol> cells(static_cast<size_t>(n) * n, 0);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const int triple[3] = {r, c, sq.at(r, c)};
                const int nr = triple[rp[0]], nc = triple[rp[1]], ns = triple[rp[2]];
                cells[static_cast<size_t>(nr) * n + nc] = static_cast<Symbol>(ns);
            }
        conjugates.push_back(std::move(cells));
    }

    std::vector<Symbol> best;
    std::vector<int> rows(n), cols(n);
    std::vector<Symbol> cand(static_cast<size_t>(n) * n);
    std::vector<int> relabel(n);
    for (const auto& cells : conjugates) {
        std::iota(rows.begin(), rows.end(), 0);
        do {
            std::iota(cols.begin(), cols.end(), 0);
            do {
                // symbols relabelled by first occurrence in row-major order
                std::fill(relabel.begin(), relabel.end(), -1);
                int next = 0;
                bool worse = false;
                for (int i = 0; i < n * n && !worse; ++i) {
                    const int r = i / n, c = i % n;
                    const Symbol s = cells[static_cast<size_t>(rows[r]) * n + cols[c]];
                    if (relabel[s] < 0) relabel[s] = next++;
                    cand[i] = static_cast<Symbol>(relabel[s]);
                    if (!best.empty()) {
                        if (cand[i] > best[i]) worse = true;
                        else if (cand[i] < best[i]) {
                            for (int j = i + 1; j < n * n; ++j) {
                                const int rj = j / n, cj = j % n;
                                const Symbol sj = cells[static_cast<size_t>(rows[rj]) * n + cols[cj]];
                                if (relabel[sj] < 0) relabel[sj] = next++;
                                cand[j] = static_cast<Symbol>(relabel[sj]);
                            }
                            best = cand;
                            worse = true;  // done with this candidate
                        }
                    }
                }
                if (best.empty() && !worse) best = cand;
            } while (std::next_permutation(cols.begin(), cols.end()));
        } while (std::next_permutation(rows.begin(), rows.end()));
    }
    return best;
}

ObstructionReport obstruction_report(const Catalogue& cat) {
    ObstructionReport rep;
    if (cat.v != 6 || cat.k != 5) {
        rep.checks.push_back("catalogue parameters are not (k=5, v=6); no conclusion");
        return rep;
    }
    if (!cat.complete) {
        rep.checks.push_back("catalogue is not marked complete; no conclusion");
        return rep;
    }
    rep.checks.push_back("catalogue complete for k=5, v=6");
    if (cat.members.size() != 1) {
        rep.checks.push_back("expected exactly 1 isomorphism class, found " + std::to_string(cat.members.size()) +
                             "; no conclusion");
        return rep;
    }
    rep.checks.push_back("exactly 1 isomorphism class");
    const auto rec = classify_array(cat.members.front());
    if (rec.constant_row_count != 0) {
        rep.checks.push_back("class has " + std::to_string(rec.constant_row_count) +
                             " constant rows; no conclusion");
        return rep;
    }
    rep.checks.push_back("the class has no constant rows");
    if (!rec.every_row_has_repeat) {
        rep.checks.push_back("some row has all multiplicities <= 1; no conclusion");
        return rep;
    }
    rep.checks.push_back("every row contains a repeated symbol");
    rep.concluded = true;
    rep.conclusion =
        "no SCA(5040;7,10) exists: a size-7! strength-7 sequence covering array on 10 symbols would "
        "force a CA_X(42;2,5,6) with a constant row, and the unique class has none";
    return rep;
}

std::uint64_t scan_bound(int t, int v, int a, std::uint64_t canx_lower) {
    if (!(0 < a && a < t && t <= v)) throw std::invalid_argument("scan_bound requires 0 < a < t <= v");
    if (a > 20) throw std::invalid_argument("a too large for 64-bit arithmetic");
    return factorial_u64(a) * canx_lower;
}

}  // namespace excov
