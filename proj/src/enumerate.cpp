#include "excov/enumerate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "excov/canon.hpp"
#include "excov/verify.hpp"
#include "json.hpp"

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

void set_threads(int jobs) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif
}

// Placement search: choose v+1 rows, tracking per-column per-symbol quotas.
class PlacementFinder {
  public:
    explicit PlacementFinder(const Array& c) : c_(c), N_(c.n_rows), k_(c.n_cols), v_(c.v) {
        quota_.resize(static_cast<size_t>(k_) * v_);
    }

    void find(Symbol nu, std::vector<std::uint64_t>& out) {
        out.clear();
        for (int col = 0; col < k_; ++col)
            for (int s = 0; s < v_; ++s) quota_[static_cast<size_t>(col) * v_ + s] = (s == nu) ? 2 : 1;
        mask_ = 0;
        dfs(0, v_ + 1, out);
    }

  private:
    void dfs(int start, int need, std::vector<std::uint64_t>& out) {
        if (need == 0) {
            out.push_back(mask_);
            return;
        }
        for (int r = start; r <= N_ - need; ++r) {
            const Symbol* row = c_.row(r).data();
            bool fits = true;
            for (int col = 0; col < k_; ++col)
                if (quota_[static_cast<size_t>(col) * v_ + row[col]] == 0) { fits = false; break; }
            if (!fits) continue;
            for (int col = 0; col < k_; ++col) --quota_[static_cast<size_t>(col) * v_ + row[col]];
            mask_ |= std::uint64_t{1} << r;
            dfs(r + 1, need - 1, out);
            mask_ &= ~(std::uint64_t{1} << r);
            for (int col = 0; col < k_; ++col) ++quota_[static_cast<size_t>(col) * v_ + row[col]];
        }
    }

    const Array& c_;
    int N_, k_, v_;
    std::vector<std::int8_t> quota_;
    std::uint64_t mask_ = 0;
};

// Exact cover: one placement per symbol, pairwise disjoint. Sizes sum to the
// row count, so disjointness already forces a partition.
void cover_dfs(const std::vector<std::vector<std::uint64_t>>& pls, int s, std::uint64_t used,
               std::vector<std::uint64_t>& chosen, const std::function<void(const std::vector<std::uint64_t>&)>& emit) {
    const int v = static_cast<int>(pls.size());
    if (s == v) {
        emit(chosen);
        return;
    }
    for (std::uint64_t m : pls[s]) {
        if (m & used) continue;
        chosen[s] = m;
        cover_dfs(pls, s + 1, used | m, chosen, emit);
    }
}

void for_each_cover(const Array& c, const std::function<void(const std::vector<Symbol>&)>& emit) {
    PlacementFinder finder(c);
    std::vector<std::vector<std::uint64_t>> pls(c.v);
    for (int s = 0; s < c.v; ++s) {
        finder.find(static_cast<Symbol>(s), pls[s]);
        if (pls[s].empty()) return;
    }
    std::vector<std::uint64_t> chosen(c.v);
    std::vector<Symbol> newcol(c.n_rows);
    cover_dfs(pls, 0, 0, chosen, [&](const std::vector<std::uint64_t>& sol) {
        for (int s = 0; s < c.v; ++s) {
            std::uint64_t m = sol[s];
            while (m) {
                const int r = std::countr_zero(m);
                m &= m - 1;
                newcol[r] = static_cast<Symbol>(s);
            }
        }
        emit(newcol);
    });
}

Array with_new_column(const Array& parent, const Symbol* newcol) {
    Array child = make_array(parent.n_rows, parent.n_cols + 1, parent.v);
    for (int r = 0; r < parent.n_rows; ++r) {
        Symbol* dst = &child.entries[static_cast<size_t>(r) * child.n_cols];
        const Symbol* src = parent.row(r).data();
        std::copy(src, src + parent.n_cols, dst);
        dst[parent.n_cols] = newcol[r];
    }
    return child;
}

}  // namespace

Array base_array(int v) {
    if (v < 2) throw std::invalid_argument("base array requires v >= 2");
    if (v * (v + 1) > 64) throw std::invalid_argument("row masks require v(v+1) <= 64");
    Array a = make_array(v * (v + 1), 2, v);
    int r = 0;
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) {
            a.at(r, 0) = static_cast<Symbol>(i);
            a.at(r, 1) = static_cast<Symbol>(j);
            ++r;
            if (i == j) {
                a.at(r, 0) = static_cast<Symbol>(i);
                a.at(r, 1) = static_cast<Symbol>(j);
                ++r;
            }
        }
    a.sort_rows();
    return a;
}

std::vector<Placement> placements(const Array& c, Symbol nu) {
    if (nu >= c.v) throw std::invalid_argument("symbol out of range");
    require_exact(c);
    PlacementFinder finder(c);
    std::vector<std::uint64_t> masks;
    finder.find(nu, masks);
    std::vector<Placement> out;
    out.reserve(masks.size());
    for (std::uint64_t m : masks) out.push_back({nu, m});
    return out;
}

std::vector<Array> extend(const Array& c) {
    require_exact(c);
    std::vector<Array> out;
    for_each_cover(c, [&](const std::vector<Symbol>& newcol) { out.push_back(with_new_column(c, newcol.data())); });
    return out;
}

std::vector<Array> extend_two_columns(const Array& c, bool forbid_zero_constant_row) {
    require_exact(c);
    const int v = c.v;
    PlacementFinder finder(c);
    std::vector<std::vector<std::uint64_t>> pls(v);
    for (int s = 0; s < v; ++s) finder.find(static_cast<Symbol>(s), pls[s]);

    std::uint64_t zero_rows = 0;
    for (int r = 0; r < c.n_rows; ++r) {
        bool all0 = true;
        for (int col = 0; col < c.n_cols; ++col)
            if (c.at(r, col) != 0) { all0 = false; break; }
        if (all0) zero_rows |= std::uint64_t{1} << r;
    }

    // Candidate placement pairs per symbol: same-symbol pair meets in 2 rows.
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> pairs(v);
    for (int s = 0; s < v; ++s) {
        for (std::uint64_t a : pls[s])
            for (std::uint64_t b : pls[s]) {
                if (std::popcount(a & b) != 2) continue;
                if (forbid_zero_constant_row && s == 0) {
                    // each all-zero parent row must be avoided by one of the two
                    if ((a & b & zero_rows) != 0) continue;
                }
                pairs[s].push_back({a, b});
            }
    }

    std::vector<Array> out;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> chosen(v);
    auto rec = [&](auto&& self, int s, std::uint64_t used1, std::uint64_t used2) -> void {
        if (s == v) {
            std::vector<Symbol> colA(c.n_rows), colB(c.n_rows);
            for (int q = 0; q < v; ++q) {
                std::uint64_t m = chosen[q].first;
                while (m) { colA[std::countr_zero(m)] = static_cast<Symbol>(q); m &= m - 1; }
                m = chosen[q].second;
                while (m) { colB[std::countr_zero(m)] = static_cast<Symbol>(q); m &= m - 1; }
            }
            Array once = with_new_column(c, colA.data());
            out.push_back(with_new_column(once, colB.data()));
            return;
        }
        for (const auto& [a, b] : pairs[s]) {
            if ((a & used1) || (b & used2)) continue;
            bool ok = true;
            for (int q = 0; q < s; ++q) {
                if (std::popcount(a & chosen[q].second) != 1 || std::popcount(b & chosen[q].first) != 1) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen[s] = {a, b};
            self(self, s + 1, used1 | a, used2 | b);
        }
    };
    rec(rec, 0, 0, 0);
    return out;
}

bool has_constant_row_per_symbol(const Array& c) {
    std::vector<bool> seen(c.v, false);
    for (int r = 0; r < c.n_rows; ++r) {
        const Symbol s0 = c.at(r, 0);
        bool constant = true;
        for (int col = 1; col < c.n_cols; ++col)
            if (c.at(r, col) != s0) { constant = false; break; }
        if (constant) seen[s0] = true;
    }
    for (int s = 0; s < c.v; ++s)
        if (!seen[s]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Root cover enumeration: one representative per orbit of third columns of
// the base array under (symbol permutation x column swap), with duplicate
// row instances normalized. The base is fully symmetric, so this quotient is
// what keeps the first extension depth tractable at v = 6.

namespace {

class RootCoverEnumerator {
  public:
    explicit RootCoverEnumerator(int v) : v_(v), base_(base_array(v)), N_(base_.n_rows) {
        rows_.resize(N_);
        for (int r = 0; r < N_; ++r) rows_[r] = {base_.at(r, 0), base_.at(r, 1)};
        pair_second_.assign(N_, 0);
        pair_first_.assign(N_, 0);
        for (int r = 1; r < N_; ++r)
            if (rows_[r] == rows_[r - 1]) {
                pair_second_[r] = 1;
                pair_first_[r - 1] = 1;
            }
        std::vector<int> first_idx(v_ * v_, -1);
        for (int r = N_ - 1; r >= 0; --r) first_idx[rows_[r][0] * v_ + rows_[r][1]] = r;

        // Group elements: all symbol permutations x optional column swap,
        // identity excluded.
        std::vector<int> sigma(v_);
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
            for (int flip = 0; flip < 2; ++flip) {
                bool identity = flip == 0;
                if (identity)
                    for (int s = 0; s < v_; ++s)
                        if (sigma[s] != s) { identity = false; break; }
                if (identity) continue;
                const int h = n_h_++;
                sig_.resize(static_cast<size_t>(n_h_) * v_);
                pi_inv_.resize(static_cast<size_t>(n_h_) * N_);
                for (int s = 0; s < v_; ++s) sig_[static_cast<size_t>(h) * v_ + s] = static_cast<Symbol>(sigma[s]);
                std::vector<int> pi(N_);
                std::vector<int> taken(v_ * v_, 0);
                for (int q = 0; q < N_; ++q) {
                    int a = sigma[rows_[q][0]], b = sigma[rows_[q][1]];
                    if (flip) std::swap(a, b);
                    const int target = first_idx[a * v_ + b] + taken[a * v_ + b];
                    ++taken[a * v_ + b];
                    pi[q] = target;
                }
                for (int q = 0; q < N_; ++q) pi_inv_[static_cast<size_t>(h) * N_ + pi[q]] = q;
            }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }

    const Array& base() const { return base_; }

    void run(const std::function<void(const std::vector<Symbol>&)>& emit) {
        n_.assign(N_, 0);
        quota_.assign(static_cast<size_t>(v_) * 2 * v_, 0);
        for (int s = 0; s < v_; ++s)
            for (int col = 0; col < 2; ++col)
                for (int b = 0; b < v_; ++b) quota_at(s, col, b) = (b == s) ? 2 : 1;
        cmp_.assign(n_h_, 0);
        wait_.assign(N_ + 1, {});
        for (int h = 0; h < n_h_; ++h) wait_[0].push_back(h);
        trail_.clear();
        dfs(0, emit);
    }

  private:
    std::int8_t& quota_at(int s, int col, int b) {
        return quota_[(static_cast<size_t>(s) * 2 + col) * v_ + b];
    }

    struct TrailEntry {
        int h;
        int old_cmp;
        int parked_at;  // -1 when the element died
    };

    // Advance comparisons for everything waiting on row r. Returns false when
    // some group element maps the current prefix to something smaller.
    bool advance_waiters(int r) {
        auto snapshot = std::move(wait_[r]);
        wait_[r].clear();
        for (size_t i = 0; i < snapshot.size(); ++i) {
            const int h = snapshot[i];
            const int old_cmp = cmp_[h];
            int cp = old_cmp;
            int verdict = 0;  // 0 keep, -1 prune, +1 die
            int park = -1;
            const Symbol* sg = &sig_[static_cast<size_t>(h) * v_];
            const int* pinv = &pi_inv_[static_cast<size_t>(h) * N_];
            while (cp < N_) {
                if (pair_first_[cp]) {
                    const int q0 = pinv[cp], q1 = pinv[cp + 1];
                    const int need = std::max({cp + 1, q0, q1});
                    if (need > r) { park = need; break; }
                    Symbol i0 = sg[n_[q0]], i1 = sg[n_[q1]];
                    if (i0 > i1) std::swap(i0, i1);
                    if (i0 != n_[cp]) { verdict = i0 < n_[cp] ? -1 : 1; break; }
                    if (i1 != n_[cp + 1]) { verdict = i1 < n_[cp + 1] ? -1 : 1; break; }
                    cp += 2;
                } else {
                    const int q = pinv[cp];
                    if (q > r) { park = q; break; }
                    const Symbol iv = sg[n_[q]];
                    if (iv != n_[cp]) { verdict = iv < n_[cp] ? -1 : 1; break; }
                    ++cp;
                }
            }
            if (verdict == -1) {
                // Smaller image exists: abandon this prefix. Unprocessed
                // waiters go straight back; processed ones restore via trail.
                wait_[r].push_back(h);
                wait_[r].insert(wait_[r].end(), snapshot.begin() + i + 1, snapshot.end());
                return false;
            }
            cmp_[h] = cp;
            if (verdict == 1 || cp >= N_) {
                trail_.push_back({h, old_cmp, -1});  // dead, or fully compared equal
            } else {
                wait_[park].push_back(h);
                trail_.push_back({h, old_cmp, park});
            }
        }
        return true;
    }

    void undo_to(size_t mark, int r) {
        while (trail_.size() > mark) {
            const TrailEntry e = trail_.back();
            trail_.pop_back();
            if (e.parked_at >= 0) wait_[e.parked_at].pop_back();  // sits at the back of its new list
            cmp_[e.h] = e.old_cmp;
            wait_[r].push_back(e.h);
        }
    }

    void dfs(int r, const std::function<void(const std::vector<Symbol>&)>& emit) {
        if (r == N_) {
            emit(n_);
            return;
        }
        const Symbol lo = pair_second_[r] ? n_[r - 1] : Symbol{0};
        const std::array<Symbol, 2> row = rows_[r];
        for (int s = lo; s < v_; ++s) {
            auto& q0 = quota_at(s, 0, row[0]);
            auto& q1 = quota_at(s, 1, row[1]);
            if (q0 == 0 || q1 == 0) continue;
            --q0;
            --q1;
            n_[r] = static_cast<Symbol>(s);
            const size_t mark = trail_.size();
            if (advance_waiters(r)) dfs(r + 1, emit);
            undo_to(mark, r);
            ++q0;
            ++q1;
        }
    }

    int v_;
    Array base_;
    int N_;
    std::vector<std::array<Symbol, 2>> rows_;
    std::vector<std::uint8_t> pair_second_, pair_first_;
    int n_h_ = 0;
    std::vector<Symbol> sig_;
    std::vector<int> pi_inv_;

    std::vector<Symbol> n_;
    std::vector<std::int8_t> quota_;
    std::vector<int> cmp_;
    std::vector<std::vector<int>> wait_;
    std::vector<TrailEntry> trail_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Catalogue pipeline

namespace {

// Sort + dedup a flat buffer of fixed-width records in place; returns count.
std::uint64_t sort_unique_records(std::vector<std::uint8_t>& data, size_t rec) {
    const size_t n = data.size() / rec;
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const std::uint8_t* p = data.data();
    std::sort(idx.begin(), idx.end(), [p, rec](std::uint32_t a, std::uint32_t b) {
        return std::memcmp(p + static_cast<size_t>(a) * rec, p + static_cast<size_t>(b) * rec, rec) < 0;
    });
    std::vector<std::uint8_t> out;
    out.reserve(data.size());
    const std::uint8_t* prev = nullptr;
    for (std::uint32_t i : idx) {
        const std::uint8_t* cur = p + static_cast<size_t>(i) * rec;
        if (prev && std::memcmp(prev, cur, rec) == 0) continue;
        out.insert(out.end(), cur, cur + rec);
        prev = out.data() + out.size() - rec;
    }
    data = std::move(out);
    return data.size() / rec;
}

struct ChildKeySink {
    size_t rec = 0;
    std::vector<std::uint8_t> buffer;
    void add(const std::vector<std::uint8_t>& key) { buffer.insert(buffer.end(), key.begin(), key.end()); }
};

void emit_children_keys(const Array& parent, ChildKeySink& sink, bool oa_free_filter) {
    for_each_cover(parent, [&](const std::vector<Symbol>& newcol) {
        Array child = with_new_column(parent, newcol.data());
        if (oa_free_filter && has_constant_row_per_symbol(child)) return;
        sink.add(canonical_form(child).packed());
    });
}

// Children of the 2-column base, via the symmetry-reduced root enumeration.
std::vector<std::uint8_t> root_children_keys(int v, int jobs,
                                             const std::function<void(const std::string&)>& progress) {
    set_threads(jobs);
    RootCoverEnumerator root(v);
    const Array& base = root.base();
    const size_t rec = packed_size(base.n_rows, 3, v);

    std::vector<Symbol> newcols;  // batched, n_rows entries per cover
    std::vector<std::uint8_t> keys;
    std::uint64_t covers = 0;
    auto flush = [&]() {
        const size_t n = newcols.size() / base.n_rows;
        if (n == 0) return;
        std::vector<std::uint8_t> batch(n * rec);
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            Array child = with_new_column(base, &newcols[static_cast<size_t>(i) * base.n_rows]);
            auto key = canonical_form(child).packed();
            std::copy(key.begin(), key.end(), batch.begin() + static_cast<size_t>(i) * rec);
        }
        keys.insert(keys.end(), batch.begin(), batch.end());
        newcols.clear();
    };

    root.run([&](const std::vector<Symbol>& n) {
        newcols.insert(newcols.end(), n.begin(), n.end());
        ++covers;
        if (newcols.size() >= static_cast<size_t>(1 << 16) * static_cast<size_t>(base.n_rows)) {
            flush();
            if (progress) progress("root covers so far: " + std::to_string(covers));
        }
    });
    flush();
    if (progress) progress("root covers total: " + std::to_string(covers));
    sort_unique_records(keys, rec);
    return keys;
}

Catalogue keys_to_catalogue(const std::vector<std::uint8_t>& keys, int n_rows, int k, int v) {
    const size_t rec = packed_size(n_rows, k, v);
    Catalogue cat;
    cat.v = v;
    cat.k = k;
    for (size_t off = 0; off + rec <= keys.size(); off += rec)
        cat.members.push_back(unpack_entries(keys.data() + off, n_rows, k, v));
    return cat;
}

Catalogue extend_catalogue_impl(const Catalogue& in, const EnumerateOptions& opts, bool oa_free_filter) {
    set_threads(opts.jobs);
    Catalogue out;
    out.v = in.v;
    out.k = in.k + 1;
    out.oa_free = in.oa_free;
    out.complete = in.complete;
    if (in.members.empty()) return out;
    const int N = in.members.front().n_rows;
    const size_t rec = packed_size(N, in.k + 1, in.v);

    std::vector<std::vector<std::uint8_t>> locals;
#pragma omp parallel
    {
#pragma omp single
        locals.resize(
#ifdef _OPENMP
            omp_get_num_threads()
#else
            1
#endif
        );
#pragma omp for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(in.members.size()); ++i) {
            ChildKeySink sink;
            sink.rec = rec;
            emit_children_keys(in.members[i], sink, oa_free_filter);
#ifdef _OPENMP
            auto& local = locals[omp_get_thread_num()];
#else
            auto& local = locals[0];
#endif
            local.insert(local.end(), sink.buffer.begin(), sink.buffer.end());
        }
    }
    std::vector<std::uint8_t> keys;
    for (auto& l : locals) keys.insert(keys.end(), l.begin(), l.end());
    sort_unique_records(keys, rec);
    out = keys_to_catalogue(keys, N, in.k + 1, in.v);
    out.oa_free = in.oa_free;
    out.complete = in.complete;
    return out;
}

}  // namespace

Catalogue extend_catalogue(const Catalogue& in, const EnumerateOptions& opts) {
    return extend_catalogue_impl(in, opts, false);
}

Catalogue build_catalogue(int v, int k, const EnumerateOptions& opts) {
    if (v < 2 || v > 6) throw std::invalid_argument("catalogue enumeration supports 2 <= v <= 6");
    if (k < 2) throw std::invalid_argument("catalogue requires k >= 2");
    set_threads(opts.jobs);

    Catalogue cat;
    cat.v = v;
    cat.k = 2;
    cat.members.push_back(base_array(v));
    if (k == 2) {
        if (opts.oa_free) cat.members.clear();  // the base contains the trivial OA
        cat.oa_free = opts.oa_free;
        return cat;
    }

    if (!opts.oa_free) {
        // depth 2 -> 3 via the symmetry-reduced root step
        auto keys = root_children_keys(v, opts.jobs, opts.progress);
        cat = keys_to_catalogue(keys, v * (v + 1), 3, v);
        for (int kk = 3; kk < k; ++kk) {
            if (opts.progress)
                opts.progress("depth " + std::to_string(kk) + ": " + std::to_string(cat.members.size()) + " classes");
            cat = extend_catalogue_impl(cat, opts, false);
        }
        return cat;
    }

    // oa-free mode: classes without an orthogonal array only
    if (k == 3) {
        auto keys = root_children_keys(v, opts.jobs, opts.progress);
        Catalogue full = keys_to_catalogue(keys, v * (v + 1), 3, v);
        Catalogue out;
        out.v = v;
        out.k = 3;
        out.oa_free = true;
        for (auto& m : full.members)
            if (!has_constant_row_per_symbol(m)) out.members.push_back(std::move(m));
        return out;
    }

    // Seed k=4 by simultaneous two-column extension of the base with the
    // anti-constant-row rule, then close upward one column at a time.
    const Array base = base_array(v);
    const size_t rec = packed_size(base.n_rows, 4, v);
    std::vector<std::uint8_t> keys;
    for (const Array& child : extend_two_columns(base, true)) {
        if (has_constant_row_per_symbol(child)) continue;
        auto key = canonical_form(child).packed();
        keys.insert(keys.end(), key.begin(), key.end());
    }
    sort_unique_records(keys, rec);
    Catalogue cur = keys_to_catalogue(keys, base.n_rows, 4, v);
    cur.oa_free = true;
    for (int kk = 4; kk < k; ++kk) {
        if (opts.progress)
            opts.progress("oa-free depth " + std::to_string(kk) + ": " + std::to_string(cur.members.size()) + " classes");
        cur = extend_catalogue_impl(cur, opts, true);
        cur.oa_free = true;
    }
    return cur;
}

// ---------------------------------------------------------------------------
// File-based extension with spill + checkpointing

std::uint64_t extend_catalogue_files(const std::string& in_path, const std::string& out_path,
                                     const EnumerateOptions& opts) {
    set_threads(opts.jobs);
    const CatalogueInfo info = catalogue_info(in_path);
    const int v = info.v;
    const int N = v * (v + 1);
    const size_t rec = packed_size(N, info.k + 1, v);
    const std::string work = opts.work_dir.empty() ? out_path + ".work" : opts.work_dir;
    std::filesystem::create_directories(work);
    const std::string ckpt_path = out_path + ".ckpt";

    std::uint64_t parents_done = 0;
    size_t adopt_chunks = 0;
    if (std::filesystem::exists(ckpt_path)) {
        std::ifstream in(ckpt_path);
        nlohmann::json j;
        in >> j;
        parents_done = j.value("parents_done", std::uint64_t{0});
        adopt_chunks = j.value("chunks", size_t{0});
        if (opts.progress)
            opts.progress("resuming after " + std::to_string(parents_done) + " parents, " +
                          std::to_string(adopt_chunks) + " chunks");
    }

    ExternalDeduper dedup(rec, work, opts.mem_budget, adopt_chunks);

    auto write_ckpt = [&](std::uint64_t done) {
        dedup.flush();
        nlohmann::json j;
        j["parents_done"] = done;
        j["chunks"] = dedup.chunk_count();
        j["appended"] = dedup.appended();
        std::ofstream out(ckpt_path + ".tmp");
        out << j.dump() << "\n";
        out.close();
        std::filesystem::rename(ckpt_path + ".tmp", ckpt_path);
    };

    constexpr std::uint64_t kBatch = 2048;
    constexpr std::uint64_t kCheckpointEvery = 1 << 18;
    std::vector<Array> batch;
    batch.reserve(kBatch);
    std::uint64_t index = 0, processed = parents_done, last_ckpt = parents_done;

    auto process_batch = [&]() {
        if (batch.empty()) return;
        std::vector<ChildKeySink> sinks(batch.size());
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(batch.size()); ++i) {
            sinks[i].rec = rec;
            emit_children_keys(batch[i], sinks[i], false);
        }
        for (auto& s : sinks)
            for (size_t off = 0; off + rec <= s.buffer.size(); off += rec) dedup.append(s.buffer.data() + off);
        processed += batch.size();
        batch.clear();
        if (processed - last_ckpt >= kCheckpointEvery) {
            write_ckpt(processed);
            last_ckpt = processed;
            if (opts.progress)
                opts.progress("parents " + std::to_string(processed) + "/" + std::to_string(info.count) +
                              ", children so far " + std::to_string(dedup.appended()));
        }
    };

    for_each_catalogue_member(in_path, [&](const Array& a) {
        if (index++ < parents_done) return;
        batch.push_back(a);
        if (batch.size() == kBatch) process_batch();
    });
    process_batch();
    write_ckpt(processed);

    // Merge to the output compact catalogue.
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    std::string header = "caxcat " + std::to_string(N) + " " + std::to_string(info.k + 1) + " " +
                         std::to_string(v) + " ";
    // Header written after counting: buffer records to a temp file first.
    const std::string body = out_path + ".body";
    {
        std::ofstream bodyf(body, std::ios::binary);
        std::uint64_t count = dedup.finish([&](const std::uint8_t* r) {
            bodyf.write(reinterpret_cast<const char*>(r), static_cast<std::streamsize>(rec));
        });
        bodyf.close();
        out << header << count << "\n";
        std::ifstream bf(body, std::ios::binary);
        out << bf.rdbuf();
        out.close();
        std::filesystem::remove(body);

        nlohmann::json j;
        j["v"] = v;
        j["k"] = info.k + 1;
        j["oa_free"] = info.oa_free;
        j["complete"] = info.complete;
        j["count"] = count;
        std::ofstream mf(out_path + ".meta");
        mf << j.dump(2) << "\n";
        std::filesystem::remove(ckpt_path);
        std::filesystem::remove_all(work);
        return count;
    }
}

// ---------------------------------------------------------------------------
// Reference search: no isomorph rejection anywhere, dedup at the end.

Catalogue naive_catalogue(int v, int k) {
    if (v > 3) throw std::invalid_argument("naive reference search is for v <= 3");
    std::vector<Array> frontier{base_array(v)};
    for (int kk = 2; kk < k; ++kk) {
        std::vector<Array> next;
        for (const Array& a : frontier)
            for_each_cover(a, [&](const std::vector<Symbol>& newcol) { next.push_back(with_new_column(a, newcol.data())); });
        frontier = std::move(next);
    }
    const size_t rec = packed_size(v * (v + 1), k, v);
    std::vector<std::uint8_t> keys;
    for (const Array& a : frontier) {
        auto key = canonical_form(a).packed();
        keys.insert(keys.end(), key.begin(), key.end());
    }
    sort_unique_records(keys, rec);
    Catalogue cat = keys_to_catalogue(keys, v * (v + 1), k, v);
    return cat;
}

// ---------------------------------------------------------------------------
// Exact-cover search for a PSCA(v, t, 1) of size t!.

namespace {

struct SequenceIndexer {
    int v, t;
    std::uint64_t count = 1;
    SequenceIndexer(int v_, int t_) : v(v_), t(t_) {
        for (int i = 0; i < t; ++i) count *= static_cast<std::uint64_t>(v - i);
    }
    // rank of a distinct-symbol tuple in lexicographic order
    std::uint64_t rank(const Symbol* s) const {
        std::uint64_t idx = 0;
        for (int i = 0; i < t; ++i) {
            int r = s[i];
            for (int j = 0; j < i; ++j)
                if (s[j] < s[i]) --r;
            idx = idx * static_cast<std::uint64_t>(v - i) + static_cast<std::uint64_t>(r);
        }
        return idx;
    }
};

}  // namespace

PscaSearchResult find_psca(int v, int t, std::uint64_t node_limit) {
    if (t < 2 || t > v || v > 8) throw std::invalid_argument("find_psca supports 2 <= t <= v <= 8");
    PscaSearchResult result;

    // All permutations of [v], each with the bitset of sequences it covers.
    std::vector<Permutation> perms;
    {
        std::vector<Symbol> img(v);
        std::iota(img.begin(), img.end(), Symbol{0});
        do perms.push_back({img});
        while (std::next_permutation(img.begin(), img.end()));
    }
    const SequenceIndexer seq(v, t);
    const size_t n_items = seq.count;
    const size_t item_words = (n_items + 63) / 64;
    const size_t n_perms = perms.size();
    const size_t perm_words = (n_perms + 63) / 64;

    std::vector<std::uint64_t> covers(n_perms * item_words, 0);
    {
        std::vector<int> comb(t);
        for (size_t p = 0; p < n_perms; ++p) {
            const auto& img = perms[p].image;
            // every increasing index tuple reads off one covered sequence
            std::iota(comb.begin(), comb.end(), 0);
            while (true) {
                Symbol s[8];
                for (int i = 0; i < t; ++i) s[i] = img[comb[i]];
                const std::uint64_t item = seq.rank(s);
                covers[p * item_words + item / 64] |= std::uint64_t{1} << (item % 64);
                int i = t - 1;
                while (i >= 0 && comb[i] == v - t + i) --i;
                if (i < 0) break;
                ++comb[i];
                for (int j = i + 1; j < t; ++j) comb[j] = comb[j - 1] + 1;
            }
        }
    }
    // item -> permutations covering it, and per-permutation conflict masks
    std::vector<std::uint64_t> item_cands(n_items * perm_words, 0);
    for (size_t p = 0; p < n_perms; ++p)
        for (size_t it = 0; it < n_items; ++it)
            if (covers[p * item_words + it / 64] >> (it % 64) & 1)
                item_cands[it * perm_words + p / 64] |= std::uint64_t{1} << (p % 64);
    std::vector<std::uint64_t> conflict(n_perms * perm_words, 0);
    for (size_t p = 0; p < n_perms; ++p) {
        for (size_t it = 0; it < n_items; ++it)
            if (covers[p * item_words + it / 64] >> (it % 64) & 1)
                for (size_t w = 0; w < perm_words; ++w)
                    conflict[p * perm_words + w] |= item_cands[it * perm_words + w];
    }

    std::vector<std::uint64_t> covered(item_words, 0);
    std::vector<std::uint64_t> alive(perm_words, ~std::uint64_t{0});
    if (n_perms % 64) alive[perm_words - 1] = (std::uint64_t{1} << (n_perms % 64)) - 1;

    std::vector<int> chosen;
    std::vector<std::vector<std::uint64_t>> alive_stack;
    std::uint64_t nodes = 0;
    bool aborted = false;

    auto rec = [&](auto&& self) -> bool {
        // pick the uncovered item with fewest alive candidates
        int best_item = -1;
        int best_count = INT32_MAX;
        for (size_t it = 0; it < n_items; ++it) {
            if (covered[it / 64] >> (it % 64) & 1) continue;
            int cnt = 0;
            for (size_t w = 0; w < perm_words; ++w)
                cnt += std::popcount(item_cands[it * perm_words + w] & alive[w]);
            if (cnt < best_count) {
                best_count = cnt;
                best_item = static_cast<int>(it);
                if (cnt == 0) return false;
            }
        }
        if (best_item < 0) return true;  // everything covered

        for (size_t w = 0; w < perm_words; ++w) {
            std::uint64_t cands = item_cands[static_cast<size_t>(best_item) * perm_words + w] & alive[w];
            while (cands) {
                const size_t p = w * 64 + static_cast<size_t>(std::countr_zero(cands));
                cands &= cands - 1;
                ++nodes;
                if (node_limit && nodes > node_limit) { aborted = true; return false; }
                chosen.push_back(static_cast<int>(p));
                alive_stack.push_back(alive);
                for (size_t u = 0; u < item_words; ++u) covered[u] |= covers[p * item_words + u];
                for (size_t u = 0; u < perm_words; ++u) alive[u] &= ~conflict[p * perm_words + u];
                if (self(self)) return true;
                for (size_t u = 0; u < item_words; ++u) covered[u] &= ~covers[p * item_words + u];
                alive = alive_stack.back();
                alive_stack.pop_back();
                chosen.pop_back();
                if (aborted) return false;
            }
        }
        return false;
    };

    const bool found = rec(rec);
    result.nodes = nodes;
    if (aborted) {
        result.status = PscaSearchResult::Status::Aborted;
        return result;
    }
    if (!found) {
        result.status = PscaSearchResult::Status::Exhausted;
        return result;
    }
    result.status = PscaSearchResult::Status::Found;
    result.sca.v = v;
    result.sca.t = t;
    for (int p : chosen) result.sca.perms.push_back(perms[p]);
    std::sort(result.sca.perms.begin(), result.sca.perms.end(),
              [](const Permutation& a, const Permutation& b) { return a.image < b.image; });
    return result;
}

}  // namespace excov
