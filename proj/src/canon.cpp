#include "excov/canon.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "excov/io.hpp"

namespace excov {

namespace {

// Rows are packed into 64-bit keys, one byte per symbol, first column in the
// most significant byte, so integer order equals lexicographic row order.
std::uint64_t encode_row(const Symbol* row, int k) {
    std::uint64_t key = 0;
    for (int j = 0; j < k; ++j) key = (key << 8) | row[j];
    return key << (8 * (8 - k));
}

struct CanonSearcher {
    const Array& a;
    int N, k, v;
    std::vector<Symbol> syms;         // rows gathered in the current column order
    std::vector<std::uint64_t> best;  // sorted row keys of the best candidate
    std::uint64_t best_version = 0;
    std::vector<std::uint64_t> emitted;
    std::vector<int> remaining;

    std::int8_t sigma[32];
    std::uint32_t used = 0;

    struct Candidate {
        int rem_idx;
        std::vector<std::pair<Symbol, Symbol>> ext;  // symbol -> value commitments
    };

    explicit CanonSearcher(const Array& arr) : a(arr), N(arr.n_rows), k(arr.n_cols), v(arr.v) {
        syms.resize(static_cast<size_t>(N) * k);
        emitted.resize(N);
        remaining.resize(N);
    }

    // Minimal key achievable for row r over extensions of the current sigma,
    // together with the assignments that achieve it.
    std::uint64_t optimistic_key(int r, std::vector<std::pair<Symbol, Symbol>>& ext, bool& has_undef) {
        ext.clear();
        std::int8_t local[32];
        std::copy(sigma, sigma + v, local);
        std::uint32_t local_used = used;
        std::uint64_t key = 0;
        const Symbol* row = &syms[static_cast<size_t>(r) * k];
        for (int j = 0; j < k; ++j) {
            const Symbol s = row[j];
            if (local[s] < 0) {
                const int val = std::countr_one(local_used);  // smallest unused value
                local[s] = static_cast<std::int8_t>(val);
                local_used |= (1u << val);
                ext.push_back({s, static_cast<Symbol>(val)});
                has_undef = true;
            }
            key = (key << 8) | static_cast<std::uint8_t>(local[s]);
        }
        return key << (8 * (8 - k));
    }

    void run_for_order(const std::vector<int>& rho) {
        for (int r = 0; r < N; ++r)
            for (int j = 0; j < k; ++j) syms[static_cast<size_t>(r) * k + j] = a.at(r, rho[j]);
        std::fill(sigma, sigma + v, std::int8_t{-1});
        used = 0;
        std::iota(remaining.begin(), remaining.end(), 0);
        dfs(0, N, false);
    }

    void dfs(int pos, int rem_count, bool less) {
        if (rem_count == 0) {
            if (less) {
                best = emitted;
                ++best_version;
            }
            return;
        }
        std::uint64_t min_key = UINT64_MAX;
        bool any_undef = false;
        static thread_local std::vector<std::pair<Symbol, Symbol>> scratch_ext;
        static thread_local std::vector<Candidate> cands;
        cands.clear();
        for (int i = 0; i < rem_count; ++i) {
            bool undef = false;
            const std::uint64_t key = optimistic_key(remaining[i], scratch_ext, undef);
            any_undef |= undef;
            if (key < min_key) {
                min_key = key;
                cands.clear();
            }
            if (key == min_key) {
                bool dup = false;
                for (const auto& c : cands)
                    if (c.ext == scratch_ext) { dup = true; break; }
                if (!dup) cands.push_back({i, scratch_ext});
            }
        }

        if (!any_undef) {
            // Symbols in play are all mapped: the tail is forced.
            finish_sorted(pos, rem_count, less);
            return;
        }

        if (!less) {
            if (min_key > best[pos]) return;
            if (min_key < best[pos]) less = true;
        }
        emitted[pos] = min_key;

        // Branch over the distinct commitments that realize the minimum. When a
        // sibling branch improves `best`, the improved prefix runs through this
        // node, so the strictly-less state resets to equality.
        const std::uint64_t version_here = best_version;
        const auto saved = cands;  // thread_local reused by recursion
        for (const auto& cand : saved) {
            const bool branch_less = best_version == version_here ? less : false;
            for (const auto& [s, val] : cand.ext) {
                sigma[s] = static_cast<std::int8_t>(val);
                used |= (1u << val);
            }
            std::swap(remaining[cand.rem_idx], remaining[rem_count - 1]);
            dfs(pos + 1, rem_count - 1, branch_less);
            std::swap(remaining[cand.rem_idx], remaining[rem_count - 1]);
            for (const auto& [s, val] : cand.ext) {
                sigma[s] = -1;
                used &= ~(1u << val);
            }
        }
    }

    void finish_sorted(int pos, int rem_count, bool less) {
        static thread_local std::vector<std::uint64_t> tail;
        tail.clear();
        for (int i = 0; i < rem_count; ++i) {
            std::uint64_t key = 0;
            const Symbol* row = &syms[static_cast<size_t>(remaining[i]) * k];
            for (int j = 0; j < k; ++j) key = (key << 8) | static_cast<std::uint8_t>(sigma[row[j]]);
            tail.push_back(key << (8 * (8 - k)));
        }
        std::sort(tail.begin(), tail.end());
        for (int i = 0; i < rem_count; ++i) {
            if (!less) {
                if (tail[i] > best[pos + i]) return;
                if (tail[i] < best[pos + i]) less = true;
            }
            emitted[pos + i] = tail[i];
        }
        if (less) {
            best = emitted;
            ++best_version;
        }
    }
};

Array decode_keys(const std::vector<std::uint64_t>& keys, int k, int v) {
    Array out = make_array(static_cast<int>(keys.size()), k, v);
    for (size_t r = 0; r < keys.size(); ++r)
        for (int j = 0; j < k; ++j)
            out.at(static_cast<int>(r), j) = static_cast<Symbol>((keys[r] >> (8 * (7 - j))) & 0xff);
    return out;
}

}  // namespace

CanonicalForm canonical_form(const Array& a) {
    validate(a);
    if (a.n_cols > 8) throw std::invalid_argument("canonical_form supports at most 8 columns");
    if (a.v > 32) throw std::invalid_argument("canonical_form supports at most 32 symbols");

    CanonSearcher search(a);
    // Seed with the identity transform.
    {
        std::vector<std::uint64_t> keys(a.n_rows);
        for (int r = 0; r < a.n_rows; ++r) keys[r] = encode_row(a.row(r).data(), a.n_cols);
        std::sort(keys.begin(), keys.end());
        search.best = keys;
    }
    std::vector<int> rho(a.n_cols);
    std::iota(rho.begin(), rho.end(), 0);
    do {
        search.run_for_order(rho);
    } while (std::next_permutation(rho.begin(), rho.end()));

    return CanonicalForm{decode_keys(search.best, a.n_cols, a.v)};
}

std::string CanonicalForm::bytes() const { return serialize(representative); }

std::vector<std::uint8_t> CanonicalForm::packed() const { return pack_entries(representative); }

Fingerprint fingerprint(const Array& a) {
    validate(a);
    Fingerprint fp;
    fp.data.push_back(static_cast<std::uint64_t>(a.n_rows));
    fp.data.push_back(static_cast<std::uint64_t>(a.n_cols));
    fp.data.push_back(static_cast<std::uint64_t>(a.v));

    // Multiset of per-row multiplicity partitions.
    std::vector<std::uint64_t> rows;
    std::vector<int> counts(a.v);
    for (int r = 0; r < a.n_rows; ++r) {
        std::fill(counts.begin(), counts.end(), 0);
        for (int c = 0; c < a.n_cols; ++c) ++counts[a.at(r, c)];
        std::vector<int> parts(counts);
        std::sort(parts.begin(), parts.end(), std::greater<>());
        std::uint64_t code = 0;
        for (int p : parts) {
            if (p == 0) break;
            code = (code << 8) | static_cast<std::uint64_t>(p);
        }
        rows.push_back(code);
    }
    std::sort(rows.begin(), rows.end());
    fp.data.insert(fp.data.end(), rows.begin(), rows.end());

    // Sorted per-column symbol-count spectra.
    std::vector<std::uint64_t> cols;
    for (int c = 0; c < a.n_cols; ++c) {
        std::fill(counts.begin(), counts.end(), 0);
        for (int r = 0; r < a.n_rows; ++r) ++counts[a.at(r, c)];
        std::vector<int> spec(counts);
        std::sort(spec.begin(), spec.end());
        std::uint64_t code = 0;
        for (int s : spec) code = code * 131 + static_cast<std::uint64_t>(s) + 1;
        cols.push_back(code);
    }
    std::sort(cols.begin(), cols.end());
    fp.data.insert(fp.data.end(), cols.begin(), cols.end());

    // Sorted column-pair coincidence counts.
    std::vector<std::uint64_t> pairs;
    for (int c1 = 0; c1 < a.n_cols; ++c1)
        for (int c2 = c1 + 1; c2 < a.n_cols; ++c2) {
            int coincide = 0;
            for (int r = 0; r < a.n_rows; ++r)
                if (a.at(r, c1) == a.at(r, c2)) ++coincide;
            pairs.push_back(static_cast<std::uint64_t>(coincide));
        }
    std::sort(pairs.begin(), pairs.end());
    fp.data.insert(fp.data.end(), pairs.begin(), pairs.end());
    return fp;
}

bool are_isomorphic(const Array& a, const Array& b) {
    if (a.n_rows != b.n_rows || a.n_cols != b.n_cols || a.v != b.v) return false;
    if (!(fingerprint(a) == fingerprint(b))) return false;
    return canonical_form(a) == canonical_form(b);
}

namespace {

int permutation_order(const std::vector<int>& p) {
    const int n = static_cast<int>(p.size());
    std::vector<bool> seen(n, false);
    std::int64_t ord = 1;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = p[j];
            ++len;
        }
        ord = std::lcm<std::int64_t>(ord, len);
    }
    return static_cast<int>(ord);
}

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

}  // namespace

AutomorphismReport automorphisms(const Array& a) {
    validate(a);
    if (a.n_cols > 8) throw std::invalid_argument("automorphisms supports at most 8 columns");
    const int N = a.n_rows, k = a.n_cols, v = a.v;

    std::vector<std::uint64_t> base(N);
    for (int r = 0; r < N; ++r) base[r] = encode_row(a.row(r).data(), k);
    std::sort(base.begin(), base.end());

    AutomorphismReport rep;
    DisjointSets cols(k);

    std::vector<int> sigma(v), rho(k);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<std::uint64_t> keys(N);
    do {
        std::iota(rho.begin(), rho.end(), 0);
        do {
            for (int r = 0; r < N; ++r) {
                std::uint64_t key = 0;
                for (int j = 0; j < k; ++j) key = (key << 8) | static_cast<std::uint8_t>(sigma[a.at(r, rho[j])]);
                keys[r] = key << (8 * (8 - k));
            }
            std::sort(keys.begin(), keys.end());
            if (keys == base) {
                ++rep.order;
                const int ord = std::lcm(permutation_order(sigma), permutation_order(rho));
                ++rep.element_order_histogram[ord];
                for (int c = 0; c < k; ++c) cols.unite(c, rho[c]);
            }
        } while (std::next_permutation(rho.begin(), rho.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    std::map<int, std::vector<int>> orbit_map;
    for (int c = 0; c < k; ++c) orbit_map[cols.find(c)].push_back(c);
    for (auto& [root, members] : orbit_map) rep.column_orbits.push_back(members);
    return rep;
}

}  // namespace excov
