#include "excov/core.hpp"

#include <algorithm>

namespace excov {

void Array::sort_rows() {
    std::vector<std::vector<Symbol>> rows(n_rows);
    for (int r = 0; r < n_rows; ++r) {
        auto sp = row(r);
        rows[r].assign(sp.begin(), sp.end());
    }
    std::sort(rows.begin(), rows.end());
    for (int r = 0; r < n_rows; ++r)
        std::copy(rows[r].begin(), rows[r].end(), entries.begin() + static_cast<size_t>(r) * n_cols);
}

Array make_array(int n_rows, int n_cols, int v) {
    if (n_rows < 1 || n_cols < 1 || v < 2)
        throw std::invalid_argument("array shape requires n_rows >= 1, n_cols >= 1, v >= 2");
    Array a;
    a.n_rows = n_rows;
    a.n_cols = n_cols;
    a.v = v;
    a.entries.assign(static_cast<size_t>(n_rows) * n_cols, 0);
    return a;
}

void validate(const Array& a) {
    if (a.n_rows < 1 || a.n_cols < 1 || a.v < 2)
        throw std::invalid_argument("array shape requires n_rows >= 1, n_cols >= 1, v >= 2");
    if (a.entries.size() != static_cast<size_t>(a.n_rows) * a.n_cols)
        throw std::invalid_argument("entry count does not match declared shape");
    for (Symbol e : a.entries)
        if (e >= a.v) throw std::invalid_argument("entry " + std::to_string(int(e)) + " out of alphabet [" + std::to_string(a.v) + ")");
}

Interaction::Interaction(std::vector<std::pair<int, Symbol>> p) : pairs(std::move(p)) {
    std::sort(pairs.begin(), pairs.end());
    for (size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i].first == pairs[i - 1].first)
            throw std::invalid_argument("interaction columns must be distinct");
}

bool Permutation::is_valid() const {
    const int v = order_v();
    std::vector<bool> seen(v, false);
    for (Symbol s : image) {
        if (s >= v || seen[s]) return false;
        seen[s] = true;
    }
    return true;
}

std::uint64_t factorial_u64(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

std::uint64_t mu(const Interaction& t) {
    // tau sizes: count how many of t's pairs carry each symbol
    std::vector<int> tau;
    for (const auto& [c, s] : t.pairs) {
        (void)c;
        if (s >= tau.size()) tau.resize(s + 1, 0);
        ++tau[s];
    }
    std::uint64_t m = 1;
    for (int sz : tau) m *= factorial_u64(sz);
    return m;
}

int coverage_count(const Array& c, const Interaction& t) {
    for (const auto& [col, s] : t.pairs) {
        if (col < 0 || col >= c.n_cols) throw std::invalid_argument("interaction column out of range");
        if (s >= c.v) throw std::invalid_argument("interaction symbol out of range");
    }
    int count = 0;
    for (int r = 0; r < c.n_rows; ++r) {
        bool hit = true;
        for (const auto& [col, s] : t.pairs)
            if (c.at(r, col) != s) { hit = false; break; }
        if (hit) ++count;
    }
    return count;
}

bool permutation_covers(const Permutation& p, const Sequence& s) {
    const int v = p.order_v();
    std::vector<int> pos(v, -1);
    for (int i = 0; i < v; ++i) pos[p.image[i]] = i;
    int prev = -1;
    for (Symbol e : s.elements) {
        if (e >= v) throw std::invalid_argument("sequence symbol out of range");
        const int q = pos[e];
        if (q <= prev) return false;
        prev = q;
    }
    return true;
}

Array transform(const Array& a, std::span<const Symbol> sigma, std::span<const int> rho) {
    Array out = a;
    for (int r = 0; r < a.n_rows; ++r)
        for (int c = 0; c < a.n_cols; ++c)
            out.at(r, c) = sigma[a.at(r, rho[c])];
    return out;
}

}  // namespace excov
