// Core domain types for excess coverage arrays and sequence covering arrays.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace excov {

using Symbol = std::uint8_t;

// N x k grid over the alphabet [v]. Rows are an indexed multiset: two equal
// rows at different indices are distinct row instances.
struct Array {
    int n_rows = 0;
    int n_cols = 0;
    int v = 0;
    std::vector<Symbol> entries;  // row-major

    Symbol at(int r, int c) const { return entries[static_cast<size_t>(r) * n_cols + c]; }
    Symbol& at(int r, int c) { return entries[static_cast<size_t>(r) * n_cols + c]; }
    std::span<const Symbol> row(int r) const {
        return {entries.data() + static_cast<size_t>(r) * n_cols, static_cast<size_t>(n_cols)};
    }

    void sort_rows();

    bool operator==(const Array&) const = default;
};

Array make_array(int n_rows, int n_cols, int v);

// Throws std::invalid_argument if shape or entries are inconsistent.
void validate(const Array& a);

// A t-way interaction: t (column, symbol) pairs on distinct columns.
// Normalized by sorting on column index, so equality is structural.
struct Interaction {
    std::vector<std::pair<int, Symbol>> pairs;

    Interaction() = default;
    explicit Interaction(std::vector<std::pair<int, Symbol>> p);

    int strength() const { return static_cast<int>(pairs.size()); }
    bool operator==(const Interaction&) const = default;
};

// Permutation of [v] in one-line notation: image[i] = pi(i).
struct Permutation {
    std::vector<Symbol> image;

    int order_v() const { return static_cast<int>(image.size()); }
    bool is_valid() const;
};

// Ordered sequence of distinct symbols of [v].
struct Sequence {
    std::vector<Symbol> elements;
};

// Multiset of permutations with a declared strength.
struct ScaSet {
    int v = 0;
    int t = 0;
    std::vector<Permutation> perms;
};

// Per-symbol occurrence counts (m_0, ..., m_a) of a derived-array row.
struct MultiplicityVector {
    std::vector<int> counts;
    bool operator==(const MultiplicityVector&) const = default;
    auto operator<=>(const MultiplicityVector&) const = default;
};

// mu(T) = prod over symbols sigma of |tau_sigma(T)|!, where tau_sigma(T) is
// the set of columns of T carrying sigma. Equals 1 iff no symbol repeats.
std::uint64_t mu(const Interaction& t);

// Number of row instances of c covering t.
int coverage_count(const Array& c, const Interaction& t);

// True iff the positions of s's elements in p are strictly increasing.
bool permutation_covers(const Permutation& p, const Sequence& s);

// Apply a global symbol permutation and a column permutation:
// result[r][c] = sigma[a[r][rho[c]]]. Rows keep their indices.
Array transform(const Array& a, std::span<const Symbol> sigma, std::span<const int> rho);

std::uint64_t factorial_u64(int n);

}  // namespace excov
