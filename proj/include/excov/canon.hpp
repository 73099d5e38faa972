// Isomorphism testing, canonical forms and automorphism reports under the
// group: one global symbol permutation x one column permutation, with rows
// treated as a multiset.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "excov/core.hpp"

namespace excov {

// The representative is the array whose sorted-row serialization is
// lexicographically minimal over all v! * k! transforms of the input.
struct CanonicalForm {
    Array representative;

    std::string bytes() const;                 // text serialization of the representative
    std::vector<std::uint8_t> packed() const;  // fixed-width bit-packed serialization

    bool operator==(const CanonicalForm& o) const { return representative == o.representative; }
    auto operator<=>(const CanonicalForm& o) const {
        return representative.entries <=> o.representative.entries;
    }
};

// Requires n_cols <= 8 and v <= 32 (rows are compared as packed 64-bit keys).
CanonicalForm canonical_form(const Array& a);

// Isomorphism invariant used as a cheap pre-filter: shape, the multiset of
// per-row symbol-multiplicity profiles, per-column symbol-count spectra and
// column-pair coincidence counts.
struct Fingerprint {
    std::vector<std::uint64_t> data;
    bool operator==(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const Array& a);

// Equal shapes, equal fingerprints, then equal canonical forms.
bool are_isomorphic(const Array& a, const Array& b);

struct AutomorphismReport {
    std::uint64_t order = 0;
    std::map<int, std::uint64_t> element_order_histogram;  // order of (sigma, rho) -> count
    std::vector<std::vector<int>> column_orbits;           // partition of [k], each sorted
};

// Enumerates every (symbol permutation, column permutation) pair fixing the
// row multiset.
AutomorphismReport automorphisms(const Array& a);

}  // namespace excov
