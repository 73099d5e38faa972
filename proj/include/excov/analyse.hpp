// Structural classification of catalogued arrays: orthogonal-array content,
// censuses, column deletion structure, Latin square extraction, and the
// nonexistence deduction for size-t! sequence covering arrays.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "excov/canon.hpp"
#include "excov/core.hpp"
#include "excov/io.hpp"

namespace excov {

// Constant-row criterion: an exact strength-2 CA_X contains an OA(2,k,v)
// subarray iff it has a constant row for every symbol.
bool contains_oa(const Array& c);

// Direct cross-check: remove one constant row per symbol and verify the
// remainder covers every pair exactly once. Must agree with contains_oa.
bool contains_oa_direct(const Array& c);

struct ClassificationRecord {
    std::uint64_t index = 0;
    int constant_row_count = 0;
    std::vector<Symbol> constant_row_symbols;
    bool contains_oa = false;
    bool every_row_has_repeat = false;
    std::uint64_t automorphism_order = 0;  // 0 when not requested
};

ClassificationRecord classify_array(const Array& c, bool with_automorphisms = false);

struct CensusResult {
    std::uint64_t oa_count = 0;
    std::uint64_t non_oa_count = 0;
    std::map<int, std::uint64_t> constant_row_histogram;
};

CensusResult census(const Catalogue& cat);
// Streaming variant for catalogues too large to hold in memory.
CensusResult census_file(const std::string& path, int jobs = 0);

struct ColumnDeletionReport {
    int column = 0;
    bool contains_oa = false;
    CanonicalForm cls;
};

// One report per deleted column of an exact CA_X.
std::vector<ColumnDeletionReport> column_deletion_analysis(const Array& c);

struct LatinSquare {
    int n = 0;
    std::vector<Symbol> cells;  // row-major
    Symbol at(int r, int c) const { return cells[static_cast<size_t>(r) * n + c]; }
};

struct LatinExtraction {
    Array oa;  // the v*v x 3 orthogonal array left after removals
    LatinSquare square;
    std::uint64_t transversals = 0;
};

// Drops two columns, removes one forced constant row per symbol, checks the
// remainder is an OA(2,3,v) (error naming the violated interaction when not),
// and reads the rows as (row, column, symbol) triples.
LatinExtraction latin_square_extract(const Array& c, int drop1, int drop2);

std::uint64_t transversal_count(const LatinSquare& sq);

// Species-level canonical cells: minimal over the six conjugates, all row and
// column permutations, with symbols relabelled by first occurrence.
std::vector<Symbol> latin_species_canonical(const LatinSquare& sq);

struct ObstructionReport {
    bool concluded = false;
    std::string conclusion;
    std::vector<std::string> checks;  // every check the conclusion rests on
};

// For a complete (k=5, v=6) catalogue: exactly one class, no constant rows,
// every row with a repeated symbol => no SCA(7!;7,10).
ObstructionReport obstruction_report(const Catalogue& cat);

// a! * canx_lower: the sequence covering array size bound through excess
// coverage array nonexistence.
std::uint64_t scan_bound(int t, int v, int a, std::uint64_t canx_lower);

}  // namespace excov
