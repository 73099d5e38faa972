// Exhaustive isomorph-free generation of exact strength-2 excess coverage
// arrays: base arrays, placements, exact-cover column extension, the
// simultaneous two-column variant, and a small exact-cover oracle for
// perfect sequence covering arrays.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "excov/core.hpp"
#include "excov/io.hpp"

namespace excov {

// v+1 row instances in which `symbol` appears twice per column and every
// other symbol exactly once. Row sets are bitmasks, so n_rows <= 64.
struct Placement {
    Symbol symbol;
    std::uint64_t row_mask;
};

// The unique exact CA_X with two columns: every non-constant ordered pair
// once, every constant pair twice; rows sorted.
Array base_array(int v);

// All placements for `nu`. The array must be an exact strength-2 CA_X.
std::vector<Placement> placements(const Array& c, Symbol nu);

// All exact one-column extensions of c, one per exact-cover solution over
// placements. Empty when no extension exists.
std::vector<Array> extend(const Array& c);

// All simultaneous two-column extensions: same-symbol placement pairs meet
// in exactly two rows, distinct-symbol same-column placements are disjoint,
// distinct-symbol cross-column placements meet in exactly one row. With
// forbid_zero_constant_row, the two all-zero parent rows may not both land
// in symbol 0's placements (the seeding rule for oa-free catalogues).
std::vector<Array> extend_two_columns(const Array& c, bool forbid_zero_constant_row = false);

struct EnumerateOptions {
    bool oa_free = false;
    int jobs = 0;  // worker threads; 0 keeps the runtime default
    std::string work_dir;  // spill + checkpoint directory for file-based runs
    std::size_t mem_budget = std::size_t{1} << 30;
    std::function<void(const std::string&)> progress;
};

// All isomorphism classes of exact CA_X(v(v+1);2,k,v), in memory.
// With oa_free, only classes that do not contain an orthogonal array are
// generated (two-column seeding at k=4, column-deletion closure beyond).
Catalogue build_catalogue(int v, int k, const EnumerateOptions& opts = {});

// One depth of extension with post-hoc isomorph rejection.
Catalogue extend_catalogue(const Catalogue& in, const EnumerateOptions& opts = {});

// File-to-file extension step with disk spill and checkpointing; returns the
// class count of the output. Safe to re-run after interruption: progress is
// resumed from <out_path>.ckpt.
std::uint64_t extend_catalogue_files(const std::string& in_path, const std::string& out_path,
                                     const EnumerateOptions& opts);

// Reference search: recursive generate-all over extensions with no isomorph
// rejection anywhere, deduplicated once at the end. Small v only.
Catalogue naive_catalogue(int v, int k);

struct PscaSearchResult {
    enum class Status { Found, Exhausted, Aborted } status = Status::Exhausted;
    ScaSet sca;
    std::uint64_t nodes = 0;
};

// Searches for t! permutations of [v] covering every t-sequence exactly once
// (exact cover over sequences, most-constrained item first). node_limit 0
// means unlimited.
PscaSearchResult find_psca(int v, int t, std::uint64_t node_limit = 0);

// True iff the array has a constant row for every symbol (the orthogonal
// array criterion for exact strength-2 arrays).
bool has_constant_row_per_symbol(const Array& c);

}  // namespace excov
