// Text and compact file formats, catalogue persistence, external dedup.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "excov/core.hpp"

namespace excov {

// Parse or format errors carry the offending line.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what) : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

using Record = std::variant<Array, ScaSet>;

// Array record: header `cax N k v` followed by N rows of k symbols.
// Sca record: header `sca N t v` followed by N permutations of [v].
// Records are separated by one blank line; parsing is strict.
std::vector<Record> parse_records(std::istream& in);
std::vector<Record> parse_records_file(const std::string& path);

std::string serialize(const Array& a);
std::string serialize(const ScaSet& x);

// Bits needed per symbol for alphabet [v].
int symbol_bits(int v);

// MSB-first bit packing of entries in row-major order. Byte-lexicographic
// order of packed forms matches symbol-lexicographic order of the arrays.
std::vector<std::uint8_t> pack_entries(const Array& a);
Array unpack_entries(const std::uint8_t* data, int n_rows, int n_cols, int v);
size_t packed_size(int n_rows, int n_cols, int v);

struct Catalogue {
    int v = 0;
    int k = 0;
    bool oa_free = false;
    bool complete = true;
    std::vector<Array> members;  // canonical representatives, sorted by canonical bytes
};

// Text catalogue: cax records separated by blank lines, plus a `.meta` JSON
// sidecar holding {v, k, oa_free, complete, count}. Compact catalogue:
// binary stream of fixed-width packed records behind a `caxcat` header line.
void write_catalogue(const Catalogue& cat, const std::string& path, bool compact = false);
Catalogue read_catalogue(const std::string& path);

// Streaming reader so deep catalogues need not be resident in memory.
// Returns the member count; calls fn for each member in stored order.
std::uint64_t for_each_catalogue_member(const std::string& path,
                                        const std::function<void(const Array&)>& fn);
struct CatalogueInfo {
    int v = 0, k = 0;
    bool oa_free = false;
    bool complete = true;
    std::uint64_t count = 0;
};
CatalogueInfo catalogue_info(const std::string& path);

// Disk-backed sort/dedup of fixed-width records. Append in any order;
// finish() streams every distinct record in ascending byte order and
// returns the number of distinct records.
class ExternalDeduper {
  public:
    // adopt_chunks re-attaches chunk files left behind by an interrupted run.
    ExternalDeduper(size_t record_size, std::string tmp_dir, size_t mem_budget_bytes,
                    size_t adopt_chunks = 0);
    ~ExternalDeduper();
    void append(const std::uint8_t* rec);
    void flush();  // spill the current buffer; makes on-disk state a checkpoint
    size_t chunk_count() const { return chunk_files_.size(); }
    std::uint64_t appended() const { return appended_; }
    std::uint64_t finish(const std::function<void(const std::uint8_t*)>& fn);

  private:
    std::string chunk_name(size_t i) const;
    size_t record_size_;
    std::string tmp_dir_;
    size_t chunk_records_;
    std::vector<std::uint8_t> buffer_;
    size_t buffered_ = 0;
    std::vector<std::string> chunk_files_;
    std::uint64_t appended_ = 0;
};

}  // namespace excov
