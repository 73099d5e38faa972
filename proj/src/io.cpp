#include "excov/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <queue>
#include <sstream>

#include "json.hpp"

namespace excov {

namespace {

struct LineReader {
    std::istream& in;
    int lineno = 0;
    bool next(std::string& out) {
        if (!std::getline(in, out)) return false;
        if (!out.empty() && out.back() == '\r') out.pop_back();
        ++lineno;
        return true;
    }
};

std::vector<long> split_ints(const std::string& s, int lineno) {
    std::vector<long> out;
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] == ' ') { ++i; continue; }
        if (!isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError(lineno, std::string("unexpected character '") + s[i] + "'");
        long val = 0;
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) {
            val = val * 10 + (s[i] - '0');
            if (val > 1'000'000'000L) throw ParseError(lineno, "number too large");
            ++i;
        }
        out.push_back(val);
    }
    return out;
}

}  // namespace

std::vector<Record> parse_records(std::istream& in) {
    std::vector<Record> out;
    LineReader rd{in};
    std::string line;
    bool want_header = true;
    while (rd.next(line)) {
        if (line.empty()) {
            if (want_header) throw ParseError(rd.lineno, "unexpected blank line");
            want_header = true;
            continue;
        }
        if (!want_header) throw ParseError(rd.lineno, "expected blank line between records");
        std::istringstream hs(line);
        std::string kind;
        long n = 0, kt = 0, v = 0;
        if (!(hs >> kind >> n >> kt >> v) || !(hs >> std::ws).eof())
            throw ParseError(rd.lineno, "malformed header, expected `cax N k v` or `sca N t v`");
        if (kind != "cax" && kind != "sca") throw ParseError(rd.lineno, "unknown record kind '" + kind + "'");
        if (n < 1 || kt < 1 || v < 2 || v > 255) throw ParseError(rd.lineno, "header values out of range");
        const int header_line = rd.lineno;
        const int row_len = kind == "cax" ? static_cast<int>(kt) : static_cast<int>(v);
        std::vector<std::vector<long>> rows;
        for (long r = 0; r < n; ++r) {
            if (!rd.next(line)) throw ParseError(rd.lineno + 1, "unexpected end of file inside record");
            if (line.empty()) throw ParseError(rd.lineno, "blank line inside record");
            auto vals = split_ints(line, rd.lineno);
            if (static_cast<int>(vals.size()) != row_len)
                throw ParseError(rd.lineno, "expected " + std::to_string(row_len) + " symbols, got " + std::to_string(vals.size()));
            for (long x : vals)
                if (x >= v) throw ParseError(rd.lineno, "symbol " + std::to_string(x) + " not below v=" + std::to_string(v));
            rows.push_back(std::move(vals));
        }
        if (kind == "cax") {
            Array a = make_array(static_cast<int>(n), static_cast<int>(kt), static_cast<int>(v));
            for (int r = 0; r < a.n_rows; ++r)
                for (int c = 0; c < a.n_cols; ++c) a.at(r, c) = static_cast<Symbol>(rows[r][c]);
            out.emplace_back(std::move(a));
        } else {
            ScaSet x;
            x.v = static_cast<int>(v);
            x.t = static_cast<int>(kt);
            if (x.t > x.v) throw ParseError(header_line, "sca strength t exceeds v");
            for (long r = 0; r < n; ++r) {
                Permutation p;
                p.image.assign(rows[r].begin(), rows[r].end());
                if (!p.is_valid()) throw ParseError(header_line + 1 + static_cast<int>(r), "row is not a permutation of [v]");
                x.perms.push_back(std::move(p));
            }
            out.emplace_back(std::move(x));
        }
        want_header = false;
    }
    if (out.empty()) throw ParseError(rd.lineno, "no records in input");
    return out;
}

std::vector<Record> parse_records_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_records(in);
}

std::string serialize(const Array& a) {
    std::string s = "cax " + std::to_string(a.n_rows) + " " + std::to_string(a.n_cols) + " " + std::to_string(a.v) + "\n";
    for (int r = 0; r < a.n_rows; ++r) {
        for (int c = 0; c < a.n_cols; ++c) {
            if (c) s += ' ';
            s += std::to_string(int(a.at(r, c)));
        }
        s += '\n';
    }
    return s;
}

std::string serialize(const ScaSet& x) {
    std::string s = "sca " + std::to_string(x.perms.size()) + " " + std::to_string(x.t) + " " + std::to_string(x.v) + "\n";
    for (const auto& p : x.perms) {
        for (int i = 0; i < x.v; ++i) {
            if (i) s += ' ';
            s += std::to_string(int(p.image[i]));
        }
        s += '\n';
    }
    return s;
}

int symbol_bits(int v) {
    int b = 1;
    while ((1 << b) < v) ++b;
    return b;
}

size_t packed_size(int n_rows, int n_cols, int v) {
    const size_t bits = static_cast<size_t>(n_rows) * n_cols * symbol_bits(v);
    return (bits + 7) / 8;
}

std::vector<std::uint8_t> pack_entries(const Array& a) {
    const int bits = symbol_bits(a.v);
    std::vector<std::uint8_t> out(packed_size(a.n_rows, a.n_cols, a.v), 0);
    size_t bitpos = 0;
    for (Symbol e : a.entries) {
        for (int b = bits - 1; b >= 0; --b) {
            if ((e >> b) & 1) out[bitpos >> 3] |= static_cast<std::uint8_t>(0x80u >> (bitpos & 7));
            ++bitpos;
        }
    }
    return out;
}

Array unpack_entries(const std::uint8_t* data, int n_rows, int n_cols, int v) {
    const int bits = symbol_bits(v);
    Array a = make_array(n_rows, n_cols, v);
    size_t bitpos = 0;
    for (auto& e : a.entries) {
        Symbol s = 0;
        for (int b = 0; b < bits; ++b) {
            s = static_cast<Symbol>((s << 1) | ((data[bitpos >> 3] >> (7 - (bitpos & 7))) & 1));
            ++bitpos;
        }
        e = s;
    }
    return a;
}

namespace {

const char kCompactMagic[] = "caxcat";

std::string meta_path(const std::string& path) { return path + ".meta"; }

void write_meta(const Catalogue& cat, const std::string& path, std::uint64_t count) {
    nlohmann::json j;
    j["v"] = cat.v;
    j["k"] = cat.k;
    j["oa_free"] = cat.oa_free;
    j["complete"] = cat.complete;
    j["count"] = count;
    std::ofstream out(meta_path(path));
    out << j.dump(2) << "\n";
}

}  // namespace

void write_catalogue(const Catalogue& cat, const std::string& path, bool compact) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    if (compact) {
        const int n = cat.members.empty() ? cat.v * (cat.v + 1) : cat.members.front().n_rows;
        out << kCompactMagic << " " << n << " " << cat.k << " " << cat.v << " " << cat.members.size() << "\n";
        for (const auto& m : cat.members) {
            auto rec = pack_entries(m);
            out.write(reinterpret_cast<const char*>(rec.data()), static_cast<std::streamsize>(rec.size()));
        }
    } else {
        bool first = true;
        for (const auto& m : cat.members) {
            if (!first) out << "\n";
            out << serialize(m);
            first = false;
        }
        if (cat.members.empty()) out << "";
    }
    write_meta(cat, path, cat.members.size());
}

namespace {

CatalogueInfo read_meta(const std::string& path) {
    CatalogueInfo info;
    std::ifstream in(meta_path(path));
    if (!in) return info;
    nlohmann::json j;
    in >> j;
    info.v = j.value("v", 0);
    info.k = j.value("k", 0);
    info.oa_free = j.value("oa_free", false);
    info.complete = j.value("complete", true);
    info.count = j.value("count", std::uint64_t{0});
    return info;
}

bool is_compact(std::ifstream& in) {
    char buf[6] = {};
    in.read(buf, 6);
    const bool compact = std::string(buf, 6) == kCompactMagic;
    in.seekg(0);
    return compact;
}

}  // namespace

std::uint64_t for_each_catalogue_member(const std::string& path,
                                        const std::function<void(const Array&)>& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::uint64_t count = 0;
    if (is_compact(in)) {
        std::string magic;
        long n = 0, k = 0, v = 0;
        std::uint64_t declared = 0;
        in >> magic >> n >> k >> v >> declared;
        in.get();  // newline
        const size_t rec = packed_size(static_cast<int>(n), static_cast<int>(k), static_cast<int>(v));
        std::vector<std::uint8_t> buf(rec);
        for (std::uint64_t i = 0; i < declared; ++i) {
            in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(rec));
            if (!in) throw std::runtime_error(path + ": truncated compact catalogue");
            fn(unpack_entries(buf.data(), static_cast<int>(n), static_cast<int>(k), static_cast<int>(v)));
            ++count;
        }
    } else {
        for (const auto& rec : parse_records(in)) {
            if (!std::holds_alternative<Array>(rec)) throw std::runtime_error(path + ": catalogue holds a non-array record");
            fn(std::get<Array>(rec));
            ++count;
        }
    }
    return count;
}

Catalogue read_catalogue(const std::string& path) {
    Catalogue cat;
    CatalogueInfo info = read_meta(path);
    cat.oa_free = info.oa_free;
    cat.complete = info.complete;
    for_each_catalogue_member(path, [&](const Array& a) { cat.members.push_back(a); });
    if (!cat.members.empty()) {
        cat.v = cat.members.front().v;
        cat.k = cat.members.front().n_cols;
    } else {
        cat.v = info.v;
        cat.k = info.k;
    }
    return cat;
}

CatalogueInfo catalogue_info(const std::string& path) {
    CatalogueInfo info = read_meta(path);
    if (info.count == 0 && info.v == 0) {
        // No sidecar; fall back to scanning the file.
        info.count = for_each_catalogue_member(path, [&](const Array& a) {
            info.v = a.v;
            info.k = a.n_cols;
        });
    }
    return info;
}

ExternalDeduper::ExternalDeduper(size_t record_size, std::string tmp_dir, size_t mem_budget_bytes,
                                 size_t adopt_chunks)
    : record_size_(record_size), tmp_dir_(std::move(tmp_dir)) {
    std::filesystem::create_directories(tmp_dir_);
    chunk_records_ = std::max<size_t>(1024, mem_budget_bytes / record_size_);
    buffer_.resize(chunk_records_ * record_size_);
    for (size_t i = 0; i < adopt_chunks; ++i) {
        const std::string f = chunk_name(i);
        if (!std::filesystem::exists(f)) throw std::runtime_error("missing checkpoint chunk " + f);
        chunk_files_.push_back(f);
    }
}

ExternalDeduper::~ExternalDeduper() = default;  // chunks persist for resume until finish()

std::string ExternalDeduper::chunk_name(size_t i) const {
    return tmp_dir_ + "/chunk_" + std::to_string(i) + ".rec";
}

void ExternalDeduper::append(const std::uint8_t* rec) {
    std::copy(rec, rec + record_size_, buffer_.begin() + buffered_ * record_size_);
    ++buffered_;
    ++appended_;
    if (buffered_ == chunk_records_) flush();
}

void ExternalDeduper::flush() {
    if (buffered_ == 0) return;
    std::vector<const std::uint8_t*> ptrs(buffered_);
    for (size_t i = 0; i < buffered_; ++i) ptrs[i] = buffer_.data() + i * record_size_;
    std::sort(ptrs.begin(), ptrs.end(), [n = record_size_](const std::uint8_t* a, const std::uint8_t* b) {
        return std::memcmp(a, b, n) < 0;
    });
    const std::string file = chunk_name(chunk_files_.size());
    const std::string tmp = file + ".tmp";
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    for (size_t i = 0; i < buffered_; ++i) {
        if (i && std::memcmp(ptrs[i], ptrs[i - 1], record_size_) == 0) continue;  // cheap pre-dedup
        out.write(reinterpret_cast<const char*>(ptrs[i]), static_cast<std::streamsize>(record_size_));
    }
    out.close();
    std::filesystem::rename(tmp, file);
    chunk_files_.push_back(file);
    buffered_ = 0;
}

std::uint64_t ExternalDeduper::finish(const std::function<void(const std::uint8_t*)>& fn) {
    flush();
    std::uint64_t distinct = 0;
    if (chunk_files_.empty()) return 0;

    struct Cursor {
        std::ifstream in;
        std::vector<std::uint8_t> rec;
        bool ok = false;
    };
    std::vector<Cursor> cursors(chunk_files_.size());
    for (size_t i = 0; i < chunk_files_.size(); ++i) {
        cursors[i].in.open(chunk_files_[i], std::ios::binary);
        cursors[i].rec.resize(record_size_);
        cursors[i].ok = bool(cursors[i].in.read(reinterpret_cast<char*>(cursors[i].rec.data()),
                                                static_cast<std::streamsize>(record_size_)));
    }
    auto cmp = [this](const std::pair<const std::uint8_t*, size_t>& a, const std::pair<const std::uint8_t*, size_t>& b) {
        const int c = std::memcmp(a.first, b.first, record_size_);
        if (c != 0) return c > 0;  // min-heap
        return a.second > b.second;
    };
    std::priority_queue<std::pair<const std::uint8_t*, size_t>, std::vector<std::pair<const std::uint8_t*, size_t>>, decltype(cmp)> heap(cmp);
    for (size_t i = 0; i < cursors.size(); ++i)
        if (cursors[i].ok) heap.push({cursors[i].rec.data(), i});

    std::vector<std::uint8_t> current(record_size_);
    bool have_current = false;
    while (!heap.empty()) {
        auto [ptr, idx] = heap.top();
        heap.pop();
        if (!have_current || std::memcmp(ptr, current.data(), record_size_) != 0) {
            if (have_current) {
                fn(current.data());
                ++distinct;
            }
            std::copy(ptr, ptr + record_size_, current.begin());
            have_current = true;
        }
        auto& cur = cursors[idx];
        cur.ok = bool(cur.in.read(reinterpret_cast<char*>(cur.rec.data()), static_cast<std::streamsize>(record_size_)));
        if (cur.ok) heap.push({cur.rec.data(), idx});
    }
    if (have_current) {
        fn(current.data());
        ++distinct;
    }
    for (auto& c : cursors) c.in.close();
    for (const auto& f : chunk_files_) std::remove(f.c_str());
    chunk_files_.clear();
    return distinct;
}

}  // namespace excov
