#include "excov/verify.hpp"

#include <algorithm>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace excov {

namespace {

std::vector<std::vector<int>> column_combinations(int k, int t) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(t);
    for (int i = 0; i < t; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = t - 1;
        while (i >= 0 && cur[i] == k - t + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < t; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

// mu for a symbol tuple: product of factorials of symbol multiplicities.
std::uint64_t mu_of_tuple(const Symbol* syms, int t) {
    std::uint64_t m = 1;
    for (int i = 0; i < t; ++i) {
        int mult = 0;
        bool first = true;
        for (int j = 0; j < t; ++j) {
            if (syms[j] == syms[i]) {
                if (j < i) { first = false; break; }
                ++mult;
            }
        }
        if (first && mult > 1) m *= factorial_u64(mult);
    }
    return m;
}

struct CombViolations {
    std::vector<Witness> witnesses;
    std::uint64_t total = 0;
};

VerifyReport run_interaction_check(const Array& c, int t, VerifyKind kind, bool exact_like,
                                   bool oa_like, int witness_cap) {
    validate(c);
    if (t < 1 || t > c.n_cols)
        throw std::invalid_argument("strength t=" + std::to_string(t) + " must be within [1, n_cols=" + std::to_string(c.n_cols) + "]");
    const auto combs = column_combinations(c.n_cols, t);
    std::uint64_t tuple_space = 1;
    for (int i = 0; i < t; ++i) tuple_space *= static_cast<std::uint64_t>(c.v);

    std::vector<CombViolations> per_comb(combs.size());

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(combs.size()); ++ci) {
        const auto& cols = combs[ci];
        std::vector<std::uint32_t> counts(tuple_space, 0);
        for (int r = 0; r < c.n_rows; ++r) {
            std::uint64_t code = 0;
            for (int j = 0; j < t; ++j) code = code * c.v + c.at(r, cols[j]);
            ++counts[code];
        }
        auto& out = per_comb[ci];
        std::vector<Symbol> syms(t);
        for (std::uint64_t code = 0; code < tuple_space; ++code) {
            std::uint64_t x = code;
            for (int j = t - 1; j >= 0; --j) {
                syms[j] = static_cast<Symbol>(x % c.v);
                x /= c.v;
            }
            const std::uint64_t req = oa_like ? 1 : mu_of_tuple(syms.data(), t);
            const std::uint64_t got = counts[code];
            const bool bad = exact_like ? (got != req) : (got < req);
            if (bad) {
                ++out.total;
                if (out.witnesses.size() < static_cast<size_t>(witness_cap)) {
                    std::vector<std::pair<int, Symbol>> pairs(t);
                    for (int j = 0; j < t; ++j) pairs[j] = {cols[j], syms[j]};
                    out.witnesses.push_back({Interaction(std::move(pairs)), req, got});
                }
            }
        }
    }

    VerifyReport rep;
    rep.kind = kind;
    for (const auto& pc : per_comb) {
        rep.total_violations += pc.total;
        for (const auto& w : pc.witnesses)
            if (rep.witnesses.size() < static_cast<size_t>(witness_cap)) rep.witnesses.push_back(w);
    }
    rep.pass = rep.total_violations == 0;
    return rep;
}

}  // namespace

VerifyReport verify_cax(const Array& c, int t, bool exact, int witness_cap) {
    auto rep = run_interaction_check(c, t, exact ? VerifyKind::CAX_EXACT : VerifyKind::CAX, exact, false, witness_cap);
    return rep;
}

VerifyReport verify_ca(const Array& c, int t, int witness_cap) {
    // CA requirement is coverage >= 1: the OA target with the >= test.
    return run_interaction_check(c, t, VerifyKind::CA, false, true, witness_cap);
}

VerifyReport verify_oa(const Array& c, int t, int witness_cap) {
    return run_interaction_check(c, t, VerifyKind::OA, true, true, witness_cap);
}

VerifyReport verify_cax_reference(const Array& c, int t, bool exact, int witness_cap) {
    validate(c);
    if (t < 1 || t > c.n_cols) throw std::invalid_argument("strength out of range");
    VerifyReport rep;
    rep.kind = exact ? VerifyKind::CAX_EXACT : VerifyKind::CAX;
    const auto combs = column_combinations(c.n_cols, t);
    for (const auto& cols : combs) {
        std::vector<Symbol> syms(t, 0);
        while (true) {
            std::vector<std::pair<int, Symbol>> pairs(t);
            for (int j = 0; j < t; ++j) pairs[j] = {cols[j], syms[j]};
            Interaction inter(std::move(pairs));
            const std::uint64_t req = mu(inter);
            const std::uint64_t got = static_cast<std::uint64_t>(coverage_count(c, inter));
            const bool bad = exact ? got != req : got < req;
            if (bad) {
                ++rep.total_violations;
                if (rep.witnesses.size() < static_cast<size_t>(witness_cap))
                    rep.witnesses.push_back({inter, req, got});
            }
            int j = t - 1;
            while (j >= 0 && syms[j] == c.v - 1) { syms[j] = 0; --j; }
            if (j < 0) break;
            ++syms[j];
        }
    }
    rep.pass = rep.total_violations == 0;
    return rep;
}

namespace {

void enumerate_sequences(int v, int t, const std::function<void(const Sequence&)>& fn) {
    Sequence s;
    s.elements.reserve(t);
    std::vector<bool> used(v, false);
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == t) {
            fn(s);
            return;
        }
        for (int e = 0; e < v; ++e) {
            if (used[e]) continue;
            used[e] = true;
            s.elements.push_back(static_cast<Symbol>(e));
            self(self, depth + 1);
            s.elements.pop_back();
            used[e] = false;
        }
    };
    rec(rec, 0);
}

VerifyReport run_sequence_check(const ScaSet& x, int t, std::uint64_t lambda, bool exact,
                                VerifyKind kind, int witness_cap) {
    if (x.v < 1) throw std::invalid_argument("sca set has no alphabet");
    if (t < 1 || t > x.v) throw std::invalid_argument("strength t=" + std::to_string(t) + " exceeds v=" + std::to_string(x.v));
    for (const auto& p : x.perms)
        if (p.order_v() != x.v || !p.is_valid()) throw std::invalid_argument("sca member is not a permutation of [v]");

    VerifyReport rep;
    rep.kind = kind;
    enumerate_sequences(x.v, t, [&](const Sequence& s) {
        std::uint64_t got = 0;
        for (const auto& p : x.perms)
            if (permutation_covers(p, s)) ++got;
        const bool bad = exact ? got != lambda : got < lambda;
        if (bad) {
            ++rep.total_violations;
            if (rep.witnesses.size() < static_cast<size_t>(witness_cap))
                rep.witnesses.push_back({s, lambda, got});
        }
    });
    rep.pass = rep.total_violations == 0;
    return rep;
}

}  // namespace

VerifyReport verify_sca(const ScaSet& x, int t, int witness_cap) {
    return run_sequence_check(x, t, 1, false, VerifyKind::SCA, witness_cap);
}

VerifyReport verify_psca(const ScaSet& x, int t, std::uint64_t lambda, int witness_cap) {
    return run_sequence_check(x, t, lambda, true, VerifyKind::PSCA, witness_cap);
}

}  // namespace excov
