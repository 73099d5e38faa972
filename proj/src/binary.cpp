#include "excov/binary.hpp"

#include <algorithm>
#include <bit>

namespace excov {

BigInt factorial_big(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt binary_row_count(int t) {
    if (t < 1) throw std::invalid_argument("binary_row_count requires t >= 1");
    return factorial_big(t + 1);
}

std::string WeightProfile::to_line() const {
    std::string s = std::to_string(t) + " " + std::to_string(k);
    for (const auto& xi : x) s += " " + xi.str();
    return s;
}

std::vector<WeightProfile> family_k_t_plus_1(int t) {
    if (t < 1) throw std::invalid_argument("family requires t >= 1");
    const int s = t / 2;
    const BigInt mid_sum = factorial_big(s) * factorial_big(t - s);
    auto rhs = [&](int i) { return factorial_big(i) * factorial_big(t - i); };

    std::vector<WeightProfile> family;
    for (BigInt xs = 0; xs <= mid_sum; ++xs) {
        WeightProfile p;
        p.t = t;
        p.k = t + 1;
        p.x.assign(t + 2, 0);
        p.x[s] = xs;
        for (int i = s; i <= t; ++i) p.x[i + 1] = rhs(i) - p.x[i];
        for (int i = s - 1; i >= 0; --i) p.x[i] = rhs(i) - p.x[i + 1];
        for (const auto& xi : p.x)
            if (xi < 0) throw std::logic_error("negative entry in propagated weight profile");
        family.push_back(std::move(p));
    }
    return family;
}

FamilyClasses family_isomorphism_classes(int t) {
    const auto family = family_k_t_plus_1(t);
    FamilyClasses out;
    out.profile_count = family.size();
    const int s = t / 2;
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::vector<BigInt> rev(family[i].x.rbegin(), family[i].x.rend());
        if (rev == family[i].x) {
            out.singletons.push_back(i);
            continue;
        }
        // the partner's index equals its middle entry
        const std::size_t j = static_cast<std::size_t>(rev[s].convert_to<std::uint64_t>());
        if (i < j) out.pairs.push_back({i, j});
    }
    out.class_count = out.singletons.size() + out.pairs.size();
    return out;
}

K2tResult k2t_feasibility(int t, std::uint64_t node_limit) {
    if (t < 1) throw std::invalid_argument("k2t_feasibility requires t >= 1");
    K2tResult result;

    // Layer 0 is the right-hand side; each unfolding inverts one (1+E).
    std::vector<std::vector<BigInt>> layers(t + 1);
    layers[0].resize(t + 1);
    for (int i = 0; i <= t; ++i) layers[0][i] = factorial_big(i) * factorial_big(t - i);

    bool aborted = false;
    auto rec = [&](auto&& self, int m) -> bool {
        if (m == t) return true;
        const auto& u = layers[m];
        const int len = static_cast<int>(u.size());
        // w_i = (-1)^i c + B_i with B_0 = 0, B_{i+1} = u_i - B_i.
        // Non-negativity: c >= -B_i at even i, c <= B_i at odd i.
        BigInt lo = 0, hi;
        bool hi_set = false;
        BigInt b = 0;
        for (int i = 1; i <= len; ++i) {
            b = u[i - 1] - b;
            if (i % 2 == 1) {
                if (!hi_set || b < hi) { hi = b; hi_set = true; }
            } else {
                if (-b > lo) lo = -b;
            }
        }
        if (!hi_set || lo > hi) return false;
        auto& w = layers[m + 1];
        w.resize(len + 1);
        for (BigInt c = lo; c <= hi; ++c) {
            ++result.nodes;
            if (node_limit && result.nodes > node_limit) { aborted = true; return false; }
            w[0] = c;
            bool ok = true;
            for (int i = 0; i < len; ++i) {
                w[i + 1] = u[i] - w[i];
                if (w[i + 1] < 0) { ok = false; break; }  // guarded by the interval, kept as a check
            }
            if (!ok) continue;
            if (self(self, m + 1)) return true;
            if (aborted) return false;
        }
        return false;
    };

    const bool found = rec(rec, 0);
    if (aborted) {
        result.certificate = "node limit reached before the search space was exhausted";
        return result;
    }
    if (!found) {
        result.feasible = false;
        result.exhausted = true;
        result.certificate =
            "search exhausted: every layer seed ranges over an exact integer interval derived from "
            "alternating partial sums, and all intervals emptied";
        return result;
    }
    result.feasible = true;
    result.exhausted = true;
    WeightProfile p;
    p.t = t;
    p.k = 2 * t;
    p.x = layers[t];
    result.solution = std::move(p);
    result.certificate = "first solution in ascending layer-seed order";
    return result;
}

Array materialize(const WeightProfile& p) {
    if (p.t > 6) throw std::invalid_argument("materialize is limited to t <= 6");
    if (static_cast<int>(p.x.size()) != p.k + 1) throw std::invalid_argument("profile length mismatch");
    BigInt total = 0;
    for (int m = 0; m < (1 << p.k); ++m) total += p.x[std::popcount(static_cast<unsigned>(m))];
    if (total > 1'000'000) throw std::invalid_argument("materialized array too large");

    Array a = make_array(total.convert_to<int>(), p.k, 2);
    int r = 0;
    for (int m = 0; m < (1 << p.k); ++m) {
        const int copies = p.x[std::popcount(static_cast<unsigned>(m))].convert_to<int>();
        for (int c = 0; c < copies; ++c) {
            for (int j = 0; j < p.k; ++j) a.at(r, j) = static_cast<Symbol>((m >> (p.k - 1 - j)) & 1);
            ++r;
        }
    }
    a.sort_rows();
    return a;
}

}  // namespace excov
