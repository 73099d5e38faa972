#include "excov/derive.hpp"

#include <algorithm>

namespace excov {

Array derive_array(const ScaSet& x, const Sequence& u) {
    const int v = x.v;
    const int a = static_cast<int>(u.elements.size());
    if (a <= 0 || a >= x.t)
        throw std::invalid_argument("deleted-symbol count a=" + std::to_string(a) + " must satisfy 0 < a < t=" + std::to_string(x.t));
    std::vector<bool> in_u(v, false);
    for (Symbol s : u.elements) {
        if (s >= v || in_u[s]) throw std::invalid_argument("u must consist of distinct symbols below v");
        in_u[s] = true;
    }

    std::vector<Symbol> kept;  // columns indexed by [v] \ u ascending
    for (int s = 0; s < v; ++s)
        if (!in_u[s]) kept.push_back(static_cast<Symbol>(s));

    std::vector<const Permutation*> covering;
    for (const auto& p : x.perms)
        if (permutation_covers(p, u)) covering.push_back(&p);
    if (covering.empty()) throw std::invalid_argument("no permutation covers u; derived array would be empty");

    Array out = make_array(static_cast<int>(covering.size()), static_cast<int>(kept.size()), a + 1);
    std::vector<int> pos(v);
    for (int r = 0; r < out.n_rows; ++r) {
        const Permutation& p = *covering[r];
        for (int i = 0; i < v; ++i) pos[p.image[i]] = i;
        for (int c = 0; c < out.n_cols; ++c) {
            int preceding = 0;
            for (Symbol del : u.elements)
                if (pos[del] < pos[kept[c]]) ++preceding;
            out.at(r, c) = static_cast<Symbol>(preceding);
        }
    }
    return out;
}

std::vector<Array> derive_family(const ScaSet& x, int a) {
    if (a <= 0 || a >= x.t) throw std::invalid_argument("derive_family requires 0 < a < t");
    std::vector<Array> family;
    Sequence u;
    std::vector<bool> used(x.v, false);
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == a) {
            family.push_back(derive_array(x, u));
            return;
        }
        for (int s = 0; s < x.v; ++s) {
            if (used[s]) continue;
            used[s] = true;
            u.elements.push_back(static_cast<Symbol>(s));
            self(self, depth + 1);
            u.elements.pop_back();
            used[s] = false;
        }
    };
    rec(rec, 0);
    return family;
}

MultiplicityVector row_multiplicities(const Array& c, int r) {
    MultiplicityVector m;
    m.counts.assign(c.v, 0);
    for (int col = 0; col < c.n_cols; ++col) ++m.counts[c.at(r, col)];
    return m;
}

std::map<MultiplicityVector, std::uint64_t> multiplicity_census(const std::vector<Array>& family) {
    std::map<MultiplicityVector, std::uint64_t> census;
    for (const auto& arr : family)
        for (int r = 0; r < arr.n_rows; ++r) ++census[row_multiplicities(arr, r)];
    return census;
}

BigRat constant_row_average(int t, int v, int a) {
    if (!(0 < a && a < t && t <= v)) throw std::invalid_argument("constant_row_average requires 0 < a < t <= v");
    using BigInt = boost::multiprecision::cpp_int;
    auto fact = [](int n) {
        BigInt f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    return BigRat(BigInt(a + 1) * fact(t) * fact(v - a), fact(v));
}

}  // namespace excov
