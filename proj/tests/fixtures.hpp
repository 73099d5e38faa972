// Shared test data: the published example arrays.
#pragma once

#include <vector>

#include "excov/core.hpp"

namespace excov::test {

inline Array array_from(const std::vector<std::vector<int>>& rows, int v) {
    Array a = make_array(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()), v);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < rows[r].size(); ++c) a.at(static_cast<int>(r), static_cast<int>(c)) = static_cast<Symbol>(rows[r][c]);
    return a;
}

// The 6x4 binary array: two all-zero rows plus the weight-3 vectors.
inline Array fig_cax_6_2_4_2() {
    return array_from({{0, 0, 0, 0},
                       {0, 0, 0, 0},
                       {0, 1, 1, 1},
                       {1, 0, 1, 1},
                       {1, 1, 0, 1},
                       {1, 1, 1, 0}},
                      2);
}

// The unique 42x5 array over six symbols.
inline Array fig_cax_42_2_5_6() {
    return array_from(
        {{0, 0, 0, 0, 1}, {0, 0, 0, 2, 0}, {0, 1, 2, 1, 2}, {0, 2, 3, 3, 4}, {0, 3, 5, 0, 0},
         {0, 4, 4, 5, 3}, {0, 5, 1, 4, 5}, {3, 0, 3, 3, 3}, {3, 1, 5, 2, 5}, {3, 2, 2, 5, 0},
         {3, 3, 1, 3, 2}, {3, 3, 3, 4, 3}, {3, 4, 0, 0, 4}, {3, 5, 4, 1, 1}, {1, 0, 2, 0, 5},
         {1, 1, 1, 5, 1}, {1, 1, 3, 1, 1}, {1, 2, 0, 4, 2}, {1, 3, 4, 2, 4}, {1, 4, 1, 1, 0},
         {1, 5, 5, 3, 3}, {4, 0, 5, 5, 2}, {4, 1, 4, 4, 4}, {4, 2, 1, 2, 1}, {4, 3, 0, 1, 3},
         {4, 4, 2, 4, 4}, {4, 4, 4, 3, 5}, {4, 5, 3, 0, 0}, {2, 0, 1, 1, 4}, {2, 1, 0, 3, 0},
         {2, 2, 2, 2, 3}, {2, 2, 4, 0, 2}, {2, 3, 3, 5, 5}, {2, 4, 5, 4, 1}, {2, 5, 2, 2, 2},
         {5, 0, 4, 4, 0}, {5, 1, 1, 0, 3}, {5, 2, 5, 1, 5}, {5, 3, 2, 3, 1}, {5, 4, 3, 2, 2},
         {5, 5, 0, 5, 5}, {5, 5, 5, 5, 4}},
        6);
}

// The 42x4 array whose every column deletion recreates an orthogonal array.
inline Array fig_cax_42_2_4_6() {
    return array_from(
        {{0, 0, 0, 0}, {0, 0, 1, 1}, {0, 1, 0, 2}, {0, 2, 2, 0}, {0, 3, 3, 4}, {0, 4, 4, 3},
         {0, 5, 5, 5}, {3, 0, 5, 3}, {3, 1, 1, 4}, {3, 2, 4, 2}, {3, 3, 2, 5}, {3, 3, 3, 3},
         {3, 4, 0, 0}, {3, 5, 3, 1}, {1, 0, 2, 2}, {1, 1, 1, 1}, {1, 1, 3, 3}, {1, 2, 0, 1},
         {1, 3, 5, 0}, {1, 4, 1, 5}, {1, 5, 4, 4}, {4, 0, 0, 4}, {4, 1, 4, 0}, {4, 2, 3, 5},
         {4, 3, 1, 2}, {4, 4, 4, 4}, {4, 4, 5, 1}, {4, 5, 2, 3}, {2, 0, 4, 5}, {2, 1, 2, 1},
         {2, 2, 2, 2}, {2, 2, 5, 4}, {2, 3, 0, 3}, {2, 4, 3, 2}, {2, 5, 1, 0}, {5, 0, 3, 0},
         {5, 1, 5, 5}, {5, 2, 1, 3}, {5, 3, 4, 1}, {5, 4, 2, 4}, {5, 5, 0, 5}, {5, 5, 5, 2}},
        6);
}

// The 6x6 Latin square with the maximal transversal count.
inline std::vector<std::vector<int>> fig_latin_6() {
    return {{0, 2, 3, 5, 4, 1},
            {2, 3, 0, 4, 1, 5},
            {1, 0, 4, 3, 5, 2},
            {3, 5, 2, 1, 0, 4},
            {5, 4, 1, 0, 2, 3},
            {4, 1, 5, 2, 3, 0}};
}

}  // namespace excov::test
