// Building excess coverage arrays from sequence covering arrays by deleting
// a set of symbols, plus the family censuses that construction supports.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "excov/core.hpp"

namespace excov {

using BigRat = boost::multiprecision::cpp_rational;

// Rows are the permutations of x covering u; columns are the symbols of
// [v] \ u in increasing order; the entry is the number of deleted symbols
// preceding the column's symbol in that permutation.
Array derive_array(const ScaSet& x, const Sequence& u);

// One array per ordered choice of a distinct symbols, in lexicographic order
// of the tuple u. |family| = v!/(v-a)!.
std::vector<Array> derive_family(const ScaSet& x, int a);

// Counts rows by multiplicity vector across a whole family. Keys are the
// exact (m_0, ..., m_a) tuples.
std::map<MultiplicityVector, std::uint64_t> multiplicity_census(const std::vector<Array>& family);

// (a+1) * t! * (v-a)! / v! as an exact rational.
BigRat constant_row_average(int t, int v, int a);

// Per-row multiplicity vector of an array row over its full alphabet.
MultiplicityVector row_multiplicities(const Array& c, int r);

}  // namespace excov
