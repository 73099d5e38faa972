// Binary excess coverage arrays: the forced (t+1)! row count, the complete
// k = t+1 family described by weight profiles, and the k = 2t weight-uniform
// integer feasibility problem.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "excov/core.hpp"

namespace excov {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial_big(int n);

// N = (t+1)! for any binary array covering every t-way interaction exactly
// mu(T) times.
BigInt binary_row_count(int t);

// x[i] = number of times each weight-i vector of {0,1}^k appears as a row.
struct WeightProfile {
    int t = 0;
    int k = 0;
    std::vector<BigInt> x;

    bool operator==(const WeightProfile&) const = default;
    std::string to_line() const;  // "t k x_0 x_1 ... x_k"
};

// All floor(t/2)! * ceil(t/2)! + 1 weight profiles on k = t+1 columns, in
// increasing order of the middle value.
std::vector<WeightProfile> family_k_t_plus_1(int t);

struct FamilyClasses {
    std::uint64_t profile_count = 0;
    std::uint64_t class_count = 0;
    std::vector<std::size_t> singletons;                    // self-complementary profiles
    std::vector<std::pair<std::size_t, std::size_t>> pairs; // complement-paired profiles
};

// Complementation x -> reversed(x): odd t leaves every profile fixed; even t
// pairs all but one.
FamilyClasses family_isomorphism_classes(int t);

struct K2tResult {
    bool feasible = false;
    bool exhausted = false;  // search ran to completion under sound bounds
    std::optional<WeightProfile> solution;
    std::string certificate;  // how the verdict was established
    std::uint64_t nodes = 0;
};

// Non-negative integer solutions to the banded system
//   sum_j C(t,j) x_{i+j} = i!(t-i)!,  0 <= i <= t,
// over x_0..x_2t. The search peels one (1+E) factor at a time: each layer is
// determined by one non-negative seed bounded by exact alternating sums, so
// the tree has t integer choices and exhausting it is a sound infeasibility
// proof. node_limit 0 means unlimited.
K2tResult k2t_feasibility(int t, std::uint64_t node_limit = 0);

// Explicit array with x[i] copies of every weight-i vector. Row counts grow
// as (t+1)!, so this is provided for t <= 6 only.
Array materialize(const WeightProfile& p);

}  // namespace excov
