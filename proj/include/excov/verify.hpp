// Decision procedures for CA, CA_X, exact CA_X, OA, SCA and PSCA.
#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "excov/core.hpp"

namespace excov {

enum class VerifyKind { CA, CAX, CAX_EXACT, OA, SCA, PSCA };

struct Witness {
    std::variant<Interaction, Sequence> subject;
    std::uint64_t required;  // for CA/SCA this is the minimum, otherwise the exact target
    std::uint64_t observed;
};

struct VerifyReport {
    VerifyKind kind;
    bool pass = false;
    std::vector<Witness> witnesses;       // capped; sorted for determinism
    std::uint64_t total_violations = 0;   // uncapped count
};

inline constexpr int kDefaultWitnessCap = 100;

// pass iff every t-way interaction T is covered >= mu(T) times, or exactly
// mu(T) times when exact is set.
VerifyReport verify_cax(const Array& c, int t, bool exact, int witness_cap = kDefaultWitnessCap);

// pass iff every t-way interaction is covered at least once.
VerifyReport verify_ca(const Array& c, int t, int witness_cap = kDefaultWitnessCap);

// pass iff every t-way interaction is covered exactly once.
VerifyReport verify_oa(const Array& c, int t, int witness_cap = kDefaultWitnessCap);

// pass iff every sequence of t distinct symbols is covered by >= 1 permutation.
VerifyReport verify_sca(const ScaSet& x, int t, int witness_cap = kDefaultWitnessCap);

// pass iff every sequence of t distinct symbols is covered by exactly lambda
// permutations.
VerifyReport verify_psca(const ScaSet& x, int t, std::uint64_t lambda, int witness_cap = kDefaultWitnessCap);

// Reference implementation: per-interaction scan, no per-pair count matrix.
// Kept serial and simple; the parallel pair-matrix path is checked against it.
VerifyReport verify_cax_reference(const Array& c, int t, bool exact, int witness_cap = kDefaultWitnessCap);

}  // namespace excov
