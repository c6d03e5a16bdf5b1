#pragma once

// Constructions of alpha-vectors whose convergent denominators coincide
// along a subsequence: the simple pair (alpha, 1-alpha), the congruence
// based general pair, its b*q right-hand-side extension, and the 3D
// triple (alpha_1, alpha_2, 1-alpha_1).
//
// A ConstructedTuple carries the denominator-coincidence ledger: entry l
// records the integer that is simultaneously q_l of alpha_2 and q_{k_l}
// of alpha_1 (and a denominator of alpha_3 in dimension 3).

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kron/cf.hpp"

#include "json.hpp"

namespace kron {

struct ConstructionSchedule {
    std::vector<std::size_t> k;                    // k_1 >= 2, gaps >= 2
    std::map<std::size_t, Int> free_coefficients;  // positions k_l+1 .. k_{l+1}-1
    Int min_coefficient{2};
    std::vector<Int> extension_b;                  // optional; one b_l per step

    void validate() const;

    static ConstructionSchedule from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct LedgerEntry {
    std::size_t l = 0;  // alpha_2-side index (primary key)
    Int q;              // the common denominator
    std::size_t alpha1_index = 0;              // index of q within alpha_1's q-sequence
    std::optional<std::size_t> alpha3_index;   // and within alpha_3's, for d = 3
};

struct ConstructedTuple {
    int dimension = 2;
    std::string kind;  // "simple" | "general" | "3d" | "extended"
    std::vector<CoefficientStream> streams;
    std::vector<LedgerEntry> ledger;
    std::map<std::size_t, Int> solved;  // alpha_1 positions -> congruence-solved value
    std::vector<Int> extension_b;       // b_l actually used ("extended" only)
    Int min_coefficient{2};

    nlohmann::json to_json() const;
    static ConstructedTuple from_json(const nlohmann::json& j);
};

// alpha_2 = 1 - alpha_1 for alpha_1 in (1/2,1); ledger records
// q_i^2 = q_{i+1}^1 for i = 1..ledger_depth.
ConstructedTuple simple_pair(const CoefficientStream& alpha1, std::size_t ledger_depth = 24);

// Sufficient condition for gcd(q_{k_{l+1}-1}, q_{k_l}) = 1 given the
// coefficient a_{k_{l+1}-1}: with b = gcd(q_kl, q_km2), c = q_kl/b,
// d = gcd(c, q_km3), e = c/d, it requires gcd(d, a_km1) = 1 and e | a_km1.
bool lemma_cond_holds(const Int& q_kl, const Int& q_km2, const Int& q_km3, const Int& a_km1);

// Smallest coefficient >= min_a that satisfies the condition above, if one
// exists (it does not when gcd(d, e) > 1).
std::optional<Int> suggest_admissible_coefficient(const Int& q_kl, const Int& q_km2,
                                                  const Int& q_km3, const Int& min_a);

// Smallest a >= min_a with a*q_m1 + q_m2 == rhs (mod modulus).
Int solve_congruence(const Int& q_m1, const Int& q_m2, const Int& modulus, const Int& rhs,
                     const Int& min_a);

ConstructedTuple general_construct(const CoefficientStream& alpha1_free,
                                   const ConstructionSchedule& schedule);

// Right-hand side b_l * q_{l-1}^2; requires b_l <= a_{k_{l+1}}^1 and
// a_{k_{l+1}}^1 / (2 b_l) > 2. With all b_l = 1 this is general_construct.
ConstructedTuple extended_construct(const CoefficientStream& alpha1_free,
                                    const ConstructionSchedule& schedule);

// Triple (alpha_1, alpha_2, 1-alpha_1); requires a_1^1 = 1.
ConstructedTuple construct_3d(const CoefficientStream& alpha1_free,
                              const ConstructionSchedule& schedule);

}  // namespace kron
