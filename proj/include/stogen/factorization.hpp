#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "stogen/divisibility.hpp"
#include "stogen/stoch_matrix.hpp"

namespace stogen {

// Factorization of 2x2 and 3x3 stochastic matrices into the explicit
// generating sets: for n = 2 the swap together with the segment from the
// identity to (1 1; 0 0); for n = 3 the transposition (1 2), plus the convex
// family spanned by the identity, two rank-deficient "collapse" vertices and
// the 3-cycle (1 3 2). Every decomposition reconstructs its input exactly,
// with at most 4 factors for n = 2 and at most 20 for n = 3.

struct SwapS2 {};  // (0 1; 1 0)

struct ElemS2 {  // (1 t; 0 1-t), t in [0,1]
    Rational t;
};

struct PermS3 {  // one of: identity, (1 2), (1 3 2)
    Permutation p;
};

struct ConvexS3 {  // (a 0 1-c; 1-a b 0; 0 1-b c), 1 >= a >= b >= c >= 0
    Rational a, b, c;
};

using GeneratorAtom = std::variant<SwapS2, ElemS2, PermS3, ConvexS3>;

std::size_t atom_dim(const GeneratorAtom& atom);
// Validates parameter ranges (ParameterOrderViolated for a bad ConvexS3,
// PreconditionViolated for an out-of-family PermS3 or ElemS2).
StochMatrix materialize(const GeneratorAtom& atom);

struct FactorList {
    std::size_t dim = 0;
    std::vector<GeneratorAtom> atoms;

    std::size_t length() const { return atoms.size(); }
    // Left-to-right product of the materialized atoms; the empty word is the
    // identity.
    StochMatrix product() const;
};

// Exact reconstruction check.
bool verify(const StochMatrix& a, const FactorList& f);

// At most 4 atoms over {swap, elem}; a single atom when the input lies in
// the convex segment, at most 2 when the lower-left entry is 1.
FactorList decompose_s2(const StochMatrix& a);

// True iff `a` admits no word of length <= 3 over the n = 2 generating set.
// Exhausts the reduced word shapes (the elementary segment is closed under
// products, and the swap is an involution), solving each shape exactly.
bool certify_s2_witness(const StochMatrix& a);
// The matching word itself, when one exists (exposed for the tests).
std::optional<FactorList> s2_word_up_to_three(const StochMatrix& a);

// Word of length <= 2 over {(1 2), (1 3 2)} whose product is to_matrix(p);
// the identity gets the empty word.
FactorList perm_table_s3(const Permutation& p);

struct ConvexMembership {
    Permutation pi, tau;  // act(pi, a, tau) equals the convex atom below
    Rational a, b, c;
};

// Searches all 36 permutation pairs for a sandwich placing `a` inside the
// convex family; returns the lexicographically first hit.
std::optional<ConvexMembership> convex_membership_s3(const StochMatrix& a);

// Convex coordinates of (a 0 1-c; 1-a b 0; 0 1-b c) over the four family
// vertices (identity, two collapse vertices, 3-cycle): weights
// (c, b-c, a-b, 1-a).
std::array<Rational, 4> convex_weights(const Rational& a, const Rational& b, const Rational& c);

// Decomposition of a matrix whose sign class is residual (admits no
// pattern-level progress pair): permutation words (<= 2 atoms), convex
// sandwiches (<= 5), or the two-factor expansion of the rank-one constant
// map (<= 6). Throws NotABaseCase otherwise.
FactorList decompose_base_case(const StochMatrix& a);

// Full n = 3 decomposition: division steps while a progress pair exists,
// each elementary cofactor rewritten as permutations around a convex atom
// with adjacent permutations merged, then the residual base case. At most 20
// atoms, verified exactly before returning.
FactorList decompose_s3(const StochMatrix& a);

struct ErrorBenchReport {
    std::size_t trials = 0;
    Rational eps;
    std::size_t factor_count = 0;
    Rational bound;     // factor_count * eps
    Rational max_dev;   // max induced 1-norm deviation observed
    Rational mean_dev;
    bool all_within = true;
};

// Perturbs every factor within induced 1-norm distance < eps (per column, an
// exact zero-sum mass move clamped to keep nonnegativity), multiplies out,
// and compares against the exact product. The deviation never exceeds
// factor_count * eps; the report records the observed maximum and mean.
ErrorBenchReport error_bound_bench(const StochMatrix& a, const FactorList& f,
                                   const Rational& eps, std::size_t trials,
                                   std::uint64_t seed);

}  // namespace stogen
