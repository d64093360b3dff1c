#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stogen/stoch_matrix.hpp"

namespace stogen {

// Divisibility analysis for column-stochastic matrices: the constructive
// one-column division step, the complete three-dimensional prime
// characterization by sign class, and brute-force sign-semigroup
// certificates for n <= 4.

// min over the support of w of v_j / w_j, for simplex vectors of equal
// dimension. Always in [0,1]; equals 1 iff v == w; positive whenever the
// support of w is contained in the support of v.
Rational epsilon(const ColumnVector& v, const ColumnVector& w);

struct ProgressPair {
    std::size_t i, k;
};

// Lexicographically smallest pair (i,k), i != k, whose sign-column i
// dominates sign-column k entrywise while column i is not a standard basis
// vector. Such a pair guarantees a division step that strictly increases
// the zero count.
std::optional<ProgressPair> find_progress_pair(const StochMatrix& a);

// Smallest pair (i,k), i < k, with exactly equal columns. Used for
// non-progressing equal-column division witnesses.
std::optional<ProgressPair> equal_columns_pair(const StochMatrix& a);

enum class StepCase { EqualColumns, StrictReduction };

// One division step A = B*C. B differs from A in at most column i; C is an
// elementary factor supported on columns {i,k}.
struct DivisionStep {
    StochMatrix b, c;
    std::size_t i, k;
    Rational eps;
    StepCase kind;
};

// Requires i != k and sign-column i of `a` dominating sign-column k.
//
// Equal-columns case (eps == 1): C is the identity with column i replaced
// by e_k, and B's column i becomes e_i, or e_k when the e_i variant would
// make B a permutation matrix. Strict case (eps < 1): B's column i becomes
// (A e_i - eps * A e_k) / (1 - eps) and C is the identity with column i
// replaced by (1-eps) e_i + eps e_k.
//
// When column i of `a` is not a basis vector the step strictly increases
// the zero count. Both factors reconstruct `a` exactly. In the strict case
// B can degenerate to a permutation matrix for inputs that are themselves a
// permutation of an elementary factor; see classify() for the repaired
// witness used in that situation.
DivisionStep division_step(const StochMatrix& a, std::size_t i, std::size_t k);

// Mirrored division: peels an elementary factor off the LEFT. When row i of
// `a` dominates row k at ratio mu = min over the support of row k of
// row_i / row_k, the factor F = identity + a*(e_i e_k^T - e_k e_k^T) with
// a* = mu/(1+mu) satisfies a = F * W exactly, where W keeps every zero of
// `a` and gains at least one new zero in row i. Returns nothing when row k
// is zero or not dominated.
struct LeftDivisionStep {
    StochMatrix w, f;  // a == f * w
    std::size_t i, k;
    Rational coeff;  // the a* above
};
std::optional<LeftDivisionStep> try_left_division(const StochMatrix& a, std::size_t i,
                                                  std::size_t k);

// The zero-diagonal all-positive-off-diagonal 3x3 pattern whose sign class
// is exactly the set of indivisible elements in dimension 3.
const SignPattern& prime_pattern_s3();

// True iff the sign class of `a` is the prime class above. Complete for
// n = 3: a 3x3 stochastic matrix is indivisible iff this returns true.
bool is_prime_s3(const StochMatrix& a);

enum class SignCheck { CertifiedIndivisible, Inconclusive };

// Brute-force certificate at the sign level: certified iff every
// factorization of `p` into column-nonzero patterns has exactly one
// permutation-pattern factor. Exhausts all ((2^n-1)^n)^2 ordered pairs with
// an early exit on the first violating pair; for n = 4 this scans ~2.6e9
// pairs (tens of seconds to minutes on one core; the scan is partitioned
// across `jobs` workers, 0 = auto). For n >= 4 Inconclusive does NOT imply
// divisible.
SignCheck sign_indivisible(const SignPattern& p, unsigned jobs = 0);

// Pattern-level progress pair (column i dominating column k, column i not a
// single-bit column).
std::optional<ProgressPair> pattern_progress_pair(const SignPattern& p);

// The canonical representatives (sorted) of the sign classes of dimension 3
// that admit no pattern-level progress pair. These are exactly the base
// cases of the three-dimensional decomposition; there are five of them.
const std::vector<SignPattern>& residual_classes_s3();

// Semantic labels for the five residual classes.
enum class ResidualClass {
    Permutation = 0,
    Prime = 1,
    ConstantMap = 2,      // one all-ones row: the rank-one constant map
    EqualPairMixed = 3,   // two equal basis columns plus a two-point column
    EqualPairBasis = 4,   // two equal basis columns plus another basis column
};
const char* residual_class_name(ResidualClass c);
// Throws NotABaseCase when the class of `p` is not residual.
ResidualClass residual_class_of(const SignPattern& p);

// Partition of all column-nonzero patterns of the given dimension into
// row/column-permutation orbits: canonical representative -> orbit size.
std::map<SignPattern, std::size_t> class_census(std::size_t dim);

// True iff `c` equals some permutation of the two-point elementary factor
// (1 a; 0 1-a) + identity block, a in (0,1].
bool is_elementary_factor(const StochMatrix& c);

// Runs division steps until no progress pair remains; returns the terminal
// matrix.
StochMatrix division_residue(const StochMatrix& a);

struct FactorPair {
    StochMatrix b, c;
};

struct Verdict {
    enum class Kind { Divisible, Indivisible, Unknown };
    Kind kind;
    // Tag naming how the verdict was reached: "unit_pair", "division_step",
    // "scaled_division_step", "equal_columns_step",
    // "registered_decomposition", "s3_sign_class", "sign_brute_force",
    // "sign_check_inconclusive", "unsupported_dimension".
    std::string detail;
    std::optional<FactorPair> witness;                    // Divisible only
    std::optional<Permutation> cert_pi, cert_tau;         // s3 certificate
};

// Decides divisibility. Never Unknown for n <= 3 (complete classification);
// for n == 4 falls back to a registry of known decompositions and the
// brute-force sign certificate, otherwise Unknown. Divisible witnesses
// always multiply back exactly and are non-trivial in the sense that the
// number of permutation factors among (B, C) is 0, or 2 when the input is
// itself a permutation matrix.
Verdict classify(const StochMatrix& a);

}  // namespace stogen
