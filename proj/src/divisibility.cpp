#include "stogen/divisibility.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <set>
#include <thread>

#include "stogen/errors.hpp"

namespace stogen {

Rational epsilon(const ColumnVector& v, const ColumnVector& w) {
    if (v.dim() != w.dim()) throw DimMismatch("epsilon arguments have different dimensions");
    if (!v.is_simplex() || !w.is_simplex())
        throw PreconditionViolated("epsilon arguments must lie in the probability simplex");
    std::optional<Rational> best;
    for (std::size_t j = 0; j < v.dim(); ++j) {
        if (w[j].sign() <= 0) continue;
        Rational ratio = v[j] / w[j];
        if (!best || ratio < *best) best = ratio;
    }
    // w has at least one positive entry by the simplex invariant
    return *best;
}

namespace {

bool column_dominates(const StochMatrix& a, std::size_t i, std::size_t k) {
    const std::uint16_t si = a.column(i).support_word();
    const std::uint16_t sk = a.column(k).support_word();
    return (si & sk) == sk;
}

}  // namespace

std::optional<ProgressPair> find_progress_pair(const StochMatrix& a) {
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a.column(i).is_basis_vector()) continue;
        for (std::size_t k = 0; k < a.dim(); ++k) {
            if (k == i) continue;
            if (column_dominates(a, i, k)) return ProgressPair{i, k};
        }
    }
    return std::nullopt;
}

std::optional<ProgressPair> equal_columns_pair(const StochMatrix& a) {
    for (std::size_t i = 0; i + 1 < a.dim(); ++i)
        for (std::size_t k = i + 1; k < a.dim(); ++k)
            if (a.column(i) == a.column(k)) return ProgressPair{i, k};
    return std::nullopt;
}

DivisionStep division_step(const StochMatrix& a, std::size_t i, std::size_t k) {
    const std::size_t n = a.dim();
    if (i >= n || k >= n || i == k)
        throw PreconditionViolated("division step needs distinct column indices");
    if (!column_dominates(a, i, k))
        throw PreconditionViolated("sign-column i does not dominate sign-column k");

    const ColumnVector ci = a.column(i);
    const ColumnVector ck = a.column(k);
    const Rational eps = epsilon(ci, ck);

    auto basis = [n](std::size_t idx) {
        std::vector<Rational> e(n, Rational(0));
        e[idx] = Rational(1);
        return ColumnVector(n, std::move(e));
    };

    if (eps == Rational(1)) {
        // equal columns: C is the identity with column i replaced by e_k
        StochMatrix c = StochMatrix::identity(n).with_column(i, basis(k));
        StochMatrix b_default = a.with_column(i, basis(i));
        StochMatrix b =
            is_permutation_matrix(b_default) ? a.with_column(i, basis(k)) : b_default;
        return DivisionStep{std::move(b), std::move(c), i, k, eps, StepCase::EqualColumns};
    }

    // strict reduction: column i of B becomes (A e_i - eps A e_k) / (1 - eps)
    const Rational den = Rational(1) - eps;
    std::vector<Rational> newcol(n);
    for (std::size_t j = 0; j < n; ++j) newcol[j] = (ci[j] - eps * ck[j]) / den;
    StochMatrix b = a.with_column(i, ColumnVector(n, std::move(newcol)));

    std::vector<Rational> ccol(n, Rational(0));
    ccol[i] = den;
    ccol[k] = eps;
    StochMatrix c = StochMatrix::identity(n).with_column(i, ColumnVector(n, std::move(ccol)));
    return DivisionStep{std::move(b), std::move(c), i, k, eps, StepCase::StrictReduction};
}

std::optional<LeftDivisionStep> try_left_division(const StochMatrix& a, std::size_t i,
                                                  std::size_t k) {
    const std::size_t n = a.dim();
    if (i >= n || k >= n || i == k) return std::nullopt;
    std::optional<Rational> mu;
    for (std::size_t c = 0; c < n; ++c) {
        if (a.at(k, c).sign() <= 0) continue;
        if (a.at(i, c).sign() <= 0) return std::nullopt;  // row i does not dominate
        const Rational ratio = a.at(i, c) / a.at(k, c);
        if (!mu || ratio < *mu) mu = ratio;
    }
    if (!mu) return std::nullopt;  // row k is zero

    // W: row i loses mu * row k, row k is rescaled; column sums are kept
    auto rows = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        rows[i][c] = rows[i][c] - *mu * rows[k][c];
        rows[k][c] = rows[k][c] * (Rational(1) + *mu);
    }
    StochMatrix w = StochMatrix::from_rows(rows);

    const Rational coeff = *mu / (Rational(1) + *mu);
    std::vector<std::vector<Rational>> frows(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t j = 0; j < n; ++j) frows[j][j] = Rational(1);
    frows[i][k] = coeff;
    frows[k][k] = Rational(1) - coeff;
    StochMatrix f = StochMatrix::from_rows(frows);
    if (f * w != a) throw InternalInvariantViolation("left division step broke the product");
    return LeftDivisionStep{std::move(w), std::move(f), i, k, coeff};
}

const SignPattern& prime_pattern_s3() {
    static const SignPattern p = SignPattern::from_rows({"011", "101", "110"});
    return p;
}

bool is_prime_s3(const StochMatrix& a) {
    if (a.dim() != 3) throw DimMismatch("the prime characterization applies to 3x3 matrices");
    static const SignPattern canon = canonical_class(prime_pattern_s3());
    return canonical_class(sign(a)) == canon;
}

std::optional<ProgressPair> pattern_progress_pair(const SignPattern& p) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
        const std::uint16_t ci = p.col_word(i);
        if (std::popcount(ci) < 2) continue;
        for (std::size_t k = 0; k < p.dim(); ++k) {
            if (k == i) continue;
            const std::uint16_t ck = p.col_word(k);
            if ((ci & ck) == ck) return ProgressPair{i, k};
        }
    }
    return std::nullopt;
}

SignCheck sign_indivisible(const SignPattern& p, unsigned jobs) {
    const std::size_t n = p.dim();
    if (n >= 5) throw DimTooLarge(n, 4);

    const auto pats = stochastic_compatible_patterns(n);
    const std::size_t count = pats.size();
    std::vector<std::uint16_t> rows(count * n);
    std::vector<std::uint8_t> perm_flag(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        for (std::size_t j = 0; j < n; ++j) rows[idx * n + j] = pats[idx].row_word(j);
        perm_flag[idx] = pats[idx].is_permutation_pattern() ? 1 : 0;
    }
    std::array<std::uint16_t, SignPattern::kMaxDim> target{};
    for (std::size_t j = 0; j < n; ++j) target[j] = p.row_word(j);

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));

    std::atomic<bool> violating{false};
    const std::size_t lut_size = std::size_t{1} << n;

    auto scan = [&](std::size_t lo, std::size_t hi) {
        std::vector<std::uint16_t> lut(lut_size);
        for (std::size_t r = lo; r < hi && !violating.load(std::memory_order_relaxed); ++r) {
            const std::uint16_t* rrows = &rows[r * n];
            lut[0] = 0;
            for (std::size_t m = 1; m < lut_size; ++m) {
                const unsigned low = std::countr_zero(static_cast<unsigned>(m));
                lut[m] = static_cast<std::uint16_t>(lut[m & (m - 1)] | rrows[low]);
            }
            for (std::size_t q = 0; q < count; ++q) {
                const std::uint16_t* qrows = &rows[q * n];
                bool match = true;
                for (std::size_t j = 0; j < n; ++j) {
                    if (lut[qrows[j]] != target[j]) {
                        match = false;
                        break;
                    }
                }
                if (match && perm_flag[q] + perm_flag[r] != 1) {
                    violating.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        }
    };

    if (jobs <= 1) {
        scan(0, count);
    } else {
        std::vector<std::thread> workers;
        const std::size_t chunk = (count + jobs - 1) / jobs;
        for (unsigned t = 0; t < jobs; ++t) {
            const std::size_t lo = std::min<std::size_t>(t * chunk, count);
            const std::size_t hi = std::min<std::size_t>(lo + chunk, count);
            if (lo < hi) workers.emplace_back(scan, lo, hi);
        }
        for (auto& w : workers) w.join();
    }
    return violating.load() ? SignCheck::Inconclusive : SignCheck::CertifiedIndivisible;
}

namespace {

const std::array<SignPattern, 5>& residual_reference_patterns() {
    static const std::array<SignPattern, 5> refs = {
        canonical_class(SignPattern::identity(3)),
        canonical_class(prime_pattern_s3()),
        canonical_class(SignPattern::from_rows({"000", "000", "111"})),
        canonical_class(SignPattern::from_rows({"001", "001", "110"})),
        canonical_class(SignPattern::from_rows({"000", "001", "110"})),
    };
    return refs;
}

}  // namespace

const std::vector<SignPattern>& residual_classes_s3() {
    static const std::vector<SignPattern> classes = [] {
        std::set<SignPattern> residual;
        for (const auto& p : stochastic_compatible_patterns(3))
            if (!pattern_progress_pair(p)) residual.insert(canonical_class(p));
        return std::vector<SignPattern>(residual.begin(), residual.end());
    }();
    return classes;
}

const char* residual_class_name(ResidualClass c) {
    switch (c) {
        case ResidualClass::Permutation: return "permutation";
        case ResidualClass::Prime: return "prime";
        case ResidualClass::ConstantMap: return "constant_map";
        case ResidualClass::EqualPairMixed: return "equal_pair_mixed";
        case ResidualClass::EqualPairBasis: return "equal_pair_basis";
    }
    return "?";
}

ResidualClass residual_class_of(const SignPattern& p) {
    const SignPattern canon = canonical_class(p);
    const auto& refs = residual_reference_patterns();
    for (std::size_t idx = 0; idx < refs.size(); ++idx)
        if (canon == refs[idx]) return static_cast<ResidualClass>(idx);
    throw NotABaseCase("sign class admits a progress pair");
}

std::map<SignPattern, std::size_t> class_census(std::size_t dim) {
    if (dim > 4) throw DimTooLarge(dim, 4);
    std::map<SignPattern, std::size_t> census;
    for (const auto& p : stochastic_compatible_patterns(dim)) ++census[canonical_class(p)];
    return census;
}

bool is_elementary_factor(const StochMatrix& c) {
    const std::size_t n = c.dim();
    if (n < 2) return false;
    std::vector<std::size_t> basis_index;            // target row per basis column
    std::optional<std::pair<std::size_t, std::size_t>> mixed;  // support of the 2-point column
    for (std::size_t col = 0; col < n; ++col) {
        const ColumnVector v = c.column(col);
        const std::uint16_t supp = v.support_word();
        const int size = std::popcount(supp);
        if (size == 1) {
            basis_index.push_back(static_cast<std::size_t>(std::countr_zero(supp)));
        } else if (size == 2 && !mixed) {
            const auto lo = static_cast<std::size_t>(std::countr_zero(supp));
            const auto hi = static_cast<std::size_t>(std::countr_zero(
                static_cast<std::uint16_t>(supp & (supp - 1))));
            mixed = {lo, hi};
        } else {
            return false;
        }
    }
    std::uint16_t covered = 0;
    bool duplicate = false;
    for (std::size_t r : basis_index) {
        if (covered & (1u << r)) {
            if (duplicate) return false;  // at most one duplicated basis column
            duplicate = true;
        }
        covered |= static_cast<std::uint16_t>(1u << r);
    }
    if (mixed) {
        // two-point column with value a at one row, 1-a at the other,
        // a in (0,1); the other n-1 columns must be distinct basis vectors
        // missing exactly one index, and that index must carry one of the
        // two points.
        if (duplicate || basis_index.size() != n - 1) return false;
        const std::uint16_t missing =
            static_cast<std::uint16_t>(~covered & ((1u << n) - 1u));
        if (std::popcount(missing) != 1) return false;
        const auto w = static_cast<std::size_t>(std::countr_zero(missing));
        return w == mixed->first || w == mixed->second;
    }
    // all basis columns: the a = 1 factor has exactly one duplicated basis
    // direction (a plain permutation matrix is not elementary)
    return duplicate && std::popcount(covered) == static_cast<int>(n - 1);
}

StochMatrix division_residue(const StochMatrix& a) {
    StochMatrix cur = a;
    const std::size_t max_steps = cur.dim() * (cur.dim() - 1) + 1;
    for (std::size_t step = 0; step <= max_steps; ++step) {
        auto pp = find_progress_pair(cur);
        if (!pp) return cur;
        cur = division_step(cur, pp->i, pp->k).b;
    }
    throw InternalInvariantViolation("division loop failed to terminate");
}

namespace {

// Known four-dimensional decompositions, keyed up to the two-sided
// permutation action. Currently the single classical example of a divisible
// matrix whose sign class looks prime.
struct RegisteredDecomposition {
    StochMatrix a, b, c;
};

Rational frac(long n, long d) { return Rational(n, d); }

const std::vector<RegisteredDecomposition>& registered_decompositions_s4() {
    static const std::vector<RegisteredDecomposition> regs = [] {
        const Rational z(0), h(1, 2), t(1, 3), q(1, 4);
        StochMatrix a = StochMatrix::from_rows({
            {z, h, h, h},
            {t, z, q, q},
            {t, q, z, q},
            {t, q, q, z},
        });
        StochMatrix b = StochMatrix::from_rows({
            {Rational(1), z, z, z},
            {z, z, h, h},
            {z, h, z, h},
            {z, h, h, z},
        });
        StochMatrix c = StochMatrix::from_rows({
            {z, h, h, h},
            {t, h, z, z},
            {t, z, h, z},
            {t, z, z, h},
        });
        if (b * c != a)
            throw InternalInvariantViolation("registered decomposition does not verify");
        return std::vector<RegisteredDecomposition>{{std::move(a), std::move(b), std::move(c)}};
    }();
    return regs;
}

std::optional<FactorPair> registry_lookup(const StochMatrix& a) {
    if (a.dim() != 4) return std::nullopt;
    const auto perms = Permutation::all(4);
    for (const auto& reg : registered_decompositions_s4()) {
        if (canonical_class(sign(a)) != canonical_class(sign(reg.a))) continue;
        for (const auto& pi : perms)
            for (const auto& tau : perms)
                if (act(pi, a, tau) == reg.a) {
                    // a = pi^-1 B C tau^-1
                    FactorPair pair{to_matrix(pi.inverse()) * reg.b,
                                    reg.c * to_matrix(tau.inverse())};
                    if (pair.b * pair.c != a)
                        throw InternalInvariantViolation("transformed registry witness broke");
                    return pair;
                }
    }
    return std::nullopt;
}

// Non-unit witness for a strictly dominating pair whose textbook division
// step collapses B to a permutation: halving the subtraction coefficient
// keeps the support of column i intact, so neither factor is a permutation,
// at the price of not gaining a zero.
FactorPair scaled_division_witness(const StochMatrix& a, std::size_t i, std::size_t k,
                                   const Rational& eps) {
    const std::size_t n = a.dim();
    const Rational half_eps = eps / Rational(2);
    const Rational den = Rational(1) - half_eps;
    const ColumnVector ci = a.column(i), ck = a.column(k);
    std::vector<Rational> newcol(n);
    for (std::size_t j = 0; j < n; ++j) newcol[j] = (ci[j] - half_eps * ck[j]) / den;
    StochMatrix b = a.with_column(i, ColumnVector(n, std::move(newcol)));
    std::vector<Rational> ccol(n, Rational(0));
    ccol[i] = den;
    ccol[k] = half_eps;
    StochMatrix c = StochMatrix::identity(n).with_column(i, ColumnVector(n, std::move(ccol)));
    return FactorPair{std::move(b), std::move(c)};
}

}  // namespace

Verdict classify(const StochMatrix& a) {
    const std::size_t n = a.dim();
    Verdict v{Verdict::Kind::Unknown, "", std::nullopt, std::nullopt, std::nullopt};

    if (is_permutation_matrix(a)) {
        // trivially divisible: both factors are units
        v.kind = Verdict::Kind::Divisible;
        v.detail = "unit_pair";
        v.witness = FactorPair{a, StochMatrix::identity(n)};
        return v;
    }

    if (n == 3 && is_prime_s3(a)) {
        v.kind = Verdict::Kind::Indivisible;
        v.detail = "s3_sign_class";
        const SignPattern sp = sign(a);
        for (const auto& pi : Permutation::all(3)) {
            for (const auto& tau : Permutation::all(3))
                if (pattern_act(pi, sp, tau) == prime_pattern_s3()) {
                    v.cert_pi = pi;
                    v.cert_tau = tau;
                    return v;
                }
        }
        throw InternalInvariantViolation("prime class without a mapping to the prime pattern");
    }

    if (auto pp = find_progress_pair(a)) {
        DivisionStep st = division_step(a, pp->i, pp->k);
        if (!is_permutation_matrix(st.b) && !is_permutation_matrix(st.c)) {
            v.kind = Verdict::Kind::Divisible;
            v.detail = "division_step";
            v.witness = FactorPair{std::move(st.b), std::move(st.c)};
        } else {
            v.kind = Verdict::Kind::Divisible;
            v.detail = "scaled_division_step";
            v.witness = scaled_division_witness(a, pp->i, pp->k, st.eps);
        }
        return v;
    }

    if (auto eq = equal_columns_pair(a)) {
        DivisionStep st = division_step(a, eq->i, eq->k);
        v.kind = Verdict::Kind::Divisible;
        v.detail = "equal_columns_step";
        v.witness = FactorPair{std::move(st.b), std::move(st.c)};
        return v;
    }

    if (n <= 3)
        throw InternalInvariantViolation(
            "no verdict for a low-dimensional matrix; the classification is complete there");

    if (n == 4) {
        if (auto reg = registry_lookup(a)) {
            v.kind = Verdict::Kind::Divisible;
            v.detail = "registered_decomposition";
            v.witness = std::move(reg);
            return v;
        }
        if (sign_indivisible(sign(a)) == SignCheck::CertifiedIndivisible) {
            v.kind = Verdict::Kind::Indivisible;
            v.detail = "sign_brute_force";
            return v;
        }
        v.kind = Verdict::Kind::Unknown;
        v.detail = "sign_check_inconclusive";
        return v;
    }

    v.kind = Verdict::Kind::Unknown;
    v.detail = "unsupported_dimension";
    return v;
}

}  // namespace stogen
