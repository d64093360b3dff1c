#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "stogen/divisibility.hpp"
#include "stogen/errors.hpp"
#include "stogen/sampling.hpp"

using namespace stogen;

namespace {

Rational r(const char* s) { return Rational::from_string(s); }

StochMatrix from_strings(const std::vector<std::vector<const char*>>& rows) {
    std::vector<std::vector<Rational>> grid;
    for (const auto& row : rows) {
        grid.emplace_back();
        for (const char* e : row) grid.back().push_back(r(e));
    }
    return StochMatrix::from_rows(grid);
}

StochMatrix eq8_instance() {
    return from_strings({{"0", "1/2", "1/2"}, {"1/2", "0", "1/2"}, {"1/2", "1/2", "0"}});
}

StochMatrix third_matrix() {
    return from_strings({{"1/3", "1/3", "1/3"}, {"1/3", "1/3", "1/3"}, {"1/3", "1/3", "1/3"}});
}

StochMatrix rs74_matrix() {
    return from_strings({{"0", "1/2", "1/2", "1/2"},
                         {"1/3", "0", "1/4", "1/4"},
                         {"1/3", "1/4", "0", "1/4"},
                         {"1/3", "1/4", "1/4", "0"}});
}

ColumnVector col(const std::vector<const char*>& es) {
    std::vector<Rational> v;
    for (const char* e : es) v.push_back(r(e));
    const std::size_t n = v.size();
    return ColumnVector(n, std::move(v));
}

// independent check against the permuted two-point elementary shape, by
// exhausting all permutation sandwiches and reading the parameter off the
// transformed matrix
bool elementary_oracle(const StochMatrix& c) {
    const std::size_t n = c.dim();
    const auto perms = Permutation::all(n);
    for (const auto& pi : perms)
        for (const auto& tau : perms) {
            const StochMatrix x = act(pi, c, tau);
            const Rational a = x.at(0, 1);
            if (a.sign() <= 0) continue;
            bool ok = true;
            for (std::size_t row = 0; row < n && ok; ++row)
                for (std::size_t k = 0; k < n && ok; ++k) {
                    Rational expect(0);
                    if (k == 0)
                        expect = row == 0 ? Rational(1) : Rational(0);
                    else if (k == 1)
                        expect = row == 0 ? a : (row == 1 ? Rational(1) - a : Rational(0));
                    else
                        expect = row == k ? Rational(1) : Rational(0);
                    if (x.at(row, k) != expect) ok = false;
                }
            if (ok) return true;
        }
    return false;
}

}  // namespace

TEST_CASE("epsilon on fixed pairs") {
    CHECK(epsilon(col({"1/2", "1/2"}), col({"1/2", "1/2"})) == Rational(1));
    CHECK(epsilon(col({"1/2", "1/4", "1/4"}), col({"0", "1/2", "1/2"})) == Rational(1, 2));
    CHECK(epsilon(col({"1", "0"}), col({"0", "1"})) == Rational(0));
    CHECK_THROWS_AS(epsilon(col({"1", "0"}), col({"1", "0", "0"})), DimMismatch);
    CHECK_THROWS_AS(epsilon(ColumnVector(2, {r("1/2"), r("1/3")}), col({"1", "0"})),
                    PreconditionViolated);
}

TEST_CASE("epsilon properties on random simplex pairs") {
    Rng64 rng(101);
    for (int it = 0; it < 2000; ++it) {
        const std::size_t n = 2 + rng.below(3);
        ColumnVector v = sample_simplex_column(n, 60, rng);
        ColumnVector w = sample_simplex_column(n, 60, rng);
        const Rational e = epsilon(v, w);
        CHECK(e >= Rational(0));
        CHECK(e <= Rational(1));
        CHECK((e == Rational(1)) == (v == w));
        if ((v.support_word() & w.support_word()) == w.support_word())
            CHECK(e.sign() > 0);
    }
}

TEST_CASE("find_progress_pair") {
    auto pp = find_progress_pair(third_matrix());
    REQUIRE(pp.has_value());
    CHECK(pp->i == 0);
    CHECK(pp->k == 1);
    CHECK_FALSE(find_progress_pair(eq8_instance()).has_value());
    CHECK_FALSE(find_progress_pair(StochMatrix::identity(3)).has_value());
    // constant map: columns equal but basis, so no progress pair
    CHECK_FALSE(
        find_progress_pair(from_strings({{"0", "0", "0"}, {"0", "0", "0"}, {"1", "1", "1"}}))
            .has_value());
}

TEST_CASE("division_step equal-columns example") {
    const StochMatrix a = from_strings({{"1/2", "1/2"}, {"1/2", "1/2"}});
    const DivisionStep st = division_step(a, 0, 1);
    CHECK(st.kind == StepCase::EqualColumns);
    CHECK(st.eps == Rational(1));
    CHECK(st.b == from_strings({{"1", "1/2"}, {"0", "1/2"}}));
    CHECK(st.c == from_strings({{"0", "0"}, {"1", "1"}}));
    CHECK(st.b * st.c == a);
    CHECK_FALSE(is_permutation_matrix(st.b));
    CHECK_FALSE(is_permutation_matrix(st.c));
}

TEST_CASE("division_step equal-columns on the flat 3x3 matrix") {
    const StochMatrix a = third_matrix();
    const DivisionStep st = division_step(a, 0, 1);
    CHECK(st.kind == StepCase::EqualColumns);
    // C = identity with column 1 sent to e_2
    CHECK(st.c == from_strings({{"0", "0", "0"}, {"1", "1", "0"}, {"0", "0", "1"}}));
    CHECK(st.b * st.c == a);
    CHECK(zero_count(st.b) > zero_count(a));
}

TEST_CASE("division_step strict case and preconditions") {
    // positive first column dominates everything
    const StochMatrix a =
        from_strings({{"1/2", "0", "1/3"}, {"1/4", "1/2", "1/3"}, {"1/4", "1/2", "1/3"}});
    const DivisionStep st = division_step(a, 0, 1);
    CHECK(st.kind == StepCase::StrictReduction);
    CHECK(st.b * st.c == a);
    CHECK(st.eps > Rational(0));
    CHECK(st.eps < Rational(1));
    CHECK(zero_count(st.b) > zero_count(a));
    CHECK(is_elementary_factor(st.c));

    CHECK_THROWS_AS(division_step(a, 1, 0), PreconditionViolated);  // no domination
    CHECK_THROWS_AS(division_step(a, 0, 0), PreconditionViolated);
}

TEST_CASE("division_step degenerate strict case collapses B to a permutation") {
    // a permutation matrix carrying one elementary column: the unique
    // zero-gaining step has B equal to the identity
    const StochMatrix a = from_strings({{"1/2", "0"}, {"1/2", "1"}});
    const DivisionStep st = division_step(a, 0, 1);
    CHECK(st.kind == StepCase::StrictReduction);
    CHECK(st.b == StochMatrix::identity(2));
    CHECK(st.b * st.c == a);
    CHECK(st.c == a);
    CHECK(zero_count(st.b) > zero_count(a));
    // classify still produces a non-unit witness for such inputs
    const Verdict v = classify(a);
    CHECK(v.kind == Verdict::Kind::Divisible);
    REQUIRE(v.witness.has_value());
    CHECK_FALSE(is_permutation_matrix(v.witness->b));
    CHECK_FALSE(is_permutation_matrix(v.witness->c));
    CHECK(v.witness->b * v.witness->c == a);
}

TEST_CASE("random division steps: exactness, elementary cofactor, zero gain") {
    Rng64 rng(2024);
    int checked = 0;
    while (checked < 400) {
        const std::size_t n = 2 + rng.below(3);
        const StochMatrix a = sample_stochastic(n, 36, rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == k) continue;
                const auto si = a.column(i).support_word();
                const auto sk = a.column(k).support_word();
                if ((si & sk) != sk) continue;
                const DivisionStep st = division_step(a, i, k);
                CHECK(st.b * st.c == a);
                CHECK(is_elementary_factor(st.c));
                CHECK(elementary_oracle(st.c));
                if (!a.column(i).is_basis_vector()) CHECK(zero_count(st.b) > zero_count(a));
                ++checked;
            }
    }
}

TEST_CASE("is_elementary_factor structural check against the oracle") {
    Rng64 rng(555);
    // random matrices, mostly non-elementary, must agree with the oracle
    for (int it = 0; it < 150; ++it) {
        const std::size_t n = 2 + rng.below(3);
        const StochMatrix a = sample_stochastic(n, 8, rng);
        CHECK(is_elementary_factor(a) == elementary_oracle(a));
    }
    CHECK_FALSE(is_elementary_factor(StochMatrix::identity(3)));
    CHECK_FALSE(is_elementary_factor(to_matrix(Permutation({1, 0, 2}))));
    // the a=1 factor: duplicated basis column
    CHECK(is_elementary_factor(from_strings({{"1", "1"}, {"0", "0"}})));
    CHECK(is_elementary_factor(
        from_strings({{"0", "0", "0"}, {"1", "0", "1"}, {"0", "1", "0"}})));
}

TEST_CASE("is_prime_s3 on the prime family") {
    CHECK(is_prime_s3(eq8_instance()));
    const std::vector<std::vector<const char*>> prime_forms[6] = {
        {{"0", "1/2", "1/2"}, {"1/2", "0", "1/2"}, {"1/2", "1/2", "0"}},
        {{"0", "2/3", "1/3"}, {"1/3", "0", "2/3"}, {"2/3", "1/3", "0"}},
        {{"0", "1/2", "1/3"}, {"1/2", "1/2", "0"}, {"1/2", "0", "2/3"}},
        {{"1/5", "0", "1/2"}, {"0", "1/2", "1/2"}, {"4/5", "1/2", "0"}},
        {{"1/2", "1/2", "0"}, {"0", "1/2", "1/2"}, {"1/2", "0", "1/2"}},
        {{"1/2", "1/2", "0"}, {"1/2", "0", "1/2"}, {"0", "1/2", "1/2"}},
    };
    for (const auto& form : prime_forms) CHECK(is_prime_s3(from_strings(form)));

    CHECK_FALSE(is_prime_s3(StochMatrix::identity(3)));
    CHECK_FALSE(is_prime_s3(third_matrix()));
    CHECK_THROWS_AS(is_prime_s3(StochMatrix::identity(2)), DimMismatch);
}

TEST_CASE("sign_indivisible in dimension 3") {
    CHECK(sign_indivisible(SignPattern::from_rows({"011", "101", "110"})) ==
          SignCheck::CertifiedIndivisible);
    // permutation patterns factor as unit*unit
    CHECK(sign_indivisible(SignPattern::identity(3)) == SignCheck::Inconclusive);
    // the constant map squares to itself with non-unit factors
    CHECK(sign_indivisible(SignPattern::from_rows({"000", "000", "111"})) ==
          SignCheck::Inconclusive);
    CHECK_THROWS_AS(sign_indivisible(SignPattern::identity(5)), DimTooLarge);
}

TEST_CASE("residual classes are exactly five") {
    const auto& classes = residual_classes_s3();
    REQUIRE(classes.size() == 5);
    const SignPattern refs[5] = {
        SignPattern::identity(3),
        SignPattern::from_rows({"011", "101", "110"}),
        SignPattern::from_rows({"000", "000", "111"}),
        SignPattern::from_rows({"001", "001", "110"}),
        SignPattern::from_rows({"000", "001", "110"}),
    };
    for (const auto& ref : refs) {
        const SignPattern canon = canonical_class(ref);
        CHECK(std::find(classes.begin(), classes.end(), canon) != classes.end());
    }
    // labels round-trip
    CHECK(residual_class_of(refs[0]) == ResidualClass::Permutation);
    CHECK(residual_class_of(refs[1]) == ResidualClass::Prime);
    CHECK(residual_class_of(refs[2]) == ResidualClass::ConstantMap);
    CHECK(residual_class_of(refs[3]) == ResidualClass::EqualPairMixed);
    CHECK(residual_class_of(refs[4]) == ResidualClass::EqualPairBasis);
    CHECK_THROWS_AS(residual_class_of(SignPattern::from_rows({"111", "111", "111"})),
                    NotABaseCase);
}

TEST_CASE("residual dichotomy: progress pair or residual, per pattern") {
    const auto& residual = residual_classes_s3();
    for (const auto& p : stochastic_compatible_patterns(3)) {
        const bool has_pair = pattern_progress_pair(p).has_value();
        const bool in_residual =
            std::find(residual.begin(), residual.end(), canonical_class(p)) != residual.end();
        CHECK(has_pair != in_residual);
    }
}

TEST_CASE("class census totals") {
    const auto census2 = class_census(2);
    std::size_t total2 = 0;
    for (const auto& [rep, size] : census2) total2 += size;
    CHECK(total2 == 9);

    const auto census3 = class_census(3);
    std::size_t total3 = 0;
    for (const auto& [rep, size] : census3) total3 += size;
    CHECK(total3 == 343);
    // the all-true pattern is alone in its orbit
    const SignPattern full = SignPattern::from_rows({"111", "111", "111"});
    CHECK(census3.at(canonical_class(full)) == 1);
    CHECK(canonical_class(full) == full);

    CHECK_THROWS_AS(class_census(5), DimTooLarge);
}

TEST_CASE("classify: dimension 2 is always divisible") {
    Rng64 rng(42);
    for (int it = 0; it < 300; ++it) {
        const StochMatrix a = sample_stochastic(2, 24, rng);
        const Verdict v = classify(a);
        REQUIRE(v.kind == Verdict::Kind::Divisible);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->b * v.witness->c == a);
        const int unit_factors = int(is_permutation_matrix(v.witness->b)) +
                                 int(is_permutation_matrix(v.witness->c));
        // a product of units is a unit, so non-units get unit-free witnesses
        CHECK(unit_factors == (is_permutation_matrix(a) ? 2 : 0));
    }
}

TEST_CASE("classify: complete in dimension 3") {
    Rng64 rng(43);
    for (int it = 0; it < 200; ++it) {
        const StochMatrix a = sample_stochastic(3, 24, rng);
        const Verdict v = classify(a);
        CHECK(v.kind != Verdict::Kind::Unknown);
        if (v.kind == Verdict::Kind::Divisible) {
            REQUIRE(v.witness.has_value());
            CHECK(v.witness->b * v.witness->c == a);
        } else {
            CHECK(is_prime_s3(a));
        }
    }
    // primes certify with a re-checkable permutation pair
    const Verdict v = classify(eq8_instance());
    REQUIRE(v.kind == Verdict::Kind::Indivisible);
    CHECK(v.detail == "s3_sign_class");
    REQUIRE(v.cert_pi.has_value());
    CHECK(pattern_act(*v.cert_pi, sign(eq8_instance()), *v.cert_tau) == prime_pattern_s3());
    // residual non-prime classes are divisible via equal-column steps
    const StochMatrix constant =
        from_strings({{"0", "0", "0"}, {"0", "0", "0"}, {"1", "1", "1"}});
    const Verdict c = classify(constant);
    CHECK(c.kind == Verdict::Kind::Divisible);
    CHECK(c.witness->b * c.witness->c == constant);
    const StochMatrix pair_basis =
        from_strings({{"0", "0", "0"}, {"0", "0", "1"}, {"1", "1", "0"}});
    const Verdict c5 = classify(pair_basis);
    CHECK(c5.kind == Verdict::Kind::Divisible);
    CHECK_FALSE(is_permutation_matrix(c5.witness->b));
    CHECK_FALSE(is_permutation_matrix(c5.witness->c));
    CHECK(c5.witness->b * c5.witness->c == pair_basis);
}

TEST_CASE("classify: permutations are trivially divisible") {
    const Verdict v = classify(to_matrix(Permutation({2, 0, 1})));
    CHECK(v.kind == Verdict::Kind::Divisible);
    CHECK(v.detail == "unit_pair");
}

TEST_CASE("classify: the registered 4x4 decomposition is reproduced") {
    const Verdict v = classify(rs74_matrix());
    REQUIRE(v.kind == Verdict::Kind::Divisible);
    CHECK(v.detail == "registered_decomposition");
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->b * v.witness->c == rs74_matrix());
    // the displayed factors themselves
    CHECK(v.witness->b == from_strings({{"1", "0", "0", "0"},
                                        {"0", "0", "1/2", "1/2"},
                                        {"0", "1/2", "0", "1/2"},
                                        {"0", "1/2", "1/2", "0"}}));
    CHECK(v.witness->c == from_strings({{"0", "1/2", "1/2", "1/2"},
                                        {"1/3", "1/2", "0", "0"},
                                        {"1/3", "0", "1/2", "0"},
                                        {"1/3", "0", "0", "1/2"}}));
    // a permuted copy is still recognized, with a transformed witness
    const Permutation pi({3, 1, 0, 2}), tau({1, 2, 0, 3});
    const StochMatrix moved = act(pi, rs74_matrix(), tau);
    const Verdict vm = classify(moved);
    REQUIRE(vm.kind == Verdict::Kind::Divisible);
    CHECK(vm.witness->b * vm.witness->c == moved);
}

TEST_CASE("division_residue ends without a progress pair") {
    Rng64 rng(77);
    for (int it = 0; it < 50; ++it) {
        const StochMatrix a = sample_stochastic(3, 60, rng);
        const StochMatrix res = division_residue(a);
        CHECK_FALSE(find_progress_pair(res).has_value());
        CHECK_NOTHROW(residual_class_of(sign(res)));
    }
}
