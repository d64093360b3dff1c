#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "stogen/errors.hpp"
#include "stogen/monoid.hpp"
#include "stogen/sign_pattern.hpp"

using namespace stogen;

namespace {

const auto prod = [](const SignPattern& a, const SignPattern& b) { return pattern_product(a, b); };
using PatternMonoid = FiniteMonoid<SignPattern, decltype(prod)>;

// the 4-element boolean 2x2 subsemigroup: identity, two triangular-ish
// generators and the all-ones absorbing element
SignPattern b_id() { return SignPattern::identity(2); }
SignPattern b_x() { return SignPattern::from_rows({"11", "10"}); }
SignPattern b_y() { return SignPattern::from_rows({"11", "01"}); }
SignPattern b_j() { return SignPattern::from_rows({"11", "11"}); }

std::vector<SignPattern> boolean_family() { return {b_id(), b_x(), b_y(), b_j()}; }

bool contains(const std::vector<SignPattern>& v, const SignPattern& p) {
    return std::find(v.begin(), v.end(), p) != v.end();
}

}  // namespace

TEST_CASE("closure of the identity alone") {
    auto res = closure<SignPattern>({b_id()}, prod, 10);
    CHECK(res.elements.size() == 1);
    CHECK(res.elements[0] == b_id());
}

TEST_CASE("closure of the boolean building blocks is the full semigroup") {
    auto res = closure<SignPattern>({b_id(), b_x(), b_y()}, prod, 100);
    CHECK(res.elements.size() == 4);
    for (const auto& e : boolean_family()) CHECK(contains(res.elements, e));
    // recorded witness words multiply out exactly
    const std::vector<SignPattern> gens = {b_id(), b_x(), b_y()};
    for (std::size_t i = 0; i < res.elements.size(); ++i) {
        SignPattern acc = gens[res.words[i][0]];
        for (std::size_t w = 1; w < res.words[i].size(); ++w)
            acc = prod(acc, gens[res.words[i][w]]);
        CHECK(acc == res.elements[i]);
    }
}

TEST_CASE("closure respects the cap") {
    CHECK_THROWS_AS(closure<SignPattern>({b_id(), b_x(), b_y()}, prod, 2), CapExceeded);
}

TEST_CASE("closure is idempotent and monotone") {
    auto once = closure<SignPattern>({b_x(), b_y()}, prod, 100);
    auto twice = closure<SignPattern>(once.elements, prod, 100);
    CHECK(once.elements.size() == twice.elements.size());
    for (const auto& e : once.elements) CHECK(contains(twice.elements, e));
    // adding a generator can only grow the closure
    auto more = closure<SignPattern>({b_x(), b_y(), b_id()}, prod, 100);
    CHECK(more.elements.size() >= once.elements.size());
}

TEST_CASE("the full 2x2 sign semigroup has 9 elements and is closed") {
    auto pats = stochastic_compatible_patterns(2);
    CHECK(pats.size() == 9);
    auto res = closure<SignPattern>(pats, prod, 100);
    CHECK(res.elements.size() == 9);
}

TEST_CASE("boolean family: units, indivisibles, building blocks") {
    PatternMonoid s(boolean_family(), prod, b_id());
    const auto units = s.units();
    REQUIRE(units.size() == 1);
    CHECK(units[0] == b_id());

    CHECK(s.indivisibles().empty());

    const auto blocks = s.building_blocks();
    CHECK(blocks.size() == 3);
    CHECK(contains(blocks, b_id()));
    CHECK(contains(blocks, b_x()));
    CHECK(contains(blocks, b_y()));
    CHECK_FALSE(contains(blocks, b_j()));
}

TEST_CASE("a two-element group: everything is a unit, nothing indivisible") {
    const SignPattern id = SignPattern::identity(2);
    const SignPattern swap = SignPattern::from_rows({"01", "10"});
    PatternMonoid s({id, swap}, prod, id);
    CHECK(s.units().size() == 2);
    CHECK(s.indivisibles().empty());
    // in a group every element is a building block
    CHECK(s.building_blocks().size() == 2);
}

TEST_CASE("construction validates closure and the identity") {
    CHECK_THROWS_AS(PatternMonoid({b_x(), b_y()}, prod, b_x()), PreconditionViolated);
    CHECK_THROWS_AS(PatternMonoid({b_id(), b_x()}, prod, b_id()), PreconditionViolated);
}

TEST_CASE("word lengths over the boolean building blocks") {
    PatternMonoid s(boolean_family(), prod, b_id());
    const std::vector<SignPattern> gens = {b_id(), b_x(), b_y()};
    CHECK(s.word_length(gens, b_x()) == 1);
    CHECK(s.word_length(gens, b_id()) == 1);
    CHECK(s.word_length(gens, b_j()) == 2);  // the absorbing element needs two factors
    CHECK(s.max_word_length(gens) == 2);

    // over {x} alone the identity is unreachable
    const std::vector<SignPattern> only_x = {b_x()};
    CHECK_FALSE(s.word_length(only_x, b_id()).has_value());
    CHECK_FALSE(s.max_word_length(only_x).has_value());
    CHECK(s.word_length(only_x, b_j()) == 2);

    CHECK_THROWS_AS(s.word_length({SignPattern::from_rows({"10", "10"})}, b_id()),
                    PreconditionViolated);
}

TEST_CASE("the 3x3 sign semigroup: units are the permutation patterns") {
    auto pats = stochastic_compatible_patterns(3);
    CHECK(pats.size() == 343);
    PatternMonoid s(pats, prod, SignPattern::identity(3));

    const auto units = s.units();
    CHECK(units.size() == 6);
    for (const auto& u : units) CHECK(u.is_permutation_pattern());

    // indivisibles form exactly the orbit of the zero-diagonal pattern
    const auto indiv = s.indivisibles();
    CHECK(indiv.size() == 6);
    const SignPattern prime = SignPattern::from_rows({"011", "101", "110"});
    const SignPattern canon = canonical_class(prime);
    for (const auto& p : indiv) CHECK(canonical_class(p) == canon);
    CHECK(contains(indiv, prime));

    // every indivisible is a building block
    const auto blocks = s.building_blocks();
    for (const auto& p : indiv) CHECK(contains(blocks, p));
}
