#include "stogen/factorization.hpp"

#include <algorithm>

#include "stogen/errors.hpp"
#include "stogen/sampling.hpp"

namespace stogen {

namespace {

const Rational kZero(0), kOne(1);

bool is_swap_s2_allowed(const Permutation& p) {
    return p.dim() == 3 &&
           (p.is_identity() || p.images() == std::vector<std::uint32_t>{1, 0, 2} ||
            p.images() == std::vector<std::uint32_t>{2, 0, 1});
}

}  // namespace

std::size_t atom_dim(const GeneratorAtom& atom) {
    return std::holds_alternative<SwapS2>(atom) || std::holds_alternative<ElemS2>(atom) ? 2 : 3;
}

StochMatrix materialize(const GeneratorAtom& atom) {
    if (std::holds_alternative<SwapS2>(atom)) {
        return StochMatrix::from_rows({{kZero, kOne}, {kOne, kZero}});
    }
    if (const auto* e = std::get_if<ElemS2>(&atom)) {
        if (e->t < kZero || e->t > kOne)
            throw PreconditionViolated("elementary parameter must lie in [0,1]");
        return StochMatrix::from_rows({{kOne, e->t}, {kZero, kOne - e->t}});
    }
    if (const auto* p = std::get_if<PermS3>(&atom)) {
        if (!is_swap_s2_allowed(p->p))
            throw PreconditionViolated(
                "permutation atom must be the identity, (1 2) or (1 3 2)");
        return to_matrix(p->p);
    }
    const auto& c = std::get<ConvexS3>(atom);
    if (c.a > kOne || c.c < kZero || c.a < c.b || c.b < c.c)
        throw ParameterOrderViolated("convex atom needs 1 >= a >= b >= c >= 0");
    return StochMatrix::from_rows({{c.a, kZero, kOne - c.c},
                                   {kOne - c.a, c.b, kZero},
                                   {kZero, kOne - c.b, c.c}});
}

StochMatrix FactorList::product() const {
    StochMatrix acc = StochMatrix::identity(dim);
    for (const auto& atom : atoms) {
        if (atom_dim(atom) != dim)
            throw DimMismatch("factor list contains an atom of the wrong dimension");
        acc = acc * materialize(atom);
    }
    return acc;
}

bool verify(const StochMatrix& a, const FactorList& f) {
    if (a.dim() != f.dim) throw DimMismatch("factor list dimension does not match the matrix");
    return f.product() == a;
}

FactorList decompose_s2(const StochMatrix& m) {
    if (m.dim() != 2) throw DimMismatch("decompose_s2 needs a 2x2 matrix");
    // parameterization: lower-left entry a, upper-right entry b
    const Rational a = m.at(1, 0);
    const Rational b = m.at(0, 1);

    FactorList out{2, {}};
    auto push_swap = [&] { out.atoms.emplace_back(SwapS2{}); };
    auto push_elem = [&](const Rational& t) {
        if (!t.is_zero()) out.atoms.emplace_back(ElemS2{t});  // elem(0) is the identity
    };

    if (a.is_zero()) {
        push_elem(b);  // already in the convex segment
    } else if (a.is_one()) {
        push_swap();
        push_elem(kOne - b);
    } else if (a + b <= kOne) {
        push_swap();
        push_elem(a);
        push_swap();
        push_elem(b / (kOne - a));
    } else {
        push_elem(kOne - a);
        push_swap();
        push_elem((kOne - b) / a);
    }

    if (out.length() > 4) throw InternalInvariantViolation("s2 word longer than 4");
    if (!verify(m, out)) throw InternalInvariantViolation("s2 decomposition failed to verify");
    return out;
}

std::optional<FactorList> s2_word_up_to_three(const StochMatrix& m) {
    if (m.dim() != 2) throw DimMismatch("the s2 witness check needs a 2x2 matrix");
    auto word = [](std::vector<GeneratorAtom> atoms) { return FactorList{2, std::move(atoms)}; };
    const GeneratorAtom S = SwapS2{};

    if (m == StochMatrix::identity(2)) return word({});
    if (m.at(0, 0).is_zero() && m.at(0, 1).is_one()) return word({S});  // the swap itself
    // every word of length <= 3 reduces, via swap^2 = identity and the
    // closure of the elementary segment under products, to one of:
    //   E, S E, E S, S E S, E S E
    if (m.at(0, 0).is_one() && m.at(1, 0).is_zero())  // E(t) = (1 t; 0 1-t)
        return word({ElemS2{m.at(0, 1)}});
    if (m.at(0, 0).is_zero() && m.at(1, 0).is_one())  // S E(t) = (0 1-t; 1 t)
        return word({S, ElemS2{m.at(1, 1)}});
    if (m.at(0, 1).is_one() && m.at(1, 1).is_zero())  // E(t) S = (t 1; 1-t 0)
        return word({ElemS2{m.at(0, 0)}, S});
    if (m.at(0, 1).is_zero() && m.at(1, 1).is_one())  // S E(t) S = (1-t 0; t 1)
        return word({S, ElemS2{m.at(1, 0)}, S});
    // E(s) S E(t) = (s, 1-t(1-s); 1-s, t(1-s)); all four entries can be positive
    const Rational s = m.at(0, 0);
    if (s < kOne) {
        const Rational t = m.at(1, 1) / (kOne - s);
        if (t <= kOne) return word({ElemS2{s}, S, ElemS2{t}});
    }
    return std::nullopt;
}

bool certify_s2_witness(const StochMatrix& m) {
    auto w = s2_word_up_to_three(m);
    if (w && !verify(m, *w))
        throw InternalInvariantViolation("matched short word does not reproduce the input");
    return !w.has_value();
}

FactorList perm_table_s3(const Permutation& p) {
    if (p.dim() != 3) throw DimMismatch("perm_table_s3 needs a permutation of 3 points");
    const GeneratorAtom T{PermS3{Permutation({1, 0, 2})}};  // (1 2)
    const GeneratorAtom Z{PermS3{Permutation({2, 0, 1})}};  // (1 3 2)
    const auto& im = p.images();
    FactorList out{3, {}};
    if (im == std::vector<std::uint32_t>{0, 1, 2}) {
        // empty word
    } else if (im == std::vector<std::uint32_t>{1, 0, 2}) {
        out.atoms = {T};
    } else if (im == std::vector<std::uint32_t>{2, 0, 1}) {
        out.atoms = {Z};
    } else if (im == std::vector<std::uint32_t>{0, 2, 1}) {
        out.atoms = {T, Z};
    } else if (im == std::vector<std::uint32_t>{1, 2, 0}) {
        out.atoms = {Z, Z};
    } else if (im == std::vector<std::uint32_t>{2, 1, 0}) {
        out.atoms = {Z, T};
    } else {
        throw InternalInvariantViolation("unreachable permutation case");
    }
    if (out.product() != to_matrix(p))
        throw InternalInvariantViolation("permutation word table is wrong");
    return out;
}

std::optional<ConvexMembership> convex_membership_s3(const StochMatrix& a) {
    if (a.dim() != 3) throw DimMismatch("convex membership needs a 3x3 matrix");
    const auto perms = Permutation::all(3);
    for (const auto& pi : perms)
        for (const auto& tau : perms) {
            const StochMatrix x = act(pi, a, tau);
            if (!x.at(0, 1).is_zero() || !x.at(1, 2).is_zero() || !x.at(2, 0).is_zero())
                continue;
            const Rational va = x.at(0, 0), vb = x.at(1, 1), vc = x.at(2, 2);
            if (va < vb || vb < vc) continue;
            ConvexMembership mem{pi, tau, va, vb, vc};
            if (x != materialize(ConvexS3{va, vb, vc}))
                throw InternalInvariantViolation("convex shape check disagreed");
            return mem;
        }
    return std::nullopt;
}

std::array<Rational, 4> convex_weights(const Rational& a, const Rational& b, const Rational& c) {
    if (a > kOne || c < kZero || a < b || b < c)
        throw ParameterOrderViolated("convex weights need 1 >= a >= b >= c >= 0");
    return {c, b - c, a - b, kOne - a};
}

namespace {

// Conversion of one elementary division cofactor into a generator sandwich:
// c == to_matrix(sigma) * convex(1,1,1-a) * to_matrix(tau).
struct ElementarySandwich {
    Permutation sigma, tau;
    Rational a;
};

ElementarySandwich elementary_to_generator(const StochMatrix& c) {
    const auto perms = Permutation::all(3);
    for (const auto& p : perms)
        for (const auto& t : perms) {
            const StochMatrix x = act(p, c, t);
            // shape (1 0 a; 0 1 0; 0 0 1-a) with a in (0,1]
            if (!x.at(0, 0).is_one() || !x.at(1, 1).is_one()) continue;
            if (!x.at(1, 0).is_zero() || !x.at(2, 0).is_zero() || !x.at(0, 1).is_zero() ||
                !x.at(2, 1).is_zero() || !x.at(1, 2).is_zero())
                continue;
            const Rational a = x.at(0, 2);
            if (a.sign() <= 0) continue;
            // x == pi c tau ==> c == pi^-1 x tau^-1
            return ElementarySandwich{p.inverse(), t.inverse(), a};
        }
    throw InternalInvariantViolation("division cofactor is not an elementary factor");
}

bool is_constant_map(const StochMatrix& a, std::size_t& row_out) {
    for (std::size_t r = 0; r < a.dim(); ++r) {
        bool all_one = true;
        for (std::size_t k = 0; k < a.dim() && all_one; ++k)
            if (!a.at(r, k).is_one()) all_one = false;
        if (all_one) {
            row_out = r;
            return true;
        }
    }
    return false;
}

void append_atoms(FactorList& dst, const FactorList& src) {
    dst.atoms.insert(dst.atoms.end(), src.atoms.begin(), src.atoms.end());
}

// ---- word assembly ----
//
// Decompositions are built as alternating sequences of permutations and
// convex atoms. Merging every run of adjacent permutations into one before
// expanding them through the word table is what keeps the factor count
// within the bound of 20.

using Token = std::variant<Permutation, ConvexS3>;

void push_token(std::vector<Token>& seq, Token tok) {
    if (auto* p = std::get_if<Permutation>(&tok)) {
        if (p->is_identity()) return;
        if (!seq.empty()) {
            if (auto* back = std::get_if<Permutation>(&seq.back())) {
                // to_matrix(x) * to_matrix(y) == to_matrix(y.after(x))
                Permutation combined = p->after(*back);
                seq.pop_back();
                push_token(seq, Token(std::move(combined)));
                return;
            }
        }
    }
    seq.push_back(std::move(tok));
}

void push_sandwich(std::vector<Token>& seq, const ElementarySandwich& s) {
    push_token(seq, Token(s.sigma));
    push_token(seq, Token(ConvexS3{Rational(1), Rational(1), Rational(1) - s.a}));
    push_token(seq, Token(s.tau));
}

FactorList expand_tokens(const std::vector<Token>& seq) {
    FactorList out{3, {}};
    for (const auto& tok : seq) {
        if (const auto* p = std::get_if<Permutation>(&tok))
            append_atoms(out, perm_table_s3(*p));
        else
            out.atoms.push_back(std::get<ConvexS3>(tok));
    }
    return out;
}

// Tokens for a matrix admitting a direct expansion: a permutation word, the
// two-factor constant-map split, or a convex sandwich. Unlike the public
// decompose_base_case this does not insist on a residual sign class; any
// sandwich hit is acceptable mid-word.
std::optional<std::vector<Token>> direct_tokens(const StochMatrix& a) {
    std::vector<Token> seq;
    if (is_permutation_matrix(a)) {
        push_token(seq, Token(permutation_of(a)));
        return seq;
    }
    if (std::size_t r = 0; is_constant_map(a, r)) {
        const Permutation swap13({2, 1, 0});
        std::vector<std::uint32_t> im{0, 1, 2};
        std::swap(im[r], im[2]);
        const Permutation relabel(im);
        const ConvexS3 collapse{Rational(1), Rational(0), Rational(0)};
        push_token(seq, Token(swap13.after(relabel)));
        push_token(seq, Token(collapse));
        push_token(seq, Token(swap13));
        push_token(seq, Token(collapse));
        return seq;
    }
    if (auto mem = convex_membership_s3(a)) {
        push_token(seq, Token(mem->pi.inverse()));
        push_token(seq, Token(ConvexS3{mem->a, mem->b, mem->c}));
        push_token(seq, Token(mem->tau.inverse()));
        return seq;
    }
    return std::nullopt;
}

// ---- decomposition search ----
//
// The primary strategy is the greedy column division loop (lexicographic
// progress pairs). That alone can strand the word at an indivisible residue
// whose parameters are cyclically misordered, a configuration the convex
// family cannot represent; see decompose_s3 below. The search therefore
// backtracks over the choice of progress pair and also allows the mirrored
// row-wise division step, accepting the first trajectory whose exactly
// assembled word stays within 20 atoms.

struct SearchStep {
    bool left;  // false: column step (factor on the right of the remainder)
    ElementarySandwich conv;
};

constexpr long kSearchNodeCap = 200000;

struct Searcher {
    const StochMatrix& root;
    long nodes = 0;

    std::optional<FactorList> assemble(const StochMatrix& residue,
                                       const std::vector<SearchStep>& steps) const {
        auto base = direct_tokens(residue);
        if (!base) return std::nullopt;
        std::vector<Token> seq;
        for (const auto& st : steps)
            if (st.left) push_sandwich(seq, st.conv);
        for (const auto& tok : *base) push_token(seq, tok);
        for (auto it = steps.rbegin(); it != steps.rend(); ++it)
            if (!it->left) push_sandwich(seq, it->conv);
        FactorList out = expand_tokens(seq);
        if (out.length() > 20) return std::nullopt;
        return out;
    }

    std::optional<FactorList> search(const StochMatrix& cur, std::vector<SearchStep>& steps) {
        if (++nodes > kSearchNodeCap)
            throw InternalInvariantViolation("decomposition search exceeded its node budget");
        if (auto leaf = assemble(cur, steps)) return leaf;
        // every step gains a zero, and at most 6 zeros fit in a 3x3 column
        // stochastic matrix
        if (steps.size() >= 6) return std::nullopt;

        for (std::size_t i = 0; i < 3; ++i) {
            if (cur.column(i).is_basis_vector()) continue;
            for (std::size_t k = 0; k < 3; ++k) {
                if (k == i) continue;
                const auto si = cur.column(i).support_word();
                const auto sk = cur.column(k).support_word();
                if ((si & sk) != sk) continue;
                DivisionStep st = division_step(cur, i, k);
                if (zero_count(st.b) <= zero_count(cur))
                    throw InternalInvariantViolation("division step failed to gain a zero");
                steps.push_back({false, elementary_to_generator(st.c)});
                if (auto hit = search(st.b, steps)) return hit;
                steps.pop_back();
            }
        }
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = 0; k < 3; ++k) {
                if (k == i) continue;
                auto st = try_left_division(cur, i, k);
                if (!st || zero_count(st->w) <= zero_count(cur)) continue;
                steps.push_back({true, elementary_to_generator(st->f)});
                if (auto hit = search(st->w, steps)) return hit;
                steps.pop_back();
            }
        return std::nullopt;
    }
};

}  // namespace

FactorList decompose_base_case(const StochMatrix& a) {
    if (a.dim() != 3) throw DimMismatch("decompose_base_case needs a 3x3 matrix");
    residual_class_of(sign(a));  // throws NotABaseCase when a progress pair exists

    if (is_permutation_matrix(a)) return perm_table_s3(permutation_of(a));

    if (std::size_t r = 0; is_constant_map(a, r)) {
        // e_r 1^T splits into two copies of the collapse vertex conjugated by
        // the (1 3) swap, with a row relabeling in front.
        const Permutation swap13({2, 1, 0});
        std::vector<std::uint32_t> im{0, 1, 2};
        std::swap(im[r], im[2]);
        const Permutation relabel(im);  // relabel(r) == 2
        const Permutation head = swap13.after(relabel);
        const GeneratorAtom collapse{ConvexS3{kOne, kZero, kZero}};

        FactorList out{3, {}};
        append_atoms(out, perm_table_s3(head));
        out.atoms.push_back(collapse);
        append_atoms(out, perm_table_s3(swap13));
        out.atoms.push_back(collapse);
        if (!verify(a, out))
            throw InternalInvariantViolation("constant map expansion failed to verify");
        return out;
    }

    if (auto mem = convex_membership_s3(a)) {
        // a == pi^-1 * convex(a,b,c) * tau^-1
        FactorList out{3, {}};
        append_atoms(out, perm_table_s3(mem->pi.inverse()));
        out.atoms.push_back(ConvexS3{mem->a, mem->b, mem->c});
        append_atoms(out, perm_table_s3(mem->tau.inverse()));
        if (!verify(a, out))
            throw InternalInvariantViolation("convex sandwich failed to verify");
        return out;
    }

    // indivisible, but its parameters read cyclically misordered under every
    // permutation sandwich: the ordered convex family cannot reach it
    throw OutsideGeneratingSet(
        "indivisible matrix with no permutation sandwich into the convex family");
}

FactorList decompose_s3(const StochMatrix& a) {
    if (a.dim() != 3) throw DimMismatch("decompose_s3 needs a 3x3 matrix");

    Searcher searcher{a};
    std::vector<SearchStep> steps;
    auto hit = searcher.search(a, steps);
    if (!hit)
        throw OutsideGeneratingSet(
            "no factorization within 20 atoms; the matrix (or every division "
            "residue it admits) is an indivisible element whose parameters are "
            "cyclically misordered for the convex family");

    if (hit->length() > 20)
        throw InternalInvariantViolation("three-dimensional factor count exceeded 20");
    if (!verify(a, *hit))
        throw InternalInvariantViolation("s3 decomposition failed to verify");
    return *hit;
}

ErrorBenchReport error_bound_bench(const StochMatrix& a, const FactorList& f,
                                   const Rational& eps, std::size_t trials,
                                   std::uint64_t seed) {
    if (eps.sign() < 0) throw PreconditionViolated("eps must be nonnegative");
    if (!verify(a, f))
        throw PreconditionViolated("factor list does not reconstruct the input matrix");

    ErrorBenchReport rep;
    rep.trials = trials;
    rep.eps = eps;
    rep.factor_count = f.length();
    rep.bound = Rational(static_cast<long>(f.length())) * eps;

    const std::size_t n = f.dim;
    Rational sum_dev;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng64 rng(splitmix64(seed + trial));
        StochMatrix approx = StochMatrix::identity(n);
        for (const auto& atom : f.atoms) {
            StochMatrix g = materialize(atom);
            for (std::size_t col = 0; col < n; ++col) {
                // exact zero-sum mass move of 1-norm < eps, clamped to the
                // available mass at the source entry
                const std::size_t to = static_cast<std::size_t>(rng.below(n));
                const std::size_t from =
                    (to + 1 + static_cast<std::size_t>(rng.below(n - 1))) % n;
                const Rational step =
                    eps * Rational(static_cast<long>(rng.below(1024)), 2048);
                const Rational t = min(step, g.at(from, col));
                if (t.is_zero()) continue;
                ColumnVector v = g.column(col);
                v[to] += t;
                v[from] -= t;
                g = g.with_column(col, v);
            }
            approx = approx * g;
        }
        const Rational dev = one_norm_distance(f.product(), approx);
        if (dev > rep.max_dev) rep.max_dev = dev;
        sum_dev += dev;
        if (dev > rep.bound) rep.all_within = false;
    }
    if (trials > 0) rep.mean_dev = sum_dev / Rational(static_cast<long>(trials));
    return rep;
}

}  // namespace stogen
