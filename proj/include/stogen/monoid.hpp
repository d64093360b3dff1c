#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

#include "stogen/errors.hpp"

namespace stogen {

// Generic analysis of a finite monoid presented by a value type with
// decidable equality and a hash, plus an associative product supplied at
// construction. One engine serves every concrete instantiation (boolean
// matrices, sign patterns) used in the library.
//
// All searches below are plain breadth-first or all-pairs loops; the
// factorization scans cost O(|S|^2) products, which is the algorithm of
// record at the sizes this library supports.

template <class E>
struct ClosureResult {
    std::vector<E> elements;                      // BFS discovery order
    std::vector<std::vector<std::size_t>> words;  // per element, one shortest
                                                  // word as generator indices
};

// Smallest product-closed set containing the generators. The identity is a
// member only when it is itself reachable (or listed); nothing is adjoined
// silently. Throws CapExceeded once more than `cap` distinct elements appear.
template <class E, class Product, class Hash = std::hash<E>, class Eq = std::equal_to<E>>
ClosureResult<E> closure(const std::vector<E>& generators, Product product, std::size_t cap) {
    ClosureResult<E> out;
    std::unordered_map<E, std::size_t, Hash, Eq> index;
    std::deque<std::size_t> frontier;
    for (std::size_t g = 0; g < generators.size(); ++g) {
        if (index.count(generators[g])) continue;
        index.emplace(generators[g], out.elements.size());
        out.elements.push_back(generators[g]);
        out.words.push_back({g});
        frontier.push_back(out.elements.size() - 1);
        if (out.elements.size() > cap) throw CapExceeded(cap);
    }
    while (!frontier.empty()) {
        const std::size_t cur = frontier.front();
        frontier.pop_front();
        for (std::size_t g = 0; g < generators.size(); ++g) {
            E next = product(out.elements[cur], generators[g]);
            if (index.count(next)) continue;
            index.emplace(next, out.elements.size());
            std::vector<std::size_t> word = out.words[cur];
            word.push_back(g);
            out.elements.push_back(std::move(next));
            out.words.push_back(std::move(word));
            frontier.push_back(out.elements.size() - 1);
            if (out.elements.size() > cap) throw CapExceeded(cap);
        }
    }
    return out;
}

template <class E, class Product, class Hash = std::hash<E>, class Eq = std::equal_to<E>>
class FiniteMonoid {
public:
    // Checks closure under the product and two-sided neutrality of the
    // identity on construction.
    FiniteMonoid(std::vector<E> elements, Product product, E identity)
        : elems_(std::move(elements)), prod_(std::move(product)) {
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (index_.count(elems_[i]))
                throw PreconditionViolated("duplicate element in monoid element list");
            index_.emplace(elems_[i], i);
        }
        auto it = index_.find(identity);
        if (it == index_.end())
            throw PreconditionViolated("identity is not among the monoid elements");
        id_ = it->second;
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (!(Eq{}(prod_(elems_[i], identity), elems_[i])) ||
                !(Eq{}(prod_(identity, elems_[i]), elems_[i])))
                throw PreconditionViolated("identity is not two-sided neutral");
            for (std::size_t j = 0; j < elems_.size(); ++j)
                if (!index_.count(prod_(elems_[i], elems_[j])))
                    throw PreconditionViolated("element set is not closed under the product");
        }
    }

    std::size_t size() const { return elems_.size(); }
    const std::vector<E>& elements() const { return elems_; }
    const E& identity() const { return elems_[id_]; }

    std::optional<std::size_t> index_of(const E& x) const {
        auto it = index_.find(x);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Group of units: elements with a two-sided inverse inside the monoid.
    std::vector<E> units() const {
        unit_mask();
        std::vector<E> out;
        for (std::size_t i = 0; i < elems_.size(); ++i)
            if (units_[i]) out.push_back(elems_[i]);
        return out;
    }

    // Elements whose every two-factor decomposition has exactly one unit
    // factor.
    std::vector<E> indivisibles() const {
        unit_mask();
        std::vector<bool> divisible(elems_.size(), false);
        for (std::size_t i = 0; i < elems_.size(); ++i)
            for (std::size_t j = 0; j < elems_.size(); ++j) {
                const int unit_factors = int(units_[i]) + int(units_[j]);
                if (unit_factors != 1) divisible[idx(prod_(elems_[i], elems_[j]))] = true;
            }
        std::vector<E> out;
        for (std::size_t i = 0; i < elems_.size(); ++i)
            if (!divisible[i]) out.push_back(elems_[i]);
        return out;
    }

    // Elements x such that every decomposition x = y*z has y in x*units or
    // z in units*x.
    std::vector<E> building_blocks() const {
        unit_mask();
        std::vector<std::size_t> unit_idx;
        for (std::size_t u = 0; u < elems_.size(); ++u)
            if (units_[u]) unit_idx.push_back(u);
        // per element: the sets x*units and units*x, as membership masks
        std::vector<std::vector<bool>> right(elems_.size(), std::vector<bool>(elems_.size(), false));
        std::vector<std::vector<bool>> left(elems_.size(), std::vector<bool>(elems_.size(), false));
        for (std::size_t x = 0; x < elems_.size(); ++x)
            for (std::size_t u : unit_idx) {
                right[x][idx(prod_(elems_[x], elems_[u]))] = true;
                left[x][idx(prod_(elems_[u], elems_[x]))] = true;
            }
        std::vector<bool> violated(elems_.size(), false);
        for (std::size_t y = 0; y < elems_.size(); ++y)
            for (std::size_t z = 0; z < elems_.size(); ++z) {
                const std::size_t x = idx(prod_(elems_[y], elems_[z]));
                if (!right[x][y] && !left[x][z]) violated[x] = true;
            }
        std::vector<E> out;
        for (std::size_t i = 0; i < elems_.size(); ++i)
            if (!violated[i]) out.push_back(elems_[i]);
        return out;
    }

    // Shortest word length of x over the generating set G (allowing
    // repetition); nullopt when x is not generated by G. G must be a subset
    // of the monoid.
    std::optional<std::size_t> word_length(const std::vector<E>& gens, const E& x) const {
        auto dist = word_lengths(gens);
        auto i = index_of(x);
        if (!i || dist[*i] == kUnreached) return std::nullopt;
        return dist[*i];
    }

    // sup over all elements; nullopt when some element is unreachable.
    std::optional<std::size_t> max_word_length(const std::vector<E>& gens) const {
        auto dist = word_lengths(gens);
        std::size_t best = 0;
        for (std::size_t d : dist) {
            if (d == kUnreached) return std::nullopt;
            best = std::max(best, d);
        }
        return best;
    }

    // Per-element word lengths over G (kUnreached marks elements outside
    // the generated subsemigroup).
    static constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);
    std::vector<std::size_t> word_lengths(const std::vector<E>& gens) const {
        std::vector<std::size_t> gi;
        for (const auto& g : gens) {
            auto i = index_of(g);
            if (!i) throw PreconditionViolated("generator is not an element of the monoid");
            gi.push_back(*i);
        }
        std::vector<std::size_t> dist(elems_.size(), kUnreached);
        std::deque<std::size_t> frontier;
        for (std::size_t i : gi)
            if (dist[i] == kUnreached) {
                dist[i] = 1;
                frontier.push_back(i);
            }
        while (!frontier.empty()) {
            const std::size_t cur = frontier.front();
            frontier.pop_front();
            for (std::size_t g : gi) {
                const std::size_t nxt = idx(prod_(elems_[cur], elems_[g]));
                if (dist[nxt] == kUnreached) {
                    dist[nxt] = dist[cur] + 1;
                    frontier.push_back(nxt);
                }
            }
        }
        return dist;
    }

private:
    std::size_t idx(const E& x) const {
        auto it = index_.find(x);
        if (it == index_.end())
            throw InternalInvariantViolation("product left the monoid element set");
        return it->second;
    }

    void unit_mask() const {
        if (!units_.empty()) return;
        units_.assign(elems_.size(), false);
        for (std::size_t i = 0; i < elems_.size(); ++i)
            for (std::size_t j = 0; j < elems_.size(); ++j)
                if (idx(prod_(elems_[i], elems_[j])) == id_ &&
                    idx(prod_(elems_[j], elems_[i])) == id_) {
                    units_[i] = true;
                    break;
                }
    }

    std::vector<E> elems_;
    std::unordered_map<E, std::size_t, Hash, Eq> index_;
    Product prod_;
    std::size_t id_ = 0;
    mutable std::vector<bool> units_;
};

}  // namespace stogen
