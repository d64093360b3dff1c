#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace stogen {

// Bijection of {0,...,n-1}. Throughout the library the induced matrix
// convention is: to_matrix(p) has a 1 at (j, p(j)), so
//   to_matrix(sigma.after(tau)) == to_matrix(tau) * to_matrix(sigma)
// (composition is contravariant at the matrix level).
class Permutation {
public:
    explicit Permutation(std::vector<std::uint32_t> images);
    static Permutation identity(std::size_t n);
    static std::vector<Permutation> all(std::size_t n);  // n! elements, n <= 8

    std::size_t dim() const { return images_.size(); }
    std::uint32_t operator()(std::size_t j) const { return images_[j]; }
    const std::vector<std::uint32_t>& images() const { return images_; }

    bool is_identity() const;
    Permutation inverse() const;
    // (sigma.after(tau))(x) == sigma(tau(x))
    Permutation after(const Permutation& tau) const;

    // Cycle notation with 1-based points and fixed points omitted, e.g.
    // "(1 2)" or "(1 3 2)"; the identity prints as "()".
    std::string cycles() const;

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.images_ == b.images_;
    }
    friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
    friend bool operator<(const Permutation& a, const Permutation& b) {
        return a.images_ < b.images_;
    }

private:
    std::vector<std::uint32_t> images_;
};

}  // namespace stogen
