#include "stogen/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "stogen/errors.hpp"

namespace stogen {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (std::uint32_t v : images_) {
        if (v >= images_.size() || seen[v])
            throw PreconditionViolated("permutation images are not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::uint32_t> im(n);
    std::iota(im.begin(), im.end(), 0u);
    return Permutation(std::move(im));
}

std::vector<Permutation> Permutation::all(std::size_t n) {
    if (n > 8) throw DimTooLarge(n, 8);
    std::vector<std::uint32_t> im(n);
    std::iota(im.begin(), im.end(), 0u);
    std::vector<Permutation> out;
    do {
        out.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

bool Permutation::is_identity() const {
    for (std::size_t j = 0; j < images_.size(); ++j)
        if (images_[j] != j) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<std::uint32_t> inv(images_.size());
    for (std::size_t j = 0; j < images_.size(); ++j) inv[images_[j]] = static_cast<std::uint32_t>(j);
    return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation& tau) const {
    if (dim() != tau.dim()) throw DimMismatch("composing permutations of different dimension");
    std::vector<std::uint32_t> im(dim());
    for (std::size_t j = 0; j < dim(); ++j) im[j] = images_[tau(j)];
    return Permutation(std::move(im));
}

std::string Permutation::cycles() const {
    std::vector<bool> seen(dim(), false);
    std::string out;
    for (std::size_t start = 0; start < dim(); ++start) {
        if (seen[start] || images_[start] == start) continue;
        out += '(';
        std::size_t j = start;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out += ' ';
            out += std::to_string(j + 1);
            first = false;
            j = images_[j];
        }
        out += ')';
    }
    if (out.empty()) out = "()";
    return out;
}

}  // namespace stogen
