#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stogen/permutation.hpp"

namespace stogen {

// Boolean n x n matrix stored as one machine word of column bits per row.
// Values of this type are the entry-wise sign images of stochastic matrices
// and the elements of the finite sign semigroup; multiplication is the
// boolean matrix product (OR of ANDs).
class SignPattern {
public:
    static constexpr std::size_t kMaxDim = 8;

    explicit SignPattern(std::size_t dim);
    static SignPattern identity(std::size_t dim);
    // rows like {"011", "101", "110"}; '1' marks a positive entry
    static SignPattern from_rows(const std::vector<std::string>& rows);

    std::size_t dim() const { return dim_; }
    bool get(std::size_t row, std::size_t col) const {
        return (rows_[row] >> col) & 1u;
    }
    void set(std::size_t row, std::size_t col, bool v);

    std::uint16_t row_word(std::size_t row) const { return rows_[row]; }
    std::uint16_t col_word(std::size_t col) const;

    // Row-major packing with bit (0,0) most significant, so comparing keys
    // compares row-major bit strings lexicographically.
    std::uint64_t key() const;

    std::size_t popcount() const;
    bool all_columns_nonzero() const;  // sign image of some stochastic matrix
    bool is_permutation_pattern() const;

    std::vector<std::string> row_strings() const;

    friend bool operator==(const SignPattern& a, const SignPattern& b) {
        return a.dim_ == b.dim_ && a.rows_ == b.rows_;
    }
    friend bool operator!=(const SignPattern& a, const SignPattern& b) { return !(a == b); }
    friend bool operator<(const SignPattern& a, const SignPattern& b) {
        if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
        return a.key() < b.key();
    }

private:
    std::size_t dim_;
    std::array<std::uint16_t, kMaxDim> rows_{};
};

// Boolean matrix product: bit (j,k) of the result is set iff some m has
// P(j,m) and Q(m,k).
SignPattern pattern_product(const SignPattern& p, const SignPattern& q);

// Pattern-level group action: result(j,k) = p(pi(j), tau^{-1}(k)), matching
// to_matrix(pi) * P * to_matrix(tau) at the matrix level.
SignPattern pattern_act(const Permutation& pi, const SignPattern& p, const Permutation& tau);

// Lexicographically smallest pattern (row-major bit order) over all row/column
// permutations; idempotent and constant on orbits. Enumerates |S_n|^2 pairs.
SignPattern canonical_class(const SignPattern& p);

// All patterns with every column nonzero, i.e. the full finite sign semigroup
// of the n-dimensional stochastic matrices: (2^n - 1)^n elements.
std::vector<SignPattern> stochastic_compatible_patterns(std::size_t dim);

}  // namespace stogen

template <>
struct std::hash<stogen::SignPattern> {
    std::size_t operator()(const stogen::SignPattern& p) const noexcept {
        std::uint64_t k = p.key() * 0x9e3779b97f4a7c15ULL + p.dim();
        k ^= k >> 29;
        return static_cast<std::size_t>(k);
    }
};
