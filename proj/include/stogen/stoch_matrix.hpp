#pragma once

#include <cstddef>
#include <vector>

#include "stogen/permutation.hpp"
#include "stogen/rational.hpp"
#include "stogen/sign_pattern.hpp"

namespace stogen {

// Exact column vector; flagged uses require membership in the probability
// simplex (entries >= 0 summing to exactly 1).
class ColumnVector {
public:
    ColumnVector(std::size_t dim, std::vector<Rational> entries);

    std::size_t dim() const { return entries_.size(); }
    const Rational& operator[](std::size_t j) const { return entries_[j]; }
    Rational& operator[](std::size_t j) { return entries_[j]; }
    const std::vector<Rational>& entries() const { return entries_; }

    Rational sum() const;
    bool is_simplex() const;  // entries >= 0 and sum exactly 1
    bool is_basis_vector() const;
    // bit j set iff entry j is strictly positive
    std::uint16_t support_word() const;

    friend bool operator==(const ColumnVector& a, const ColumnVector& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const ColumnVector& a, const ColumnVector& b) { return !(a == b); }

private:
    std::vector<Rational> entries_;
};

// Exact column-stochastic matrix: every entry >= 0, every column sums to
// exactly 1. Construction validates both conditions; all operations stay
// closed over rationals.
class StochMatrix {
public:
    // row-major grid; throws NegativeEntry / ColumnSumMismatch / DimMismatch
    static StochMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
    static StochMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    const Rational& at(std::size_t row, std::size_t col) const {
        return entries_[col * dim_ + row];
    }
    ColumnVector column(std::size_t col) const;
    // column replaced, result revalidated
    StochMatrix with_column(std::size_t col, const ColumnVector& v) const;
    std::vector<std::vector<Rational>> rows() const;

    friend StochMatrix operator*(const StochMatrix& a, const StochMatrix& b);
    friend bool operator==(const StochMatrix& a, const StochMatrix& b) {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const StochMatrix& a, const StochMatrix& b) { return !(a == b); }

private:
    StochMatrix(std::size_t dim, std::vector<Rational> column_major)
        : dim_(dim), entries_(std::move(column_major)) {}
    void validate() const;

    std::size_t dim_;
    std::vector<Rational> entries_;  // column-major
};

// Alias for the spec-facing name; identical to StochMatrix::from_rows.
StochMatrix validate_stochastic(const std::vector<std::vector<Rational>>& rows);

// Entry-wise sign image: bit (j,k) set iff entry (j,k) > 0.
SignPattern sign(const StochMatrix& a);

std::size_t zero_count(const StochMatrix& a);
bool is_permutation_matrix(const StochMatrix& a);

// Induced matrix with a 1 at (j, p(j)); see the composition convention in
// permutation.hpp.
StochMatrix to_matrix(const Permutation& p);
// Recovers p with to_matrix(p) == a; requires a permutation matrix.
Permutation permutation_of(const StochMatrix& a);

// to_matrix(pi) * a * to_matrix(tau), computed by the index formula
// result(j,k) = a(pi(j), tau^{-1}(k)).
StochMatrix act(const Permutation& pi, const StochMatrix& a, const Permutation& tau);

// max over columns of the column 1-norm of (a - b): the induced 1-norm
// distance, in which stochastic matrices are non-expansive.
Rational one_norm_distance(const StochMatrix& a, const StochMatrix& b);

}  // namespace stogen
