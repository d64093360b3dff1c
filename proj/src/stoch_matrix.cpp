#include "stogen/stoch_matrix.hpp"

#include "stogen/errors.hpp"

namespace stogen {

ColumnVector::ColumnVector(std::size_t dim, std::vector<Rational> entries)
    : entries_(std::move(entries)) {
    if (entries_.size() != dim || dim == 0)
        throw DimMismatch("column vector entry count does not match dimension");
}

Rational ColumnVector::sum() const {
    Rational s;
    for (const auto& e : entries_) s += e;
    return s;
}

bool ColumnVector::is_simplex() const {
    for (const auto& e : entries_)
        if (e.sign() < 0) return false;
    return sum() == Rational(1);
}

bool ColumnVector::is_basis_vector() const {
    std::size_t ones = 0, zeros = 0;
    for (const auto& e : entries_) {
        if (e.is_one())
            ++ones;
        else if (e.is_zero())
            ++zeros;
    }
    return ones == 1 && zeros == entries_.size() - 1;
}

std::uint16_t ColumnVector::support_word() const {
    std::uint16_t w = 0;
    for (std::size_t j = 0; j < entries_.size(); ++j)
        if (entries_[j].sign() > 0) w |= static_cast<std::uint16_t>(1u << j);
    return w;
}

StochMatrix StochMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw DimMismatch("empty matrix");
    for (const auto& r : rows)
        if (r.size() != n) throw DimMismatch("matrix grid is not square");
    std::vector<Rational> cm(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) cm[k * n + j] = rows[j][k];
    StochMatrix m(n, std::move(cm));
    m.validate();
    return m;
}

void StochMatrix::validate() const {
    for (std::size_t k = 0; k < dim_; ++k) {
        Rational colsum;
        for (std::size_t j = 0; j < dim_; ++j) {
            const Rational& e = at(j, k);
            if (e.sign() < 0) throw NegativeEntry(j, k, e.str());
            colsum += e;
        }
        if (colsum != Rational(1)) throw ColumnSumMismatch(k, colsum.str());
    }
}

StochMatrix StochMatrix::identity(std::size_t dim) {
    if (dim == 0) throw DimMismatch("empty matrix");
    std::vector<Rational> cm(dim * dim, Rational(0));
    for (std::size_t j = 0; j < dim; ++j) cm[j * dim + j] = Rational(1);
    return StochMatrix(dim, std::move(cm));
}

ColumnVector StochMatrix::column(std::size_t col) const {
    std::vector<Rational> e(entries_.begin() + static_cast<std::ptrdiff_t>(col * dim_),
                            entries_.begin() + static_cast<std::ptrdiff_t>((col + 1) * dim_));
    return ColumnVector(dim_, std::move(e));
}

StochMatrix StochMatrix::with_column(std::size_t col, const ColumnVector& v) const {
    if (v.dim() != dim_) throw DimMismatch("replacement column has wrong dimension");
    StochMatrix m = *this;
    for (std::size_t j = 0; j < dim_; ++j) m.entries_[col * dim_ + j] = v[j];
    m.validate();
    return m;
}

std::vector<std::vector<Rational>> StochMatrix::rows() const {
    std::vector<std::vector<Rational>> out(dim_, std::vector<Rational>(dim_));
    for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) out[j][k] = at(j, k);
    return out;
}

StochMatrix operator*(const StochMatrix& a, const StochMatrix& b) {
    if (a.dim_ != b.dim_) throw DimMismatch("product of matrices with different dimensions");
    const std::size_t n = a.dim_;
    std::vector<Rational> cm(n * n, Rational(0));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
            const Rational& bmk = b.at(m, k);
            if (bmk.is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const Rational& ajm = a.at(j, m);
                if (!ajm.is_zero()) cm[k * n + j] += ajm * bmk;
            }
        }
    return StochMatrix(n, std::move(cm));
}

StochMatrix validate_stochastic(const std::vector<std::vector<Rational>>& rows) {
    return StochMatrix::from_rows(rows);
}

SignPattern sign(const StochMatrix& a) {
    SignPattern p(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (a.at(j, k).sign() > 0) p.set(j, k, true);
    return p;
}

std::size_t zero_count(const StochMatrix& a) {
    std::size_t n = 0;
    for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (a.at(j, k).is_zero()) ++n;
    return n;
}

bool is_permutation_matrix(const StochMatrix& a) {
    return sign(a).is_permutation_pattern();
}

StochMatrix to_matrix(const Permutation& p) {
    std::vector<std::vector<Rational>> rows(p.dim(), std::vector<Rational>(p.dim(), Rational(0)));
    for (std::size_t j = 0; j < p.dim(); ++j) rows[j][p(j)] = Rational(1);
    return StochMatrix::from_rows(rows);
}

Permutation permutation_of(const StochMatrix& a) {
    if (!is_permutation_matrix(a))
        throw PreconditionViolated("matrix is not a permutation matrix");
    std::vector<std::uint32_t> im(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t k = 0; k < a.dim(); ++k)
            if (a.at(j, k).is_one()) im[j] = static_cast<std::uint32_t>(k);
    return Permutation(std::move(im));
}

StochMatrix act(const Permutation& pi, const StochMatrix& a, const Permutation& tau) {
    if (pi.dim() != a.dim() || tau.dim() != a.dim())
        throw DimMismatch("permutation action with mismatched dimensions");
    Permutation tau_inv = tau.inverse();
    std::vector<std::vector<Rational>> rows(a.dim(), std::vector<Rational>(a.dim()));
    for (std::size_t j = 0; j < a.dim(); ++j)
        for (std::size_t k = 0; k < a.dim(); ++k) rows[j][k] = a.at(pi(j), tau_inv(k));
    return StochMatrix::from_rows(rows);
}

Rational one_norm_distance(const StochMatrix& a, const StochMatrix& b) {
    if (a.dim() != b.dim()) throw DimMismatch("norm distance of mismatched dimensions");
    Rational best;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        Rational colsum;
        for (std::size_t j = 0; j < a.dim(); ++j) colsum += (a.at(j, k) - b.at(j, k)).abs();
        best = max(best, colsum);
    }
    return best;
}

}  // namespace stogen
