#include "stogen/sign_pattern.hpp"

#include <bit>

#include "stogen/errors.hpp"

namespace stogen {

SignPattern::SignPattern(std::size_t dim) : dim_(dim) {
    if (dim == 0 || dim > kMaxDim) throw DimTooLarge(dim, kMaxDim);
}

SignPattern SignPattern::identity(std::size_t dim) {
    SignPattern p(dim);
    for (std::size_t j = 0; j < dim; ++j) p.set(j, j, true);
    return p;
}

SignPattern SignPattern::from_rows(const std::vector<std::string>& rows) {
    SignPattern p(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (rows[j].size() != rows.size())
            throw ParseError("pattern row has wrong length: '" + rows[j] + "'");
        for (std::size_t k = 0; k < rows.size(); ++k) {
            char c = rows[j][k];
            if (c != '0' && c != '1') throw ParseError("pattern rows must be 0/1 strings");
            p.set(j, k, c == '1');
        }
    }
    return p;
}

void SignPattern::set(std::size_t row, std::size_t col, bool v) {
    if (v)
        rows_[row] |= static_cast<std::uint16_t>(1u << col);
    else
        rows_[row] &= static_cast<std::uint16_t>(~(1u << col));
}

std::uint16_t SignPattern::col_word(std::size_t col) const {
    std::uint16_t w = 0;
    for (std::size_t j = 0; j < dim_; ++j)
        if (get(j, col)) w |= static_cast<std::uint16_t>(1u << j);
    return w;
}

std::uint64_t SignPattern::key() const {
    std::uint64_t k = 0;
    for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t c = 0; c < dim_; ++c) k = (k << 1) | (get(j, c) ? 1u : 0u);
    return k;
}

std::size_t SignPattern::popcount() const {
    std::size_t n = 0;
    for (std::size_t j = 0; j < dim_; ++j) n += std::popcount(rows_[j]);
    return n;
}

bool SignPattern::all_columns_nonzero() const {
    std::uint16_t acc = 0;
    for (std::size_t j = 0; j < dim_; ++j) acc |= rows_[j];
    return acc == static_cast<std::uint16_t>((1u << dim_) - 1u);
}

bool SignPattern::is_permutation_pattern() const {
    std::uint16_t seen = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
        std::uint16_t r = rows_[j];
        if (std::popcount(r) != 1) return false;
        if (seen & r) return false;
        seen |= r;
    }
    return true;
}

std::vector<std::string> SignPattern::row_strings() const {
    std::vector<std::string> out(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        out[j].resize(dim_);
        for (std::size_t c = 0; c < dim_; ++c) out[j][c] = get(j, c) ? '1' : '0';
    }
    return out;
}

SignPattern pattern_product(const SignPattern& p, const SignPattern& q) {
    if (p.dim() != q.dim()) throw DimMismatch("pattern product of mismatched dimensions");
    SignPattern r(p.dim());
    for (std::size_t j = 0; j < p.dim(); ++j) {
        std::uint16_t row = 0;
        std::uint16_t pj = p.row_word(j);
        for (std::size_t m = 0; m < p.dim(); ++m)
            if ((pj >> m) & 1u) row |= q.row_word(m);
        for (std::size_t c = 0; c < p.dim(); ++c)
            if ((row >> c) & 1u) r.set(j, c, true);
    }
    return r;
}

SignPattern pattern_act(const Permutation& pi, const SignPattern& p, const Permutation& tau) {
    if (pi.dim() != p.dim() || tau.dim() != p.dim())
        throw DimMismatch("pattern action with mismatched dimensions");
    Permutation tau_inv = tau.inverse();
    SignPattern r(p.dim());
    for (std::size_t j = 0; j < p.dim(); ++j)
        for (std::size_t k = 0; k < p.dim(); ++k)
            if (p.get(pi(j), tau_inv(k))) r.set(j, k, true);
    return r;
}

SignPattern canonical_class(const SignPattern& p) {
    if (p.dim() > 6) throw DimTooLarge(p.dim(), 6);
    const auto perms = Permutation::all(p.dim());
    SignPattern min = p;
    std::uint64_t min_key = p.key();
    for (const auto& pi : perms)
        for (const auto& tau : perms) {
            SignPattern cur = pattern_act(pi, p, tau);
            if (std::uint64_t k = cur.key(); k < min_key) {
                min = cur;
                min_key = k;
            }
        }
    return min;
}

std::vector<SignPattern> stochastic_compatible_patterns(std::size_t dim) {
    if (dim > 4) throw DimTooLarge(dim, 4);
    const std::uint32_t colmax = (1u << dim) - 1u;
    std::vector<SignPattern> out;
    std::vector<std::uint32_t> cols(dim, 1);
    while (true) {
        SignPattern p(dim);
        for (std::size_t c = 0; c < dim; ++c)
            for (std::size_t j = 0; j < dim; ++j)
                if ((cols[c] >> j) & 1u) p.set(j, c, true);
        out.push_back(p);
        // next tuple of nonzero column words
        std::size_t c = 0;
        while (c < dim && cols[c] == colmax) {
            cols[c] = 1;
            ++c;
        }
        if (c == dim) break;
        ++cols[c];
    }
    return out;
}

}  // namespace stogen
