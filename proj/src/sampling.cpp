#include "stogen/sampling.hpp"

#include <algorithm>
#include <set>

#include "stogen/errors.hpp"

namespace stogen {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t Rng64::below(std::uint64_t n) {
    if (n == 0) throw PreconditionViolated("empty draw range");
    if (n == 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
    std::uint64_t v;
    do {
        v = eng_() & mask;
    } while (v >= n);
    return v;
}

std::vector<unsigned long> sample_composition(std::size_t parts, unsigned long total,
                                              Rng64& rng) {
    if (parts == 0) throw PreconditionViolated("composition needs at least one part");
    if (parts == 1) return {total};
    // stars and bars: a uniform (parts-1)-subset of {0, ..., total+parts-2}
    std::set<std::uint64_t> bars;
    while (bars.size() < parts - 1) bars.insert(rng.below(total + parts - 1));
    std::vector<std::uint64_t> b(bars.begin(), bars.end());
    std::vector<unsigned long> out(parts);
    out[0] = static_cast<unsigned long>(b[0]);
    for (std::size_t i = 1; i < parts - 1; ++i)
        out[i] = static_cast<unsigned long>(b[i] - b[i - 1] - 1);
    out[parts - 1] = static_cast<unsigned long>(total + parts - 2 - b[parts - 2]);
    return out;
}

ColumnVector sample_simplex_column(std::size_t dim, unsigned long denominator_bound,
                                   Rng64& rng) {
    if (denominator_bound == 0)
        throw PreconditionViolated("denominator bound must be at least 1");
    auto parts = sample_composition(dim, denominator_bound, rng);
    std::vector<Rational> entries(dim);
    for (std::size_t j = 0; j < dim; ++j)
        entries[j] = Rational(static_cast<long>(parts[j]),
                              static_cast<long>(denominator_bound));
    return ColumnVector(dim, std::move(entries));
}

StochMatrix sample_stochastic(std::size_t dim, unsigned long denominator_bound, Rng64& rng) {
    std::vector<std::vector<Rational>> rows(dim, std::vector<Rational>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
        ColumnVector col = sample_simplex_column(dim, denominator_bound, rng);
        for (std::size_t j = 0; j < dim; ++j) rows[j][k] = col[j];
    }
    return StochMatrix::from_rows(rows);
}

StochMatrix sample_stochastic(std::size_t dim, unsigned long denominator_bound,
                              std::uint64_t seed) {
    Rng64 rng(seed);
    return sample_stochastic(dim, denominator_bound, rng);
}

}  // namespace stogen
