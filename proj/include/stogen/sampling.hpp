#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "stogen/stoch_matrix.hpp"

namespace stogen {

// Seeded randomness for sampling and benches. The generator is a plain
// mt19937_64; bounded draws use masked rejection, so identical seeds give
// identical streams on every platform. Independent streams for indexed work
// items are derived with splitmix64(seed + index).

std::uint64_t splitmix64(std::uint64_t x);

class Rng64 {
public:
    explicit Rng64(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // uniform in [0, n), unbiased
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 eng_;
};

// Uniform over all ways of writing `total` as an ordered sum of `parts`
// nonnegative integers.
std::vector<unsigned long> sample_composition(std::size_t parts, unsigned long total, Rng64& rng);

// Column with entries k_j / denominator_bound, drawn uniformly from the exact
// compositions above; always an exact simplex element.
ColumnVector sample_simplex_column(std::size_t dim, unsigned long denominator_bound, Rng64& rng);

StochMatrix sample_stochastic(std::size_t dim, unsigned long denominator_bound, Rng64& rng);
StochMatrix sample_stochastic(std::size_t dim, unsigned long denominator_bound,
                              std::uint64_t seed);

}  // namespace stogen
