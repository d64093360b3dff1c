#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "stogen/rational.hpp"

namespace stogen {

// One CLI invocation. The seed fully determines every randomized run: given
// identical configs the emitted report is byte-identical.
struct RunConfig {
    std::string subcommand;
    std::string input_path;   // empty: subcommand takes no input file
    std::string output_path;  // empty: write to the provided stream
    std::size_t dim = 3;
    std::uint64_t seed = 0;
    std::size_t trials = 100;
    std::size_t samples = 1000;
    unsigned long denominator_bound = 360;
    Rational eps = Rational(1, 1000);
    unsigned jobs = 1;
    bool dim_check = false;
    std::size_t closure_cap = 200000;
};

// Tally of which residual class the division loop terminates in, over seeded
// random 3x3 samples. Indices follow ResidualClass; the tallies always sum
// to `samples`.
struct StuckReport {
    std::size_t samples = 0;
    std::array<std::size_t, 5> class_tallies{};
    Rational fraction_prime_base_case;
    Rational fraction_elementary_only;
};

StuckReport stuck_fraction(std::size_t samples, unsigned long denominator_bound,
                           std::uint64_t seed, unsigned jobs = 1);

// Builds the report for a config; throws stogen errors on failure.
nlohmann::ordered_json run_report(const RunConfig& cfg);

// Dispatches, writes the report (or a machine-readable error object) and
// returns the exit code: 0 success, 1 domain error, 2 I/O or parse error.
int run(const RunConfig& cfg, std::ostream& fallback_out);

}  // namespace stogen
