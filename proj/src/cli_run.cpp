#include "stogen/cli_run.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <thread>
#include <vector>

#include "stogen/divisibility.hpp"
#include "stogen/errors.hpp"
#include "stogen/factorization.hpp"
#include "stogen/matrix_io.hpp"
#include "stogen/monoid.hpp"
#include "stogen/sampling.hpp"

namespace stogen {

namespace {

using json = nlohmann::ordered_json;

json atom_to_json(const GeneratorAtom& atom) {
    json j;
    if (std::holds_alternative<SwapS2>(atom)) {
        j["type"] = "swap";
    } else if (const auto* e = std::get_if<ElemS2>(&atom)) {
        j["type"] = "elem";
        j["t"] = e->t.str();
    } else if (const auto* p = std::get_if<PermS3>(&atom)) {
        j["type"] = "perm";
        j["cycles"] = p->p.cycles();
    } else {
        const auto& c = std::get<ConvexS3>(atom);
        j["type"] = "convex";
        j["a"] = c.a.str();
        j["b"] = c.b.str();
        j["c"] = c.c.str();
    }
    return j;
}

json factors_to_json(const FactorList& f) {
    json arr = json::array();
    for (const auto& atom : f.atoms) arr.push_back(atom_to_json(atom));
    return arr;
}

json classify_report(const RunConfig& cfg) {
    const StochMatrix a = load_matrix_file(cfg.input_path);
    const Verdict v = classify(a);
    json j;
    j["command"] = "classify";
    j["dim"] = a.dim();
    switch (v.kind) {
        case Verdict::Kind::Divisible: j["verdict"] = "divisible"; break;
        case Verdict::Kind::Indivisible: j["verdict"] = "indivisible"; break;
        case Verdict::Kind::Unknown: j["verdict"] = "unknown"; break;
    }
    j["method"] = v.detail;
    if (v.witness) {
        j["witness"]["b"] = matrix_to_json(v.witness->b);
        j["witness"]["c"] = matrix_to_json(v.witness->c);
        j["witness"]["verified"] = (v.witness->b * v.witness->c == a);
    }
    if (v.kind == Verdict::Kind::Indivisible && v.detail == "s3_sign_class") {
        j["certificate"]["canonical_pattern"] = pattern_to_json(canonical_class(sign(a)));
        j["certificate"]["pi"] = v.cert_pi->cycles();
        j["certificate"]["tau"] = v.cert_tau->cycles();
    }
    return j;
}

json decompose_report(const RunConfig& cfg) {
    const StochMatrix a = load_matrix_file(cfg.input_path);
    if (cfg.dim_check && a.dim() != 2 && a.dim() != 3)
        throw DimMismatch("decomposition supports dimensions 2 and 3");
    FactorList f;
    if (a.dim() == 2)
        f = decompose_s2(a);
    else if (a.dim() == 3)
        f = decompose_s3(a);
    else
        throw DimMismatch("decomposition supports dimensions 2 and 3");
    json j;
    j["command"] = "decompose";
    j["dim"] = a.dim();
    j["factors"] = factors_to_json(f);
    j["length"] = f.length();
    j["verified"] = verify(a, f);
    return j;
}

json sign_classes_report(const RunConfig& cfg) {
    const auto census = class_census(cfg.dim);
    json j;
    j["command"] = "sign-classes";
    j["dim"] = cfg.dim;
    std::size_t total = 0;
    json classes = json::array();
    for (const auto& [rep, size] : census) {
        json c;
        c["rows"] = rep.row_strings();
        c["orbit_size"] = size;
        classes.push_back(std::move(c));
        total += size;
    }
    j["class_count"] = census.size();
    j["total_patterns"] = total;
    j["classes"] = std::move(classes);
    return j;
}

json residual_report(const RunConfig& cfg) {
    if (cfg.dim != 3) throw DimMismatch("residual classes are computed for dimension 3");
    json j;
    j["command"] = "residual";
    j["dim"] = 3;
    json classes = json::array();
    for (const auto& rep : residual_classes_s3()) {
        json c;
        c["rows"] = rep.row_strings();
        c["class"] = residual_class_name(residual_class_of(rep));
        classes.push_back(std::move(c));
    }
    j["classes"] = std::move(classes);
    return j;
}

json witness_s2_report(const RunConfig& cfg) {
    const StochMatrix a = load_matrix_file(cfg.input_path);
    if (a.dim() != 2) throw DimMismatch("witness-s2 needs a 2x2 matrix");
    const bool needs_four = certify_s2_witness(a);
    const FactorList f = decompose_s2(a);
    json j;
    j["command"] = "witness-s2";
    j["needs_at_least_four_factors"] = needs_four;
    j["decompose_length"] = f.length();
    if (auto w = s2_word_up_to_three(a)) j["short_word"] = factors_to_json(*w);
    j["verified"] = verify(a, f);
    return j;
}

json bench_error_report(const RunConfig& cfg) {
    const StochMatrix a = load_matrix_file(cfg.input_path);
    FactorList f;
    if (a.dim() == 2)
        f = decompose_s2(a);
    else if (a.dim() == 3)
        f = decompose_s3(a);
    else
        throw DimMismatch("bench-error supports dimensions 2 and 3");
    const ErrorBenchReport rep = error_bound_bench(a, f, cfg.eps, cfg.trials, cfg.seed);
    json j;
    j["command"] = "bench-error";
    j["eps"] = rep.eps.str();
    j["trials"] = rep.trials;
    j["factor_count"] = rep.factor_count;
    j["bound"] = rep.bound.str();
    j["max_deviation"] = rep.max_dev.str();
    j["mean_deviation"] = rep.mean_dev.str();
    j["all_within_bound"] = rep.all_within;
    j["seed"] = cfg.seed;
    return j;
}

json stuck_fraction_report(const RunConfig& cfg) {
    const StuckReport rep =
        stuck_fraction(cfg.samples, cfg.denominator_bound, cfg.seed, cfg.jobs);
    json j;
    j["command"] = "stuck-fraction";
    j["samples"] = rep.samples;
    j["denominator_bound"] = cfg.denominator_bound;
    j["seed"] = cfg.seed;
    json tallies;
    for (std::size_t c = 0; c < rep.class_tallies.size(); ++c)
        tallies[residual_class_name(static_cast<ResidualClass>(c))] = rep.class_tallies[c];
    j["class_tallies"] = std::move(tallies);
    j["fraction_prime_base_case"] = rep.fraction_prime_base_case.str();
    j["fraction_elementary_only"] = rep.fraction_elementary_only.str();
    return j;
}

json monoid_report(const RunConfig& cfg) {
    std::ifstream in(cfg.input_path);
    if (!in) throw ParseError("cannot open input file '" + cfg.input_path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in '" + cfg.input_path + "': " + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw ParseError("monoid input must be a nonempty JSON array of boolean matrices");
    std::vector<SignPattern> gens;
    for (const auto& item : doc) gens.push_back(pattern_from_json(item));
    const std::size_t dim = gens.front().dim();
    for (const auto& g : gens)
        if (g.dim() != dim) throw DimMismatch("monoid generators have mixed dimensions");

    auto prod = [](const SignPattern& x, const SignPattern& y) { return pattern_product(x, y); };
    auto closure_result = closure<SignPattern>(gens, prod, cfg.closure_cap);

    const SignPattern id = SignPattern::identity(dim);
    std::vector<SignPattern> elements = closure_result.elements;
    bool identity_adjoined = false;
    if (std::find(elements.begin(), elements.end(), id) == elements.end()) {
        elements.push_back(id);
        identity_adjoined = true;
    }
    FiniteMonoid<SignPattern, decltype(prod)> monoid(elements, prod, id);

    auto patterns_json = [](const std::vector<SignPattern>& ps) {
        json arr = json::array();
        for (const auto& p : ps) arr.push_back(p.row_strings());
        return arr;
    };

    json j;
    j["command"] = "monoid";
    j["dim"] = dim;
    j["generator_count"] = gens.size();
    j["closure_size"] = closure_result.elements.size();
    j["identity_adjoined"] = identity_adjoined;
    j["units"] = patterns_json(monoid.units());
    j["indivisibles"] = patterns_json(monoid.indivisibles());
    j["building_blocks"] = patterns_json(monoid.building_blocks());

    const auto lengths = monoid.word_lengths(gens);
    json words = json::array();
    bool all_reachable = true;
    std::size_t max_len = 0;
    for (std::size_t i = 0; i < monoid.size(); ++i) {
        json w;
        w["rows"] = monoid.elements()[i].row_strings();
        if (lengths[i] == FiniteMonoid<SignPattern, decltype(prod)>::kUnreached) {
            w["length"] = nullptr;
            all_reachable = false;
        } else {
            w["length"] = lengths[i];
            max_len = std::max(max_len, lengths[i]);
        }
        words.push_back(std::move(w));
    }
    j["word_lengths"] = std::move(words);
    if (all_reachable)
        j["max_word_length"] = max_len;
    else
        j["max_word_length"] = nullptr;
    return j;
}

}  // namespace

StuckReport stuck_fraction(std::size_t samples, unsigned long denominator_bound,
                           std::uint64_t seed, unsigned jobs) {
    StuckReport rep;
    rep.samples = samples;

    auto classify_sample = [&](std::size_t idx) {
        Rng64 rng(splitmix64(seed + idx));
        const StochMatrix a = sample_stochastic(3, denominator_bound, rng);
        const StochMatrix residue = division_residue(a);
        return static_cast<std::size_t>(residual_class_of(sign(residue)));
    };

    if (jobs <= 1 || samples < 2) {
        for (std::size_t i = 0; i < samples; ++i) ++rep.class_tallies[classify_sample(i)];
    } else {
        const unsigned workers = std::min<unsigned>(jobs, std::thread::hardware_concurrency());
        std::vector<std::array<std::size_t, 5>> partial(std::max(1u, workers));
        std::vector<std::thread> threads;
        const std::size_t chunk = (samples + workers - 1) / workers;
        for (unsigned t = 0; t < workers; ++t) {
            const std::size_t lo = std::min<std::size_t>(t * chunk, samples);
            const std::size_t hi = std::min<std::size_t>(lo + chunk, samples);
            if (lo >= hi) continue;
            threads.emplace_back([&, lo, hi, t] {
                partial[t] = {};
                for (std::size_t i = lo; i < hi; ++i) ++partial[t][classify_sample(i)];
            });
        }
        for (auto& th : threads) th.join();
        for (const auto& p : partial)
            for (std::size_t c = 0; c < 5; ++c) rep.class_tallies[c] += p[c];
    }

    const Rational total(static_cast<long>(samples));
    if (samples > 0) {
        rep.fraction_prime_base_case =
            Rational(static_cast<long>(rep.class_tallies[static_cast<int>(ResidualClass::Prime)])) /
            total;
        rep.fraction_elementary_only =
            Rational(static_cast<long>(
                rep.class_tallies[static_cast<int>(ResidualClass::Permutation)])) /
            total;
    }
    return rep;
}

nlohmann::ordered_json run_report(const RunConfig& cfg) {
    if (cfg.subcommand == "classify") return classify_report(cfg);
    if (cfg.subcommand == "decompose") return decompose_report(cfg);
    if (cfg.subcommand == "sign-classes") return sign_classes_report(cfg);
    if (cfg.subcommand == "residual") return residual_report(cfg);
    if (cfg.subcommand == "witness-s2") return witness_s2_report(cfg);
    if (cfg.subcommand == "bench-error") return bench_error_report(cfg);
    if (cfg.subcommand == "stuck-fraction") return stuck_fraction_report(cfg);
    if (cfg.subcommand == "monoid") return monoid_report(cfg);
    throw ParseError("unknown subcommand '" + cfg.subcommand + "'");
}

namespace {

int emit(const RunConfig& cfg, std::ostream& fallback, const json& doc) {
    if (!cfg.output_path.empty()) {
        std::ofstream out(cfg.output_path);
        if (!out) {
            fallback << R"({"error":{"kind":"io","message":"cannot open output file"}})"
                     << "\n";
            return 2;
        }
        out << doc.dump(2) << "\n";
        return 0;
    }
    fallback << doc.dump(2) << "\n";
    return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& fallback_out) {
    try {
        const json doc = run_report(cfg);
        return emit(cfg, fallback_out, doc);
    } catch (const Error& e) {
        json err;
        err["error"]["kind"] = e.kind();
        err["error"]["message"] = e.what();
        emit(cfg, fallback_out, err);
        return 1;
    } catch (const ParseError& e) {
        json err;
        err["error"]["kind"] = "parse";
        err["error"]["message"] = e.what();
        emit(cfg, fallback_out, err);
        return 2;
    } catch (const std::exception& e) {
        json err;
        err["error"]["kind"] = "internal";
        err["error"]["message"] = e.what();
        emit(cfg, fallback_out, err);
        return 2;
    }
}

}  // namespace stogen
