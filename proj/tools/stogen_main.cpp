#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stogen/cli_run.hpp"
#include "stogen/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact divisibility analysis and generating-set factorization "
                 "of column-stochastic matrices"};
    app.require_subcommand(1);

    stogen::RunConfig cfg;
    std::string eps_str = "1/1000";

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output", cfg.output_path, "write the JSON report to this file");
    };
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input_path, "matrix JSON file")->required();
        add_output(sub);
    };

    auto* classify = app.add_subcommand("classify", "decide divisibility of a matrix");
    add_input(classify);

    auto* decompose =
        app.add_subcommand("decompose", "factor a 2x2 or 3x3 matrix over the generating set");
    add_input(decompose);
    decompose->add_flag("--dim-check", cfg.dim_check,
                        "fail before reading entries if the dimension is unsupported");

    auto* sign_classes =
        app.add_subcommand("sign-classes", "census of sign-pattern classes for a dimension");
    sign_classes->add_option("--dim", cfg.dim, "dimension (2..4)")->required();
    add_output(sign_classes);

    auto* residual =
        app.add_subcommand("residual", "the sign classes admitting no progress pair");
    residual->add_option("--dim", cfg.dim, "dimension (must be 3)")->capture_default_str();
    add_output(residual);

    auto* witness = app.add_subcommand("witness-s2", "check whether a 2x2 matrix needs 4 factors");
    add_input(witness);

    auto* bench = app.add_subcommand("bench-error", "perturbation bound bench on a factorization");
    add_input(bench);
    bench->add_option("--eps", eps_str, "perturbation radius, a rational like 1/1000")
        ->capture_default_str();
    bench->add_option("--trials", cfg.trials, "number of perturbation trials")
        ->capture_default_str();
    bench->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();

    auto* stuck = app.add_subcommand(
        "stuck-fraction", "fraction of random 3x3 matrices whose division loop hits each base case");
    stuck->add_option("--samples", cfg.samples, "number of sampled matrices")
        ->capture_default_str();
    stuck->add_option("--dbound", cfg.denominator_bound, "denominator bound of the sampler")
        ->capture_default_str();
    stuck->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
    stuck->add_option("--jobs", cfg.jobs, "worker threads")->capture_default_str();
    add_output(stuck);

    auto* monoid =
        app.add_subcommand("monoid", "closure/units/indivisibles/building blocks of boolean matrices");
    monoid->add_option("--input", cfg.input_path, "JSON array of {\"dim\",\"rows\"} generators")
        ->required();
    monoid->add_option("--cap", cfg.closure_cap, "closure element cap")->capture_default_str();
    add_output(monoid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    try {
        cfg.eps = stogen::Rational::from_string(eps_str);
    } catch (const stogen::ParseError& e) {
        std::cerr << "bad --eps value: " << e.what() << "\n";
        return 2;
    }
    return stogen::run(cfg, std::cout);
}
