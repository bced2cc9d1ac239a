// Command-line front end: hfinsler <command> <space.json> [options]

#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include <CLI11.hpp>

#include "hfinsler/commands.hpp"

namespace cli = hfinsler::cli;

int main(int argc, char** argv) {
    CLI::App app{"Homogeneous Finsler geometry over Lie-algebra data"};
    app.require_subcommand(1);
    app.fallthrough();

    cli::CommandOptions opts;
    app.add_flag("--json", opts.json, "Emit one JSON object instead of the text report");
    app.add_option("--tol", opts.tol, "Relative tolerance for zero tests")->capture_default_str();
    app.add_option("--seed", opts.seed, "Sampling seed")->capture_default_str();
    app.add_option("--samples", opts.samples, "Number of sampled directions")->capture_default_str();

    auto add = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("space", opts.space_path, "Space definition file (JSON)")->required();
        return sub;
    };
    add("validate", "Validate the space: Jacobi, closure, norm admissibility, Ad(H)-invariance");
    add("classify", "Decide whether the solvable group admits a negatively curved left-invariant metric");
    CLI::App* flag = add("flag", "Flag curvature by the homogeneous formula");
    flag->add_option("--u", opts.u, "Flagpole/anchor, coefficients over the g-basis")->required();
    flag->add_option("--v", opts.v, "Second vector of the flag, coefficients over the g-basis")->required();
    CLI::App* sectional = add("sectional", "Riemannian sectional curvature (Nomizu oracle)");
    sectional->add_option("--x", opts.x, "First vector")->required();
    sectional->add_option("--y", opts.y, "Second vector")->required();
    CLI::App* ricci = add("ricci", "Ricci scalar of a direction");
    ricci->add_option("--y", opts.y, "Direction, coefficients over the g-basis")->required();
    ricci->add_option("--backend", opts.backend, "go | riemannian")
        ->check(CLI::IsMember({"go", "riemannian"}))
        ->capture_default_str();
    add("go-check", "Sampled geodesic orbit feasibility check");
    add("scan", "Bracket positivity scan on [g,g] and abelian-ideal flag scan");
    add("all", "validate, classify, go-check and scan");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitInvalid;
    }

    opts.command = app.get_subcommands().front()->get_name();
    opts.color = !opts.json && std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO);

    const cli::CommandOutcome out = cli::run_command(opts);
    if (opts.json) {
        std::cout << out.record.dump(2) << "\n";
    } else {
        (out.exit_code == cli::kExitInvalid ? std::cerr : std::cout) << out.text;
    }
    return out.exit_code;
}
