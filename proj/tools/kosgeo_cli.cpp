// kosgeo: batch JSON computations for point configurations in complex
// hyperbolic space and Pick-kernel Gram data. One JSON document on stdin,
// one on stdout; see README for the per-verb schemas.

#include <CLI11.hpp>

#include <iostream>
#include <set>
#include <string>

#include "kosgeo/cli.hpp"

namespace {

const std::set<std::string> kNoInputVerbs = {"selftest"};

bool needs_sub(const std::string& verb) {
    return verb == "triangle" || verb == "assemble" || verb == "real-angles" || verb == "area";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariants, assembly gates, and angle criteria for finite point sets in "
                 "complex hyperbolic space"};
    app.name("kosgeo");

    std::string verb;
    std::string sub;
    double tol_eq = kosgeo::default_tol().eq_tol;
    double tol_psd = kosgeo::default_tol().psd_tol;
    std::uint64_t seed = 20240901;
    bool batch = false;
    bool signed_area = false;
    double quiggin_x = -1.0;

    app.add_option("verb", verb,
                   "invariants | moduli-encode | moduli-decode | congruent | triangle | "
                   "tetra-gate | assemble | q2-gate | cpp-certify | quiggin | real-angles | "
                   "cayley | area | selftest")
        ->required();
    app.add_option("subverb", sub, "subcommand for triangle/assemble/real-angles/area");
    app.add_option("--tol-eq", tol_eq, "relative scalar-equality tolerance");
    app.add_option("--tol-psd", tol_psd, "relative eigenvalue floor for PSD decisions");
    app.add_option("--seed", seed, "seed for randomized verbs");
    app.add_flag("--batch", batch, "stdin is a JSON array of inputs; emit a JSON array");
    app.add_flag("--signed-area", signed_area, "include orientation-signed areas in output");
    app.add_option("--x", quiggin_x, "parameter for the quiggin verb (alternative to stdin)");

    CLI11_PARSE(app, argc, argv);

    kosgeo::cli::JobSpec job;
    job.verb = verb;
    job.sub = sub;
    job.seed = seed;
    job.signed_area = signed_area;
    try {
        job.tol = kosgeo::Tolerance(tol_eq, tol_psd);
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    const bool reads_stdin =
        kNoInputVerbs.count(verb) == 0 && !(verb == "quiggin" && quiggin_x > 0.0);
    if (needs_sub(verb) && sub.empty()) {
        std::cerr << "verb '" << verb << "' requires a subcommand\n";
        return 2;
    }
    if (reads_stdin) {
        try {
            job.input = nlohmann::json::parse(std::cin);
        } catch (const nlohmann::json::exception& e) {
            std::cout << nlohmann::json{{"schema", "1"},
                                        {"error", e.what()},
                                        {"kind", "invalid_input"}}
                             .dump(2)
                      << "\n";
            return 2;
        }
    } else if (verb == "quiggin") {
        job.input = {{"x", quiggin_x}};
    }

    const kosgeo::cli::RunResult r =
        batch ? kosgeo::cli::run_batch(job) : kosgeo::cli::run(job);
    std::cout << r.output.dump(2) << "\n";
    return r.exit_code;
}
