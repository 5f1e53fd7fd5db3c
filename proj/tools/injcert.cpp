#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "inj/config.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string emit_grid;
    int threads = 0;
    int max_depth = -1;
    long long max_boxes = -1;
    long long seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "problem description file (JSON)")
        ->required();
    cmd->add_option("--out", args.out_path, "also write the report to this path");
    cmd->add_option("--threads", args.threads, "bound the OpenMP worker count");
    cmd->add_option("--max-depth", args.max_depth, "override budget.max_depth");
    cmd->add_option("--max-boxes", args.max_boxes, "override budget.max_boxes");
    cmd->add_option("--seed", args.seed, "override oracle.seed");
    cmd->add_option("--emit-grid", args.emit_grid,
                    "write a 101x101 CSV of pointwise margins (certify only)");
}

inj::RunFlags to_flags(const CommonArgs& args) {
    inj::RunFlags f;
    f.threads = args.threads;
    if (args.max_depth >= 0) f.max_depth = args.max_depth;
    if (args.max_boxes >= 0) f.max_boxes = static_cast<std::uint64_t>(args.max_boxes);
    if (args.seed >= 0) f.seed = static_cast<std::uint64_t>(args.seed);
    if (!args.emit_grid.empty()) f.emit_grid = args.emit_grid;
    return f;
}

int emit(const inj::RunResult& result, const CommonArgs& args) {
    const std::string text = result.report.dump(2);
    std::cout << text << std::endl;
    if (!args.out_path.empty()) {
        std::ofstream out(args.out_path);
        if (!out) {
            std::cerr << "error: cannot write report to " << args.out_path << std::endl;
            return 2;
        }
        out << text << std::endl;
    }
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"injcert - interval certification of injectivity and univalence "
                 "criteria over box domains"};
    app.require_subcommand(1);

    CommonArgs certify_args, witness_args, falsify_args, monotone_args;
    CLI::App* certify = app.add_subcommand(
        "certify", "rigorously verify a criterion margin over the whole domain");
    add_common(certify, certify_args);
    CLI::App* witness = app.add_subcommand(
        "witness", "search for a criterion angle or witness pair");
    add_common(witness, witness_args);
    CLI::App* falsify = app.add_subcommand(
        "falsify", "search for a collision pair disproving injectivity");
    add_common(falsify, falsify_args);
    CLI::App* monotone = app.add_subcommand(
        "monotone", "sample the relative-monotonicity inner product");
    add_common(monotone, monotone_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    const CommonArgs* args = nullptr;
    if (certify->parsed()) args = &certify_args;
    else if (witness->parsed()) args = &witness_args;
    else if (falsify->parsed()) args = &falsify_args;
    else args = &monotone_args;

#ifdef _OPENMP
    if (args->threads > 0) omp_set_num_threads(args->threads);
#endif

    try {
        const inj::ProblemConfig cfg = inj::load_config(args->config_path);
        const inj::RunFlags flags = to_flags(*args);
        inj::RunResult result;
        if (certify->parsed()) result = inj::run_certify(cfg, flags);
        else if (witness->parsed()) result = inj::run_witness(cfg, flags);
        else if (falsify->parsed()) result = inj::run_falsify(cfg, flags);
        else result = inj::run_monotone(cfg, flags);
        return emit(result, *args);
    } catch (const inj::Error& e) {
        // configuration / validation problems: diagnostic and exit 2
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return 2;
    }
}
