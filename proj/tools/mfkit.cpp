#include <CLI11.hpp>

#include <iostream>

#include "mfk/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"mfkit - exact matrix factorization toolkit"};
    app.require_subcommand(1);

    mfk::CliRequest req;
    std::uint64_t budget_flag = 0;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input)
            sub->add_option("input", req.input_path, "input document file")->required();
        sub->add_option("--format", req.format, "output format: text | records");
        sub->add_option("--budget", budget_flag,
                        "step budget for long solves (default: MFKIT_BUDGET env or unlimited)");
    };
    auto add_degrees = [&](CLI::App* sub) {
        sub->add_option("--max-degree", req.max_degree, "truncation degree cap (default 12)");
        sub->add_option("--window", req.window, "stabilization window (default 2)");
    };

    auto* verify = app.add_subcommand("verify", "check the factorization identities");
    add_common(verify, true);
    verify->add_option("--name", req.name, "mf name")->required();

    for (const char* cmd : {"shift", "dual", "transpose-dual"}) {
        auto* sub = app.add_subcommand(cmd, std::string("emit the ") + cmd + " of an mf");
        add_common(sub, true);
        sub->add_option("--name", req.name, "mf name")->required();
    }

    for (const char* cmd : {"tensor", "direct-sum"}) {
        auto* sub = app.add_subcommand(cmd, std::string(cmd) + " of two factorizations");
        add_common(sub, true);
        sub->add_option("--left", req.left, "left mf name")->required();
        sub->add_option("--right", req.right, "right mf name")->required();
    }

    auto* sverify = app.add_subcommand("structure-verify", "check a bilinear structure");
    add_common(sverify, true);
    sverify->add_option("--name", req.structure, "structure name")->required();

    auto* ssearch = app.add_subcommand("structure-search", "solve for structures of one kind");
    add_common(ssearch, true);
    ssearch->add_option("--name", req.name, "mf name")->required();
    ssearch->add_option("--kind", req.kind, "untwisted | twisted")->required();
    ssearch->add_option("--degree", req.degree_bound, "entry degree bound (default 6)");

    auto* comm = app.add_subcommand("commutation-check", "adjoint commutation rule for a morphism");
    add_common(comm, true);
    comm->add_option("--morphism", req.morphism, "morphism name")->required();
    comm->add_option("--structure", req.structure, "structure on the source")->required();
    comm->add_option("--target-structure", req.target_structure,
                     "structure on the target (defaults to --structure)");

    auto* ext = app.add_subcommand("ext", "Ext dimensions of a pair");
    add_common(ext, true);
    add_degrees(ext);
    ext->add_option("--source", req.source, "source mf")->required();
    ext->add_option("--target", req.target, "target mf (defaults to source)");

    auto* esplit = app.add_subcommand("ext-split", "selfadjoint / anti-selfadjoint Ext split");
    add_common(esplit, true);
    add_degrees(esplit);
    esplit->add_option("--name", req.name, "mf name")->required();
    esplit->add_option("--structure", req.structure, "structure name")->required();

    auto* kn = app.add_subcommand("knorrer", "stabilize: factorization of x*y - pi");
    add_common(kn, true);
    kn->add_option("--name", req.name, "mf name")->required();
    kn->add_option("--new-vars", req.new_vars, "two fresh variable names")
        ->expected(2)
        ->required();
    kn->add_option("--structure", req.structure, "structure to transport");

    auto* kn2 = app.add_subcommand("knorrer-squared", "twice-stabilized factorization");
    add_common(kn2, true);
    kn2->add_option("--name", req.name, "mf name")->required();
    kn2->add_option("--new-vars", req.new_vars, "four fresh variable names")
        ->expected(4)
        ->required();
    kn2->add_option("--structure", req.structure, "structure to transport");

    auto* versal = app.add_subcommand("versal", "matrix-equation family with certificate");
    add_common(versal, false);
    versal->add_option("--rank", req.rank_param, "rank r of the generic pair (1 or 2)");
    versal->add_option("--mode", req.mode, "plain | orthogonal | symplectic");

    auto* deform = app.add_subcommand("deform", "deformation dimensions");
    add_common(deform, true);
    add_degrees(deform);
    deform->add_option("--name", req.name, "mf name")->required();

    auto* deforms = app.add_subcommand("deform-structured", "structured deformation dimensions");
    add_common(deforms, true);
    add_degrees(deforms);
    deforms->add_option("--name", req.name, "mf name")->required();
    deforms->add_option("--structure", req.structure, "structure name")->required();

    auto* examples = app.add_subcommand("examples", "list or emit bundled example documents");
    examples->add_option("--format", req.format, "output format: text | records");
    examples->add_option("--emit", req.example, "emit one example document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    req.command = app.get_subcommands().front()->get_name();
    if (budget_flag > 0) req.budget = budget_flag;
    return mfk::run_cli(req, std::cout, std::cerr);
}
