#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "shukla/error.hpp"
#include "shukla/field.hpp"
#include "shukla/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact cohomology of algebra presentations over a commutative base"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string field_str = "Q";
    std::size_t truncation = 4;
    std::size_t cap = shukla::kDefaultSizeCap;
    std::string format_str = "table";
    std::uint64_t seed = 42;

    app.add_option("--field", field_str, "coefficient field: Q or Fp:<p>");
    app.add_option("--n", truncation, "truncation degree (default 4)");
    app.add_option("--cap", cap, "matrix entry cap per assembled differential");
    app.add_option("--format", format_str, "output format: table or json");
    app.add_option("--seed", seed, "seed for the randomized suites");

    bool lie = false;
    std::string over_a;
    std::vector<std::string> validate_in, cohomology_in, hochschild_in, compare_in, ext2_in,
        ext3_in, builtin_in;

    auto* c_validate = app.add_subcommand("validate", "check presentation axioms for a triple");
    c_validate->add_option("inputs", validate_in, "<A> <R> <M> (files or builtin names)")
        ->expected(3);
    c_validate->add_flag("--lie", lie, "treat the triple as <A> <L> <M>");

    auto* c_cohomology =
        app.add_subcommand("cohomology", "total cohomology of the presentation bicomplex");
    c_cohomology->add_option("inputs", cohomology_in, "<A> <R> <M> (files or builtin names)")
        ->expected(3);
    c_cohomology->add_flag("--lie", lie, "Lie flavor: inputs are <A> <L> <M>");

    auto* c_hochschild =
        app.add_subcommand("hochschild", "classical cochain complex, optionally base-relative");
    c_hochschild->add_option("inputs", hochschild_in, "<R> <M> (files or builtin names)")
        ->expected(2);
    c_hochschild->add_option("--over-a", over_a, "compute relative to this base algebra");

    auto* c_compare = app.add_subcommand(
        "compare", "comparison map from base-relative to total cohomology, degree by degree");
    c_compare->add_option("inputs", compare_in, "<A> <R> <M> (files or builtin names)")
        ->expected(3);

    auto* c_ext2 = app.add_subcommand("ext2", "degree-2 cocycle and extension dictionary");
    c_ext2->add_option("args", ext2_in,
                       "check|build|extract <A> <R> <M> <file>, or classify <A> <R> <M>")
        ->expected(4, 5);

    auto* c_ext3 = app.add_subcommand("ext3", "degree-3 cocycles and crossed extensions");
    c_ext3->add_option("args", ext3_in, "check|crossed|from-crossed <A> <R> <M> <file>")
        ->expected(5);

    auto* c_builtin = app.add_subcommand("builtin", "catalog of named example presentations");
    c_builtin->add_option("args", builtin_in, "list, or emit <name>")->expected(1, 2);

    auto* c_selftest =
        app.add_subcommand("selftest", "run the deterministic property suite and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 64;
    }

    try {
        shukla::RunConfig cfg;
        cfg.field = shukla::FieldSpec::parse(field_str);
        cfg.truncation = truncation;
        cfg.cap = cap;
        cfg.format = shukla::parse_format(format_str);
        cfg.seed = seed;
        cfg.lie = lie;
        cfg.over_a = over_a;

        if (c_validate->parsed()) {
            cfg.command = "validate";
            cfg.args = validate_in;
        } else if (c_cohomology->parsed()) {
            cfg.command = "cohomology";
            cfg.args = cohomology_in;
        } else if (c_hochschild->parsed()) {
            cfg.command = "hochschild";
            cfg.args = hochschild_in;
        } else if (c_compare->parsed()) {
            cfg.command = "compare";
            cfg.args = compare_in;
        } else if (c_ext2->parsed()) {
            cfg.command = "ext2";
            cfg.args = ext2_in;
        } else if (c_ext3->parsed()) {
            cfg.command = "ext3";
            cfg.args = ext3_in;
        } else if (c_builtin->parsed()) {
            cfg.command = "builtin";
            cfg.args = builtin_in;
        } else if (c_selftest->parsed()) {
            cfg.command = "selftest";
        }

        return shukla::run(cfg, std::cout, std::cerr);
    } catch (const shukla::Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
}
