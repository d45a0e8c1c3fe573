#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "htr/app.hpp"

namespace {

void common_map_flags(CLI::App* sub, htr::app::RunConfig& c) {
    sub->add_option("--f", c.f, "named map (koebe, qt:t=, ft:t=, goodman, picard, identity) or theorem5");
    sub->add_option("--measures", c.measures, "measure JSON file {\"nu\":[...],\"mu\":[...]}");
    sub->add_option("--region", c.region, "disk:r=R | lens | halflens | psisub:c=C, optional ,eps=");
}

}  // namespace

int main(int argc, char** argv) {
    htr::app::RunConfig c;
    CLI::App app{"typically real harmonic maps: shear construction, certifiers and searches"};
    app.require_subcommand(1);
    app.add_option("--workers", c.workers, "worker threads (0: hardware concurrency)");

    auto* render = app.add_subcommand("render", "boundary image as CSV and SVG");
    common_map_flags(render, c);
    render->add_option("--n", c.n, "boundary resolution (default 1024)");
    render->add_option("--out", c.out, "output prefix for .csv and .svg (default render)");

    auto* certify = app.add_subcommand("certify", "boundary univalence verdict with typical-reality and Jacobian scans");
    common_map_flags(certify, c);
    certify->add_option("--n", c.n, "boundary resolution (default 2048, at least 256)");
    certify->add_flag("--expect-collision", c.expect_collision, "exit 0 on COLLISION instead of on CERTIFIED");

    auto* radius = app.add_subcommand("radius", "bracket the radius of univalence");
    radius->add_option("--kind", c.kind, "ru (sheared maps) or T (analytic members)")->check(CLI::IsMember({"ru", "T"}));
    radius->add_option("--samples", c.samples, "sampled members (default 20)");
    radius->add_option("--n", c.n, "boundary resolution (default 1024)");
    radius->add_option("--seed", c.seed, "sampling seed");

    auto* conj = app.add_subcommand("conjecture", "conjecture scans");
    conj->add_option("--id", c.id, "1, 2 or open3")->check(CLI::IsMember({"1", "2", "open3"}));
    conj->add_option("--samples", c.samples, "sampled members (default 100)");
    conj->add_option("--n", c.n, "boundary resolution (default 2048)");
    conj->add_option("--seed", c.seed, "sampling seed");

    auto* witness = app.add_subcommand("witness", "single witness computations");
    witness->add_option("--kind", c.kind, "critical | scaled | proposition | nonconvexity | theorem5 | coefficients");
    witness->add_option("--z", c.z, "point as re,im");
    witness->add_option("--alpha", c.alpha, "angle");
    witness->add_option("--s", c.s, "segment parameter s");
    witness->add_option("--t", c.t, "segment parameter t");
    witness->add_option("--lambda", c.lambda, "mixing weight");
    witness->add_option("--index", c.index, "coefficient index for --kind coefficients");
    witness->add_option("--n", c.n, "grid size for --kind coefficients (default 256)");

    auto* demo = app.add_subcommand("demo", "Picard multivalence and Goodman collision");
    demo->add_flag("--picard", c.picard, "Picard preimages");
    demo->add_flag("--goodman", c.goodman, "Goodman collision");
    demo->add_option("--w", c.w_re, "target value (real part)");
    demo->add_option("--w-im", c.w_im, "target value (imaginary part)");
    demo->add_option("--delta", c.delta, "neighbourhood radius about -1");
    demo->add_option("--k", c.k, "number of preimages");
    demo->add_option("--n", c.n, "certification resolution (default 2048)");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return htr::app::kUsage;
    }
    c.command = app.get_subcommands().front()->get_name();
    if (c.samples == 0) {
        if (c.command == "radius" && radius->count("--samples") == 0) c.samples = 20;
        if (c.command == "conjecture" && conj->count("--samples") == 0) c.samples = 100;
    }
    return htr::app::run(c, std::cout, std::cerr);
}
