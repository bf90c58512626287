// Command-line front end: rendering, censuses, verification, gallery and
// mask classification.
//
// Exit codes: 0 success, 1 usage or parse error, 2 verification mismatch,
// 3 resource limit.

#include <chrono>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "fractile/fractile.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_verification = 2;
constexpr int exit_limit = 3;

struct ConfigSource {
    std::string config_text;
    std::string preset_name;
    int motif = 0;

    fractile::Configuration resolve() const {
        if (!config_text.empty()) return fractile::parse_config(config_text);
        if (!preset_name.empty()) return fractile::preset(preset_name);
        if (motif) return fractile::config_from_motif(motif);
        throw std::invalid_argument("one of --config, --preset or --motif is required");
    }
};

void add_config_options(CLI::App* cmd, ConfigSource& src) {
    auto* config = cmd->add_option("--config", src.config_text,
                                   "configuration string, e.g. \"0 R0 / R0 R0\"");
    auto* preset = cmd->add_option("--preset", src.preset_name, "named preset configuration");
    auto* motif = cmd->add_option("--motif", src.motif, "motif id (three digits, each 1..8)");
    config->excludes(preset)->excludes(motif);
    preset->excludes(config)->excludes(motif);
    motif->excludes(config)->excludes(preset);
}

int run_render(const ConfigSource& src, int depth, const std::string& mode, int scale,
               std::string format_name, const std::string& out) {
    using namespace fractile;
    const auto t0 = std::chrono::steady_clock::now();
    const Configuration c = src.resolve();
    const bool texture = mode == "texture";
    if (!texture && mode != "binary")
        throw std::invalid_argument("mode must be 'binary' or 'texture'");
    if (format_name.empty()) format_name = texture ? "p6" : "p4";
    const auto format = image_format_from_name(format_name);
    if (!format) throw std::invalid_argument("format must be p1, p4 or p6");
    if (texture && *format != ImageFormat::p6)
        throw std::invalid_argument("texture mode requires the p6 format");

    RasterImage img;
    std::uint64_t pop = 0;
    std::size_t side = 0;
    if (texture) {
        const LabeledPattern p = expand_labeled(c, depth);
        side = static_cast<std::size_t>(p.grid.side);
        pop = popcount(p.grid);
        img = rasterize_labeled(p, scale);
    } else {
        const BinaryPattern p = expand(c, depth);
        side = static_cast<std::size_t>(p.grid.side);
        pop = popcount(p.grid);
        img = rasterize(p, scale);
    }
    write_file_atomic(out, encode_image(img, *format));
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::cout << "side=" << side << " popcount=" << pop << " file=" << out
              << " elapsed_ms=" << ms << '\n';
    return exit_ok;
}

int run_census(int n, std::string mode, int workers, const std::string& scope_name,
               const std::string& report_path) {
    using namespace fractile;
    if (mode.empty()) mode = n == 2 ? "exhaustive" : "closed-form";
    CensusReport rep;
    if (n == 2 && mode == "exhaustive") {
        rep = census_2x2();
    } else if (n == 3 && mode == "closed-form") {
        rep = closed_form_3x3();
    } else if (n == 3 && mode == "brute-force") {
        BruteForceOptions opt;
        opt.workers = workers;
        const auto scope = brute_scope_from_name(scope_name);
        if (!scope)
            throw std::invalid_argument(
                "scope must be masks-only, redundancy-only, fixed-points or full");
        opt.scope = *scope;
        rep = brute_force_3x3(opt);
    } else {
        throw std::invalid_argument("supported censuses: n=2 exhaustive, n=3 closed-form, "
                                    "n=3 brute-force");
    }
    const std::string text = to_text(rep);
    std::cout << text;
    if (!report_path.empty()) write_file_atomic(report_path, text);
    if (!rep.ok()) {
        for (const auto& f : rep.failures) std::cerr << "mismatch: " << f << '\n';
        return exit_verification;
    }
    return exit_ok;
}

int run_verify(const std::string& level, int workers) {
    if (level != "quick" && level != "full")
        throw std::invalid_argument("level must be 'quick' or 'full'");
    const auto results = fractile::run_verify(level == "full", workers, &std::cout);
    for (const auto& r : results)
        if (!r.passed) {
            std::cerr << "verification failed: " << r.name << ": " << r.detail << '\n';
            return exit_verification;
        }
    std::cout << "all " << results.size() << " checks passed\n";
    return exit_ok;
}

int run_gallery(const std::string& out_dir, int depth, int scale) {
    using namespace fractile;
    const auto motifs = list_motifs_2x2();
    const GalleryResult res = gallery(motifs, out_dir, depth, scale);
    std::cout << "wrote " << res.entries.size() << " images to " << out_dir << " (manifest "
              << res.manifest.string() << ", sheet " << res.sheet.string() << ")\n";
    return exit_ok;
}

int run_masks(int n) {
    using namespace fractile;
    const MaskClassification mc = classify_masks(n);
    std::cout << "n = " << mc.n << '\n'
              << "masks = " << mc.total << '\n'
              << "main_diagonal_symmetric = " << mc.main_symmetric << '\n'
              << "anti_diagonal_symmetric = " << mc.anti_symmetric << '\n'
              << "ds12 = " << mc.ds12 << '\n'
              << "ds1 = " << mc.ds1 << '\n'
              << "ds2 = " << mc.ds2 << '\n'
              << "neither = " << mc.neither << '\n'
              << "classes_up_to_rotation = " << mc.rotation_classes << '\n'
              << "classes_up_to_full_group = " << mc.full_group_classes << '\n';
    for (const auto& [k, v] : mc.notes) std::cout << "note." << k << " = " << v << '\n';
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractal tiling generator and census toolkit\n"
                 "The maximum pattern side (default 32768 cells) is configurable via the\n"
                 "FRACTILE_MAX_SIDE environment variable."};
    app.require_subcommand(1);

    ConfigSource render_src;
    int render_depth = 5, render_scale = 1;
    std::string render_mode = "binary", render_format, render_out = "out.pbm";
    auto* render = app.add_subcommand("render", "expand a configuration and write an image");
    add_config_options(render, render_src);
    render->add_option("--depth", render_depth, "expansion depth")->default_val(5);
    render->add_option("--mode", render_mode, "binary | texture")->default_val("binary");
    render->add_option("--scale", render_scale, "pixels per cell")->default_val(1);
    render->add_option("--format", render_format, "p1 | p4 | p6 (default p4, texture p6)");
    render->add_option("--out", render_out, "output file")->default_val("out.pbm");

    int census_n = 2, census_workers = 0;
    std::string census_mode, census_scope = "full", census_report;
    auto* census = app.add_subcommand("census", "count configurations and orbits");
    census->add_option("--n", census_n, "seed side (2 or 3)")->default_val(2);
    census->add_option("--mode", census_mode, "exhaustive | closed-form | brute-force");
    census->add_option("--workers", census_workers, "worker threads (0 = hardware)");
    census->add_option("--scope", census_scope,
                       "brute-force scope: masks-only | redundancy-only | fixed-points | full");
    census->add_option("--report", census_report, "also write the report to this file");

    std::string verify_level = "quick";
    int verify_workers = 0;
    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    verify->add_option("--level", verify_level, "quick | full")->default_val("quick");
    verify->add_option("--workers", verify_workers, "worker threads for the full level");

    std::string gallery_dir = "gallery";
    int gallery_depth = 6, gallery_scale = 1;
    auto* gallery_cmd = app.add_subcommand("gallery", "render every motif plus an index sheet");
    gallery_cmd->add_option("--out-dir", gallery_dir, "output directory")->default_val("gallery");
    gallery_cmd->add_option("--depth", gallery_depth, "expansion depth")->default_val(6);
    gallery_cmd->add_option("--scale", gallery_scale, "pixels per cell")->default_val(1);

    int masks_n = 3;
    auto* masks = app.add_subcommand("masks", "classify zero masks by diagonal symmetry");
    masks->add_option("--n", masks_n, "mask side")->default_val(3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? exit_usage : exit_ok;
    }

    try {
        if (render->parsed())
            return run_render(render_src, render_depth, render_mode, render_scale,
                              render_format, render_out);
        if (census->parsed())
            return run_census(census_n, census_mode, census_workers, census_scope,
                              census_report);
        if (verify->parsed()) return run_verify(verify_level, verify_workers);
        if (gallery_cmd->parsed()) return run_gallery(gallery_dir, gallery_depth, gallery_scale);
        if (masks->parsed()) return run_masks(masks_n);
    } catch (const fractile::limit_error& e) {
        std::cerr << "limit error: " << e.what() << '\n';
        return exit_limit;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_verification;
    }
    return exit_usage;
}
