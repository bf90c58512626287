#include <catch2/catch.hpp>

#include <filesystem>
#include <fstream>

#include "fractile/census.hpp"
#include "fractile/render.hpp"

using namespace fractile;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir(const std::string& sub) {
    const fs::path p = fs::path(FRACTILE_TEST_TMP) / sub;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("rasterize basics") {
    const BinaryPattern zeros{0, Grid(2)};
    const RasterImage img = rasterize(zeros, 1);
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 2);
    for (auto v : img.pixels) REQUIRE(v == 0);

    const BinaryPattern tri = expand(preset("sierpinski-triangle"), 1);
    const RasterImage t1 = rasterize(tri, 1);
    REQUIRE(t1.width == 4);
    std::uint64_t fg = 0;
    for (auto v : t1.pixels) fg += v != 0;
    REQUIRE(fg == 9);

    const RasterImage t3 = rasterize(tri, 3);
    REQUIRE(t3.width == 12);
    std::uint64_t fg3 = 0;
    for (auto v : t3.pixels) fg3 += v != 0;
    REQUIRE(fg3 == 9 * 9);
}

TEST_CASE("rasterize respects the dimension limit") {
    const BinaryPattern p = expand(preset("sierpinski-triangle"), 3);
    REQUIRE_THROWS_AS(rasterize(p, 10, 100), limit_error);
    REQUIRE_THROWS_AS(rasterize(p, 0), std::invalid_argument);
}

TEST_CASE("labeled rasterization") {
    const Configuration uniform = parse_config("R0 R0 / R0 R0");
    const RasterImage img = rasterize_labeled(expand_labeled(uniform, 2), 1);
    for (auto v : img.pixels) REQUIRE(v == digit_of_transform(Transform::R0));

    // Binary projection of the labeled raster equals the binary raster.
    const Configuration c = parse_config("R0 R1 / K2 K3");
    const LabeledPattern lab = expand_labeled(c, 3);
    RasterImage projected = rasterize_labeled(lab, 2);
    for (auto& v : projected.pixels) v = v != 0;
    REQUIRE(projected == rasterize(forget_labels(lab), 2));
}

TEST_CASE("rasterization commutes with the geometric action at scale 1") {
    const BinaryPattern p = expand(preset("demo-2x2-r3k2"), 3);
    for (Transform t : all_transforms) {
        const RasterImage direct = rasterize({p.depth, apply_transform(t, p.grid)}, 1);
        RasterImage moved;
        moved.width = moved.height = p.grid.side;
        moved.pixels.resize(p.grid.cells.size());
        for (int r = 0; r < p.grid.side; ++r)
            for (int c = 0; c < p.grid.side; ++c) {
                const auto [nr, nc] = map_cell(t, r, c, p.grid.side);
                moved.pixels[static_cast<std::size_t>(nr) * moved.width + nc] =
                    rasterize(p, 1).at(r, c);
            }
        REQUIRE(direct == moved);
    }
}

TEST_CASE("plain bitmap encoding") {
    RasterImage img;
    img.width = 2;
    img.height = 2;
    img.pixels = {1, 0, 0, 1};
    REQUIRE(encode_p1(img) == "P1\n2 2\n1 0\n0 1\n");
}

TEST_CASE("binary bitmap encoding pads rows to whole bytes") {
    RasterImage img;
    img.width = 10;
    img.height = 2;
    img.pixels.assign(20, 0);
    img.pixels[0] = 1;   // row 0, col 0
    img.pixels[9] = 1;   // row 0, col 9
    img.pixels[19] = 1;  // row 1, col 9
    const std::string bytes = encode_p4(img);
    const std::string header = "P4\n10 2\n";
    REQUIRE(bytes.substr(0, header.size()) == header);
    REQUIRE(bytes.size() == header.size() + 4);  // two bytes per row
    REQUIRE(static_cast<unsigned char>(bytes[header.size() + 0]) == 0x80);
    REQUIRE(static_cast<unsigned char>(bytes[header.size() + 1]) == 0x40);
    REQUIRE(static_cast<unsigned char>(bytes[header.size() + 2]) == 0x00);
    REQUIRE(static_cast<unsigned char>(bytes[header.size() + 3]) == 0x40);
}

TEST_CASE("pixmap encoding uses the fixed palette") {
    RasterImage img;
    img.width = 1;
    img.height = 2;
    img.pixels = {0, digit_of_transform(Transform::R0)};
    const std::string bytes = encode_p6(img);
    const std::string header = "P6\n1 2\n255\n";
    REQUIRE(bytes.substr(0, header.size()) == header);
    REQUIRE(bytes.size() == header.size() + 6);
    REQUIRE(static_cast<unsigned char>(bytes[header.size()]) == 255);      // background
    REQUIRE(static_cast<unsigned char>(bytes[header.size() + 3]) == 0);    // R0 black
}

TEST_CASE("atomic writes leave no temporaries") {
    const fs::path dir = tmp_dir("atomic");
    const fs::path file = dir / "out.bin";
    write_file_atomic(file, "payload");
    REQUIRE(read_file(file) == "payload");
    write_file_atomic(file, "replaced");
    REQUIRE(read_file(file) == "replaced");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
    REQUIRE(entries == 1);
}

TEST_CASE("presets") {
    REQUIRE(preset("sierpinski-triangle") == parse_config("0 R0 / R0 R0"));
    REQUIRE(preset("sierpinski-carpet") == parse_config("R0 R0 R0 / R0 0 R0 / R0 R0 R0"));
    const Configuration koch = preset("von-koch");
    REQUIRE(koch.n == 3);
    for (int i = 0; i < 3; ++i) REQUIRE_FALSE(koch.occupied(i, i));
    REQUIRE(occupied_count(koch) == 6);
    REQUIRE(preset("maple-leaf") == parse_config("(0,R0,R0,R2)"));
    REQUIRE(preset("demo-2x2-r3k2") == parse_config("(0,R0,R3,K2)"));
    REQUIRE(preset("demo-3x3-rot") == parse_config("0 0 R0 / 0 0 R1 / R0 R3 R2"));
    REQUIRE_THROWS_WITH(preset("sierpinski"),
                        Catch::Contains("unknown preset") && Catch::Contains("von-koch"));
}

TEST_CASE("gallery of a single configuration") {
    const fs::path dir = tmp_dir("gallery-single");
    const GalleryResult res = gallery({config_from_motif(111)}, dir, 3);
    REQUIRE(res.entries.size() == 1);
    REQUIRE(res.entries[0].file == "motif111.pbm");
    REQUIRE(fs::exists(dir / "motif111.pbm"));
    REQUIRE(fs::exists(res.manifest));
    REQUIRE(fs::exists(res.sheet));
    REQUIRE(read_file(res.manifest) == "motif111.pbm\tmotif111\t0 R0 / R0 R0\n");
}

TEST_CASE("gallery rejects empty input") {
    REQUIRE_THROWS_AS(gallery({}, tmp_dir("gallery-empty"), 3), std::invalid_argument);
}

TEST_CASE("gallery reruns are byte-identical") {
    const std::vector<Configuration> configs = {config_from_motif(111), config_from_motif(123),
                                                config_from_motif(348)};
    const fs::path a = tmp_dir("gallery-a");
    const fs::path b = tmp_dir("gallery-b");
    gallery(configs, a, 4);
    gallery(configs, b, 4);
    for (const char* name : {"motif111.pbm", "motif123.pbm", "motif348.pbm", "index.txt",
                             "index.pbm"})
        REQUIRE(read_file(a / name) == read_file(b / name));
}

TEST_CASE("same-orbit configurations render congruent images") {
    const Configuration c = config_from_motif(123);
    const Configuration moved = transform_config(Transform::R1, c);
    const RasterImage img = rasterize(expand(c, 4), 1);
    const RasterImage moved_img = rasterize(expand(moved, 4), 1);
    RasterImage rotated;
    rotated.width = rotated.height = img.width;
    rotated.pixels.resize(img.pixels.size());
    for (int r = 0; r < img.height; ++r)
        for (int col = 0; col < img.width; ++col) {
            const auto [nr, nc] = map_cell(Transform::R1, r, col, img.width);
            rotated.pixels[static_cast<std::size_t>(nr) * img.width + nc] = img.at(r, col);
        }
    REQUIRE(moved_img == rotated);
}

TEST_CASE("preset renders match the committed golden files") {
    const fs::path golden(FRACTILE_GOLDEN_DIR);
    const std::vector<std::pair<std::string, int>> fixtures = {
        {"sierpinski-triangle", 5}, {"maple-leaf", 5},    {"demo-2x2-r3k2", 5},
        {"sierpinski-carpet", 3},   {"von-koch", 3},      {"demo-3x3-rot", 3},
    };
    for (const auto& [name, depth] : fixtures) {
        const fs::path file = golden / (name + "-d" + std::to_string(depth) + ".pbm");
        INFO(file.string());
        REQUIRE(fs::exists(file));
        const std::string expected = read_file(file);
        const std::string actual = encode_p4(rasterize(expand(preset(name), depth), 1));
        REQUIRE(actual == expected);
    }
}

TEST_CASE("textural golden file") {
    const fs::path file = fs::path(FRACTILE_GOLDEN_DIR) / "texture-k3k1-d4.ppm";
    REQUIRE(fs::exists(file));
    const Configuration c = parse_config("R0 R0 / K3 K1");
    const std::string actual = encode_p6(rasterize_labeled(expand_labeled(c, 4), 1));
    REQUIRE(actual == read_file(file));
}
