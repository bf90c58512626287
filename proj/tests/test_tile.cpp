#include <catch2/catch.hpp>

#include <random>

#include "fractile/checks.hpp"
#include "fractile/expand.hpp"

using namespace fractile;

TEST_CASE("parse and format the grid grammar") {
    const Configuration sierpinski = parse_config("0 R0 / R0 R0");
    REQUIRE(sierpinski.n == 2);
    REQUIRE(sierpinski.cells == std::vector<std::uint8_t>{0, 1, 1, 1});
    REQUIRE(format_config(sierpinski) == "0 R0 / R0 R0");

    const Configuration carpet = parse_config("R0 R0 R0 / R0 0 R0 / R0 R0 R0");
    REQUIRE(carpet.n == 3);
    REQUIRE(occupied_count(carpet) == 8);
    REQUIRE_FALSE(carpet.occupied(1, 1));
}

TEST_CASE("parse errors carry the offending position") {
    REQUIRE_THROWS_WITH(parse_config("0 R0 / R9 R0"),
                        Catch::Contains("row 2, cell 1") && Catch::Contains("R9"));
    REQUIRE_THROWS_WITH(parse_config("0 R0 / R0"), Catch::Contains("row 2"));
    REQUIRE_THROWS_WITH(parse_config("0 R0 R0 / R0 R0 R0"), Catch::Contains("square"));
    REQUIRE_THROWS_AS(parse_config("   "), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_config("0 R0 R0 R0 R0 R0 / ..."), std::invalid_argument);
}

TEST_CASE("quadruplet notation round-trips") {
    const Configuration c = parse_config("(0,R1,R3,R0)");
    REQUIRE(c.cells == std::vector<std::uint8_t>{0, 2, 4, 1});
    REQUIRE(format_quadruplet(c) == "(0,R1,R3,R0)");
    REQUIRE(parse_config("(0, R1, R3, R0)") == c);
    REQUIRE_THROWS_AS(parse_config("(0,R1,R3)"), std::invalid_argument);
}

TEST_CASE("format/parse round-trip on random configurations") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng() % 4);
        std::vector<std::uint8_t> cells(static_cast<std::size_t>(n) * n);
        for (auto& d : cells) d = static_cast<std::uint8_t>(rng() % 9);
        const Configuration c = Configuration::from_cells(n, std::move(cells));
        REQUIRE(parse_config(format_config(c)) == c);
    }
}

TEST_CASE("compact encoding round-trips and orders like the digit sequence") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng() % 4);
        std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * n);
        std::vector<std::uint8_t> b(a.size());
        for (auto& d : a) d = static_cast<std::uint8_t>(rng() % 9);
        for (auto& d : b) d = static_cast<std::uint8_t>(rng() % 9);
        const Configuration ca = Configuration::from_cells(n, a);
        const Configuration cb = Configuration::from_cells(n, b);
        REQUIRE(decode(n, encode(ca)) == ca);
        REQUIRE((encode(ca) < encode(cb)) == (a < b));
    }
    REQUIRE_THROWS_AS(encode(Configuration::empty(5)), std::invalid_argument);
}

TEST_CASE("motif ids map to and from configurations") {
    REQUIRE(format_quadruplet(config_from_motif(111)) == "(0,R0,R0,R0)");
    REQUIRE(motif_id(parse_config("(0,R0,R0,R0)")) == 111);
    REQUIRE(motif_id(config_from_motif(548)) == 548);
    REQUIRE_THROWS_AS(config_from_motif(109), std::invalid_argument);
    REQUIRE_THROWS_AS(config_from_motif(190), std::invalid_argument);
    REQUIRE_THROWS_AS(motif_id(parse_config("(R0,0,R0,R0)")), std::invalid_argument);
}

TEST_CASE("expansion of an all-empty mask stays empty") {
    const Configuration c = Configuration::empty(2);
    for (int k = 0; k <= 4; ++k) {
        const BinaryPattern p = expand(c, k);
        REQUIRE(p.grid.side == 1 << (k + 1));
        REQUIRE(popcount(p.grid) == 0);
    }
}

TEST_CASE("depth zero returns the mask") {
    const Configuration c = parse_config("0 R0 / R3 K2");
    REQUIRE(expand(c, 0).grid == mask_of(c));
}

TEST_CASE("one-step expansion of the triangle seed") {
    const Configuration c = parse_config("0 R0 / R0 R0");
    const BinaryPattern p = expand(c, 1);
    REQUIRE(p.grid == Grid::from_rows({{0, 0, 0, 1},
                                       {0, 0, 1, 1},
                                       {0, 1, 0, 1},
                                       {1, 1, 1, 1}}));
}

TEST_CASE("triangle occupancy is 3^(k+1)") {
    const Configuration c = parse_config("0 R0 / R0 R0");
    std::uint64_t expected = 3;
    for (int k = 0; k <= 6; ++k) {
        REQUIRE(popcount(expand(c, k).grid) == expected);
        expected *= 3;
    }
}

TEST_CASE("expansions over the size limit are rejected, not truncated") {
    const Configuration c = parse_config("0 R0 / R0 R0");
    REQUIRE_THROWS_AS(expand(c, 4, 8), limit_error);
    REQUIRE_NOTHROW(expand(c, 2, 8));
    REQUIRE_THROWS_AS(expand(c, 60), limit_error);  // overflows any practical limit
}

TEST_CASE("the empty cell forces an empty quadrant at every level") {
    std::mt19937_64 rng(33);
    for (int zero = 0; zero < 4; ++zero) {
        std::vector<std::uint8_t> cells(4);
        for (int i = 0; i < 4; ++i)
            cells[i] = i == zero ? 0 : static_cast<std::uint8_t>(1 + rng() % 8);
        const Configuration c = Configuration::from_cells(2, std::move(cells));
        for (int k = 1; k <= 4; ++k) {
            const Grid g = expand(c, k).grid;
            const int block = g.side / 2;
            const int r0 = zero / 2 * block, c0 = zero % 2 * block;
            for (int r = 0; r < block; ++r)
                for (int col = 0; col < block; ++col)
                    REQUIRE(g.at(r0 + r, c0 + col) == 0);
        }
    }
}

TEST_CASE("labeled expansion with identity decorations is uniform") {
    const Configuration c = parse_config("R0 R0 / R0 R0");
    const LabeledPattern p = expand_labeled(c, 2);
    for (std::uint8_t v : p.grid.cells) REQUIRE(v == digit_of_transform(Transform::R0));
    const BinaryPattern b = forget_labels(p);
    REQUIRE(popcount(b.grid) == b.grid.cells.size());
}

TEST_CASE("labeled one-step expansion composes labels") {
    // Seed: empty at (1,1), R1 at (1,2), R0 at (2,1) and (2,2).
    const Configuration c = parse_config("0 R1 / R0 R0");
    const LabeledPattern p = expand_labeled(c, 1);
    REQUIRE(p.grid == Grid::from_rows({{0, 0, 3, 2},
                                       {0, 0, 0, 2},
                                       {0, 2, 0, 2},
                                       {1, 1, 1, 1}}));
}

TEST_CASE("forgetting labels matches the binary expansion") {
    std::mt19937_64 rng(34);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(rng() % 2);
        std::vector<std::uint8_t> cells(static_cast<std::size_t>(n) * n);
        for (auto& d : cells) d = static_cast<std::uint8_t>(rng() % 9);
        const Configuration c = Configuration::from_cells(n, std::move(cells));
        const int k = static_cast<int>(rng() % 4);
        REQUIRE(forget_labels(expand_labeled(c, k)) == expand(c, k));
    }
}

TEST_CASE("transform_config examples") {
    const Configuration c = parse_config("0 R0 / R3 K2");
    REQUIRE(transform_config(Transform::R0, c) == c);
    REQUIRE(format_quadruplet(transform_config(Transform::K1, parse_config("(0,R1,R0,R0)"))) ==
            "(0,R0,R3,R0)");
    REQUIRE(format_quadruplet(transform_config(Transform::K1, parse_config("(0,R0,K1,R2)"))) ==
            "(0,K1,R0,R2)");
}

TEST_CASE("transform_config commutes with expansion") {
    for (const char* text : {"(0,R1,R0,R0)", "(0,R0,K1,R2)"}) {
        const Configuration c = parse_config(text);
        for (Transform t : all_transforms)
            for (int k = 1; k <= 2; ++k)
                REQUIRE(expand(transform_config(t, c), k).grid ==
                        apply_transform(t, expand(c, k).grid));
    }
    const CheckResult res = check_expansion_commutation(300, 41);
    INFO(res.detail);
    REQUIRE(res.passed);
}

TEST_CASE("transform_config is an action") {
    std::mt19937_64 rng(35);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(rng() % 2);
        std::vector<std::uint8_t> cells(static_cast<std::size_t>(n) * n);
        for (auto& d : cells) d = static_cast<std::uint8_t>(rng() % 9);
        const Configuration c = Configuration::from_cells(n, std::move(cells));
        const Transform a = transform_from_index(static_cast<int>(rng() % 8));
        const Transform b = transform_from_index(static_cast<int>(rng() % 8));
        REQUIRE(transform_config(a, transform_config(b, c)) ==
                transform_config(compose(a, b), c));
    }
}

TEST_CASE("labeled expansion transforms by conjugation") {
    const CheckResult res = check_label_rules(100, 42);
    INFO(res.detail);
    REQUIRE(res.passed);
}

TEST_CASE("occupancy law on random configurations") {
    const CheckResult res = check_occupancy_law(200, 43);
    INFO(res.detail);
    REQUIRE(res.passed);
}

TEST_CASE("configuration side limits") {
    REQUIRE_THROWS_AS(Configuration::empty(0), std::invalid_argument);
    REQUIRE_THROWS_AS(Configuration::empty(6), std::invalid_argument);
    REQUIRE_NOTHROW(Configuration::empty(1));
    REQUIRE_NOTHROW(Configuration::empty(5));
}
