#pragma once

#include <array>
#include <cstdlib>
#include <optional>
#include <utility>

#include "fractile/config.hpp"

namespace fractile {

// Pattern after k expansion steps; side n^(k+1), depth 0 is the mask itself.
struct BinaryPattern {
    int depth = 0;
    Grid grid;
    bool operator==(const BinaryPattern&) const = default;
};

// Same geometry with each occupied cell carrying a transform digit.
struct LabeledPattern {
    int depth = 0;
    Grid grid;
    bool operator==(const LabeledPattern&) const = default;
};

inline std::size_t default_max_side() {
    if (const char* s = std::getenv("FRACTILE_MAX_SIDE")) {
        const long long v = std::atoll(s);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{1} << 15;
}

inline std::size_t expanded_side(int n, int depth, std::size_t max_side) {
    std::size_t side = static_cast<std::size_t>(n);
    if (side > max_side)
        throw limit_error("seed side " + std::to_string(n) + " exceeds the size limit " +
                          std::to_string(max_side));
    for (int j = 0; j < depth; ++j) {
        if (side > max_side / static_cast<std::size_t>(n))
            throw limit_error("expansion to depth " + std::to_string(depth) + " needs side " +
                              std::to_string(n) + "^" + std::to_string(depth + 1) +
                              ", over the size limit " + std::to_string(max_side));
        side *= static_cast<std::size_t>(n);
    }
    return side;
}

namespace detail {

// One substitution step: each occupied seed cell contributes the image of
// the current pattern under its transform; empty cells contribute zeros.
// `relabel` maps the digit placed in a block of transform t.
template <typename Relabel>
Grid expand_step(const Configuration& c, const Grid& cur, Relabel relabel) {
    const int block = cur.side;
    Grid next(block * c.n);
    std::array<std::optional<Grid>, 8> images;
    for (int r = 0; r < c.n; ++r)
        for (int col = 0; col < c.n; ++col) {
            if (!c.occupied(r, col)) continue;
            const Transform t = c.cell_transform(r, col);
            auto& img = images[index_of(t)];
            if (!img) {
                Grid moved = apply_transform(t, cur);
                for (std::uint8_t& v : moved.cells) v = relabel(t, v);
                img = std::move(moved);
            }
            for (int br = 0; br < block; ++br) {
                const std::size_t src = static_cast<std::size_t>(br) * block;
                const std::size_t dst =
                    (static_cast<std::size_t>(r) * block + br) * next.side +
                    static_cast<std::size_t>(col) * block;
                std::copy_n(img->cells.begin() + src, block, next.cells.begin() + dst);
            }
        }
    return next;
}

inline std::uint8_t keep_label(Transform, std::uint8_t v) { return v; }

inline std::uint8_t left_compose_label(Transform t, std::uint8_t v) {
    return v ? digit_of_transform(compose(t, transform_of_digit(v))) : 0;
}

}  // namespace detail

inline BinaryPattern expand(const Configuration& c, int depth,
                            std::size_t max_side = default_max_side()) {
    if (depth < 0) throw std::invalid_argument("expansion depth must be >= 0");
    expanded_side(c.n, depth, max_side);
    Grid cur = mask_of(c);
    for (int j = 0; j < depth; ++j) cur = detail::expand_step(c, cur, detail::keep_label);
    return {depth, std::move(cur)};
}

inline LabeledPattern expand_labeled(const Configuration& c, int depth,
                                     std::size_t max_side = default_max_side()) {
    if (depth < 0) throw std::invalid_argument("expansion depth must be >= 0");
    expanded_side(c.n, depth, max_side);
    Grid cur(c.n);
    cur.cells = c.cells;
    for (int j = 0; j < depth; ++j)
        cur = detail::expand_step(c, cur, detail::left_compose_label);
    return {depth, std::move(cur)};
}

// The texture action: move cells with t and left-compose every label by t.
inline LabeledPattern transform_labeled(Transform t, const LabeledPattern& p) {
    LabeledPattern out{p.depth, apply_transform(t, p.grid)};
    for (std::uint8_t& v : out.grid.cells) v = detail::left_compose_label(t, v);
    return out;
}

inline BinaryPattern forget_labels(const LabeledPattern& p) {
    BinaryPattern out{p.depth, p.grid};
    for (std::uint8_t& v : out.grid.cells) v = v != 0;
    return out;
}

}  // namespace fractile
