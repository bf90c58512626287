#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fractile/transform.hpp"

namespace fractile {

// Dense square cell matrix. Values are small labels: 0/1 for binary
// patterns, 0..8 for labeled ones.
struct Grid {
    int side = 0;
    std::vector<std::uint8_t> cells;

    Grid() = default;
    explicit Grid(int side_, std::uint8_t fill = 0)
        : side(side_),
          cells(static_cast<std::size_t>(side_) * static_cast<std::size_t>(side_), fill) {}

    static Grid from_rows(const std::vector<std::vector<std::uint8_t>>& rows) {
        const std::size_t n = rows.size();
        if (n == 0) throw std::invalid_argument("matrix has no rows");
        for (std::size_t r = 0; r < n; ++r)
            if (rows[r].size() != n)
                throw std::invalid_argument(
                    "matrix is not square: row " + std::to_string(r + 1) + " has " +
                    std::to_string(rows[r].size()) + " cells, expected " + std::to_string(n));
        Grid g(static_cast<int>(n));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) g.cells[r * n + c] = rows[r][c];
        return g;
    }

    std::uint8_t at(int r, int c) const {
        return cells[static_cast<std::size_t>(r) * side + c];
    }
    std::uint8_t& at(int r, int c) {
        return cells[static_cast<std::size_t>(r) * side + c];
    }

    bool operator==(const Grid&) const = default;
};

inline Grid apply_transform(Transform t, const Grid& g) {
    Grid out(g.side);
    for (int r = 0; r < g.side; ++r)
        for (int c = 0; c < g.side; ++c) {
            const auto [nr, nc] = map_cell(t, r, c, g.side);
            out.at(nr, nc) = g.at(r, c);
        }
    return out;
}

inline std::uint64_t popcount(const Grid& g) {
    std::uint64_t n = 0;
    for (std::uint8_t v : g.cells) n += v != 0;
    return n;
}

enum class DiagonalAxis { main, anti };

constexpr Transform axis_reflection(DiagonalAxis a) {
    return a == DiagonalAxis::main ? Transform::K1 : Transform::K3;
}

inline bool is_diagonal_symmetric(const Grid& g, DiagonalAxis a) {
    const Transform t = axis_reflection(a);
    for (int r = 0; r < g.side; ++r)
        for (int c = 0; c < g.side; ++c) {
            const auto [nr, nc] = map_cell(t, r, c, g.side);
            if (g.at(nr, nc) != g.at(r, c)) return false;
        }
    return true;
}

}  // namespace fractile
