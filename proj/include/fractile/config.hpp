#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fractile/errors.hpp"
#include "fractile/grid.hpp"

namespace fractile {

// Seed tiles above this side are rejected; patterns they generate are
// unbounded anyway and the compact encoding below stops at 4.
inline constexpr int max_config_side = 5;

constexpr std::uint8_t digit_of_transform(Transform t) {
    return static_cast<std::uint8_t>(index_of(t) + 1);
}
constexpr Transform transform_of_digit(std::uint8_t digit) {
    return transform_from_index(digit - 1);
}

// A seed tile: the zero mask plus a transform on every occupied cell.
// Cells hold 0 (empty) or a transform digit 1..8 (R0=1 .. K3=8).
struct Configuration {
    int n = 0;
    std::vector<std::uint8_t> cells;

    static Configuration from_cells(int n, std::vector<std::uint8_t> cells) {
        if (n < 1) throw std::invalid_argument("configuration side must be >= 1");
        if (n > max_config_side)
            throw std::invalid_argument("configuration side " + std::to_string(n) +
                                        " exceeds the supported maximum " +
                                        std::to_string(max_config_side));
        if (cells.size() != static_cast<std::size_t>(n) * n)
            throw std::invalid_argument("configuration cell count does not match side");
        for (std::uint8_t d : cells)
            if (d > 8) throw std::invalid_argument("configuration cell value out of range");
        Configuration c;
        c.n = n;
        c.cells = std::move(cells);
        return c;
    }

    static Configuration empty(int n) {
        return from_cells(n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 0));
    }

    std::uint8_t digit(int r, int c) const {
        return cells[static_cast<std::size_t>(r) * n + c];
    }
    std::uint8_t& digit(int r, int c) {
        return cells[static_cast<std::size_t>(r) * n + c];
    }
    bool occupied(int r, int c) const { return digit(r, c) != 0; }
    Transform cell_transform(int r, int c) const { return transform_of_digit(digit(r, c)); }

    bool operator==(const Configuration&) const = default;
};

inline Grid mask_of(const Configuration& c) {
    Grid g(c.n);
    for (std::size_t i = 0; i < c.cells.size(); ++i) g.cells[i] = c.cells[i] != 0;
    return g;
}

inline int occupied_count(const Configuration& c) {
    int n = 0;
    for (std::uint8_t d : c.cells) n += d != 0;
    return n;
}

// Row-major 4-bit packing, first cell in the most significant nibble, so
// integer order equals lexicographic order on the digit sequence.
inline std::uint64_t encode(const Configuration& c) {
    if (c.n > 4)
        throw std::invalid_argument("compact encoding supports sides up to 4");
    std::uint64_t v = 0;
    for (std::uint8_t d : c.cells) v = (v << 4) | d;
    return v;
}

inline Configuration decode(int n, std::uint64_t v) {
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n) * n);
    for (std::size_t i = cells.size(); i-- > 0;) {
        cells[i] = static_cast<std::uint8_t>(v & 0xf);
        v >>= 4;
    }
    return Configuration::from_cells(n, std::move(cells));
}

// Moves every occupied cell with t and conjugates its transform, so that
// expansion commutes with the geometric action (see expand.hpp).
inline Configuration transform_config(Transform t, const Configuration& c) {
    Configuration out = Configuration::empty(c.n);
    for (int r = 0; r < c.n; ++r)
        for (int col = 0; col < c.n; ++col) {
            const std::uint8_t d = c.digit(r, col);
            if (!d) continue;
            const auto [nr, nc] = map_cell(t, r, col, c.n);
            out.digit(nr, nc) = digit_of_transform(conjugate(t, transform_of_digit(d)));
        }
    return out;
}

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view row) {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : row) {
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
            if (!cur.empty()) toks.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) toks.push_back(std::move(cur));
    return toks;
}

inline std::uint8_t parse_cell_token(const std::string& tok, int row, int col) {
    if (tok == "0") return 0;
    if (auto t = transform_from_name(tok)) return digit_of_transform(*t);
    throw std::invalid_argument("parse error at row " + std::to_string(row) + ", cell " +
                                std::to_string(col) + ": unknown token '" + tok + "'");
}

}  // namespace detail

// Grammar: rows separated by "/", cells by whitespace; a cell is "0" or a
// transform token. "(a,b,c,d)" quadruplet notation is accepted for n = 2.
inline Configuration parse_config(std::string_view text) {
    std::size_t b = text.find_first_not_of(" \t\r\n");
    std::size_t e = text.find_last_not_of(" \t\r\n");
    if (b == std::string_view::npos) throw std::invalid_argument("empty configuration text");
    text = text.substr(b, e - b + 1);

    std::vector<std::vector<std::uint8_t>> rows;
    if (text.front() == '(') {
        if (text.back() != ')')
            throw std::invalid_argument("quadruplet notation must end with ')'");
        std::string_view inner = text.substr(1, text.size() - 2);
        std::vector<std::string> toks;
        std::string cur;
        for (char ch : inner) {
            if (ch == ',') {
                toks.push_back(cur), cur.clear();
            } else if (ch != ' ' && ch != '\t') {
                cur.push_back(ch);
            }
        }
        toks.push_back(cur);
        if (toks.size() != 4)
            throw std::invalid_argument("quadruplet notation needs exactly 4 cells, got " +
                                        std::to_string(toks.size()));
        rows.resize(2);
        for (int i = 0; i < 4; ++i)
            rows[i / 2].push_back(detail::parse_cell_token(toks[i], i / 2 + 1, i % 2 + 1));
    } else {
        std::size_t pos = 0;
        int row_no = 0;
        while (pos <= text.size()) {
            const std::size_t slash = text.find('/', pos);
            std::string_view row_text =
                text.substr(pos, slash == std::string_view::npos ? std::string_view::npos
                                                                 : slash - pos);
            ++row_no;
            const auto toks = detail::split_tokens(row_text);
            if (toks.empty())
                throw std::invalid_argument("parse error at row " + std::to_string(row_no) +
                                            ": empty row");
            std::vector<std::uint8_t> row;
            for (std::size_t i = 0; i < toks.size(); ++i)
                row.push_back(detail::parse_cell_token(toks[i], row_no, static_cast<int>(i + 1)));
            rows.push_back(std::move(row));
            if (slash == std::string_view::npos) break;
            pos = slash + 1;
        }
    }

    const std::size_t n = rows.size();
    for (std::size_t r = 0; r < n; ++r)
        if (rows[r].size() != n)
            throw std::invalid_argument("parse error at row " + std::to_string(r + 1) + ": has " +
                                        std::to_string(rows[r].size()) + " cells, expected " +
                                        std::to_string(n) + " (configuration must be square)");
    std::vector<std::uint8_t> cells;
    cells.reserve(n * n);
    for (auto& row : rows) cells.insert(cells.end(), row.begin(), row.end());
    return Configuration::from_cells(static_cast<int>(n), std::move(cells));
}

inline std::string cell_token(std::uint8_t digit) {
    return digit ? std::string(name_of(transform_of_digit(digit))) : "0";
}

inline std::string format_config(const Configuration& c) {
    std::string out;
    for (int r = 0; r < c.n; ++r) {
        if (r) out += " / ";
        for (int col = 0; col < c.n; ++col) {
            if (col) out += ' ';
            out += cell_token(c.digit(r, col));
        }
    }
    return out;
}

inline std::string format_quadruplet(const Configuration& c) {
    if (c.n != 2) throw std::invalid_argument("quadruplet notation is for 2x2 configurations");
    std::string out = "(";
    for (int i = 0; i < 4; ++i) {
        if (i) out += ',';
        out += cell_token(c.cells[i]);
    }
    out += ')';
    return out;
}

// Motif ids name 2x2 configurations with the empty cell at (1,1): the id is
// the three digits of cells (1,2), (2,1), (2,2) under the R0=1..K3=8 map.
inline int motif_id(const Configuration& c) {
    if (c.n != 2 || c.cells[0] != 0 || !c.cells[1] || !c.cells[2] || !c.cells[3])
        throw std::invalid_argument(
            "motif ids require a 2x2 configuration with only cell (1,1) empty");
    return c.cells[1] * 100 + c.cells[2] * 10 + c.cells[3];
}

inline Configuration config_from_motif(int id) {
    const int b = id / 100, c = id / 10 % 10, d = id % 10;
    if (id < 111 || id > 888 || b < 1 || b > 8 || c < 1 || c > 8 || d < 1 || d > 8)
        throw std::invalid_argument("motif id must be three digits, each 1..8");
    return Configuration::from_cells(
        2, {0, static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c),
            static_cast<std::uint8_t>(d)});
}

}  // namespace fractile
