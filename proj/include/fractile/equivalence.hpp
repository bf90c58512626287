#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "fractile/expand.hpp"

namespace fractile {

// Digit order used to pick lexicographic representatives. The standard
// convention is R0=1..K3=8; column_mirror() re-derives the reflection names
// from a column-flip mirror, permuting the K digits. Census counts must not
// depend on the choice.
struct DigitConvention {
    std::array<std::uint8_t, 8> digit_of{};  // by transform index, values 1..8

    std::uint8_t map_digit(std::uint8_t stored) const {
        return stored ? digit_of[stored - 1] : 0;
    }

    static const DigitConvention& standard() {
        static const DigitConvention conv = [] {
            DigitConvention c;
            for (int i = 0; i < 8; ++i) c.digit_of[i] = static_cast<std::uint8_t>(i + 1);
            return c;
        }();
        return conv;
    }

    static const DigitConvention& column_mirror() {
        static const DigitConvention conv = [] {
            DigitConvention c;
            for (int i = 0; i < 4; ++i) c.digit_of[i] = static_cast<std::uint8_t>(i + 1);
            // Alternative mirror M' = K2; the reflection named K'_i is M' o R_i.
            for (int i = 0; i < 4; ++i) {
                const Transform named = compose(Transform::K2, transform_from_index(i));
                c.digit_of[index_of(named)] = static_cast<std::uint8_t>(5 + i);
            }
            return c;
        }();
        return conv;
    }
};

namespace detail {

// Equivalent partner under an axis-symmetric pattern: T and T o D act
// identically on every D-symmetric matrix.
constexpr Transform redundancy_partner(Transform t, DiagonalAxis axis) {
    return compose(t, axis_reflection(axis));
}

inline bool axis_cell_ok(std::uint8_t digit, DiagonalAxis axis) {
    const Transform t = transform_of_digit(digit);
    const Transform d = axis_reflection(axis);
    return t == Transform::R0 || t == Transform::R2 || t == d ||
           t == compose(Transform::R2, d);
}

inline bool pair_ok(std::uint8_t dp, std::uint8_t dq, DiagonalAxis axis) {
    const Transform d = axis_reflection(axis);
    const Transform tp = transform_of_digit(dp);
    const Transform tq = transform_of_digit(dq);
    return tq == conjugate(d, tp) || tq == compose(d, tp);
}

inline std::string cells_key(const Configuration& c) {
    return std::string(c.cells.begin(), c.cells.end());
}

inline bool conv_less(const Configuration& a, const Configuration& b,
                      const DigitConvention& conv) {
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        const std::uint8_t da = conv.map_digit(a.cells[i]);
        const std::uint8_t db = conv.map_digit(b.cells[i]);
        if (da != db) return da < db;
    }
    return false;
}

}  // namespace detail

// Prop-style redundancy conditions for a mask symmetric about `axis`:
// cells on the axis carry transforms equal to their own partner mirror;
// cells across the axis carry mutually mirrored transform pairs.
inline bool is_redundant_wrt(const Configuration& c, DiagonalAxis axis) {
    if (occupied_count(c) == 0) return false;
    for (int r = 0; r < c.n; ++r)
        for (int col = 0; col < c.n; ++col) {
            const std::uint8_t d = c.digit(r, col);
            if (!d) continue;
            const auto [mr, mc] = map_cell(axis_reflection(axis), r, col, c.n);
            if (mr == r && mc == col) {
                if (!detail::axis_cell_ok(d, axis)) return false;
            } else if (std::pair{r, col} < std::pair{mr, mc}) {
                if (!detail::pair_ok(d, c.digit(mr, mc), axis)) return false;
            }
        }
    return true;
}

inline bool is_redundant_diag(const Configuration& c) {
    if (!is_diagonal_symmetric(mask_of(c), DiagonalAxis::main))
        throw std::invalid_argument(
            "is_redundant_diag needs a mask symmetric about the main diagonal "
            "(conjugate by R1 for the anti-diagonal case)");
    return is_redundant_wrt(c, DiagonalAxis::main);
}

namespace detail {

// Axis along which c's redundancy collapses, if any. Main diagonal is
// checked first; for doubly symmetric masks this fixes the precedence.
inline std::optional<DiagonalAxis> redundancy_axis(const Configuration& c) {
    const Grid m = mask_of(c);
    if (is_diagonal_symmetric(m, DiagonalAxis::main) && is_redundant_wrt(c, DiagonalAxis::main))
        return DiagonalAxis::main;
    if (is_diagonal_symmetric(m, DiagonalAxis::anti) && is_redundant_wrt(c, DiagonalAxis::anti))
        return DiagonalAxis::anti;
    return std::nullopt;
}

}  // namespace detail

inline bool is_redundant(const Configuration& c) {
    return detail::redundancy_axis(c).has_value();
}

// All 2^occupied configurations generating the same fractal, produced by
// independently swapping each cell's transform with its partner.
inline std::vector<Configuration> redundancy_partners(const Configuration& c) {
    const auto axis = detail::redundancy_axis(c);
    if (!axis) throw std::invalid_argument("configuration is not redundant");
    std::vector<int> occupied;
    for (int i = 0; i < c.n * c.n; ++i)
        if (c.cells[i]) occupied.push_back(i);
    std::vector<Configuration> out;
    out.reserve(std::size_t{1} << occupied.size());
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << occupied.size()); ++bits) {
        Configuration v = c;
        for (std::size_t j = 0; j < occupied.size(); ++j)
            if (bits >> j & 1) {
                std::uint8_t& d = v.cells[occupied[j]];
                d = digit_of_transform(
                    detail::redundancy_partner(transform_of_digit(d), *axis));
            }
        out.push_back(std::move(v));
    }
    return out;
}

// A redundancy class: every configuration generating the same fractal,
// with its lexicographically smallest member as representative.
struct RedundancyClass {
    std::vector<Configuration> members;  // singleton when not redundant
    Configuration representative;
};

// Lexicographically smallest member of c's redundancy class under the
// convention's digit order (c itself when not redundant). The partner
// choices are independent per cell, so the minimum is taken cellwise.
inline Configuration canonical_rep(const Configuration& c,
                                   const DigitConvention& conv = DigitConvention::standard()) {
    const auto axis = detail::redundancy_axis(c);
    if (!axis) return c;
    Configuration out = c;
    for (std::uint8_t& d : out.cells) {
        if (!d) continue;
        const std::uint8_t partner = digit_of_transform(
            detail::redundancy_partner(transform_of_digit(d), *axis));
        if (conv.map_digit(partner) < conv.map_digit(d)) d = partner;
    }
    return out;
}

inline RedundancyClass redundancy_class_of(
    const Configuration& c, const DigitConvention& conv = DigitConvention::standard()) {
    RedundancyClass out;
    out.representative = canonical_rep(c, conv);
    if (detail::redundancy_axis(c))
        out.members = redundancy_partners(c);
    else
        out.members = {c};
    std::sort(out.members.begin(), out.members.end(),
              [&](const Configuration& a, const Configuration& b) {
                  return detail::conv_less(a, b, conv);
              });
    return out;
}

// True iff both configurations expand identically at every level up to
// `depth` (level 0 compares the masks).
inline bool fractal_equal(const Configuration& a, const Configuration& b, int depth = 3) {
    if (a.n != b.n)
        throw std::invalid_argument("fractal_equal needs configurations of the same side");
    if (depth < 1) throw std::invalid_argument("fractal_equal depth must be >= 1");
    const std::size_t max_side = default_max_side();
    expanded_side(a.n, depth, max_side);
    Grid ga = mask_of(a), gb = mask_of(b);
    if (!(ga == gb)) return false;
    for (int k = 1; k <= depth; ++k) {
        ga = detail::expand_step(a, ga, detail::keep_label);
        gb = detail::expand_step(b, gb, detail::keep_label);
        if (!(ga == gb)) return false;
    }
    return true;
}

// Orbit of c under the induced action t . x = canonical_rep(transform_config(t, x)),
// sorted by the convention's encoding. Sizes divide 8.
inline std::vector<Configuration> orbit_of(
    const Configuration& c, const DigitConvention& conv = DigitConvention::standard()) {
    std::vector<Configuration> members;
    for (Transform t : all_transforms) {
        Configuration image = canonical_rep(transform_config(t, c), conv);
        bool seen = false;
        for (const auto& m : members)
            if (m == image) {
                seen = true;
                break;
            }
        if (!seen) members.push_back(std::move(image));
    }
    std::sort(members.begin(), members.end(),
              [&](const Configuration& a, const Configuration& b) {
                  return detail::conv_less(a, b, conv);
              });
    return members;
}

struct OrbitCountResult {
    std::uint64_t orbits = 0;
    std::array<std::uint64_t, 8> fixed{};  // by transform index
};

// Burnside count over a population of representatives closed under the
// induced action: orbits = (sum of fixed points) / |G|, exactly.
inline OrbitCountResult count_orbits_burnside(
    std::span<const Configuration> population,
    const DigitConvention& conv = DigitConvention::standard()) {
    OrbitCountResult res;
    for (const Configuration& x : population)
        for (Transform t : all_transforms)
            if (canonical_rep(transform_config(t, x), conv) == x) ++res.fixed[index_of(t)];
    std::uint64_t sum = 0;
    for (std::uint64_t f : res.fixed) sum += f;
    if (sum % 8 != 0)
        throw consistency_error("Burnside sum " + std::to_string(sum) +
                                " is not divisible by 8; the induced action is inconsistent");
    res.orbits = sum / 8;
    return res;
}

// Independent oracle: partition the population by extracting whole orbits.
inline std::uint64_t count_orbits_direct(
    std::span<const Configuration> population,
    const DigitConvention& conv = DigitConvention::standard()) {
    std::unordered_set<std::string> seen;
    std::uint64_t orbits = 0;
    for (const Configuration& x : population) {
        if (seen.contains(detail::cells_key(x))) continue;
        ++orbits;
        for (const Configuration& m : orbit_of(x, conv)) seen.insert(detail::cells_key(m));
    }
    return orbits;
}

}  // namespace fractile
