#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

namespace fractile {

// The eight symmetries of the square grid. R0..R3 are counterclockwise
// rotations by 0, 90, 180 and 270 degrees. K_i = M o R_i, where M is the
// horizontal mirror (row reversal); this makes K1 the main-diagonal
// transpose, K2 the vertical-axis mirror and K3 the anti-diagonal
// reflection.
enum class Transform : std::uint8_t { R0 = 0, R1, R2, R3, K0, K1, K2, K3 };

inline constexpr std::array<Transform, 8> all_transforms = {
    Transform::R0, Transform::R1, Transform::R2, Transform::R3,
    Transform::K0, Transform::K1, Transform::K2, Transform::K3};

constexpr int index_of(Transform t) { return static_cast<int>(t); }

constexpr Transform transform_from_index(int index) {
    return static_cast<Transform>(index & 7);
}

constexpr bool is_rotation(Transform t) { return index_of(t) < 4; }
constexpr bool is_reflection(Transform t) { return index_of(t) >= 4; }

constexpr std::string_view name_of(Transform t) {
    constexpr std::array<std::string_view, 8> names = {"R0", "R1", "R2", "R3",
                                                       "K0", "K1", "K2", "K3"};
    return names[index_of(t)];
}

inline std::optional<Transform> transform_from_name(std::string_view s) {
    for (Transform t : all_transforms)
        if (name_of(t) == s) return t;
    return std::nullopt;
}

// Where cell (r, c) of an n-sided square lands under t, 0-indexed.
constexpr std::pair<int, int> map_cell(Transform t, int r, int c, int n) {
    const int m = n - 1;
    switch (t) {
        case Transform::R0: return {r, c};
        case Transform::R1: return {m - c, r};
        case Transform::R2: return {m - r, m - c};
        case Transform::R3: return {c, m - r};
        case Transform::K0: return {m - r, c};
        case Transform::K1: return {c, r};
        case Transform::K2: return {r, m - c};
        case Transform::K3: return {m - c, m - r};
    }
    return {r, c};
}

namespace detail {

// t = M^e o R_a; e and a are recoverable from the enum layout.
constexpr int rot_of(Transform t) { return index_of(t) & 3; }
constexpr int mirror_of(Transform t) { return index_of(t) >> 2; }
constexpr Transform make_transform(int mirror, int rot) {
    return transform_from_index((mirror << 2) | (rot & 3));
}

}  // namespace detail

// t1 o t2 applies t2 first. Derivation uses R_a o M = M o R_{-a}.
constexpr Transform compose(Transform t1, Transform t2) {
    const int a = detail::rot_of(t1), e1 = detail::mirror_of(t1);
    const int b = detail::rot_of(t2), e2 = detail::mirror_of(t2);
    const int rot = e2 ? (b - a + 4) & 3 : (a + b) & 3;
    return detail::make_transform(e1 ^ e2, rot);
}

constexpr Transform inverse(Transform t) {
    return is_reflection(t)
               ? t
               : detail::make_transform(0, (4 - detail::rot_of(t)) & 3);
}

// t o s o t^-1.
constexpr Transform conjugate(Transform t, Transform s) {
    return compose(t, compose(s, inverse(t)));
}

namespace detail {

// compose() must agree with the cell-by-cell geometric action.
constexpr bool compose_matches_cell_maps() {
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const Transform t1 = transform_from_index(i);
            const Transform t2 = transform_from_index(j);
            const Transform tc = compose(t1, t2);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) {
                    const auto [mr, mc] = map_cell(t2, r, c, 3);
                    if (map_cell(t1, mr, mc, 3) != map_cell(tc, r, c, 3))
                        return false;
                }
        }
    return true;
}
static_assert(compose_matches_cell_maps());

constexpr bool inverses_cancel() {
    for (int i = 0; i < 8; ++i) {
        const Transform t = transform_from_index(i);
        if (compose(t, inverse(t)) != Transform::R0) return false;
        if (compose(inverse(t), t) != Transform::R0) return false;
    }
    return true;
}
static_assert(inverses_cancel());

}  // namespace detail

// Multiplication and inversion as plain data, so corrupted copies can be
// fed to the structural checks.
struct GroupTable {
    std::array<std::array<Transform, 8>, 8> compose{};
    std::array<Transform, 8> inverse{};
};

constexpr GroupTable group_table() {
    GroupTable gt;
    for (int i = 0; i < 8; ++i) {
        gt.inverse[i] = fractile::inverse(transform_from_index(i));
        for (int j = 0; j < 8; ++j)
            gt.compose[i][j] = fractile::compose(transform_from_index(i),
                                                 transform_from_index(j));
    }
    return gt;
}

}  // namespace fractile
