#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fractile/equivalence.hpp"

namespace fractile {

struct CensusReport {
    std::string mode;
    int n = 0;
    std::uint64_t raw = 0;
    std::uint64_t dedup = 0;
    std::array<std::uint64_t, 8> fixed{};  // by transform index
    std::uint64_t orbits = 0;
    std::uint64_t elapsed_ms = 0;
    int workers = 1;
    std::vector<std::pair<std::string, std::string>> notes;
    std::vector<std::string> failures;  // embedded cross-check mismatches

    bool ok() const { return failures.empty(); }
};

inline std::string to_text(const CensusReport& r) {
    std::ostringstream out;
    out << "mode = " << r.mode << '\n';
    out << "n = " << r.n << '\n';
    out << "raw = " << r.raw << '\n';
    out << "dedup = " << r.dedup << '\n';
    for (Transform t : all_transforms)
        out << "fixed." << name_of(t) << " = " << r.fixed[index_of(t)] << '\n';
    out << "orbits = " << r.orbits << '\n';
    out << "elapsed_ms = " << r.elapsed_ms << '\n';
    out << "workers = " << r.workers << '\n';
    for (const auto& [k, v] : r.notes) out << "note." << k << " = " << v << '\n';
    for (const auto& f : r.failures) out << "check.failed = " << f << '\n';
    return out.str();
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

namespace detail {

inline std::uint64_t elapsed_ms_since(std::chrono::steady_clock::time_point t0) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count());
}

template <typename T>
void expect_eq(std::vector<std::string>& failures, const char* name, T expected, T computed) {
    if (expected != computed) {
        std::ostringstream os;
        os << name << ": expected " << expected << ", computed " << computed;
        failures.push_back(os.str());
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// 2x2 exhaustive census: all 8^3 * 4 = 2048 one-empty-cell configurations.
// ---------------------------------------------------------------------------

inline std::vector<Configuration> all_2x2_one_zero_configs() {
    std::vector<Configuration> all;
    all.reserve(2048);
    for (int zero = 0; zero < 4; ++zero)
        for (int d0 = 1; d0 <= 8; ++d0)
            for (int d1 = 1; d1 <= 8; ++d1)
                for (int d2 = 1; d2 <= 8; ++d2) {
                    std::vector<std::uint8_t> cells(4);
                    int idx = 0;
                    const std::array<int, 3> digits = {d0, d1, d2};
                    for (int i = 0; i < 4; ++i)
                        cells[i] = i == zero ? 0 : static_cast<std::uint8_t>(digits[idx++]);
                    all.push_back(Configuration::from_cells(2, std::move(cells)));
                }
    return all;
}

inline CensusReport census_2x2(const DigitConvention& conv = DigitConvention::standard()) {
    const auto t0 = std::chrono::steady_clock::now();
    CensusReport rep;
    rep.mode = "exhaustive";
    rep.n = 2;

    const std::vector<Configuration> all = all_2x2_one_zero_configs();
    rep.raw = all.size();

    std::vector<Configuration> reps;
    reps.reserve(all.size());
    for (const Configuration& c : all)
        if (canonical_rep(c, conv) == c) reps.push_back(c);
    rep.dedup = reps.size();

    const OrbitCountResult counted = count_orbits_burnside(reps, conv);
    rep.fixed = counted.fixed;
    rep.orbits = counted.orbits;

    const std::uint64_t direct = count_orbits_direct(reps, conv);

    // Where the K1-fixed representatives keep their empty cell.
    std::uint64_t k1_zero11 = 0, k1_zero22 = 0;
    for (const Configuration& x : reps)
        if (canonical_rep(transform_config(Transform::K1, x), conv) == x) {
            if (x.cells[0] == 0) ++k1_zero11;
            if (x.cells[3] == 0) ++k1_zero22;
        }
    rep.notes.emplace_back("orbits_direct", std::to_string(direct));
    rep.notes.emplace_back("fixed_K1_zero_at_1_1", std::to_string(k1_zero11));
    rep.notes.emplace_back("fixed_K1_zero_at_2_2", std::to_string(k1_zero22));

    detail::expect_eq(rep.failures, "raw", std::uint64_t{2048}, rep.raw);
    detail::expect_eq(rep.failures, "dedup", std::uint64_t{1824}, rep.dedup);
    detail::expect_eq(rep.failures, "fixed.R0", std::uint64_t{1824},
                      rep.fixed[index_of(Transform::R0)]);
    detail::expect_eq(rep.failures, "fixed.K1", std::uint64_t{16},
                      rep.fixed[index_of(Transform::K1)]);
    detail::expect_eq(rep.failures, "fixed.K3", std::uint64_t{16},
                      rep.fixed[index_of(Transform::K3)]);
    for (Transform t : {Transform::R1, Transform::R2, Transform::R3, Transform::K0,
                        Transform::K2})
        detail::expect_eq(rep.failures, "fixed(moving transform)", std::uint64_t{0},
                          rep.fixed[index_of(t)]);
    detail::expect_eq(rep.failures, "orbits", std::uint64_t{232}, rep.orbits);
    detail::expect_eq(rep.failures, "orbits_direct", rep.orbits, direct);

    rep.elapsed_ms = detail::elapsed_ms_since(t0);
    return rep;
}

// One representative per orbit, normalized to keep the empty cell at (1,1)
// and emitted in ascending motif-id order.
inline std::vector<Configuration> list_motifs_2x2() {
    std::vector<Configuration> out;
    for (int b = 1; b <= 8; ++b)
        for (int c = 1; c <= 8; ++c)
            for (int d = 1; d <= 8; ++d) {
                const Configuration cfg = config_from_motif(b * 100 + c * 10 + d);
                if (!(canonical_rep(cfg) == cfg)) continue;
                int best = 999;
                for (const Configuration& m : orbit_of(cfg))
                    if (m.cells[0] == 0) best = std::min(best, motif_id(m));
                if (best == b * 100 + c * 10 + d) out.push_back(cfg);
            }
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form ledger for seeds whose zero distribution is symmetric about
// exactly one diagonal, parameterized by the number of diagonal cells d and
// strictly-upper cells u (d = n, u = n(n-1)/2).
// ---------------------------------------------------------------------------

struct ClosedFormLedger {
    std::uint64_t ni = 0;     // masks symmetric about the main diagonal, all decorations
    std::uint64_t ds12 = 0;   // doubly symmetric part
    std::uint64_t ds1 = 0;    // exactly main-diagonal symmetric
    std::uint64_t ds2 = 0;
    std::uint64_t ds = 0;
    std::uint64_t dss1 = 0;   // redundant part of ds1
    std::uint64_t n2 = 0;     // redundancy classes inside dss1
    std::uint64_t dss = 0;
    std::uint64_t dsr = 0;    // ds after redundancy elimination
    std::uint64_t orbits = 0;

    bool operator==(const ClosedFormLedger&) const = default;
};

inline ClosedFormLedger closed_form_general(int d, int u) {
    if (d < 1 || u < 0) throw std::invalid_argument("need d >= 1 and u >= 0");
    using i128 = __int128;
    const auto pw = [](i128 base, int e) {
        i128 r = 1;
        while (e-- > 0) r *= base;
        return r;
    };
    const auto geom = [&](i128 base, int top) {  // 1 + base + ... + base^top
        return (pw(base, top + 1) - 1) / (base - 1);
    };
    const i128 ni = pw(9, d) * pw(65, u);
    const i128 ds12 = geom(8, d) * geom(64, u);
    const i128 ds1 = ni - ds12;
    const i128 ds = 2 * ds1;
    const i128 dss1 = pw(5, d) * pw(17, u) - geom(4, d) * geom(16, u);
    const i128 n2 = pw(3, d) * pw(5, u) - geom(2, d) * geom(4, u);
    const i128 dss = 2 * dss1;
    const i128 dsr = ds - dss + 2 * n2;
    const i128 burnside_sum = dsr + 2 * n2;
    if (burnside_sum % 8 != 0)
        throw consistency_error("closed-form Burnside sum is not divisible by 8");
    const i128 orbits = burnside_sum / 8;

    ClosedFormLedger ledger;
    const auto narrow = [](i128 v, const char* what) {
        if (v < 0 || v > i128{UINT64_MAX})
            throw limit_error(std::string("ledger value out of 64-bit range: ") + what);
        return static_cast<std::uint64_t>(v);
    };
    ledger.ni = narrow(ni, "NI");
    ledger.ds12 = narrow(ds12, "DS12");
    ledger.ds1 = narrow(ds1, "DS1");
    ledger.ds2 = ledger.ds1;
    ledger.ds = narrow(ds, "DS");
    ledger.dss1 = narrow(dss1, "DSS1");
    ledger.n2 = narrow(n2, "N2");
    ledger.dss = narrow(dss, "DSS");
    ledger.dsr = narrow(dsr, "DSR");
    ledger.orbits = narrow(orbits, "orbits");
    return ledger;
}

inline void append_ledger_notes(CensusReport& rep, const ClosedFormLedger& lg) {
    rep.notes.emplace_back("NI", std::to_string(lg.ni));
    rep.notes.emplace_back("DS12", std::to_string(lg.ds12));
    rep.notes.emplace_back("DS1", std::to_string(lg.ds1));
    rep.notes.emplace_back("DS2", std::to_string(lg.ds2));
    rep.notes.emplace_back("DS", std::to_string(lg.ds));
    rep.notes.emplace_back("DSS1", std::to_string(lg.dss1));
    rep.notes.emplace_back("N2", std::to_string(lg.n2));
    rep.notes.emplace_back("DSS", std::to_string(lg.dss));
    rep.notes.emplace_back("DSR", std::to_string(lg.dsr));
}

inline CensusReport closed_form_3x3() {
    const auto t0 = std::chrono::steady_clock::now();
    CensusReport rep;
    rep.mode = "closed-form";
    rep.n = 3;
    const ClosedFormLedger lg = closed_form_general(3, 3);
    rep.raw = lg.ds;
    rep.dedup = lg.dsr;
    rep.fixed[index_of(Transform::R0)] = lg.dsr;
    rep.fixed[index_of(Transform::K1)] = lg.n2;
    rep.fixed[index_of(Transform::K3)] = lg.n2;
    rep.orbits = lg.orbits;
    append_ledger_notes(rep, lg);

    detail::expect_eq(rep.failures, "NI", std::uint64_t{200201625}, lg.ni);
    detail::expect_eq(rep.failures, "DS12", std::uint64_t{155788425}, lg.ds12);
    detail::expect_eq(rep.failures, "DS1", std::uint64_t{44413200}, lg.ds1);
    detail::expect_eq(rep.failures, "DS2", std::uint64_t{44413200}, lg.ds2);
    detail::expect_eq(rep.failures, "DS", std::uint64_t{88826400}, lg.ds);
    detail::expect_eq(rep.failures, "DSS1", std::uint64_t{242760}, lg.dss1);
    detail::expect_eq(rep.failures, "N2", std::uint64_t{2100}, lg.n2);
    detail::expect_eq(rep.failures, "DSS", std::uint64_t{485520}, lg.dss);
    detail::expect_eq(rep.failures, "DSR", std::uint64_t{88345080}, lg.dsr);
    detail::expect_eq(rep.failures, "orbits", std::uint64_t{11043660}, lg.orbits);
    detail::expect_eq(rep.failures, "NI = DS1 + DS12", lg.ni, lg.ds1 + lg.ds12);
    detail::expect_eq(rep.failures, "orbits * 8 = DSR + 2 * N2", lg.orbits * 8,
                      lg.dsr + 2 * lg.n2);

    rep.elapsed_ms = detail::elapsed_ms_since(t0);
    return rep;
}

// ---------------------------------------------------------------------------
// Mask classification.
// ---------------------------------------------------------------------------

enum class MaskTag { ds12, ds1, ds2, neither };

inline const char* to_string(MaskTag t) {
    switch (t) {
        case MaskTag::ds12: return "ds12";
        case MaskTag::ds1: return "ds1";
        case MaskTag::ds2: return "ds2";
        case MaskTag::neither: return "neither";
    }
    return "?";
}

struct MaskClassification {
    int n = 0;
    std::uint64_t total = 0;
    std::uint64_t main_symmetric = 0;
    std::uint64_t anti_symmetric = 0;
    std::uint64_t ds12 = 0;
    std::uint64_t ds1 = 0;
    std::uint64_t ds2 = 0;
    std::uint64_t neither = 0;
    std::uint64_t rotation_classes = 0;
    std::uint64_t full_group_classes = 0;
    std::vector<std::pair<std::string, std::string>> notes;
};

namespace detail {

// Per-transform permutation of flat cell indices for an n-sided grid.
inline std::vector<int> cell_permutation(Transform t, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const auto [nr, nc] = map_cell(t, r, c, n);
            perm[static_cast<std::size_t>(r) * n + c] = nr * n + nc;
        }
    return perm;
}

inline std::uint64_t permute_mask(std::uint64_t mask, const std::vector<int>& perm) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (mask >> i & 1) out |= std::uint64_t{1} << perm[i];
    return out;
}

}  // namespace detail

// Tag of one mask, given as a row-major bitmask (bit i = cell i occupied).
inline MaskTag mask_tag(std::uint64_t mask, int n) {
    if (n < 1 || n > 7) throw std::invalid_argument("mask side out of range");
    const auto k1 = detail::cell_permutation(Transform::K1, n);
    const auto k3 = detail::cell_permutation(Transform::K3, n);
    const bool main_sym = detail::permute_mask(mask, k1) == mask;
    const bool anti_sym = detail::permute_mask(mask, k3) == mask;
    if (main_sym && anti_sym) return MaskTag::ds12;
    if (main_sym) return MaskTag::ds1;
    if (anti_sym) return MaskTag::ds2;
    return MaskTag::neither;
}

inline MaskClassification classify_masks(int n) {
    if (n < 1) throw std::invalid_argument("mask side must be >= 1");
    if (n > 5) throw limit_error("mask classification supports sides up to 5");
    MaskClassification mc;
    mc.n = n;
    const int cells = n * n;
    mc.total = std::uint64_t{1} << cells;

    std::array<std::vector<int>, 8> perms;
    for (Transform t : all_transforms) perms[index_of(t)] = detail::cell_permutation(t, n);

    std::array<std::uint64_t, 8> fixed{};
    for (std::uint64_t m = 0; m < mc.total; ++m) {
        for (Transform t : all_transforms)
            if (detail::permute_mask(m, perms[index_of(t)]) == m) ++fixed[index_of(t)];
        const bool main_sym = detail::permute_mask(m, perms[index_of(Transform::K1)]) == m;
        const bool anti_sym = detail::permute_mask(m, perms[index_of(Transform::K3)]) == m;
        mc.main_symmetric += main_sym;
        mc.anti_symmetric += anti_sym;
        mc.ds12 += main_sym && anti_sym;
        mc.ds1 += main_sym && !anti_sym;
        mc.ds2 += anti_sym && !main_sym;
        mc.neither += !main_sym && !anti_sym;
    }

    std::uint64_t rot_sum = 0, full_sum = 0;
    for (Transform t : all_transforms) {
        full_sum += fixed[index_of(t)];
        if (is_rotation(t)) rot_sum += fixed[index_of(t)];
    }
    mc.rotation_classes = rot_sum / 4;
    mc.full_group_classes = full_sum / 8;

    if (n == 2)
        mc.notes.emplace_back("rotation_classes",
                              "the two-cell diagonal mask forms its own rotation class, "
                              "giving 6 classes for n = 2");
    return mc;
}

// ---------------------------------------------------------------------------
// 3x3 brute-force census: streams every decorated configuration whose mask
// is symmetric about exactly one diagonal, skipping non-canonical redundancy
// class members, and tallies fixed points of the induced action.
// ---------------------------------------------------------------------------

enum class BruteScope { masks_only, redundancy_only, fixed_points, full };

inline const char* to_string(BruteScope s) {
    switch (s) {
        case BruteScope::masks_only: return "masks-only";
        case BruteScope::redundancy_only: return "redundancy-only";
        case BruteScope::fixed_points: return "fixed-points";
        case BruteScope::full: return "full";
    }
    return "?";
}

inline std::optional<BruteScope> brute_scope_from_name(std::string_view s) {
    for (BruteScope v : {BruteScope::masks_only, BruteScope::redundancy_only,
                         BruteScope::fixed_points, BruteScope::full})
        if (s == to_string(v)) return v;
    return std::nullopt;
}

struct BruteForceOptions {
    int workers = 0;                       // 0 = hardware concurrency
    BruteScope scope = BruteScope::full;
    int depth = 3;                         // expansion depth of the sampled oracle
    std::uint64_t oracle_stride = 1000003; // sample one config in this many
};

namespace detail3x3 {

using Cells = std::array<std::uint8_t, 9>;

struct Tables {
    // [t][cell] -> destination cell; [t][digit] -> conjugated digit.
    std::array<std::array<std::uint8_t, 9>, 8> cell_perm{};
    std::array<std::array<std::uint8_t, 9>, 8> conj_digit{};
    std::array<std::array<std::uint16_t, 512>, 8> mask_image{};
    // Redundancy tables by axis (0 = main, 1 = anti).
    std::array<std::array<bool, 9>, 2> axis_ok{};
    std::array<std::array<std::array<bool, 9>, 9>, 2> pair_ok{};
    std::array<std::array<std::uint8_t, 9>, 2> partner_min{};
};

inline const Tables& tables() {
    static const Tables tb = [] {
        Tables t;
        for (Transform tr : all_transforms) {
            const int ti = index_of(tr);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) {
                    const auto [nr, nc] = map_cell(tr, r, c, 3);
                    t.cell_perm[ti][r * 3 + c] = static_cast<std::uint8_t>(nr * 3 + nc);
                }
            t.conj_digit[ti][0] = 0;
            for (int d = 1; d <= 8; ++d)
                t.conj_digit[ti][d] =
                    digit_of_transform(conjugate(tr, transform_of_digit(d)));
            for (std::uint32_t m = 0; m < 512; ++m) {
                std::uint16_t img = 0;
                for (int i = 0; i < 9; ++i)
                    if (m >> i & 1) img |= std::uint16_t{1} << t.cell_perm[ti][i];
                t.mask_image[ti][m] = img;
            }
        }
        for (int a = 0; a < 2; ++a) {
            const DiagonalAxis axis = a ? DiagonalAxis::anti : DiagonalAxis::main;
            t.axis_ok[a][0] = false;
            t.partner_min[a][0] = 0;
            for (int d = 1; d <= 8; ++d) {
                t.axis_ok[a][d] = detail::axis_cell_ok(static_cast<std::uint8_t>(d), axis);
                const std::uint8_t partner = digit_of_transform(detail::redundancy_partner(
                    transform_of_digit(static_cast<std::uint8_t>(d)), axis));
                t.partner_min[a][d] = std::min<std::uint8_t>(static_cast<std::uint8_t>(d), partner);
                for (int e = 1; e <= 8; ++e)
                    t.pair_ok[a][d][e] = detail::pair_ok(static_cast<std::uint8_t>(d),
                                                         static_cast<std::uint8_t>(e), axis);
            }
        }
        return t;
    }();
    return tb;
}

struct MaskInfo {
    std::uint16_t mask = 0;
    int axis = 0;  // 0 = main, 1 = anti
    std::array<std::uint8_t, 9> occupied{};
    int occupied_count = 0;
    std::array<std::uint8_t, 9> axis_cells{};
    int axis_cell_count = 0;
    std::array<std::pair<std::uint8_t, std::uint8_t>, 4> pairs{};
    int pair_count = 0;
    // Transforms preserving the mask; only these can have fixed points.
    std::array<std::uint8_t, 8> stabilizer{};
    int stabilizer_count = 0;
};

inline std::vector<MaskInfo> ds_masks() {
    const Tables& tb = tables();
    std::vector<MaskInfo> out;
    const int k1 = index_of(Transform::K1), k3 = index_of(Transform::K3);
    for (std::uint32_t m = 1; m < 512; ++m) {
        const bool main_sym = tb.mask_image[k1][m] == m;
        const bool anti_sym = tb.mask_image[k3][m] == m;
        if (main_sym == anti_sym) continue;  // keep exactly-one-diagonal masks
        MaskInfo mi;
        mi.mask = static_cast<std::uint16_t>(m);
        mi.axis = main_sym ? 0 : 1;
        const int refl = mi.axis ? k3 : k1;
        for (int i = 0; i < 9; ++i) {
            if (!(m >> i & 1)) continue;
            mi.occupied[mi.occupied_count++] = static_cast<std::uint8_t>(i);
            const int j = tb.cell_perm[refl][i];
            if (j == i)
                mi.axis_cells[mi.axis_cell_count++] = static_cast<std::uint8_t>(i);
            else if (i < j)
                mi.pairs[mi.pair_count++] = {static_cast<std::uint8_t>(i),
                                             static_cast<std::uint8_t>(j)};
        }
        for (int t = 0; t < 8; ++t)
            if (tb.mask_image[t][m] == m)
                mi.stabilizer[mi.stabilizer_count++] = static_cast<std::uint8_t>(t);
        out.push_back(mi);
    }
    return out;
}

inline bool redundant(const MaskInfo& mi, const Cells& cells, const Tables& tb) {
    for (int i = 0; i < mi.axis_cell_count; ++i)
        if (!tb.axis_ok[mi.axis][cells[mi.axis_cells[i]]]) return false;
    for (int i = 0; i < mi.pair_count; ++i)
        if (!tb.pair_ok[mi.axis][cells[mi.pairs[i].first]][cells[mi.pairs[i].second]])
            return false;
    return true;
}

struct Tally {
    std::uint64_t ds = 0;
    std::uint64_t dsr = 0;
    std::uint64_t dss1 = 0, dss2 = 0;
    std::uint64_t classes1 = 0, classes2 = 0;
    std::array<std::uint64_t, 8> fixed{};
    std::uint64_t oracle_checked = 0;
    std::vector<std::string> oracle_failures;

    void merge(const Tally& o) {
        ds += o.ds;
        dsr += o.dsr;
        dss1 += o.dss1;
        dss2 += o.dss2;
        classes1 += o.classes1;
        classes2 += o.classes2;
        for (int i = 0; i < 8; ++i) fixed[i] += o.fixed[i];
        oracle_checked += o.oracle_checked;
        oracle_failures.insert(oracle_failures.end(), o.oracle_failures.begin(),
                               o.oracle_failures.end());
    }
};

inline Configuration to_configuration(const Cells& cells) {
    return Configuration::from_cells(3, std::vector<std::uint8_t>(cells.begin(), cells.end()));
}

// Check the redundancy predicate against the partner-substitution oracle on
// one sampled configuration.
inline void oracle_spot_check(const MaskInfo& mi, const Cells& cells, bool predicate,
                              int depth, Tally& tally) {
    ++tally.oracle_checked;
    const Configuration c = to_configuration(cells);
    const DiagonalAxis axis = mi.axis ? DiagonalAxis::anti : DiagonalAxis::main;
    bool collision = false;
    const int w = mi.occupied_count;
    for (std::uint32_t bits = 1; bits < (std::uint32_t{1} << w) && !collision; ++bits) {
        Configuration v = c;
        for (int j = 0; j < w; ++j)
            if (bits >> j & 1) {
                std::uint8_t& d = v.cells[mi.occupied[j]];
                d = digit_of_transform(
                    detail::redundancy_partner(transform_of_digit(d), axis));
            }
        if (fractal_equal(c, v, depth)) collision = true;
    }
    if (collision != predicate)
        tally.oracle_failures.push_back("redundancy predicate disagrees with oracle on " +
                                        format_config(c));
}

// Streams assignments [begin, end) of one mask. Assignment index digits are
// base-8, least significant digit at the first occupied cell.
inline void stream_mask_range(const MaskInfo& mi, std::uint64_t begin, std::uint64_t end,
                              bool want_fixed, const BruteForceOptions& opt, Tally& tally) {
    const Tables& tb = tables();
    const int w = mi.occupied_count;
    Cells cells{};
    for (std::uint64_t idx = begin; idx < end; ++idx) {
        std::uint64_t v = idx;
        for (int j = 0; j < w; ++j) {
            cells[mi.occupied[j]] = static_cast<std::uint8_t>(1 + (v & 7));
            v >>= 3;
        }
        ++tally.ds;
        const bool red = redundant(mi, cells, tb);
        if (opt.oracle_stride && idx % opt.oracle_stride == 0 &&
            opt.scope != BruteScope::fixed_points)
            oracle_spot_check(mi, cells, red, opt.depth, tally);
        if (red) {
            (mi.axis ? tally.dss2 : tally.dss1)++;
            bool canonical = true;
            for (int j = 0; j < w; ++j)
                if (cells[mi.occupied[j]] > 4) {
                    canonical = false;
                    break;
                }
            if (!canonical) continue;  // counted in some other member's class
            (mi.axis ? tally.classes2 : tally.classes1)++;
        }
        ++tally.dsr;
        if (!want_fixed) continue;
        for (int s = 0; s < mi.stabilizer_count; ++s) {
            const int t = mi.stabilizer[s];
            Cells moved{};
            for (int j = 0; j < w; ++j) {
                const int i = mi.occupied[j];
                moved[tb.cell_perm[t][i]] = tb.conj_digit[t][cells[i]];
            }
            if (redundant(mi, moved, tb))
                for (int j = 0; j < w; ++j) {
                    std::uint8_t& d = moved[mi.occupied[j]];
                    d = tb.partner_min[mi.axis][d];
                }
            if (moved == cells) ++tally.fixed[t];
        }
    }
}

}  // namespace detail3x3

inline CensusReport brute_force_3x3(const BruteForceOptions& options = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    CensusReport rep;
    rep.mode = "brute-force";
    rep.n = 3;
    rep.notes.emplace_back("scope", to_string(options.scope));

    int workers = options.workers;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
    rep.workers = workers;

    const std::vector<detail3x3::MaskInfo> masks = detail3x3::ds_masks();
    std::uint64_t ds1_masks = 0, ds2_masks = 0;
    for (const auto& mi : masks) (mi.axis ? ds2_masks : ds1_masks)++;
    const MaskClassification mcls = classify_masks(3);
    rep.notes.emplace_back("ds1_masks", std::to_string(ds1_masks));
    rep.notes.emplace_back("ds2_masks", std::to_string(ds2_masks));
    rep.notes.emplace_back("ds12_masks", std::to_string(mcls.ds12));
    detail::expect_eq(rep.failures, "ds1_masks", std::uint64_t{48}, ds1_masks);
    detail::expect_eq(rep.failures, "ds2_masks", std::uint64_t{48}, ds2_masks);
    detail::expect_eq(rep.failures, "ds12_masks", std::uint64_t{16}, mcls.ds12);

    if (options.scope == BruteScope::masks_only) {
        rep.raw = mcls.total;
        rep.elapsed_ms = detail::elapsed_ms_since(t0);
        return rep;
    }

    // Static chunking of (mask, assignment range) jobs; tallies merge by
    // addition, so results do not depend on worker count or scheduling.
    struct Job {
        const detail3x3::MaskInfo* mask;
        std::uint64_t begin, end;
    };
    std::vector<Job> jobs;
    constexpr std::uint64_t chunk = 1 << 18;
    for (const auto& mi : masks) {
        std::uint64_t total = 1;
        for (int j = 0; j < mi.occupied_count; ++j) total *= 8;
        for (std::uint64_t b = 0; b < total; b += chunk)
            jobs.push_back({&mi, b, std::min(total, b + chunk)});
    }

    const bool want_fixed =
        options.scope == BruteScope::fixed_points || options.scope == BruteScope::full;
    std::atomic<std::size_t> next_job{0};
    std::vector<detail3x3::Tally> tallies(static_cast<std::size_t>(workers));
    const auto run = [&](int wi) {
        for (;;) {
            const std::size_t j = next_job.fetch_add(1);
            if (j >= jobs.size()) return;
            detail3x3::stream_mask_range(*jobs[j].mask, jobs[j].begin, jobs[j].end,
                                         want_fixed, options, tallies[wi]);
        }
    };
    std::vector<std::thread> pool;
    for (int wi = 1; wi < workers; ++wi) pool.emplace_back(run, wi);
    run(0);
    for (auto& th : pool) th.join();

    detail3x3::Tally sum;
    for (const auto& t : tallies) sum.merge(t);
    std::sort(sum.oracle_failures.begin(), sum.oracle_failures.end());

    rep.raw = sum.ds;
    rep.dedup = sum.dsr;
    rep.notes.emplace_back("DSS1", std::to_string(sum.dss1));
    rep.notes.emplace_back("DSS2", std::to_string(sum.dss2));
    rep.notes.emplace_back("DSS", std::to_string(sum.dss1 + sum.dss2));
    rep.notes.emplace_back("N2", std::to_string(sum.classes1));
    rep.notes.emplace_back("classes_total", std::to_string(sum.classes1 + sum.classes2));
    rep.notes.emplace_back("oracle_samples", std::to_string(sum.oracle_checked));

    const ClosedFormLedger lg = closed_form_general(3, 3);
    detail::expect_eq(rep.failures, "DS", lg.ds, sum.ds);
    detail::expect_eq(rep.failures, "DSS1", lg.dss1, sum.dss1);
    detail::expect_eq(rep.failures, "DSS2", lg.dss1, sum.dss2);
    detail::expect_eq(rep.failures, "N2", lg.n2, sum.classes1);
    detail::expect_eq(rep.failures, "N2(anti)", lg.n2, sum.classes2);
    detail::expect_eq(rep.failures, "DSR", lg.dsr, sum.dsr);
    for (const auto& f : sum.oracle_failures) rep.failures.push_back(f);

    if (want_fixed) {
        rep.fixed = sum.fixed;
        std::uint64_t burnside_sum = 0;
        for (std::uint64_t f : sum.fixed) burnside_sum += f;
        if (burnside_sum % 8 != 0)
            throw consistency_error("brute-force Burnside sum not divisible by 8");
        rep.orbits = burnside_sum / 8;
        detail::expect_eq(rep.failures, "fixed.R0", lg.dsr,
                          rep.fixed[index_of(Transform::R0)]);
        detail::expect_eq(rep.failures, "fixed.K1", lg.n2,
                          rep.fixed[index_of(Transform::K1)]);
        detail::expect_eq(rep.failures, "fixed.K3", lg.n2,
                          rep.fixed[index_of(Transform::K3)]);
        for (Transform t : {Transform::R1, Transform::R2, Transform::R3, Transform::K0,
                            Transform::K2})
            detail::expect_eq(rep.failures, "fixed(moving transform)", std::uint64_t{0},
                              rep.fixed[index_of(t)]);
        detail::expect_eq(rep.failures, "orbits", lg.orbits, rep.orbits);
    }

    rep.elapsed_ms = detail::elapsed_ms_since(t0);
    return rep;
}

}  // namespace fractile
