#pragma once

#include <map>
#include <ostream>
#include <random>

#include "fractile/census.hpp"

namespace fractile {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

namespace detail {

inline Configuration random_configuration(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> cell(0, 8);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(n) * n);
    for (auto& d : cells) d = static_cast<std::uint8_t>(cell(rng));
    return Configuration::from_cells(n, std::move(cells));
}

inline Configuration random_assignment_for_mask(std::mt19937_64& rng, const Grid& mask) {
    std::uniform_int_distribution<int> digit(1, 8);
    std::vector<std::uint8_t> cells(mask.cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
        cells[i] = mask.cells[i] ? static_cast<std::uint8_t>(digit(rng)) : 0;
    return Configuration::from_cells(mask.side, std::move(cells));
}

inline Transform random_transform(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 7);
    return transform_from_index(pick(rng));
}

// Group every same-mask 2x2 one-zero configuration by its depth-3
// expansion: buckets are the exact redundancy classes.
inline std::map<std::string, std::vector<Configuration>> bucket_2x2_by_expansion(int depth = 3) {
    std::map<std::string, std::vector<Configuration>> buckets;
    for (const Configuration& c : all_2x2_one_zero_configs()) {
        const BinaryPattern p = expand(c, depth);
        std::string key(1, static_cast<char>('0' + std::find(c.cells.begin(), c.cells.end(), 0) -
                                              c.cells.begin()));
        key.append(p.grid.cells.begin(), p.grid.cells.end());
        buckets[key].push_back(c);
    }
    return buckets;
}

}  // namespace detail

// Structural group checks, runnable against an arbitrary (possibly
// corrupted) table copy.
inline CheckResult check_group_table(const GroupTable& gt) {
    CheckResult res{"group-table"};
    const int id = index_of(Transform::R0);
    for (int i = 0; i < 8 && res.passed; ++i)
        for (int j = 0; j < 8; ++j) {
            const int v = index_of(gt.compose[i][j]);
            if (v < 0 || v > 7) {
                res.passed = false;
                res.detail = "closure violated at (" + std::string(name_of(transform_from_index(i))) +
                             ", " + std::string(name_of(transform_from_index(j))) + ")";
                break;
            }
        }
    if (res.passed)
        for (int i = 0; i < 8; ++i)
            if (gt.compose[id][i] != transform_from_index(i) ||
                gt.compose[i][id] != transform_from_index(i)) {
                res.passed = false;
                res.detail = "identity violated at " + std::string(name_of(transform_from_index(i)));
                break;
            }
    if (res.passed)
        for (int i = 0; i < 8; ++i)
            if (gt.compose[i][index_of(gt.inverse[i])] != Transform::R0) {
                res.passed = false;
                res.detail = "inverse violated at " + std::string(name_of(transform_from_index(i)));
                break;
            }
    if (res.passed)
        for (int a = 0; a < 8 && res.passed; ++a)
            for (int b = 0; b < 8 && res.passed; ++b)
                for (int c = 0; c < 8; ++c) {
                    const Transform left =
                        gt.compose[index_of(gt.compose[a][b])][c];
                    const Transform right =
                        gt.compose[a][index_of(gt.compose[b][c])];
                    if (left != right) {
                        res.passed = false;
                        res.detail = "associativity violated at (" +
                                     std::string(name_of(transform_from_index(a))) + ", " +
                                     std::string(name_of(transform_from_index(b))) + ", " +
                                     std::string(name_of(transform_from_index(c))) + ")";
                        break;
                    }
                }
    if (res.passed) {
        Grid probe(3);
        for (int i = 0; i < 9; ++i) probe.cells[i] = static_cast<std::uint8_t>(i + 1);
        for (int a = 0; a < 8 && res.passed; ++a)
            for (int b = 0; b < 8; ++b) {
                const Transform t1 = transform_from_index(a), t2 = transform_from_index(b);
                if (apply_transform(gt.compose[a][b], probe) !=
                    apply_transform(t1, apply_transform(t2, probe))) {
                    res.passed = false;
                    res.detail = "matrix-action consistency violated at (" +
                                 std::string(name_of(t1)) + ", " + std::string(name_of(t2)) + ")";
                    break;
                }
            }
    }
    return res;
}

// expand(transform_config(t, c), k) = apply_transform(t, expand(c, k)).
inline CheckResult check_expansion_commutation(int samples = 1000, std::uint64_t seed = 11) {
    CheckResult res{"expansion-commutation"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> side(2, 3), depth(1, 3);
    for (int i = 0; i < samples; ++i) {
        const Configuration c = detail::random_configuration(rng, side(rng));
        const Transform t = detail::random_transform(rng);
        const int k = depth(rng);
        if (!(expand(transform_config(t, c), k).grid ==
              apply_transform(t, expand(c, k).grid))) {
            res.passed = false;
            res.detail = "violated for t = " + std::string(name_of(t)) + ", k = " +
                         std::to_string(k) + ", config " + format_config(c);
            return res;
        }
    }
    res.detail = std::to_string(samples) + " random triples";
    return res;
}

// popcount(expand(c, k)) = occupied(c)^(k+1).
inline CheckResult check_occupancy_law(int samples = 500, std::uint64_t seed = 12) {
    CheckResult res{"occupancy-law"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> side(2, 3), depth(0, 4);
    for (int i = 0; i < samples; ++i) {
        const Configuration c = detail::random_configuration(rng, side(rng));
        const int k = depth(rng);
        std::uint64_t expected = 1;
        for (int j = 0; j <= k; ++j) expected *= static_cast<std::uint64_t>(occupied_count(c));
        if (popcount(expand(c, k).grid) != expected) {
            res.passed = false;
            res.detail = "violated at k = " + std::to_string(k) + " for " + format_config(c);
            return res;
        }
    }
    res.detail = std::to_string(samples) + " random configurations";
    return res;
}

// Binary projection of the labeled expansion matches the binary expansion,
// and labels transform by conjugation when the seed does.
inline CheckResult check_label_rules(int samples = 200, std::uint64_t seed = 13) {
    CheckResult res{"labeled-expansion"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> side(2, 3), depth(0, 3);
    for (int i = 0; i < samples; ++i) {
        const Configuration c = detail::random_configuration(rng, side(rng));
        const int k = depth(rng);
        const LabeledPattern lab = expand_labeled(c, k);
        if (!(forget_labels(lab) == expand(c, k))) {
            res.passed = false;
            res.detail = "label forgetting violated for " + format_config(c);
            return res;
        }
        const Transform t = detail::random_transform(rng);
        // Geometric move plus per-label conjugation.
        LabeledPattern conjugated{lab.depth, apply_transform(t, lab.grid)};
        for (std::uint8_t& v : conjugated.grid.cells)
            if (v) v = digit_of_transform(conjugate(t, transform_of_digit(v)));
        if (!(expand_labeled(transform_config(t, c), k) == conjugated)) {
            res.passed = false;
            res.detail = "label conjugation equivariance violated for " + format_config(c);
            return res;
        }
    }
    res.detail = std::to_string(samples) + " random configurations";
    return res;
}

// Exhaustive 2x2 agreement between the redundancy predicate and the
// expansion-collision oracle, plus the class-shape bookkeeping.
inline CheckResult check_redundancy_oracle_2x2() {
    CheckResult res{"redundancy-oracle-2x2"};
    const auto buckets = detail::bucket_2x2_by_expansion();
    std::size_t classes_of_8 = 0, singletons = 0;
    for (const auto& [key, members] : buckets) {
        if (members.size() == 8)
            ++classes_of_8;
        else if (members.size() == 1)
            ++singletons;
        else {
            res.passed = false;
            res.detail = "redundancy class of unexpected size " + std::to_string(members.size());
            return res;
        }
        for (const Configuration& c : members) {
            const bool predicate = is_redundant(c);
            const bool collision = members.size() > 1;
            if (predicate != collision) {
                res.passed = false;
                res.detail = "predicate disagrees with oracle on " + format_config(c);
                return res;
            }
        }
    }
    if (classes_of_8 != 32 || buckets.size() != 1824) {
        res.passed = false;
        res.detail = "expected 32 classes of 8 and 1824 representatives, got " +
                     std::to_string(classes_of_8) + " and " + std::to_string(buckets.size());
        return res;
    }
    res.detail = "2048 configurations, 32 classes of 8, 1824 representatives";
    return res;
}

// Sampled agreement on 3x3 diagonal-symmetric configurations: the
// predicate matches the partner-substitution collision oracle.
inline CheckResult check_redundancy_oracle_3x3(int samples = 10000, std::uint64_t seed = 14,
                                               int depth = 3) {
    CheckResult res{"redundancy-oracle-3x3"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> bit(0, 1), digit(1, 8), which_axis(0, 1);
    int done = 0;
    while (done < samples) {
        // Random mask symmetric about exactly one diagonal.
        const DiagonalAxis axis = which_axis(rng) ? DiagonalAxis::anti : DiagonalAxis::main;
        Grid mask(3);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                const auto [mr, mc] = map_cell(axis_reflection(axis), r, c, 3);
                if (std::pair{r, c} <= std::pair{mr, mc}) {
                    const std::uint8_t v = static_cast<std::uint8_t>(bit(rng));
                    mask.at(r, c) = v;
                    mask.at(mr, mc) = v;
                }
            }
        if (popcount(mask) == 0 ||
            is_diagonal_symmetric(mask, axis == DiagonalAxis::main ? DiagonalAxis::anti
                                                                   : DiagonalAxis::main))
            continue;
        const Configuration c = detail::random_assignment_for_mask(rng, mask);
        ++done;
        const bool predicate = is_redundant_wrt(c, axis);
        bool collision = false;
        std::vector<int> occupied;
        for (int i = 0; i < 9; ++i)
            if (c.cells[i]) occupied.push_back(i);
        for (std::uint32_t bits = 1;
             bits < (std::uint32_t{1} << occupied.size()) && !collision; ++bits) {
            Configuration v = c;
            for (std::size_t j = 0; j < occupied.size(); ++j)
                if (bits >> j & 1) {
                    std::uint8_t& d = v.cells[occupied[j]];
                    d = digit_of_transform(
                        detail::redundancy_partner(transform_of_digit(d), axis));
                }
            if (fractal_equal(c, v, depth)) collision = true;
        }
        if (predicate != collision) {
            res.passed = false;
            res.detail = "predicate disagrees with oracle on " + format_config(c);
            return res;
        }
    }
    res.detail = std::to_string(samples) + " sampled configurations";
    return res;
}

// Bounded-depth equality is stable on masks with at most one diagonal
// symmetry: depth 2 agrees with depths 3 and 4. On doubly symmetric masks
// deeper separations genuinely occur (a partner-swapped pair stays equal
// while M_k keeps the swap's reflection symmetry, which such masks can
// sustain past M_1), so those masks are excluded here and the known
// counterexample is pinned in the test suite instead.
inline CheckResult check_depth_stability(int samples = 10000, std::uint64_t seed = 15) {
    CheckResult res{"depth-stability"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> side(2, 3), mode(0, 2), bit(0, 1);
    for (int i = 0; i < samples; ++i) {
        const int n = side(rng);
        Configuration a = detail::random_configuration(rng, n);
        {
            const Grid m = mask_of(a);
            if (is_diagonal_symmetric(m, DiagonalAxis::main) &&
                is_diagonal_symmetric(m, DiagonalAxis::anti)) {
                --i;
                continue;
            }
        }
        Configuration b = a;
        switch (mode(rng)) {
            case 0:  // fresh assignment on the same mask
                b = detail::random_assignment_for_mask(rng, mask_of(a));
                break;
            case 1: {  // partner-style perturbation, likely equal when redundant
                for (std::uint8_t& d : b.cells)
                    if (d && bit(rng))
                        d = digit_of_transform(detail::redundancy_partner(
                            transform_of_digit(d), DiagonalAxis::main));
                break;
            }
            default:  // independent configuration
                b = detail::random_configuration(rng, n);
                break;
        }
        const bool d2 = fractal_equal(a, b, 2);
        if (d2 != fractal_equal(a, b, 3) || d2 != fractal_equal(a, b, 4)) {
            res.passed = false;
            res.detail = "late separation between " + format_config(a) + " and " +
                         format_config(b);
            return res;
        }
    }
    res.detail = std::to_string(samples) + " random pairs";
    return res;
}

inline CheckResult check_census_2x2() {
    CheckResult res{"census-2x2"};
    const CensusReport rep = census_2x2();
    if (!rep.ok()) {
        res.passed = false;
        res.detail = rep.failures.front();
    } else {
        res.detail = "raw 2048, dedup 1824, orbits 232";
    }
    return res;
}

inline CheckResult check_closed_form_3x3() {
    CheckResult res{"closed-form-3x3"};
    const CensusReport rep = closed_form_3x3();
    if (!rep.ok()) {
        res.passed = false;
        res.detail = rep.failures.front();
    } else {
        res.detail = "ledger reproduced, orbits 11043660";
    }
    return res;
}

// The census depends only on group structure, not on reflection naming.
inline CheckResult check_relabeling_robustness() {
    CheckResult res{"relabeling-robustness"};
    const CensusReport a = census_2x2(DigitConvention::standard());
    const CensusReport b = census_2x2(DigitConvention::column_mirror());
    if (a.raw != b.raw || a.dedup != b.dedup || a.orbits != b.orbits || a.fixed != b.fixed) {
        res.passed = false;
        res.detail = "counts differ between mirror conventions";
    } else {
        res.detail = "counts identical under the column-mirror naming";
    }
    return res;
}

inline CheckResult check_binomial_bookkeeping() {
    CheckResult res{"binomial-bookkeeping"};
    std::uint64_t total = 0;
    for (int k = 0; k <= 9; ++k) {
        std::uint64_t pw = 1;
        for (int i = 0; i < k; ++i) pw *= 8;
        total += binomial(9, k) * pw;
    }
    if (total != 387420489ull) {
        res.passed = false;
        res.detail = "sum C(9,k) 8^k = " + std::to_string(total) + ", expected 387420489";
    } else {
        res.detail = "sum C(9,k) 8^k = 9^9";
    }
    return res;
}

inline CheckResult check_brute_force_3x3(int workers) {
    CheckResult res{"brute-force-3x3"};
    BruteForceOptions opt;
    opt.workers = workers;
    opt.scope = BruteScope::full;
    const CensusReport rep = brute_force_3x3(opt);
    if (!rep.ok()) {
        res.passed = false;
        res.detail = rep.failures.front();
    } else {
        res.detail = "DSR 88345080, orbits 11043660 (" + std::to_string(rep.elapsed_ms) + " ms)";
    }
    return res;
}

inline std::vector<CheckResult> run_verify(bool full, int workers, std::ostream* log = nullptr) {
    std::vector<CheckResult> results;
    const auto run = [&](CheckResult r) {
        if (log)
            *log << (r.passed ? "[pass] " : "[FAIL] ") << r.name
                 << (r.detail.empty() ? "" : ": " + r.detail) << '\n';
        results.push_back(std::move(r));
    };
    run(check_group_table(group_table()));
    run(check_expansion_commutation());
    run(check_occupancy_law());
    run(check_label_rules());
    run(check_redundancy_oracle_2x2());
    run(check_census_2x2());
    run(check_depth_stability());
    run(check_redundancy_oracle_3x3());
    run(check_closed_form_3x3());
    run(check_relabeling_robustness());
    run(check_binomial_bookkeeping());
    if (full) run(check_brute_force_3x3(workers));
    return results;
}

}  // namespace fractile
