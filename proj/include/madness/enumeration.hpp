#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "madness/combinations.hpp"
#include "madness/solver.hpp"

namespace madness {

// Histogram keyed by solution number or by number of buildable targets.
struct SolutionDistribution {
    std::map<unsigned, std::uint64_t> counts;

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& [k, v] : counts) t += v;
        return t;
    }

    std::uint64_t operator[](unsigned key) const {
        const auto it = counts.find(key);
        return it == counts.end() ? 0 : it->second;
    }

    void add(unsigned key, std::uint64_t n = 1) { counts[key] += n; }

    void merge(const SolutionDistribution& o) {
        for (const auto& [k, v] : o.counts) counts[k] += v;
    }

    bool operator==(const SolutionDistribution&) const = default;
};

inline constexpr int kCollectionSize = 8;
inline constexpr unsigned kSweepChunks = 64;

// Nonzero solution numbers for one target over every collection.
inline SolutionDistribution distribution_for_target(const Cube& target, unsigned threads = default_threads()) {
    const TargetGraph& graph = target_graph(target.id);
    const std::uint64_t total = binomial(kCubes, kCollectionSize);
    std::vector<SolutionDistribution> partial(kSweepChunks);
    parallel_chunks(total, kSweepChunks, threads, [&](std::uint64_t b, std::uint64_t e, unsigned chunk) {
        std::array<std::uint64_t, 17> hist{};
        const CubeMask unusable = graph.unusable_mask();
        for_each_combination(kCollectionSize, b, e, [&](CubeMask m) {
            if (m & unusable) return;
            ++hist[solution_number_formula(classify(Collection(m), graph))];
        });
        for (unsigned s = 1; s < hist.size(); ++s)
            if (hist[s]) partial[chunk].add(s, hist[s]);
    });
    SolutionDistribution out;
    for (const auto& p : partial) out.merge(p);
    return out;
}

// Every collection with the given solution number for one target, ascending.
inline std::vector<CubeMask> collections_with_solution(const Cube& target, unsigned solution,
                                                       unsigned threads = default_threads()) {
    const TargetGraph& graph = target_graph(target.id);
    std::vector<std::vector<CubeMask>> partial(kSweepChunks);
    parallel_chunks(binomial(kCubes, kCollectionSize), kSweepChunks, threads,
                    [&](std::uint64_t b, std::uint64_t e, unsigned chunk) {
                        for_each_combination(kCollectionSize, b, e, [&](CubeMask m) {
                            if (!(m & graph.unusable_mask()) && solution_number(Collection(m), graph) == solution)
                                partial[chunk].push_back(m);
                        });
                    });
    std::vector<CubeMask> out;
    for (const auto& p : partial) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end());
    return out;
}

struct MaxCollections {
    std::vector<CubeMask> sweep;          // every solution-16 collection found by enumeration
    std::vector<CubeMask> cycle_family;   // four 2-cycles, or three plus the target
    std::vector<CubeMask> path_family;    // target, two 2-cycles, a spanning 3-path

    std::uint64_t sweep_count() const { return sweep.size(); }
    std::uint64_t constructive_count() const { return cycle_family.size() + path_family.size(); }
};

// The 2-cycle family: the 8 diagonal cubes, and the 8 ways of swapping one
// of them for the target. The path family: the target, two of the four
// diagonal pairs, and 3 cubes forming a path through the other 4 corners.
inline MaxCollections count_max_collections(const Cube& target, unsigned threads = default_threads()) {
    const TargetGraph& g = target_graph(target.id);
    MaxCollections out;
    out.sweep = collections_with_solution(target, 16, threads);

    const CubeMask target_bit = CubeMask{1} << target.id;
    const CubeMask diag = g.diagonal_mask();
    out.cycle_family.push_back(diag);
    for (CubeMask m = diag; m; m &= m - 1) out.cycle_family.push_back((diag & ~(m & -m)) | target_bit);

    // Diagonal pairs keyed by their lower endpoint.
    std::map<int, CubeMask> pairs;
    for (const auto& e : g.edges())
        if (e.diagonal) pairs[e.u] |= CubeMask{1} << e.cube;
    std::vector<std::pair<int, CubeMask>> pair_list(pairs.begin(), pairs.end());
    for (std::size_t a = 0; a < pair_list.size(); ++a)
        for (std::size_t b = a + 1; b < pair_list.size(); ++b) {
            unsigned covered = 0;
            for (std::size_t p : {a, b}) covered |= 1u << pair_list[p].first | 1u << (pair_list[p].first ^ 7);
            const unsigned rest = 0xFFu & ~covered;
            std::vector<GraphEdge> inside;
            for (const auto& e : g.edges())
                if ((rest >> e.u & 1) && (rest >> e.v & 1)) inside.push_back(e);
            for (std::size_t i = 0; i < inside.size(); ++i)
                for (std::size_t j = i + 1; j < inside.size(); ++j)
                    for (std::size_t k = j + 1; k < inside.size(); ++k) {
                        std::array<int, 8> degree{};
                        UnionFind<8> uf;
                        for (const GraphEdge* e : {&inside[i], &inside[j], &inside[k]}) {
                            ++degree[static_cast<std::size_t>(e->u)];
                            ++degree[static_cast<std::size_t>(e->v)];
                            uf.add_edge(static_cast<unsigned>(e->u), static_cast<unsigned>(e->v));
                        }
                        const unsigned root = uf.find(static_cast<unsigned>(inside[i].u));
                        const bool path = uf.vertex_count(root) == 4 && uf.edge_count(root) == 3 &&
                                          *std::max_element(degree.begin(), degree.end()) <= 2;
                        if (!path) continue;
                        out.path_family.push_back(target_bit | pair_list[a].second | pair_list[b].second |
                                                  CubeMask{1} << inside[i].cube | CubeMask{1} << inside[j].cube |
                                                  CubeMask{1} << inside[k].cube);
                    }
        }
    return out;
}

inline int buildable_target_count(CubeMask collection) {
    int n = 0;
    for (CubeId t = 0; t < kCubes; ++t) {
        const TargetGraph& g = target_graph(t);
        if (collection & g.unusable_mask()) continue;
        n += solution_number_formula(classify(Collection(collection), g)) > 0;
    }
    return n;
}

inline std::vector<CubeId> buildable_targets(Collection collection) {
    if (collection.size() != kCollectionSize) throw Error(ErrorKind::Validation, "a collection has exactly 8 cubes");
    std::vector<CubeId> out;
    for (CubeId t = 0; t < kCubes; ++t)
        if (solution_number(collection, target_graph(t)) > 0) out.push_back(t);
    return out;
}

struct BuildableSweep {
    SolutionDistribution histogram;
    std::vector<CubeMask> five_target;  // ascending
    int max_buildable = 0;
};

// Buildable-target counts over every collection. All 30 targets are checked
// for each collection.
inline BuildableSweep distribution_buildable(unsigned threads = default_threads()) {
    struct Partial {
        std::array<std::uint64_t, kCubes + 1> hist{};
        std::vector<CubeMask> five;
    };
    std::vector<Partial> partial(kSweepChunks);
    std::array<CubeMask, kCubes> unusable{};
    for (CubeId t = 0; t < kCubes; ++t) unusable[static_cast<std::size_t>(t)] = target_graph(t).unusable_mask();
    parallel_chunks(binomial(kCubes, kCollectionSize), kSweepChunks, threads,
                    [&](std::uint64_t b, std::uint64_t e, unsigned chunk) {
                        Partial& p = partial[chunk];
                        for_each_combination(kCollectionSize, b, e, [&](CubeMask m) {
                            int n = 0;
                            for (CubeId t = 0; t < kCubes; ++t) {
                                if (m & unusable[static_cast<std::size_t>(t)]) continue;
                                n += solution_number_formula(classify(Collection(m), target_graph(t))) > 0;
                            }
                            ++p.hist[static_cast<std::size_t>(n)];
                            if (n >= 5) p.five.push_back(m);
                        });
                    });
    BuildableSweep out;
    for (const auto& p : partial) {
        for (std::size_t n = 0; n < p.hist.size(); ++n)
            if (p.hist[n]) {
                out.histogram.add(static_cast<unsigned>(n), p.hist[n]);
                out.max_buildable = std::max(out.max_buildable, static_cast<int>(n));
            }
        out.five_target.insert(out.five_target.end(), p.five.begin(), p.five.end());
    }
    std::sort(out.five_target.begin(), out.five_target.end());
    if (out.max_buildable > 5)
        throw Error(ErrorKind::Mismatch, "a collection builds " + std::to_string(out.max_buildable) + " targets");
    return out;
}

// ---------------------------------------------------------------------------
// Five-target construction
// ---------------------------------------------------------------------------

// Pick three tableau lines in one direction and four in the other, two of the
// four sharing a letter with the three. The five targets lie outside all
// seven lines; the collection is the ten-cube intersection minus the mirrors
// of targets.
struct FiveTargetRule {
    enum class Orientation { ColumnsFirst, RowsFirst };

    unsigned three = 0;  // letter bitmask, 3 letters (columns when ColumnsFirst)
    unsigned four = 0;   // letter bitmask, 4 letters (rows when ColumnsFirst)
    Orientation orientation = Orientation::ColumnsFirst;

    void validate() const {
        if (std::popcount(three) != 3 || std::popcount(four) != 4 || three >> kColors || four >> kColors)
            throw Error(ErrorKind::InvalidRule, "a rule selects 3 lines and 4 crossing lines");
        if (std::popcount(three & four) != 2)
            throw Error(ErrorKind::InvalidRule, "exactly 2 of the 4 lines must match a letter of the 3");
    }

    unsigned rows() const { return orientation == Orientation::ColumnsFirst ? four : three; }
    unsigned columns() const { return orientation == Orientation::ColumnsFirst ? three : four; }

    std::vector<CubeId> targets() const {
        validate();
        std::vector<CubeId> out;
        for (int r = 0; r < kColors; ++r)
            for (int c = 0; c < kColors; ++c)
                if (r != c && !(rows() >> r & 1) && !(columns() >> c & 1)) out.push_back(CubeName(r, c).id());
        std::sort(out.begin(), out.end());
        return out;
    }

    Collection collection() const {
        CubeMask mirrors = 0;
        for (CubeId t : targets()) mirrors |= CubeMask{1} << mirror(CubeName::from_id(t)).id();
        CubeMask m = 0;
        for (int r = 0; r < kColors; ++r)
            for (int c = 0; c < kColors; ++c)
                if (r != c && (rows() >> r & 1) && (columns() >> c & 1)) m |= CubeMask{1} << CubeName(r, c).id();
        return Collection(m & ~mirrors);
    }
};

inline std::vector<FiveTargetRule> all_five_target_rules() {
    std::vector<FiveTargetRule> out;
    for (auto o : {FiveTargetRule::Orientation::ColumnsFirst, FiveTargetRule::Orientation::RowsFirst})
        for (unsigned three = 0; three < 64; ++three) {
            if (std::popcount(three) != 3) continue;
            for (unsigned four = 0; four < 64; ++four)
                if (std::popcount(four) == 4 && std::popcount(three & four) == 2) out.push_back({three, four, o});
        }
    return out;
}

struct FiveTargetRecord {
    FiveTargetRule rule;
    Collection collection;
    std::array<CubeId, 5> targets{};
    std::array<unsigned, 5> solutions{};
};

inline FiveTargetRecord make_five_target_record(const FiveTargetRule& rule) {
    FiveTargetRecord rec{rule, rule.collection(), {}, {}};
    const auto targets = rule.targets();
    if (targets.size() != 5 || rec.collection.size() != kCollectionSize)
        throw Error(ErrorKind::InvalidRule, "rule does not yield 5 targets and 8 cubes");
    for (std::size_t i = 0; i < 5; ++i) {
        rec.targets[i] = targets[i];
        rec.solutions[i] = solution_number(rec.collection, target_graph(targets[i]));
    }
    return rec;
}

// All 360 records. With verify, each collection must build exactly its five
// targets and nothing else.
inline std::vector<FiveTargetRecord> five_target_records(bool verify = true) {
    std::vector<FiveTargetRecord> out;
    for (const auto& rule : all_five_target_rules()) {
        FiveTargetRecord rec = make_five_target_record(rule);
        if (verify) {
            const auto built = buildable_targets(rec.collection);
            if (!std::equal(built.begin(), built.end(), rec.targets.begin(), rec.targets.end()))
                throw Error(ErrorKind::Mismatch, "collection " + rec.collection.to_string() +
                                                     " does not build exactly its five targets");
        }
        out.push_back(rec);
    }
    return out;
}

}  // namespace madness
