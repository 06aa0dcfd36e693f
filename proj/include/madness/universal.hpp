#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "madness/enumeration.hpp"

namespace madness {

// ---------------------------------------------------------------------------
// Buildable counts for cube sets
// ---------------------------------------------------------------------------

// True if some 8-subset of `set` builds `target`.
inline bool builds_target(CubeMask set, CubeId target) {
    const TargetGraph& g = target_graph(target);
    const CubeMask usable = set & ~g.unusable_mask();
    if (std::popcount(usable) < kCollectionSize) return false;
    return !for_each_subset(usable, kCollectionSize, [&](CubeMask sub) {
        return solution_number_formula(classify(Collection(sub), g)) == 0;
    });
}

inline int buildable_count(CubeMask set) {
    if (std::popcount(set) < kCollectionSize)
        throw Error(ErrorKind::TooSmall, "a cube set needs at least 8 cubes");
    int n = 0;
    for (CubeId t = 0; t < kCubes; ++t) n += builds_target(set, t);
    return n;
}

inline bool is_universal(CubeMask set) {
    for (CubeId t = 0; t < kCubes; ++t)
        if (!builds_target(set, t)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Conjectured minimum universal sets
// ---------------------------------------------------------------------------

struct UniversalCandidate {
    CubeMask set = 0;
    std::array<int, 2> pair{};  // column letters x < y of the chosen Ax, Ay
    int buildable = 0;

    std::string generator() const {
        return {'A', static_cast<char>('a' + pair[0]), ',', 'A', static_cast<char>('a' + pair[1])};
    }
};

// For each pair {x, y} of b..f: Ax, Ay, Xa, Ya, Xy, Yx, and the six cubes
// naming ordered pairs of the three remaining letters.
inline CubeMask conjecture_set(int x, int y) {
    auto bit = [](int r, int c) { return CubeMask{1} << CubeName(r, c).id(); };
    CubeMask m = bit(0, x) | bit(0, y) | bit(x, 0) | bit(y, 0) | bit(x, y) | bit(y, x);
    std::vector<int> rest;
    for (int l = 1; l < kColors; ++l)
        if (l != x && l != y) rest.push_back(l);
    for (int r : rest)
        for (int c : rest)
            if (r != c) m |= bit(r, c);
    return m;
}

inline std::vector<UniversalCandidate> conjecture_sets(bool compute_buildable = true) {
    std::vector<UniversalCandidate> out;
    for (int x = 1; x < kColors; ++x)
        for (int y = x + 1; y < kColors; ++y) {
            UniversalCandidate c{conjecture_set(x, y), {x, y}, 0};
            if (compute_buildable) c.buildable = buildable_count(c.set);
            out.push_back(c);
        }
    return out;
}

struct TargetAnalysis {
    CubeId target = 0;
    bool in_set = false;
    CubeMask unusable_in_set = 0;
    std::vector<std::pair<CubeMask, unsigned>> collections;  // 8-subsets of the usable set-cubes
};

inline std::vector<TargetAnalysis> per_target_analysis(CubeMask set) {
    std::vector<TargetAnalysis> out;
    for (CubeId t = 0; t < kCubes; ++t) {
        const TargetGraph& g = target_graph(t);
        TargetAnalysis a;
        a.target = t;
        a.in_set = set >> t & 1;
        a.unusable_in_set = set & g.unusable_mask();
        for_each_subset(set & ~g.unusable_mask(), kCollectionSize, [&](CubeMask sub) {
            a.collections.emplace_back(sub, solution_number(Collection(sub), g));
        });
        out.push_back(std::move(a));
    }
    return out;
}

// buildable_count over all k-subsets of `set`.
inline SolutionDistribution subset_build_distribution(CubeMask set, int k) {
    if (k < kCollectionSize || k >= std::popcount(set))
        throw Error(ErrorKind::Validation, "subset size must be at least 8 and smaller than the set");
    SolutionDistribution d;
    for_each_subset(set, k, [&](CubeMask sub) { d.add(static_cast<unsigned>(buildable_count(sub))); });
    return d;
}

// ---------------------------------------------------------------------------
// Random sampling
// ---------------------------------------------------------------------------

struct SampleStats {
    int k = 0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    double mean = 0;
    double stddev = 0;  // sample standard deviation
    int min = 0;
    int max = 0;
    SolutionDistribution histogram;
    std::vector<int> counts;
    std::vector<CubeMask> sets;
};

// Uniform in [0, bound) by rejection on the raw 64-bit output.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// The index-th random k-subset for a seed: partial Fisher-Yates over ids 0..29
// driven by a generator seeded from (seed, index).
inline CubeMask sample_subset(int k, std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 rng(seq);
    std::array<int, kCubes> ids{};
    std::iota(ids.begin(), ids.end(), 0);
    CubeMask m = 0;
    for (int j = 0; j < k; ++j) {
        const auto r = static_cast<std::size_t>(j) + bounded_draw(rng, static_cast<std::uint64_t>(kCubes - j));
        std::swap(ids[static_cast<std::size_t>(j)], ids[r]);
        m |= CubeMask{1} << ids[static_cast<std::size_t>(j)];
    }
    return m;
}

inline SampleStats sample_distribution(int k, std::uint64_t n, std::uint64_t seed, unsigned threads = default_threads()) {
    if (k < 9 || k > 12) throw Error(ErrorKind::Validation, "sample size k must be in 9..12");
    if (n < 1) throw Error(ErrorKind::Validation, "need at least one sample");
    SampleStats s;
    s.k = k;
    s.n = n;
    s.seed = seed;
    s.counts.assign(n, 0);
    s.sets.assign(n, 0);
    parallel_chunks(n, kSweepChunks, threads, [&](std::uint64_t b, std::uint64_t e, unsigned) {
        for (std::uint64_t i = b; i < e; ++i) {
            s.sets[i] = sample_subset(k, seed, i);
            s.counts[i] = buildable_count(s.sets[i]);
        }
    });
    double sum = 0;
    s.min = kCubes;
    s.max = 0;
    for (int c : s.counts) {
        sum += c;
        s.min = std::min(s.min, c);
        s.max = std::max(s.max, c);
        s.histogram.add(static_cast<unsigned>(c));
    }
    s.mean = sum / static_cast<double>(n);
    double sq = 0;
    for (int c : s.counts) sq += (c - s.mean) * (c - s.mean);
    s.stddev = n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) : 0.0;
    // Every set of ten or more distinct cubes builds at least one target.
    if (k >= 10 && s.min < 1) throw Error(ErrorKind::Mismatch, "a sampled set of 10+ cubes builds no target");
    return s;
}

// ---------------------------------------------------------------------------
// Color-permutation orbits
// ---------------------------------------------------------------------------

// recolor_table()[p][id]: the cube that permutation p sends `id` to.
inline const std::vector<std::array<std::uint8_t, kCubes>>& recolor_table() {
    static const auto table = [] {
        const auto& perms = ColorPermutation::all();
        std::vector<std::array<std::uint8_t, kCubes>> t(perms.size());
        for (std::size_t p = 0; p < perms.size(); ++p)
            for (const Cube& c : tableau().cubes())
                t[p][static_cast<std::size_t>(c.id)] = static_cast<std::uint8_t>(recolor(perms[p], c).id);
        return t;
    }();
    return table;
}

inline CubeMask recolor_set(std::size_t perm_index, CubeMask set) {
    const auto& row = recolor_table()[perm_index];
    CubeMask out = 0;
    for (CubeMask m = set; m; m &= m - 1) out |= CubeMask{1} << row[static_cast<std::size_t>(std::countr_zero(m))];
    return out;
}

struct StabilizerInfo {
    std::size_t order = 0;
    std::map<std::string, int> cycle_types;  // e.g. "3+3" -> count, fixed points omitted
    int three_cycles = 0;                    // pure 3-cycles fixing the set
    int three_cycles_moving_cubes = 0;       // ...that still move some cube of the set
};

struct OrbitReport {
    std::vector<std::vector<std::size_t>> orbits;  // indices into the input list
    std::vector<std::size_t> orbit_sizes;          // full S6 orbit size of each input set
    std::vector<StabilizerInfo> stabilizers;
    bool closed = true;  // every image of an input set is again an input set
};

inline std::string cycle_type_label(const ColorPermutation& p) {
    std::string s;
    for (int len : p.cycle_type()) {
        if (len == 1) continue;
        if (!s.empty()) s.push_back('+');
        s += std::to_string(len);
    }
    return s.empty() ? "1" : s;
}

inline OrbitReport orbit_and_stabilizer(const std::vector<UniversalCandidate>& candidates) {
    const auto& perms = ColorPermutation::all();
    const auto& table = recolor_table();
    OrbitReport r;
    std::vector<std::size_t> parent(candidates.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        StabilizerInfo info;
        std::set<CubeMask> images;
        for (std::size_t p = 0; p < perms.size(); ++p) {
            const CubeMask img = recolor_set(p, candidates[i].set);
            images.insert(img);
            const auto it = std::find_if(candidates.begin(), candidates.end(),
                                         [&](const UniversalCandidate& c) { return c.set == img; });
            if (it == candidates.end())
                r.closed = false;
            else
                parent[find(static_cast<std::size_t>(it - candidates.begin()))] = find(i);
            if (img != candidates[i].set) continue;
            ++info.order;
            const std::string label = cycle_type_label(perms[p]);
            ++info.cycle_types[label];
            if (label == "3") {
                ++info.three_cycles;
                bool moves = false;
                for (CubeMask m = candidates[i].set; m; m &= m - 1) {
                    const auto id = static_cast<std::size_t>(std::countr_zero(m));
                    moves |= table[p][id] != id;
                }
                info.three_cycles_moving_cubes += moves;
            }
        }
        r.orbit_sizes.push_back(images.size());
        r.stabilizers.push_back(info);
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < candidates.size(); ++i) groups[find(i)].push_back(i);
    for (auto& [root, members] : groups) r.orbits.push_back(members);
    return r;
}

// ---------------------------------------------------------------------------
// Exhaustive search over 12-sets
// ---------------------------------------------------------------------------

struct SearchOptions {
    int size = 12;
    std::uint64_t budget = 0;  // combinations to examine this run; 0 means no limit
    std::optional<std::filesystem::path> checkpoint;
    std::uint64_t checkpoint_every = 1u << 22;
    std::vector<CubeMask> restrict_to;  // if non-empty, scan only these sets
};

struct SearchResult {
    std::vector<CubeMask> found;
    std::uint64_t next_rank = 0;
    std::uint64_t total = 0;
    std::uint64_t examined = 0;
    bool completed = false;
};

inline void write_checkpoint(const std::filesystem::path& path, const SearchResult& r, int size) {
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << "madness-search v1\n";
        out << "size " << size << "\n";
        out << "next_rank " << r.next_rank << "\n";
        for (CubeMask m : r.found) out << "found " << Collection(m).to_string() << "\n";
    }
    std::filesystem::rename(tmp, path);
}

inline std::optional<SearchResult> read_checkpoint(const std::filesystem::path& path, int size) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string header;
    std::getline(in, header);
    if (header != "madness-search v1") throw Error(ErrorKind::Validation, "unrecognized checkpoint " + path.string());
    SearchResult r;
    std::string key;
    int file_size = 0;
    while (in >> key) {
        if (key == "size") {
            in >> file_size;
        } else if (key == "next_rank") {
            in >> r.next_rank;
        } else if (key == "found") {
            std::string names;
            in >> names;
            r.found.push_back(Collection::parse(names).mask());
        } else {
            throw Error(ErrorKind::Validation, "bad checkpoint field '" + key + "'");
        }
    }
    if (file_size != size) throw Error(ErrorKind::Validation, "checkpoint was written for another set size");
    return r;
}

// Scans k-sets in colex order for universal sets. Each set is rejected as
// soon as one target is unbuildable; targets that fail most often are tried
// first. Resumes from and periodically writes the checkpoint file.
inline SearchResult exhaustive_search(const SearchOptions& opt) {
    SearchResult r;
    if (!opt.restrict_to.empty()) {
        r.total = opt.restrict_to.size();
        for (CubeMask m : opt.restrict_to) {
            ++r.examined;
            if (is_universal(m)) r.found.push_back(m);
        }
        r.next_rank = r.total;
        r.completed = true;
        return r;
    }
    if (opt.size < kCollectionSize || opt.size > kCubes) throw Error(ErrorKind::Validation, "bad search size");
    r.total = binomial(kCubes, opt.size);
    if (opt.checkpoint)
        if (auto saved = read_checkpoint(*opt.checkpoint, opt.size)) {
            r.found = saved->found;
            r.next_rank = saved->next_rank;
        }

    std::array<CubeMask, kCubes> unusable{};
    for (CubeId t = 0; t < kCubes; ++t) unusable[static_cast<std::size_t>(t)] = target_graph(t).unusable_mask();
    std::array<CubeId, kCubes> order{};
    std::iota(order.begin(), order.end(), 0);
    std::array<std::uint64_t, kCubes> failures{};

    const std::uint64_t stop = opt.budget ? std::min(r.total, r.next_rank + opt.budget) : r.total;
    std::uint64_t mask = r.next_rank < r.total ? colex_unrank(r.next_rank, opt.size) : 0;
    std::uint64_t since_checkpoint = 0;
    for (; r.next_rank < stop; ++r.next_rank, mask = next_combination(mask)) {
        const auto set = static_cast<CubeMask>(mask);
        ++r.examined;
        bool ok = true;
        for (CubeId t = 0; t < kCubes && ok; ++t)
            ok = std::popcount(set & ~unusable[static_cast<std::size_t>(t)]) >= kCollectionSize;
        if (ok) {
            for (CubeId t : order)
                if (!builds_target(set, t)) {
                    ++failures[static_cast<std::size_t>(t)];
                    ok = false;
                    break;
                }
            if (ok) r.found.push_back(set);
        }
        if (++since_checkpoint == opt.checkpoint_every) {
            since_checkpoint = 0;
            std::stable_sort(order.begin(), order.end(), [&](CubeId a, CubeId b) {
                return failures[static_cast<std::size_t>(a)] > failures[static_cast<std::size_t>(b)];
            });
            if (opt.checkpoint) {
                SearchResult snap = r;
                ++snap.next_rank;
                write_checkpoint(*opt.checkpoint, snap, opt.size);
            }
        }
    }
    r.completed = r.next_rank == r.total;
    if (opt.checkpoint) write_checkpoint(*opt.checkpoint, r, opt.size);
    return r;
}

}  // namespace madness
