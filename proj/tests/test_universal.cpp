#include <gtest/gtest.h>

#include <filesystem>
#include <numeric>
#include <random>
#include <set>

#include "madness/universal.hpp"
#include "oracles.hpp"

namespace madness {
namespace {

TEST(Conjecture, TenSetsTwoPerLine) {
    const auto sets = conjecture_sets();
    ASSERT_EQ(sets.size(), 10u);
    std::set<CubeMask> distinct;
    for (const auto& c : sets) {
        distinct.insert(c.set);
        EXPECT_EQ(std::popcount(c.set), 12);
        EXPECT_EQ(c.buildable, 30) << c.generator();
        std::array<int, kColors> rows{}, cols{};
        for (CubeId id : Collection(c.set).ids()) {
            const CubeName n = CubeName::from_id(id);
            ++rows[static_cast<std::size_t>(n.row())];
            ++cols[static_cast<std::size_t>(n.col())];
            // Closed under mirroring.
            EXPECT_TRUE(c.set >> mirror(n).id() & 1);
        }
        for (int i = 0; i < kColors; ++i) {
            EXPECT_EQ(rows[static_cast<std::size_t>(i)], 2);
            EXPECT_EQ(cols[static_cast<std::size_t>(i)], 2);
        }
    }
    EXPECT_EQ(distinct.size(), 10u);
    EXPECT_EQ(Collection(conjecture_set(1, 2)).to_string(), "Ab,Ac,Ba,Bc,Ca,Cb,De,Df,Ed,Ef,Fd,Fe");
}

TEST(Buildable, SmallSetsAndErrors) {
    try {
        buildable_count(Collection::parse("Ab,Ac").mask());
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TooSmall);
    }
    const auto worked = Collection::parse("Ac,Ad,Ae,Af,Cb,Db,Eb,Fb");
    EXPECT_TRUE(builds_target(worked.mask(), cube("Ba").id));
    EXPECT_EQ(buildable_count(Collection::parse("Ac Af Ba Bf Ea Ef Fa Fc").mask()), 5);
}

TEST(Buildable, ElevenCubesAreNeverEnough) {
    for (const auto& c : conjecture_sets(false))
        for (CubeId id : Collection(c.set).ids()) EXPECT_FALSE(is_universal(c.set & ~(CubeMask{1} << id)));
    EXPECT_TRUE(is_universal(kAllCubes));
}

TEST(Buildable, MonotoneUnderInclusion) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> ids(kCubes);
        std::iota(ids.begin(), ids.end(), 0);
        std::shuffle(ids.begin(), ids.end(), rng);
        CubeMask m = 0;
        int prev = -1;
        for (int k = 0; k < 14; ++k) {
            m |= CubeMask{1} << ids[static_cast<std::size_t>(k)];
            if (k + 1 < 8) continue;
            const int n = buildable_count(m);
            EXPECT_GE(n, prev);
            prev = n;
        }
    }
}

TEST(Analysis, InSetAndOutOfSetTargets) {
    for (const auto& c : conjecture_sets(false)) {
        int in_set = 0;
        for (const auto& a : per_target_analysis(c.set)) {
            std::map<unsigned, int> sols;
            for (const auto& [m, s] : a.collections)
                if (s) ++sols[s];
            if (a.in_set) {
                ++in_set;
                EXPECT_EQ(sols, (std::map<unsigned, int>{{2, 7}, {8, 2}})) << CubeName::from_id(a.target).to_string();
            } else {
                EXPECT_EQ(sols, (std::map<unsigned, int>{{4, 1}})) << CubeName::from_id(a.target).to_string();
            }
        }
        EXPECT_EQ(in_set, 12);
    }
}

TEST(SubsetHistograms, SubsetHistogramsForEverySet) {
    for (const auto& c : conjecture_sets(false))
        for (const auto& h : reference::kUniversalSubsetHistograms) {
            std::map<unsigned, std::uint64_t> want;
            for (unsigned i = 0; i < h.bin_count; ++i) want[h.bins[i].first] = h.bins[i].second;
            EXPECT_EQ(subset_build_distribution(c.set, static_cast<int>(h.k)).counts, want) << c.generator() << " k=" << h.k;
        }
    EXPECT_THROW(subset_build_distribution(conjecture_set(1, 2), 12), Error);
    EXPECT_THROW(subset_build_distribution(conjecture_set(1, 2), 7), Error);
}

TEST(Sampling, DeterministicAcrossThreadCounts) {
    const auto a = sample_distribution(10, 500, 77, 1);
    const auto b = sample_distribution(10, 500, 77, 4);
    EXPECT_EQ(a.sets, b.sets);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(sample_subset(10, 77, 3), a.sets[3]);
    for (CubeMask m : a.sets) EXPECT_EQ(std::popcount(m), 10);
    EXPECT_NE(sample_distribution(10, 50, 78, 1).sets, sample_distribution(10, 50, 77, 1).sets);
    EXPECT_THROW(sample_distribution(8, 10, 1), Error);
}

TEST(Sampling, BoundedDrawCoversRange) {
    std::mt19937_64 rng(1);
    std::array<int, 7> hits{};
    for (int i = 0; i < 7000; ++i) ++hits[bounded_draw(rng, 7)];
    for (int h : hits) EXPECT_GT(h, 800);
}

TEST(Orbits, SingleOrbitOfTen) {
    const auto cands = conjecture_sets(false);
    const auto r = orbit_and_stabilizer(cands);
    ASSERT_EQ(r.orbits.size(), 1u);
    EXPECT_EQ(r.orbits[0].size(), 10u);
    EXPECT_TRUE(r.closed);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        EXPECT_EQ(r.orbit_sizes[i], 10u);
        EXPECT_EQ(r.stabilizers[i].order, 72u);
        EXPECT_EQ(r.stabilizers[i].three_cycles, 4);
        EXPECT_EQ(r.stabilizers[i].three_cycles_moving_cubes, 4);
    }
}

TEST(Orbits, RecolorSetMatchesCubeRecolor) {
    const auto& perms = ColorPermutation::all();
    for (std::size_t p = 0; p < perms.size(); p += 37) {
        const CubeMask set = conjecture_set(2, 4);
        CubeMask want = 0;
        for (CubeId id : Collection(set).ids()) want |= CubeMask{1} << recolor(perms[p], tableau()[id]).id;
        EXPECT_EQ(recolor_set(p, set), want);
        EXPECT_TRUE(is_universal(want));
    }
}

TEST(Search, RestrictedFindsTheTen) {
    SearchOptions opt;
    for (const auto& c : conjecture_sets(false)) opt.restrict_to.push_back(c.set);
    opt.restrict_to.push_back(conjecture_set(1, 2) ^ (CubeMask{1} << cube("Ab").id) ^ (CubeMask{1} << cube("Ad").id));
    const auto r = exhaustive_search(opt);
    EXPECT_TRUE(r.completed);
    EXPECT_EQ(r.found.size(), 10u);
}

TEST(Search, BudgetAndCheckpointResume) {
    const auto path = std::filesystem::temp_directory_path() / "madness_search_test.ckpt";
    std::filesystem::remove(path);
    SearchOptions opt;
    opt.size = 27;  // C(30,27) = 4060 sets
    opt.budget = 1000;
    opt.checkpoint = path;
    opt.checkpoint_every = 300;
    auto r = exhaustive_search(opt);
    EXPECT_FALSE(r.completed);
    EXPECT_EQ(r.next_rank, 1000u);
    auto saved = read_checkpoint(path, 27);
    ASSERT_TRUE(saved);
    EXPECT_EQ(saved->next_rank, 1000u);
    EXPECT_EQ(saved->found.size(), r.found.size());

    opt.budget = 0;
    const auto rest = exhaustive_search(opt);
    EXPECT_TRUE(rest.completed);
    EXPECT_EQ(rest.examined, 4060u - 1000u);

    SearchOptions fresh;
    fresh.size = 27;
    const auto all = exhaustive_search(fresh);
    EXPECT_EQ(rest.found, all.found);
    EXPECT_THROW(read_checkpoint(path, 12), Error);
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace madness
