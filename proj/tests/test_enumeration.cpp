#include <gtest/gtest.h>

#include <algorithm>
#include <mutex>
#include <set>

#include "madness/enumeration.hpp"
#include "oracles.hpp"

namespace madness {
namespace {

// Nonzero solution numbers for Ba, computed once by the permanent sweep below
// and frozen here.
const std::map<unsigned, std::uint64_t> kBaDistribution{{2, 93000}, {4, 15987}, {6, 2664},  {8, 19860},
                                                        {10, 792},  {12, 1296}, {16, 81}};

TEST(Combinations, ColexRankRoundTrip) {
    EXPECT_EQ(binomial(30, 8), 5852925u);
    EXPECT_EQ(binomial(30, 12), 86493225u);
    std::uint64_t m = first_combination(5);
    for (std::uint64_t r = 0; r < binomial(12, 5); ++r, m = next_combination(m)) {
        EXPECT_EQ(colex_rank(m), r);
        EXPECT_EQ(colex_unrank(r, 5), m);
    }
}

TEST(Combinations, ChunksCoverEverythingOnce) {
    std::vector<int> hits(1000, 0);
    std::mutex mu;
    parallel_chunks(1000, 64, 4, [&](std::uint64_t b, std::uint64_t e, unsigned) {
        std::lock_guard lock(mu);
        for (auto i = b; i < e; ++i) ++hits[i];
    });
    EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}

TEST(Collection, ParseAndErrors) {
    EXPECT_EQ(Collection::parse("Ab Ac,Ad").size(), 3);
    EXPECT_THROW(Collection::parse("Ab,Ab"), Error);
    EXPECT_THROW(Collection::parse("Ab,Zz"), Error);
}

TEST(SolutionDistribution, BaDistribution) {
    const auto d = distribution_for_target(cube("Ba"));
    EXPECT_EQ(d.counts, kBaDistribution);
    EXPECT_EQ(d.total(), 133680u);
}

TEST(SolutionDistribution, PermanentSweepAgrees) {
    const Cube& ba = cube("Ba");
    const CubeMask unusable = target_graph(ba.id).unusable_mask();
    SolutionDistribution d;
    for_each_combination(8, 0, binomial(kCubes, 8), [&](CubeMask m) {
        if (m & unusable) return;
        if (const unsigned s = solution_number_permanent(Collection(m), ba)) d.add(s);
    });
    EXPECT_EQ(d.counts, kBaDistribution);
}

TEST(SolutionDistribution, SameForEveryTarget) {
    for (const Cube& t : tableau().cubes()) EXPECT_EQ(distribution_for_target(t).counts, kBaDistribution) << t.name.to_string();
}

TEST(SolutionDistribution, IndependentOfThreadCount) {
    const auto one = distribution_for_target(cube("Cd"), 1);
    const auto four = distribution_for_target(cube("Cd"), 4);
    EXPECT_EQ(one, four);
    EXPECT_EQ(collections_with_solution(cube("Cd"), 16, 1), collections_with_solution(cube("Cd"), 16, 3));
}

TEST(MaxCollections, EightyOneFromTwoFamilies) {
    const auto mc = count_max_collections(cube("Ba"));
    EXPECT_EQ(mc.sweep_count(), 81u);
    EXPECT_EQ(mc.cycle_family.size(), 9u);
    EXPECT_EQ(mc.path_family.size(), 72u);
    std::set<CubeMask> uni(mc.cycle_family.begin(), mc.cycle_family.end());
    uni.insert(mc.path_family.begin(), mc.path_family.end());
    EXPECT_EQ(uni.size(), 81u);
    EXPECT_EQ(std::vector<CubeMask>(uni.begin(), uni.end()), mc.sweep);
    for (CubeMask m : mc.sweep) EXPECT_EQ(oracle::geometric_arrangements(Collection(m).ids(), cube("Ba")), 16u);
}

TEST(BuildableSweep, BuildableHistogram) {
    const auto sweep = distribution_buildable();
    std::map<unsigned, std::uint64_t> want(reference::kBuildableDistribution.begin(),
                                           reference::kBuildableDistribution.end());
    EXPECT_EQ(sweep.histogram.counts, want);
    EXPECT_EQ(sweep.histogram.total(), 5852925u);
    EXPECT_EQ(sweep.max_buildable, 5);
    EXPECT_EQ(sweep.five_target.size(), 360u);

    std::vector<CubeMask> rules;
    for (const auto& r : five_target_records()) rules.push_back(r.collection.mask());
    std::sort(rules.begin(), rules.end());
    EXPECT_EQ(rules, sweep.five_target);
}

TEST(FiveTarget, RulesAreDistinct) {
    const auto rules = all_five_target_rules();
    EXPECT_EQ(rules.size(), 360u);
    std::set<CubeMask> masks;
    for (const auto& r : rules) {
        const auto c = r.collection();
        EXPECT_EQ(c.size(), 8);
        masks.insert(c.mask());
        EXPECT_EQ(r.targets().size(), 5u);
    }
    EXPECT_EQ(masks.size(), 360u);
}

TEST(FiveTarget, WorkedExample) {
    // Columns a, c, f; rows A, B, E, F.
    FiveTargetRule rule{0b100101, 0b110011, FiveTargetRule::Orientation::ColumnsFirst};
    const auto rec = make_five_target_record(rule);
    EXPECT_EQ(rec.collection.to_string(), "Ac,Af,Ba,Bf,Ea,Ef,Fa,Fc");
    std::vector<std::string> names;
    for (CubeId t : rec.targets) names.push_back(CubeName::from_id(t).to_string());
    EXPECT_EQ(names, (std::vector<std::string>{"Cb", "Cd", "Ce", "Db", "De"}));
    EXPECT_EQ(rec.solutions, (std::array<unsigned, 5>{4, 4, 4, 2, 2}));
    const auto built = buildable_targets(rec.collection);
    EXPECT_EQ(built, std::vector<CubeId>(rec.targets.begin(), rec.targets.end()));
}

TEST(FiveTarget, RuleErrors) {
    try {
        FiveTargetRule{0b000111, 0b111000, FiveTargetRule::Orientation::ColumnsFirst}.validate();
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidRule);
    }
    EXPECT_THROW((FiveTargetRule{0b000011, 0b001111, FiveTargetRule::Orientation::RowsFirst}.validate()), Error);
}

TEST(FiveTarget, ClosedUnderMirroring) {
    std::set<CubeMask> all;
    for (const auto& r : all_five_target_rules()) all.insert(r.collection().mask());
    for (CubeMask m : all) {
        CubeMask img = 0;
        for (CubeId id : Collection(m).ids()) img |= CubeMask{1} << mirror(CubeName::from_id(id)).id();
        EXPECT_TRUE(all.count(img));
    }
}

TEST(FiveTarget, SolutionsAreFourFourFourTwoTwo) {
    for (const auto& rec : five_target_records()) {
        auto s = rec.solutions;
        std::sort(s.begin(), s.end());
        EXPECT_EQ(s, (std::array<unsigned, 5>{2, 2, 4, 4, 4})) << rec.collection.to_string();
    }
}

}  // namespace
}  // namespace madness
