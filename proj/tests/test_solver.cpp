#include <gtest/gtest.h>

#include <random>
#include <set>

#include "madness/solver.hpp"
#include "oracles.hpp"

namespace madness {
namespace {

const Collection kWorked = Collection::parse("Ac,Ad,Ae,Af,Cb,Db,Eb,Fb");

TEST(TargetGraph, BaStructure) {
    const TargetGraph& g = target_graph(cube("Ba").id);
    EXPECT_EQ(g.edges().size(), 20u);
    EXPECT_EQ(Collection(g.unusable_mask()).to_string(), "Ab,Bc,Bd,Be,Bf,Ca,Da,Ea,Fa");
    int diagonal = 0;
    for (const auto& e : g.edges()) {
        diagonal += e.diagonal;
        EXPECT_LT(e.u, e.v);
        // Standard edges join corners that differ in one coordinate.
        if (!e.diagonal) {
            EXPECT_EQ(std::popcount(static_cast<unsigned>(e.u ^ e.v)), 1);
        }
    }
    EXPECT_EQ(diagonal, 8);
    // The diagonals are exactly the mirror's row and column.
    EXPECT_EQ(g.diagonal_mask(), mirror_cross(cube("Ba")).mask());
    EXPECT_EQ(g.role(cube("Ba").id), CubeRole::Target);
    EXPECT_EQ(g.role(cube("Ab").id), CubeRole::Unusable);
}

TEST(TargetGraph, AeJoinsCorners354And162) {
    const TargetGraph& g = target_graph(cube("Ba").id);
    const auto ends = g.endpoints(cube("Ae").id);
    std::set<int> got{g.vertices()[ends[0]].value(), g.vertices()[ends[1]].value()};
    EXPECT_EQ(got, (std::set<int>{354, 162}));
}

TEST(TargetGraph, EveryTargetHasTwelveCubeEdgesAndEightDiagonals) {
    for (const Cube& t : tableau().cubes()) {
        const TargetGraph& g = target_graph(t.id);
        std::set<std::pair<int, int>> standard;
        int diagonal = 0;
        for (const auto& e : g.edges()) {
            if (e.diagonal)
                ++diagonal;
            else
                standard.insert({e.u, e.v});
        }
        EXPECT_EQ(standard.size(), 12u) << t.name.to_string();
        EXPECT_EQ(diagonal, 8);
        // Bipartite by coordinate parity.
        for (const auto& e : g.edges())
            EXPECT_NE(std::popcount(static_cast<unsigned>(e.u)) % 2, std::popcount(static_cast<unsigned>(e.v)) % 2);
    }
}

TEST(Classify, WorkedExample) {
    const auto sub = classify(kWorked, target_graph(cube("Ba").id));
    EXPECT_FALSE(sub.target_in_collection);
    EXPECT_EQ(sub.unusable_count, 0);
    EXPECT_EQ(sub.edge_count, 8);
    EXPECT_EQ(sub.component_count, 4);
    for (int i = 0; i < sub.component_count; ++i) {
        EXPECT_EQ(sub.components[i].vertices, 2);
        EXPECT_EQ(sub.components[i].edges, 2);
    }
}

TEST(Classify, RejectsWrongSize) {
    EXPECT_THROW(classify(Collection::parse("Ab,Ac"), target_graph(0)), Error);
    EXPECT_THROW(solution_number_permanent(Collection::parse("Ab,Ac"), cube("Ba")), Error);
}

CollectionSubgraph make_sub(bool target, std::vector<ComponentSummary> comps) {
    CollectionSubgraph s;
    s.target_in_collection = target;
    s.component_count = static_cast<int>(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) s.components[i] = comps[i];
    return s;
}

TEST(Formula, Rows) {
    EXPECT_EQ(solution_number_formula(make_sub(false, {{2, 2}, {2, 2}, {2, 2}, {2, 2}})), 16u);
    EXPECT_EQ(solution_number_formula(make_sub(false, {{8, 8}})), 2u);
    EXPECT_EQ(solution_number_formula(make_sub(false, {{4, 4}, {4, 4}})), 4u);
    EXPECT_EQ(solution_number_formula(make_sub(false, {{4, 3}, {4, 5}})), 0u);
    EXPECT_EQ(solution_number_formula(make_sub(true, {{8, 7}})), 8u);
    EXPECT_EQ(solution_number_formula(make_sub(true, {{2, 1}, {6, 6}})), 4u);
    EXPECT_EQ(solution_number_formula(make_sub(true, {{2, 1}, {2, 2}, {2, 2}, {2, 2}})), 16u);
    EXPECT_EQ(solution_number_formula(make_sub(true, {{4, 3}, {2, 2}, {2, 2}})), 16u);
    EXPECT_EQ(solution_number_formula(make_sub(true, {{2, 1}, {2, 1}, {4, 5}})), 0u);
    auto bad = make_sub(false, {{2, 2}, {2, 2}, {2, 2}, {2, 2}});
    bad.unusable_count = 1;
    EXPECT_EQ(solution_number_formula(bad), 0u);
}

TEST(SolutionNumber, WorkedExampleAllMethods) {
    const Cube& ba = cube("Ba");
    EXPECT_EQ(solution_number(kWorked, ba), 16u);
    EXPECT_EQ(solution_number_permanent(kWorked, ba), 16u);
    EXPECT_EQ(solution_number_prime_scan(kWorked, ba), 16u);
    EXPECT_EQ(enumerate_arrangements(kWorked, ba).size(), 16u);
    EXPECT_EQ(oracle::geometric_arrangements(kWorked.ids(), ba), 16u);
}

TEST(SolutionNumber, FiveTargetExample) {
    const auto c = Collection::parse("Ac Af Ba Bf Ea Ef Fa Fc");
    const std::vector<std::pair<std::string, unsigned>> want{
        {"Cb", 4}, {"Cd", 4}, {"Ce", 4}, {"Db", 2}, {"De", 2}, {"Ba", 0}};
    for (const auto& [name, n] : want) {
        EXPECT_EQ(solution_number(c, cube(name)), n) << name;
        EXPECT_EQ(oracle::geometric_arrangements(c.ids(), cube(name)), n) << name;
    }
}

TEST(Permanent, MatchesBruteForce) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        std::vector<std::uint8_t> rows(static_cast<std::size_t>(n));
        std::vector<std::vector<int>> dense(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
        for (int i = 0; i < n; ++i) {
            rows[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rng() & ((1u << n) - 1));
            for (int j = 0; j < n; ++j) dense[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(i)] >> j & 1;
        }
        EXPECT_EQ(permanent(rows.data(), n), oracle::permanent_brute(dense));
    }
    const std::array<std::uint8_t, 8> perm{4, 1, 128, 2, 16, 64, 8, 32};
    EXPECT_EQ(permanent(perm.data(), 8), 1u);
    const std::array<std::uint8_t, 8> full{255, 255, 255, 255, 255, 255, 255, 255};
    EXPECT_EQ(permanent(full.data(), 8), 40320u);
}

TEST(PrimeScan, ZeroWhenACornerIsMissing) {
    // Bc is unusable for Ba; a collection of only unusable cubes plus others
    // leaves some corner uncovered.
    const auto c = Collection::parse("Bc,Bd,Be,Bf,Ca,Da,Ea,Fa");
    EXPECT_EQ(solution_number_prime_scan(c, cube("Ba")), 0u);
    const auto ccv = corner_count_vector(c, cube("Ba"));
    for (const auto& e : ccv) EXPECT_EQ(e.multiplicity, 0);
    const auto w = corner_count_vector(kWorked, cube("Ba"));
    for (const auto& e : w) EXPECT_EQ(e.multiplicity, 2);
}

TEST(Oracles, ThreeWayAgreementOnRandomPairs) {
    std::mt19937_64 rng(20240101);
    std::set<unsigned> seen;
    for (int i = 0; i < 4000; ++i) {
        const CubeId t = static_cast<CubeId>(rng() % kCubes);
        const TargetGraph& g = target_graph(t);
        const CubeMask m = i % 2 ? oracle::random_collection(rng)
                                 : oracle::random_usable_collection(rng, g.unusable_mask(), i % 4 == 0, t);
        const Collection c(m);
        const unsigned f = solution_number(c, g);
        EXPECT_EQ(f, solution_number_permanent(c, tableau()[t]));
        EXPECT_EQ(f, solution_number_prime_scan(c, tableau()[t]));
        seen.insert(f);
    }
    for (unsigned v : seen) EXPECT_TRUE(std::set<unsigned>({0, 2, 4, 6, 8, 10, 12, 16}).count(v)) << v;
    EXPECT_FALSE(seen.count(14));
}

TEST(Oracles, GeometricCountMatchesOnRandomCollections) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 40; ++i) {
        const CubeId t = static_cast<CubeId>(rng() % kCubes);
        const Collection c(oracle::random_usable_collection(rng, target_graph(t).unusable_mask(), i % 2 == 0, t));
        EXPECT_EQ(oracle::geometric_arrangements(c.ids(), tableau()[t]), solution_number(c, tableau()[t]));
    }
}

TEST(Oracles, NonzeroWithoutTargetMeansUnicyclic) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        const CubeId t = static_cast<CubeId>(rng() % kCubes);
        const TargetGraph& g = target_graph(t);
        const Collection c(oracle::random_usable_collection(rng, g.unusable_mask(), false, t));
        const auto sub = classify(c, g);
        if (solution_number_formula(sub) == 0) continue;
        for (int k = 0; k < sub.component_count; ++k) EXPECT_EQ(sub.components[k].edges, sub.components[k].vertices);
    }
}

TEST(Orientation, UniqueAndMatchesFrame) {
    const Cube& ba = cube("Ba");
    for (const CubeId id : kWorked.ids()) {
        const Cube& c = tableau()[id];
        for (int p = 0; p < 8; ++p) {
            const CornerFrame f = corner_frame(ba, Position::from_index(p));
            if (!c.has_corner(frame_corner(f))) continue;
            int matches = 0;
            for (const Rotation& r : Rotation::all()) {
                const FaceColoring col = r.apply(c.coloring);
                bool ok = true;
                for (std::size_t i = 0; i < 3; ++i) ok = ok && col[f.faces()[i]] == f.colors[i];
                matches += ok;
            }
            EXPECT_EQ(matches, 1);
            const FaceColoring o = orient_cube(c, f);
            for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(o[f.faces()[i]], f.colors[i]);
            EXPECT_EQ(canonicalize(o).id, c.id);
        }
    }
}

TEST(Orientation, TargetReorientsToItself) {
    for (const Cube& t : tableau().cubes())
        for (int p = 0; p < 8; ++p) {
            const CornerFrame f = corner_frame(t, Position::from_index(p));
            EXPECT_TRUE(orient_rotation(t, f).is_identity());
        }
}

TEST(Orientation, MissingCornerIsAnError) {
    const Cube& ba = cube("Ba");
    const Cube& ae = cube("Ae");
    for (int p = 0; p < 8; ++p) {
        const CornerFrame f = corner_frame(ba, Position::from_index(p));
        if (ae.has_corner(frame_corner(f))) continue;
        try {
            orient_cube(ae, f);
            FAIL() << "expected an error";
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::NoOrientation);
        }
    }
}

TEST(Arrangements, CountEqualsSolutionNumberAndAllValid) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const CubeId t = static_cast<CubeId>(rng() % kCubes);
        const Collection c(oracle::random_usable_collection(rng, target_graph(t).unusable_mask(), i % 3 == 0, t));
        const auto all = enumerate_arrangements(c, tableau()[t]);
        EXPECT_EQ(all.size(), solution_number(c, tableau()[t]));
        for (const auto& a : all) EXPECT_TRUE(is_valid_arrangement(a, c, tableau()[t]));
    }
}

TEST(InteriorMatching, MirrorCrossGivesTwoForEveryTarget) {
    for (const Cube& t : tableau().cubes()) {
        const Collection c = mirror_cross(t);
        EXPECT_EQ(c.size(), 8);
        EXPECT_EQ(solution_number(c, t), 16u) << t.name.to_string();
        EXPECT_EQ(interior_matching_count(c, t), 2u) << t.name.to_string();
    }
    EXPECT_EQ(mirror_cross(cube("Ba")).mask(), kWorked.mask());
}

TEST(Recoloring, SolutionNumbersAreEquivariant) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 500; ++i) {
        const auto p = oracle::random_permutation(rng);
        const CubeId t = static_cast<CubeId>(rng() % kCubes);
        const CubeMask m = i % 2 ? oracle::random_collection(rng)
                                 : oracle::random_usable_collection(rng, target_graph(t).unusable_mask(), i % 4 == 0, t);
        CubeMask img = 0;
        for (CubeId id : Collection(m).ids()) img |= CubeMask{1} << recolor(p, tableau()[id]).id;
        EXPECT_EQ(solution_number(Collection(img), recolor(p, tableau()[t])), solution_number(Collection(m), tableau()[t]));
    }
}

}  // namespace
}  // namespace madness
