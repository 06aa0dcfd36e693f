#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>

namespace madness::reference {

struct CornerRow {
    std::string_view name;
    std::array<std::uint16_t, 8> corners;
};

// Published corner numbers of the 30 cubes, in tableau reading order.
inline constexpr std::array<CornerRow, 30> kCornerTable{{
    {"Ab", {143, 345, 235, 132, 126, 256, 465, 164}},
    {"Ac", {153, 134, 142, 125, 265, 246, 364, 356}},
    {"Ad", {243, 123, 152, 254, 456, 165, 136, 346}},
    {"Ae", {354, 145, 124, 234, 263, 162, 156, 365}},
    {"Af", {245, 154, 135, 253, 236, 163, 146, 264}},
    {"Ba", {123, 253, 354, 134, 146, 456, 265, 162}},
    {"Bc", {143, 154, 245, 234, 263, 256, 165, 136}},
    {"Bd", {153, 132, 124, 145, 465, 264, 236, 356}},
    {"Be", {152, 135, 345, 254, 246, 364, 163, 126}},
    {"Bf", {243, 235, 125, 142, 164, 156, 365, 346}},
    {"Ca", {152, 124, 143, 135, 365, 346, 264, 256}},
    {"Cb", {243, 254, 145, 134, 163, 156, 265, 236}},
    {"Cd", {235, 345, 154, 125, 162, 146, 364, 263}},
    {"Ce", {245, 253, 123, 142, 164, 136, 356, 465}},
    {"Cf", {153, 354, 234, 132, 126, 246, 456, 165}},
    {"Da", {245, 125, 132, 234, 364, 163, 156, 465}},
    {"Db", {154, 142, 123, 135, 365, 263, 246, 456}},
    {"Dc", {152, 145, 354, 253, 236, 346, 164, 126}},
    {"De", {153, 235, 243, 134, 146, 264, 256, 165}},
    {"Df", {143, 124, 254, 345, 356, 265, 162, 136}},
    {"Ea", {243, 142, 154, 345, 356, 165, 126, 236}},
    {"Eb", {245, 354, 153, 125, 162, 136, 346, 264}},
    {"Ec", {124, 132, 235, 254, 456, 365, 163, 146}},
    {"Ed", {143, 234, 253, 135, 156, 265, 246, 164}},
    {"Ef", {152, 123, 134, 145, 465, 364, 263, 256}},
    {"Fa", {235, 153, 145, 254, 246, 164, 136, 263}},
    {"Fb", {124, 152, 253, 234, 364, 356, 165, 146}},
    {"Fc", {123, 243, 345, 135, 156, 465, 264, 162}},
    {"Fd", {354, 245, 142, 134, 163, 126, 256, 365}},
    {"Fe", {154, 143, 132, 125, 265, 236, 346, 456}},
}};

// Distribution of nonzero solution numbers for one fixed target.
inline constexpr std::array<std::pair<unsigned, std::uint64_t>, 7> kSolutionDistribution{{
    {2, 93000}, {4, 19860}, {6, 15987}, {8, 2664}, {10, 792}, {12, 1296}, {16, 81},
}};

// Number of collections by number of buildable targets.
inline constexpr std::array<std::pair<unsigned, std::uint64_t>, 6> kBuildableDistribution{{
    {0, 2774940}, {1, 2256390}, {2, 720405}, {3, 91920}, {4, 8910}, {5, 360},
}};

inline constexpr std::uint64_t kBuildableForTarget = 133680;
inline constexpr std::uint64_t kCollections = 5852925;
inline constexpr std::uint64_t kFiveTargetCollections = 360;
inline constexpr std::uint64_t kMaxSolutionCollections = 81;
inline constexpr std::uint64_t kUniversalSets = 10;

// Subset histograms for subsets of one minimum universal set, k = 8..11.
struct SubsetHistogram {
    unsigned k;
    std::array<std::pair<unsigned, std::uint64_t>, 4> bins;
    unsigned bin_count;
};

inline constexpr std::array<SubsetHistogram, 4> kUniversalSubsetHistograms{{
    {8, {{{0, 441}, {1, 18}, {3, 36}, {0, 0}}}, 3},
    {9, {{{0, 36}, {1, 72}, {3, 112}, {0, 0}}}, 3},
    {10, {{{3, 12}, {6, 6}, {8, 36}, {9, 12}}}, 4},
    {11, {{{18, 12}, {0, 0}, {0, 0}, {0, 0}}}, 1},
}};

// Sampled mean and standard deviation of buildable targets for random k-sets.
struct SampleMoments {
    unsigned k;
    double mean;
    double stddev;
};

inline constexpr std::array<SampleMoments, 4> kSampleMoments{{
    {9, 3.0, 1.34},
    {10, 7.3, 1.7},
    {11, 12.8, 2.1},
    {12, 18.2, 2.7},
}};

}  // namespace madness::reference
