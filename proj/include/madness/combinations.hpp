#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "madness/cube.hpp"

namespace madness {

using CubeMask = std::uint32_t;

inline constexpr CubeMask kAllCubes = (CubeMask{1} << kCubes) - 1;

// A set of distinct cubes as a membership mask over cube ids.
class Collection {
public:
    constexpr Collection() = default;
    constexpr explicit Collection(CubeMask mask) : mask_(mask) {}

    static Collection from_ids(std::initializer_list<CubeId> ids) {
        return from_ids(std::vector<CubeId>(ids));
    }
    static Collection from_ids(const std::vector<CubeId>& ids) {
        CubeMask m = 0;
        for (CubeId id : ids) {
            if (id < 0 || id >= kCubes) throw Error(ErrorKind::Validation, "cube id out of range");
            if (m >> id & 1) throw Error(ErrorKind::Validation, "duplicate cube " + CubeName::from_id(id).to_string());
            m |= CubeMask{1} << id;
        }
        return Collection(m);
    }

    // Comma- or space-separated two-letter names, e.g. "Ac,Ad,Ae".
    static Collection parse(std::string_view names) {
        std::vector<CubeId> ids;
        std::string token;
        auto flush = [&] {
            if (!token.empty()) ids.push_back(CubeName::parse(token).id());
            token.clear();
        };
        for (char ch : names) {
            if (ch == ',' || ch == ' ')
                flush();
            else
                token.push_back(ch);
        }
        flush();
        return from_ids(ids);
    }

    constexpr CubeMask mask() const { return mask_; }
    constexpr int size() const { return std::popcount(mask_); }
    constexpr bool contains(CubeId id) const { return mask_ >> id & 1; }

    std::vector<CubeId> ids() const {
        std::vector<CubeId> out;
        for (CubeMask m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m));
        return out;
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (CubeId id : ids()) out.push_back(CubeName::from_id(id).to_string());
        return out;
    }

    std::string to_string(char sep = ',') const {
        std::string s;
        for (const auto& n : names()) {
            if (!s.empty()) s.push_back(sep);
            s += n;
        }
        return s;
    }

    constexpr auto operator<=>(const Collection&) const = default;

private:
    CubeMask mask_ = 0;
};

// Binomial coefficients C(n, k) for n, k <= 32.
inline constexpr auto kBinomial = [] {
    std::array<std::array<std::uint64_t, 33>, 33> c{};
    for (int n = 0; n <= 32; ++n) {
        c[n][0] = 1;
        for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
    }
    return c;
}();

constexpr std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    return kBinomial[n][k];
}

// Next mask with the same popcount in increasing numeric (colex) order.
constexpr std::uint64_t next_combination(std::uint64_t x) {
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    return (((r ^ x) >> 2) / c) | r;
}

constexpr std::uint64_t first_combination(int k) { return (std::uint64_t{1} << k) - 1; }

// Colex rank: sum of C(c_i, i) over the set bits c_1 < ... < c_k.
constexpr std::uint64_t colex_rank(std::uint64_t mask) {
    std::uint64_t rank = 0;
    int i = 1;
    for (std::uint64_t m = mask; m; m &= m - 1, ++i) rank += binomial(std::countr_zero(m), i);
    return rank;
}

constexpr std::uint64_t colex_unrank(std::uint64_t rank, int k) {
    std::uint64_t mask = 0;
    int c = 31;
    for (int i = k; i >= 1; --i) {
        while (binomial(c, i) > rank) --c;
        mask |= std::uint64_t{1} << c;
        rank -= binomial(c, i);
        --c;
    }
    return mask;
}

// Calls fn(mask) for k-subsets of {0..n-1} with colex rank in [begin, end).
template <typename Fn>
void for_each_combination(int k, std::uint64_t begin, std::uint64_t end, Fn&& fn) {
    if (begin >= end) return;
    std::uint64_t mask = colex_unrank(begin, k);
    for (std::uint64_t r = begin; r < end; ++r) {
        fn(static_cast<CubeMask>(mask));
        mask = next_combination(mask);
    }
}

// Calls fn(sub) for every k-subset of the set bits of `set`, in colex order.
template <typename Fn>
bool for_each_subset(CubeMask set, int k, Fn&& fn) {
    const int n = std::popcount(set);
    if (k > n || k < 0) return true;
    std::array<int, 32> bits{};
    int i = 0;
    for (CubeMask m = set; m; m &= m - 1) bits[i++] = std::countr_zero(m);
    for (std::uint64_t pick = first_combination(k); pick < (std::uint64_t{1} << n); pick = next_combination(pick)) {
        CubeMask sub = 0;
        for (std::uint64_t p = pick; p; p &= p - 1) sub |= CubeMask{1} << bits[std::countr_zero(p)];
        if constexpr (std::is_same_v<std::invoke_result_t<Fn, CubeMask>, bool>) {
            if (!fn(sub)) return false;
        } else {
            fn(sub);
        }
        if (k == 0) break;
    }
    return true;
}

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// Splits [0, total) into contiguous chunks and runs fn(begin, end, chunk) on
// `threads` workers. Chunk boundaries depend only on `chunks`, never on the
// number of workers, so merged results are schedule-independent.
template <typename Fn>
void parallel_chunks(std::uint64_t total, unsigned chunks, unsigned threads, Fn&& fn) {
    chunks = std::max(1u, chunks);
    threads = std::clamp(threads, 1u, chunks);
    auto bounds = [&](unsigned c) { return total * c / chunks; };
    if (threads == 1) {
        for (unsigned c = 0; c < chunks; ++c) fn(bounds(c), bounds(c + 1), c);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (unsigned c = t; c < chunks; c += threads) fn(bounds(c), bounds(c + 1), c);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace madness
