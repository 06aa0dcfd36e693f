#pragma once

#include <array>
#include <cstdint>

namespace madness {

// Disjoint sets over N elements with per-set vertex and edge counts.
template <unsigned N>
class UnionFind {
public:
    constexpr UnionFind() {
        for (unsigned i = 0; i < N; ++i) {
            parent_[i] = static_cast<std::uint8_t>(i);
            vertices_[i] = 1;
            edges_[i] = 0;
        }
    }

    constexpr unsigned find(unsigned i) {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }

    // Adds an edge (parallel edges and self-loops allowed).
    constexpr void add_edge(unsigned a, unsigned b) {
        unsigned ra = find(a), rb = find(b);
        if (ra != rb) {
            if (vertices_[ra] < vertices_[rb]) {
                const unsigned t = ra;
                ra = rb;
                rb = t;
            }
            parent_[rb] = static_cast<std::uint8_t>(ra);
            vertices_[ra] = static_cast<std::uint8_t>(vertices_[ra] + vertices_[rb]);
            edges_[ra] = static_cast<std::uint8_t>(edges_[ra] + edges_[rb]);
        }
        ++edges_[ra];
    }

    constexpr bool is_root(unsigned i) const { return parent_[i] == i; }
    constexpr unsigned vertex_count(unsigned root) const { return vertices_[root]; }
    constexpr unsigned edge_count(unsigned root) const { return edges_[root]; }

private:
    std::array<std::uint8_t, N> parent_{};
    std::array<std::uint8_t, N> vertices_{};
    std::array<std::uint8_t, N> edges_{};
};

}  // namespace madness
