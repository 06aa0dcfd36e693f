#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "madness/combinations.hpp"
#include "madness/cube.hpp"
#include "madness/union_find.hpp"

namespace madness {

// ---------------------------------------------------------------------------
// Target graph
// ---------------------------------------------------------------------------

enum class CubeRole : std::uint8_t { Unusable, Edge, Target };

struct GraphEdge {
    CubeId cube = 0;
    int u = 0;  // vertex indices, u < v
    int v = 0;
    bool diagonal = false;  // joins opposite corners of the target
};

// The 8 corners of a target are the vertices; every other usable cube is the
// edge joining the two corners it shares with the target. Vertex i is the
// corner at geometric position i of the target's canonical coloring.
class TargetGraph {
public:
    explicit TargetGraph(const Cube& target, const Tableau& tab = tableau()) : target_(target) {
        vertices_ = tab.corner_numbers(target.coloring);
        for (const Cube& c : tab.cubes()) {
            const auto id = static_cast<std::size_t>(c.id);
            if (c.id == target.id) {
                roles_[id] = CubeRole::Target;
                continue;
            }
            std::array<int, 2> ends{};
            int shared = 0;
            for (int v = 0; v < 8; ++v)
                if (c.has_corner(vertices_[v])) {
                    if (shared < 2) ends[shared] = v;
                    ++shared;
                }
            if (shared == 0) {
                roles_[id] = CubeRole::Unusable;
                unusable_ |= CubeMask{1} << c.id;
            } else if (shared == 2) {
                roles_[id] = CubeRole::Edge;
                ends_[id] = {static_cast<std::uint8_t>(ends[0]), static_cast<std::uint8_t>(ends[1])};
                edges_.push_back({c.id, ends[0], ends[1], (ends[0] ^ ends[1]) == 7});
            } else {
                throw Error(ErrorKind::Configuration, "cube " + c.name.to_string() + " shares " +
                                                          std::to_string(shared) + " corners with " +
                                                          target.name.to_string());
            }
        }
    }

    const Cube& target() const { return target_; }
    const std::array<CornerNumber, 8>& vertices() const { return vertices_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    CubeMask unusable_mask() const { return unusable_; }
    CubeRole role(CubeId id) const { return roles_[static_cast<std::size_t>(id)]; }
    std::array<std::uint8_t, 2> endpoints(CubeId id) const { return ends_[static_cast<std::size_t>(id)]; }

    int vertex_of(CornerNumber x) const {
        for (int v = 0; v < 8; ++v)
            if (vertices_[v] == x) return v;
        return -1;
    }

    CubeMask diagonal_mask() const {
        CubeMask m = 0;
        for (const auto& e : edges_)
            if (e.diagonal) m |= CubeMask{1} << e.cube;
        return m;
    }

private:
    Cube target_;
    std::array<CornerNumber, 8> vertices_{};
    std::array<CubeRole, kCubes> roles_{};
    std::array<std::array<std::uint8_t, 2>, kCubes> ends_{};
    std::vector<GraphEdge> edges_;
    CubeMask unusable_ = 0;
};

inline TargetGraph build_target_graph(const Cube& target, const Tableau& tab = tableau()) {
    return TargetGraph(target, tab);
}

// Shared per-target graphs over the process tableau.
inline const TargetGraph& target_graph(CubeId target) {
    static const auto graphs = [] {
        std::vector<TargetGraph> g;
        g.reserve(kCubes);
        for (const Cube& c : tableau().cubes()) g.emplace_back(c);
        return g;
    }();
    return graphs.at(static_cast<std::size_t>(target));
}

// ---------------------------------------------------------------------------
// Closed-form solution numbers
// ---------------------------------------------------------------------------

struct ComponentSummary {
    int vertices = 0;
    int edges = 0;
    bool is_tree() const { return edges == vertices - 1; }
};

struct CollectionSubgraph {
    bool target_in_collection = false;
    int unusable_count = 0;
    int edge_count = 0;
    std::array<std::array<std::uint8_t, 2>, 8> edge_list{};
    int component_count = 0;
    std::array<ComponentSummary, 8> components{};
};

inline CollectionSubgraph classify(Collection collection, const TargetGraph& graph) {
    if (collection.size() != 8) throw Error(ErrorKind::Validation, "a collection has exactly 8 cubes");
    CollectionSubgraph sub;
    const CubeMask mask = collection.mask();
    sub.unusable_count = std::popcount(mask & graph.unusable_mask());
    sub.target_in_collection = collection.contains(graph.target().id);
    UnionFind<8> uf;
    for (CubeMask m = mask & ~graph.unusable_mask(); m; m &= m - 1) {
        const CubeId id = std::countr_zero(m);
        if (graph.role(id) != CubeRole::Edge) continue;
        const auto e = graph.endpoints(id);
        sub.edge_list[static_cast<std::size_t>(sub.edge_count++)] = e;
        uf.add_edge(e[0], e[1]);
    }
    for (unsigned v = 0; v < 8; ++v)
        if (uf.is_root(v))
            sub.components[static_cast<std::size_t>(sub.component_count++)] = {
                static_cast<int>(uf.vertex_count(v)), static_cast<int>(uf.edge_count(v))};
    return sub;
}

// Without the target every component must carry a cycle, and each one can be
// traversed two ways. With the target, exactly one component is a tree; the
// target sits on any of its k+1 vertices and the tree edges point away from it.
inline unsigned solution_number_formula(const CollectionSubgraph& sub) {
    if (sub.unusable_count > 0) return 0;
    int trees = 0;
    int tree_edges = 0;
    for (int i = 0; i < sub.component_count; ++i) {
        const auto& c = sub.components[static_cast<std::size_t>(i)];
        if (c.is_tree()) {
            ++trees;
            tree_edges = c.edges;
        }
    }
    const int n = sub.component_count;
    if (!sub.target_in_collection) return trees == 0 ? 1u << n : 0u;
    if (trees != 1) return 0;
    return (1u << (n - 1)) * static_cast<unsigned>(tree_edges + 1);
}

inline unsigned solution_number(Collection collection, const TargetGraph& graph) {
    if (collection.mask() & graph.unusable_mask()) {
        if (collection.size() != 8) throw Error(ErrorKind::Validation, "a collection has exactly 8 cubes");
        return 0;
    }
    return solution_number_formula(classify(collection, graph));
}

inline unsigned solution_number(Collection collection, const Cube& target) {
    return solution_number(collection, target_graph(target.id));
}

// ---------------------------------------------------------------------------
// Permanent oracle
// ---------------------------------------------------------------------------

// Row i has bit j set iff cube j (ascending id within the collection)
// carries target corner i.
struct IncidenceMatrix {
    std::array<std::uint8_t, 8> rows{};
    std::array<CubeId, 8> columns{};

    int row_sum(int i) const { return std::popcount(rows[static_cast<std::size_t>(i)]); }
};

inline IncidenceMatrix incidence_matrix(Collection collection, const Cube& target,
                                        const Tableau& tab = tableau()) {
    if (collection.size() != 8) throw Error(ErrorKind::Validation, "a collection has exactly 8 cubes");
    IncidenceMatrix a;
    const auto ids = collection.ids();
    const auto vertices = tab.corner_numbers(target.coloring);
    for (int j = 0; j < 8; ++j) a.columns[static_cast<std::size_t>(j)] = ids[static_cast<std::size_t>(j)];
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (tab[ids[static_cast<std::size_t>(j)]].has_corner(vertices[static_cast<std::size_t>(i)]))
                a.rows[static_cast<std::size_t>(i)] |= static_cast<std::uint8_t>(1u << j);
    return a;
}

// Permanent of an n x n 0/1 matrix given as row bitmasks, by dynamic
// programming over the set of columns already used by the first rows.
inline std::uint64_t permanent(const std::uint8_t* rows, int n) {
    std::vector<std::uint64_t> ways(std::size_t{1} << n, 0);
    ways[0] = 1;
    for (unsigned used = 0; used < (1u << n); ++used) {
        if (!ways[used]) continue;
        const int row = std::popcount(used);
        if (row == n) continue;
        for (unsigned free = rows[row] & ~used & ((1u << n) - 1); free; free &= free - 1)
            ways[used | (free & -free)] += ways[used];
    }
    return ways[(std::size_t{1} << n) - 1];
}

inline std::uint64_t permanent(const IncidenceMatrix& a) { return permanent(a.rows.data(), 8); }

inline unsigned solution_number_permanent(Collection collection, const Cube& target) {
    return static_cast<unsigned>(permanent(incidence_matrix(collection, target)));
}

// ---------------------------------------------------------------------------
// Prime-index scan
// ---------------------------------------------------------------------------

inline constexpr std::array<std::uint64_t, 8> kFirstPrimes{2, 3, 5, 7, 11, 13, 17, 19};
inline constexpr std::uint64_t kPrimorial19 = 2ull * 3 * 5 * 7 * 11 * 13 * 17 * 19;

struct CornerCount {
    CornerNumber corner;
    int multiplicity = 0;
    std::vector<std::uint64_t> primes;
};

using CornerCountVector = std::array<CornerCount, 8>;

// The j-th cube of the collection (ascending id) is indexed by the j-th prime.
inline CornerCountVector corner_count_vector(Collection collection, const Cube& target,
                                             const Tableau& tab = tableau()) {
    if (collection.size() != 8) throw Error(ErrorKind::Validation, "a collection has exactly 8 cubes");
    CornerCountVector out;
    const auto ids = collection.ids();
    const auto vertices = tab.corner_numbers(target.coloring);
    for (std::size_t i = 0; i < 8; ++i) {
        out[i].corner = vertices[i];
        for (std::size_t j = 0; j < 8; ++j)
            if (tab[ids[j]].has_corner(vertices[i])) out[i].primes.push_back(kFirstPrimes[j]);
        out[i].multiplicity = static_cast<int>(out[i].primes.size());
    }
    return out;
}

// Counts tuples of the Cartesian product of the per-corner prime lists whose
// product is divisible by 2*3*5*...*19, i.e. tuples using every cube once.
inline unsigned solution_number_prime_scan(Collection collection, const Cube& target) {
    const CornerCountVector ccv = corner_count_vector(collection, target);
    for (const auto& e : ccv)
        if (e.multiplicity == 0) return 0;
    std::array<std::size_t, 8> digit{};
    unsigned count = 0;
    while (true) {
        std::uint64_t product = 1;
        for (std::size_t i = 0; i < 8; ++i) product *= ccv[i].primes[digit[i]];
        if (product % kPrimorial19 == 0) ++count;
        std::size_t i = 0;
        while (i < 8 && ++digit[i] == ccv[i].primes.size()) digit[i++] = 0;
        if (i == 8) break;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Orientation and arrangements
// ---------------------------------------------------------------------------

// The exterior of one cell of the 2x2x2 model: colors required on its x-, y-
// and z-facing exterior faces.
struct CornerFrame {
    Position position;
    std::array<Color, 3> colors{};

    std::array<Face, 3> faces() const { return corner_faces(position.index()); }
};

inline CornerFrame corner_frame(const Cube& target, Position p) {
    CornerFrame f{p, {}};
    const auto faces = f.faces();
    for (std::size_t i = 0; i < 3; ++i) f.colors[i] = target.coloring[faces[i]];
    return f;
}

inline CornerNumber frame_corner(const CornerFrame& f, const Tableau& tab = tableau()) {
    const auto order = corner_reading_order(f.position.index(), tab.chirality());
    const auto faces = f.faces();
    std::array<Color, 3> read{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (order[i] == faces[j]) read[i] = f.colors[j];
    return CornerNumber::from_triple(read[0], read[1], read[2]);
}

// The rotation of the cube's canonical coloring that shows the frame's colors
// face-for-face. Unique because a cube's 8 corner numbers are distinct.
inline Rotation orient_rotation(const Cube& cube, const CornerFrame& frame, const Tableau& tab = tableau()) {
    const CornerNumber wanted = frame_corner(frame, tab);
    if (!cube.has_corner(wanted))
        throw Error(ErrorKind::NoOrientation,
                    "cube " + cube.name.to_string() + " has no corner " + wanted.to_string());
    const auto faces = frame.faces();
    for (const Rotation& r : Rotation::all()) {
        const FaceColoring c = r.apply(cube.coloring);
        if (c[faces[0]] == frame.colors[0] && c[faces[1]] == frame.colors[1] && c[faces[2]] == frame.colors[2])
            return r;
    }
    throw Error(ErrorKind::NoOrientation, "no rotation realizes corner " + wanted.to_string());
}

inline FaceColoring orient_cube(const Cube& cube, const CornerFrame& frame, const Tableau& tab = tableau()) {
    return orient_rotation(cube, frame, tab).apply(cube.coloring);
}

struct Placement {
    CubeId cube = 0;
    FaceColoring faces;
};

// placements[i] fills cell Position::from_index(i), i.e. target corner i.
struct Arrangement {
    std::array<Placement, 8> placements{};
};

inline bool is_valid_arrangement(const Arrangement& a, Collection collection, const Cube& target,
                                 const Tableau& tab = tableau()) {
    CubeMask used = 0;
    for (int i = 0; i < 8; ++i) {
        const Placement& p = a.placements[static_cast<std::size_t>(i)];
        if (!collection.contains(p.cube) || (used >> p.cube & 1)) return false;
        used |= CubeMask{1} << p.cube;
        if (&tab.canonicalize(p.faces) != &tab[p.cube]) return false;
        for (Face f : corner_faces(i))
            if (p.faces[f] != target.coloring[f]) return false;
    }
    return used == collection.mask();
}

// Bijections corner -> cube respecting incidence, in lexicographic order of
// the cube ids assigned to corners 0..7.
inline std::vector<Arrangement> enumerate_arrangements(Collection collection, const Cube& target,
                                                       const Tableau& tab = tableau()) {
    if (collection.size() != 8) throw Error(ErrorKind::Validation, "a collection has exactly 8 cubes");
    std::vector<Arrangement> out;
    const auto vertices = tab.corner_numbers(target.coloring);
    const auto ids = collection.ids();
    std::array<CubeId, 8> pick{};
    auto recurse = [&](auto& self, int corner, CubeMask used) -> void {
        if (corner == 8) {
            Arrangement a;
            for (int i = 0; i < 8; ++i) {
                const Cube& c = tab[pick[static_cast<std::size_t>(i)]];
                a.placements[static_cast<std::size_t>(i)] = {
                    c.id, orient_cube(c, corner_frame(target, Position::from_index(i)), tab)};
            }
            out.push_back(a);
            return;
        }
        for (CubeId id : ids) {
            if (used >> id & 1) continue;
            if (!tab[id].has_corner(vertices[static_cast<std::size_t>(corner)])) continue;
            pick[static_cast<std::size_t>(corner)] = id;
            self(self, corner + 1, used | (CubeMask{1} << id));
        }
    };
    recurse(recurse, 0, 0);
    return out;
}

// Cell pairs sharing an interior face: (lower cell, upper cell, axis face of
// the lower cell pointing at the upper one).
struct InteriorContact {
    int lower;
    int upper;
    Face face;
};

inline const std::array<InteriorContact, 12>& interior_contacts() {
    static const auto table = [] {
        std::array<InteriorContact, 12> out{};
        std::size_t n = 0;
        constexpr std::array<Face, 3> kAxisFaces{Face::East, Face::North, Face::Up};
        for (int axis = 0; axis < 3; ++axis)
            for (int i = 0; i < 8; ++i)
                if (!(i >> axis & 1)) out[n++] = {i, i | (1 << axis), kAxisFaces[static_cast<std::size_t>(axis)]};
        return out;
    }();
    return table;
}

inline bool interior_faces_match(const Arrangement& a) {
    for (const auto& c : interior_contacts())
        if (a.placements[static_cast<std::size_t>(c.lower)].faces[c.face] !=
            a.placements[static_cast<std::size_t>(c.upper)].faces[opposite(c.face)])
            return false;
    return true;
}

inline unsigned interior_matching_count(Collection collection, const Cube& target) {
    unsigned n = 0;
    for (const auto& a : enumerate_arrangements(collection, target)) n += interior_faces_match(a);
    return n;
}

// The interior-matching collection of a target: the row and column of its
// mirror cube.
inline Collection mirror_cross(const Cube& target) {
    const CubeName m = mirror(target.name);
    CubeMask mask = 0;
    for (int k = 0; k < kColors; ++k) {
        if (k != m.row() && k != m.col()) {
            mask |= CubeMask{1} << CubeName(m.row(), k).id();
            mask |= CubeMask{1} << CubeName(k, m.col()).id();
        }
    }
    return Collection(mask);
}

}  // namespace madness
