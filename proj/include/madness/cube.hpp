#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "madness/error.hpp"
#include "madness/reference_data.hpp"

namespace madness {

using Color = std::uint8_t;
using CubeId = int;

inline constexpr int kColors = 6;
inline constexpr int kCubes = 30;
inline constexpr int kCornerNumbers = 40;

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

enum class Face : std::uint8_t { Up, Down, North, East, South, West };

inline constexpr std::array<Face, 6> kFaces{Face::Up,    Face::Down,  Face::North,
                                            Face::East,  Face::South, Face::West};

inline constexpr std::array<char, 6> kFaceLetters{'U', 'D', 'N', 'E', 'S', 'W'};

// Outward normal of each face; x points East, y North, z Up.
inline constexpr std::array<std::array<int, 3>, 6> kFaceNormals{{
    {0, 0, 1}, {0, 0, -1}, {0, 1, 0}, {1, 0, 0}, {0, -1, 0}, {-1, 0, 0},
}};

constexpr int face_index(Face f) { return static_cast<int>(f); }

constexpr Face face_from_normal(int x, int y, int z) {
    for (int f = 0; f < 6; ++f) {
        const auto& n = kFaceNormals[f];
        if (n[0] == x && n[1] == y && n[2] == z) return static_cast<Face>(f);
    }
    return Face::Up;  // unreachable for unit axis vectors
}

constexpr Face opposite(Face f) {
    const auto& n = kFaceNormals[face_index(f)];
    return face_from_normal(-n[0], -n[1], -n[2]);
}

// A corner of a cube, or equivalently a cell of the 2x2x2 model, indexed by
// the bits (x, y, z) with x in bit 0, y in bit 1 and z in bit 2.
struct Position {
    int x = 0, y = 0, z = 0;

    static constexpr Position from_index(int i) { return {i & 1, (i >> 1) & 1, (i >> 2) & 1}; }
    constexpr int index() const { return x | (y << 1) | (z << 2); }
    constexpr bool operator==(const Position&) const = default;
};

// The three faces meeting at a corner, as (x-face, y-face, z-face).
constexpr std::array<Face, 3> corner_faces(int corner) {
    const Position p = Position::from_index(corner);
    return {p.x ? Face::East : Face::West, p.y ? Face::North : Face::South,
            p.z ? Face::Up : Face::Down};
}

// Which way corner colors are read. Standard is clockwise as seen from
// outside the cube; Flipped is the mirror-image convention.
enum class Chirality { Standard, Flipped };

// The faces of a corner in reading order.
constexpr std::array<Face, 3> corner_reading_order(int corner, Chirality chirality) {
    const Position p = Position::from_index(corner);
    const auto f = corner_faces(corner);
    const int sign = (p.x ? 1 : -1) * (p.y ? 1 : -1) * (p.z ? 1 : -1);
    // (x, y, z) is counterclockwise from outside at a positively oriented corner.
    const bool xyz_clockwise = (sign < 0) == (chirality == Chirality::Standard);
    return xyz_clockwise ? f : std::array<Face, 3>{f[0], f[2], f[1]};
}

// ---------------------------------------------------------------------------
// Colorings and rotations
// ---------------------------------------------------------------------------

class FaceColoring {
public:
    constexpr FaceColoring() = default;
    constexpr explicit FaceColoring(std::array<Color, 6> faces) : faces_(faces) {}

    constexpr Color operator[](Face f) const { return faces_[face_index(f)]; }
    constexpr Color& operator[](Face f) { return faces_[face_index(f)]; }
    constexpr const std::array<Color, 6>& faces() const { return faces_; }

    // Every color 1..6 on exactly one face.
    constexpr bool is_macmahon() const {
        unsigned seen = 0;
        for (Color c : faces_) {
            if (c < 1 || c > kColors) return false;
            seen |= 1u << c;
        }
        return seen == 0b1111110u;
    }

    constexpr auto operator<=>(const FaceColoring&) const = default;

    std::string to_string() const {
        std::string s;
        for (Color c : faces_) s.push_back(static_cast<char>('0' + c));
        return s;
    }

private:
    std::array<Color, 6> faces_{};
};

class Rotation {
public:
    constexpr Rotation() : image_{0, 1, 2, 3, 4, 5} {}

    // Face that `f` is carried to.
    constexpr Face operator()(Face f) const { return static_cast<Face>(image_[face_index(f)]); }

    constexpr FaceColoring apply(const FaceColoring& c) const {
        FaceColoring out;
        for (Face f : kFaces) out[(*this)(f)] = c[f];
        return out;
    }

    // (a * b)(f) = a(b(f))
    friend constexpr Rotation operator*(const Rotation& a, const Rotation& b) {
        Rotation r;
        for (Face f : kFaces) r.image_[face_index(f)] = static_cast<std::uint8_t>(a(b(f)));
        return r;
    }

    constexpr bool is_identity() const { return *this == Rotation{}; }
    constexpr bool operator==(const Rotation&) const = default;

    // The 24 proper rotations, identity first.
    static const std::array<Rotation, 24>& all() {
        static const std::array<Rotation, 24> table = build_all();
        return table;
    }

private:
    std::array<std::uint8_t, 6> image_;

    static std::array<Rotation, 24> build_all() {
        std::array<Rotation, 24> out{};
        std::size_t n = 0;
        std::array<int, 3> axes{0, 1, 2};
        do {
            for (int signs = 0; signs < 8; ++signs) {
                // Matrix with row i having entry s_i in column axes[i].
                std::array<int, 3> s{signs & 1 ? -1 : 1, signs & 2 ? -1 : 1, signs & 4 ? -1 : 1};
                int parity = 0;
                for (int i = 0; i < 3; ++i)
                    for (int j = i + 1; j < 3; ++j) parity += axes[i] > axes[j];
                const int det = (parity % 2 ? -1 : 1) * s[0] * s[1] * s[2];
                if (det != 1) continue;
                Rotation r;
                for (Face f : kFaces) {
                    const auto& v = kFaceNormals[face_index(f)];
                    std::array<int, 3> w{};
                    for (int i = 0; i < 3; ++i) w[i] = s[i] * v[axes[i]];
                    r.image_[face_index(f)] = static_cast<std::uint8_t>(face_from_normal(w[0], w[1], w[2]));
                }
                out[n++] = r;
            }
        } while (std::next_permutation(axes.begin(), axes.end()));
        std::sort(out.begin(), out.end(), [](const Rotation& a, const Rotation& b) {
            if (a.is_identity() != b.is_identity()) return a.is_identity();
            return a.image_ < b.image_;
        });
        return out;
    }
};

// Least rotated variant under lexicographic order of (U, D, N, E, S, W).
inline FaceColoring canonical_coloring(const FaceColoring& c) {
    FaceColoring best = c;
    for (const Rotation& r : Rotation::all()) best = std::min(best, r.apply(c));
    return best;
}

// All 720 face-bijection colorings in lexicographic order.
inline std::vector<FaceColoring> all_colorings() {
    std::vector<FaceColoring> out;
    out.reserve(720);
    std::array<Color, 6> f{1, 2, 3, 4, 5, 6};
    do {
        out.emplace_back(f);
    } while (std::next_permutation(f.begin(), f.end()));
    return out;
}

// ---------------------------------------------------------------------------
// Corner numbers
// ---------------------------------------------------------------------------

class CornerNumber {
public:
    constexpr CornerNumber() = default;

    // Least cyclic rotation of three distinct colors.
    static constexpr CornerNumber from_triple(Color a, Color b, Color c) {
        if (a < 1 || a > kColors || b < 1 || b > kColors || c < 1 || c > kColors)
            throw Error(ErrorKind::InvalidCorner, "corner color out of range");
        if (a == b || b == c || a == c)
            throw Error(ErrorKind::InvalidCorner, "corner has a repeated color");
        while (a > b || a > c) {
            const Color t = a;
            a = b;
            b = c;
            c = t;
        }
        return CornerNumber(static_cast<std::uint16_t>(a * 100 + b * 10 + c));
    }

    // Accepts any cyclic rotation, e.g. 231 -> 123.
    static constexpr CornerNumber from_value(int v) {
        if (v < 100 || v > 999) throw Error(ErrorKind::InvalidCorner, "corner number must have 3 digits");
        return from_triple(static_cast<Color>(v / 100), static_cast<Color>(v / 10 % 10),
                           static_cast<Color>(v % 10));
    }

    constexpr std::uint16_t value() const { return value_; }
    constexpr std::array<Color, 3> digits() const {
        return {static_cast<Color>(value_ / 100), static_cast<Color>(value_ / 10 % 10),
                static_cast<Color>(value_ % 10)};
    }

    // The same colors read the other way round.
    constexpr CornerNumber reversed() const {
        const auto d = digits();
        return from_triple(d[0], d[2], d[1]);
    }

    // Position among the 40 corner numbers in increasing order.
    int index() const;

    std::string to_string() const { return std::to_string(value_); }

    constexpr auto operator<=>(const CornerNumber&) const = default;

private:
    constexpr explicit CornerNumber(std::uint16_t v) : value_(v) {}
    std::uint16_t value_ = 0;
};

inline CornerNumber canonical_corner(Color a, Color b, Color c) { return CornerNumber::from_triple(a, b, c); }

inline const std::array<CornerNumber, kCornerNumbers>& all_corner_numbers() {
    static const auto table = [] {
        std::array<CornerNumber, kCornerNumbers> out{};
        std::size_t n = 0;
        for (Color a = 1; a <= kColors; ++a)
            for (Color b = 1; b <= kColors; ++b)
                for (Color c = 1; c <= kColors; ++c) {
                    if (a == b || b == c || a == c) continue;
                    const CornerNumber x = CornerNumber::from_triple(a, b, c);
                    if (x.digits()[0] == a && x.digits()[1] == b) out[n++] = x;
                }
        std::sort(out.begin(), out.end());
        return out;
    }();
    return table;
}

inline int CornerNumber::index() const {
    const auto& all = all_corner_numbers();
    return static_cast<int>(std::lower_bound(all.begin(), all.end(), *this) - all.begin());
}

using CornerMask = std::uint64_t;

// Corner numbers of a coloring indexed by geometric corner.
inline std::array<CornerNumber, 8> corner_numbers(const FaceColoring& c,
                                                  Chirality chirality = Chirality::Standard) {
    if (!c.is_macmahon()) throw Error(ErrorKind::InvalidColoring, "not a MacMahon coloring: " + c.to_string());
    std::array<CornerNumber, 8> out{};
    for (int k = 0; k < 8; ++k) {
        const auto f = corner_reading_order(k, chirality);
        out[k] = CornerNumber::from_triple(c[f[0]], c[f[1]], c[f[2]]);
    }
    return out;
}

inline CornerMask corner_mask(const std::array<CornerNumber, 8>& corners) {
    CornerMask m = 0;
    for (const auto& x : corners) m |= CornerMask{1} << x.index();
    return m;
}

// ---------------------------------------------------------------------------
// Names
// ---------------------------------------------------------------------------

class CubeName {
public:
    constexpr CubeName() = default;
    constexpr CubeName(int row, int col) : row_(static_cast<std::uint8_t>(row)), col_(static_cast<std::uint8_t>(col)) {
        if (row < 0 || row >= kColors || col < 0 || col >= kColors || row == col)
            throw Error(ErrorKind::InvalidName, "cube name must pair distinct row and column letters");
    }

    static CubeName parse(std::string_view s) {
        if (s.size() != 2 || s[0] < 'A' || s[0] > 'F' || s[1] < 'a' || s[1] > 'f' || s[0] - 'A' == s[1] - 'a')
            throw Error(ErrorKind::InvalidName, "invalid cube name '" + std::string(s) + "'");
        return CubeName(s[0] - 'A', s[1] - 'a');
    }

    constexpr int row() const { return row_; }
    constexpr int col() const { return col_; }

    // Tableau reading order: Ab, Ac, ..., Af, Ba, Bc, ...
    constexpr CubeId id() const { return row_ * 5 + (col_ < row_ ? col_ : col_ - 1); }
    static constexpr CubeName from_id(CubeId id) {
        const int row = id / 5;
        const int k = id % 5;
        return CubeName(row, k < row ? k : k + 1);
    }

    std::string to_string() const {
        return {static_cast<char>('A' + row_), static_cast<char>('a' + col_)};
    }

    constexpr auto operator<=>(const CubeName&) const = default;

private:
    std::uint8_t row_ = 0;
    std::uint8_t col_ = 1;
};

constexpr CubeName mirror(CubeName n) { return CubeName(n.col(), n.row()); }

// ---------------------------------------------------------------------------
// Cubes and the tableau
// ---------------------------------------------------------------------------

struct Cube {
    CubeName name;
    CubeId id = 0;
    FaceColoring coloring;                  // canonical representative
    std::array<CornerNumber, 8> corners{};  // ascending
    CornerMask corner_mask = 0;

    bool has_corner(CornerNumber x) const { return (corner_mask >> x.index()) & 1; }
    bool operator==(const Cube& o) const { return id == o.id; }
};

inline int usable_corner_count(const Cube& cube, const Cube& target) {
    return std::popcount(cube.corner_mask & target.corner_mask);
}

class ColorPermutation {
public:
    constexpr ColorPermutation() : map_{0, 1, 2, 3, 4, 5, 6} {}
    explicit ColorPermutation(const std::array<Color, 6>& images) : map_{} {
        map_[0] = 0;
        unsigned seen = 0;
        for (int c = 1; c <= kColors; ++c) {
            const Color v = images[c - 1];
            if (v < 1 || v > kColors || (seen >> v & 1))
                throw Error(ErrorKind::Validation, "color permutation must be a bijection on 1..6");
            seen |= 1u << v;
            map_[c] = v;
        }
    }

    constexpr Color operator()(Color c) const { return map_[c]; }

    FaceColoring apply(const FaceColoring& c) const {
        FaceColoring out;
        for (Face f : kFaces) out[f] = map_[c[f]];
        return out;
    }

    // (p * q)(c) = p(q(c))
    friend ColorPermutation operator*(const ColorPermutation& p, const ColorPermutation& q) {
        ColorPermutation r;
        for (int c = 1; c <= kColors; ++c) r.map_[c] = p(q(static_cast<Color>(c)));
        return r;
    }

    ColorPermutation inverse() const {
        ColorPermutation r;
        for (int c = 1; c <= kColors; ++c) r.map_[map_[c]] = static_cast<Color>(c);
        return r;
    }

    bool is_identity() const { return *this == ColorPermutation{}; }

    // Cycle lengths in decreasing order, fixed points included, e.g. {3, 3} or {3, 1, 1, 1}.
    std::vector<int> cycle_type() const {
        std::vector<int> lengths;
        unsigned seen = 0;
        for (int c = 1; c <= kColors; ++c) {
            if (seen >> c & 1) continue;
            int len = 0;
            for (int x = c; !(seen >> x & 1); x = map_[x]) {
                seen |= 1u << x;
                ++len;
            }
            lengths.push_back(len);
        }
        std::sort(lengths.rbegin(), lengths.rend());
        return lengths;
    }

    std::string to_string() const {
        std::string s;
        for (int c = 1; c <= kColors; ++c) s.push_back(static_cast<char>('0' + map_[c]));
        return s;
    }

    bool operator==(const ColorPermutation&) const = default;

    // All 720 permutations, identity first, in lexicographic order of images.
    static const std::vector<ColorPermutation>& all() {
        static const auto table = [] {
            std::vector<ColorPermutation> out;
            std::array<Color, 6> img{1, 2, 3, 4, 5, 6};
            do {
                out.emplace_back(img);
            } while (std::next_permutation(img.begin(), img.end()));
            return out;
        }();
        return table;
    }

private:
    std::array<Color, 7> map_;
};

class Tableau {
public:
    // Derives the 30 cubes from the 720 colorings and names them by matching
    // their corner sets against the reference table. The reading direction is
    // flipped once if the first attempt does not match.
    static Tableau build(Chirality first = Chirality::Standard) {
        const Chirality other = first == Chirality::Standard ? Chirality::Flipped : Chirality::Standard;
        for (Chirality chirality : {first, other}) {
            Tableau t;
            t.chirality_ = chirality;
            if (t.try_build()) return t;
        }
        throw Error(ErrorKind::Configuration, "generated corner sets match the reference table under neither reading direction");
    }

    Chirality chirality() const { return chirality_; }
    const std::array<Cube, kCubes>& cubes() const { return cubes_; }
    const Cube& operator[](CubeId id) const { return cubes_.at(static_cast<std::size_t>(id)); }
    const Cube& at(CubeName name) const { return cubes_[static_cast<std::size_t>(name.id())]; }
    const Cube& at(std::string_view name) const { return at(CubeName::parse(name)); }

    std::array<CornerNumber, 8> corner_numbers(const FaceColoring& c) const {
        return madness::corner_numbers(c, chirality_);
    }

    // Cube of any coloring in its rotation class.
    const Cube& canonicalize(const FaceColoring& c) const {
        if (!c.is_macmahon()) throw Error(ErrorKind::InvalidColoring, "not a MacMahon coloring: " + c.to_string());
        const FaceColoring key = canonical_coloring(c);
        const auto it = std::lower_bound(by_coloring_.begin(), by_coloring_.end(), key,
                                         [](const auto& e, const FaceColoring& k) { return e.first < k; });
        if (it == by_coloring_.end() || it->first != key)
            throw Error(ErrorKind::UnknownCube, "no cube for coloring " + c.to_string());
        return cubes_[static_cast<std::size_t>(it->second)];
    }

    const Cube& recolor(const ColorPermutation& p, const Cube& cube) const {
        return canonicalize(p.apply(cube.coloring));
    }

    // Cube-set image under a color permutation.
    std::uint32_t recolor_mask(const ColorPermutation& p, std::uint32_t mask) const {
        std::uint32_t out = 0;
        for (std::uint32_t m = mask; m; m &= m - 1)
            out |= 1u << recolor(p, cubes_[static_cast<std::size_t>(std::countr_zero(m))]).id;
        return out;
    }

    const Cube& mirror(const Cube& c) const { return at(madness::mirror(c.name)); }

private:
    Chirality chirality_ = Chirality::Standard;
    std::array<Cube, kCubes> cubes_{};
    std::vector<std::pair<FaceColoring, CubeId>> by_coloring_;

    bool try_build() {
        std::vector<std::pair<FaceColoring, int>> classes;
        for (const FaceColoring& c : all_colorings()) {
            const FaceColoring key = canonical_coloring(c);
            auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& e) { return e.first == key; });
            if (it == classes.end())
                classes.emplace_back(key, 1);
            else
                ++it->second;
        }
        if (classes.size() != kCubes)
            throw Error(ErrorKind::Configuration, "expected 30 rotation classes, got " + std::to_string(classes.size()));
        for (const auto& [key, size] : classes)
            if (size != 24) throw Error(ErrorKind::Configuration, "rotation class of size " + std::to_string(size));

        std::array<bool, kCubes> filled{};
        for (const auto& [key, size] : classes) {
            auto corners = madness::corner_numbers(key, chirality_);
            std::sort(corners.begin(), corners.end());
            if (std::adjacent_find(corners.begin(), corners.end()) != corners.end()) return false;
            bool matched = false;
            for (const auto& row : reference::kCornerTable) {
                std::array<CornerNumber, 8> expected{};
                for (std::size_t i = 0; i < 8; ++i) expected[i] = CornerNumber::from_value(row.corners[i]);
                std::sort(expected.begin(), expected.end());
                if (expected != corners) continue;
                const CubeName name = CubeName::parse(row.name);
                const auto id = static_cast<std::size_t>(name.id());
                if (filled[id]) return false;
                filled[id] = true;
                cubes_[id] = Cube{name, name.id(), key, corners, corner_mask(corners)};
                matched = true;
                break;
            }
            if (!matched) return false;
        }
        for (const Cube& c : cubes_) by_coloring_.emplace_back(c.coloring, c.id);
        std::sort(by_coloring_.begin(), by_coloring_.end());
        return true;
    }
};

// Process-wide tableau, built on first use.
inline const Tableau& tableau() {
    static const Tableau t = Tableau::build();
    return t;
}

inline Tableau build_tableau() { return Tableau::build(); }

// Starts from the given reading direction.
inline Tableau build_tableau_from(Chirality first) { return Tableau::build(first); }

inline const Cube& canonicalize(const FaceColoring& c) { return tableau().canonicalize(c); }
inline const Cube& recolor(const ColorPermutation& p, const Cube& c) { return tableau().recolor(p, c); }
inline const Cube& cube(std::string_view name) { return tableau().at(name); }

}  // namespace madness
