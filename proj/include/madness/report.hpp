#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "madness/universal.hpp"

namespace madness {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

// FNV-1a 64 over the embedded corner table.
inline std::string cube_data_hash() {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
    };
    for (const auto& row : reference::kCornerTable) {
        feed(row.name);
        for (auto c : row.corners) {
            feed(":");
            feed(std::to_string(c));
        }
        feed("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

inline std::string name_of(CubeId id) { return CubeName::from_id(id).to_string(); }

inline json names_json(CubeMask m) { return json(Collection(m).names()); }

// ---------------------------------------------------------------------------
// Cubes
// ---------------------------------------------------------------------------

inline std::string cubes_csv() {
    std::ostringstream s;
    s << "name,id,U,D,N,E,S,W,c1,c2,c3,c4,c5,c6,c7,c8\n";
    for (const Cube& c : tableau().cubes()) {
        s << c.name.to_string() << ',' << c.id;
        for (Face f : kFaces) s << ',' << int(c.coloring[f]);
        for (const auto& x : c.corners) s << ',' << x.to_string();
        s << '\n';
    }
    return s.str();
}

inline json faces_json(const FaceColoring& c) {
    json j = json::object();
    for (Face f : kFaces) j[std::string(1, kFaceLetters[static_cast<std::size_t>(face_index(f))])] = int(c[f]);
    return j;
}

inline json cubes_json() {
    json arr = json::array();
    for (const Cube& c : tableau().cubes()) {
        json corners = json::array();
        for (const auto& x : c.corners) corners.push_back(x.to_string());
        arr.push_back({{"name", c.name.to_string()}, {"id", c.id}, {"faces", faces_json(c.coloring)}, {"corners", corners}});
    }
    return arr;
}

inline std::string cubes_text() {
    std::ostringstream s;
    s << "Name  Faces(UDNESW)  Corners\n";
    for (const Cube& c : tableau().cubes()) {
        s << c.name.to_string() << "    " << c.coloring.to_string() << "         ";
        for (std::size_t i = 0; i < 8; ++i) s << (i ? " " : "") << c.corners[i].to_string();
        s << '\n';
    }
    return s.str();
}

// ---------------------------------------------------------------------------
// Solve
// ---------------------------------------------------------------------------

inline json arrangement_json(const Arrangement& a, const Cube& target) {
    json arr = json::array();
    const auto vertices = tableau().corner_numbers(target.coloring);
    for (int i = 0; i < 8; ++i) {
        const Position p = Position::from_index(i);
        const Placement& pl = a.placements[static_cast<std::size_t>(i)];
        arr.push_back({{"corner", vertices[static_cast<std::size_t>(i)].to_string()},
                       {"position", {p.x, p.y, p.z}},
                       {"cube", name_of(pl.cube)},
                       {"faces", faces_json(pl.faces)}});
    }
    return arr;
}

struct SolveReport {
    CubeId target = 0;
    Collection collection;
    unsigned formula = 0;
    unsigned permanent = 0;
    unsigned prime_scan = 0;
    std::optional<unsigned> interior;
    std::vector<Arrangement> arrangements;
    bool include_arrangements = false;

    bool agree() const { return formula == permanent && formula == prime_scan; }
};

inline SolveReport solve(Collection collection, const Cube& target, bool interior, bool arrangements) {
    if (collection.size() != kCollectionSize) throw Error(ErrorKind::Validation, "solve needs exactly 8 distinct cubes");
    SolveReport r;
    r.target = target.id;
    r.collection = collection;
    r.formula = solution_number(collection, target);
    r.permanent = solution_number_permanent(collection, target);
    r.prime_scan = solution_number_prime_scan(collection, target);
    r.include_arrangements = arrangements;
    if (interior || arrangements) {
        r.arrangements = enumerate_arrangements(collection, target);
        if (r.arrangements.size() != r.formula)
            throw Error(ErrorKind::Mismatch, "arrangement count disagrees with the solution number");
        if (interior) {
            unsigned n = 0;
            for (const auto& a : r.arrangements) n += interior_faces_match(a);
            r.interior = n;
        }
    }
    return r;
}

inline json solve_json(const SolveReport& r) {
    json j = {{"target", name_of(r.target)},
              {"collection", r.collection.names()},
              {"solution_number", r.formula},
              {"methods", {{"graph", r.formula}, {"permanent", r.permanent}, {"prime_scan", r.prime_scan}}}};
    j["interior_matching_count"] = r.interior ? json(*r.interior) : json(nullptr);
    if (r.include_arrangements) {
        json arr = json::array();
        const Cube& t = tableau()[r.target];
        for (const auto& a : r.arrangements) arr.push_back(arrangement_json(a, t));
        j["arrangements"] = arr;
    }
    return j;
}

inline std::string solve_text(const SolveReport& r) {
    std::ostringstream s;
    s << "target: " << name_of(r.target) << "\ncollection: " << r.collection.to_string() << "\n"
      << "solution number: " << r.formula << " (graph " << r.formula << ", permanent " << r.permanent
      << ", prime scan " << r.prime_scan << ")\n";
    if (r.interior) s << "interior matching: " << *r.interior << "\n";
    if (r.include_arrangements) {
        const Cube& t = tableau()[r.target];
        const auto vertices = tableau().corner_numbers(t.coloring);
        int n = 0;
        for (const auto& a : r.arrangements) {
            s << "arrangement " << ++n << ":";
            for (int i = 0; i < 8; ++i)
                s << ' ' << vertices[static_cast<std::size_t>(i)].to_string() << '='
                  << name_of(a.placements[static_cast<std::size_t>(i)].cube);
            s << '\n';
        }
    }
    return s.str();
}

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

inline json distribution_json(const SolutionDistribution& d, const char* key) {
    json rows = json::array();
    for (const auto& [k, v] : d.counts) rows.push_back({{key, k}, {"count", v}});
    return {{"total", d.total()}, {"rows", rows}};
}

inline std::string table1_csv(const SolutionDistribution& d) {
    std::ostringstream s;
    s << "solution_number,count\n";
    for (const auto& [k, v] : d.counts) s << k << ',' << v << '\n';
    return s.str();
}

inline std::string table1_text(const SolutionDistribution& d, const std::string& target) {
    std::ostringstream s;
    s << "Solution numbers for target " << target << "\n";
    s << std::left << std::setw(22) << "Solution Number";
    for (const auto& [k, v] : d.counts) s << std::right << std::setw(8) << k;
    s << "\n" << std::left << std::setw(22) << "Num. of Collections";
    for (const auto& [k, v] : d.counts) s << std::right << std::setw(8) << v;
    s << "\nTotal buildable: " << d.total() << " of " << binomial(kCubes, kCollectionSize) << " (p = "
      << fixed(static_cast<double>(d.total()) / static_cast<double>(binomial(kCubes, kCollectionSize)), 4) << ")\n";
    return s.str();
}

inline double proportion(std::uint64_t v, std::uint64_t total) {
    return static_cast<double>(v) / static_cast<double>(total);
}

inline std::string table2_csv(const SolutionDistribution& d) {
    std::ostringstream s;
    s << "buildable_targets,count,proportion\n";
    for (const auto& [k, v] : d.counts) s << k << ',' << v << ',' << fixed(proportion(v, d.total()), 4) << '\n';
    return s.str();
}

inline json table2_json(const SolutionDistribution& d) {
    json rows = json::array();
    for (const auto& [k, v] : d.counts)
        rows.push_back({{"buildable_targets", k}, {"count", v}, {"proportion", fixed(proportion(v, d.total()), 4)}});
    return {{"total", d.total()}, {"rows", rows}};
}

inline std::string table2_text(const SolutionDistribution& d) {
    std::ostringstream s;
    s << std::left << std::setw(20) << "Targets built";
    for (const auto& [k, v] : d.counts) s << std::right << std::setw(10) << k;
    s << "\n" << std::left << std::setw(20) << "Collections";
    for (const auto& [k, v] : d.counts) s << std::right << std::setw(10) << v;
    s << "\n" << std::left << std::setw(20) << "Proportion";
    for (const auto& [k, v] : d.counts) s << std::right << std::setw(10) << fixed(proportion(v, d.total()), 4);
    s << "\nTotal: " << d.total() << "\n";
    return s.str();
}

// ---------------------------------------------------------------------------
// Five-target records
// ---------------------------------------------------------------------------

inline std::string five_targets_csv(const std::vector<FiveTargetRecord>& recs) {
    std::ostringstream s;
    s << "c1,c2,c3,c4,c5,c6,c7,c8,t1,t2,t3,t4,t5,s1,s2,s3,s4,s5\n";
    for (const auto& r : recs) {
        s << r.collection.to_string();
        for (CubeId t : r.targets) s << ',' << name_of(t);
        for (unsigned v : r.solutions) s << ',' << v;
        s << '\n';
    }
    return s.str();
}

inline std::string letters(unsigned mask, char base) {
    std::string s;
    for (int l = 0; l < kColors; ++l)
        if (mask >> l & 1) s.push_back(static_cast<char>(base + l));
    return s;
}

inline json five_targets_json(const std::vector<FiveTargetRecord>& recs) {
    json arr = json::array();
    for (const auto& r : recs) {
        json targets = json::array(), sols = json::array();
        for (CubeId t : r.targets) targets.push_back(name_of(t));
        for (unsigned v : r.solutions) sols.push_back(v);
        const bool cols_first = r.rule.orientation == FiveTargetRule::Orientation::ColumnsFirst;
        arr.push_back({{"rule",
                        {{"orientation", cols_first ? "columns-first" : "rows-first"},
                         {"rows", letters(r.rule.rows(), 'A')},
                         {"columns", letters(r.rule.columns(), 'a')}}},
                       {"collection", r.collection.names()},
                       {"targets", targets},
                       {"solution_numbers", sols}});
    }
    return arr;
}

inline std::string five_targets_text(const std::vector<FiveTargetRecord>& recs) {
    std::ostringstream s;
    for (const auto& r : recs) {
        s << r.collection.to_string(' ') << "  ->";
        for (std::size_t i = 0; i < 5; ++i) s << ' ' << name_of(r.targets[i]) << ':' << r.solutions[i];
        s << '\n';
    }
    s << recs.size() << " collections\n";
    return s.str();
}

// ---------------------------------------------------------------------------
// Universal sets
// ---------------------------------------------------------------------------

inline json universal_json(const std::vector<UniversalCandidate>& cands, const OrbitReport& orbit) {
    json sets = json::array();
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const auto& c = cands[i];
        json analysis = json::array();
        for (const auto& a : per_target_analysis(c.set)) {
            json cols = json::array();
            for (const auto& [m, s] : a.collections) cols.push_back({{"collection", names_json(m)}, {"solution_number", s}});
            analysis.push_back({{"target", name_of(a.target)},
                                {"in_set", a.in_set},
                                {"unusable", names_json(a.unusable_in_set)},
                                {"collections", cols}});
        }
        json types = json::object();
        for (const auto& [k, v] : orbit.stabilizers[i].cycle_types) types[k] = v;
        sets.push_back({{"generators", c.generator()},
                        {"cubes", names_json(c.set)},
                        {"buildable", c.buildable},
                        {"stabilizer_order", orbit.stabilizers[i].order},
                        {"stabilizer_cycle_types", types},
                        {"per_target", analysis}});
    }
    json orbits = json::array();
    for (const auto& o : orbit.orbits) orbits.push_back(o.size());
    return {{"sets", sets}, {"orbit_sizes", orbits}};
}

inline std::string universal_text(const std::vector<UniversalCandidate>& cands, const OrbitReport& orbit) {
    std::ostringstream s;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const auto& c = cands[i];
        s << c.generator() << "  " << Collection(c.set).to_string(' ') << "  builds " << c.buildable
          << "  stabilizer " << orbit.stabilizers[i].order << '\n';
    }
    s << "color-permutation orbits: " << orbit.orbits.size() << " (sizes";
    for (const auto& o : orbit.orbits) s << ' ' << o.size();
    s << ")\n";
    return s.str();
}

inline std::string histogram_csv(const SolutionDistribution& d, const char* key, const char* value) {
    std::ostringstream s;
    s << key << ',' << value << '\n';
    for (const auto& [k, v] : d.counts) s << k << ',' << v << '\n';
    return s.str();
}

inline std::string sample_csv(const SampleStats& st) {
    std::ostringstream s;
    s << "# k=" << st.k << " n=" << st.n << " seed=" << st.seed << " mean=" << fixed(st.mean, 4)
      << " stddev=" << fixed(st.stddev, 4) << " min=" << st.min << " max=" << st.max << '\n';
    s << "sample,cubes,buildable_count\n";
    for (std::size_t i = 0; i < st.counts.size(); ++i)
        s << i << ',' << Collection(st.sets[i]).to_string(' ') << ',' << st.counts[i] << '\n';
    return s.str();
}

inline json sample_json(const SampleStats& st) {
    json hist = json::array();
    for (const auto& [k, v] : st.histogram.counts) hist.push_back({{"buildable_count", k}, {"samples", v}});
    return {{"k", st.k},         {"n", st.n},     {"seed", st.seed}, {"mean", st.mean},
            {"stddev", st.stddev}, {"min", st.min}, {"max", st.max},   {"histogram", hist}};
}

inline std::string sample_text(const SampleStats& st) {
    std::ostringstream s;
    s << "k=" << st.k << " samples=" << st.n << " seed=" << st.seed << "\n"
      << "mean " << fixed(st.mean, 3) << "  stddev " << fixed(st.stddev, 3) << "  min " << st.min << "  max "
      << st.max << "\n";
    for (const auto& [k, v] : st.histogram.counts) s << std::setw(4) << k << ' ' << v << '\n';
    return s.str();
}

// ---------------------------------------------------------------------------
// Envelope and cache
// ---------------------------------------------------------------------------

inline json envelope(const std::string& command, json payload, std::optional<double> seconds = std::nullopt) {
    json j = {{"tool", "madness"}, {"version", kToolVersion}, {"cube_data_hash", cube_data_hash()}, {"command", command}};
    if (seconds) j["timing_seconds"] = *seconds;
    j["payload"] = std::move(payload);
    return j;
}

// Sweep results stored as JSON files named by command, parameters and the
// cube-data hash.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::filesystem::path path_for(const std::string& key) const {
        return dir_ / (key + "-" + cube_data_hash() + ".json");
    }

    // Payload, or nullopt when missing; `warning` is set if the file exists
    // but is unreadable or stale.
    std::optional<json> load(const std::string& key, std::string* warning = nullptr) const {
        const auto p = path_for(key);
        std::ifstream in(p);
        if (!in) return std::nullopt;
        try {
            json j = json::parse(in);
            if (j.at("cube_data_hash") != cube_data_hash() || j.at("key") != key)
                throw std::runtime_error("stale entry");
            return j.at("payload");
        } catch (const std::exception& e) {
            if (warning) *warning = "ignoring corrupt cache file " + p.string() + ": " + e.what();
            return std::nullopt;
        }
    }

    void store(const std::string& key, const json& payload) const {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) return;
        const auto p = path_for(key);
        const auto tmp = p.string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) return;
            out << json{{"key", key}, {"cube_data_hash", cube_data_hash()}, {"payload", payload}}.dump();
        }
        std::filesystem::rename(tmp, p, ec);
    }

private:
    std::filesystem::path dir_;
};

inline json distribution_to_cache(const SolutionDistribution& d) {
    json j = json::array();
    for (const auto& [k, v] : d.counts) j.push_back({k, v});
    return j;
}

inline SolutionDistribution distribution_from_cache(const json& j) {
    SolutionDistribution d;
    for (const auto& row : j) d.add(row.at(0).get<unsigned>(), row.at(1).get<std::uint64_t>());
    return d;
}

}  // namespace madness
