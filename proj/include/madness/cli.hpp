#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "madness/report.hpp"

namespace madness::cli {

enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kMismatch = 3,
    kBudgetExhausted = 4,
};

struct RunConfig {
    std::string command;
    std::string target = "Ba";
    std::string cubes;
    std::string format = "text";
    std::string out_dir;
    unsigned threads = default_threads();
    std::uint64_t seed = 20240101;
    std::vector<int> ks;
    std::uint64_t n = 20000;
    std::uint64_t budget = 0;
    std::string checkpoint;
    std::string cache_dir;
    std::string generators = "bc";
    bool check = false;
    bool verify = false;
    bool interior = false;
    bool arrangements = false;
    bool conjecture_only = false;
    bool timing = false;
    bool no_cache = false;
};

class Runner {
public:
    Runner(RunConfig cfg, std::ostream& out, std::ostream& err)
        : cfg_(std::move(cfg)), out_(out), err_(err), cache_(cache_dir()) {}

    int run() {
        const auto start = std::chrono::steady_clock::now();
        int rc = dispatch();
        seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (cfg_.timing) err_ << cfg_.command << " took " << fixed(seconds_, 3) << " s\n";
        return rc;
    }

private:
    RunConfig cfg_;
    std::ostream& out_;
    std::ostream& err_;
    ResultCache cache_;
    double seconds_ = 0;
    int status_ = kOk;

    std::filesystem::path cache_dir() const {
        if (!cfg_.cache_dir.empty()) return cfg_.cache_dir;
        if (const char* env = std::getenv("MADNESS_CACHE_DIR")) return env;
        return ".madness-cache";
    }

    int dispatch() {
        const std::string& c = cfg_.command;
        if (c == "cubes") return cmd_cubes();
        if (c == "solve") return cmd_solve();
        if (c == "table1") return cmd_table1();
        if (c == "table2") return cmd_table2();
        if (c == "five-targets") return cmd_five_targets();
        if (c == "universal") return cmd_universal();
        if (c == "figure7") return cmd_figure7();
        if (c == "sample") return cmd_sample();
        if (c == "search") return cmd_search();
        err_ << "unknown command '" << c << "'\n";
        return kValidation;
    }

    // Writes one output: to <out>/<stem>.<ext> when --out is set, else stdout.
    void emit(const std::string& stem, const std::string& text, const std::string& csv, const json& payload) {
        std::string body, ext;
        if (cfg_.format == "csv") {
            body = csv;
            ext = "csv";
        } else if (cfg_.format == "json") {
            body = envelope(cfg_.command, payload, cfg_.timing ? std::optional<double>(seconds_) : std::nullopt).dump(2) + "\n";
            ext = "json";
        } else {
            body = text;
            ext = "txt";
        }
        if (cfg_.out_dir.empty()) {
            out_ << body;
            return;
        }
        std::filesystem::create_directories(cfg_.out_dir);
        const auto path = std::filesystem::path(cfg_.out_dir) / (stem + "." + ext);
        std::ofstream f(path, std::ios::trunc);
        f << body;
        out_ << "wrote " << path.string() << "\n";
    }

    void mismatch(const std::string& what) {
        err_ << "check failed: " << what << "\n";
        status_ = kMismatch;
    }

    template <typename Range>
    void check_histogram(const std::string& label, const SolutionDistribution& got, const Range& expected,
                         std::size_t count) {
        SolutionDistribution want;
        std::size_t i = 0;
        for (const auto& [k, v] : expected)
            if (i++ < count) want.add(k, v);
        for (const auto& [k, v] : want.counts)
            if (got[k] != v) mismatch(label + ": key " + std::to_string(k) + " expected " + std::to_string(v) + ", got " + std::to_string(got[k]));
        for (const auto& [k, v] : got.counts)
            if (!want.counts.count(k)) mismatch(label + ": unexpected key " + std::to_string(k) + " with count " + std::to_string(v));
    }

    std::optional<json> cached(const std::string& key) {
        if (cfg_.no_cache) return std::nullopt;
        std::string warning;
        auto j = cache_.load(key, &warning);
        if (!warning.empty()) err_ << "warning: " << warning << "\n";
        return j;
    }

    void remember(const std::string& key, const json& payload) {
        if (!cfg_.no_cache) cache_.store(key, payload);
    }

    // ---- commands ----

    int cmd_cubes() {
        emit("cubes", cubes_text(), cubes_csv(), cubes_json());
        return status_;
    }

    int cmd_solve() {
        if (cfg_.cubes.empty()) throw Error(ErrorKind::Validation, "solve needs --cubes");
        const Collection w = Collection::parse(cfg_.cubes);
        if (w.size() != kCollectionSize)
            throw Error(ErrorKind::Validation, "solve needs exactly 8 cubes, got " + std::to_string(w.size()));
        const Cube& target = tableau().at(cfg_.target);
        const SolveReport r = solve(w, target, cfg_.interior, cfg_.arrangements);
        if (!r.agree())
            throw Error(ErrorKind::Mismatch, "solution methods disagree: graph " + std::to_string(r.formula) +
                                                 ", permanent " + std::to_string(r.permanent) + ", prime scan " +
                                                 std::to_string(r.prime_scan));
        std::ostringstream csv;
        csv << "target,collection,solution_number,interior_matching_count\n"
            << name_of(r.target) << ',' << r.collection.to_string(' ') << ',' << r.formula << ','
            << (r.interior ? std::to_string(*r.interior) : "") << '\n';
        emit("solve", solve_text(r), csv.str(), solve_json(r));
        return status_;
    }

    SolutionDistribution table1_distribution(const Cube& target) {
        const std::string key = "table1-" + target.name.to_string();
        if (auto j = cached(key)) {
            try {
                return distribution_from_cache(*j);
            } catch (const json::exception& e) {
                err_ << "warning: recomputing " << key << ": " << e.what() << "\n";
            }
        }
        auto d = distribution_for_target(target, cfg_.threads);
        remember(key, distribution_to_cache(d));
        return d;
    }

    int cmd_table1() {
        const Cube& target = tableau().at(cfg_.target);
        const auto d = table1_distribution(target);
        if (cfg_.check) {
            check_histogram("table1", d, reference::kSolutionDistribution, reference::kSolutionDistribution.size());
            if (d.total() != reference::kBuildableForTarget) mismatch("table1 total " + std::to_string(d.total()));
        }
        emit("table1", table1_text(d, target.name.to_string()), table1_csv(d), distribution_json(d, "solution_number"));
        return status_;
    }

    struct Table2 {
        SolutionDistribution histogram;
        std::vector<CubeMask> five_target;
    };

    Table2 table2_result() {
        if (auto j = cached("table2")) {
            try {
                Table2 t{distribution_from_cache(j->at("histogram")), {}};
                for (const auto& m : j->at("five_target")) t.five_target.push_back(m.get<CubeMask>());
                return t;
            } catch (const json::exception& e) {
                err_ << "warning: recomputing table2: " << e.what() << "\n";
            }
        }
        auto sweep = distribution_buildable(cfg_.threads);
        remember("table2", {{"histogram", distribution_to_cache(sweep.histogram)}, {"five_target", sweep.five_target}});
        return {sweep.histogram, sweep.five_target};
    }

    int cmd_table2() {
        const auto t = table2_result();
        if (cfg_.check) {
            check_histogram("table2", t.histogram, reference::kBuildableDistribution, reference::kBuildableDistribution.size());
            if (t.histogram.total() != reference::kCollections) mismatch("table2 total");
        }
        emit("table2", table2_text(t.histogram), table2_csv(t.histogram), table2_json(t.histogram));
        return status_;
    }

    int cmd_five_targets() {
        const auto recs = five_target_records(cfg_.verify);
        if (cfg_.check || cfg_.verify) {
            if (recs.size() != reference::kFiveTargetCollections) mismatch("expected 360 records, got " + std::to_string(recs.size()));
            std::vector<CubeMask> generated;
            for (const auto& r : recs) generated.push_back(r.collection.mask());
            std::sort(generated.begin(), generated.end());
            if (std::adjacent_find(generated.begin(), generated.end()) != generated.end()) mismatch("duplicate five-target collections");
            if (generated != table2_result().five_target) mismatch("generated collections differ from the sweep's five-target collections");
        }
        emit("five_targets", five_targets_text(recs), five_targets_csv(recs), five_targets_json(recs));
        return status_;
    }

    int cmd_universal() {
        const auto cands = conjecture_sets();
        const auto orbit = orbit_and_stabilizer(cands);
        if (cfg_.check) {
            if (cands.size() != reference::kUniversalSets) mismatch("expected 10 sets");
            for (const auto& c : cands) {
                if (c.buildable != kCubes) mismatch(c.generator() + " builds " + std::to_string(c.buildable));
                int in_set = 0;
                for (const auto& a : per_target_analysis(c.set)) {
                    std::map<unsigned, int> sols;
                    for (const auto& [m, s] : a.collections) ++sols[s];
                    const bool ok = a.in_set ? (std::popcount(a.unusable_in_set) == 3 && sols == std::map<unsigned, int>{{2, 7}, {8, 2}})
                                             : (std::popcount(a.unusable_in_set) == 4 && sols == std::map<unsigned, int>{{4, 1}});
                    if (!ok) mismatch(c.generator() + ": unexpected analysis for target " + name_of(a.target));
                    in_set += a.in_set;
                }
                if (in_set != 12) mismatch(c.generator() + ": expected 12 in-set targets");
            }
            if (orbit.orbits.size() != 1 || orbit.orbits[0].size() != 10 || !orbit.closed)
                mismatch("conjecture sets do not form a single color-permutation orbit of size 10");
        }
        std::ostringstream csv;
        csv << "generators,cubes,buildable,stabilizer_order\n";
        for (std::size_t i = 0; i < cands.size(); ++i)
            csv << '"' << cands[i].generator() << "\"," << Collection(cands[i].set).to_string(' ') << ','
                << cands[i].buildable << ',' << orbit.stabilizers[i].order << '\n';
        emit("universal", universal_text(cands, orbit), csv.str(), universal_json(cands, orbit));
        return status_;
    }

    CubeMask chosen_universal_set() const {
        const auto& g = cfg_.generators;
        if (g.size() != 2 || g[0] < 'b' || g[0] > 'f' || g[1] < 'b' || g[1] > 'f' || g[0] == g[1])
            throw Error(ErrorKind::Validation, "--set takes two distinct letters from b..f, e.g. bc");
        const int x = std::min(g[0], g[1]) - 'a', y = std::max(g[0], g[1]) - 'a';
        return conjecture_set(x, y);
    }

    int cmd_figure7() {
        const CubeMask set = chosen_universal_set();
        std::vector<int> ks = cfg_.ks.empty() ? std::vector<int>{8, 9, 10, 11} : cfg_.ks;
        for (int k : ks) {
            const auto d = subset_build_distribution(set, k);
            if (cfg_.check) {
                bool known = false;
                for (const auto& h : reference::kUniversalSubsetHistograms)
                    if (static_cast<int>(h.k) == k) {
                        known = true;
                        check_histogram("figure7 k=" + std::to_string(k), d, h.bins, h.bin_count);
                    }
                if (!known) mismatch("no reference histogram for k=" + std::to_string(k));
                if (d.total() != binomial(12, k)) mismatch("figure7 total for k=" + std::to_string(k));
            }
            std::ostringstream text;
            text << "k=" << k << " subsets of " << Collection(set).to_string(' ') << "\n";
            for (const auto& [b, v] : d.counts) text << std::setw(4) << b << ' ' << v << '\n';
            emit("figure7_k" + std::to_string(k), text.str(), histogram_csv(d, "buildable_count", "subsets"),
                 {{"k", k}, {"set", names_json(set)}, {"histogram", distribution_json(d, "buildable_count")}});
        }
        return status_;
    }

    int cmd_sample() {
        std::vector<int> ks = cfg_.ks.empty() ? std::vector<int>{9, 10, 11, 12} : cfg_.ks;
        for (int k : ks) {
            const auto st = sample_distribution(k, cfg_.n, cfg_.seed, cfg_.threads);
            if (cfg_.check) {
                bool known = false;
                for (const auto& m : reference::kSampleMoments)
                    if (static_cast<int>(m.k) == k) {
                        known = true;
                        if (std::abs(st.mean - m.mean) > 0.1) mismatch("k=" + std::to_string(k) + " mean " + fixed(st.mean, 3));
                        if (std::abs(st.stddev - m.stddev) > 0.1) mismatch("k=" + std::to_string(k) + " stddev " + fixed(st.stddev, 3));
                    }
                if (!known) mismatch("no reference moments for k=" + std::to_string(k));
            }
            emit("sample_k" + std::to_string(k), sample_text(st), sample_csv(st), sample_json(st));
        }
        return status_;
    }

    int cmd_search() {
        SearchOptions opt;
        opt.budget = cfg_.budget;
        if (!cfg_.checkpoint.empty()) opt.checkpoint = cfg_.checkpoint;
        if (cfg_.conjecture_only)
            for (const auto& c : conjecture_sets(false)) opt.restrict_to.push_back(c.set);
        const auto r = exhaustive_search(opt);
        if (cfg_.check && r.completed) {
            std::vector<CubeMask> want;
            for (const auto& c : conjecture_sets(false)) want.push_back(c.set);
            std::vector<CubeMask> got = r.found;
            std::sort(want.begin(), want.end());
            std::sort(got.begin(), got.end());
            if (got != want) mismatch("universal 12-sets found differ from the 10 conjectured sets");
        }
        std::ostringstream text, csv;
        text << "examined " << r.examined << " sets; next rank " << r.next_rank << " of " << r.total
             << (r.completed ? " (complete)" : " (budget exhausted)") << "\n";
        csv << "cubes\n";
        json found = json::array();
        for (CubeMask m : r.found) {
            text << "universal: " << Collection(m).to_string(' ') << "\n";
            csv << Collection(m).to_string(' ') << "\n";
            found.push_back(names_json(m));
        }
        if (!r.completed && opt.checkpoint) text << "checkpoint: " << opt.checkpoint->string() << "\n";
        emit("search", text.str(), csv.str(),
             {{"examined", r.examined}, {"next_rank", r.next_rank}, {"total", r.total}, {"completed", r.completed}, {"found", found}});
        if (!r.completed) return kBudgetExhausted;
        return status_;
    }
};

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Solution numbers, tables and universal sets for the 2x2x2 MacMahon cube target puzzle", "madness"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
        sub->add_option("--out", cfg.out_dir, "Write output files into this directory");
        sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
        sub->add_option("--cache-dir", cfg.cache_dir, "Result cache directory (default $MADNESS_CACHE_DIR or .madness-cache)");
        sub->add_flag("--no-cache", cfg.no_cache, "Neither read nor write cached results");
        sub->add_flag("--check", cfg.check, "Compare results with the published values; exit 3 on mismatch");
        sub->add_flag("--timing", cfg.timing, "Report elapsed time");
    };

    auto* cubes = app.add_subcommand("cubes", "List the 30 cubes with faces and corner numbers");
    auto* solve = app.add_subcommand("solve", "Solution number of 8 cubes for a target");
    solve->add_option("--target", cfg.target, "Target cube name")->required();
    solve->add_option("--cubes", cfg.cubes, "Comma-separated cube names")->required();
    solve->add_flag("--interior", cfg.interior, "Also count interior-matching arrangements");
    solve->add_flag("--arrangements", cfg.arrangements, "List every arrangement");
    auto* table1 = app.add_subcommand("table1", "Solution-number distribution for one target");
    table1->add_option("--target", cfg.target, "Target cube name");
    auto* table2 = app.add_subcommand("table2", "Distribution of buildable-target counts");
    auto* five = app.add_subcommand("five-targets", "Collections that build five targets");
    five->add_flag("--verify", cfg.verify, "Verify each record and compare with the full sweep");
    auto* universal = app.add_subcommand("universal", "The ten conjectured minimum universal sets");
    auto* figure7 = app.add_subcommand("figure7", "Buildable counts over subsets of a universal set");
    figure7->add_option("--k", cfg.ks, "Subset sizes (8..11)");
    figure7->add_option("--set", cfg.generators, "Generator letters of the universal set, e.g. bc");
    auto* sample = app.add_subcommand("sample", "Buildable counts of random k-sets");
    sample->add_option("--k", cfg.ks, "Set sizes (9..12)");
    sample->add_option("--n", cfg.n, "Samples per size");
    sample->add_option("--seed", cfg.seed, "RNG seed");
    auto* search = app.add_subcommand("search", "Scan 12-sets for universal sets");
    search->add_option("--budget", cfg.budget, "Sets to examine in this run (0 = all)");
    search->add_option("--checkpoint", cfg.checkpoint, "Checkpoint file to resume from and update");
    search->add_flag("--conjecture-only", cfg.conjecture_only, "Scan only the ten conjectured sets");

    for (auto* sub : {cubes, solve, table1, table2, five, universal, figure7, sample, search}) add_common(sub);

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kValidation;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        Runner runner(cfg, out, err);
        return runner.run();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::Mismatch ? kMismatch : kValidation;
    }
}

}  // namespace madness::cli
