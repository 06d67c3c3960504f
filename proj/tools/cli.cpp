// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The hypernet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <hypernet/hypernet.hpp>
#include <hypernet/records.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <locale>
#include <memory>
#include <sstream>

namespace hypernet::cli {
namespace {

constexpr const char* reconciliations = R"(Reconciliations between the closed-form model and the published results:
- Hop labels: a tree of radius R is listed as R+1 hops, a d-cube as ceil(d/2), a torus as ceil(d k / 4). Labels only; the model uses R, d and k.
- Tree links: L = N as tabulated, although a tree has N - 1 edges. The graph oracle reports the true count.
- Torus diameter: the closed form d k / 4 is half the graph diameter d floor(k/2) for even k.
- Torus with k = 2: two-node rings collapse to single links, so the graph has d N / 2 edges against L = d N.
- 3-Torus row: H = 96 and L = 3N give 3.1% relative bandwidth, not the published 10%. The row carries a note.
- 20-Cube row: 20 dimensions hold 2^20 = 1048576 peers, not 2.1e6. Relative bandwidth is 100% either way.
- Tree rows (published 16, 13, 12, 8) reproduce within 5 points: the model gives 20.2, 14.6, 10.3, 8.7.
- Mean hop counts include self-pairs; the exact mean over distinct pairs is larger by N / (N - 1).
)";

struct FamilyArgs {
    std::string family;
    std::uint64_t v = 0;
    std::uint64_t radius = 0;
    unsigned d = 0;
    double k = 0;
    CLI::Option* v_opt = nullptr;
    CLI::Option* radius_opt = nullptr;
    CLI::Option* d_opt = nullptr;
    CLI::Option* k_opt = nullptr;

    void add_to(CLI::App* app, bool with_size = true)
    {
        app->add_option("--family", family, "tree | cayley | hypercube | torus")->required();
        v_opt = app->add_option("-v", v, "branching factor (tree) or valence (cayley)");
        d_opt = app->add_option("-d", d, "dimension (hypercube, torus)");
        if (with_size) {
            radius_opt = app->add_option("--radius", radius, "tree radius R");
            k_opt = app->add_option("-k", k, "ring size per dimension (torus)");
        }
    }

    Family parsed_family() const
    {
        const auto f = parse_family(family);
        if (!f)
            throw usage_error("unknown family \"" + family + "\"");
        return *f;
    }

    TopologySpec spec() const
    {
        TopologySpec s;
        s.family = parsed_family();
        if (v_opt->count())
            s.v = v;
        if (radius_opt && radius_opt->count())
            s.radius = radius;
        if (d_opt->count())
            s.d = d;
        if (k_opt && k_opt->count())
            s.k = k;
        validate(s);
        return s;
    }
};

struct Globals {
    std::string format = "csv";
    std::string output;
    std::uint64_t seed = 0;
    double s_link = 1.0;
    double s_peer = 1.0;
    bool discrepancies = false;

    bool json() const { return format == "json"; }
    ServiceTimes times() const { return {s_link, s_peer}; }
};

std::ofstream open_file(const std::string& path)
{
    std::ofstream f(path);
    if (!f)
        throw usage_error("cannot open " + path + " for writing");
    f.imbue(std::locale::classic());
    return f;
}

// Numbers are written with the classic locale whatever the caller's stream uses.
class ClassicLocale {
public:
    explicit ClassicLocale(std::ostream& os) : os_(os), saved_(os.imbue(std::locale::classic())) {}
    ~ClassicLocale() { os_.imbue(saved_); }
    ClassicLocale(const ClassicLocale&) = delete;
    ClassicLocale& operator=(const ClassicLocale&) = delete;

private:
    std::ostream& os_;
    std::locale saved_;
};

std::string read_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw usage_error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int cmd_metrics(const Globals& g, const FamilyArgs& fa, std::ostream& out)
{
    const OutputRecord rec = make_record(fa.spec(), g.times());
    if (g.json()) {
        out << to_json(rec).dump() << '\n';
    } else {
        out << metrics_csv_header << '\n' << to_csv(rec) << '\n';
    }
    return exit_ok;
}

int cmd_rank(const Globals& g, const std::string& preset, const std::string& spec_file, std::ostream& out)
{
    std::vector<RankingEntry> entries;
    if (!spec_file.empty())
        entries = ranking_entries_from_json(read_file(spec_file));
    else if (preset == "table3")
        entries = table3_preset();
    else
        throw usage_error("unknown preset \"" + preset + "\"");

    const auto rows = rank(entries, g.times());
    if (g.json()) {
        for (const auto& r : rows)
            out << to_json(r).dump() << '\n';
    } else if (!rows.empty()) {
        out << ranking_csv_header << '\n';
        for (const auto& r : rows)
            out << to_csv(r) << '\n';
    }
    return exit_ok;
}

struct SweepArgs {
    std::uint64_t radius_min = 0, radius_max = 0;
    std::uint64_t d_min = 1, d_max = 1;
    std::uint64_t k_min = 2, k_max = 2;
    CLI::Option* radius_min_opt = nullptr;
    CLI::Option* radius_max_opt = nullptr;
    CLI::Option* d_min_opt = nullptr;
    CLI::Option* d_max_opt = nullptr;
    CLI::Option* k_min_opt = nullptr;
    CLI::Option* k_max_opt = nullptr;
    std::string csv_path;
};

int cmd_sweep(const Globals& g, const FamilyArgs& fa, const SweepArgs& sa, std::ostream& out)
{
    HorizonQuery shape;
    shape.family = fa.parsed_family();
    std::uint64_t first = 0;
    std::uint64_t last = 0;
    const auto need = [](CLI::Option* lo, CLI::Option* hi, const char* what) {
        if (!lo->count() || !hi->count())
            throw usage_error(std::string("sweep needs ") + what);
    };
    switch (shape.family) {
    case Family::RootedTree:
    case Family::CayleyTree:
        if (!fa.v_opt->count())
            throw usage_error("tree sweeps need -v");
        need(sa.radius_min_opt, sa.radius_max_opt, "--radius-min and --radius-max");
        shape.v = fa.v;
        first = sa.radius_min;
        last = sa.radius_max;
        break;
    case Family::Hypercube:
        need(sa.d_min_opt, sa.d_max_opt, "--d-min and --d-max");
        first = sa.d_min;
        last = sa.d_max;
        break;
    case Family::Hypertorus:
        if (!fa.d_opt->count())
            throw usage_error("torus sweeps need -d");
        need(sa.k_min_opt, sa.k_max_opt, "--k-min and --k-max");
        shape.d = fa.d;
        first = sa.k_min;
        last = sa.k_max;
        break;
    }
    const SweepSeries series = sweep(shape, first, last, g.times());

    std::ofstream file;
    std::ostream* sink = &out;
    if (!sa.csv_path.empty()) {
        file = open_file(sa.csv_path);
        sink = &file;
    }
    if (g.json() && sa.csv_path.empty())
        write_sweep_json(*sink, shape.family, series);
    else
        write_sweep_csv(*sink, shape.family, series);
    return exit_ok;
}

int cmd_validate(const Globals& g, const FamilyArgs& fa, std::uint64_t pairs, const std::string& edge_list,
                 std::ostream& out)
{
    const TopologySpec spec = fa.spec();
    const OracleLimits limits = OracleLimits::from_environment();
    const VerificationReport report = verify_spec(spec, limits);
    bool ok = report.passed();

    if (!edge_list.empty()) {
        auto f = open_file(edge_list);
        build_graph(spec, limits).write_edge_list(f);
    }

    json doc;
    doc["verification"] = to_json(report);
    std::optional<ConvergenceReport> convergence;
    const std::uint64_t n = node_count(spec);
    if (pairs > 0 && n >= 2 && n <= limits.all_pairs_cap) {
        const GraphInstance graph = build_graph(spec, limits);
        const ExactMetrics exact = exact_metrics(graph, g.times(), limits);
        convergence = convergence_report(SimConfig{spec, pairs, g.seed, g.times()}, exact, {}, limits);
        ok = ok && convergence->ok();
        doc["convergence"] = to_json(*convergence);
        doc["convergence"]["generator"] = generator_name;
        doc["convergence"]["seed"] = g.seed;
    } else {
        doc["convergence"] = nullptr;
    }
    doc["passed"] = ok;

    if (g.json()) {
        out << doc.dump() << '\n';
    } else {
        out << "verification of " << spec_to_json(spec).dump() << ":\n";
        write_text(out, report);
        if (convergence) {
            out << "convergence (" << pairs << " pairs, " << generator_name << " seed " << g.seed << "):\n";
            write_text(out, *convergence);
        }
        out << (ok ? "PASSED" : "FAILED") << '\n';
        out << doc.dump() << '\n';
    }
    return ok ? exit_ok : exit_validation_failed;
}

int cmd_simulate(const Globals& g, const FamilyArgs& fa, std::uint64_t pairs, const std::string& counts_path,
                 std::ostream& out)
{
    const SimResult result = run(SimConfig{fa.spec(), pairs, g.seed, g.times()}, OracleLimits::from_environment());
    if (!counts_path.empty()) {
        auto f = open_file(counts_path);
        result.write_edge_counts(f);
    }
    const json j = to_json(result);
    if (g.json()) {
        out << j.dump() << '\n';
    } else {
        std::string header;
        std::string row;
        for (const auto& [key, value] : j.items()) {
            if (key == "spec")
                continue;
            header += (header.empty() ? "" : ",") + key;
            row += (row.empty() ? "" : ",") +
                   (value.is_string() ? value.get<std::string>()
                    : value.is_number_float() ? format_significant(value.get<double>())
                                              : value.dump());
        }
        out << "family," << header << '\n' << family_name(result.spec.family) << ',' << row << '\n';
    }
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    const ClassicLocale classic_out(out);
    const ClassicLocale classic_err(err);

    CLI::App app{"Scalability model of P2P interconnection topologies", "hypernet"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    Globals g;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", g.output, "write results to PATH instead of stdout");
    app.add_option("--seed", g.seed, "seed for the routing simulator");
    app.add_option("--s-link", g.s_link, "service time per link transit")->check(CLI::PositiveNumber);
    app.add_option("--s-peer", g.s_peer, "service time per peer visit")->check(CLI::PositiveNumber);
    app.add_flag("--discrepancies", g.discrepancies, "print the reconciliations with the published results");

    FamilyArgs metrics_fa, sweep_fa, validate_fa, simulate_fa;

    auto* metrics = app.add_subcommand("metrics", "structural and demand metrics of one topology");
    metrics_fa.add_to(metrics);

    auto* rank_cmd = app.add_subcommand("rank", "rank topologies by relative bandwidth");
    std::string preset = "table3";
    std::string spec_file;
    rank_cmd->add_option("--preset", preset, "named configuration set (table3)");
    rank_cmd->add_option("--spec-file", spec_file, "JSON array of topology specs");

    auto* sweep_cmd = app.add_subcommand("sweep", "relative bandwidth over a range of sizes");
    sweep_fa.add_to(sweep_cmd, false);
    SweepArgs sa;
    sa.radius_min_opt = sweep_cmd->add_option("--radius-min", sa.radius_min);
    sa.radius_max_opt = sweep_cmd->add_option("--radius-max", sa.radius_max);
    sa.d_min_opt = sweep_cmd->add_option("--d-min", sa.d_min);
    sa.d_max_opt = sweep_cmd->add_option("--d-max", sa.d_max);
    sa.k_min_opt = sweep_cmd->add_option("--k-min", sa.k_min);
    sa.k_max_opt = sweep_cmd->add_option("--k-max", sa.k_max);
    sweep_cmd->add_option("--csv", sa.csv_path, "write the series as CSV to PATH");

    auto* validate_cmd = app.add_subcommand("validate", "check closed forms against explicit graphs");
    validate_fa.add_to(validate_cmd);
    std::uint64_t validate_pairs = 100'000;
    std::string edge_list;
    validate_cmd->add_option("--pairs", validate_pairs, "simulated pairs for the convergence check (0 skips)");
    validate_cmd->add_option("--edge-list", edge_list, "export the graph as \"u v\" lines to PATH");

    auto* simulate_cmd = app.add_subcommand("simulate", "seeded routing simulation");
    simulate_fa.add_to(simulate_cmd);
    std::uint64_t sim_pairs = 100'000;
    std::string counts_path;
    simulate_cmd->add_option("--pairs", sim_pairs, "number of sampled ordered pairs");
    simulate_cmd->add_option("--edge-counts", counts_path, "export \"u v count\" lines to PATH");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "hypernet: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        std::ofstream file;
        std::ostream* sink = &out;
        if (!g.output.empty()) {
            file = open_file(g.output);
            sink = &file;
        }
        if (g.discrepancies)
            *sink << reconciliations;

        if (metrics->parsed())
            return cmd_metrics(g, metrics_fa, *sink);
        if (rank_cmd->parsed())
            return cmd_rank(g, preset, spec_file, *sink);
        if (sweep_cmd->parsed())
            return cmd_sweep(g, sweep_fa, sa, *sink);
        if (validate_cmd->parsed())
            return cmd_validate(g, validate_fa, validate_pairs, edge_list, *sink);
        if (simulate_cmd->parsed())
            return cmd_simulate(g, simulate_fa, sim_pairs, counts_path, *sink);
        if (!g.discrepancies) {
            out << app.help();
            return exit_usage;
        }
        return exit_ok;
    } catch (const usage_error& e) {
        err << "hypernet: " << e.what() << '\n';
        return exit_usage;
    } catch (const error& e) {
        // invalid specs, overflow, caps and modes are all bad input
        err << "hypernet: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace hypernet::cli
