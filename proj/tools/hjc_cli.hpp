#pragma once

// Command-line front end. run() returns the process exit code:
// 0 success, 1 a requested property does not hold, 2 usage or input error.

#include <hjc/coloring.hpp>
#include <hjc/cube.hpp>
#include <hjc/search.hpp>
#include <hjc/verify.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hjc::cli
{

inline unsigned env_thread_count()
{
    if (const char * env = std::getenv("HJC_THREADS")) {
        try {
            const auto v = std::stoul(env);
            if (v >= 1)
                return static_cast<unsigned>(v);
        }
        catch (const std::exception &) {
        }
    }
    return default_thread_count();
}

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

inline Coloring load_coloring(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open coloring file '" + path + "'");
    return read_coloring(in);
}

inline Hypergraph load_hypergraph(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open hypergraph file '" + path + "'");
    return read_hypergraph(in);
}

inline void print_grid(std::ostream & out, const Coloring & c)
{
    const auto & s = c.cube();
    if (s.n() > 2)
        throw UsageError("--grid needs n <= 2");
    const std::uint64_t cols = s.n() == 1 ? s.size() : s.t();
    for (std::uint64_t r = 0; r < s.size(); ++r)
        out << c[r] << ((r + 1) % cols == 0 ? '\n' : ' ');
}

inline void print_classes(std::ostream & out, const Coloring & c)
{
    const auto & s = c.cube();
    std::vector<std::vector<std::string>> classes(c.k());
    for (std::uint64_t r = 0; r < s.size(); ++r)
        classes[c[r]].push_back(format_point(unrank(r, s), s.t()));
    for (std::uint32_t k = 0; k < c.k(); ++k) {
        out << "C_" << k << " =";
        for (const auto & w : classes[k])
            out << ' ' << w;
        out << '\n';
    }
}

inline std::string join(const std::vector<std::uint64_t> & v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

inline void print_witness(std::ostream & out, const char * label, const std::optional<Witness> & w)
{
    out << label << ": ";
    if (!w) {
        out << "none\n";
        return;
    }
    out << "#" << w->index;
    if (w->pattern)
        out << ' ' << format_pattern(*w->pattern);
    out << " [" << join(w->vertices) << "]\n";
}

inline void print_report(std::ostream & out, const VerifyReport & r)
{
    out << "domain: " << r.domain << '\n';
    out << "kind: " << r.kind << '\n';
    out << "k: " << r.k << '\n';
    out << "class_sizes: " << join(r.class_sizes) << '\n';
    out << "balanced: " << (r.balanced ? "true" : "false") << '\n';
    out << "lines: " << r.lines << '\n';
    out << "rainbow_count: " << r.rainbow_count << '\n';
    print_witness(out, "witness", r.rainbow_witness);
    out << "mono_count: " << r.mono_count << '\n';
    print_witness(out, "mono_witness", r.mono_witness);
}

// Source of a hypergraph for search, chi-b and export-cnf.
struct GraphSource
{
    std::vector<std::uint32_t> cube;
    std::vector<std::uint32_t> ap;
    std::string file;
    std::string kind = "geometric";

    void add_to(CLI::App * app)
    {
        auto * c = app->add_option("--cube", cube, "line hypergraph of C_t^n: T N")->expected(2);
        auto * a = app->add_option("--ap", ap, "progression hypergraph P_n^t: N T")->expected(2);
        auto * f = app->add_option("--hypergraph", file, "hypergraph text file");
        c->excludes(a)->excludes(f);
        a->excludes(f);
        app->add_option("--kind", kind, "line kind for --cube")->check(CLI::IsMember({"geometric", "combinatorial"}));
    }

    std::optional<CubeShape> shape() const
    {
        if (cube.empty())
            return std::nullopt;
        return CubeShape(cube[0], cube[1]);
    }

    Hypergraph load() const
    {
        if (!cube.empty())
            return line_hypergraph(CubeShape(cube[0], cube[1]), parse_line_kind(kind));
        if (!ap.empty())
            return ap_hypergraph(ap[0], ap[1]);
        if (!file.empty())
            return load_hypergraph(file);
        throw UsageError("one of --cube, --ap or --hypergraph is required");
    }
};

inline void write_witness(const std::string & path, const Coloring & witness, const std::optional<CubeShape> & shape)
{
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write '" + path + "'");
    if (shape)
        write_coloring(out, Coloring(*shape, witness.k(), witness.colors()));
    else
        write_coloring(out, witness);
}

inline int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Balanced rainbow-free colorings of Hales-Jewett cubes", "hjc"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    unsigned threads = env_thread_count();
    app.add_flag("--json", json, "machine-readable output");
    app.add_option("--threads", threads, "worker threads (default: HJC_THREADS or hardware)")
        ->check(CLI::PositiveNumber);

    // lines
    auto * lines = app.add_subcommand("lines", "count, list or export the lines of C_t^n");
    std::uint32_t lt = 0, ln = 0;
    std::string lkind = "geometric";
    bool lcount = false, lhyper = false;
    std::uint64_t edge_cap = default_edge_cap;
    lines->add_option("--t", lt, "alphabet size")->required();
    lines->add_option("--n", ln, "dimension")->required();
    lines->add_option("--kind", lkind)->check(CLI::IsMember({"geometric", "combinatorial"}));
    auto * count_flag = lines->add_flag("--count", lcount, "print the number of lines");
    lines->add_flag("--hypergraph", lhyper, "emit the hypergraph text format")->excludes(count_flag);
    lines->add_option("--edge-cap", edge_cap, "maximum edges to materialize");

    // color
    auto * color = app.add_subcommand("color", "construct a coloring");
    std::string construction;
    std::uint32_t ct = 0, cn = 0;
    bool grid = false, classes = false, degenerate = false;
    std::string color_out;
    color->add_option("--construction", construction)
        ->required()
        ->check(CLI::IsMember({"halving", "lift", "anti-latin", "c33"}));
    color->add_option("--t", ct);
    color->add_option("--n", cn);
    auto * grid_flag = color->add_flag("--grid", grid, "print n <= 2 colorings as a table (rows = x_1)");
    color->add_flag("--classes", classes, "list the color classes")->excludes(grid_flag);
    color->add_flag("--degenerate", degenerate, "allow the t = 2 halving 1-coloring");
    color->add_option("-o,--output", color_out, "write the coloring file here");

    // verify
    auto * verify = app.add_subcommand("verify", "verify a coloring file");
    std::string vfile, vhyper, vkind = "geometric";
    bool expect_balanced = false, expect_free = false;
    verify->add_option("file", vfile, "coloring file")->required();
    verify->add_option("--kind", vkind)->check(CLI::IsMember({"geometric", "combinatorial"}));
    verify->add_option("--hypergraph", vhyper, "check edges of this hypergraph instead of cube lines");
    verify->add_flag("--expect-balanced", expect_balanced, "exit 1 unless balanced");
    verify->add_flag("--expect-rainbow-free", expect_free, "exit 1 if any rainbow line exists");

    // search / chi-b / export-cnf
    auto * search = app.add_subcommand("search", "decide whether a balanced rainbow-free k-coloring exists");
    GraphSource ssrc;
    std::uint32_t sk = 0;
    std::uint64_t node_limit = 0;
    bool no_symmetry = false, nondeterministic = false;
    std::uint32_t split_depth = SearchOptions{}.split_depth;
    std::string witness_out;
    ssrc.add_to(search);
    search->add_option("--k", sk, "number of colors")->required()->check(CLI::PositiveNumber);
    search->add_option("--witness-out", witness_out, "write a found witness here");
    search->add_option("--node-limit", node_limit, "stop after this many nodes")->check(CLI::PositiveNumber);
    search->add_flag("--no-symmetry", no_symmetry, "do not pin the first vertex to color 0");
    search->add_flag("--nondeterministic", nondeterministic, "return the first witness any worker finds");
    search->add_option("--split-depth", split_depth, "assigned vertices per parallel subtree root");

    auto * chib = app.add_subcommand("chi-b", "balanced upper chromatic number of a small hypergraph");
    GraphSource bsrc;
    std::uint64_t b_node_limit = 0;
    bsrc.add_to(chib);
    chib->add_option("--node-limit", b_node_limit, "per-k node limit")->check(CLI::PositiveNumber);

    auto * mapap = app.add_subcommand("map-ap", "map points, lines or colorings of C_t^n into [1, t^n]");
    std::uint32_t mt = 0, mn = 0;
    std::string mpoint, mline, mcoloring;
    mapap->add_option("--t", mt);
    mapap->add_option("--n", mn);
    auto * mp = mapap->add_option("--point", mpoint, "point digits, e.g. 12 or \"1 2\"");
    auto * ml = mapap->add_option("--line", mline, "line pattern, e.g. F,B");
    auto * mc = mapap->add_option("--coloring", mcoloring, "coloring file");
    mp->excludes(ml)->excludes(mc);
    ml->excludes(mc);

    auto * cnf = app.add_subcommand("export-cnf", "write the DIMACS encoding of the existence question");
    GraphSource esrc;
    std::uint32_t ek = 0;
    std::string cnf_out;
    esrc.add_to(cnf);
    cnf->add_option("--k", ek, "number of colors")->required();
    cnf->add_option("-o,--output", cnf_out, "DIMACS output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    }
    catch (const CLI::ParseError & e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (lines->parsed()) {
            const CubeShape s(lt, ln);
            const auto kind = parse_line_kind(lkind);
            if (lcount) {
                std::uint64_t count = 0;
                for_each_line(s, kind, [&](const LinePattern &) { ++count; });
                if (json)
                    out << nlohmann::ordered_json{{"t", lt}, {"n", ln}, {"kind", lkind}, {"count", count}}.dump()
                        << '\n';
                else
                    out << count << '\n';
            }
            else if (lhyper) {
                write_hypergraph(out, line_hypergraph(s, kind, edge_cap));
            }
            else if (json) {
                auto arr = nlohmann::ordered_json::array();
                for_each_line(s, kind, [&](const LinePattern & lp) { arr.push_back(format_pattern(lp)); });
                out << nlohmann::ordered_json{{"t", lt}, {"n", ln}, {"kind", lkind}, {"lines", arr}}.dump() << '\n';
            }
            else {
                for_each_line(s, kind, [&](const LinePattern & lp) { out << format_pattern(lp) << '\n'; });
            }
            return 0;
        }

        if (color->parsed()) {
            auto need = [&](const char * what, std::uint32_t v) {
                if (v == 0)
                    throw UsageError(std::string("--construction ") + construction + " needs " + what);
            };
            std::optional<Coloring> c;
            if (construction == "halving") {
                need("--t", ct);
                need("--n", cn);
                c = halving_coloring(CubeShape(ct, cn), degenerate);
            }
            else if (construction == "lift") {
                need("--t", ct);
                need("--n", cn);
                c = lift_coloring(CubeShape(ct, cn));
            }
            else if (construction == "anti-latin") {
                need("--t", ct);
                c = anti_latin_square(ct);
            }
            else {
                c = c33_base();
            }
            if (!color_out.empty()) {
                std::ofstream f(color_out);
                if (!f)
                    throw UsageError("cannot write '" + color_out + "'");
                write_coloring(f, *c);
            }
            if (json) {
                nlohmann::ordered_json j{{"t", c->cube().t()}, {"n", c->cube().n()}, {"k", c->k()},
                                         {"colors", c->colors()}};
                out << j.dump() << '\n';
            }
            else if (grid)
                print_grid(out, *c);
            else if (classes)
                print_classes(out, *c);
            else if (color_out.empty())
                write_coloring(out, *c);
            return 0;
        }

        if (verify->parsed()) {
            const auto c = load_coloring(vfile);
            VerifyReport report;
            if (!vhyper.empty())
                report = verify_report(c, load_hypergraph(vhyper), threads);
            else if (c.is_cube())
                report = verify_report(c, parse_line_kind(vkind), threads);
            else
                throw UsageError("coloring has no cube shape; pass --hypergraph");
            if (json)
                out << to_json(report).dump() << '\n';
            else
                print_report(out, report);
            const bool failed = (expect_balanced && !report.balanced) || (expect_free && report.rainbow_count > 0);
            return failed ? 1 : 0;
        }

        auto options = [&](std::uint64_t limit) {
            SearchOptions o;
            o.threads = threads;
            o.symmetry_fix_first_vertex = !no_symmetry;
            o.deterministic = !nondeterministic;
            o.split_depth = split_depth;
            if (limit > 0)
                o.node_limit = limit;
            return o;
        };

        if (search->parsed()) {
            const auto h = ssrc.load();
            const auto outcome = exists_balanced_rainbow_free(h, sk, options(node_limit));
            if (outcome.witness && !witness_out.empty())
                write_witness(witness_out, *outcome.witness, ssrc.shape());
            if (json)
                out << to_json(outcome).dump() << '\n';
            else {
                out << to_string(outcome.status) << '\n';
                out << "nodes_explored: " << outcome.nodes_explored << '\n';
                if (outcome.witness) {
                    if (auto s = ssrc.shape())
                        write_coloring(out, Coloring(*s, outcome.witness->k(), outcome.witness->colors()));
                    else
                        write_coloring(out, *outcome.witness);
                }
            }
            return 0;
        }

        if (chib->parsed()) {
            const auto h = bsrc.load();
            const auto result = balanced_upper_chromatic(h, options(b_node_limit));
            if (json)
                out << to_json(result).dump() << '\n';
            else {
                out << result.value << '\n';
                for (const auto & [k, o] : result.attempts)
                    out << "k=" << k << ' ' << to_string(o.status) << " nodes=" << o.nodes_explored << '\n';
                if (!result.certified)
                    out << "uncertified: node limit reached for a larger k\n";
            }
            return 0;
        }

        if (mapap->parsed()) {
            if (!mcoloring.empty()) {
                const auto c = load_coloring(mcoloring);
                if (!c.is_cube())
                    throw UsageError("map-ap needs a cube coloring");
                // Vertex v of [1, t^n] stored at index v - 1 = rank.
                write_coloring(out, Coloring(c.vertex_count(), c.k(), c.colors()));
                return 0;
            }
            if (mt == 0 || mn == 0)
                throw UsageError("map-ap needs --t and --n");
            const CubeShape s(mt, mn);
            if (!mpoint.empty()) {
                out << ap_embed(parse_point(mpoint, s), s) << '\n';
                return 0;
            }
            if (!mline.empty()) {
                const auto lp = parse_pattern(mline);
                check_pattern(lp, s);
                std::vector<std::uint64_t> values;
                for (const auto & p : line_points(lp, s))
                    values.push_back(ap_embed(p, s));
                const auto d = ap_difference(lp, s);
                if (json)
                    out << nlohmann::ordered_json{{"values", values}, {"difference", d}}.dump() << '\n';
                else
                    out << join(values) << "\ndifference " << d << '\n';
                return 0;
            }
            throw UsageError("map-ap needs one of --point, --line or --coloring");
        }

        if (cnf->parsed()) {
            const auto h = esrc.load();
            if (cnf_out.empty()) {
                export_cnf(h, ek, out);
            }
            else {
                std::ofstream f(cnf_out);
                if (!f)
                    throw UsageError("cannot write '" + cnf_out + "'");
                const auto formula = export_cnf(h, ek, f);
                out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
            }
            return 0;
        }
    }
    catch (const std::exception & e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace hjc::cli
