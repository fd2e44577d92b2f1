// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <hjc/coloring.hpp>
#include <hjc/dpll.hpp>
#include <hjc/search.hpp>
#include <hjc/verify.hpp>

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace hjc;

namespace
{
    struct Check
    {
        bool ok = true;
        std::string detail;

        void expect(bool cond, const std::string & what)
        {
            if (!cond && ok) {
                ok = false;
                detail = what;
            }
        }
    };

    const std::vector<std::pair<std::uint32_t, std::uint32_t>> halving_shapes{
        {4, 1}, {4, 2}, {4, 3}, {4, 4}, {4, 5}, {6, 1}, {6, 2}, {6, 3}, {6, 4}, {8, 1}, {8, 2}, {8, 3}};

    std::string shape_name(std::uint32_t t, std::uint32_t n)
    {
        return "(" + std::to_string(t) + "," + std::to_string(n) + ")";
    }

    // Reports whose bytes must not depend on the thread count.

    std::string halving_report(unsigned threads)
    {
        std::string out;
        for (auto [t, n] : halving_shapes)
            out += to_json(verify_report(halving_coloring(cube_shape(t, n)), LineKind::geometric, threads)).dump() + "\n";
        return out;
    }

    std::string exception_report(unsigned threads)
    {
        SearchOptions opts;
        opts.threads = threads;
        const auto h = line_hypergraph(cube_shape(3, 2), LineKind::geometric);
        return to_json(exists_balanced_rainbow_free(h, 3, opts)).dump() + "\n";
    }

    std::string chi_b_report(unsigned threads)
    {
        SearchOptions opts;
        opts.threads = threads;
        return to_json(balanced_upper_chromatic(ap_hypergraph(12, 3), opts)).dump() + "\n";
    }

    Check halving_balanced()
    {
        Check c;
        for (auto [t, n] : halving_shapes) {
            const auto col = halving_coloring(cube_shape(t, n));
            const auto sizes = class_sizes(col);
            c.expect(sizes.size() == oracle::ipow(t / 2, n), "class count at " + shape_name(t, n));
            for (auto s : sizes)
                c.expect(s == oracle::ipow(2, n), "class size at " + shape_name(t, n));
        }
        return c;
    }

    Check halving_rainbow_free()
    {
        Check c;
        std::uint64_t scanned = 0;
        for (auto [t, n] : halving_shapes) {
            const auto s = cube_shape(t, n);
            const auto col = halving_coloring(s);
            const auto scan = scan_lines(col, LineKind::geometric);
            scanned += scan.lines;
            c.expect(scan.rainbow_count == 0, "rainbow line at " + shape_name(t, n));
            bool first_two_agree = true;
            for_each_geometric_line(s, [&](const LinePattern & lp) {
                const auto prog = line_progression(lp, s);
                if (col[prog.at(0)] != col[prog.at(1)]) {
                    first_two_agree = false;
                    return false;
                }
                return true;
            });
            c.expect(first_two_agree, "g(x0) != g(x1) at " + shape_name(t, n));
        }
        if (c.ok)
            c.detail = std::to_string(scanned) + " lines scanned";
        return c;
    }

    Check lift_results()
    {
        Check c;
        for (auto [t, n] : {std::pair{3u, 3u}, {3u, 4u}, {4u, 2u}, {4u, 3u}, {5u, 2u}, {5u, 3u}, {6u, 2u}, {7u, 2u}}) {
            const auto col = lift_coloring(cube_shape(t, n));
            c.expect(col.k() == t, "k at " + shape_name(t, n));
            for (auto s : class_sizes(col))
                c.expect(s == oracle::ipow(t, n - 1), "class size at " + shape_name(t, n));
            c.expect(is_rainbow_free(col, LineKind::geometric), "rainbow line at " + shape_name(t, n));
        }
        return c;
    }

    Check three_by_two_exception()
    {
        Check c;
        const auto h = line_hypergraph(cube_shape(3, 2), LineKind::geometric);
        const auto outcome = exists_balanced_rainbow_free(h, 3);
        c.expect(outcome.status == SearchStatus::exhausted_no_witness, "search status " + std::string(to_string(outcome.status)));
        std::uint64_t rainbow = 0;
        const auto total = oracle::for_each_balanced_coloring(9, 3, [&](const auto & colors) {
            rainbow += oracle::any_rainbow(h.edges, colors);
        });
        c.expect(total == 1680, "oracle enumerated " + std::to_string(total));
        c.expect(rainbow == total, "oracle found a rainbow-free coloring");
        c.expect(count_balanced_colorings(9, 3) == 1680, "multinomial count");
        return c;
    }

    Check two_colorings()
    {
        Check c;
        for (auto [n, expected] : {std::pair{2u, 6u}, {3u, 70u}}) {
            const auto h = line_hypergraph(cube_shape(2, n), LineKind::geometric);
            std::uint64_t rainbow = 0;
            const auto total = oracle::for_each_balanced_coloring(h.vertex_count, 2, [&](const auto & colors) {
                rainbow += oracle::any_rainbow(h.edges, colors);
            });
            c.expect(total == expected, "oracle enumerated " + std::to_string(total) + " at n=" + std::to_string(n));
            c.expect(rainbow == total, "rainbow-free 2-coloring at n=" + std::to_string(n));
            c.expect(exists_balanced_rainbow_free(h, 2).status == SearchStatus::exhausted_no_witness,
                     "search status at n=" + std::to_string(n));
        }
        return c;
    }

    Check c33_example()
    {
        Check c;
        const auto col = c33_base();
        c.expect(class_sizes(col) == std::vector<std::uint64_t>{9, 9, 9}, "class sizes");
        const auto scan = scan_lines(col, LineKind::geometric);
        c.expect(scan.lines == 49, "enumerated " + std::to_string(scan.lines) + " lines");
        c.expect(scan.rainbow_count == 0, "rainbow line found");
        c.expect(oracle::brute_force_lines(3, 3, false).size() == 49, "brute-force line count");
        c.expect((oracle::ipow(5, 3) - oracle::ipow(3, 3)) / 2 == 49, "closed form");
        return c;
    }

    Check anti_latin()
    {
        Check c;
        for (std::uint32_t t = 4; t <= 12; ++t) {
            const auto sq = anti_latin_square(t);
            c.expect(is_anti_latin(sq), "not anti-Latin at t=" + std::to_string(t));
            c.expect(class_sizes(sq) == std::vector<std::uint64_t>(t, t), "symbol counts at t=" + std::to_string(t));
            c.expect(oracle::grid_rows_cols_diags_repeat(sq.colors(), t), "grid oracle at t=" + std::to_string(t));
        }
        return c;
    }

    Check line_count_law()
    {
        Check c;
        int shapes = 0;
        for (std::uint32_t t = 2; t <= 729; ++t)
            for (std::uint32_t n = 1; oracle::ipow(t, n) <= 729; ++n) {
                const auto s = cube_shape(t, n);
                const auto geo = (oracle::ipow(t + 2, n) - oracle::ipow(t, n)) / 2;
                const auto comb = oracle::ipow(t + 1, n) - oracle::ipow(t, n);
                std::uint64_t g = 0, k = 0;
                for_each_geometric_line(s, [&](const LinePattern &) { ++g; });
                for_each_combinatorial_line(s, [&](const LinePattern &) { ++k; });
                c.expect(g == geo && line_count(s, LineKind::geometric) == geo, "geometric count at " + shape_name(t, n));
                c.expect(k == comb && line_count(s, LineKind::combinatorial) == comb,
                         "combinatorial count at " + shape_name(t, n));
                ++shapes;
            }
        for (auto [t, n] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {3u, 3u}, {4u, 2u}}) {
            const auto s = cube_shape(t, n);
            for (auto kind : {LineKind::geometric, LineKind::combinatorial}) {
                std::set<std::vector<std::uint64_t>> enumerated;
                for_each_line(s, kind, [&](const LinePattern & lp) {
                    auto r = line_ranks(lp, s);
                    std::vector<std::uint64_t> ranks(r.begin(), r.end());
                    std::sort(ranks.begin(), ranks.end());
                    enumerated.insert(ranks);
                });
                c.expect(enumerated == oracle::brute_force_lines(t, n, kind == LineKind::combinatorial),
                         std::string(to_string(kind)) + " set differs from brute force at " + shape_name(t, n));
            }
        }
        if (c.ok)
            c.detail = std::to_string(shapes) + " shapes";
        return c;
    }

    Check ap_embedding()
    {
        Check c;
        std::uint64_t lines = 0;
        for (std::uint32_t t = 2; t <= 10000; ++t)
            for (std::uint32_t n = 1; oracle::ipow(t, n) <= 10000; ++n) {
                const auto s = cube_shape(t, n);
                bool good = true;
                for_each_geometric_line(s, [&](const LinePattern & lp) {
                    ++lines;
                    const auto pts = line_points(lp, s);
                    std::vector<std::int64_t> v;
                    for (const auto & p : pts)
                        v.push_back(static_cast<std::int64_t>(ap_embed(p, s)));
                    const auto d = v[1] - v[0];
                    good = d != 0 && d == ap_difference(lp, s);
                    for (std::size_t i = 1; good && i < v.size(); ++i)
                        good = v[i] - v[i - 1] == d && v[i] >= 1 && v[i] <= static_cast<std::int64_t>(s.size());
                    return good;
                });
                c.expect(good, "not an AP at " + shape_name(t, n));
            }
        if (c.ok)
            c.detail = std::to_string(lines) + " lines";
        return c;
    }

    Check chi_b_results()
    {
        Check c;
        const auto result = balanced_upper_chromatic(ap_hypergraph(12, 3));
        c.expect(result.value == 2, "value " + std::to_string(result.value));
        c.expect(result.certified, "uncertified");
        std::vector<std::uint32_t> exhausted;
        for (const auto & a : result.attempts)
            if (a.second.status == SearchStatus::exhausted_no_witness)
                exhausted.push_back(a.first);
        c.expect(exhausted == std::vector<std::uint32_t>{12, 6, 4, 3}, "exhausted k list");
        c.expect(result.witness && is_rainbow_free(*result.witness, ap_hypergraph(12, 3)) && is_balanced(*result.witness),
                 "witness");
        for (auto [t, n] : {std::pair{4u, 2u}, {4u, 3u}, {6u, 2u}, {6u, 3u}, {8u, 2u}})
            c.expect(chi_b_lower_bound_check(cube_shape(t, n)), "lower bound at " + shape_name(t, n));
        return c;
    }

    Check cnf_agreement()
    {
        Check c;
        struct Instance
        {
            std::uint32_t t, n, k;
        };
        for (auto [t, n, k] : {Instance{3, 2, 3}, Instance{2, 2, 2}, Instance{2, 3, 2}, Instance{4, 2, 4}}) {
            const auto h = line_hypergraph(cube_shape(t, n), LineKind::geometric);
            std::stringstream dimacs;
            export_cnf(h, k, dimacs);
            const auto model = solve_dpll(read_dimacs(dimacs));
            const auto outcome = exists_balanced_rainbow_free(h, k);
            const auto name = shape_name(t, n) + " k=" + std::to_string(k);
            c.expect(model.has_value() == (outcome.status == SearchStatus::witness_found), "disagreement at " + name);
            if (model) {
                const auto col = decode_model(*model, h.vertex_count, k);
                c.expect(is_balanced(col) && is_rainbow_free(col, h), "decoded model invalid at " + name);
            }
        }
        return c;
    }

    Check determinism()
    {
        Check c;
        const std::vector<std::pair<std::string, std::function<std::string(unsigned)>>> reports{
            {"halving", halving_report}, {"exception", exception_report}, {"chi-b", chi_b_report}};
        for (const auto & [name, report] : reports) {
            const auto ref = report(1);
            for (unsigned threads : {4u, 8u})
                c.expect(report(threads) == ref, name + " report differs at " + std::to_string(threads) + " threads");
        }
        return c;
    }

    struct Criterion
    {
        int id;
        std::string name;
        double limit_seconds; // 0 means untimed
        std::function<Check()> run;
    };
}

int main()
{
    const std::vector<Criterion> criteria{
        {1, "halving coloring balanced", 5, halving_balanced},
        {2, "halving coloring rainbow-free, g(x0)=g(x1)", 30, halving_rainbow_free},
        {3, "lift coloring balanced and rainbow-free", 30, lift_results},
        {4, "C_3^2 has no balanced rainbow-free 3-coloring", 1, three_by_two_exception},
        {5, "C_2^2, C_2^3 have no balanced rainbow-free 2-coloring", 1, two_colorings},
        {6, "C_3^3 example coloring", 1, c33_example},
        {7, "anti-Latin squares t=4..12", 1, anti_latin},
        {8, "line-count law and brute-force line sets", 0, line_count_law},
        {9, "AP embedding of geometric lines", 0, ap_embedding},
        {10, "balanced upper chromatic number of P_12^3 and lower bounds", 60, chi_b_results},
        {11, "CNF satisfiability agrees with search", 0, cnf_agreement},
        {12, "reports identical at 1, 4, 8 threads", 0, determinism},
    };

    int failures = 0;
    for (const auto & cr : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check result;
        try {
            result = cr.run();
        } catch (const std::exception & e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (result.ok && cr.limit_seconds > 0 && secs > cr.limit_seconds) {
            result.ok = false;
            result.detail = "over time limit of " + std::to_string(static_cast<int>(cr.limit_seconds)) + " s";
        }
        failures += !result.ok;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.3fs", secs);
        std::cout << (result.ok ? "[PASS]" : "[FAIL]") << " AC" << cr.id << " " << cr.name << " (" << timing << ")";
        if (!result.detail.empty())
            std::cout << ": " << result.detail;
        std::cout << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
