#pragma once

// Balancedness, rainbow and monochromatic line detection, anti-Latin checks and
// verification reports. All scans are exhaustive; parallel scans split the line
// stream by role prefix and merge in stream order, so results do not depend on
// the worker count.

#include <hjc/coloring.hpp>
#include <hjc/cube.hpp>
#include <hjc/parallel.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hjc
{

inline std::vector<std::uint64_t> class_sizes(const Coloring & c)
{
    std::vector<std::uint64_t> sizes(c.k(), 0);
    for (auto v : c.colors())
        ++sizes[v];
    return sizes;
}

inline bool is_balanced(const Coloring & c)
{
    if (c.vertex_count() % c.k() != 0)
        return false;
    auto sizes = class_sizes(c);
    return std::all_of(sizes.begin(), sizes.end(), [&](auto s) { return s == sizes.front(); });
}

/// True iff all entries are pairwise distinct. `k` bounds the entries.
inline bool all_distinct(std::span<const std::uint32_t> colors, std::uint32_t k)
{
    if (colors.size() > k)
        return false;
    if (k <= 64) {
        std::uint64_t seen = 0;
        for (auto c : colors) {
            const std::uint64_t bit = std::uint64_t{1} << c;
            if (seen & bit)
                return false;
            seen |= bit;
        }
        return true;
    }
    std::vector<std::uint32_t> sorted(colors.begin(), colors.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

inline bool all_equal(std::span<const std::uint32_t> colors)
{
    return std::all_of(colors.begin(), colors.end(), [&](auto c) { return c == colors.front(); });
}

/// A line or edge found by a scan. `index` is its position in the canonical line
/// stream (cube scans) or in the edge list (hypergraph scans).
struct Witness
{
    std::uint64_t index = 0;
    std::vector<std::uint64_t> vertices;
    std::optional<LinePattern> pattern;

    friend bool operator==(const Witness &, const Witness &) = default;
};

struct LineScan
{
    std::uint64_t lines = 0;
    std::uint64_t rainbow_count = 0;
    std::uint64_t mono_count = 0;
    std::optional<Witness> first_rainbow;
    std::optional<Witness> first_mono;
};

inline constexpr std::uint32_t scan_prefix_depth = 2;

namespace detail
{
    inline Witness cube_witness(std::uint64_t index, const LinePattern & lp, const CubeShape & s)
    {
        auto ranks = line_ranks(lp, s);
        return Witness{index, {ranks.begin(), ranks.end()}, lp};
    }

    // Merges chunk results in order; witness indices in `part` are chunk-local.
    inline void merge_scan(LineScan & into, const LineScan & part)
    {
        auto shifted = [&](const std::optional<Witness> & w) {
            auto out = w;
            out->index += into.lines;
            return out;
        };
        if (!into.first_rainbow && part.first_rainbow)
            into.first_rainbow = shifted(part.first_rainbow);
        if (!into.first_mono && part.first_mono)
            into.first_mono = shifted(part.first_mono);
        into.lines += part.lines;
        into.rainbow_count += part.rainbow_count;
        into.mono_count += part.mono_count;
    }
}

/// Full scan of every canonical line of the given kind.
inline LineScan scan_lines(const Coloring & c, LineKind kind, unsigned threads = 1)
{
    const auto & s = c.cube();
    const auto prefixes = line_prefixes(s, kind, scan_prefix_depth);
    std::vector<LineScan> parts(prefixes.size());
    parallel_for(prefixes.size(), threads, [&](std::size_t p) {
        LineScan & part = parts[p];
        std::vector<std::uint32_t> colors(s.t());
        for_each_line(s, kind, prefixes[p], [&](const LinePattern & lp) {
            const auto prog = line_progression(lp, s);
            for (std::uint32_t i = 0; i < s.t(); ++i)
                colors[i] = c[prog.at(i)];
            if (all_distinct(colors, c.k())) {
                if (part.rainbow_count++ == 0)
                    part.first_rainbow = detail::cube_witness(part.lines, lp, s);
            }
            if (all_equal(colors)) {
                if (part.mono_count++ == 0)
                    part.first_mono = detail::cube_witness(part.lines, lp, s);
            }
            ++part.lines;
        });
    });
    LineScan total;
    for (const auto & part : parts)
        detail::merge_scan(total, part);
    return total;
}

/// Full scan of the edges of a hypergraph on the coloring's vertex set.
inline LineScan scan_edges(const Coloring & c, const Hypergraph & h, unsigned threads = 1)
{
    if (h.vertex_count != c.vertex_count())
        throw std::invalid_argument("hypergraph has " + std::to_string(h.vertex_count) + " vertices, coloring has " +
                                    std::to_string(c.vertex_count()));
    constexpr std::size_t chunk = 4096;
    const std::size_t chunks = (h.edges.size() + chunk - 1) / chunk;
    std::vector<LineScan> parts(chunks);
    parallel_for(chunks, threads, [&](std::size_t p) {
        LineScan & part = parts[p];
        std::vector<std::uint32_t> colors;
        const std::size_t end = std::min(h.edges.size(), (p + 1) * chunk);
        for (std::size_t e = p * chunk; e < end; ++e) {
            const auto & edge = h.edges[e];
            colors.resize(edge.size());
            for (std::size_t i = 0; i < edge.size(); ++i)
                colors[i] = c[edge[i]];
            auto witness = [&] { return Witness{part.lines, {edge.begin(), edge.end()}, std::nullopt}; };
            if (all_distinct(colors, c.k()) && part.rainbow_count++ == 0)
                part.first_rainbow = witness();
            if (all_equal(colors) && part.mono_count++ == 0)
                part.first_mono = witness();
            ++part.lines;
        }
    });
    LineScan total;
    for (const auto & part : parts)
        detail::merge_scan(total, part);
    return total;
}

/// First rainbow line in canonical order; stops at the first hit.
inline std::optional<Witness> find_rainbow_line(const Coloring & c, LineKind kind)
{
    const auto & s = c.cube();
    if (c.k() < s.t())
        return std::nullopt;
    std::optional<Witness> found;
    std::uint64_t index = 0;
    std::vector<std::uint32_t> colors(s.t());
    for_each_line(s, kind, [&](const LinePattern & lp) {
        const auto prog = line_progression(lp, s);
        for (std::uint32_t i = 0; i < s.t(); ++i)
            colors[i] = c[prog.at(i)];
        if (all_distinct(colors, c.k())) {
            found = detail::cube_witness(index, lp, s);
            return false;
        }
        ++index;
        return true;
    });
    return found;
}

inline std::optional<Witness> find_monochromatic_line(const Coloring & c, LineKind kind)
{
    const auto & s = c.cube();
    std::optional<Witness> found;
    std::uint64_t index = 0;
    std::vector<std::uint32_t> colors(s.t());
    for_each_line(s, kind, [&](const LinePattern & lp) {
        const auto prog = line_progression(lp, s);
        for (std::uint32_t i = 0; i < s.t(); ++i)
            colors[i] = c[prog.at(i)];
        if (all_equal(colors)) {
            found = detail::cube_witness(index, lp, s);
            return false;
        }
        ++index;
        return true;
    });
    return found;
}

inline std::uint64_t count_rainbow_lines(const Coloring & c, LineKind kind, unsigned threads = 1)
{
    if (c.k() < c.cube().t())
        return 0;
    return scan_lines(c, kind, threads).rainbow_count;
}

inline bool is_rainbow_free(const Coloring & c, LineKind kind) { return !find_rainbow_line(c, kind); }

inline std::uint64_t count_rainbow_edges(const Coloring & c, const Hypergraph & h, unsigned threads = 1)
{
    return scan_edges(c, h, threads).rainbow_count;
}

inline bool is_rainbow_free(const Coloring & c, const Hypergraph & h)
{
    if (h.vertex_count != c.vertex_count())
        throw std::invalid_argument("hypergraph and coloring disagree on the vertex count");
    std::vector<std::uint32_t> colors;
    for (const auto & edge : h.edges) {
        colors.resize(edge.size());
        for (std::size_t i = 0; i < edge.size(); ++i)
            colors[i] = c[edge[i]];
        if (all_distinct(colors, c.k()))
            return false;
    }
    return true;
}

/// Balanced t-coloring of C_t^2 whose rows, columns and both diagonals each show
/// at most t-1 distinct symbols.
inline bool is_anti_latin(const Coloring & c)
{
    const auto & s = c.cube();
    if (s.n() != 2)
        throw std::invalid_argument("anti-Latin check needs a 2-dimensional cube");
    if (c.k() != s.t() || !is_balanced(c))
        return false;
    return is_rainbow_free(c, LineKind::geometric);
}

// ---------------------------------------------------------------------------
// Reports

struct VerifyReport
{
    std::string domain;
    std::string kind;
    std::uint64_t vertex_count = 0;
    std::uint32_t k = 0;
    std::vector<std::uint64_t> class_sizes;
    bool balanced = false;
    std::uint64_t lines = 0;
    std::uint64_t rainbow_count = 0;
    std::optional<Witness> rainbow_witness;
    std::uint64_t mono_count = 0;
    std::optional<Witness> mono_witness;
};

namespace detail
{
    inline VerifyReport base_report(const Coloring & c, const LineScan & scan)
    {
        VerifyReport r;
        r.vertex_count = c.vertex_count();
        r.k = c.k();
        r.class_sizes = class_sizes(c);
        r.balanced = is_balanced(c);
        r.lines = scan.lines;
        r.rainbow_count = scan.rainbow_count;
        r.rainbow_witness = scan.first_rainbow;
        r.mono_count = scan.mono_count;
        r.mono_witness = scan.first_mono;
        return r;
    }
}

inline VerifyReport verify_report(const Coloring & c, LineKind kind, unsigned threads = 1)
{
    auto r = detail::base_report(c, scan_lines(c, kind, threads));
    r.domain = "cube t=" + std::to_string(c.cube().t()) + " n=" + std::to_string(c.cube().n());
    r.kind = std::string(to_string(kind));
    return r;
}

inline VerifyReport verify_report(const Coloring & c, const Hypergraph & h, unsigned threads = 1)
{
    auto r = detail::base_report(c, scan_edges(c, h, threads));
    r.domain = "hypergraph N=" + std::to_string(h.vertex_count) + " M=" + std::to_string(h.edges.size());
    r.kind = "edges";
    return r;
}

inline nlohmann::ordered_json to_json(const Witness & w)
{
    nlohmann::ordered_json j;
    j["index"] = w.index;
    if (w.pattern)
        j["pattern"] = format_pattern(*w.pattern);
    j["vertices"] = w.vertices;
    return j;
}

inline nlohmann::ordered_json to_json(const VerifyReport & r)
{
    nlohmann::ordered_json j;
    j["domain"] = r.domain;
    j["kind"] = r.kind;
    j["vertices"] = r.vertex_count;
    j["k"] = r.k;
    j["class_sizes"] = r.class_sizes;
    j["balanced"] = r.balanced;
    j["lines"] = r.lines;
    j["rainbow_count"] = r.rainbow_count;
    j["mono_count"] = r.mono_count;
    j["witness"] = r.rainbow_witness ? to_json(*r.rainbow_witness) : nlohmann::ordered_json(nullptr);
    j["mono_witness"] = r.mono_witness ? to_json(*r.mono_witness) : nlohmann::ordered_json(nullptr);
    return j;
}

} // namespace hjc
