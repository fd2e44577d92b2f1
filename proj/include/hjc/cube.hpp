#pragma once

// Points, lines and hypergraphs of the n-cube C_t^n over the alphabet [0, t-1].

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace hjc
{

using PointRank = std::uint64_t;

enum class LineKind
{
    geometric,
    combinatorial
};

inline std::string_view to_string(LineKind kind)
{
    return kind == LineKind::geometric ? "geometric" : "combinatorial";
}

inline LineKind parse_line_kind(std::string_view s)
{
    if (s == "geometric")
        return LineKind::geometric;
    if (s == "combinatorial")
        return LineKind::combinatorial;
    throw std::invalid_argument("unknown line kind '" + std::string(s) + "'");
}

/// The pair (t, n). Cardinality t^n is kept below 2^63.
class CubeShape
{
  public:
    static constexpr std::uint64_t max_cardinality = std::numeric_limits<std::int64_t>::max();

    CubeShape(std::uint32_t t, std::uint32_t n) : t_(t), n_(n)
    {
        if (t < 2)
            throw std::invalid_argument("cube alphabet size t must be >= 2");
        if (n < 1)
            throw std::invalid_argument("cube dimension n must be >= 1");
        weights_.assign(n, 1);
        std::uint64_t size = 1;
        for (std::uint32_t j = 0; j < n; ++j) {
            weights_[n - 1 - j] = size;
            if (size > max_cardinality / t)
                throw std::overflow_error("t^n exceeds the 63-bit range for t=" + std::to_string(t) +
                                          ", n=" + std::to_string(n));
            size *= t;
        }
        size_ = size;
    }

    std::uint32_t t() const noexcept { return t_; }
    std::uint32_t n() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return size_; }

    // Positional weight t^(n-1-j) of 0-based coordinate j; coordinate 0 (x_1) is most significant.
    std::uint64_t weight(std::uint32_t j) const { return weights_.at(j); }

    friend bool operator==(const CubeShape & a, const CubeShape & b) noexcept
    {
        return a.t_ == b.t_ && a.n_ == b.n_;
    }

  private:
    std::uint32_t t_;
    std::uint32_t n_;
    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> weights_;
};

inline CubeShape cube_shape(std::uint32_t t, std::uint32_t n) { return CubeShape(t, n); }

struct Point
{
    std::vector<std::uint32_t> digits;

    friend bool operator==(const Point &, const Point &) = default;
};

inline void check_point(const Point & p, const CubeShape & s)
{
    if (p.digits.size() != s.n())
        throw std::invalid_argument("point has " + std::to_string(p.digits.size()) + " digits, expected " +
                                    std::to_string(s.n()));
    for (auto d : p.digits)
        if (d >= s.t())
            throw std::invalid_argument("digit " + std::to_string(d) + " outside [0, " + std::to_string(s.t() - 1) +
                                        "]");
}

inline PointRank rank(const Point & p, const CubeShape & s)
{
    check_point(p, s);
    PointRank r = 0;
    for (auto d : p.digits)
        r = r * s.t() + d;
    return r;
}

inline Point unrank(PointRank r, const CubeShape & s)
{
    if (r >= s.size())
        throw std::out_of_range("rank " + std::to_string(r) + " outside [0, " + std::to_string(s.size() - 1) + "]");
    Point p;
    p.digits.assign(s.n(), 0);
    for (std::uint32_t j = s.n(); j-- > 0;) {
        p.digits[j] = static_cast<std::uint32_t>(r % s.t());
        r /= s.t();
    }
    return p;
}

/// Digits concatenated ("012") when t <= 10, otherwise space separated.
inline std::string format_point(const Point & p, std::uint32_t t)
{
    std::string out;
    for (std::size_t j = 0; j < p.digits.size(); ++j) {
        if (t > 10 && j > 0)
            out += ' ';
        out += std::to_string(p.digits[j]);
    }
    return out;
}

inline Point parse_point(std::string_view text, const CubeShape & s)
{
    Point p;
    if (text.find_first_of(" ,") != std::string_view::npos) {
        std::string buf(text);
        std::replace(buf.begin(), buf.end(), ',', ' ');
        std::istringstream in(buf);
        long long d;
        while (in >> d) {
            if (d < 0)
                throw std::invalid_argument("negative digit in point '" + std::string(text) + "'");
            p.digits.push_back(static_cast<std::uint32_t>(d));
        }
        if (!in.eof())
            throw std::invalid_argument("malformed point '" + std::string(text) + "'");
    }
    else {
        for (char ch : text) {
            if (ch < '0' || ch > '9')
                throw std::invalid_argument("malformed point '" + std::string(text) + "'");
            p.digits.push_back(static_cast<std::uint32_t>(ch - '0'));
        }
    }
    check_point(p, s);
    return p;
}

// ---------------------------------------------------------------------------
// Line patterns

struct LineRole
{
    enum class Kind : std::uint8_t
    {
        fixed,
        forward,
        backward
    };

    Kind kind = Kind::fixed;
    std::uint32_t value = 0; // only meaningful for fixed

    static constexpr LineRole fixed(std::uint32_t c) { return {Kind::fixed, c}; }
    static constexpr LineRole forward() { return {Kind::forward, 0}; }
    static constexpr LineRole backward() { return {Kind::backward, 0}; }

    bool moving() const noexcept { return kind != Kind::fixed; }

    friend bool operator==(const LineRole &, const LineRole &) = default;
};

/// Per-coordinate description of a geometric line. Point i of the line carries
/// c on Fixed(c) coordinates, i on Forward ones and t-1-i on Backward ones.
struct LinePattern
{
    std::vector<LineRole> roles;

    bool has_moving() const
    {
        return std::any_of(roles.begin(), roles.end(), [](const LineRole & r) { return r.moving(); });
    }

    bool is_combinatorial() const
    {
        return std::none_of(roles.begin(), roles.end(),
                            [](const LineRole & r) { return r.kind == LineRole::Kind::backward; });
    }

    // First moving coordinate is Forward.
    bool is_canonical() const
    {
        for (const auto & r : roles)
            if (r.moving())
                return r.kind == LineRole::Kind::forward;
        return false;
    }

    // Same point set traversed in the opposite order.
    LinePattern reversed() const
    {
        LinePattern out = *this;
        for (auto & r : out.roles) {
            if (r.kind == LineRole::Kind::forward)
                r.kind = LineRole::Kind::backward;
            else if (r.kind == LineRole::Kind::backward)
                r.kind = LineRole::Kind::forward;
        }
        return out;
    }

    LinePattern canonical() const { return is_canonical() ? *this : reversed(); }

    friend bool operator==(const LinePattern &, const LinePattern &) = default;
};

inline void check_pattern(const LinePattern & lp, const CubeShape & s)
{
    if (lp.roles.size() != s.n())
        throw std::invalid_argument("line pattern has " + std::to_string(lp.roles.size()) + " roles, expected " +
                                    std::to_string(s.n()));
    for (const auto & r : lp.roles)
        if (r.kind == LineRole::Kind::fixed && r.value >= s.t())
            throw std::invalid_argument("fixed value " + std::to_string(r.value) + " outside the alphabet");
    if (!lp.has_moving())
        throw std::invalid_argument("line pattern has no moving coordinate");
}

/// Coordinate codes joined by commas: "F", "B" or "=c". Example: "=2,F".
inline std::string format_pattern(const LinePattern & lp)
{
    std::string out;
    for (std::size_t j = 0; j < lp.roles.size(); ++j) {
        if (j > 0)
            out += ',';
        switch (lp.roles[j].kind) {
        case LineRole::Kind::forward: out += 'F'; break;
        case LineRole::Kind::backward: out += 'B'; break;
        case LineRole::Kind::fixed: out += '=' + std::to_string(lp.roles[j].value); break;
        }
    }
    return out;
}

inline LinePattern parse_pattern(std::string_view text)
{
    LinePattern lp;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        auto tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (tok == "F")
            lp.roles.push_back(LineRole::forward());
        else if (tok == "B")
            lp.roles.push_back(LineRole::backward());
        else if (tok.size() >= 2 && tok[0] == '=' &&
                 std::all_of(tok.begin() + 1, tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
            lp.roles.push_back(LineRole::fixed(static_cast<std::uint32_t>(std::stoul(std::string(tok.substr(1))))));
        else
            throw std::invalid_argument("malformed line pattern token '" + std::string(tok) + "'");
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return lp;
}

/// Ranks of a line's points form the progression base + i * step, i in [0, t-1].
struct LineProgression
{
    PointRank base = 0;
    std::int64_t step = 0;

    PointRank at(std::uint32_t i) const
    {
        return static_cast<PointRank>(static_cast<std::int64_t>(base) + static_cast<std::int64_t>(i) * step);
    }
};

inline LineProgression line_progression(const LinePattern & lp, const CubeShape & s)
{
    std::uint64_t base = 0, fwd = 0, bwd = 0;
    for (std::uint32_t j = 0; j < s.n(); ++j) {
        const auto & r = lp.roles[j];
        const auto w = s.weight(j);
        switch (r.kind) {
        case LineRole::Kind::fixed: base += r.value * w; break;
        case LineRole::Kind::forward: fwd += w; break;
        case LineRole::Kind::backward: bwd += w; break;
        }
    }
    // point i = base + i*fwd + (t-1-i)*bwd
    return {base + (s.t() - 1) * bwd, static_cast<std::int64_t>(fwd) - static_cast<std::int64_t>(bwd)};
}

inline std::vector<Point> line_points(const LinePattern & lp, const CubeShape & s)
{
    check_pattern(lp, s);
    std::vector<Point> pts(s.t());
    for (std::uint32_t i = 0; i < s.t(); ++i) {
        auto & d = pts[i].digits;
        d.reserve(s.n());
        for (const auto & r : lp.roles) {
            switch (r.kind) {
            case LineRole::Kind::fixed: d.push_back(r.value); break;
            case LineRole::Kind::forward: d.push_back(i); break;
            case LineRole::Kind::backward: d.push_back(s.t() - 1 - i); break;
            }
        }
    }
    return pts;
}

inline std::vector<PointRank> line_ranks(const LinePattern & lp, const CubeShape & s)
{
    auto prog = line_progression(lp, s);
    std::vector<PointRank> out(s.t());
    for (std::uint32_t i = 0; i < s.t(); ++i)
        out[i] = prog.at(i);
    return out;
}

// ---------------------------------------------------------------------------
// Streaming enumeration
//
// Role codes per coordinate are ordered Fixed(0) < ... < Fixed(t-1) < Forward < Backward
// and patterns are emitted lexicographically with x_1 most significant. A prefix of
// roles selects a contiguous block of that order, so the blocks of all prefixes of a
// given length, taken in lexicographic order, reproduce the full stream.

namespace detail
{
    template <typename F>
    bool enumerate_lines(const CubeShape & s, LineKind kind, LinePattern & lp, std::uint32_t j, bool moving, F & f)
    {
        if (j == s.n()) {
            if (!moving)
                return true;
            if constexpr (std::is_same_v<std::invoke_result_t<F &, const LinePattern &>, bool>)
                return f(std::as_const(lp));
            else {
                f(std::as_const(lp));
                return true;
            }
        }
        for (std::uint32_t c = 0; c < s.t(); ++c) {
            lp.roles[j] = LineRole::fixed(c);
            if (!enumerate_lines(s, kind, lp, j + 1, moving, f))
                return false;
        }
        lp.roles[j] = LineRole::forward();
        if (!enumerate_lines(s, kind, lp, j + 1, true, f))
            return false;
        if (kind == LineKind::geometric && moving) {
            lp.roles[j] = LineRole::backward();
            if (!enumerate_lines(s, kind, lp, j + 1, true, f))
                return false;
        }
        return true;
    }

    inline bool valid_prefix(const std::vector<LineRole> & prefix, const CubeShape & s, LineKind kind, bool & moving)
    {
        moving = false;
        if (prefix.size() > s.n())
            return false;
        for (const auto & r : prefix) {
            if (r.kind == LineRole::Kind::fixed && r.value >= s.t())
                return false;
            if (r.kind == LineRole::Kind::backward && (kind == LineKind::combinatorial || !moving))
                return false;
            moving = moving || r.moving();
        }
        return true;
    }
}

/// Calls f(pattern) for every canonical line whose leading roles equal `prefix`.
/// If f returns bool, returning false stops the scan; the return value reports
/// whether the scan ran to completion.
template <typename F>
bool for_each_line(const CubeShape & s, LineKind kind, const std::vector<LineRole> & prefix, F && f)
{
    bool moving = false;
    if (!detail::valid_prefix(prefix, s, kind, moving))
        throw std::invalid_argument("invalid line prefix");
    LinePattern lp;
    lp.roles.assign(s.n(), LineRole::fixed(0));
    std::copy(prefix.begin(), prefix.end(), lp.roles.begin());
    return detail::enumerate_lines(s, kind, lp, static_cast<std::uint32_t>(prefix.size()), moving, f);
}

template <typename F>
bool for_each_line(const CubeShape & s, LineKind kind, F && f)
{
    return for_each_line(s, kind, {}, std::forward<F>(f));
}

template <typename F>
bool for_each_geometric_line(const CubeShape & s, F && f)
{
    return for_each_line(s, LineKind::geometric, {}, std::forward<F>(f));
}

template <typename F>
bool for_each_combinatorial_line(const CubeShape & s, F && f)
{
    return for_each_line(s, LineKind::combinatorial, {}, std::forward<F>(f));
}

/// All admissible role prefixes of length min(depth, n), in stream order.
inline std::vector<std::vector<LineRole>> line_prefixes(const CubeShape & s, LineKind kind, std::uint32_t depth)
{
    depth = std::min(depth, s.n());
    std::vector<std::vector<LineRole>> out{{}};
    for (std::uint32_t j = 0; j < depth; ++j) {
        std::vector<std::vector<LineRole>> next;
        for (const auto & p : out) {
            bool moving = std::any_of(p.begin(), p.end(), [](const LineRole & r) { return r.moving(); });
            auto push = [&](LineRole r) {
                next.push_back(p);
                next.back().push_back(r);
            };
            for (std::uint32_t c = 0; c < s.t(); ++c)
                push(LineRole::fixed(c));
            push(LineRole::forward());
            if (kind == LineKind::geometric && moving)
                push(LineRole::backward());
        }
        out = std::move(next);
    }
    return out;
}

namespace detail
{
    inline std::uint64_t checked_pow(std::uint64_t b, std::uint32_t e)
    {
        std::uint64_t r = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            if (r > std::numeric_limits<std::uint64_t>::max() / b)
                throw std::overflow_error("line count overflows 64 bits");
            r *= b;
        }
        return r;
    }
}

/// ((t+2)^n - t^n) / 2 geometric, (t+1)^n - t^n combinatorial.
inline std::uint64_t line_count(const CubeShape & s, LineKind kind)
{
    if (kind == LineKind::geometric)
        return (detail::checked_pow(s.t() + 2, s.n()) - s.size()) / 2;
    return detail::checked_pow(s.t() + 1, s.n()) - s.size();
}

// ---------------------------------------------------------------------------
// Arithmetic-progression embedding into [1, t^n]

inline std::uint64_t ap_embed(const Point & p, const CubeShape & s) { return rank(p, s) + 1; }

/// Common difference of the embedded line: signed sum of Forward/Backward weights.
inline std::int64_t ap_difference(const LinePattern & lp, const CubeShape & s)
{
    check_pattern(lp, s);
    return line_progression(lp, s).step;
}

// ---------------------------------------------------------------------------
// Hypergraphs

struct Hypergraph
{
    std::uint32_t vertex_count = 0;
    std::vector<std::vector<std::uint32_t>> edges;

    friend bool operator==(const Hypergraph &, const Hypergraph &) = default;
};

/// Checks edges are nonempty, strictly increasing, in range and pairwise distinct.
inline void validate(const Hypergraph & h)
{
    for (const auto & e : h.edges) {
        if (e.empty())
            throw std::invalid_argument("hypergraph edge is empty");
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] >= h.vertex_count)
                throw std::invalid_argument("hypergraph vertex " + std::to_string(e[i]) + " out of range");
            if (i > 0 && e[i - 1] >= e[i])
                throw std::invalid_argument("hypergraph edge is not strictly increasing");
        }
    }
    auto sorted = h.edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("hypergraph has a duplicate edge");
}

inline constexpr std::uint64_t default_edge_cap = 100'000'000;

inline Hypergraph line_hypergraph(const CubeShape & s, LineKind kind, std::uint64_t edge_cap = default_edge_cap)
{
    if (s.size() > std::numeric_limits<std::uint32_t>::max())
        throw std::overflow_error("cube too large to materialize as a hypergraph");
    if (line_count(s, kind) > edge_cap)
        throw std::length_error("line hypergraph would exceed the edge cap of " + std::to_string(edge_cap));
    Hypergraph h;
    h.vertex_count = static_cast<std::uint32_t>(s.size());
    h.edges.reserve(line_count(s, kind));
    for_each_line(s, kind, [&](const LinePattern & lp) {
        auto prog = line_progression(lp, s);
        std::vector<std::uint32_t> e(s.t());
        for (std::uint32_t i = 0; i < s.t(); ++i)
            e[i] = static_cast<std::uint32_t>(prog.at(i));
        if (prog.step < 0)
            std::reverse(e.begin(), e.end());
        h.edges.push_back(std::move(e));
    });
    return h;
}

/// P_n^t: vertices 1..n (stored as 0..n-1), one edge per t-term progression with d >= 1.
inline Hypergraph ap_hypergraph(std::uint32_t n, std::uint32_t t)
{
    if (t < 3)
        throw std::invalid_argument("progression length t must be >= 3");
    if (n < t)
        throw std::invalid_argument("ap_hypergraph requires n >= t");
    Hypergraph h;
    h.vertex_count = n;
    for (std::uint32_t d = 1; (t - 1) * d < n; ++d)
        for (std::uint32_t a = 0; a + (t - 1) * d < n; ++a) {
            std::vector<std::uint32_t> e(t);
            for (std::uint32_t i = 0; i < t; ++i)
                e[i] = a + i * d;
            h.edges.push_back(std::move(e));
        }
    return h;
}

// Text format: "N M", then M lines "k v_1 ... v_k".
inline void write_hypergraph(std::ostream & out, const Hypergraph & h)
{
    out << h.vertex_count << ' ' << h.edges.size() << '\n';
    for (const auto & e : h.edges) {
        out << e.size();
        for (auto v : e)
            out << ' ' << v;
        out << '\n';
    }
}

inline Hypergraph read_hypergraph(std::istream & in)
{
    long long n = -1, m = -1;
    if (!(in >> n >> m) || n < 0 || m < 0 || n > std::numeric_limits<std::uint32_t>::max())
        throw std::runtime_error("malformed hypergraph header");
    Hypergraph h;
    h.vertex_count = static_cast<std::uint32_t>(n);
    h.edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long k = 0;
        if (!(in >> k) || k < 1)
            throw std::runtime_error("malformed hypergraph edge " + std::to_string(i));
        std::vector<std::uint32_t> e(static_cast<std::size_t>(k));
        for (auto & v : e) {
            long long x = -1;
            if (!(in >> x) || x < 0 || x >= n)
                throw std::runtime_error("bad vertex in hypergraph edge " + std::to_string(i));
            v = static_cast<std::uint32_t>(x);
        }
        h.edges.push_back(std::move(e));
    }
    std::string extra;
    if (in >> extra)
        throw std::runtime_error("trailing data after hypergraph edges");
    try {
        validate(h);
    }
    catch (const std::invalid_argument & e) {
        throw std::runtime_error(e.what());
    }
    return h;
}

} // namespace hjc
