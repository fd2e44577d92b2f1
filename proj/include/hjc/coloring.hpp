#pragma once

// Colorings of cubes and plain vertex sets, the constructions that produce
// balanced rainbow-free colorings, and the coloring text format.

#include <hjc/cube.hpp>

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hjc
{

/// A surjective map from vertices (cube points in rank order, or 0..N-1) to [0, k-1].
class Coloring
{
  public:
    Coloring(CubeShape shape, std::uint32_t k, std::vector<std::uint32_t> colors) :
        shape_(std::move(shape)), vertex_count_(shape_->size()), k_(k), colors_(std::move(colors))
    {
        check();
    }

    Coloring(std::uint64_t vertex_count, std::uint32_t k, std::vector<std::uint32_t> colors) :
        vertex_count_(vertex_count), k_(k), colors_(std::move(colors))
    {
        check();
    }

    const std::optional<CubeShape> & shape() const noexcept { return shape_; }
    bool is_cube() const noexcept { return shape_.has_value(); }

    const CubeShape & cube() const
    {
        if (!shape_)
            throw std::logic_error("coloring is not defined over a cube");
        return *shape_;
    }

    std::uint64_t vertex_count() const noexcept { return vertex_count_; }
    std::uint32_t k() const noexcept { return k_; }
    const std::vector<std::uint32_t> & colors() const noexcept { return colors_; }

    std::uint32_t operator[](PointRank r) const { return colors_[r]; }
    std::uint32_t color_of(const Point & p) const { return colors_[rank(p, cube())]; }

    friend bool operator==(const Coloring &, const Coloring &) = default;

  private:
    void check() const
    {
        if (k_ < 1)
            throw std::invalid_argument("coloring needs k >= 1");
        if (colors_.size() != vertex_count_)
            throw std::invalid_argument("coloring has " + std::to_string(colors_.size()) + " entries, expected " +
                                        std::to_string(vertex_count_));
        std::vector<bool> used(k_, false);
        for (auto c : colors_) {
            if (c >= k_)
                throw std::invalid_argument("color " + std::to_string(c) + " outside [0, " + std::to_string(k_ - 1) +
                                            "]");
            used[c] = true;
        }
        for (std::uint32_t c = 0; c < k_; ++c)
            if (!used[c])
                throw std::invalid_argument("color " + std::to_string(c) + " is unused (colorings are surjective)");
    }

    std::optional<CubeShape> shape_;
    std::uint64_t vertex_count_ = 0;
    std::uint32_t k_ = 0;
    std::vector<std::uint32_t> colors_;
};

namespace detail
{
    // Colorings are materialized, so N must fit comfortably in memory.
    inline constexpr std::uint64_t max_materialized = std::uint64_t{1} << 32;

    inline void check_materializable(const CubeShape & s)
    {
        if (s.size() > max_materialized)
            throw std::length_error("cube with " + std::to_string(s.size()) + " points is too large to color densely");
    }
}

// ---------------------------------------------------------------------------
// Halving coloring: g(x) = sum_i (t/2)^(i-1) * floor(x_i / 2), k = (t/2)^n, classes of size 2^n.

inline std::uint32_t halving_color(const Point & p, const CubeShape & s)
{
    check_point(p, s);
    std::uint64_t color = 0, scale = 1;
    for (auto d : p.digits) {
        color += scale * (d / 2);
        scale *= s.t() / 2;
    }
    return static_cast<std::uint32_t>(color);
}

inline Coloring halving_coloring(const CubeShape & s, bool allow_degenerate = false)
{
    const auto t = s.t();
    if (t % 2 != 0)
        throw std::invalid_argument("halving coloring needs an even alphabet size, got t=" + std::to_string(t));
    if (t == 2 && !allow_degenerate)
        throw std::invalid_argument("halving coloring at t=2 is the degenerate 1-coloring; pass the degenerate flag");
    const std::uint64_t half = t / 2;
    std::uint64_t k = 1;
    for (std::uint32_t i = 0; i < s.n(); ++i) {
        if (k > std::numeric_limits<std::uint32_t>::max() / half)
            throw std::overflow_error("(t/2)^n colors exceed the 32-bit color range");
        k *= half;
    }
    detail::check_materializable(s);

    // Digit j (0-based, x_{j+1}) contributes (t/2)^j * floor(x/2); the rank weight of j is t^(n-1-j).
    std::vector<std::uint32_t> colors(s.size());
    std::vector<std::uint32_t> digits(s.n(), 0);
    std::vector<std::uint64_t> scale(s.n(), 1);
    for (std::uint32_t j = 1; j < s.n(); ++j)
        scale[j] = scale[j - 1] * half;
    std::uint64_t color = 0;
    for (std::uint64_t r = 0; r < s.size(); ++r) {
        colors[r] = static_cast<std::uint32_t>(color);
        for (std::uint32_t j = s.n(); j-- > 0;) {
            color -= scale[j] * (digits[j] / 2);
            if (++digits[j] < t) {
                color += scale[j] * (digits[j] / 2);
                break;
            }
            digits[j] = 0;
        }
    }
    return Coloring(s, static_cast<std::uint32_t>(k), std::move(colors));
}

// ---------------------------------------------------------------------------
// The balanced rainbow-free 3-coloring of C_3^3.

inline Coloring c33_base()
{
    static constexpr std::array<std::array<const char *, 9>, 3> classes{{
        {"000", "002", "020", "200", "220", "022", "202", "222", "001"},
        {"011", "021", "101", "201", "111", "221", "010", "210", "012"},
        {"100", "110", "120", "121", "211", "102", "112", "122", "212"},
    }};
    const CubeShape s(3, 3);
    std::vector<std::uint32_t> colors(s.size(), 3);
    for (std::uint32_t c = 0; c < 3; ++c)
        for (const char * word : classes[c])
            colors[rank(parse_point(word, s), s)] = c;
    return Coloring(s, 3, std::move(colors));
}

// ---------------------------------------------------------------------------
// Anti-Latin squares

namespace detail
{
    using Grid = std::vector<std::vector<std::uint32_t>>;

    // A_t -> A_{t+1}: A_t moves to rows 0..t-1, columns 1..t. The new symbol s = t fills
    // column 0 except row t-1 (which takes old symbol t-1), plus the corner (t, t);
    // row t holds old symbols 0..t-2 in columns 1..t-1.
    inline Grid extend_anti_latin(const Grid & a)
    {
        const auto t = static_cast<std::uint32_t>(a.size());
        const std::uint32_t s = t;
        Grid g(t + 1, std::vector<std::uint32_t>(t + 1, 0));
        for (std::uint32_t r = 0; r < t; ++r)
            for (std::uint32_t c = 0; c < t; ++c)
                g[r][c + 1] = a[r][c];
        for (std::uint32_t r = 0; r + 1 < t; ++r)
            g[r][0] = s;
        g[t - 1][0] = t - 1;
        g[t][0] = s;
        for (std::uint32_t j = 1; j < t; ++j)
            g[t][j] = j - 1;
        g[t][t] = s;
        return g;
    }

    inline bool grid_is_anti_latin(const Grid & g)
    {
        const auto t = static_cast<std::uint32_t>(g.size());
        std::vector<std::uint32_t> count(t, 0);
        for (const auto & row : g) {
            if (row.size() != t)
                return false;
            for (auto v : row) {
                if (v >= t)
                    return false;
                ++count[v];
            }
        }
        for (auto c : count)
            if (c != t)
                return false;

        std::vector<std::uint32_t> cells(t);
        auto rainbow = [&] {
            std::vector<bool> seen(t, false);
            for (auto v : cells) {
                if (seen[v])
                    return false;
                seen[v] = true;
            }
            return true;
        };
        for (std::uint32_t i = 0; i < t; ++i) {
            for (std::uint32_t j = 0; j < t; ++j)
                cells[j] = g[i][j];
            if (rainbow())
                return false;
            for (std::uint32_t j = 0; j < t; ++j)
                cells[j] = g[j][i];
            if (rainbow())
                return false;
        }
        for (std::uint32_t i = 0; i < t; ++i)
            cells[i] = g[i][i];
        if (rainbow())
            return false;
        for (std::uint32_t i = 0; i < t; ++i)
            cells[i] = g[i][t - 1 - i];
        return !rainbow();
    }
}

/// Balanced rainbow-free t-coloring of C_t^2, grown from the 4x4 base by adding a
/// left column and a bottom row per step. Validates its own output.
inline Coloring anti_latin_square(std::uint32_t t)
{
    if (t < 4)
        throw std::invalid_argument("anti-Latin squares need t >= 4");
    detail::Grid g{{0, 0, 2, 2}, {0, 0, 2, 2}, {1, 1, 3, 3}, {1, 1, 3, 3}};
    while (g.size() < t)
        g = detail::extend_anti_latin(g);
    if (!detail::grid_is_anti_latin(g))
        throw std::logic_error("anti-Latin construction produced an invalid array for t=" + std::to_string(t));

    const CubeShape s(t, 2);
    std::vector<std::uint32_t> colors;
    colors.reserve(s.size());
    for (const auto & row : g)
        colors.insert(colors.end(), row.begin(), row.end());
    return Coloring(s, t, std::move(colors));
}

// ---------------------------------------------------------------------------
// Lift coloring: color x by a fixed rainbow-free coloring of its first 3 (t = 3)
// or first 2 (t >= 4) coordinates. Classes have size t^(n-1).

inline Coloring lift_coloring(const CubeShape & s)
{
    const auto t = s.t(), n = s.n();
    const bool supported = (t == 3 && n >= 3) || (t >= 4 && n >= 2);
    if (!supported)
        throw std::invalid_argument("lift coloring is undefined for (t, n) = (" + std::to_string(t) + ", " +
                                    std::to_string(n) + ")");
    detail::check_materializable(s);
    const Coloring base = t == 3 ? c33_base() : anti_latin_square(t);
    const std::uint32_t base_dims = t == 3 ? 3 : 2;
    // Base point = leading digits = rank / t^(n - base_dims).
    const std::uint64_t block = s.weight(base_dims - 1);
    std::vector<std::uint32_t> colors(s.size());
    for (std::uint64_t r = 0; r < s.size(); ++r)
        colors[r] = base[r / block];
    return Coloring(s, t, std::move(colors));
}

// ---------------------------------------------------------------------------
// File format: "t n k" (or "N 0 k" without a cube), then N colors in rank order.

inline void write_coloring(std::ostream & out, const Coloring & c)
{
    if (c.is_cube())
        out << c.cube().t() << ' ' << c.cube().n() << ' ' << c.k() << '\n';
    else
        out << c.vertex_count() << " 0 " << c.k() << '\n';
    // One row per x_1..x_{n-1} prefix, so n = 2 files read as t x t tables.
    const std::uint64_t row = c.is_cube() ? c.cube().t() : std::max<std::uint64_t>(c.vertex_count(), 1);
    for (std::uint64_t r = 0; r < c.vertex_count(); ++r) {
        out << c[r];
        out << ((r + 1) % row == 0 || r + 1 == c.vertex_count() ? '\n' : ' ');
    }
}

inline Coloring read_coloring(std::istream & in)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("missing coloring header");
    std::istringstream header(line);
    long long a = -1, b = -1, k = -1;
    std::string extra;
    if (!(header >> a >> b >> k) || (header >> extra) || a < 0 || b < 0 || k < 1 ||
        k > std::numeric_limits<std::uint32_t>::max())
        throw std::runtime_error("malformed coloring header '" + line + "'");

    std::optional<CubeShape> shape;
    std::uint64_t count = 0;
    try {
        if (b == 0) {
            count = static_cast<std::uint64_t>(a);
        }
        else {
            shape.emplace(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
            count = shape->size();
        }
    }
    catch (const std::exception & e) {
        throw std::runtime_error(std::string("malformed coloring header: ") + e.what());
    }
    if (count > detail::max_materialized)
        throw std::runtime_error("coloring too large");

    std::vector<std::uint32_t> colors;
    colors.reserve(count);
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        long long v = -1;
        try {
            v = std::stoll(tok, &used);
        }
        catch (const std::exception &) {
            used = 0;
        }
        if (used != tok.size())
            throw std::runtime_error("non-integer color entry '" + tok + "'");
        if (v < 0 || v >= k)
            throw std::runtime_error("color entry " + tok + " outside [0, " + std::to_string(k - 1) + "]");
        colors.push_back(static_cast<std::uint32_t>(v));
    }
    if (colors.size() != count)
        throw std::runtime_error("coloring has " + std::to_string(colors.size()) + " entries, expected " +
                                 std::to_string(count));
    try {
        if (shape)
            return Coloring(*shape, static_cast<std::uint32_t>(k), std::move(colors));
        return Coloring(count, static_cast<std::uint32_t>(k), std::move(colors));
    }
    catch (const std::invalid_argument & e) {
        throw std::runtime_error(e.what());
    }
}

} // namespace hjc
