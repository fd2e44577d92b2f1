#pragma once

// Exhaustive search for balanced rainbow-free k-colorings of small hypergraphs,
// the balanced upper chromatic number, and a DIMACS encoding of the same question.

#include <hjc/coloring.hpp>
#include <hjc/cube.hpp>
#include <hjc/parallel.hpp>
#include <hjc/verify.hpp>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hjc
{

struct SearchOptions
{
    bool symmetry_fix_first_vertex = true;
    std::optional<std::uint64_t> node_limit;
    unsigned threads = 1;
    bool deterministic = true;
    // Subtrees are cut after this many assigned vertices. Fixed independently of
    // `threads` so node counts do not depend on the worker count.
    std::uint32_t split_depth = 4;
};

enum class SearchStatus
{
    witness_found,
    exhausted_no_witness,
    node_limit_reached
};

inline std::string_view to_string(SearchStatus s)
{
    switch (s) {
    case SearchStatus::witness_found: return "witness_found";
    case SearchStatus::exhausted_no_witness: return "exhausted_no_witness";
    case SearchStatus::node_limit_reached: return "node_limit_reached";
    }
    return "unknown";
}

struct SearchOutcome
{
    SearchStatus status = SearchStatus::exhausted_no_witness;
    std::optional<Coloring> witness;
    std::uint64_t nodes_explored = 0;
};

namespace detail
{
    enum class Dfs
    {
        found,
        exhausted,
        limited,
        cancelled
    };

    // Static order: decreasing edge-degree, ties by index.
    inline std::vector<std::uint32_t> vertex_order(const Hypergraph & h)
    {
        std::vector<std::uint64_t> degree(h.vertex_count, 0);
        for (const auto & e : h.edges)
            for (auto v : e)
                ++degree[v];
        std::vector<std::uint32_t> order(h.vertex_count);
        for (std::uint32_t v = 0; v < h.vertex_count; ++v)
            order[v] = v;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return degree[a] > degree[b]; });
        return order;
    }

    class BalancedSearch
    {
      public:
        BalancedSearch(const Hypergraph & h, std::uint32_t k, const std::vector<std::uint32_t> & order, bool pin,
                       std::uint64_t limit, const std::atomic<bool> * cancel = nullptr) :
            h_(h),
            k_(k),
            cap_(h.vertex_count / k),
            order_(order),
            pin_(pin),
            limit_(limit),
            cancel_(cancel),
            incident_(h.vertex_count),
            color_(h.vertex_count, unassigned),
            class_size_(k, 0),
            edge_assigned_(h.edges.size(), 0),
            edge_distinct_(h.edges.size(), 0),
            edge_color_count_(h.edges.size() * k, 0)
        {
            // An edge with more than k vertices always repeats a color.
            for (std::uint32_t e = 0; e < h.edges.size(); ++e)
                if (h.edges[e].size() <= k)
                    for (auto v : h.edges[e])
                        incident_[v].push_back(e);
        }

        std::uint64_t nodes() const noexcept { return nodes_; }
        const std::vector<std::uint32_t> & colors() const noexcept { return color_; }

        // Applies an assignment that already passed the checks elsewhere.
        void replay(std::uint32_t pos, std::uint32_t c)
        {
            if (!assign(order_[pos], c))
                throw std::logic_error("replayed search prefix failed its own checks");
        }

        Dfs run(std::uint32_t pos)
        {
            if (pos == h_.vertex_count)
                return Dfs::found;
            const auto v = order_[pos];
            const std::uint32_t last = (pin_ && pos == 0) ? 1 : k_;
            for (std::uint32_t c = 0; c < last; ++c) {
                if (class_size_[c] == cap_)
                    continue;
                if (nodes_ >= limit_)
                    return Dfs::limited;
                if (cancel_ && cancel_->load(std::memory_order_relaxed))
                    return Dfs::cancelled;
                ++nodes_;
                if (!assign(v, c))
                    continue;
                const auto r = run(pos + 1);
                if (r == Dfs::found)
                    return r;
                unassign(v, c);
                if (r != Dfs::exhausted)
                    return r;
            }
            return Dfs::exhausted;
        }

        // Enumerates surviving assignments of the first `depth` vertices in DFS order.
        Dfs collect(std::uint32_t pos, std::uint32_t depth, std::vector<std::vector<std::uint32_t>> & out)
        {
            if (pos == depth) {
                std::vector<std::uint32_t> prefix(depth);
                for (std::uint32_t i = 0; i < depth; ++i)
                    prefix[i] = color_[order_[i]];
                out.push_back(std::move(prefix));
                return Dfs::exhausted;
            }
            const auto v = order_[pos];
            const std::uint32_t last = (pin_ && pos == 0) ? 1 : k_;
            for (std::uint32_t c = 0; c < last; ++c) {
                if (class_size_[c] == cap_)
                    continue;
                if (nodes_ >= limit_)
                    return Dfs::limited;
                ++nodes_;
                if (!assign(v, c))
                    continue;
                const auto r = collect(pos + 1, depth, out);
                unassign(v, c);
                if (r != Dfs::exhausted)
                    return r;
            }
            return Dfs::exhausted;
        }

      private:
        static constexpr std::uint32_t unassigned = std::numeric_limits<std::uint32_t>::max();

        bool assign(std::uint32_t v, std::uint32_t c)
        {
            color_[v] = c;
            ++class_size_[c];
            for (auto e : incident_[v]) {
                if (edge_color_count_[e * k_ + c]++ == 0)
                    ++edge_distinct_[e];
                ++edge_assigned_[e];
            }
            for (auto e : incident_[v]) {
                const auto assigned = edge_assigned_[e];
                if (edge_distinct_[e] != assigned)
                    continue;
                const auto size = h_.edges[e].size();
                bool ok = true;
                if (assigned == size)
                    ok = false;
                else if (assigned + 1 == size)
                    ok = last_vertex_can_repeat(e);
                if (!ok) {
                    unassign(v, c);
                    return false;
                }
            }
            return true;
        }

        void unassign(std::uint32_t v, std::uint32_t c)
        {
            for (auto e : incident_[v]) {
                if (--edge_color_count_[e * k_ + c] == 0)
                    --edge_distinct_[e];
                --edge_assigned_[e];
            }
            --class_size_[c];
            color_[v] = unassigned;
        }

        // The single open vertex of a so-far-rainbow edge must reuse one of the edge's
        // colors; at least one of them must still have room.
        bool last_vertex_can_repeat(std::uint32_t e) const
        {
            for (std::uint32_t c = 0; c < k_; ++c)
                if (edge_color_count_[e * k_ + c] > 0 && class_size_[c] < cap_)
                    return true;
            return false;
        }

        const Hypergraph & h_;
        std::uint32_t k_;
        std::uint32_t cap_;
        const std::vector<std::uint32_t> & order_;
        bool pin_;
        std::uint64_t limit_;
        const std::atomic<bool> * cancel_;
        std::uint64_t nodes_ = 0;

        std::vector<std::vector<std::uint32_t>> incident_;
        std::vector<std::uint32_t> color_;
        std::vector<std::uint32_t> class_size_;
        std::vector<std::uint32_t> edge_assigned_;
        std::vector<std::uint32_t> edge_distinct_;
        std::vector<std::uint32_t> edge_color_count_;
    };

    struct Subtree
    {
        Dfs result = Dfs::cancelled;
        std::uint64_t nodes = 0;
        std::vector<std::uint32_t> colors;
    };
}

/// Complete backtracking search for a balanced k-coloring of `h` with no rainbow edge.
/// exhausted_no_witness is a proof of nonexistence.
inline SearchOutcome exists_balanced_rainbow_free(const Hypergraph & h, std::uint32_t k, const SearchOptions & opts = {})
{
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    if (h.vertex_count == 0)
        throw std::invalid_argument("hypergraph has no vertices");
    if (h.vertex_count % k != 0)
        throw std::invalid_argument("k=" + std::to_string(k) + " does not divide N=" + std::to_string(h.vertex_count));
    if (opts.node_limit && *opts.node_limit < 1)
        throw std::invalid_argument("node_limit must be >= 1");
    validate(h);

    const auto order = detail::vertex_order(h);
    const std::uint64_t limit = opts.node_limit.value_or(std::numeric_limits<std::uint64_t>::max());
    const std::uint32_t depth = std::min(opts.split_depth, h.vertex_count);

    SearchOutcome out;
    std::vector<std::vector<std::uint32_t>> prefixes;
    {
        detail::BalancedSearch root(h, k, order, opts.symmetry_fix_first_vertex, limit);
        const auto r = root.collect(0, depth, prefixes);
        out.nodes_explored = root.nodes();
        if (r == detail::Dfs::limited) {
            out.status = SearchStatus::node_limit_reached;
            return out;
        }
    }

    const std::uint64_t remaining = limit - out.nodes_explored;
    std::vector<detail::Subtree> subtrees(prefixes.size());
    std::atomic<std::size_t> best{prefixes.size()};
    std::atomic<bool> cancel{false};
    parallel_for(prefixes.size(), opts.threads, [&](std::size_t i) {
        if (opts.deterministic ? i > best.load() : cancel.load())
            return;
        detail::BalancedSearch s(h, k, order, opts.symmetry_fix_first_vertex, remaining,
                                 opts.deterministic ? nullptr : &cancel);
        for (std::uint32_t pos = 0; pos < depth; ++pos)
            s.replay(pos, prefixes[i][pos]);
        auto & sub = subtrees[i];
        sub.result = s.run(depth);
        sub.nodes = s.nodes();
        if (sub.result == detail::Dfs::found) {
            sub.colors = s.colors();
            cancel = true;
            for (auto cur = best.load(); i < cur && !best.compare_exchange_weak(cur, i);) {}
        }
    });

    std::optional<std::vector<std::uint32_t>> colors;
    if (opts.deterministic) {
        // Replay subtrees in order, as a single sequential DFS would have.
        out.status = SearchStatus::exhausted_no_witness;
        for (const auto & sub : subtrees) {
            out.nodes_explored += sub.nodes;
            if (sub.result == detail::Dfs::limited || out.nodes_explored > limit) {
                out.status = SearchStatus::node_limit_reached;
                out.nodes_explored = limit;
                break;
            }
            if (sub.result == detail::Dfs::found) {
                out.status = SearchStatus::witness_found;
                colors = sub.colors;
                break;
            }
        }
    }
    else {
        bool limited = false;
        for (const auto & sub : subtrees) {
            out.nodes_explored += sub.nodes;
            limited = limited || sub.result == detail::Dfs::limited;
            if (!colors && sub.result == detail::Dfs::found)
                colors = sub.colors;
        }
        out.status = colors ? SearchStatus::witness_found
                            : (limited || out.nodes_explored > limit ? SearchStatus::node_limit_reached
                                                                     : SearchStatus::exhausted_no_witness);
    }

    if (colors) {
        Coloring witness(h.vertex_count, k, std::move(*colors));
        if (!is_balanced(witness) || !is_rainbow_free(witness, h))
            throw std::logic_error("search produced a witness that fails verification");
        out.witness = std::move(witness);
    }
    return out;
}

inline std::vector<std::uint32_t> divisors_descending(std::uint32_t n)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = n; d >= 1; --d)
        if (n % d == 0)
            out.push_back(d);
    return out;
}

struct ChiBResult
{
    // 0 when not even k = 1 works (only possible with single-vertex edges).
    std::uint32_t value = 0;
    std::optional<Coloring> witness;
    // False if some larger k hit the node limit, so `value` is only a lower bound.
    bool certified = true;
    std::vector<std::pair<std::uint32_t, SearchOutcome>> attempts;
};

/// Largest k dividing N that admits a balanced rainbow-free k-coloring, tried in decreasing order.
inline ChiBResult balanced_upper_chromatic(const Hypergraph & h, const SearchOptions & opts = {})
{
    if (h.vertex_count < 1)
        throw std::invalid_argument("hypergraph has no vertices");
    ChiBResult result;
    for (auto k : divisors_descending(h.vertex_count)) {
        auto outcome = exists_balanced_rainbow_free(h, k, opts);
        const auto status = outcome.status;
        if (status == SearchStatus::witness_found) {
            result.value = k;
            result.witness = outcome.witness;
        }
        if (status == SearchStatus::node_limit_reached)
            result.certified = false;
        result.attempts.emplace_back(k, std::move(outcome));
        if (status == SearchStatus::witness_found)
            break;
    }
    return result;
}

/// Verifies the halving coloring of C_t^n is balanced and rainbow-free, i.e. that
/// (t/2)^n colors are achievable. False means a bug.
inline bool chi_b_lower_bound_check(const CubeShape & s, unsigned threads = 1)
{
    if (s.t() % 2 != 0 || s.t() < 4)
        throw std::invalid_argument("lower bound check needs an even t >= 4");
    const auto c = halving_coloring(s);
    std::uint64_t expected_k = 1;
    for (std::uint32_t i = 0; i < s.n(); ++i)
        expected_k *= s.t() / 2;
    return c.k() == expected_k && is_balanced(c) && count_rainbow_lines(c, LineKind::geometric, threads) == 0;
}

/// N! / ((N/k)!)^k
inline boost::multiprecision::cpp_int count_balanced_colorings(std::uint64_t n, std::uint64_t k)
{
    if (k < 1 || n % k != 0)
        throw std::invalid_argument("k must divide N");
    using boost::multiprecision::cpp_int;
    auto factorial = [](std::uint64_t m) {
        cpp_int f = 1;
        for (std::uint64_t i = 2; i <= m; ++i)
            f *= i;
        return f;
    };
    return factorial(n) / boost::multiprecision::pow(factorial(n / k), static_cast<unsigned>(k));
}

// ---------------------------------------------------------------------------
// CNF encoding

struct Cnf
{
    std::uint32_t num_vars = 0;
    std::vector<std::vector<std::int32_t>> clauses;
};

namespace detail
{
    class CnfBuilder
    {
      public:
        explicit CnfBuilder(std::uint32_t base_vars) { cnf.num_vars = base_vars; }

        std::int32_t fresh() { return static_cast<std::int32_t>(++cnf.num_vars); }
        void add(std::vector<std::int32_t> clause) { cnf.clauses.push_back(std::move(clause)); }

        // Sequential-counter at-most-K.
        void at_most(const std::vector<std::int32_t> & x, std::uint32_t K)
        {
            const auto n = static_cast<std::uint32_t>(x.size());
            if (K >= n)
                return;
            if (K == 0) {
                for (auto lit : x)
                    add({-lit});
                return;
            }
            // s[i][j]: at least j+1 of x_0..x_i are true
            std::vector<std::vector<std::int32_t>> s(n - 1, std::vector<std::int32_t>(K));
            for (auto & row : s)
                for (auto & v : row)
                    v = fresh();
            add({-x[0], s[0][0]});
            for (std::uint32_t j = 1; j < K; ++j)
                add({-s[0][j]});
            for (std::uint32_t i = 1; i + 1 < n; ++i) {
                add({-x[i], s[i][0]});
                add({-s[i - 1][0], s[i][0]});
                for (std::uint32_t j = 1; j < K; ++j) {
                    add({-x[i], -s[i - 1][j - 1], s[i][j]});
                    add({-s[i - 1][j], s[i][j]});
                }
                add({-x[i], -s[i - 1][K - 1]});
            }
            add({-x[n - 1], -s[n - 2][K - 1]});
        }

        void exactly(const std::vector<std::int32_t> & x, std::uint32_t K)
        {
            at_most(x, K);
            std::vector<std::int32_t> negated(x.size());
            std::transform(x.begin(), x.end(), negated.begin(), [](auto l) { return -l; });
            at_most(negated, static_cast<std::uint32_t>(x.size()) - K);
        }

        // Pairwise for small groups, ladder (sequential) encoding otherwise.
        void at_most_one(const std::vector<std::int32_t> & x)
        {
            if (x.size() <= 8) {
                for (std::size_t a = 0; a < x.size(); ++a)
                    for (std::size_t b = a + 1; b < x.size(); ++b)
                        add({-x[a], -x[b]});
                return;
            }
            at_most(x, 1);
        }

        Cnf cnf;
    };
}

/// Selector variable for vertex p taking color c (1-based DIMACS index).
inline std::int32_t selector_var(std::uint32_t p, std::uint32_t c, std::uint32_t k)
{
    return static_cast<std::int32_t>(p * k + c + 1);
}

/// Satisfying assignments correspond to balanced rainbow-free k-colorings via the
/// selectors v(p,c). Each vertex takes exactly one color, each color exactly N/k
/// vertices, and every edge of size <= k has some same-colored pair y(p,q,c).
inline Cnf build_cnf(const Hypergraph & h, std::uint32_t k)
{
    if (k < 2)
        throw std::invalid_argument("CNF export needs k >= 2");
    if (h.vertex_count == 0 || h.vertex_count % k != 0)
        throw std::invalid_argument("k=" + std::to_string(k) + " does not divide N=" + std::to_string(h.vertex_count));
    validate(h);
    const auto n = h.vertex_count;
    if (static_cast<std::uint64_t>(n) * k > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max() / 2))
        throw std::overflow_error("CNF too large");

    detail::CnfBuilder b(n * k);
    for (std::uint32_t p = 0; p < n; ++p) {
        std::vector<std::int32_t> row(k);
        for (std::uint32_t c = 0; c < k; ++c)
            row[c] = selector_var(p, c, k);
        b.add(row);
        b.at_most_one(row);
    }
    for (std::uint32_t c = 0; c < k; ++c) {
        std::vector<std::int32_t> column(n);
        for (std::uint32_t p = 0; p < n; ++p)
            column[p] = selector_var(p, c, k);
        b.exactly(column, n / k);
    }

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int32_t> pair_base;
    auto same_color = [&](std::uint32_t p, std::uint32_t q, std::uint32_t c) {
        auto [it, inserted] = pair_base.try_emplace({p, q}, 0);
        if (inserted) {
            it->second = b.cnf.num_vars + 1;
            for (std::uint32_t col = 0; col < k; ++col) {
                const auto y = b.fresh();
                b.add({-y, selector_var(p, col, k)});
                b.add({-y, selector_var(q, col, k)});
            }
        }
        return it->second + static_cast<std::int32_t>(c);
    };
    for (const auto & e : h.edges) {
        if (e.size() > k)
            continue;
        std::vector<std::int32_t> clause;
        for (std::size_t a = 0; a < e.size(); ++a)
            for (std::size_t z = a + 1; z < e.size(); ++z)
                for (std::uint32_t c = 0; c < k; ++c)
                    clause.push_back(same_color(e[a], e[z], c));
        b.add(std::move(clause));
    }
    return std::move(b.cnf);
}

inline void write_dimacs(std::ostream & out, const Cnf & cnf, const std::vector<std::string> & comments = {})
{
    for (const auto & c : comments)
        out << "c " << c << '\n';
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const auto & clause : cnf.clauses) {
        for (auto lit : clause)
            out << lit << ' ';
        out << "0\n";
    }
}

inline Cnf export_cnf(const Hypergraph & h, std::uint32_t k, std::ostream & out)
{
    auto cnf = build_cnf(h, k);
    write_dimacs(out, cnf,
                 {"balanced rainbow-free coloring: N=" + std::to_string(h.vertex_count) +
                      " M=" + std::to_string(h.edges.size()) + " k=" + std::to_string(k),
                  "vertex p has color c iff variable p*k+c+1 is true"});
    if (!out)
        throw std::runtime_error("failed writing DIMACS output");
    return cnf;
}

/// Reads colors back out of a model over the selector variables.
inline Coloring decode_model(const std::vector<bool> & model, std::uint32_t n, std::uint32_t k)
{
    std::vector<std::uint32_t> colors(n, k);
    for (std::uint32_t p = 0; p < n; ++p)
        for (std::uint32_t c = 0; c < k; ++c)
            if (model.at(static_cast<std::size_t>(selector_var(p, c, k))))
                colors[p] = c;
    return Coloring(n, k, std::move(colors));
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::ordered_json to_json(const SearchOutcome & o)
{
    nlohmann::ordered_json j;
    j["status"] = to_string(o.status);
    j["nodes_explored"] = o.nodes_explored;
    if (o.witness) {
        j["k"] = o.witness->k();
        j["witness"] = o.witness->colors();
    }
    else
        j["witness"] = nullptr;
    return j;
}

inline nlohmann::ordered_json to_json(const ChiBResult & r)
{
    nlohmann::ordered_json j;
    j["value"] = r.value;
    j["certified"] = r.certified;
    j["witness"] = r.witness ? nlohmann::ordered_json(r.witness->colors()) : nlohmann::ordered_json(nullptr);
    auto attempts = nlohmann::ordered_json::array();
    for (const auto & [k, o] : r.attempts) {
        nlohmann::ordered_json a;
        a["k"] = k;
        a["status"] = to_string(o.status);
        a["nodes_explored"] = o.nodes_explored;
        attempts.push_back(std::move(a));
    }
    j["attempts"] = std::move(attempts);
    return j;
}

} // namespace hjc
