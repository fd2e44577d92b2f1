#pragma once

// DIMACS reader and a small DPLL solver (two watched literals, chronological
// backtracking). Meant for cross-checking exported encodings on tiny instances,
// not as a general-purpose SAT solver.

#include <hjc/search.hpp>

#include <cstdint>
#include <cstdlib>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hjc
{

inline Cnf read_dimacs(std::istream & in)
{
    Cnf cnf;
    std::string line;
    bool have_header = false;
    std::size_t declared = 0;
    std::vector<std::int32_t> clause;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c')
            continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            long long v = -1, c = -1;
            if (have_header || !(ls >> p >> fmt >> v >> c) || fmt != "cnf" || v < 0 || c < 0)
                throw std::runtime_error("malformed DIMACS header '" + line + "'");
            cnf.num_vars = static_cast<std::uint32_t>(v);
            declared = static_cast<std::size_t>(c);
            have_header = true;
            continue;
        }
        if (!have_header)
            throw std::runtime_error("DIMACS clause before header");
        long long lit;
        while (ls >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(std::move(clause));
                clause.clear();
            }
            else {
                if (std::llabs(lit) > cnf.num_vars)
                    throw std::runtime_error("DIMACS literal out of range");
                clause.push_back(static_cast<std::int32_t>(lit));
            }
        }
        if (!ls.eof())
            throw std::runtime_error("malformed DIMACS clause line '" + line + "'");
    }
    if (!have_header)
        throw std::runtime_error("missing DIMACS header");
    if (!clause.empty())
        throw std::runtime_error("unterminated DIMACS clause");
    if (cnf.clauses.size() != declared)
        throw std::runtime_error("DIMACS clause count mismatch");
    return cnf;
}

/// Returns a model indexed by variable (entry 0 unused), or nullopt if unsatisfiable.
class Dpll
{
  public:
    explicit Dpll(const Cnf & cnf) : num_vars_(cnf.num_vars), value_(cnf.num_vars + 1, unset), watches_(2 * (cnf.num_vars + 1))
    {
        for (const auto & c : cnf.clauses) {
            std::vector<std::int32_t> clause = c;
            std::sort(clause.begin(), clause.end());
            clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
            bool tautology = false;
            for (std::size_t i = 0; i + 1 < clause.size(); ++i)
                for (std::size_t j = i + 1; j < clause.size(); ++j)
                    if (clause[i] == -clause[j])
                        tautology = true;
            if (tautology)
                continue;
            if (clause.empty()) {
                trivially_unsat_ = true;
                continue;
            }
            if (clause.size() == 1) {
                units_.push_back(clause[0]);
                continue;
            }
            const auto idx = static_cast<std::uint32_t>(clauses_.size());
            clauses_.push_back(std::move(clause));
            watches_[slot(clauses_[idx][0])].push_back(idx);
            watches_[slot(clauses_[idx][1])].push_back(idx);
        }
    }

    std::optional<std::vector<bool>> solve()
    {
        if (trivially_unsat_)
            return std::nullopt;
        for (auto lit : units_)
            if (!enqueue(lit))
                return std::nullopt;
        if (!propagate())
            return std::nullopt;

        // Decision stack: trail index of the decision and whether its flip was tried.
        std::vector<std::pair<std::size_t, bool>> decisions;
        std::uint32_t next_var = 1;
        for (;;) {
            while (next_var <= num_vars_ && value_[next_var] != unset)
                ++next_var;
            if (next_var > num_vars_) {
                std::vector<bool> model(num_vars_ + 1, false);
                for (std::uint32_t v = 1; v <= num_vars_; ++v)
                    model[v] = value_[v] == yes;
                return model;
            }
            decisions.emplace_back(trail_.size(), false);
            enqueue(static_cast<std::int32_t>(next_var));
            while (!propagate()) {
                // Undo to the most recent decision not yet flipped.
                while (!decisions.empty() && decisions.back().second) {
                    undo_to(decisions.back().first);
                    decisions.pop_back();
                }
                if (decisions.empty())
                    return std::nullopt;
                const auto at = decisions.back().first;
                const auto lit = trail_[at];
                undo_to(at);
                decisions.back().second = true;
                enqueue(-lit);
            }
            next_var = 1;
        }
    }

  private:
    static constexpr std::int8_t unset = -1, no = 0, yes = 1;

    static std::size_t slot(std::int32_t lit)
    {
        return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
    }

    std::int8_t lit_value(std::int32_t lit) const
    {
        const auto v = value_[static_cast<std::size_t>(std::abs(lit))];
        if (v == unset)
            return unset;
        return (lit > 0) == (v == yes) ? yes : no;
    }

    bool enqueue(std::int32_t lit)
    {
        const auto cur = lit_value(lit);
        if (cur == yes)
            return true;
        if (cur == no)
            return false;
        value_[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? yes : no;
        trail_.push_back(lit);
        return true;
    }

    void undo_to(std::size_t size)
    {
        while (trail_.size() > size) {
            value_[static_cast<std::size_t>(std::abs(trail_.back()))] = unset;
            trail_.pop_back();
        }
        head_ = std::min(head_, size);
    }

    bool propagate()
    {
        while (head_ < trail_.size()) {
            const auto falsified = -trail_[head_++];
            auto & list = watches_[slot(falsified)];
            for (std::size_t w = 0; w < list.size();) {
                auto & clause = clauses_[list[w]];
                if (clause[0] == falsified)
                    std::swap(clause[0], clause[1]);
                if (lit_value(clause[0]) == yes) {
                    ++w;
                    continue;
                }
                bool moved = false;
                for (std::size_t i = 2; i < clause.size(); ++i) {
                    if (lit_value(clause[i]) != no) {
                        std::swap(clause[1], clause[i]);
                        watches_[slot(clause[1])].push_back(list[w]);
                        list[w] = list.back();
                        list.pop_back();
                        moved = true;
                        break;
                    }
                }
                if (moved)
                    continue;
                if (!enqueue(clause[0]))
                    return false;
                ++w;
            }
        }
        return true;
    }

    std::uint32_t num_vars_;
    std::vector<std::int8_t> value_;
    std::vector<std::vector<std::uint32_t>> watches_;
    std::vector<std::vector<std::int32_t>> clauses_;
    std::vector<std::int32_t> units_;
    std::vector<std::int32_t> trail_;
    std::size_t head_ = 0;
    bool trivially_unsat_ = false;
};

inline std::optional<std::vector<bool>> solve_dpll(const Cnf & cnf) { return Dpll(cnf).solve(); }

} // namespace hjc
