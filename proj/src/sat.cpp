#include "agrifleet/sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <string>

#include "agrifleet/errors.hpp"

namespace agrifleet {

int CnfFormula::add_variable() { return ++variable_count; }

void CnfFormula::add_clause(std::vector<Literal> literals) {
    std::sort(literals.begin(), literals.end());
    literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
    for (Literal lit : literals) {
        const int v = std::abs(lit);
        if (lit == 0 || v > variable_count) {
            throw ValidationError("clause references undeclared variable " + std::to_string(lit));
        }
    }
    clauses.push_back(std::move(literals));
}

namespace {

class DpllSolver {
public:
    explicit DpllSolver(const CnfFormula& f)
        : formula_(f),
          value_(static_cast<size_t>(f.variable_count) + 1, kUnassigned),
          occ_true_(static_cast<size_t>(f.variable_count) + 1),
          occ_false_(static_cast<size_t>(f.variable_count) + 1),
          sat_count_(f.clauses.size(), 0),
          free_count_(f.clauses.size(), 0) {
        for (size_t c = 0; c < f.clauses.size(); ++c) {
            free_count_[c] = static_cast<int>(f.clauses[c].size());
            for (Literal lit : f.clauses[c]) {
                (lit > 0 ? occ_true_ : occ_false_)[std::abs(lit)].push_back(static_cast<int>(c));
            }
        }
    }

    SatSolution solve() {
        for (size_t c = 0; c < formula_.clauses.size(); ++c) {
            if (free_count_[c] == 0) return unsat();  // empty clause
            if (free_count_[c] == 1) queue_.push_back(formula_.clauses[c][0]);
        }
        for (;;) {
            if (!propagate()) {
                if (!backtrack()) return unsat();
                continue;
            }
            if (assign_pure_literals()) continue;
            const int v = first_unassigned();
            if (v == 0) return sat();
            decisions_.push_back({trail_.size(), v, false});
            if (!assign(v)) {
                if (!backtrack()) return unsat();
            }
        }
    }

private:
    static constexpr int8_t kUnassigned = -1;

    struct Decision {
        size_t trail_size;
        int variable;
        bool flipped;
    };

    SatSolution sat() const {
        SatSolution s;
        s.satisfiable = true;
        s.model.assign(static_cast<size_t>(formula_.variable_count) + 1, true);
        for (int v = 1; v <= formula_.variable_count; ++v) {
            if (value_[v] != kUnassigned) s.model[v] = value_[v] == 1;
        }
        return s;
    }

    static SatSolution unsat() { return SatSolution{}; }

    /// Assigns a literal and updates clause counters; queues any clause
    /// that becomes unit. Returns false when a clause is emptied.
    bool assign(Literal lit) {
        const int v = std::abs(lit);
        value_[v] = lit > 0 ? 1 : 0;
        trail_.push_back(lit);
        for (int c : lit > 0 ? occ_true_[v] : occ_false_[v]) {
            ++sat_count_[c];
        }
        bool conflict = false;
        for (int c : lit > 0 ? occ_false_[v] : occ_true_[v]) {
            --free_count_[c];
            if (sat_count_[c] > 0) continue;
            if (free_count_[c] == 0) {
                conflict = true;
            } else if (free_count_[c] == 1) {
                queue_.push_back(sole_unassigned(c));
            }
        }
        return !conflict;
    }

    void unassign(Literal lit) {
        const int v = std::abs(lit);
        value_[v] = kUnassigned;
        for (int c : lit > 0 ? occ_true_[v] : occ_false_[v]) --sat_count_[c];
        for (int c : lit > 0 ? occ_false_[v] : occ_true_[v]) ++free_count_[c];
    }

    Literal sole_unassigned(int c) const {
        for (Literal lit : formula_.clauses[c]) {
            if (value_[std::abs(lit)] == kUnassigned) return lit;
        }
        return 0;  // unreachable on consistent counters
    }

    bool propagate() {
        while (!queue_.empty()) {
            const Literal lit = queue_.front();
            queue_.pop_front();
            const int v = std::abs(lit);
            if (value_[v] != kUnassigned) {
                if (value_[v] != (lit > 0 ? 1 : 0)) return false;
                continue;
            }
            if (!assign(lit)) return false;
        }
        return true;
    }

    /// Scans active clauses for variables appearing in one polarity
    /// only and queues them. Returns true when anything was queued.
    bool assign_pure_literals() {
        std::vector<int8_t> seen(static_cast<size_t>(formula_.variable_count) + 1, 0);
        for (size_t c = 0; c < formula_.clauses.size(); ++c) {
            if (sat_count_[c] > 0) continue;
            for (Literal lit : formula_.clauses[c]) {
                const int v = std::abs(lit);
                if (value_[v] == kUnassigned) seen[v] |= lit > 0 ? 1 : 2;
            }
        }
        bool any = false;
        for (int v = 1; v <= formula_.variable_count; ++v) {
            if (seen[v] == 1) {
                queue_.push_back(v);
                any = true;
            } else if (seen[v] == 2) {
                queue_.push_back(-v);
                any = true;
            }
        }
        return any;
    }

    int first_unassigned() const {
        for (int v = 1; v <= formula_.variable_count; ++v) {
            if (value_[v] == kUnassigned) return v;
        }
        return 0;
    }

    /// Unwinds to the deepest decision that still has an untried
    /// branch, flips it, and queues the flipped literal. Returns false
    /// when no such decision remains.
    bool backtrack() {
        queue_.clear();
        while (!decisions_.empty()) {
            Decision& d = decisions_.back();
            while (trail_.size() > d.trail_size) {
                unassign(trail_.back());
                trail_.pop_back();
            }
            if (!d.flipped) {
                d.flipped = true;
                queue_.push_back(-d.variable);
                return true;
            }
            decisions_.pop_back();
        }
        return false;
    }

    const CnfFormula& formula_;
    std::vector<int8_t> value_;
    std::vector<std::vector<int>> occ_true_;
    std::vector<std::vector<int>> occ_false_;
    std::vector<int> sat_count_;
    std::vector<int> free_count_;
    std::vector<Literal> trail_;
    std::vector<Decision> decisions_;
    std::deque<Literal> queue_;
};

}  // namespace

SatSolution dpll_solve(const CnfFormula& formula) { return DpllSolver(formula).solve(); }

bool model_satisfies(const CnfFormula& formula, const std::vector<bool>& model) {
    for (const auto& clause : formula.clauses) {
        bool ok = false;
        for (Literal lit : clause) {
            const size_t v = static_cast<size_t>(std::abs(lit));
            if (v < model.size() && model[v] == (lit > 0)) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

void export_dimacs(const CnfFormula& formula, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write DIMACS file: " + path.string());
    }
    out << "p cnf " << formula.variable_count << ' ' << formula.clauses.size() << '\n';
    for (const auto& clause : formula.clauses) {
        for (Literal lit : clause) out << lit << ' ';
        out << "0\n";
    }
    if (!out) {
        throw IoError("failed writing DIMACS file: " + path.string());
    }
}

CnfFormula import_dimacs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open DIMACS file: " + path.string());
    }
    CnfFormula f;
    size_t expected_clauses = 0;
    bool header_seen = false;
    std::string token;
    std::vector<Literal> clause;
    while (in >> token) {
        if (token == "c") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (token == "p") {
            std::string kind;
            long long vars = 0, cls = 0;
            if (!(in >> kind >> vars >> cls) || kind != "cnf" || vars < 0 || cls < 0) {
                throw ParseError("DIMACS " + path.string() + ": malformed problem line");
            }
            f.variable_count = static_cast<int>(vars);
            expected_clauses = static_cast<size_t>(cls);
            header_seen = true;
            continue;
        }
        if (token == "%") break;
        long long lit;
        try {
            lit = std::stoll(token);
        } catch (const std::exception&) {
            throw ParseError("DIMACS " + path.string() + ": bad token '" + token + "'");
        }
        if (!header_seen) {
            throw ParseError("DIMACS " + path.string() + ": clause before problem line");
        }
        if (lit == 0) {
            f.add_clause(clause);
            clause.clear();
        } else {
            clause.push_back(static_cast<Literal>(lit));
        }
    }
    if (!header_seen) {
        throw ParseError("DIMACS " + path.string() + ": missing problem line");
    }
    if (!clause.empty()) {
        throw ParseError("DIMACS " + path.string() + ": unterminated clause");
    }
    if (f.clauses.size() != expected_clauses) {
        throw ParseError("DIMACS " + path.string() + ": clause count does not match header");
    }
    return f;
}

}  // namespace agrifleet
