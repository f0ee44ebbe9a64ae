#pragma once

#include <filesystem>
#include <vector>

namespace agrifleet {

/// DIMACS-style literal: +v asserts variable v, −v its negation.
/// Variables are numbered from 1.
using Literal = int;

struct CnfFormula {
    int variable_count = 0;
    std::vector<std::vector<Literal>> clauses;

    /// Declares a fresh variable and returns its index.
    int add_variable();

    /// Adds a clause. Literals must reference declared variables;
    /// duplicates within the clause are dropped. An empty clause is
    /// allowed and makes the formula trivially unsatisfiable.
    void add_clause(std::vector<Literal> literals);

    bool operator==(const CnfFormula&) const = default;
};

struct SatSolution {
    bool satisfiable = false;
    /// 1-based; meaningful only when satisfiable. Variables left
    /// unconstrained by the formula default to true.
    std::vector<bool> model;
};

/// Complete DPLL decision procedure: counter-based unit propagation,
/// pure-literal elimination at decision points, first-unassigned
/// branching trying true before false. Deterministic.
SatSolution dpll_solve(const CnfFormula& formula);

/// Checks a model against every clause.
bool model_satisfies(const CnfFormula& formula, const std::vector<bool>& model);

void export_dimacs(const CnfFormula& formula, const std::filesystem::path& path);
CnfFormula import_dimacs(const std::filesystem::path& path);

}  // namespace agrifleet
