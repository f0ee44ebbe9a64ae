#pragma once

#include <cstdint>
#include <random>

#include "agrifleet/sat.hpp"

namespace testsupport {

/// Word-parallel truth-table satisfiability oracle for n ≤ 20
/// variables: assignments are table indices, evaluated 64 at a time.
/// Independent of the DPLL implementation under test.
inline bool truth_table_satisfiable(const agrifleet::CnfFormula& f) {
    const int n = f.variable_count;
    // Bit patterns of variables 1..6 within one 64-assignment word.
    static constexpr std::uint64_t kPattern[7] = {
        0,
        0xAAAAAAAAAAAAAAAAull,
        0xCCCCCCCCCCCCCCCCull,
        0xF0F0F0F0F0F0F0F0ull,
        0xFF00FF00FF00FF00ull,
        0xFFFF0000FFFF0000ull,
        0xFFFFFFFF00000000ull,
    };
    const std::uint64_t word_count = n > 6 ? (1ull << (n - 6)) : 1;
    const std::uint64_t tail_mask =
        n >= 6 ? ~0ull : ((1ull << (1u << n)) - 1);  // valid assignments in the only word
    for (std::uint64_t w = 0; w < word_count; ++w) {
        std::uint64_t alive = tail_mask;
        for (const auto& clause : f.clauses) {
            std::uint64_t clause_true = 0;
            for (int lit : clause) {
                const int v = lit > 0 ? lit : -lit;
                const std::uint64_t column =
                    v <= 6 ? kPattern[v] : ((w >> (v - 7)) & 1 ? ~0ull : 0ull);
                clause_true |= lit > 0 ? column : ~column;
            }
            alive &= clause_true;
            if (alive == 0) break;
        }
        if (alive != 0) return true;
    }
    return false;
}

/// Random 3-CNF at the given clause/variable ratio; deterministic in
/// the generator state.
inline agrifleet::CnfFormula random_3cnf(std::mt19937_64& rng, int variables,
                                         double clause_ratio = 3.0) {
    agrifleet::CnfFormula f;
    for (int v = 0; v < variables; ++v) f.add_variable();
    const int clauses = static_cast<int>(variables * clause_ratio);
    for (int c = 0; c < clauses; ++c) {
        int a = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(variables));
        int b = a, d = a;
        while (b == a) b = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(variables));
        while (d == a || d == b) {
            d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(variables));
        }
        auto sign = [&](int v2) { return rng() % 2 == 0 ? v2 : -v2; };
        f.add_clause({sign(a), sign(b), sign(d)});
    }
    return f;
}

}  // namespace testsupport
