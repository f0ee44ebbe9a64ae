#include <doctest.h>

#include <random>

#include "agrifleet/errors.hpp"
#include "agrifleet/pbencode.hpp"
#include "agrifleet/sat.hpp"

using namespace agrifleet;

namespace {

CnfFormula with_vars(int n) {
    CnfFormula f;
    for (int v = 0; v < n; ++v) f.add_variable();
    return f;
}

/// Exhaustively decides whether some assignment consistent with the
/// pinned literals satisfies every constraint. n ≤ 12.
bool enumeration_satisfiable(int n, const std::vector<PBConstraint>& constraints,
                             const std::vector<Literal>& pins) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<bool> model(static_cast<size_t>(n) + 1);
        for (int v = 1; v <= n; ++v) model[v] = (mask >> (v - 1)) & 1;
        bool ok = true;
        for (Literal pin : pins) {
            const int v = pin > 0 ? pin : -pin;
            if (model[v] != (pin > 0)) {
                ok = false;
                break;
            }
        }
        for (const PBConstraint& c : constraints) {
            if (!ok) break;
            ok = pb_holds(c, model);
        }
        if (ok) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("single constraint boundaries encode exactly") {
    // 3 variables with coefficients 5, 7, 11; sum ranges over subsets.
    auto solve_with = [](PBRelation rel, std::int64_t bound, std::vector<Literal> pins) {
        CnfFormula f = with_vars(3);
        for (Literal p : pins) f.add_clause({p});
        encode_pb(f, {{{5, 1}, {7, 2}, {11, 3}}, rel, bound});
        return dpll_solve(f).satisfiable;
    };

    CHECK(solve_with(PBRelation::less_equal, 23, {1, 2, 3}));       // 23 ≤ 23
    CHECK_FALSE(solve_with(PBRelation::less_equal, 22, {1, 2, 3}));  // 23 > 22
    CHECK(solve_with(PBRelation::greater_equal, 23, {1, 2, 3}));
    CHECK_FALSE(solve_with(PBRelation::greater_equal, 24, {1, 2, 3}));
    CHECK(solve_with(PBRelation::less_equal, 0, {-1, -2, -3}));
    CHECK_FALSE(solve_with(PBRelation::greater_equal, 1, {-1, -2, -3}));
    // Free variables: the solver must find the satisfying subset.
    CHECK(solve_with(PBRelation::less_equal, 11, {}));
    CHECK(solve_with(PBRelation::greater_equal, 23, {}));
    CHECK_FALSE(solve_with(PBRelation::greater_equal, 24, {}));
}

TEST_CASE("trivial bounds short-circuit") {
    SUBCASE("negative upper bound is an immediate contradiction") {
        CnfFormula f = with_vars(2);
        encode_pb(f, {{{3, 1}, {4, 2}}, PBRelation::less_equal, -1});
        CHECK_FALSE(dpll_solve(f).satisfiable);
    }
    SUBCASE("non-positive lower bound adds nothing") {
        CnfFormula f = with_vars(2);
        const std::size_t before = f.clauses.size();
        encode_pb(f, {{{3, 1}, {4, 2}}, PBRelation::greater_equal, 0});
        CHECK(f.clauses.size() == before);
        CHECK(dpll_solve(f).satisfiable);
    }
    SUBCASE("unreachable lower bound is unsatisfiable") {
        CnfFormula f = with_vars(2);
        encode_pb(f, {{{3, 1}, {4, 2}}, PBRelation::greater_equal, 8});
        CHECK_FALSE(dpll_solve(f).satisfiable);
    }
}

TEST_CASE("bad terms are rejected") {
    CnfFormula f = with_vars(2);
    CHECK_THROWS_AS(encode_pb(f, {{{0, 1}}, PBRelation::less_equal, 5}), EncodingError);
    CHECK_THROWS_AS(encode_pb(f, {{{-2, 1}}, PBRelation::less_equal, 5}), EncodingError);
    CHECK_THROWS_AS(encode_pb(f, {{{3, 9}}, PBRelation::less_equal, 5}), EncodingError);
    CHECK_THROWS_AS(encode_pb(f, {{{3, 0}}, PBRelation::less_equal, 5}), EncodingError);
}

TEST_CASE("passing the node limit switches to the adder network") {
    PBConstraint wide;
    wide.relation = PBRelation::less_equal;
    wide.bound = 1u << 13;
    for (int v = 1; v <= 12; ++v) wide.terms.push_back({1 << v, v});

    CnfFormula f = with_vars(12);
    encode_pb(f, wide, 40);
    // The counter would need a state per distinct subset sum; the adder
    // stays linear in terms × bits.
    CHECK(f.clauses.size() < 4000);
    CHECK(dpll_solve(f).satisfiable);

    // Exact equivalence against enumeration, free and pinned.
    for (unsigned mask = 0; mask < (1u << 12); mask += 397) {
        CnfFormula pinned = with_vars(12);
        std::vector<Literal> pins;
        for (int v = 1; v <= 12; ++v) pins.push_back((mask >> (v - 1)) & 1 ? v : -v);
        for (Literal p : pins) pinned.add_clause({p});
        encode_pb(pinned, wide, 40);
        CHECK(dpll_solve(pinned).satisfiable == enumeration_satisfiable(12, {wide}, pins));
    }
}

TEST_CASE("adder-network encodings match exhaustive enumeration") {
    // Same harness as the counter path, with the switch forced.
    std::mt19937_64 rng(5150);
    for (int round = 0; round < 400; ++round) {
        const int n = 1 + static_cast<int>(rng() % 12);
        std::vector<PBConstraint> constraints;
        const int constraint_count = 1 + static_cast<int>(rng() % 2);
        for (int c = 0; c < constraint_count; ++c) {
            PBConstraint pb;
            pb.relation = rng() % 2 == 0 ? PBRelation::less_equal : PBRelation::greater_equal;
            std::int64_t total = 0;
            for (int v = 1; v <= n; ++v) {
                if (rng() % 4 == 0) continue;
                const std::int64_t coef = 1 + static_cast<std::int64_t>(rng() % 50);
                const Literal lit = rng() % 5 == 0 ? -v : v;
                pb.terms.push_back({coef, lit});
                total += coef;
            }
            pb.bound = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(total + 10)) -
                       2;
            constraints.push_back(std::move(pb));
        }
        std::vector<Literal> pins;
        for (int v = 1; v <= n; ++v) {
            const auto roll = rng() % 3;
            if (roll == 0) pins.push_back(v);
            if (roll == 1) pins.push_back(-v);
        }

        CnfFormula f = with_vars(n);
        for (Literal p : pins) f.add_clause({p});
        for (const PBConstraint& c : constraints) encode_pb(f, c, 1);
        const SatSolution got = dpll_solve(f);
        const bool expected = enumeration_satisfiable(n, constraints, pins);
        REQUIRE(got.satisfiable == expected);
        if (got.satisfiable) {
            for (const PBConstraint& c : constraints) {
                CHECK(pb_holds(c, got.model));
            }
        }
    }
}

TEST_CASE("adder network handles wide pinned instances instantly") {
    // The shape design verification produces: every input pinned, large
    // distinct coefficients, far too many reachable sums for the
    // counter.
    std::mt19937_64 rng(777);
    for (int round = 0; round < 50; ++round) {
        const int n = 40;
        CnfFormula f = with_vars(n);
        PBConstraint pb;
        pb.relation = round % 2 == 0 ? PBRelation::less_equal : PBRelation::greater_equal;
        std::vector<bool> model(static_cast<std::size_t>(n) + 1);
        std::int64_t pinned_sum = 0;
        for (int v = 1; v <= n; ++v) {
            const std::int64_t coef = 1 + static_cast<std::int64_t>(rng() % 1'000'000);
            pb.terms.push_back({coef, v});
            model[v] = rng() % 2 == 0;
            if (model[v]) pinned_sum += coef;
            f.add_clause({model[v] ? v : -v});
        }
        pb.bound = static_cast<std::int64_t>(rng() % 20'000'000);
        encode_pb(f, pb);
        const SatSolution got = dpll_solve(f);
        REQUIRE(got.satisfiable == pb_holds(pb, model));
        CHECK(got.satisfiable ==
              (pb.relation == PBRelation::less_equal ? pinned_sum <= pb.bound
                                                     : pinned_sum >= pb.bound));
    }
}

TEST_CASE("order-encoded counters combine with the sum encoding") {
    // 5 unary slots of one line at 7 cost units each, count pinned to 3.
    auto bounded = [](std::int64_t bound) {
        CnfFormula f = with_vars(5);
        for (int k = 2; k <= 5; ++k) f.add_clause({-k, k - 1});
        f.add_clause({3});    // at least 3 units
        f.add_clause({-4});   // fewer than 4 units
        PBConstraint c;
        c.relation = PBRelation::less_equal;
        c.bound = bound;
        for (int v = 1; v <= 5; ++v) c.terms.push_back({7, v});
        encode_pb(f, c);
        return dpll_solve(f).satisfiable;
    };
    CHECK(bounded(21));
    CHECK_FALSE(bounded(20));
}

TEST_CASE("random constraint systems match exhaustive enumeration") {
    std::mt19937_64 rng(90125);
    for (int round = 0; round < 400; ++round) {
        const int n = 1 + static_cast<int>(rng() % 12);
        std::vector<PBConstraint> constraints;
        const int constraint_count = 1 + static_cast<int>(rng() % 2);
        for (int c = 0; c < constraint_count; ++c) {
            PBConstraint pb;
            pb.relation = rng() % 2 == 0 ? PBRelation::less_equal : PBRelation::greater_equal;
            std::int64_t total = 0;
            for (int v = 1; v <= n; ++v) {
                if (rng() % 4 == 0) continue;  // not every var in every constraint
                const std::int64_t coef = 1 + static_cast<std::int64_t>(rng() % 50);
                const Literal lit = rng() % 5 == 0 ? -v : v;
                pb.terms.push_back({coef, lit});
                total += coef;
            }
            pb.bound = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(total + 10)) -
                       2;  // occasionally negative or above the ceiling
            constraints.push_back(std::move(pb));
        }
        std::vector<Literal> pins;
        for (int v = 1; v <= n; ++v) {
            const auto roll = rng() % 3;
            if (roll == 0) pins.push_back(v);
            if (roll == 1) pins.push_back(-v);
        }

        CnfFormula f = with_vars(n);
        for (Literal p : pins) f.add_clause({p});
        for (const PBConstraint& c : constraints) encode_pb(f, c);
        const SatSolution got = dpll_solve(f);
        const bool expected = enumeration_satisfiable(n, constraints, pins);
        REQUIRE(got.satisfiable == expected);
        if (got.satisfiable) {
            for (const PBConstraint& c : constraints) {
                CHECK(pb_holds(c, got.model));
            }
        }
    }
}

TEST_CASE("encoding is deterministic") {
    auto build = [] {
        CnfFormula f = with_vars(6);
        PBConstraint c{{{5, 1}, {9, -2}, {2, 3}, {8, 4}, {3, 5}, {12, 6}},
                       PBRelation::less_equal, 17};
        encode_pb(f, c);
        return f;
    };
    CHECK(build() == build());
}
