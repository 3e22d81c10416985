#include "satlp/build.hpp"
#include "satlp/fixtures.hpp"
#include "satlp/simplex.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace satlp;

namespace {

CnfInstance one_clause() { return CnfInstance(3, {Clause(1, 2, 3)}); }
CnfInstance two_clauses() { return CnfInstance(4, {Clause(1, -2, 3), Clause(2, 3, -4)}); }

// P(1) + P(-1) = 1 over two unknowns
LinearSystem tautology_system() {
    RelevantSet rs;
    rs.singles = {1};
    UnknownTable table(rs, SystemMode::Full);
    std::vector<Row> rows{
        Row{{{0, Rational(1)}, {1, Rational(1)}}, Rational(1), RowTag::Normalization}};
    return LinearSystem{SystemMode::Full, std::nullopt, rs, std::move(table), std::move(rows)};
}

// disjunction of the two complete requirements (1;2) and (-1;-2) over n=2
LinearSystem two_requirement_system() {
    RelevantSet rs;
    rs.pairs = {{1, 2}};
    rs.singles = {1, 2};
    UnknownTable table(rs, SystemMode::Full);
    int xi1 = table.index_of(Requirement::of({1, 2}));
    int xi2 = table.index_of(Requirement::of({-1, -2}));
    int o1 = table.index_of(Requirement::of({-1, 2}));
    int o2 = table.index_of(Requirement::of({1, -2}));
    std::vector<Row> rows;
    rows.push_back(Row{{{std::min(xi1, xi2), Rational(1)}, {std::max(xi1, xi2), Rational(1)}},
                       Rational(1), RowTag::Normalization});
    rows.push_back(Row{{{o1, Rational(1)}}, Rational(0), RowTag::Specific});
    rows.push_back(Row{{{o2, Rational(1)}}, Rational(0), RowTag::Specific});
    // ignore the single-variable unknowns: pin them by marginalization rows
    for (int v : {1, 2}) {
        for (int s : {-1, +1}) {
            SparseVec c{{table.index_of(Requirement::of({s * v})), Rational(1)}};
            for (int so : {-1, +1}) {
                int other = v == 1 ? 2 : 1;
                c.emplace_back(table.index_of(Requirement::of({s * v, so * other})), Rational(-1));
            }
            std::sort(c.begin(), c.end(), [](auto& a, auto& b) { return a.first < b.first; });
            rows.push_back(Row{std::move(c), Rational(0), RowTag::SingleMarginal});
        }
    }
    return LinearSystem{SystemMode::Full, std::nullopt, rs, std::move(table), std::move(rows)};
}

}  // namespace

TEST_CASE("rank") {
    CHECK(system_rank(tautology_system()) == 1);
    CHECK(system_rank(build_reduced(two_clauses(), ConsistencyRule::Verbose)) == 7);
    CHECK(system_rank(build_reduced(two_clauses(), ConsistencyRule::Minimal)) == 7);

    SECTION("invariant under row permutation and nonzero scaling") {
        LinearSystem sys = build_reduced(two_clauses(), ConsistencyRule::Verbose);
        LinearSystem tweaked = sys;
        std::reverse(tweaked.rows.begin(), tweaked.rows.end());
        int k = 0;
        for (Row& r : tweaked.rows) {
            Rational f(2 + (k % 5), 1 + (k % 3));
            if (k % 2) f = -f;
            for (auto& [c, v] : r.coeffs) v *= f;
            r.rhs *= f;
            ++k;
        }
        CHECK(system_rank(tweaked) == 7);
    }
}

TEST_CASE("phase-1 feasibility with exact witnesses") {
    SECTION("one clause") {
        LinearSystem sys = build_reduced(one_clause(), ConsistencyRule::Minimal);
        FeasibilityVerdict v = phase1_feasibility(sys);
        REQUIRE(v.feasible);
        CHECK(sys.satisfied_by(v.point));
    }
    SECTION("two clauses: the all-false vertex is a solution") {
        LinearSystem sys = build_reduced(two_clauses(), ConsistencyRule::Verbose);
        FeasibilityVerdict v = phase1_feasibility(sys);
        REQUIRE(v.feasible);
        CHECK(sys.satisfied_by(v.point));

        std::vector<Rational> displayed(16, Rational(0));
        displayed[static_cast<std::size_t>(
            sys.unknowns.index_of(Requirement::of({-1, -2, -3})))] = 1;
        displayed[static_cast<std::size_t>(
            sys.unknowns.index_of(Requirement::of({-2, -3, -4})))] = 1;
        CHECK(sys.satisfied_by(displayed));
        auto vertices = enumerate_vertices(sys);
        CHECK(std::find(vertices.begin(), vertices.end(), displayed) != vertices.end());
    }
    SECTION("sign contradiction yields the unit certificate") {
        LinearSystem sys = tautology_system();
        sys.rows = {Row{{{0, Rational(1)}}, Rational(-1), RowTag::Specific}};
        FeasibilityVerdict v = phase1_feasibility(sys);
        REQUIRE_FALSE(v.feasible);
        REQUIRE(v.certificate.multipliers.size() == 1);
        CHECK(v.certificate.multipliers[0].first == 0);
        CHECK(v.certificate.multipliers[0].second == 1);
        CHECK(verify_farkas(sys, v.certificate));
    }
    SECTION("inconsistent equalities caught during reduction") {
        LinearSystem sys = tautology_system();
        sys.rows.push_back(Row{{{0, Rational(1)}, {1, Rational(1)}}, Rational(2), RowTag::Specific});
        FeasibilityVerdict v = phase1_feasibility(sys);
        REQUIRE_FALSE(v.feasible);
        CHECK(verify_farkas(sys, v.certificate));
    }
}

TEST_CASE("verify_farkas rejects bad certificates") {
    LinearSystem sys = build_reduced(two_clauses(), ConsistencyRule::Minimal);
    REQUIRE(phase1_feasibility(sys).feasible);
    // no multiplier vector can certify a feasible system
    for (int pattern = 0; pattern < 6; ++pattern) {
        FarkasCertificate cert;
        for (int i = 0; i < static_cast<int>(sys.rows.size()); ++i) {
            int v = ((i + pattern) % 5) - 2;
            if (v != 0) cert.multipliers.emplace_back(i, Rational(v));
        }
        CHECK_FALSE(verify_farkas(sys, cert));
    }
    FarkasCertificate bad;
    bad.multipliers.emplace_back(999, Rational(1));
    CHECK_THROWS_MATCHES(verify_farkas(sys, bad), SolveError,
                         Catch::Matchers::Predicate<SolveError>(
                             [](const auto& e) { return e.code() == SolveErrc::IndexOutOfRange; }));
}

TEST_CASE("maximize") {
    LinearSystem sys = build_reduced(one_clause(), ConsistencyRule::Minimal);
    ExactSolver solver(sys);
    SECTION("a satisfiable pattern reaches probability one") {
        SparseVec obj{{sys.unknowns.index_of(Requirement::of({-1, -2, 3})), Rational(1)}};
        auto opt = solver.maximize(obj);
        CHECK(opt.value == 1);
        CHECK(sys.satisfied_by(opt.point));
    }
    SECTION("the zeroed complement pattern stays at zero") {
        SparseVec obj{{sys.unknowns.index_of(Requirement::of({-1, -2, -3})), Rational(1)}};
        CHECK(solver.maximize(obj).value == 0);
    }
    SECTION("zero objective") {
        CHECK(solver.maximize({}).value == 0);
    }
    SECTION("maximize on an infeasible system is an error") {
        LinearSystem bad = tautology_system();
        bad.rows = {Row{{{0, Rational(1)}}, Rational(-1), RowTag::Specific}};
        ExactSolver s2(bad);
        CHECK_THROWS_MATCHES(s2.maximize({}), SolveError,
                             Catch::Matchers::Predicate<SolveError>([](const auto& e) {
                                 return e.code() == SolveErrc::InfeasibleSystem;
                             }));
    }
    SECTION("unbounded objective is reported") {
        LinearSystem open = tautology_system();
        open.rows = {Row{{{0, Rational(1)}, {1, Rational(-1)}}, Rational(0), RowTag::Normalization}};
        ExactSolver s2(open);
        CHECK_THROWS_MATCHES(s2.maximize({{0, Rational(1)}}), SolveError,
                             Catch::Matchers::Predicate<SolveError>([](const auto& e) {
                                 return e.code() == SolveErrc::UnboundedObjective;
                             }));
    }
}

TEST_CASE("vertex enumeration") {
    SECTION("classical bit: two deterministic solutions") {
        auto verts = enumerate_vertices(tautology_system());
        REQUIRE(verts.size() == 2);
        CHECK(verts[0] == std::vector<Rational>{0, 1});
        CHECK(verts[1] == std::vector<Rational>{1, 0});
    }
    SECTION("disjunction of two complete requirements: a segment") {
        LinearSystem sys = two_requirement_system();
        auto verts = enumerate_vertices(sys);
        REQUIRE(verts.size() == 2);
        for (const auto& v : verts) {
            Rational xi1 = v[static_cast<std::size_t>(sys.unknowns.index_of(Requirement::of({1, 2})))];
            Rational xi2 =
                v[static_cast<std::size_t>(sys.unknowns.index_of(Requirement::of({-1, -2})))];
            CHECK(xi1 + xi2 == 1);
            CHECK((xi1 == 0 || xi1 == 1));
        }
    }
    SECTION("one-clause polytope has exactly seven 0/1 vertices") {
        LinearSystem sys = build_reduced(one_clause(), ConsistencyRule::Minimal);
        auto verts = enumerate_vertices(sys);
        REQUIRE(verts.size() == 7);
        for (const auto& v : verts)
            for (const Rational& x : v) CHECK((x == 0 || x == 1));
    }
    SECTION("guard") {
        LinearSystem sys = build_reduced(two_clauses(), ConsistencyRule::Minimal);
        CHECK_THROWS_MATCHES(enumerate_vertices(sys, 8), SolveError,
                             Catch::Matchers::Predicate<SolveError>(
                                 [](const auto& e) { return e.code() == SolveErrc::TooLarge; }));
    }
    SECTION("agrees with phase-1 on feasibility") {
        // enumeration cost is C(unknowns, rank): keep to one or two triples
        int infeasible_seen = 0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            CnfInstance inst = generate_random_3sat(4, 2, 300 + seed);
            LinearSystem sys = build_reduced(inst, ConsistencyRule::Minimal);
            bool feasible = phase1_feasibility(sys).feasible;
            auto verts = enumerate_vertices(sys);
            CHECK(feasible == !verts.empty());
            infeasible_seen += !feasible;
            for (const auto& v : verts) CHECK(sys.satisfied_by(v));
        }
        // all eight sign patterns on one triple: infeasible and vertex-free
        std::vector<Clause> all;
        for (int sa : {-1, 1})
            for (int sb : {-1, 1})
                for (int sc : {-1, 1}) all.emplace_back(sa * 1, sb * 2, sc * 3);
        LinearSystem sys8 =
            build_reduced(CnfInstance(3, std::move(all)), ConsistencyRule::Minimal);
        CHECK_FALSE(phase1_feasibility(sys8).feasible);
        CHECK(enumerate_vertices(sys8).empty());
    }
}

TEST_CASE("fixture verdicts in both modes") {
    auto fixtures = reference_fixtures();
    const CnfInstance& n7 = fixtures[2].instance;
    const CnfInstance& n10 = fixtures[3].instance;

    LinearSystem n7_red = build_reduced(n7, ConsistencyRule::Minimal);
    FeasibilityVerdict v7r = phase1_feasibility(n7_red);
    REQUIRE_FALSE(v7r.feasible);
    CHECK(verify_farkas(n7_red, v7r.certificate));

    LinearSystem n7_full = build_full(n7);
    FeasibilityVerdict v7f = phase1_feasibility(n7_full);
    REQUIRE_FALSE(v7f.feasible);
    CHECK(verify_farkas(n7_full, v7f.certificate));

    LinearSystem n10_red = build_reduced(n10, ConsistencyRule::Minimal);
    FeasibilityVerdict v10r = phase1_feasibility(n10_red);
    REQUIRE(v10r.feasible);
    CHECK(n10_red.satisfied_by(v10r.point));

    LinearSystem n10_full = build_full(n10);
    FeasibilityVerdict v10f = phase1_feasibility(n10_full);
    REQUIRE(v10f.feasible);
    CHECK(n10_full.satisfied_by(v10f.point));
}

TEST_CASE("feasible points stay inside the unit box") {
    // bounds are implied by the rows, never added as extra constraints
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        CnfInstance inst = generate_random_3sat(5, 4 + seed, 400 + seed);
        for (auto rule : {ConsistencyRule::Minimal, ConsistencyRule::Verbose}) {
            LinearSystem sys = build_reduced(inst, rule);
            FeasibilityVerdict v = phase1_feasibility(sys);
            if (!v.feasible) continue;
            for (const Rational& x : v.point) {
                CHECK(x >= 0);
                CHECK(x <= 1);
            }
        }
    }
}
