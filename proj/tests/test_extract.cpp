#include "satlp/extract.hpp"
#include "satlp/fixtures.hpp"
#include "satlp/oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace satlp;

namespace {
CnfInstance two_clauses() { return CnfInstance(4, {Clause(1, -2, 3), Clause(2, 3, -4)}); }
}  // namespace

TEST_CASE("marginal expressions") {
    LinearSystem sys = build_reduced(two_clauses(), ConsistencyRule::Minimal);

    SECTION("variable in one triple") {
        SparseVec e = marginal_expression(sys, 4, +1);
        REQUIRE(e.size() == 4);
        for (const auto& [idx, c] : e) {
            CHECK(c == 1);
            const Requirement& r = sys.unknowns.requirement(idx);
            bool has = false;
            for (Literal l : r.literals()) has |= (l == 4);
            CHECK(has);
        }
    }
    SECTION("shared variable uses the lexicographically smallest triple") {
        SparseVec e = marginal_expression(sys, 2, -1);
        REQUIRE(e.size() == 4);
        // triple {1,2,3} occupies indices 0..7
        for (const auto& [idx, c] : e) CHECK(idx < 8);
    }
    SECTION("variable outside every clause") {
        CHECK_THROWS_MATCHES(marginal_expression(sys, 5, +1), ExtractError,
                             Catch::Matchers::Predicate<ExtractError>([](const auto& e) {
                                 return e.code() == ExtractErrc::FreeVariable;
                             }));
    }
    SECTION("marginals evaluate consistently on a deterministic point") {
        std::vector<bool> assignment{false, false, false, false};
        auto point = assignment_point(sys, assignment);
        for (int v = 1; v <= 4; ++v) {
            Rational acc = 0;
            for (const auto& [idx, c] : marginal_expression(sys, v, -1))
                acc += c * point[static_cast<std::size_t>(idx)];
            CHECK(acc == 1);
        }
    }
}

TEST_CASE("deterministic extraction") {
    SECTION("two clauses: ties resolve to false, giving the all-false model") {
        CnfInstance inst = two_clauses();
        AssignmentCertificate cert =
            extract_deterministic(inst, build_reduced(inst, ConsistencyRule::Minimal));
        REQUIRE(cert.status == ExtractionStatus::Success);
        for (const auto& [v, s] : cert.assignment) CHECK(s == VarState::False);
        CHECK(inst.satisfied_by(cert.to_assignment()));
        REQUIRE(cert.trace.size() == 4);
        Rational k = 0;
        for (const auto& t : cert.trace) {
            k += 1;
            CHECK(t.optimum == k);  // each successful step attains exactly k
            CHECK_FALSE(t.positive);
        }
    }
    SECTION("one clause: lands on one of the seven models") {
        CnfInstance inst(3, {Clause(1, 2, 3)});
        AssignmentCertificate cert =
            extract_deterministic(inst, build_reduced(inst, ConsistencyRule::Minimal));
        REQUIRE(cert.status == ExtractionStatus::Success);
        auto models = all_models(inst);
        CHECK(std::find(models.begin(), models.end(), cert.to_assignment()) != models.end());
    }
    SECTION("variable absent from all clauses is reported FREE and set false") {
        CnfInstance inst(4, {Clause(1, 2, 3)});
        AssignmentCertificate cert =
            extract_deterministic(inst, build_reduced(inst, ConsistencyRule::Minimal));
        REQUIRE(cert.status == ExtractionStatus::Success);
        CHECK(cert.assignment.at(4) == VarState::Free);
        CHECK_FALSE(cert.to_assignment()[3]);
        CHECK(cert.trace.size() == 3);
    }
    SECTION("infeasible input violates the precondition") {
        const CnfInstance n7 = reference_fixtures()[2].instance;
        CHECK_THROWS_MATCHES(
            extract_deterministic(n7, build_reduced(n7, ConsistencyRule::Minimal)), SolveError,
            Catch::Matchers::Predicate<SolveError>(
                [](const auto& e) { return e.code() == SolveErrc::InfeasibleSystem; }));
    }
    SECTION("random satisfiable instances extract and verify") {
        int tested = 0;
        for (std::uint64_t seed = 0; tested < 6; ++seed) {
            CnfInstance inst = generate_random_3sat(5, 6 + seed % 8, 500 + seed);
            if (!brute_force_sat(inst).satisfiable) continue;
            ++tested;
            AssignmentCertificate cert =
                extract_deterministic(inst, build_reduced(inst, ConsistencyRule::Minimal));
            REQUIRE(cert.status == ExtractionStatus::Success);
            CHECK(inst.satisfied_by(cert.to_assignment()));
        }
    }
}

TEST_CASE("separability") {
    CnfInstance inst = two_clauses();
    LinearSystem red = build_reduced(inst, ConsistencyRule::Minimal);
    LinearSystem full = build_full(inst);

    SECTION("deterministic points are separable in both modes") {
        for (const auto& model : all_models(inst)) {
            CHECK(is_separable(red, assignment_point(red, model)));
            CHECK(is_separable(full, assignment_point(full, model)));
        }
    }
    SECTION("every 0/1 vertex is separable") {
        for (const auto& v : enumerate_vertices(red)) {
            bool deterministic = true;
            for (const Rational& x : v) deterministic &= (x == 0 || x == 1);
            if (deterministic) CHECK(is_separable(red, v));
        }
    }
    SECTION("midpoints of assignments differing in two or more variables entangle") {
        auto models = all_models(inst);
        std::vector<bool> a = models.front();
        for (const auto& b : models) {
            int diff = 0;
            for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i];
            if (diff == 0) continue;
            auto mid_full = mixture_point(full, {a, b});
            auto mid_red = mixture_point(red, {a, b});
            if (diff == 1) {
                CHECK(is_separable(full, mid_full));
                CHECK(is_separable(red, mid_red));
            } else {
                CHECK_FALSE(is_separable(full, mid_full));
                CHECK_FALSE(is_separable(red, mid_red));
            }
        }
    }
    SECTION("points violating cross-triple consistency are rejected") {
        std::vector<Rational> bad(16, Rational(0));
        bad[static_cast<std::size_t>(red.unknowns.index_of(Requirement::of({1, 2, 3})))] = 1;
        bad[static_cast<std::size_t>(red.unknowns.index_of(Requirement::of({-2, -3, -4})))] = 1;
        CHECK_THROWS_MATCHES(is_separable(red, bad), ExtractError,
                             Catch::Matchers::Predicate<ExtractError>([](const auto& e) {
                                 return e.code() == ExtractErrc::InconsistentPoint;
                             }));
    }
}
