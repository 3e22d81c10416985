#pragma once

#include "satlp/cnf.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace satlp {

// Recorded expectations for a bundled instance. Component counts refer to the
// reduced system under the minimal rule; -1 marks values with no recorded
// expectation. `recorded_cross_single_deviation` carries the one count whose
// recorded value is not reproducible under any generation rule we found; the
// reproduction command reports it as a documented discrepancy instead of a
// failure (see README).
struct FixtureExpectation {
    int full_unknowns = -1;
    int full_rows = -1;
    int reduced_unknowns = -1;
    int norm = -1;
    int cross_single = -1;
    int cross_pair = -1;
    int specific = -1;
    std::optional<int> recorded_cross_single_deviation;  // value we actually reproduce
    int rank = -1;       // soft target: reported and compared, never asserted hard
    bool feasible = false;
    std::uint64_t model_count = 0;
};

struct ReferenceFixture {
    std::string name;
    CnfInstance instance;
    FixtureExpectation expect;
};

inline std::vector<ReferenceFixture> reference_fixtures() {
    std::vector<ReferenceFixture> out;

    {
        CnfInstance inst(3, {Clause(1, 2, 3)});
        FixtureExpectation e;
        e.full_unknowns = 26;
        e.full_rows = 28;
        e.reduced_unknowns = 8;
        e.norm = 1;
        e.cross_single = 0;
        e.cross_pair = 0;
        e.specific = 1;
        e.rank = 2;
        e.feasible = true;
        e.model_count = 7;
        out.push_back({"ex1-one-clause", std::move(inst), e});
    }
    {
        CnfInstance inst(4, {Clause(1, -2, 3), Clause(2, 3, -4)});
        FixtureExpectation e;
        e.full_unknowns = 44;
        e.full_rows = 50;
        e.reduced_unknowns = 16;
        e.norm = 2;
        e.cross_single = 4;
        e.cross_pair = 4;
        e.specific = 2;
        e.rank = 7;
        e.feasible = true;
        e.model_count = 12;
        out.push_back({"ex2-two-clauses", std::move(inst), e});
    }
    {
        std::vector<Clause> cs = {
            Clause(-1, 2, -3), Clause(1, 2, -3),  Clause(-1, 2, 3),  Clause(-2, -3, -4),
            Clause(1, 2, 4),   Clause(-1, -2, -5), Clause(-2, -4, -5), Clause(3, -4, -5),
            Clause(2, -3, 5),  Clause(-3, -4, 5), Clause(-3, 4, 5),  Clause(-1, -4, -6),
            Clause(-4, -5, -6), Clause(-2, 5, -6), Clause(-3, 5, -6), Clause(-1, -5, 6),
            Clause(-1, 5, 6),  Clause(-2, 5, 6),  Clause(1, -2, -7), Clause(-2, -3, -7),
            Clause(1, -4, -7), Clause(-2, 4, -7), Clause(-3, 5, -7), Clause(2, 3, 7),
            Clause(-3, 4, 7),  Clause(4, -5, 7),  Clause(-4, 6, 7)};
        CnfInstance inst(7, std::move(cs));
        FixtureExpectation e;
        e.reduced_unknowns = 160;
        e.norm = 20;
        e.cross_single = 126;
        e.recorded_cross_single_deviation = 106;
        e.cross_pair = 156;
        e.specific = 27;
        e.rank = 139;
        e.feasible = false;
        e.model_count = 0;
        out.push_back({"ex3-unsat-n7", std::move(inst), e});
    }
    {
        std::vector<Clause> cs = {
            Clause(2, -3, -4),  Clause(-1, -3, 4),  Clause(-1, -2, -5), Clause(-1, 2, -5),
            Clause(-2, -3, -5), Clause(2, -4, -5),  Clause(-2, 4, 5),   Clause(1, 3, 6),
            Clause(3, 5, 6),    Clause(4, 5, 6),    Clause(2, 5, -7),   Clause(-4, 6, -7),
            Clause(-2, -3, -8), Clause(2, -3, -8),  Clause(3, -4, -8),  Clause(-4, -5, -8),
            Clause(-1, 5, -8),  Clause(1, 6, -8),   Clause(2, 6, -8),   Clause(1, 4, 8),
            Clause(1, -7, 8),   Clause(3, -7, 8),   Clause(-4, 5, -9),  Clause(4, 6, -9),
            Clause(6, -7, -9),  Clause(4, 7, -9),   Clause(5, 7, -9),   Clause(-2, 8, -9),
            Clause(-1, 3, 9),   Clause(1, -6, 9),   Clause(5, -8, 9),   Clause(1, -2, -10),
            Clause(2, 3, -10),  Clause(-3, -6, -10), Clause(1, -7, 10),  Clause(5, -7, 10),
            Clause(-5, 8, 10),  Clause(5, 8, 10),   Clause(-5, 9, 10)};
        CnfInstance inst(10, std::move(cs));
        FixtureExpectation e;
        e.reduced_unknowns = 280;
        e.norm = 35;
        e.cross_single = 190;
        e.cross_pair = 244;
        e.specific = 39;
        e.rank = 230;
        e.feasible = true;
        e.model_count = 1;
        out.push_back({"ex4-sat-n10", std::move(inst), e});
    }
    return out;
}

}  // namespace satlp
