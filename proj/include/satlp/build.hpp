#pragma once

#include "satlp/system.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <vector>

namespace satlp {

namespace detail {

inline void push_sorted(SparseVec& v, int idx, Rational c) {
    v.emplace_back(idx, std::move(c));
}

inline void finish_row(std::vector<Row>& rows, SparseVec coeffs, Rational rhs, RowTag tag) {
    std::sort(coeffs.begin(), coeffs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    rows.push_back(Row{std::move(coeffs), std::move(rhs), tag});
}

// indices of the 4 sign patterns of `tri` in which variable v carries sign s
inline SparseVec triple_marginal_terms(const UnknownTable& table, const std::array<int, 3>& tri,
                                       int v, int s, const Rational& coeff) {
    SparseVec out;
    for (int sa : {-1, +1})
        for (int sb : {-1, +1})
            for (int sc : {-1, +1}) {
                std::array<Literal, 3> lits{sa * tri[0], sb * tri[1], sc * tri[2]};
                bool match = false;
                for (Literal l : lits)
                    if (l == s * v) match = true;
                if (match) out.emplace_back(table.index_of(Requirement::of(lits)), coeff);
            }
    return out;
}

// the 2 sign patterns of `tri` in which pair (u,v) carries signs (su,sv)
inline SparseVec triple_pair_terms(const UnknownTable& table, const std::array<int, 3>& tri,
                                   int u, int su, int v, int sv, const Rational& coeff) {
    SparseVec out;
    for (int sa : {-1, +1})
        for (int sb : {-1, +1})
            for (int sc : {-1, +1}) {
                std::array<Literal, 3> lits{sa * tri[0], sb * tri[1], sc * tri[2]};
                bool mu = false, mv = false;
                for (Literal l : lits) {
                    if (l == su * u) mu = true;
                    if (l == sv * v) mv = true;
                }
                if (mu && mv) out.emplace_back(table.index_of(Requirement::of(lits)), coeff);
            }
    return out;
}

}  // namespace detail

// Full system: marginalization identities over every relevant single, pair and
// triple, plus one zeroed clause-complement unknown per clause.
inline LinearSystem build_full(const CnfInstance& inst) {
    if (inst.num_clauses() == 0)
        throw CnfError(CnfErrc::EmptyInstance, "no clauses: nothing to build");
    RelevantSet rs = RelevantSet::of(inst);
    UnknownTable table(rs, SystemMode::Full);
    std::vector<Row> rows;

    for (int v : rs.singles) {
        SparseVec c;
        detail::push_sorted(c, table.index_of(Requirement::of({-v})), 1);
        detail::push_sorted(c, table.index_of(Requirement::of({v})), 1);
        detail::finish_row(rows, std::move(c), 1, RowTag::Normalization);
    }
    // P(s*a) - P(s*a; b) - P(s*a; -b) = 0, both members, both signs
    for (const auto& p : rs.pairs) {
        for (int keep : {0, 1}) {
            int a = p[static_cast<std::size_t>(keep)];
            int b = p[static_cast<std::size_t>(1 - keep)];
            for (int s : {-1, +1}) {
                SparseVec c;
                detail::push_sorted(c, table.index_of(Requirement::of({s * a})), 1);
                detail::push_sorted(c, table.index_of(Requirement::of({s * a, b})), -1);
                detail::push_sorted(c, table.index_of(Requirement::of({s * a, -b})), -1);
                detail::finish_row(rows, std::move(c), 0, RowTag::SingleMarginal);
            }
        }
    }
    // P(su*u; sv*v) - P(su*u; sv*v; w) - P(su*u; sv*v; -w) = 0, 3 positions x 4 signs
    for (const auto& t : rs.triples) {
        for (int drop = 0; drop < 3; ++drop) {
            int u = t[static_cast<std::size_t>((drop + 1) % 3)];
            int v = t[static_cast<std::size_t>((drop + 2) % 3)];
            if (u > v) std::swap(u, v);
            int w = t[static_cast<std::size_t>(drop)];
            for (int su : {-1, +1})
                for (int sv : {-1, +1}) {
                    SparseVec c;
                    detail::push_sorted(c, table.index_of(Requirement::of({su * u, sv * v})), 1);
                    detail::push_sorted(c, table.index_of(Requirement::of({su * u, sv * v, w})), -1);
                    detail::push_sorted(c, table.index_of(Requirement::of({su * u, sv * v, -w})),
                                        -1);
                    detail::finish_row(rows, std::move(c), 0, RowTag::PairMarginal);
                }
        }
    }
    for (const Clause& cl : inst.clauses()) {
        SparseVec c;
        detail::push_sorted(c, table.index_of(clause_complement(cl)), 1);
        detail::finish_row(rows, std::move(c), 0, RowTag::Specific);
    }
    return LinearSystem{SystemMode::Full, std::nullopt, std::move(rs), std::move(table),
                        std::move(rows)};
}

// Reduced system over 3-literal unknowns only. Per triple one normalization
// row; cross rows equate marginals between triples sharing a variable (2 rows,
// one per sign) or a variable pair (4 rows, one per sign pattern). Minimal
// links consecutive triples in lexicographic order, Verbose links all pairs;
// the skipped Minimal rows are sums of emitted ones, so the feasible sets
// coincide.
inline LinearSystem build_reduced(const CnfInstance& inst,
                                  ConsistencyRule rule = ConsistencyRule::Minimal) {
    if (inst.num_clauses() == 0)
        throw CnfError(CnfErrc::EmptyInstance, "no clauses: nothing to build");
    RelevantSet rs = RelevantSet::of(inst);
    UnknownTable table(rs, SystemMode::Reduced);
    std::vector<Row> rows;

    for (const auto& t : rs.triples) {
        SparseVec c;
        for (int sa : {-1, +1})
            for (int sb : {-1, +1})
                for (int sc : {-1, +1})
                    detail::push_sorted(
                        c, table.index_of(Requirement::of({sa * t[0], sb * t[1], sc * t[2]})), 1);
        detail::finish_row(rows, std::move(c), 1, RowTag::TripleNormalization);
    }

    auto emit_cross_single = [&](const std::array<int, 3>& t1, const std::array<int, 3>& t2,
                                 int v) {
        for (int s : {-1, +1}) {
            SparseVec c = detail::triple_marginal_terms(table, t1, v, s, 1);
            SparseVec other = detail::triple_marginal_terms(table, t2, v, s, -1);
            c.insert(c.end(), other.begin(), other.end());
            detail::finish_row(rows, std::move(c), 0, RowTag::CrossSingle);
        }
    };
    auto emit_cross_pair = [&](const std::array<int, 3>& t1, const std::array<int, 3>& t2, int u,
                               int v) {
        for (int su : {-1, +1})
            for (int sv : {-1, +1}) {
                SparseVec c = detail::triple_pair_terms(table, t1, u, su, v, sv, 1);
                SparseVec other = detail::triple_pair_terms(table, t2, u, su, v, sv, -1);
                c.insert(c.end(), other.begin(), other.end());
                detail::finish_row(rows, std::move(c), 0, RowTag::CrossPair);
            }
    };

    if (rule == ConsistencyRule::Minimal) {
        for (int v : rs.singles) {
            auto chain = rs.triples_containing(v);
            for (std::size_t i = 0; i + 1 < chain.size(); ++i)
                emit_cross_single(chain[i], chain[i + 1], v);
        }
        for (const auto& p : rs.pairs) {
            std::vector<std::array<int, 3>> chain;
            for (const auto& t : rs.triples) {
                bool hu = t[0] == p[0] || t[1] == p[0] || t[2] == p[0];
                bool hv = t[0] == p[1] || t[1] == p[1] || t[2] == p[1];
                if (hu && hv) chain.push_back(t);
            }
            for (std::size_t i = 0; i + 1 < chain.size(); ++i)
                emit_cross_pair(chain[i], chain[i + 1], p[0], p[1]);
        }
    } else {
        for (std::size_t i = 0; i < rs.triples.size(); ++i) {
            for (std::size_t j = i + 1; j < rs.triples.size(); ++j) {
                const auto& t1 = rs.triples[i];
                const auto& t2 = rs.triples[j];
                std::vector<int> shared;
                for (int v : t1)
                    if (v == t2[0] || v == t2[1] || v == t2[2]) shared.push_back(v);
                for (int v : shared) emit_cross_single(t1, t2, v);
                if (shared.size() == 2) emit_cross_pair(t1, t2, shared[0], shared[1]);
            }
        }
    }

    for (const Clause& cl : inst.clauses()) {
        SparseVec c;
        detail::push_sorted(c, table.index_of(clause_complement(cl)), 1);
        detail::finish_row(rows, std::move(c), 0, RowTag::Specific);
    }
    return LinearSystem{SystemMode::Reduced, rule, std::move(rs), std::move(table),
                        std::move(rows)};
}

inline LinearSystem build(const CnfInstance& inst, SystemMode mode,
                          ConsistencyRule rule = ConsistencyRule::Minimal) {
    return mode == SystemMode::Full ? build_full(inst) : build_reduced(inst, rule);
}

}  // namespace satlp
