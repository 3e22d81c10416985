#pragma once

#include "satlp/marginals.hpp"
#include "satlp/rational.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace satlp {

enum class RowTag {
    Normalization,         // P(v) + P(-v) = 1                      (full)
    SingleMarginal,        // P(a) = P(a;b) + P(a;-b)               (full)
    PairMarginal,          // P(a;b) = P(a;b;c) + P(a;b;-c)         (full)
    TripleNormalization,   // sum of a triple's 8 unknowns = 1      (reduced)
    CrossSingle,           // P(v) agrees between two triples       (reduced)
    CrossPair,             // P(a;b) agrees between two triples     (reduced)
    Specific,              // clause complement unknown = 0
};

inline const char* tag_name(RowTag t) {
    switch (t) {
        case RowTag::Normalization: return "NORMALIZATION";
        case RowTag::SingleMarginal: return "SINGLE_MARGINAL";
        case RowTag::PairMarginal: return "PAIR_MARGINAL";
        case RowTag::TripleNormalization: return "TRIPLE_NORMALIZATION";
        case RowTag::CrossSingle: return "CROSS_SINGLE";
        case RowTag::CrossPair: return "CROSS_PAIR";
        case RowTag::Specific: return "SPECIFIC";
    }
    return "?";
}

inline const char* tag_key(RowTag t) {
    switch (t) {
        case RowTag::Normalization: return "normalization";
        case RowTag::SingleMarginal: return "single_marginal";
        case RowTag::PairMarginal: return "pair_marginal";
        case RowTag::TripleNormalization: return "triple_normalization";
        case RowTag::CrossSingle: return "cross_single";
        case RowTag::CrossPair: return "cross_pair";
        case RowTag::Specific: return "specific";
    }
    return "?";
}

// Consistency-row generation for reduced systems. Minimal links consecutive
// triples sharing a variable or a variable pair; Verbose links every pair of
// triples that shares one. Both have the same feasible set.
enum class ConsistencyRule { Minimal, Verbose };

inline const char* mode_name(SystemMode m) { return m == SystemMode::Full ? "full" : "reduced"; }
inline const char* rule_name(ConsistencyRule r) {
    return r == ConsistencyRule::Minimal ? "minimal" : "verbose";
}

// One equality row: sum(coeff * unknown) = rhs. Every in-system unknown is
// additionally constrained nonnegative.
struct Row {
    SparseVec coeffs;  // sorted by unknown index
    Rational rhs;
    RowTag tag;
};

struct LinearSystem {
    SystemMode mode;
    std::optional<ConsistencyRule> rule;  // reduced mode only
    RelevantSet relevant;
    UnknownTable unknowns;
    std::vector<Row> rows;

    // exact residual check of a candidate point (includes the >= 0 bounds)
    bool satisfied_by(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != unknowns.size()) return false;
        for (const Rational& x : point)
            if (x < 0) return false;
        for (const Row& row : rows) {
            Rational acc = 0;
            for (const auto& [idx, c] : row.coeffs) acc += c * point[static_cast<std::size_t>(idx)];
            if (acc != row.rhs) return false;
        }
        return true;
    }
};

struct SystemStats {
    int unknown_count = 0;
    std::map<RowTag, int> rows_by_tag;
    int total_rows = 0;

    int of(RowTag t) const {
        auto it = rows_by_tag.find(t);
        return it == rows_by_tag.end() ? 0 : it->second;
    }
};

inline SystemStats stats(const LinearSystem& sys) {
    SystemStats s;
    s.unknown_count = sys.unknowns.size();
    for (const Row& r : sys.rows) ++s.rows_by_tag[r.tag];
    s.total_rows = static_cast<int>(sys.rows.size());
    return s;
}

inline void dump_row(const LinearSystem& sys, const Row& row, std::ostream& out) {
    out << tag_name(row.tag) << ": ";
    bool first = true;
    for (const auto& [idx, c] : row.coeffs) {
        if (!first) out << " + ";
        out << to_string(c) << '*' << sys.unknowns.requirement(idx).label();
        first = false;
    }
    out << " = " << to_string(row.rhs) << '\n';
}

// Deterministic text rendering; identical systems dump byte-identically.
inline std::string dump_lp(const LinearSystem& sys) {
    std::ostringstream out;
    out << "# mode: " << mode_name(sys.mode) << '\n';
    out << "# rule: " << (sys.rule ? rule_name(*sys.rule) : "-") << '\n';
    out << "# unknowns: " << sys.unknowns.size() << '\n';
    for (int i = 0; i < sys.unknowns.size(); ++i) {
        out << "# x" << i << " = " << sys.unknowns.requirement(i).label() << '\n';
    }
    out << "# rows: " << sys.rows.size() << '\n';
    for (const Row& row : sys.rows) dump_row(sys, row, out);
    return out.str();
}

}  // namespace satlp
