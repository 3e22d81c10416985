#pragma once

#include "satlp/cnf.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace satlp {

enum class RequirementErrc { DuplicateVariable, EmptyRequirement, TooManyLiterals };

class RequirementError : public std::runtime_error {
public:
    RequirementError(RequirementErrc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    RequirementErrc code() const { return code_; }

private:
    RequirementErrc code_;
};

// A conjunction of 1..3 literals over distinct variables, canonically sorted
// by variable index ascending. One requirement names one LP unknown.
class Requirement {
public:
    static Requirement of(std::span<const Literal> lits) {
        if (lits.empty())
            throw RequirementError(RequirementErrc::EmptyRequirement, "empty requirement");
        if (lits.size() > 3)
            throw RequirementError(RequirementErrc::TooManyLiterals,
                                   "requirements carry at most 3 literals");
        Requirement r;
        r.size_ = static_cast<std::uint8_t>(lits.size());
        std::copy(lits.begin(), lits.end(), r.lits_.begin());
        std::sort(r.lits_.begin(), r.lits_.begin() + r.size_,
                  [](Literal a, Literal b) { return var_of(a) < var_of(b); });
        for (int i = 0; i + 1 < static_cast<int>(r.size_); ++i) {
            if (var_of(r.lits_[i]) == var_of(r.lits_[i + 1])) {
                throw RequirementError(RequirementErrc::DuplicateVariable,
                                       "repeated variable " + std::to_string(var_of(r.lits_[i])));
            }
        }
        return r;
    }

    static Requirement of(std::initializer_list<Literal> lits) {
        return of(std::span<const Literal>(lits.begin(), lits.size()));
    }

    int size() const { return size_; }
    Literal operator[](int i) const { return lits_[static_cast<std::size_t>(i)]; }

    std::span<const Literal> literals() const { return {lits_.data(), size_}; }

    // true iff the assignment makes every literal of the conjunction TRUE
    bool holds_in(const std::vector<bool>& assignment) const {
        for (Literal l : literals()) {
            if (assignment[static_cast<std::size_t>(var_of(l) - 1)] != (l > 0)) return false;
        }
        return true;
    }

    // "P(-1;2;-3)"
    std::string label() const {
        std::ostringstream s;
        s << "P(";
        for (int i = 0; i < size_; ++i) {
            if (i) s << ';';
            s << lits_[static_cast<std::size_t>(i)];
        }
        s << ')';
        return s.str();
    }

    friend bool operator==(const Requirement& a, const Requirement& b) {
        return a.size_ == b.size_ && std::equal(a.lits_.begin(), a.lits_.begin() + a.size_,
                                                b.lits_.begin());
    }
    friend bool operator<(const Requirement& a, const Requirement& b) {
        return std::lexicographical_compare(a.lits_.begin(), a.lits_.begin() + a.size_,
                                            b.lits_.begin(), b.lits_.begin() + b.size_);
    }

private:
    Requirement() = default;
    std::array<Literal, 3> lits_{0, 0, 0};
    std::uint8_t size_ = 0;
};

inline Requirement canonicalize(std::span<const Literal> lits) { return Requirement::of(lits); }

// The 3-literal requirement that negates every literal of the clause; the
// clause is violated exactly when this conjunction holds.
inline Requirement clause_complement(const Clause& c) {
    return Requirement::of({-c[0], -c[1], -c[2]});
}

// Variable triples occurring as clause scopes, with their downward closure.
struct RelevantSet {
    std::vector<std::array<int, 3>> triples;  // sorted, distinct
    std::vector<std::array<int, 2>> pairs;    // all 2-subsets of the triples
    std::vector<int> singles;                 // all variables in some triple

    static RelevantSet of(const CnfInstance& inst) {
        std::set<std::array<int, 3>> ts;
        for (const Clause& c : inst.clauses()) ts.insert(c.variables());
        std::set<std::array<int, 2>> ps;
        std::set<int> ss;
        for (const auto& t : ts) {
            ps.insert({t[0], t[1]});
            ps.insert({t[0], t[2]});
            ps.insert({t[1], t[2]});
            ss.insert(t.begin(), t.end());
        }
        RelevantSet rs;
        rs.triples.assign(ts.begin(), ts.end());
        rs.pairs.assign(ps.begin(), ps.end());
        rs.singles.assign(ss.begin(), ss.end());
        return rs;
    }

    std::size_t full_unknown_count() const {
        return 2 * singles.size() + 4 * pairs.size() + 8 * triples.size();
    }

    std::vector<std::array<int, 3>> triples_containing(int v) const {
        std::vector<std::array<int, 3>> out;
        for (const auto& t : triples)
            if (t[0] == v || t[1] == v || t[2] == v) out.push_back(t);
        return out;
    }
};

enum class SystemMode { Full, Reduced };

// Dense index table: bijection between in-system requirements and 0-based
// indices. Order is singles (variable ascending, negative sign first), then
// pairs, then triples, each block lexicographic; reduced mode keeps only the
// triple block. This fixes LP dumps and pivoting order.
class UnknownTable {
public:
    UnknownTable(const RelevantSet& rs, SystemMode mode) {
        if (mode == SystemMode::Full) {
            for (int v : rs.singles) {
                add(Requirement::of({-v}));
                add(Requirement::of({v}));
            }
            for (const auto& p : rs.pairs) {
                for (int sa : {-1, +1})
                    for (int sb : {-1, +1}) add(Requirement::of({sa * p[0], sb * p[1]}));
            }
        }
        for (const auto& t : rs.triples) {
            for (int sa : {-1, +1})
                for (int sb : {-1, +1})
                    for (int sc : {-1, +1})
                        add(Requirement::of({sa * t[0], sb * t[1], sc * t[2]}));
        }
    }

    int size() const { return static_cast<int>(by_index_.size()); }

    const Requirement& requirement(int idx) const {
        return by_index_[static_cast<std::size_t>(idx)];
    }

    int index_of(const Requirement& r) const {
        auto it = index_.find(r);
        if (it == index_.end())
            throw std::out_of_range("requirement " + r.label() + " not in system");
        return it->second;
    }

    bool contains(const Requirement& r) const { return index_.count(r) != 0; }

private:
    void add(const Requirement& r) {
        index_.emplace(r, static_cast<int>(by_index_.size()));
        by_index_.push_back(r);
    }

    std::vector<Requirement> by_index_;
    std::map<Requirement, int> index_;
};

}  // namespace satlp
