#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace satlp {

// A literal is a nonzero signed integer: +v means variable v is TRUE, -v FALSE.
using Literal = int;

inline int var_of(Literal l) { return l < 0 ? -l : l; }

enum class CnfErrc {
    MalformedHeader,
    LiteralOutOfRange,
    ClauseNotThreeDistinctVars,
    TruncatedClause,
    TooManyClauses,
    EmptyInstance,
};

class CnfError : public std::runtime_error {
public:
    CnfError(CnfErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    CnfErrc code() const { return code_; }

private:
    CnfErrc code_;
};

// Exactly three literals over pairwise-distinct variables, stored sorted by
// variable index ascending.
class Clause {
public:
    Clause(Literal a, Literal b, Literal c) : lits_{a, b, c} {
        std::sort(lits_.begin(), lits_.end(),
                  [](Literal x, Literal y) { return var_of(x) < var_of(y); });
        if (lits_[0] == 0 || var_of(lits_[0]) == var_of(lits_[1]) ||
            var_of(lits_[1]) == var_of(lits_[2])) {
            throw CnfError(CnfErrc::ClauseNotThreeDistinctVars,
                           "clause needs 3 distinct variables");
        }
    }

    const std::array<Literal, 3>& literals() const { return lits_; }
    Literal operator[](int i) const { return lits_[static_cast<std::size_t>(i)]; }

    std::array<int, 3> variables() const {
        return {var_of(lits_[0]), var_of(lits_[1]), var_of(lits_[2])};
    }

    bool satisfied_by(const std::vector<bool>& assignment) const {
        for (Literal l : lits_) {
            bool value = assignment[static_cast<std::size_t>(var_of(l) - 1)];
            if (value == (l > 0)) return true;
        }
        return false;
    }

    friend bool operator==(const Clause& a, const Clause& b) { return a.lits_ == b.lits_; }
    friend bool operator<(const Clause& a, const Clause& b) { return a.lits_ < b.lits_; }

private:
    std::array<Literal, 3> lits_;
};

// Immutable 3-CNF instance. Duplicate clauses are dropped at construction
// (first occurrence wins); the number dropped is kept for reporting.
class CnfInstance {
public:
    CnfInstance(int num_vars, std::vector<Clause> clauses) : num_vars_(num_vars) {
        if (num_vars < 1) throw CnfError(CnfErrc::MalformedHeader, "variable count must be >= 1");
        std::set<Clause> seen;
        for (const Clause& c : clauses) {
            for (int v : c.variables()) {
                if (v > num_vars) {
                    throw CnfError(CnfErrc::LiteralOutOfRange,
                                   "literal " + std::to_string(v) + " exceeds declared " +
                                       std::to_string(num_vars) + " variables");
                }
            }
            if (seen.insert(c).second) clauses_.push_back(c);
        }
        duplicates_removed_ = clauses.size() - clauses_.size();
    }

    int num_vars() const { return num_vars_; }
    int num_clauses() const { return static_cast<int>(clauses_.size()); }
    const std::vector<Clause>& clauses() const { return clauses_; }
    std::size_t duplicates_removed() const { return duplicates_removed_; }

    bool satisfied_by(const std::vector<bool>& assignment) const {
        for (const Clause& c : clauses_)
            if (!c.satisfied_by(assignment)) return false;
        return true;
    }

    friend bool operator==(const CnfInstance& a, const CnfInstance& b) {
        if (a.num_vars_ != b.num_vars_) return false;
        std::set<Clause> sa(a.clauses_.begin(), a.clauses_.end());
        std::set<Clause> sb(b.clauses_.begin(), b.clauses_.end());
        return sa == sb;
    }

private:
    int num_vars_;
    std::vector<Clause> clauses_;
    std::size_t duplicates_removed_ = 0;
};

// --- DIMACS CNF ---

inline CnfInstance parse_dimacs(std::istream& in) {
    std::string line;
    int n = -1;
    long declared = -1;
    // header: comments, then "p cnf <n> <m>"
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream hs(line);
            std::string p, fmt;
            hs >> p >> fmt >> n >> declared;
            if (p != "p" || fmt != "cnf" || hs.fail() || n < 1 || declared < 0) {
                throw CnfError(CnfErrc::MalformedHeader, "bad DIMACS header: " + line);
            }
            break;
        }
        throw CnfError(CnfErrc::MalformedHeader, "expected 'p cnf' header, got: " + line);
    }
    if (n < 0) throw CnfError(CnfErrc::MalformedHeader, "missing 'p cnf' header");

    std::vector<Clause> clauses;
    std::vector<Literal> current;
    std::string tok;
    while (in >> tok) {
        if (tok == "c") {  // comment token: skip rest of line
            std::getline(in, line);
            continue;
        }
        long lit;
        try {
            std::size_t pos = 0;
            lit = std::stol(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw CnfError(CnfErrc::MalformedHeader, "unexpected token '" + tok + "'");
        }
        if (lit == 0) {
            if (current.size() != 3) {
                throw CnfError(CnfErrc::ClauseNotThreeDistinctVars,
                               "clause with " + std::to_string(current.size()) + " literals");
            }
            clauses.emplace_back(current[0], current[1], current[2]);
            current.clear();
            continue;
        }
        if (lit > n || lit < -n) {
            throw CnfError(CnfErrc::LiteralOutOfRange, "literal " + std::to_string(lit) +
                                                           " out of range for n=" + std::to_string(n));
        }
        current.push_back(static_cast<Literal>(lit));
    }
    if (!current.empty()) throw CnfError(CnfErrc::TruncatedClause, "EOF inside a clause");
    if (static_cast<long>(clauses.size()) != declared) {
        if (static_cast<long>(clauses.size()) < declared) {
            throw CnfError(CnfErrc::TruncatedClause,
                           "header declares " + std::to_string(declared) + " clauses, found " +
                               std::to_string(clauses.size()));
        }
        throw CnfError(CnfErrc::MalformedHeader,
                       "header declares " + std::to_string(declared) + " clauses, found " +
                           std::to_string(clauses.size()));
    }
    return CnfInstance(n, std::move(clauses));
}

inline CnfInstance parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

inline void emit_dimacs(const CnfInstance& inst, std::ostream& out) {
    out << "p cnf " << inst.num_vars() << ' ' << inst.num_clauses() << '\n';
    for (const Clause& c : inst.clauses()) {
        out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
    }
}

inline std::string emit_dimacs(const CnfInstance& inst) {
    std::ostringstream out;
    emit_dimacs(inst, out);
    return out.str();
}

// --- random instances ---

// Unbiased bounded draw; rejection sampling keeps the stream reproducible
// independent of the standard library's distribution implementations.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

inline std::uint64_t max_distinct_clauses(int n) {
    // 8 * C(n,3); saturates for n large enough that the product would overflow
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    if (un > 2000000) return std::numeric_limits<std::uint64_t>::max();
    return un * (un - 1) * (un - 2) / 6 * 8;
}

// m distinct clauses, each on 3 distinct uniform variables with uniform signs.
// Deterministic for a fixed (n, m, seed).
inline CnfInstance generate_random_3sat(int n, std::uint64_t m, std::uint64_t seed) {
    if (n < 3) throw CnfError(CnfErrc::MalformedHeader, "generator needs n >= 3");
    if (m > max_distinct_clauses(n)) {
        throw CnfError(CnfErrc::TooManyClauses,
                       "m exceeds 8*C(n,3) distinct clauses");
    }
    std::mt19937_64 rng(seed);
    std::set<Clause> seen;
    std::vector<Clause> clauses;
    while (clauses.size() < m) {
        int a, b, c;
        do {
            a = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n))) + 1;
            b = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n))) + 1;
            c = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n))) + 1;
        } while (a == b || a == c || b == c);
        auto sign = [&](int v) { return bounded_draw(rng, 2) ? v : -v; };
        Clause cl(sign(a), sign(b), sign(c));
        if (seen.insert(cl).second) clauses.push_back(cl);
    }
    return CnfInstance(n, std::move(clauses));
}

}  // namespace satlp
