#pragma once

#include "satlp/cnf.hpp"
#include "satlp/system.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace satlp {

class OracleError : public std::runtime_error {
public:
    explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

struct OracleResult {
    bool satisfiable = false;
    std::uint64_t model_count = 0;
    std::optional<std::vector<bool>> witness;  // lexicographically first model
};

// Exhaustive enumeration of all 2^n assignments. Deliberately the dumbest
// possible ground truth; the cap keeps it honest about being one.
inline OracleResult brute_force_sat(const CnfInstance& inst, int cap = 26) {
    const int n = inst.num_vars();
    if (n > cap)
        throw OracleError("instance too large for exhaustive oracle: n=" + std::to_string(n) +
                          " > cap=" + std::to_string(cap));
    OracleResult res;
    std::vector<bool> assignment(static_cast<std::size_t>(n));
    const std::uint64_t total = std::uint64_t(1) << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int i = 0; i < n; ++i)
            assignment[static_cast<std::size_t>(i)] = (mask >> (n - 1 - i)) & 1;
        if (inst.satisfied_by(assignment)) {
            ++res.model_count;
            if (!res.witness) res.witness = assignment;
        }
    }
    res.satisfiable = res.model_count > 0;
    return res;
}

inline std::vector<std::vector<bool>> all_models(const CnfInstance& inst, int cap = 26) {
    const int n = inst.num_vars();
    if (n > cap)
        throw OracleError("instance too large for exhaustive oracle: n=" + std::to_string(n));
    std::vector<std::vector<bool>> out;
    std::vector<bool> assignment(static_cast<std::size_t>(n));
    const std::uint64_t total = std::uint64_t(1) << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (int i = 0; i < n; ++i)
            assignment[static_cast<std::size_t>(i)] = (mask >> (n - 1 - i)) & 1;
        if (inst.satisfied_by(assignment)) out.push_back(assignment);
    }
    return out;
}

// The deterministic 0/1 point a complete assignment induces on the unknowns.
inline std::vector<Rational> assignment_point(const LinearSystem& sys,
                                              const std::vector<bool>& assignment) {
    std::vector<Rational> point(static_cast<std::size_t>(sys.unknowns.size()));
    for (int i = 0; i < sys.unknowns.size(); ++i) {
        point[static_cast<std::size_t>(i)] =
            sys.unknowns.requirement(i).holds_in(assignment) ? 1 : 0;
    }
    return point;
}

// Marginals of the uniform distribution over the given assignments; exact.
inline std::vector<Rational> mixture_point(const LinearSystem& sys,
                                           const std::vector<std::vector<bool>>& assignments) {
    if (assignments.empty()) throw OracleError("mixture of zero assignments");
    std::vector<Rational> point(static_cast<std::size_t>(sys.unknowns.size()), Rational(0));
    for (const auto& a : assignments) {
        for (int i = 0; i < sys.unknowns.size(); ++i)
            if (sys.unknowns.requirement(i).holds_in(a)) point[static_cast<std::size_t>(i)] += 1;
    }
    const Rational total = static_cast<long>(assignments.size());
    for (Rational& v : point) v /= total;
    return point;
}

}  // namespace satlp
