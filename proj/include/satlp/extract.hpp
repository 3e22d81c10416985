#pragma once

#include "satlp/build.hpp"
#include "satlp/simplex.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace satlp {

enum class ExtractErrc { FreeVariable, InconsistentPoint };

class ExtractError : public std::runtime_error {
public:
    ExtractError(ExtractErrc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ExtractErrc code() const { return code_; }

private:
    ExtractErrc code_;
};

// P(sign * v) written over the reduced unknowns of the lexicographically
// smallest triple containing v; the consistency rows make the value
// triple-independent on any feasible point.
inline SparseVec marginal_expression(const LinearSystem& reduced, int v, int sign) {
    for (const auto& t : reduced.relevant.triples) {
        if (t[0] == v || t[1] == v || t[2] == v) {
            return detail::triple_marginal_terms(reduced.unknowns, t, v, sign, 1);
        }
    }
    throw ExtractError(ExtractErrc::FreeVariable,
                       "variable " + std::to_string(v) + " occurs in no clause");
}

enum class VarState { True, False, Free };

enum class ExtractionStatus { Success, StepFailed, VerificationFailed };

inline const char* extraction_status_name(ExtractionStatus s) {
    switch (s) {
        case ExtractionStatus::Success: return "success";
        case ExtractionStatus::StepFailed: return "step_failed";
        case ExtractionStatus::VerificationFailed: return "verification_failed";
    }
    return "?";
}

struct AssignmentCertificate {
    struct TraceEntry {
        int variable;
        bool positive;
        Rational optimum;
    };

    ExtractionStatus status = ExtractionStatus::Success;
    std::map<int, VarState> assignment;  // every variable 1..n
    std::vector<TraceEntry> trace;

    // populated when status == StepFailed
    int failed_step = 0;
    Rational best_negative, best_positive;

    // FREE variables default to FALSE
    std::vector<bool> to_assignment() const {
        std::vector<bool> out(assignment.size(), false);
        for (const auto& [v, s] : assignment)
            out[static_cast<std::size_t>(v - 1)] = (s == VarState::True);
        return out;
    }
};

// Sequential objective maximization: fix one variable per step by requiring
// the accumulated chosen-literal marginal sum to reach the step count
// exactly. A step where neither sign attains it is reported, not thrown: it
// would contradict the claim under audit.
inline AssignmentCertificate extract_deterministic(const CnfInstance& inst,
                                                   const LinearSystem& reduced) {
    ExactSolver solver(reduced);
    if (!solver.feasibility().feasible)
        throw SolveError(SolveErrc::InfeasibleSystem, "extraction needs a feasible system");

    AssignmentCertificate cert;
    SparseVec accumulated;
    Rational step_count = 0;
    for (int v : reduced.relevant.singles) {
        step_count += 1;
        SparseVec neg = accumulated;
        axpy(neg, 1, marginal_expression(reduced, v, -1));
        auto opt_neg = solver.maximize(neg);
        if (opt_neg.value == step_count) {
            cert.assignment[v] = VarState::False;
            cert.trace.push_back({v, false, opt_neg.value});
            accumulated = std::move(neg);
            continue;
        }
        SparseVec pos = accumulated;
        axpy(pos, 1, marginal_expression(reduced, v, +1));
        auto opt_pos = solver.maximize(pos);
        if (opt_pos.value == step_count) {
            cert.assignment[v] = VarState::True;
            cert.trace.push_back({v, true, opt_pos.value});
            accumulated = std::move(pos);
            continue;
        }
        cert.status = ExtractionStatus::StepFailed;
        cert.failed_step = static_cast<int>(cert.trace.size()) + 1;
        cert.best_negative = opt_neg.value;
        cert.best_positive = opt_pos.value;
        return cert;
    }
    for (int v = 1; v <= inst.num_vars(); ++v) {
        if (!cert.assignment.count(v)) cert.assignment[v] = VarState::Free;
    }
    if (!inst.satisfied_by(cert.to_assignment())) {
        cert.status = ExtractionStatus::VerificationFailed;
        return cert;
    }
    cert.status = ExtractionStatus::Success;
    return cert;
}

namespace detail {

struct MarginalView {
    std::map<std::pair<int, int>, Rational> single;                 // (v, sign)
    std::map<std::tuple<int, int, int, int>, Rational> pair;        // (a, sa, b, sb)
    std::map<Requirement, Rational> triple;
};

// Read (full mode) or reconstruct (reduced mode) all marginals of a point.
inline MarginalView marginal_view(const LinearSystem& sys, const std::vector<Rational>& point) {
    MarginalView m;
    const RelevantSet& rs = sys.relevant;
    if (sys.mode == SystemMode::Full) {
        for (int v : rs.singles)
            for (int s : {-1, +1})
                m.single[{v, s}] = point[static_cast<std::size_t>(
                    sys.unknowns.index_of(Requirement::of({s * v})))];
        for (const auto& p : rs.pairs)
            for (int sa : {-1, +1})
                for (int sb : {-1, +1})
                    m.pair[{p[0], sa, p[1], sb}] = point[static_cast<std::size_t>(
                        sys.unknowns.index_of(Requirement::of({sa * p[0], sb * p[1]})))];
        for (const auto& t : rs.triples)
            for (int sa : {-1, +1})
                for (int sb : {-1, +1})
                    for (int sc : {-1, +1}) {
                        Requirement r = Requirement::of({sa * t[0], sb * t[1], sc * t[2]});
                        m.triple[r] = point[static_cast<std::size_t>(sys.unknowns.index_of(r))];
                    }
        return m;
    }
    auto eval = [&](const SparseVec& terms) {
        Rational acc = 0;
        for (const auto& [idx, c] : terms) acc += c * point[static_cast<std::size_t>(idx)];
        return acc;
    };
    for (const auto& t : rs.triples) {
        for (int i = 0; i < 3; ++i) {
            for (int s : {-1, +1}) {
                Rational val = eval(triple_marginal_terms(sys.unknowns, t, t[i], s, 1));
                auto key = std::make_pair(t[static_cast<std::size_t>(i)], s);
                auto [it, inserted] = m.single.emplace(key, val);
                if (!inserted && it->second != val)
                    throw ExtractError(ExtractErrc::InconsistentPoint,
                                       "single marginal of " + std::to_string(s * t[i]) +
                                           " disagrees across triples");
            }
        }
        const std::array<std::pair<int, int>, 3> prs{{{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}}};
        for (const auto& [a, b] : prs) {
            for (int sa : {-1, +1})
                for (int sb : {-1, +1}) {
                    Rational val = eval(triple_pair_terms(sys.unknowns, t, a, sa, b, sb, 1));
                    auto key = std::make_tuple(a, sa, b, sb);
                    auto [it, inserted] = m.pair.emplace(key, val);
                    if (!inserted && it->second != val)
                        throw ExtractError(ExtractErrc::InconsistentPoint,
                                           "pair marginal disagrees across triples");
                }
        }
        for (int sa : {-1, +1})
            for (int sb : {-1, +1})
                for (int sc : {-1, +1}) {
                    Requirement r = Requirement::of({sa * t[0], sb * t[1], sc * t[2]});
                    m.triple[r] = point[static_cast<std::size_t>(sys.unknowns.index_of(r))];
                }
    }
    return m;
}

}  // namespace detail

// Exact separability test: every relevant pair and triple marginal factors
// into the product of its single-variable marginals.
inline bool is_separable(const LinearSystem& sys, const std::vector<Rational>& point) {
    detail::MarginalView m = detail::marginal_view(sys, point);
    for (const auto& [key, val] : m.pair) {
        const auto& [a, sa, b, sb] = key;
        if (val != m.single.at({a, sa}) * m.single.at({b, sb})) return false;
    }
    for (const auto& [r, val] : m.triple) {
        Rational prod = 1;
        for (Literal l : r.literals()) prod *= m.single.at({var_of(l), l > 0 ? +1 : -1});
        if (val != prod) return false;
    }
    return true;
}

}  // namespace satlp
