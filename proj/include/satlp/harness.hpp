#pragma once

#include "satlp/build.hpp"
#include "satlp/extract.hpp"
#include "satlp/oracle.hpp"
#include "satlp/simplex.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace satlp {

using json = nlohmann::ordered_json;

// The satisfiable => feasible direction is mathematically forced; seeing it
// fail means the implementation is broken, so the whole run aborts.
class ForwardViolation : public std::logic_error {
public:
    explicit ForwardViolation(const std::string& what) : std::logic_error(what) {}
};

// Either side of a solve failing its own exact self-check is equally fatal.
class CertificateViolation : public std::logic_error {
public:
    explicit CertificateViolation(const std::string& what) : std::logic_error(what) {}
};

struct ClaimRecord {
    std::string name;
    int n = 0;
    int m = 0;
    bool trivial = false;        // no clauses: satisfiable by definition, LP skipped
    bool lp_feasible = false;
    bool oracle_sat = false;
    std::uint64_t model_count = 0;
    bool forward_ok = true;      // oracle SAT => LP feasible
    bool converse_ok = true;     // LP feasible => oracle SAT (the audited claim)
    std::string extraction = "skipped";
    double runtime_ms = 0.0;
};

inline FeasibilityVerdict checked_feasibility(const LinearSystem& sys) {
    FeasibilityVerdict v = phase1_feasibility(sys);
    if (v.feasible) {
        if (!sys.satisfied_by(v.point))
            throw CertificateViolation("feasible witness violates a row or bound");
    } else {
        if (!verify_farkas(sys, v.certificate))
            throw CertificateViolation("infeasibility certificate failed verification");
    }
    return v;
}

inline ClaimRecord claim_check(const std::string& name, const CnfInstance& inst, SystemMode mode,
                               ConsistencyRule rule, int oracle_cap = 26,
                               bool attempt_extraction = true) {
    auto t0 = std::chrono::steady_clock::now();
    ClaimRecord rec;
    rec.name = name;
    rec.n = inst.num_vars();
    rec.m = inst.num_clauses();

    OracleResult oracle = brute_force_sat(inst, oracle_cap);
    rec.oracle_sat = oracle.satisfiable;
    rec.model_count = oracle.model_count;

    if (inst.num_clauses() == 0) {
        rec.trivial = true;
        rec.lp_feasible = true;
    } else {
        LinearSystem sys = build(inst, mode, rule);
        FeasibilityVerdict verdict = checked_feasibility(sys);
        rec.lp_feasible = verdict.feasible;
        if (verdict.feasible && attempt_extraction) {
            LinearSystem reduced =
                sys.mode == SystemMode::Reduced ? std::move(sys) : build_reduced(inst, rule);
            AssignmentCertificate cert = extract_deterministic(inst, reduced);
            rec.extraction = extraction_status_name(cert.status);
            if (cert.status == ExtractionStatus::Success &&
                !inst.satisfied_by(cert.to_assignment()))
                throw CertificateViolation("extraction verified internally but fails re-check");
        }
    }

    rec.forward_ok = !(rec.oracle_sat && !rec.lp_feasible);
    rec.converse_ok = !(rec.lp_feasible && !rec.oracle_sat);
    if (!rec.forward_ok)
        throw ForwardViolation("instance " + name +
                               " is satisfiable but its system is infeasible");
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

struct BatchParams {
    int n = 8;
    std::uint64_t m = 24;
    int count = 10;
    std::uint64_t seed = 1;
    SystemMode mode = SystemMode::Reduced;
    ConsistencyRule rule = ConsistencyRule::Minimal;
    int oracle_cap = 26;
    std::string archive_dir;  // converse violations land here when nonempty
};

struct ExperimentReport {
    BatchParams meta;
    std::vector<ClaimRecord> records;

    struct Aggregates {
        int sat = 0, unsat = 0, feasible = 0, infeasible = 0, converse_violations = 0;
    };

    Aggregates aggregates() const {
        Aggregates a;
        for (const ClaimRecord& r : records) {
            (r.oracle_sat ? a.sat : a.unsat)++;
            if (!r.trivial) (r.lp_feasible ? a.feasible : a.infeasible)++;
            if (!r.converse_ok) ++a.converse_violations;
        }
        return a;
    }
};

inline void archive_converse_violation(const std::string& dir, const std::string& name,
                                       const CnfInstance& inst, const LinearSystem& sys,
                                       const std::vector<Rational>& witness) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir + "/" + name + ".cnf");
        out << "c converse violation: system feasible, instance unsatisfiable\n";
        emit_dimacs(inst, out);
    }
    {
        std::ofstream out(dir + "/" + name + ".lp.txt");
        out << dump_lp(sys);
    }
    {
        json j = json::object();
        for (int i = 0; i < sys.unknowns.size(); ++i)
            j[sys.unknowns.requirement(i).label()] =
                to_string(witness[static_cast<std::size_t>(i)]);
        std::ofstream out(dir + "/" + name + ".witness.json");
        out << j.dump(2) << '\n';
    }
}

inline ExperimentReport run_batch(const BatchParams& params) {
    ExperimentReport rep;
    rep.meta = params;
    for (int i = 0; i < params.count; ++i) {
        std::uint64_t seed = params.seed + static_cast<std::uint64_t>(i);
        CnfInstance inst = generate_random_3sat(params.n, params.m, seed);
        std::string name = "n" + std::to_string(params.n) + "-m" + std::to_string(params.m) +
                           "-seed" + std::to_string(seed);
        ClaimRecord rec =
            claim_check(name, inst, params.mode, params.rule, params.oracle_cap);
        if (!rec.converse_ok && !params.archive_dir.empty()) {
            LinearSystem sys = build(inst, params.mode, params.rule);
            FeasibilityVerdict v = checked_feasibility(sys);
            archive_converse_violation(params.archive_dir, name, inst, sys, v.point);
        }
        rep.records.push_back(std::move(rec));
    }
    return rep;
}

inline json record_json(const ClaimRecord& r) {
    json j = json::object();
    j["name"] = r.name;
    j["n"] = r.n;
    j["m"] = r.m;
    j["lp"] = r.trivial ? "skipped" : (r.lp_feasible ? "feasible" : "infeasible");
    j["oracle"] = r.oracle_sat ? "sat" : "unsat";
    j["forward_ok"] = r.forward_ok;
    j["converse_ok"] = r.converse_ok;
    j["extraction"] = r.extraction;
    j["runtime_ms"] = r.runtime_ms;
    return j;
}

inline std::string emit_report_json(const ExperimentReport& rep) {
    json j = json::object();
    j["meta"] = {{"n", rep.meta.n},
                 {"m", rep.meta.m},
                 {"count", rep.meta.count},
                 {"seed", rep.meta.seed},
                 {"mode", mode_name(rep.meta.mode)},
                 {"rule", rule_name(rep.meta.rule)}};
    j["records"] = json::array();
    for (const ClaimRecord& r : rep.records) j["records"].push_back(record_json(r));
    auto a = rep.aggregates();
    j["aggregates"] = {{"sat", a.sat},
                       {"unsat", a.unsat},
                       {"feasible", a.feasible},
                       {"infeasible", a.infeasible},
                       {"converse_violations", a.converse_violations}};
    return j.dump(2) + "\n";
}

inline std::string emit_report_csv(const ExperimentReport& rep) {
    std::ostringstream out;
    out << "name,n,m,lp,oracle,forward_ok,converse_ok,extraction,runtime_ms\n";
    for (const ClaimRecord& r : rep.records) {
        out << r.name << ',' << r.n << ',' << r.m << ','
            << (r.trivial ? "skipped" : (r.lp_feasible ? "feasible" : "infeasible")) << ','
            << (r.oracle_sat ? "sat" : "unsat") << ',' << (r.forward_ok ? "true" : "false") << ','
            << (r.converse_ok ? "true" : "false") << ',' << r.extraction << ',' << r.runtime_ms
            << '\n';
    }
    return out.str();
}

// JSON renderings for witness points and certificates, rationals as "p/q".
inline json point_json(const LinearSystem& sys, const std::vector<Rational>& point) {
    json j = json::object();
    for (int i = 0; i < sys.unknowns.size(); ++i)
        j[sys.unknowns.requirement(i).label()] = to_string(point[static_cast<std::size_t>(i)]);
    return j;
}

inline json certificate_json(const FarkasCertificate& cert) {
    json j = json::object();
    for (const auto& [row, mult] : cert.multipliers)
        j["row" + std::to_string(row)] = to_string(mult);
    return j;
}

}  // namespace satlp
