#pragma once

#include "satlp/rational.hpp"
#include "satlp/system.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace satlp {

enum class SolveErrc { InfeasibleSystem, UnboundedObjective, TooLarge, IndexOutOfRange };

class SolveError : public std::runtime_error {
public:
    SolveError(SolveErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    SolveErrc code() const { return code_; }

private:
    SolveErrc code_;
};

// Row multipliers whose combination has nonnegative coefficients on every
// unknown and a strictly negative constant, contradicting nonnegativity.
struct FarkasCertificate {
    SparseVec multipliers;  // original row index -> multiplier
};

struct FeasibilityVerdict {
    bool feasible = false;
    std::vector<Rational> point;     // dense witness over all unknowns, when feasible
    FarkasCertificate certificate;   // when infeasible
};

inline bool verify_farkas(const LinearSystem& sys, const FarkasCertificate& cert) {
    std::map<int, Rational> combined;
    Rational rhs = 0;
    for (const auto& [row_idx, mult] : cert.multipliers) {
        if (row_idx < 0 || row_idx >= static_cast<int>(sys.rows.size()))
            throw SolveError(SolveErrc::IndexOutOfRange,
                             "certificate row " + std::to_string(row_idx) + " out of range");
        const Row& row = sys.rows[static_cast<std::size_t>(row_idx)];
        for (const auto& [col, c] : row.coeffs) combined[col] += mult * c;
        rhs += mult * row.rhs;
    }
    if (rhs >= 0) return false;
    for (const auto& [col, c] : combined)
        if (c < 0) return false;
    return true;
}

// Exact primal simplex over a dictionary obtained by Gauss-Jordan reduction.
// Pivoting uses Bland's least-index rule throughout, so every solve terminates
// and runs identically on identical input. All verdicts are exact; infeasible
// ones carry a Farkas certificate assembled from per-row audit multipliers.
class ExactSolver {
public:
    explicit ExactSolver(const LinearSystem& sys) : sys_(&sys), ncols_(sys.unknowns.size()) {
        reduce_input();
    }

    int rank() const { return rank_; }
    long pivot_count() const { return pivots_; }

    const FeasibilityVerdict& feasibility() {
        if (!verdict_) run_phase1();
        return *verdict_;
    }

    struct Optimum {
        Rational value;
        std::vector<Rational> point;
    };

    // Maximize a linear objective over the feasible set; reuses the current
    // basis, so repeated calls with related objectives stay warm.
    Optimum maximize(const SparseVec& objective) {
        if (!feasibility().feasible)
            throw SolveError(SolveErrc::InfeasibleSystem, "maximize on an infeasible system");
        Functional g;
        g.coeffs = objective;
        std::sort(g.coeffs.begin(), g.coeffs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        reduce_functional(g);
        StallGuard guard;
        while (true) {
            int entering = select_entering(g, /*minimize=*/false, guard.bland);
            if (entering < 0) break;
            int leave = ratio_test(entering);
            if (leave < 0)
                throw SolveError(SolveErrc::UnboundedObjective,
                                 "objective unbounded above on the feasible set");
            Rational before = g.constant;
            pivot(entering, leave, &g);
            guard.step(before != g.constant);
        }
        return Optimum{g.constant, current_point()};
    }

private:
    struct Eq {
        SparseVec lhs;     // over columns: structural [0, ncols_), artificials above
        Rational rhs;
        SparseVec audit;   // combination of original rows this equation is
        int basic = -1;
    };

    // value form: f(x) = constant + coeffs . x; audit keeps the identity
    // f = coeffs.x + constant + sum audit[k] * (A_k x - b_k)
    struct Functional {
        SparseVec coeffs;
        Rational constant = 0;
        SparseVec audit;
    };

    static const Rational* coeff(const SparseVec& v, int idx) { return find_coeff(v, idx); }

    void scale_eq(Eq& e, const Rational& f) {
        for (auto& [c, v] : e.lhs) v *= f;
        e.rhs *= f;
        for (auto& [c, v] : e.audit) v *= f;
    }

    // e -= f * p
    void axpy_eq(Eq& e, const Rational& f, const Eq& p) {
        axpy(e.lhs, -f, p.lhs);
        e.rhs -= f * p.rhs;
        axpy(e.audit, -f, p.audit);
    }

    void reduce_input() {
        const auto& rows = sys_->rows;
        row_of_col_.assign(static_cast<std::size_t>(ncols_), -1);
        // sparser rows first and rare columns as pivots keep fill-in down
        std::vector<int> col_count(static_cast<std::size_t>(ncols_), 0);
        for (const Row& r : rows)
            for (const auto& [c, v] : r.coeffs) ++col_count[static_cast<std::size_t>(c)];
        std::vector<std::size_t> order(rows.size());
        for (std::size_t k = 0; k < rows.size(); ++k) order[k] = k;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return rows[a].coeffs.size() < rows[b].coeffs.size();
        });
        for (std::size_t k : order) {
            Eq e;
            e.lhs = rows[k].coeffs;
            e.rhs = rows[k].rhs;
            e.audit = {{static_cast<int>(k), Rational(1)}};
            // eliminate existing pivot columns; substitutions only introduce
            // columns pivoted later, so this terminates
            while (true) {
                int hit = -1;
                for (const auto& [c, v] : e.lhs) {
                    if (row_of_col_[static_cast<std::size_t>(c)] >= 0) {
                        hit = c;
                        break;
                    }
                }
                if (hit < 0) break;
                const Eq& p = eqs_[static_cast<std::size_t>(
                    row_of_col_[static_cast<std::size_t>(hit)])];
                Rational f = *coeff(e.lhs, hit);
                axpy_eq(e, f, p);
            }
            if (e.lhs.empty()) {
                if (e.rhs != 0 && !early_infeasible_) {
                    // 0 = c with c != 0: scale so the constant is negative
                    FarkasCertificate cert;
                    cert.multipliers = e.audit;
                    if (e.rhs > 0)
                        for (auto& [i, v] : cert.multipliers) v = -v;
                    early_infeasible_ = std::move(cert);
                }
                continue;
            }
            int pcol = -1;
            bool pcol_unit = false;
            for (const auto& [c, v] : e.lhs) {
                bool unit = (v == 1 || v == -1);
                if (pcol < 0 || (unit && !pcol_unit) ||
                    (unit == pcol_unit &&
                     col_count[static_cast<std::size_t>(c)] <
                         col_count[static_cast<std::size_t>(pcol)])) {
                    pcol = c;
                    pcol_unit = unit;
                }
            }
            Rational pc = *coeff(e.lhs, pcol);
            scale_eq(e, 1 / pc);
            e.basic = pcol;
            row_of_col_[static_cast<std::size_t>(pcol)] = static_cast<int>(eqs_.size());
            eqs_.push_back(std::move(e));
            ++rank_;
        }
        // back-substitution to proper RREF: each row keeps only its own basic
        // column plus nonbasic ones
        for (std::size_t i = eqs_.size(); i-- > 0;) {
            Eq& e = eqs_[i];
            while (true) {
                int hit = -1;
                for (const auto& [c, v] : e.lhs) {
                    if (c != e.basic && row_of_col_[static_cast<std::size_t>(c)] >= 0) {
                        hit = c;
                        break;
                    }
                }
                if (hit < 0) break;
                const Eq& p = eqs_[static_cast<std::size_t>(
                    row_of_col_[static_cast<std::size_t>(hit)])];
                Rational f = *coeff(e.lhs, hit);
                axpy_eq(e, f, p);
            }
        }
    }

    void reduce_functional(Functional& f) {
        SparseVec on_basic;
        for (const auto& [c, v] : f.coeffs) {
            if (c < static_cast<int>(row_of_col_.size()) &&
                row_of_col_[static_cast<std::size_t>(c)] >= 0)
                on_basic.emplace_back(c, v);
        }
        for (const auto& [c, v] : on_basic) {
            const Eq& p =
                eqs_[static_cast<std::size_t>(row_of_col_[static_cast<std::size_t>(c)])];
            axpy(f.coeffs, -v, p.lhs);
            f.constant += v * p.rhs;
            axpy(f.audit, v, p.audit);
        }
    }

    // Entering rule: largest reduced-cost improvement, ties to the smallest
    // column; after 32 consecutive degenerate pivots switch to Bland's
    // least-index rule until the objective moves again. Deterministic, and
    // Bland cannot cycle.
    struct StallGuard {
        bool bland = false;
        int stalled = 0;
        void step(bool improved) {
            if (improved) {
                stalled = 0;
                bland = false;
            } else if (++stalled > 32) {
                bland = true;
            }
        }
    };

    int select_entering(const Functional& f, bool minimize, bool bland) const {
        int best = -1;
        const Rational* best_val = nullptr;
        for (const auto& [col, c] : f.coeffs) {
            if (col >= ncols_ || row_of_col_[static_cast<std::size_t>(col)] >= 0) continue;
            if (minimize ? c >= 0 : c <= 0) continue;
            if (bland) return col;  // coeffs sorted by column
            if (!best_val || (minimize ? c < *best_val : c > *best_val)) {
                best = col;
                best_val = &c;
            }
        }
        return best;
    }

    int ratio_test(int entering) const {
        int leave = -1;
        Rational best;
        for (std::size_t i = 0; i < eqs_.size(); ++i) {
            const Rational* a = coeff(eqs_[i].lhs, entering);
            if (!a || *a <= 0) continue;
            Rational theta = eqs_[i].rhs / *a;
            if (leave < 0 || theta < best ||
                (theta == best && eqs_[i].basic < eqs_[static_cast<std::size_t>(leave)].basic)) {
                best = theta;
                leave = static_cast<int>(i);
            }
        }
        return leave;
    }

    void pivot(int entering, int leave_row, Functional* f) {
        ++pivots_;
        Eq& p = eqs_[static_cast<std::size_t>(leave_row)];
        Rational a = *coeff(p.lhs, entering);
        scale_eq(p, 1 / a);
        row_of_col_[static_cast<std::size_t>(p.basic)] = -1;
        p.basic = entering;
        row_of_col_[static_cast<std::size_t>(entering)] = leave_row;
        for (std::size_t i = 0; i < eqs_.size(); ++i) {
            if (static_cast<int>(i) == leave_row) continue;
            const Rational* c = coeff(eqs_[i].lhs, entering);
            if (c) {
                Rational f2 = *c;
                axpy_eq(eqs_[i], f2, p);
            }
        }
        if (f) {
            const Rational* c = coeff(f->coeffs, entering);
            if (c) {
                Rational f2 = *c;
                axpy(f->coeffs, -f2, p.lhs);
                f->constant += f2 * p.rhs;
                axpy(f->audit, f2, p.audit);
            }
        }
    }

    std::vector<Rational> current_point() const {
        std::vector<Rational> x(static_cast<std::size_t>(ncols_), Rational(0));
        for (const Eq& e : eqs_) {
            if (e.basic < ncols_) x[static_cast<std::size_t>(e.basic)] = e.rhs;
        }
        return x;
    }

    void run_phase1() {
        if (early_infeasible_) {
            verdict_ = FeasibilityVerdict{false, {}, *early_infeasible_};
            return;
        }
        // artificials for rows whose basic value starts negative
        std::vector<SparseVec> audit0;       // introduction audit per artificial
        std::vector<int> artificial_cols;
        int next_col = ncols_;
        row_of_col_.resize(static_cast<std::size_t>(ncols_), -1);
        for (std::size_t i = 0; i < eqs_.size(); ++i) {
            if (eqs_[i].rhs >= 0) continue;
            Eq& e = eqs_[i];
            audit0.push_back(std::move(e.audit));
            int z = next_col++;
            artificial_cols.push_back(z);
            // negate the row and give it the artificial as basic; the old
            // audit moves wholesale into the artificial's definition, so the
            // flipped row carries none
            for (auto& [c, v] : e.lhs) v = -v;
            e.rhs = -e.rhs;
            e.audit.clear();
            e.lhs.emplace_back(z, Rational(1));  // z index above all structural
            row_of_col_[static_cast<std::size_t>(e.basic)] = -1;
            e.basic = z;
            row_of_col_.push_back(static_cast<int>(i));
        }
        if (artificial_cols.empty()) {
            verdict_ = FeasibilityVerdict{true, current_point(), {}};
            return;
        }

        Functional w;  // minimize the sum of artificials
        for (int z : artificial_cols) w.coeffs.emplace_back(z, Rational(1));
        reduce_functional(w);

        StallGuard guard;
        while (true) {
            int entering = select_entering(w, /*minimize=*/true, guard.bland);
            if (entering < 0) break;
            int leave = ratio_test(entering);
            if (leave < 0)
                throw SolveError(SolveErrc::UnboundedObjective,
                                 "phase-1 objective unbounded below zero");
            Rational before = w.constant;
            pivot(entering, leave, &w);
            guard.step(before != w.constant);
        }

        if (w.constant > 0) {
            // infeasible: mu = sum_l (1 - w[z_l]) * audit0_l - audit_w
            SparseVec mu;
            for (std::size_t l = 0; l < artificial_cols.size(); ++l) {
                Rational wz = 0;
                if (const Rational* c = coeff(w.coeffs, artificial_cols[l])) wz = *c;
                axpy(mu, 1 - wz, audit0[l]);
            }
            axpy(mu, -1, w.audit);
            verdict_ = FeasibilityVerdict{false, {}, FarkasCertificate{std::move(mu)}};
            return;
        }

        // drive leftover artificials out of the basis, then drop their columns
        std::vector<Eq> kept;
        for (std::size_t i = 0; i < eqs_.size(); ++i) {
            Eq& e = eqs_[i];
            if (e.basic < ncols_) continue;
            int target = -1;
            for (const auto& [c, v] : e.lhs) {
                if (c < ncols_ && v != 0 && row_of_col_[static_cast<std::size_t>(c)] < 0) {
                    target = c;
                    break;
                }
            }
            if (target >= 0) {
                pivot(target, static_cast<int>(i), nullptr);  // rhs is 0: stays feasible
            }
        }
        for (Eq& e : eqs_) {
            if (e.basic >= ncols_) {
                e.basic = -1;  // redundant all-artificial row, dropped below
                continue;
            }
            SparseVec cleaned;
            for (auto& [c, v] : e.lhs)
                if (c < ncols_) cleaned.emplace_back(c, std::move(v));
            e.lhs = std::move(cleaned);
        }
        for (std::size_t i = 0; i < eqs_.size(); ++i) {
            if (eqs_[i].basic >= 0) {
                row_of_col_[static_cast<std::size_t>(eqs_[i].basic)] =
                    static_cast<int>(kept.size());
                kept.push_back(std::move(eqs_[i]));
            }
        }
        eqs_ = std::move(kept);
        row_of_col_.resize(static_cast<std::size_t>(ncols_));
        verdict_ = FeasibilityVerdict{true, current_point(), {}};
    }

    const LinearSystem* sys_;
    int ncols_;
    std::vector<Eq> eqs_;
    std::vector<int> row_of_col_;
    int rank_ = 0;
    long pivots_ = 0;
    std::optional<FarkasCertificate> early_infeasible_;
    std::optional<FeasibilityVerdict> verdict_;
};

inline int system_rank(const LinearSystem& sys) { return ExactSolver(sys).rank(); }

inline FeasibilityVerdict phase1_feasibility(const LinearSystem& sys) {
    ExactSolver solver(sys);
    return solver.feasibility();
}

// All vertices of {rows hold, unknowns >= 0} by exhaustive basis enumeration.
// Intended for tiny systems; the guard is on the unknown count.
inline std::vector<std::vector<Rational>> enumerate_vertices(const LinearSystem& sys,
                                                             int max_unknowns = 32) {
    const int n = sys.unknowns.size();
    if (n > max_unknowns)
        throw SolveError(SolveErrc::TooLarge, "vertex enumeration guard exceeded: " +
                                                  std::to_string(n) + " unknowns");
    ExactSolver probe(sys);
    const int r = probe.rank();

    std::vector<std::vector<Rational>> out;
    std::vector<int> subset(static_cast<std::size_t>(r));
    std::vector<std::vector<Rational>> seen;

    // iterate r-subsets of columns in lexicographic order
    for (int i = 0; i < r; ++i) subset[static_cast<std::size_t>(i)] = i;
    if (r > n) return out;
    while (true) {
        // solve the system restricted to the chosen support
        std::vector<std::pair<SparseVec, Rational>> m;
        m.reserve(sys.rows.size());
        for (const Row& row : sys.rows) {
            SparseVec restricted;
            for (const auto& [c, v] : row.coeffs) {
                auto it = std::lower_bound(subset.begin(), subset.end(), c);
                if (it != subset.end() && *it == c)
                    restricted.emplace_back(static_cast<int>(it - subset.begin()), v);
            }
            m.emplace_back(std::move(restricted), row.rhs);
        }
        // plain exact elimination on the restricted columns
        std::vector<int> piv_row(static_cast<std::size_t>(r), -1);
        std::vector<std::pair<SparseVec, Rational>> pivots;
        bool inconsistent = false;
        int prank = 0;
        for (auto& [lhs, rhs] : m) {
            while (true) {
                int hit = -1;
                for (const auto& [c, v] : lhs)
                    if (piv_row[static_cast<std::size_t>(c)] >= 0) {
                        hit = c;
                        break;
                    }
                if (hit < 0) break;
                const auto& p = pivots[static_cast<std::size_t>(piv_row[static_cast<std::size_t>(hit)])];
                Rational f = *find_coeff(lhs, hit);
                axpy(lhs, -f, p.first);
                rhs -= f * p.second;
            }
            if (lhs.empty()) {
                if (rhs != 0) {
                    inconsistent = true;
                    break;
                }
                continue;
            }
            int pcol = lhs.front().first;
            Rational pc = *find_coeff(lhs, pcol);
            for (auto& [c, v] : lhs) v /= pc;
            rhs /= pc;
            piv_row[static_cast<std::size_t>(pcol)] = prank++;
            pivots.emplace_back(lhs, rhs);
        }
        if (!inconsistent && prank == r) {
            // unique solution on this support; back-substitute
            std::vector<Rational> xb(static_cast<std::size_t>(r), Rational(0));
            for (int i = prank; i-- > 0;) {
                const auto& [lhs, rhs0] = pivots[static_cast<std::size_t>(i)];
                Rational rhs = rhs0;
                int own = -1;
                for (const auto& [c, v] : lhs) {
                    if (piv_row[static_cast<std::size_t>(c)] == i) {
                        own = c;
                        continue;
                    }
                    rhs -= v * xb[static_cast<std::size_t>(c)];
                }
                xb[static_cast<std::size_t>(own)] = rhs;
            }
            bool nonneg = true;
            for (const Rational& v : xb)
                if (v < 0) nonneg = false;
            if (nonneg) {
                std::vector<Rational> x(static_cast<std::size_t>(n), Rational(0));
                for (int i = 0; i < r; ++i)
                    x[static_cast<std::size_t>(subset[static_cast<std::size_t>(i)])] =
                        xb[static_cast<std::size_t>(i)];
                if (sys.satisfied_by(x) &&
                    std::find(seen.begin(), seen.end(), x) == seen.end()) {
                    seen.push_back(x);
                }
            }
        }
        // next subset
        int i = r - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - r + i) --i;
        if (i < 0) break;
        ++subset[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    std::sort(seen.begin(), seen.end());
    return seen;
}

}  // namespace satlp
