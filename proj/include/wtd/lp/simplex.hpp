#ifndef WTD_LP_SIMPLEX_HPP
#define WTD_LP_SIMPLEX_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "wtd/errors.hpp"
#include "wtd/mip/model.hpp"

namespace wtd::lp {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Optimal;
    double objective = 0.0;
    std::vector<double> values;  // one per model variable
    std::vector<double> duals;   // one per model constraint
    long long iterations = 0;
};

using BigRational = boost::multiprecision::cpp_rational;

struct ExactLpResult {
    LpStatus status = LpStatus::Optimal;
    BigRational objective = 0;
    std::vector<BigRational> values;
    std::vector<BigRational> duals;
    long long iterations = 0;
};

namespace detail {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
    static constexpr bool exact = false;
    static double from_rat(const mip::Rat& r) { return mip::to_double(r); }
    static double eps() { return 1e-9; }
};

template <>
struct ScalarOps<BigRational> {
    static constexpr bool exact = true;
    static BigRational from_rat(const mip::Rat& r) {
        return BigRational(r.numerator(), r.denominator());
    }
    static BigRational eps() { return 0; }
};

/// Dense bounded-variable primal simplex on the full tableau. Columns are
/// the model variables, one slack per inequality row, and one artificial
/// per row (kept at zero through phase 2; their reduced costs expose the
/// duals since their columns read out B^{-1}).
template <class S>
class Simplex {
public:
    explicit Simplex(const mip::MipModel& model) : model_(model) { build(); }

    LpStatus run() {
        // phase 1: drive the artificial sum to zero
        for (int j = 0; j < total_; ++j) cost_[j] = S(0);
        for (int r = 0; r < rows_; ++r) cost_[art_start_ + r] = S(1);
        refresh_pricing();
        const LpStatus phase1 = iterate(true);
        if (phase1 != LpStatus::Optimal) return phase1;  // cap blown
        const S feas_tol = ScalarOps<S>::exact ? S(0) : S(1e-7);
        if (obj_ > feas_tol) return LpStatus::Infeasible;

        // phase 2: real costs, artificials boxed at zero
        for (int r = 0; r < rows_; ++r) {
            upper_[art_start_ + r] = S(0);
            has_upper_[art_start_ + r] = true;
        }
        for (int j = 0; j < total_; ++j) cost_[j] = S(0);
        for (std::size_t j = 0; j < model_.variables.size(); ++j)
            cost_[j] = ScalarOps<S>::from_rat(model_.variables[j].objective);
        if constexpr (ScalarOps<S>::exact)
            refresh_pricing();
        else
            refactorize();  // phase-1 drift must not leak into phase 2
        return iterate(false);
    }

    S value_of(int column) const {
        switch (status_[column]) {
            case St::Lower: return lower_[column];
            case St::Upper: return upper_[column];
            case St::Basic:
                for (int r = 0; r < rows_; ++r)
                    if (basis_[r] == column) return rhs_[r];
        }
        return S(0);
    }

    std::vector<S> variable_values() const {
        std::vector<S> out(model_.variables.size());
        std::vector<S> all(total_, S(0));
        for (int j = 0; j < total_; ++j)
            if (status_[j] == St::Lower)
                all[j] = lower_[j];
            else if (status_[j] == St::Upper)
                all[j] = upper_[j];
        for (int r = 0; r < rows_; ++r) all[basis_[r]] = rhs_[r];
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = all[j];
        return out;
    }

    /// y_i from the artificial column of row i (phase-2 costs are zero on
    /// artificials, so d_art = -sign_i * y_i).
    std::vector<S> duals() const {
        std::vector<S> y(rows_);
        for (int r = 0; r < rows_; ++r) y[r] = -row_sign_[r] * dual_row_[art_start_ + r];
        return y;
    }

    S objective() const { return obj_; }
    long long iterations() const { return iterations_; }

private:
    enum class St { Basic, Lower, Upper };

    const mip::MipModel& model_;
    int rows_ = 0, structurals_ = 0, slack_start_ = 0, art_start_ = 0, total_ = 0;
    std::vector<S> tab_;  // rows_ x total_
    std::vector<S> rhs_;  // basic variable values
    std::vector<S> cost_, dual_row_, lower_, upper_;
    std::vector<bool> has_upper_;
    std::vector<int> basis_;
    std::vector<St> status_;
    std::vector<S> row_sign_;
    std::vector<S> orig_;      // initial tableau, for refactorization
    std::vector<S> b_signed_;  // sign-scaled right-hand sides
    S obj_ = S(0);
    long long iterations_ = 0;
    long long degenerate_streak_ = 0;
    long long pivots_since_refactor_ = 0;
    bool bland_ = ScalarOps<S>::exact;  // exact mode always uses Bland
    static constexpr long long refactor_interval = 60;

    S& at(int r, int j) { return tab_[std::size_t(r) * total_ + j]; }
    const S& at(int r, int j) const { return tab_[std::size_t(r) * total_ + j]; }

    void build() {
        rows_ = static_cast<int>(model_.constraints.size());
        structurals_ = static_cast<int>(model_.variables.size());
        int slacks = 0;
        for (const auto& c : model_.constraints)
            if (c.sense != mip::Sense::Eq) ++slacks;
        slack_start_ = structurals_;
        art_start_ = structurals_ + slacks;
        total_ = art_start_ + rows_;

        tab_.assign(std::size_t(rows_) * total_, S(0));
        rhs_.assign(rows_, S(0));
        cost_.assign(total_, S(0));
        dual_row_.assign(total_, S(0));
        lower_.assign(total_, S(0));
        upper_.assign(total_, S(0));
        has_upper_.assign(total_, false);
        basis_.assign(rows_, -1);
        status_.assign(total_, St::Lower);
        row_sign_.assign(rows_, S(1));

        for (int j = 0; j < structurals_; ++j) {
            const mip::Variable& v = model_.variables[j];
            lower_[j] = ScalarOps<S>::from_rat(v.lower);
            if (v.upper) {
                upper_[j] = ScalarOps<S>::from_rat(*v.upper);
                has_upper_[j] = true;
            }
        }

        // nonbasic structurals and slacks start at their lower bounds, so
        // row residuals are b - A l
        std::vector<S> residual(rows_);
        int slack = slack_start_;
        for (int r = 0; r < rows_; ++r) {
            const mip::LinearConstraint& c = model_.constraints[r];
            S activity = S(0);
            for (const auto& [var, coeff] : c.terms) {
                const S a = ScalarOps<S>::from_rat(coeff);
                at(r, var) = a;
                activity += a * lower_[var];
            }
            if (c.sense == mip::Sense::Le)
                at(r, slack++) = S(1);
            else if (c.sense == mip::Sense::Ge)
                at(r, slack++) = S(-1);
            residual[r] = ScalarOps<S>::from_rat(c.rhs) - activity;
        }
        // basis = artificials: with the artificial column set to sign_r*e_r,
        // B^{-1} = diag(sign), so the stored tableau rows are sign-scaled and
        // the artificial part is the identity
        b_signed_.assign(rows_, S(0));
        for (int r = 0; r < rows_; ++r) {
            const bool nonneg = !(residual[r] < S(0));
            row_sign_[r] = nonneg ? S(1) : S(-1);
            at(r, art_start_ + r) = S(1);
            basis_[r] = art_start_ + r;
            status_[art_start_ + r] = St::Basic;
            rhs_[r] = nonneg ? residual[r] : -residual[r];
            if (!nonneg)
                for (int j = 0; j < art_start_; ++j) at(r, j) = -at(r, j);
            b_signed_[r] = row_sign_[r] * ScalarOps<S>::from_rat(model_.constraints[r].rhs);
        }
        orig_ = tab_;
    }

    /// Rebuild the tableau from the pristine matrix under the current basis
    /// (Gauss-Jordan with full pivoting over the basis columns). Clears the
    /// rounding drift a long pivot sequence leaves in the dense tableau.
    void refactorize() {
        tab_ = orig_;
        std::vector<S> fresh_rhs(rows_);
        for (int r = 0; r < rows_; ++r) {
            S acc = b_signed_[r];
            for (int j = 0; j < total_; ++j) {
                if (status_[j] == St::Lower) {
                    if (!(lower_[j] == S(0))) acc -= orig_[std::size_t(r) * total_ + j] * lower_[j];
                } else if (status_[j] == St::Upper) {
                    if (!(upper_[j] == S(0))) acc -= orig_[std::size_t(r) * total_ + j] * upper_[j];
                }
            }
            fresh_rhs[r] = acc;
        }

        std::vector<int> pending = basis_;
        std::vector<char> row_done(rows_, 0);
        for (int step = 0; step < rows_; ++step) {
            int pick_row = -1;
            std::size_t pick_var = 0;
            S pick_mag = S(0);
            for (std::size_t t = 0; t < pending.size(); ++t) {
                if (pending[t] < 0) continue;
                for (int r = 0; r < rows_; ++r) {
                    if (row_done[r]) continue;
                    const S mag = abs_of(at(r, pending[t]));
                    if (mag > pick_mag) {
                        pick_mag = mag;
                        pick_row = r;
                        pick_var = t;
                    }
                }
            }
            if (pick_row < 0) throw NumericalFailure("singular basis during refactorization");
            const int col = pending[pick_var];
            pending[pick_var] = -1;
            row_done[pick_row] = 1;
            basis_[pick_row] = col;

            const S inv = S(1) / at(pick_row, col);
            for (int j = 0; j < total_; ++j) at(pick_row, j) *= inv;
            fresh_rhs[pick_row] *= inv;
            at(pick_row, col) = S(1);
            for (int r = 0; r < rows_; ++r) {
                if (r == pick_row) continue;
                const S factor = at(r, col);
                if (factor == S(0)) continue;
                for (int j = 0; j < total_; ++j) at(r, j) -= factor * at(pick_row, j);
                fresh_rhs[r] -= factor * fresh_rhs[pick_row];
                at(r, col) = S(0);
            }
        }
        rhs_ = fresh_rhs;
        pivots_since_refactor_ = 0;
        refresh_pricing();

        // the rebuilt values are exact for this basis; anything material
        // out of bounds means the float path has lost the plot
        if constexpr (!ScalarOps<S>::exact) {
            for (int r = 0; r < rows_; ++r) {
                const int j = basis_[r];
                S viol = lower_[j] - rhs_[r];
                if (has_upper_[j] && rhs_[r] - upper_[j] > viol) viol = rhs_[r] - upper_[j];
                if (viol > S(1e-5))
                    throw NumericalFailure("refactorization exposed an infeasible basis");
            }
        }
    }

    // recompute reduced costs and objective from scratch (phase switches)
    void refresh_pricing() {
        for (int j = 0; j < total_; ++j) dual_row_[j] = cost_[j];
        for (int r = 0; r < rows_; ++r) {
            const S cb = cost_[basis_[r]];
            if (cb == S(0)) continue;
            for (int j = 0; j < total_; ++j) dual_row_[j] -= cb * at(r, j);
        }
        obj_ = S(0);
        for (int j = 0; j < total_; ++j) {
            if (status_[j] == St::Lower)
                obj_ += cost_[j] * lower_[j];
            else if (status_[j] == St::Upper)
                obj_ += cost_[j] * upper_[j];
        }
        for (int r = 0; r < rows_; ++r) obj_ += cost_[basis_[r]] * rhs_[r];
    }

    LpStatus iterate(bool phase1) {
        const S eps = ScalarOps<S>::eps();
        const long long cap = 2000 + 200ll * (rows_ + total_);
        for (;;) {
            if (++iterations_ > cap) {
                if constexpr (ScalarOps<S>::exact)
                    throw NumericalFailure("exact simplex exceeded its iteration cap");
                else
                    throw NumericalFailure("simplex exceeded its iteration cap");
            }
            if constexpr (!ScalarOps<S>::exact) {
                if (pivots_since_refactor_ >= refactor_interval) refactorize();
            }

            // entering variable
            int enter = -1;
            S best_score = S(0);
            for (int j = 0; j < total_; ++j) {
                if (status_[j] == St::Basic) continue;
                const S d = dual_row_[j];
                S score = S(0);
                if (status_[j] == St::Lower && d < -eps)
                    score = -d;
                else if (status_[j] == St::Upper && d > eps)
                    score = d;
                else
                    continue;
                if (bland_) {
                    enter = j;
                    break;
                }
                if (score > best_score) {
                    best_score = score;
                    enter = j;
                }
            }
            if (enter < 0) {
                // only accept optimality certified on a freshly rebuilt tableau
                if constexpr (!ScalarOps<S>::exact) {
                    if (pivots_since_refactor_ > 0) {
                        refactorize();
                        continue;
                    }
                }
                return LpStatus::Optimal;
            }

            const int dir = status_[enter] == St::Lower ? 1 : -1;
            const S sdir = S(dir);

            // ratio test: pass 1 finds the tightest step, pass 2 picks the
            // leaving row with the largest pivot among the near-minimal
            // ratios (Bland mode: the smallest basic index instead)
            const bool flip_possible = has_upper_[enter];
            auto row_limit = [&](int r, S& limit, bool& to_upper) {
                const S g = sdir * at(r, enter);
                if (g > eps) {
                    limit = (rhs_[r] - lower_[basis_[r]]) / g;
                    to_upper = false;
                } else if (g < -eps && has_upper_[basis_[r]]) {
                    limit = (upper_[basis_[r]] - rhs_[r]) / -g;
                    to_upper = true;
                } else {
                    return false;
                }
                if (limit < S(0)) limit = S(0);
                return true;
            };

            bool bounded = flip_possible;
            S t_min = flip_possible ? upper_[enter] - lower_[enter] : S(0);
            for (int r = 0; r < rows_; ++r) {
                S limit;
                bool to_upper;
                if (!row_limit(r, limit, to_upper)) continue;
                if (!bounded || limit < t_min) t_min = limit;
                bounded = true;
            }
            if (!bounded) return LpStatus::Unbounded;

            int leave = -1;
            bool leave_to_upper = false;
            const S slack_tol =
                ScalarOps<S>::exact ? S(0) : S(1e-9) * (S(1) + abs_of(t_min));
            if (!flip_possible || t_min < upper_[enter] - lower_[enter]) {
                S best_pivot = S(0);
                for (int r = 0; r < rows_; ++r) {
                    S limit;
                    bool to_upper;
                    if (!row_limit(r, limit, to_upper)) continue;
                    if (limit > t_min + slack_tol) continue;
                    const bool better = leave < 0 ||
                                        (bland_ ? basis_[r] < basis_[leave]
                                                : abs_of(at(r, enter)) > best_pivot);
                    if (better) {
                        leave = r;
                        leave_to_upper = to_upper;
                        best_pivot = abs_of(at(r, enter));
                    }
                }
            }
            const S best_t = t_min;

            if (best_t > eps)
                degenerate_streak_ = 0;
            else if (++degenerate_streak_ > 10ll * total_)
                bland_ = true;

            obj_ += dual_row_[enter] * sdir * best_t;
            for (int r = 0; r < rows_; ++r) rhs_[r] -= sdir * best_t * at(r, enter);

            if (leave < 0) {  // bound flip, basis unchanged
                status_[enter] = status_[enter] == St::Lower ? St::Upper : St::Lower;
                continue;
            }

            const int out = basis_[leave];
            status_[out] = leave_to_upper ? St::Upper : St::Lower;
            const S enter_value =
                (dir == 1 ? lower_[enter] : upper_[enter]) + sdir * best_t;

            // pivot; the entering column is forced to an exact unit vector
            const S piv = at(leave, enter);
            const S inv = S(1) / piv;
            for (int j = 0; j < total_; ++j) at(leave, j) *= inv;
            at(leave, enter) = S(1);
            for (int r = 0; r < rows_; ++r) {
                if (r == leave) continue;
                const S factor = at(r, enter);
                if (factor == S(0)) continue;
                for (int j = 0; j < total_; ++j) at(r, j) -= factor * at(leave, j);
                at(r, enter) = S(0);
            }
            const S dfactor = dual_row_[enter];
            if (!(dfactor == S(0)))
                for (int j = 0; j < total_; ++j) dual_row_[j] -= dfactor * at(leave, j);
            dual_row_[enter] = S(0);

            basis_[leave] = enter;
            status_[enter] = St::Basic;
            rhs_[leave] = enter_value;
            ++pivots_since_refactor_;
            (void)phase1;
        }
    }

    static S abs_of(const S& v) { return v < S(0) ? -v : v; }
};

}  // namespace detail

/// Solve the LP relaxation (integrality dropped) with the floating-point
/// simplex; throws NumericalFailure when the pivot cap is exceeded, which
/// signals callers to retry with solve_lp_exact.
inline LpResult solve_lp(const mip::MipModel& model) {
    detail::Simplex<double> solver(model);
    LpResult result;
    result.status = solver.run();
    result.iterations = solver.iterations();
    if (result.status == LpStatus::Optimal) {
        result.objective = solver.objective();
        auto vals = solver.variable_values();
        result.values.assign(vals.begin(), vals.end());
        auto y = solver.duals();
        result.duals.assign(y.begin(), y.end());
    }
    return result;
}

/// Exact-rational reference solve for small certifications.
inline ExactLpResult solve_lp_exact(const mip::MipModel& model) {
    detail::Simplex<BigRational> solver(model);
    ExactLpResult result;
    result.status = solver.run();
    result.iterations = solver.iterations();
    if (result.status == LpStatus::Optimal) {
        result.objective = solver.objective();
        result.values = solver.variable_values();
        result.duals = solver.duals();
    }
    return result;
}

/// Float solve with the exact-rational path as fallback when the float
/// simplex reports a numerical failure.
inline LpResult solve_lp_robust(const mip::MipModel& model) {
    try {
        return solve_lp(model);
    } catch (const NumericalFailure&) {
        const ExactLpResult exact = solve_lp_exact(model);
        LpResult result;
        result.status = exact.status;
        result.iterations = exact.iterations;
        if (result.status == LpStatus::Optimal) {
            result.objective = exact.objective.convert_to<double>();
            result.values.reserve(exact.values.size());
            for (const auto& v : exact.values) result.values.push_back(v.convert_to<double>());
            for (const auto& y : exact.duals) result.duals.push_back(y.convert_to<double>());
        }
        return result;
    }
}

struct LpAudit {
    double primal_residual = 0.0;   // worst constraint violation
    double bound_residual = 0.0;    // worst box violation
    double pricing_residual = 0.0;  // worst reduced-cost sign violation
    double cs_residual = 0.0;       // worst complementary-slackness product
    double duality_gap = 0.0;       // |primal - dual objective from (y, d)|
};

/// Certificate check of an Optimal result against the original model data.
inline LpAudit audit_lp(const mip::MipModel& model, const LpResult& result) {
    LpAudit audit;
    const auto& x = result.values;
    const auto& y = result.duals;

    std::vector<double> reduced(model.variables.size());
    for (std::size_t j = 0; j < model.variables.size(); ++j)
        reduced[j] = mip::to_double(model.variables[j].objective);

    double dual_obj = 0.0;
    for (std::size_t r = 0; r < model.constraints.size(); ++r) {
        const auto& c = model.constraints[r];
        double activity = 0.0;
        for (const auto& [var, coeff] : c.terms) {
            const double a = mip::to_double(coeff);
            activity += a * x[var];
            reduced[var] -= y[r] * a;
        }
        const double b = mip::to_double(c.rhs);
        double violation = 0.0, sign_violation = 0.0;
        switch (c.sense) {
            case mip::Sense::Le:
                violation = std::max(0.0, activity - b);
                sign_violation = std::max(0.0, y[r]);  // Le rows need y <= 0
                break;
            case mip::Sense::Ge:
                violation = std::max(0.0, b - activity);
                sign_violation = std::max(0.0, -y[r]);
                break;
            case mip::Sense::Eq:
                violation = std::abs(activity - b);
                break;
        }
        audit.primal_residual = std::max(audit.primal_residual, violation);
        audit.pricing_residual = std::max(audit.pricing_residual, sign_violation);
        audit.cs_residual = std::max(audit.cs_residual, std::abs(y[r] * (activity - b)));
        dual_obj += y[r] * b;
    }

    for (std::size_t j = 0; j < model.variables.size(); ++j) {
        const mip::Variable& v = model.variables[j];
        const double lower = mip::to_double(v.lower);
        audit.bound_residual = std::max(audit.bound_residual, lower - x[j]);
        if (v.upper)
            audit.bound_residual =
                std::max(audit.bound_residual, x[j] - mip::to_double(*v.upper));

        // nonnegative reduced cost binds to the lower bound, nonpositive to
        // the upper; interior variables must price out to zero
        if (reduced[j] > 0) {
            dual_obj += reduced[j] * lower;
            audit.cs_residual =
                std::max(audit.cs_residual, std::abs(reduced[j] * (x[j] - lower)));
        } else if (v.upper) {
            const double upper = mip::to_double(*v.upper);
            dual_obj += reduced[j] * upper;
            audit.cs_residual =
                std::max(audit.cs_residual, std::abs(reduced[j] * (upper - x[j])));
        } else {
            audit.pricing_residual = std::max(audit.pricing_residual, -reduced[j]);
        }
    }
    audit.duality_gap = std::abs(result.objective - dual_obj);
    return audit;
}

}  // namespace wtd::lp

#endif
