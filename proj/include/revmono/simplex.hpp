#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "revmono/errors.hpp"
#include "revmono/rational.hpp"

namespace revmono {

enum class Rel { LE, GE, EQ };

struct LinRow {
    std::vector<std::pair<int, Rat>> terms;  // sparse (var, coeff)
    Rel rel;
    Rat rhs;
};

// Bland's rule over two opposite fixed variable orders. Either one is
// anti-cycling; solving with both gives an independent cross-check.
enum class PivotOrder { MinIndex, MaxIndex };

enum class LpStatus { Optimal, InfeasibleLp, Unbounded };

struct LpResult {
    LpStatus status;
    Rat value;
    std::vector<Rat> x;
};

struct LpProblem {
    int nvars = 0;
    std::vector<Rat> objective;   // maximized
    std::vector<bool> free_var;   // default: x >= 0
    std::vector<LinRow> rows;

    int add_var(const Rat& obj_coeff, bool is_free = false) {
        objective.push_back(obj_coeff);
        free_var.push_back(is_free);
        return nvars++;
    }

    void add_row(std::vector<std::pair<int, Rat>> terms, Rel rel, const Rat& rhs) {
        rows.push_back({std::move(terms), rel, rhs});
    }
};

namespace detail {

class Tableau {
  public:
    int nrows = 0, ncols = 0;
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    std::vector<int> basis;
    std::vector<bool> allowed;  // columns eligible to enter
    std::vector<Rat> cost;
    Rat cost0 = 0;

    void price_out(const std::vector<Rat>& orig_cost) {
        cost = orig_cost;
        cost0 = 0;
        for (int r = 0; r < nrows; ++r) {
            const Rat& cb = orig_cost[basis[r]];
            if (cb == 0) continue;
            cost0 += cb * b[r];
            for (int j = 0; j < ncols; ++j)
                if (A[r][j] != 0) cost[j] -= cb * A[r][j];
        }
    }

    void pivot(int r, int c) {
        Rat inv = 1 / A[r][c];
        for (int j = 0; j < ncols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        A[r][c] = 1;
        for (int rr = 0; rr < nrows; ++rr) {
            if (rr == r || A[rr][c] == 0) continue;
            Rat f = A[rr][c];
            for (int j = 0; j < ncols; ++j)
                if (A[r][j] != 0) A[rr][j] -= f * A[r][j];
            b[rr] -= f * b[r];
            A[rr][c] = 0;
        }
        if (cost[c] != 0) {
            Rat f = cost[c];
            for (int j = 0; j < ncols; ++j)
                if (A[r][j] != 0) cost[j] -= f * A[r][j];
            cost0 += f * b[r];
            cost[c] = 0;
        }
        basis[r] = c;
    }

    // Returns Optimal or Unbounded for the current cost row.
    LpStatus run(PivotOrder order) {
        for (;;) {
            int enter = -1;
            if (order == PivotOrder::MinIndex) {
                for (int j = 0; j < ncols; ++j)
                    if (allowed[j] && cost[j] > 0) {
                        enter = j;
                        break;
                    }
            } else {
                for (int j = ncols - 1; j >= 0; --j)
                    if (allowed[j] && cost[j] > 0) {
                        enter = j;
                        break;
                    }
            }
            if (enter < 0) return LpStatus::Optimal;

            int leave = -1;
            Rat best_ratio;
            for (int r = 0; r < nrows; ++r) {
                if (A[r][enter] <= 0) continue;
                Rat ratio = b[r] / A[r][enter];
                bool better = false;
                if (leave < 0 || ratio < best_ratio) {
                    better = true;
                } else if (ratio == best_ratio) {
                    if (order == PivotOrder::MinIndex)
                        better = basis[r] < basis[leave];
                    else
                        better = basis[r] > basis[leave];
                }
                if (better) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
    }
};

}  // namespace detail

// Exact two-phase simplex; maximizes. Free variables are split internally.
inline LpResult solve_lp(const LpProblem& lp, PivotOrder order = PivotOrder::MinIndex) {
    // Column layout: for each variable, one column (plus a paired negative
    // column when free); then one slack/surplus column per inequality row;
    // then one artificial column per row needing one.
    int n = lp.nvars;
    std::vector<int> pos_col(n), neg_col(n, -1);
    int c = 0;
    for (int v = 0; v < n; ++v) {
        pos_col[v] = c++;
        if (lp.free_var[v]) neg_col[v] = c++;
    }
    int struct_cols = c;
    int nrows = static_cast<int>(lp.rows.size());
    std::vector<int> slack_col(nrows, -1);
    for (int r = 0; r < nrows; ++r)
        if (lp.rows[r].rel != Rel::EQ) slack_col[r] = c++;
    int pre_art_cols = c;

    // Build rows with nonnegative rhs.
    std::vector<std::vector<Rat>> rowdata(nrows, std::vector<Rat>(pre_art_cols, Rat(0)));
    std::vector<Rat> rhs(nrows);
    std::vector<int> art_col(nrows, -1);
    for (int r = 0; r < nrows; ++r) {
        const LinRow& row = lp.rows[r];
        Rat sign = 1;
        Rel rel = row.rel;
        if (row.rhs < 0) {
            sign = -1;
            if (rel == Rel::LE)
                rel = Rel::GE;
            else if (rel == Rel::GE)
                rel = Rel::LE;
        }
        rhs[r] = sign * row.rhs;
        for (auto& [v, coeff] : row.terms) {
            if (v < 0 || v >= n) throw DomainError("solve_lp: variable index out of range");
            Rat sc = sign * coeff;
            rowdata[r][pos_col[v]] += sc;
            if (neg_col[v] >= 0) rowdata[r][neg_col[v]] -= sc;
        }
        if (slack_col[r] >= 0) rowdata[r][slack_col[r]] = (rel == Rel::LE) ? Rat(1) : Rat(-1);
        if (rel != Rel::LE) art_col[r] = c++;
    }
    int total_cols = c;

    detail::Tableau t;
    t.nrows = nrows;
    t.ncols = total_cols;
    t.A.assign(nrows, std::vector<Rat>(total_cols, Rat(0)));
    t.b = rhs;
    t.basis.assign(nrows, -1);
    t.allowed.assign(total_cols, true);
    for (int r = 0; r < nrows; ++r) {
        for (int j = 0; j < pre_art_cols; ++j) t.A[r][j] = rowdata[r][j];
        if (art_col[r] >= 0) {
            t.A[r][art_col[r]] = 1;
            t.basis[r] = art_col[r];
        } else {
            t.basis[r] = slack_col[r];  // LE row: slack starts basic
        }
    }

    bool any_art = false;
    for (int r = 0; r < nrows; ++r) any_art |= art_col[r] >= 0;
    if (any_art) {
        std::vector<Rat> phase1(total_cols, Rat(0));
        for (int r = 0; r < nrows; ++r)
            if (art_col[r] >= 0) phase1[art_col[r]] = -1;
        t.price_out(phase1);
        LpStatus s = t.run(order);
        if (s == LpStatus::Unbounded) throw DomainError("solve_lp: phase 1 unbounded");
        if (t.cost0 != 0) return {LpStatus::InfeasibleLp, Rat(0), {}};
        // Pivot lingering artificials out where possible; drop them from play.
        for (int r = 0; r < nrows; ++r) {
            if (art_col[r] < 0 || t.basis[r] != art_col[r]) continue;
            int piv = -1;
            for (int j = 0; j < pre_art_cols; ++j)
                if (t.A[r][j] != 0) {
                    piv = j;
                    break;
                }
            if (piv >= 0) t.pivot(r, piv);
        }
        for (int r = 0; r < nrows; ++r)
            if (art_col[r] >= 0) t.allowed[art_col[r]] = false;
    }

    std::vector<Rat> phase2(total_cols, Rat(0));
    for (int v = 0; v < n; ++v) {
        phase2[pos_col[v]] = lp.objective[v];
        if (neg_col[v] >= 0) phase2[neg_col[v]] = -lp.objective[v];
    }
    t.price_out(phase2);
    LpStatus s = t.run(order);
    if (s == LpStatus::Unbounded) return {LpStatus::Unbounded, Rat(0), {}};

    std::vector<Rat> col_val(total_cols, Rat(0));
    for (int r = 0; r < nrows; ++r) col_val[t.basis[r]] = t.b[r];
    LpResult res;
    res.status = LpStatus::Optimal;
    res.x.resize(n);
    for (int v = 0; v < n; ++v) {
        res.x[v] = col_val[pos_col[v]];
        if (neg_col[v] >= 0) res.x[v] -= col_val[neg_col[v]];
    }
    res.value = 0;
    for (int v = 0; v < n; ++v) res.value += lp.objective[v] * res.x[v];
    return res;
}

}  // namespace revmono
