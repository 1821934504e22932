#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "l1geo/rational.hpp"

namespace l1geo {

/// Small dense exact-rational LP:  maximize c*x  subject to  A x <= b, x free.
/// Two-phase dictionary simplex with Bland's rule (terminates on degenerate
/// instances). Problem sizes here are tiny (<= ~8 vars, <= ~60 rows).
class LinearProgram {
  public:
    enum class Status { Optimal, Infeasible, Unbounded };

    explicit LinearProgram(int num_vars) : k_(num_vars) {}

    void add_le(std::vector<Rat> coef, Rat rhs) {
        assert((int)coef.size() == k_);
        rows_.push_back(std::move(coef));
        rhs_.push_back(std::move(rhs));
    }
    void add_ge(std::vector<Rat> coef, Rat rhs) {
        for (auto& c : coef) c = -c;
        add_le(std::move(coef), -rhs);
    }
    void add_eq(const std::vector<Rat>& coef, const Rat& rhs) {
        add_le(coef, rhs);
        add_ge(coef, rhs);
    }

    struct Result {
        Status status = Status::Infeasible;
        Rat value;
        std::vector<Rat> point;
    };

    /// Maximize c*x. The instance may be solved repeatedly with different
    /// objectives; constraints accumulate.
    Result maximize(const std::vector<Rat>& objective) const {
        assert((int)objective.size() == k_);
        // free vars -> x = xp - xm, both >= 0
        int n = 2 * k_;
        int m = (int)rows_.size();
        // D has m+1 rows, n+2 cols. Row i < m: x_basic[i] = D[i][0] - sum_j D[i][1+j]*x_nonbasic[j].
        // Last column reserved for the phase-1 variable x0.
        // Objective row m: z = D[m][0] + sum_j D[m][1+j]*x_nonbasic[j] (coefficients negated in storage).
        int cols = n + 2;
        std::vector<std::vector<Rat>> D(m + 1, std::vector<Rat>(cols + 1, Rat(0)));
        std::vector<int> basic(m), nonbasic(n + 1);
        // variable ids: 0..n-1 structural, n..n+m-1 slack, n+m = x0
        for (int j = 0; j < n; ++j) nonbasic[j] = j;
        nonbasic[n] = n + m;  // x0 sits in the last nonbasic slot
        for (int i = 0; i < m; ++i) {
            basic[i] = n + i;
            D[i][0] = rhs_[i];
            for (int v = 0; v < k_; ++v) {
                D[i][1 + 2 * v] = rows_[i][v];
                D[i][1 + 2 * v + 1] = -rows_[i][v];
            }
            D[i][1 + n] = Rat(-1);  // x0 column
        }

        bool need_phase1 = false;
        for (int i = 0; i < m; ++i)
            if (D[i][0] < 0) need_phase1 = true;

        int active_cols = need_phase1 ? n + 1 : n;
        if (need_phase1) {
            // w = -x0
            for (int j = 0; j <= cols; ++j) D[m][j] = Rat(0);
            D[m][1 + n] = Rat(-1);
            // special first pivot: x0 enters, most-negative row leaves
            int leave = 0;
            for (int i = 1; i < m; ++i)
                if (D[i][0] < D[leave][0]) leave = i;
            pivot(D, basic, nonbasic, leave, n, active_cols);
            if (!run_simplex(D, basic, nonbasic, m, active_cols)) return {Status::Unbounded, Rat(0), {}};
            if (D[m][0] < 0) return {Status::Infeasible, Rat(0), {}};
            // force x0 out of the basis if it lingers at value 0
            for (int i = 0; i < m; ++i) {
                if (basic[i] == n + m) {
                    int j = 0;
                    while (j < active_cols && D[i][1 + j] == 0) ++j;
                    if (j < active_cols) {
                        pivot(D, basic, nonbasic, i, j, active_cols);
                    } else {
                        // row reads x0 = 0: drop it
                        D.erase(D.begin() + i);
                        basic.erase(basic.begin() + i);
                        --m;
                    }
                    break;
                }
            }
            // remove the x0 column
            int x0col = -1;
            for (int j = 0; j < active_cols; ++j)
                if (nonbasic[j] == n + m) x0col = j;
            assert(x0col >= 0);
            for (int i = 0; i <= m; ++i) D[i].erase(D[i].begin() + 1 + x0col);
            nonbasic.erase(nonbasic.begin() + x0col);
            active_cols = n;
        } else {
            nonbasic.pop_back();
        }

        // install the real objective in terms of current nonbasic vars
        std::vector<Rat> full(n + m, Rat(0));
        for (int v = 0; v < k_; ++v) {
            full[2 * v] = objective[v];
            full[2 * v + 1] = -objective[v];
        }
        for (int j = 0; j <= n; ++j) D[m][j] = Rat(0);
        for (int var = 0; var < n + m; ++var) {
            if (full[var] == 0) continue;
            int bi = -1, nj = -1;
            for (int i = 0; i < m; ++i)
                if (basic[i] == var) bi = i;
            for (int j = 0; j < active_cols; ++j)
                if (nonbasic[j] == var) nj = j;
            if (nj >= 0) {
                D[m][1 + nj] += full[var];
            } else {
                assert(bi >= 0);
                D[m][0] += full[var] * D[bi][0];
                for (int j = 0; j < active_cols; ++j) D[m][1 + j] -= full[var] * D[bi][1 + j];
            }
        }

        if (!run_simplex(D, basic, nonbasic, m, active_cols)) return {Status::Unbounded, Rat(0), {}};

        Result res;
        res.status = Status::Optimal;
        res.value = D[m][0];
        std::vector<Rat> vals(n + m, Rat(0));
        for (int i = 0; i < m; ++i) vals[basic[i]] = D[i][0];
        res.point.resize(k_);
        for (int v = 0; v < k_; ++v) res.point[v] = vals[2 * v] - vals[2 * v + 1];
        return res;
    }

    int num_vars() const { return k_; }

  private:
    // objective row stored as: z = D[m][0] + sum D[m][1+j] * x_nonbasic[j]
    static void pivot(std::vector<std::vector<Rat>>& D, std::vector<int>& basic,
                      std::vector<int>& nonbasic, int leave, int enterj, int active_cols) {
        int m = (int)basic.size();
        Rat piv = D[leave][1 + enterj];
        assert(piv != 0);
        // row of the leaving variable: x_B = b - sum a_j x_j; solve for entering var
        std::vector<Rat>& row = D[leave];
        Rat inv = Rat(1) / piv;
        row[0] *= inv;
        for (int j = 0; j < active_cols; ++j) row[1 + j] *= inv;
        row[1 + enterj] = inv;  // coefficient of the (now nonbasic) leaving var
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            Rat f = D[i][1 + enterj];
            if (f == 0) continue;
            if (i == m) {
                // objective uses + sign convention
                D[i][0] += f * row[0];
                for (int j = 0; j < active_cols; ++j)
                    D[i][1 + j] = D[i][1 + j] - f * row[1 + j];
                D[i][1 + enterj] = -f * row[1 + enterj];
            } else {
                D[i][0] -= f * row[0];
                for (int j = 0; j < active_cols; ++j)
                    D[i][1 + j] = D[i][1 + j] - f * row[1 + j];
                D[i][1 + enterj] = -f * row[1 + enterj];
            }
        }
        std::swap(basic[leave], nonbasic[enterj]);
    }

    /// Bland's rule simplex on the current dictionary. Returns false on unbounded.
    static bool run_simplex(std::vector<std::vector<Rat>>& D, std::vector<int>& basic,
                            std::vector<int>& nonbasic, int m, int active_cols) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < active_cols; ++j) {
                if (D[m][1 + j] > 0 && (enter == -1 || nonbasic[j] < nonbasic[enter])) enter = j;
            }
            if (enter == -1) return true;
            int leave = -1;
            Rat best_ratio(0);
            for (int i = 0; i < m; ++i) {
                if (D[i][1 + enter] > 0) {
                    Rat ratio = D[i][0] / D[i][1 + enter];
                    if (leave == -1 || ratio < best_ratio ||
                        (ratio == best_ratio && basic[i] < basic[leave])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave == -1) return false;
            pivot(D, basic, nonbasic, leave, enter, active_cols);
        }
    }

    int k_;
    std::vector<std::vector<Rat>> rows_;
    std::vector<Rat> rhs_;
};

}  // namespace l1geo
