#include "orthant/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

namespace orthant {

int LinearProgramSpec::add_variable(std::string name, bool nonneg) {
    var_names_.push_back(std::move(name));
    nonneg_.push_back(nonneg);
    return static_cast<int>(var_names_.size()) - 1;
}

void LinearProgramSpec::add_constraint(Constraint c) {
    // merge duplicate variable entries, drop zeros
    std::map<int, double> merged;
    for (auto& [v, coef] : c.terms) {
        if (v < 0 || v >= num_variables()) throw std::invalid_argument("constraint references unknown variable");
        merged[v] += coef;
    }
    c.terms.clear();
    for (auto& [v, coef] : merged)
        if (coef != 0.0) c.terms.emplace_back(v, coef);
    rows_.push_back(std::move(c));
}

void LinearProgramSpec::set_objective(std::vector<std::pair<int, double>> terms) {
    std::map<int, double> merged;
    for (auto& [v, coef] : terms) {
        if (v < 0 || v >= num_variables()) throw std::invalid_argument("objective references unknown variable");
        merged[v] += coef;
    }
    objective_.clear();
    for (auto& [v, coef] : merged)
        if (coef != 0.0) objective_.emplace_back(v, coef);
}

void LinearProgramSpec::deduplicate_rows() {
    std::map<std::string, int> seen;
    std::vector<Constraint> kept;
    for (Constraint& c : rows_) {
        std::string key;
        key.reserve(c.terms.size() * 12 + 16);
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%d|%.17g|", static_cast<int>(c.rel), c.rhs);
        key += buf;
        for (auto& [v, coef] : c.terms) {
            std::snprintf(buf, sizeof(buf), "%d:%.17g,", v, coef);
            key += buf;
        }
        if (seen.emplace(std::move(key), 1).second) kept.push_back(std::move(c));
    }
    rows_ = std::move(kept);
}

double LinearProgramSpec::eval_row(const Constraint& c, const std::vector<double>& x) const {
    double lhs = 0.0;
    for (auto& [v, coef] : c.terms) lhs += coef * x[v];
    return lhs;
}

double LinearProgramSpec::min_slack(const std::vector<double>& x) const {
    double worst = std::numeric_limits<double>::infinity();
    for (const Constraint& c : rows_) {
        double scale = std::max(1.0, std::abs(c.rhs));
        for (auto& [v, coef] : c.terms) scale = std::max(scale, std::abs(coef));
        double lhs = eval_row(c, x);
        double slack;
        switch (c.rel) {
            case Rel::LE: slack = c.rhs - lhs; break;
            case Rel::GE: slack = lhs - c.rhs; break;
            default: slack = -std::abs(lhs - c.rhs); break;
        }
        worst = std::min(worst, slack / scale);
    }
    return worst;
}

const char* to_string(LpSolution::Status s) {
    switch (s) {
        case LpSolution::Status::Optimal: return "optimal";
        case LpSolution::Status::Infeasible: return "infeasible";
        case LpSolution::Status::Unbounded: return "unbounded";
        default: return "iteration-limit";
    }
}

namespace {

// Dense tableau holding the constraint rows plus two cost rows (phase 1 and
// phase 2) that are eliminated together with the rest.
class DenseSimplex {
  public:
    DenseSimplex(const LinearProgramSpec& spec, const SimplexOptions& opts)
        : spec_(spec), opts_(opts) {}

    LpSolution run();

  private:
    const LinearProgramSpec& spec_;
    const SimplexOptions& opts_;

    int m_ = 0;           // constraint rows
    int ncols_ = 0;       // structural (split) + slack columns
    int nart_ = 0;        // artificial columns, appended last
    std::vector<double> tab_;  // (m_) x stride_ row-major
    std::vector<double> rhs_;
    std::vector<double> cost1_, cost2_;  // reduced cost rows
    double obj1_ = 0.0, obj2_ = 0.0;
    std::vector<int> basis_;
    std::vector<int> split_pos_, split_neg_;  // per original variable
    int stride_ = 0;
    bool bland_ = false;
    int degenerate_run_ = 0;
    int iterations_ = 0;

    double* row(int r) { return tab_.data() + static_cast<size_t>(r) * stride_; }
    const double* row(int r) const { return tab_.data() + static_cast<size_t>(r) * stride_; }

    void build();
    void pivot(int r, int c, int active_cols);
    // returns entering column or -1 (optimal for the active cost row)
    int price(const std::vector<double>& cost, int active_cols) const;
    // returns leaving row or -1 (unbounded)
    int ratio_test(int c) const;
    bool iterate(std::vector<double>& cost, double& obj, int active_cols, LpSolution& out);
    void drop_artificials();
    std::vector<double> extract() const;
};

void DenseSimplex::build() {
    const int nvar = spec_.num_variables();
    split_pos_.assign(nvar, -1);
    split_neg_.assign(nvar, -1);
    int col = 0;
    for (int v = 0; v < nvar; ++v) {
        split_pos_[v] = col++;
        if (!spec_.is_nonneg(v)) split_neg_[v] = col++;
    }
    m_ = spec_.num_constraints();
    int nslack = 0;
    for (const auto& c : spec_.constraints())
        if (c.rel != LinearProgramSpec::Rel::EQ) ++nslack;
    ncols_ = col + nslack;

    // first pass: count artificials (rows whose slack cannot serve as basis)
    std::vector<int> slack_col(m_, -1);
    std::vector<double> slack_sign(m_, 0.0);
    std::vector<int> row_sign(m_, 1);
    int sc = col;
    for (int r = 0; r < m_; ++r) {
        const auto& c = spec_.constraints()[r];
        row_sign[r] = c.rhs < 0.0 ? -1 : 1;
        if (c.rel != LinearProgramSpec::Rel::EQ) {
            slack_col[r] = sc++;
            double s = c.rel == LinearProgramSpec::Rel::LE ? 1.0 : -1.0;
            slack_sign[r] = s * row_sign[r];
        }
    }
    nart_ = 0;
    for (int r = 0; r < m_; ++r)
        if (slack_sign[r] <= 0.0) ++nart_;

    stride_ = ncols_ + nart_;
    tab_.assign(static_cast<size_t>(m_) * stride_, 0.0);
    rhs_.assign(m_, 0.0);
    basis_.assign(m_, -1);
    cost1_.assign(stride_, 0.0);
    cost2_.assign(stride_, 0.0);
    obj1_ = obj2_ = 0.0;

    int art = ncols_;
    for (int r = 0; r < m_; ++r) {
        const auto& c = spec_.constraints()[r];
        double* a = row(r);
        const double sign = row_sign[r];
        for (auto& [v, coef] : c.terms) {
            a[split_pos_[v]] += sign * coef;
            if (split_neg_[v] >= 0) a[split_neg_[v]] -= sign * coef;
        }
        if (slack_col[r] >= 0)
            a[slack_col[r]] = (c.rel == LinearProgramSpec::Rel::LE ? 1.0 : -1.0) * sign;
        rhs_[r] = sign * c.rhs;
        if (slack_sign[r] > 0.0) {
            basis_[r] = slack_col[r];
        } else {
            a[art] = 1.0;
            basis_[r] = art++;
        }
    }

    // phase-2 cost row (minimization; Max handled by negation)
    const double flip = spec_.sense == LinearProgramSpec::Sense::Max ? -1.0 : 1.0;
    for (auto& [v, coef] : spec_.objective()) {
        cost2_[split_pos_[v]] += flip * coef;
        if (split_neg_[v] >= 0) cost2_[split_neg_[v]] -= flip * coef;
    }
    // phase-1 reduced costs: cost of artificials is 1; subtract basic artificial rows
    for (int r = 0; r < m_; ++r) {
        if (basis_[r] < ncols_) continue;
        const double* a = row(r);
        for (int j = 0; j < ncols_; ++j) cost1_[j] -= a[j];
        obj1_ -= rhs_[r];
    }
}

void DenseSimplex::pivot(int r, int c, int active_cols) {
    double* pr = row(r);
    const double piv = pr[c];
    const double inv = 1.0 / piv;
    for (int j = 0; j < active_cols; ++j) pr[j] *= inv;
    pr[c] = 1.0;
    rhs_[r] *= inv;

#pragma omp parallel for schedule(static) if (opts_.parallel && m_ > 128)
    for (int i = 0; i < m_; ++i) {
        if (i == r) continue;
        double* a = row(i);
        const double f = a[c];
        if (f == 0.0) continue;
        for (int j = 0; j < active_cols; ++j) a[j] -= f * pr[j];
        a[c] = 0.0;
        rhs_[i] -= f * rhs_[r];
        if (rhs_[i] < 0.0 && rhs_[i] > -opts_.feas_tol) rhs_[i] = 0.0;
    }
    for (std::vector<double>* cost : {&cost1_, &cost2_}) {
        double f = (*cost)[c];
        if (f == 0.0) continue;
        double* a = cost->data();
        for (int j = 0; j < active_cols; ++j) a[j] -= f * pr[j];
        a[c] = 0.0;
        double& obj = cost == &cost1_ ? obj1_ : obj2_;
        obj -= f * rhs_[r];
    }
    basis_[r] = c;
    ++iterations_;
}

int DenseSimplex::price(const std::vector<double>& cost, int active_cols) const {
    if (bland_) {
        for (int j = 0; j < active_cols; ++j)
            if (cost[j] < -opts_.pivot_tol) return j;
        return -1;
    }
    int best = -1;
    double best_val = -opts_.pivot_tol;
    for (int j = 0; j < active_cols; ++j)
        if (cost[j] < best_val) {
            best_val = cost[j];
            best = j;
        }
    return best;
}

int DenseSimplex::ratio_test(int c) const {
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m_; ++r) {
        const double a = row(r)[c];
        if (a <= opts_.pivot_tol) continue;
        const double ratio = rhs_[r] / a;
        if (ratio < best - 1e-15 ||
            (ratio < best + 1e-15 && leave >= 0 && basis_[r] < basis_[leave])) {
            best = ratio;
            leave = r;
        }
    }
    return leave;
}

bool DenseSimplex::iterate(std::vector<double>& cost, double& obj, int active_cols,
                           LpSolution& out) {
    while (true) {
        if (iterations_ >= opts_.max_iterations) {
            out.status = LpSolution::Status::IterationLimit;
            return false;
        }
        const int enter = price(cost, active_cols);
        if (enter < 0) return true;
        const int leave = ratio_test(enter);
        if (leave < 0) {
            out.status = LpSolution::Status::Unbounded;
            return false;
        }
        const double before = obj;
        pivot(leave, enter, active_cols);
        if (!bland_) {
            if (obj > before - 1e-13) {
                if (++degenerate_run_ > opts_.degenerate_switch) bland_ = true;
            } else {
                degenerate_run_ = 0;
            }
        }
    }
}

void DenseSimplex::drop_artificials() {
    // Pivot basic artificials out where possible; remaining ones flag redundant rows.
    std::vector<int> keep;
    for (int r = 0; r < m_; ++r) {
        if (basis_[r] < ncols_) {
            keep.push_back(r);
            continue;
        }
        int c = -1;
        const double* a = row(r);
        for (int j = 0; j < ncols_; ++j)
            if (std::abs(a[j]) > opts_.pivot_tol) {
                c = j;
                break;
            }
        if (c >= 0) {
            pivot(r, c, ncols_);
            keep.push_back(r);
        }
        // else: dependent row, dropped below
    }
    if (static_cast<int>(keep.size()) != m_) {
        std::vector<double> nt(keep.size() * static_cast<size_t>(stride_));
        std::vector<double> nr(keep.size());
        std::vector<int> nb(keep.size());
        for (size_t i = 0; i < keep.size(); ++i) {
            std::copy(row(keep[i]), row(keep[i]) + stride_, nt.data() + i * stride_);
            nr[i] = rhs_[keep[i]];
            nb[i] = basis_[keep[i]];
        }
        tab_ = std::move(nt);
        rhs_ = std::move(nr);
        basis_ = std::move(nb);
        m_ = static_cast<int>(keep.size());
    }
}

std::vector<double> DenseSimplex::extract() const {
    std::vector<double> col_val(ncols_, 0.0);
    for (int r = 0; r < m_; ++r)
        if (basis_[r] < ncols_) col_val[basis_[r]] = rhs_[r];
    std::vector<double> x(spec_.num_variables(), 0.0);
    for (int v = 0; v < spec_.num_variables(); ++v) {
        x[v] = col_val[split_pos_[v]];
        if (split_neg_[v] >= 0) x[v] -= col_val[split_neg_[v]];
    }
    return x;
}

LpSolution DenseSimplex::run() {
    build();
    LpSolution out;

    if (nart_ > 0) {
        if (!iterate(cost1_, obj1_, stride_, out)) {
            // unbounded cannot occur in phase 1; treat as numerical failure
            if (out.status == LpSolution::Status::Unbounded)
                out.status = LpSolution::Status::IterationLimit;
            out.iterations = iterations_;
            return out;
        }
        out.phase1_iterations = iterations_;
        double art_sum = 0.0;
        for (int r = 0; r < m_; ++r)
            if (basis_[r] >= ncols_) art_sum += rhs_[r];
        if (art_sum > 1e-7) {
            out.status = LpSolution::Status::Infeasible;
            out.iterations = iterations_;
            return out;
        }
        drop_artificials();
    }

    bland_ = false;
    degenerate_run_ = 0;
    if (!iterate(cost2_, obj2_, ncols_, out)) {
        out.iterations = iterations_;
        return out;
    }
    out.status = LpSolution::Status::Optimal;
    out.x = extract();
    double val = 0.0;
    for (auto& [v, coef] : spec_.objective()) val += coef * out.x[v];
    out.value = val;
    out.iterations = iterations_;
    return out;
}

}  // namespace

LpSolution solve_lp(const LinearProgramSpec& spec, const SimplexOptions& opts) {
    DenseSimplex solver(spec, opts);
    return solver.run();
}

void write_mps(const LinearProgramSpec& spec, std::ostream& os, const std::string& name) {
    os << "* generated by orthant-bounds\n";
    for (int v = 0; v < spec.num_variables(); ++v)
        os << "* C" << v << " = " << spec.variable_name(v) << "\n";
    os << "NAME " << name << "\n";
    os << (spec.sense == LinearProgramSpec::Sense::Max ? "OBJSENSE\n MAX\n" : "");
    os << "ROWS\n N obj\n";
    char rel[3] = {'L', 'E', 'G'};
    const auto& rows = spec.constraints();
    for (size_t r = 0; r < rows.size(); ++r)
        os << " " << rel[static_cast<int>(rows[r].rel)] << " R" << r << "\n";
    os << "COLUMNS\n";
    char buf[64];
    // column-major listing
    std::vector<std::vector<std::pair<int, double>>> by_col(spec.num_variables());
    for (size_t r = 0; r < rows.size(); ++r)
        for (auto& [v, coef] : rows[r].terms) by_col[v].emplace_back(static_cast<int>(r), coef);
    std::vector<double> obj_coef(spec.num_variables(), 0.0);
    for (auto& [v, coef] : spec.objective()) obj_coef[v] = coef;
    for (int v = 0; v < spec.num_variables(); ++v) {
        if (obj_coef[v] != 0.0) {
            std::snprintf(buf, sizeof(buf), " C%d obj %.17g\n", v, obj_coef[v]);
            os << buf;
        }
        for (auto& [r, coef] : by_col[v]) {
            std::snprintf(buf, sizeof(buf), " C%d R%d %.17g\n", v, r, coef);
            os << buf;
        }
    }
    os << "RHS\n";
    for (size_t r = 0; r < rows.size(); ++r)
        if (rows[r].rhs != 0.0) {
            std::snprintf(buf, sizeof(buf), " RHS R%zu %.17g\n", r, rows[r].rhs);
            os << buf;
        }
    os << "BOUNDS\n";
    for (int v = 0; v < spec.num_variables(); ++v)
        if (!spec.is_nonneg(v)) os << " FR BND C" << v << "\n";
    os << "ENDATA\n";
}

}  // namespace orthant
