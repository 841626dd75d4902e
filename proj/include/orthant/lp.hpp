#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orthant {

/// Solver-agnostic linear program: named variables (non-negative or free),
/// sparse constraint rows, sparse objective.
class LinearProgramSpec {
  public:
    enum class Sense { Min, Max };
    enum class Rel { LE, EQ, GE };

    struct Constraint {
        std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
        Rel rel = Rel::LE;
        double rhs = 0.0;
        std::string name;
    };

    Sense sense = Sense::Min;

    int add_variable(std::string name, bool nonneg = false);
    void add_constraint(Constraint c);
    void set_objective(std::vector<std::pair<int, double>> terms);

    int num_variables() const { return static_cast<int>(var_names_.size()); }
    int num_constraints() const { return static_cast<int>(rows_.size()); }
    const std::string& variable_name(int v) const { return var_names_.at(v); }
    bool is_nonneg(int v) const { return nonneg_.at(v); }
    const std::vector<Constraint>& constraints() const { return rows_; }
    const std::vector<std::pair<int, double>>& objective() const { return objective_; }

    /// Drops exact duplicate rows (same normalized terms, relation, rhs).
    void deduplicate_rows();

    double eval_row(const Constraint& c, const std::vector<double>& x) const;
    /// Minimal signed slack over all rows at x (>= 0 means feasible); for EQ
    /// rows the slack is -|lhs - rhs|. Each row is scaled by max(1, ||row||_inf).
    double min_slack(const std::vector<double>& x) const;

  private:
    std::vector<std::string> var_names_;
    std::vector<bool> nonneg_;
    std::vector<Constraint> rows_;
    std::vector<std::pair<int, double>> objective_;
};

struct SimplexOptions {
    double pivot_tol = 1e-9;
    double feas_tol = 1e-9;
    int max_iterations = 200000;
    // Dantzig pricing with a permanent switch to Bland's rule after this many
    // consecutive degenerate pivots; 0 forces Bland from the start.
    int degenerate_switch = 40;
    bool parallel = true;  // OpenMP row elimination (serial reference when false)
};

struct LpSolution {
    enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };
    Status status = Status::IterationLimit;
    double value = 0.0;
    std::vector<double> x;
    int iterations = 0;
    int phase1_iterations = 0;

    bool optimal() const { return status == Status::Optimal; }
};

const char* to_string(LpSolution::Status s);

/// Two-phase dense simplex. Free variables are split internally; the reported
/// solution is in the original variable space.
LpSolution solve_lp(const LinearProgramSpec& spec, const SimplexOptions& opts = {});

/// Free-format MPS export for cross-checking with external solvers.
void write_mps(const LinearProgramSpec& spec, std::ostream& os, const std::string& name = "LP");

}  // namespace orthant
