#pragma once

#include <vector>

#include "orthant/bias_lp.hpp"
#include "orthant/model.hpp"

namespace orthant {

/// Dense surrogate of the walk on the box {0..T}^M. Transitions that would
/// leave the box are redirected to the self-loop, so every row stays
/// stochastic; quantities contaminated by that redirection are excluded via
/// valid_at().
class TruncatedChain {
  public:
    TruncatedChain(const RandomWalkModel& model, int truncation);

    const RandomWalkModel& model() const { return model_; }
    int truncation() const { return T_; }
    int dim() const { return model_.dim(); }
    int num_states() const { return num_states_; }

    int index(const State& n) const;
    State state(int idx) const;

    /// next = reward + P * cur  (one reward-recursion sweep)
    void reward_sweep(const std::vector<double>& cur, const std::vector<double>& reward,
                      std::vector<double>& next, bool parallel = true) const;

    /// next = dist * P  (distribution pushed one step forward)
    void distribution_sweep(const std::vector<double>& dist, std::vector<double>& next) const;

    /// True when no length-(t-1) path from n reaches a state whose row was
    /// modified by the truncation: t <= min_i (T - n_i).
    bool valid_at(const State& n, int t) const;

    std::vector<double> tabulate(const PiecewiseFn& fn) const;

  private:
    RandomWalkModel model_;
    int T_;
    int num_states_;
    std::vector<int> row_ptr_;
    std::vector<int> col_;
    std::vector<double> prob_;
};

/// Expected cumulative reward fields F^0..F^{t_max}; F^0 = 0 and
/// F^{t+1}(n) = F(n) + sum_u p F^t(n+u).
std::vector<std::vector<double>> iterate_reward(const TruncatedChain& chain, const PiecewiseFn& F,
                                                int t_max, bool parallel = true);

/// D^t_u(n) = F^t(n+u) - F^t(n) for one field.
double bias_term(const TruncatedChain& chain, const std::vector<double>& field, const State& n,
                 const Step& u);

struct StationaryResult {
    std::vector<double> pi;
    double value = 0.0;     // sum pi F
    double residual = 0.0;  // max_m |(pi P)(m) - pi(m)|
};

/// Direct sparse solve of pi P = pi, sum pi = 1 on the box.
StationaryResult stationary_truncated(const TruncatedChain& chain, const PiecewiseFn& F);

struct RobustnessReport {
    double value_T = 0.0;
    double value_T_plus = 0.0;
    double delta = 0.0;
};

/// Stationary performance at truncations T and T+10; non-convergence is
/// reported through the delta, not thrown.
RobustnessReport truncation_robustness(const RandomWalkModel& model, const PiecewiseFn& F, int T);

/// Cumulative sums over k <= k_max of || P^k_n - P^k_n' ||_mu, the mu-weighted
/// total variation of the k-step rows (the supremum over |g|_mu <= 1 is
/// attained at g = sign(h) mu).
std::vector<double> mu_tv_norm(const TruncatedChain& chain, const State& n, const State& n_prime,
                               int k_max, const PiecewiseFn& mu);

/// Bias fields propagated through the coupling table:
///   D^{t+1}_u(n) = F(n+u) - F(n) + sum_arcs phi D^t_v(n+d),
/// compared at every step against the direct differences of the reward
/// iterates on states where both are uncontaminated. Returns the max gap;
/// this is the oracle-side certification of the table.
double phi_recursion_max_gap(const TruncatedChain& chain, const Refinement& ref,
                             const PhiTable& phi, const PiecewiseFn& F, int t_max);

struct ValidationVerdict {
    bool certificate_feasible = true;
    double certificate_min_slack = 0.0;
    bool envelopes_contain_bias = true;
    double envelope_worst_violation = 0.0;  // positive = violation amount
    bool bracket_holds = true;
    double bracket_margin = 0.0;  // min(upper - oracle, oracle - lower) when both sides given
    double oracle_value = 0.0;

    bool all_pass() const { return certificate_feasible && envelopes_contain_bias && bracket_holds; }
};

/// Re-checks a solved report against brute force: envelope containment of the
/// oracle bias terms (tolerance 1e-6) for t <= t_max on uncontaminated states,
/// and the bracket around the truncated stationary value.
ValidationVerdict validate_bounds(const BoundReport& report, const TruncatedChain& chain,
                                  const PiecewiseFn& F, int t_max,
                                  const BoundReport* other_side = nullptr);

}  // namespace orthant
