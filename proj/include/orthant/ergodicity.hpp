#pragma once

#include <functional>
#include <vector>

#include "orthant/model.hpp"

namespace orthant {

/// Geometric Lyapunov data V(n) = v0 + sum_i v_i r_i^{n_i} together with the
/// drift-inequality constants and the small set it certifies.
struct GeometricLyapunov {
    double v0 = 1.0;
    std::vector<double> v;       // v_i > 0
    std::vector<double> r;       // r_i > 1
    double eps = 0.0;            // 0 < eps < eps_margin
    double eps_margin = 0.0;     // min over components/dims of s+(1-r) + s-(1-1/r)
    double b = 0.0;
    Box small_set;               // box {n : n_i <= bound_i}

    double value(const State& n) const;
    bool in_small_set(const State& n) const { return small_set.contains(n); }
};

/// Upper edges (exclusive) of the admissible ratio range per dimension:
/// inf over components with n_i > 0 of s-_i / s+_i.
std::vector<double> ratio_range(const RandomWalkModel& model);

/// Drift margin for a given ratio vector; positive under negative drift.
double drift_margin(const RandomWalkModel& model, const std::vector<double>& r);

/// Builds the geometric Lyapunov function for a C-linear reward F:
///   v0 = max_k {f_{k,0}, 1},  v_i = max_k {f_{k,i}, 1} / (log r_i * r_i^{log r_i}),
/// with b and the small set from the drift construction. Ensures |F|_V <= 1 by
/// raising v_i to the exact integer maximum of f_i n / r_i^n when the closed
/// form falls short (it does for r_i > e). Throws when the model lacks
/// negative drift or (r, eps) leave their admissible ranges.
GeometricLyapunov build_geometric_lyapunov(const RandomWalkModel& model, const PiecewiseFn& F,
                                           const std::vector<double>& r, double eps);

/// Defaults: r_i the geometric midpoint of (1, sup ratio), eps = margin/2.
GeometricLyapunov build_geometric_lyapunov(const RandomWalkModel& model, const PiecewiseFn& F);

/// Worst-case slack of  sum_u p V(n+u) - V(n) <= -eps V(n) + b 1_B(n)  over a
/// verification box; a valid construction stays <= 0.
double drift_inequality_check(const RandomWalkModel& model,
                              const std::function<double(const State&)>& V, double eps, double b,
                              const std::function<bool(const State&)>& in_B, const Box& box,
                              bool parallel = true);

/// Solidarity constants turning the drift inequality into a uniform bias-term
/// bound. The free parameter is the fraction t in (0,1) placing
/// rho = theta + t (1 - theta); theta is within one ulp of 1 whenever M_B is
/// large, so all derived quantities are kept in complement space.
struct MeynConstants {
    double delta = 0.0;
    double gamma = 0.0;
    double lambda = 0.0;
    double b_hat = 0.0;
    double v_B = 0.0;           // f0 + M b / (margin - eps)
    double v_B_max = 0.0;       // max_{n in B} V(n), the alternative reading
    double eta = 0.0;
    double M_B = 0.0;
    double theta_complement = 0.0;  // 1 - theta = 1 / M_B
    double rho_fraction = 0.5;      // t
    double prefactor = 0.0;         // (1+gamma) rho (1-rho)^-1 (rho-theta)^-1

    double theta() const { return 1.0 - theta_complement; }
    double rho() const { return theta() + rho_fraction * theta_complement; }
};

MeynConstants meyn_constants(const RandomWalkModel& model, const GeometricLyapunov& lyap,
                             double rho_fraction = 0.5);

/// Uniform-in-t bias bound: prefactor * (V(n) + V(n+u)).
double geometric_bias_bound(const MeynConstants& consts, const GeometricLyapunov& lyap,
                            const State& n, const Step& u);

/// Quadratic Lyapunov data V(n) = sum_i v_i n_i^2 for the linear-drift route.
struct QuadraticLyapunov {
    std::vector<double> v;   // v_i = -f* / sup (s+_i - s-_i) > 0
    double f_star = 1.0;
    double b = 0.0;
    Box small_set;
    // linear comparison function mu(n) = mu0 + sum_i mu_i n_i used for b and B
    double mu0 = 1.0;
    std::vector<double> mu;

    double value(const State& n) const;
};

/// Builds the quadratic Lyapunov data for a C-linear reward F. Throws when the
/// model lacks negative drift.
QuadraticLyapunov build_quadratic_lyapunov(const RandomWalkModel& model, const PiecewiseFn& F);

/// Worst-case slack of  sum_u p V(n+u) - V(n) <= -mu(n) + b 1_B(n)  over a box.
double mu_drift_check(const RandomWalkModel& model, const QuadraticLyapunov& qlyap,
                      const PiecewiseFn& mu_fn, const Box& box, bool parallel = true);

/// |F|_V check: max over the box of F(n) / V(n).
double sup_ratio_to(const RandomWalkModel& model, const PiecewiseFn& F,
                    const std::function<double(const State&)>& V, const Box& box);

}  // namespace orthant
