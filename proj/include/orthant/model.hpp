#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "orthant/geometry.hpp"

namespace orthant {

/// One homogeneous piece of the partition: a finite union of boxes whose states
/// all share the same geometric neighbor set N_k, together with the transition
/// probabilities p_{k,u} attached to that set.
struct Component {
    int index = -1;
    std::string name;
    std::vector<Box> region;
    std::vector<Step> steps;        // full geometric neighbor set, canonical order
    std::vector<double> probs;      // aligned with steps; zeros allowed

    bool contains(const State& n) const {
        for (const Box& b : region)
            if (b.contains(n)) return true;
        return false;
    }

    /// Probability attached to step u (0 when u is not a neighbor).
    double prob(const Step& u) const;

    int step_index(const Step& u) const;  // -1 when absent
};

/// Discrete-time nearest-neighbor random walk on {0,1,...}^M, homogeneous with
/// respect to a finite partition into box-union components.
///
/// Construction validates the partition: regions are disjoint, every region
/// shares a single zero pattern (so the geometric neighbor set is constant on
/// the component), probabilities are non-negative and sum to one within 1e-12,
/// and a sampled grid plus all region corners are claimed by exactly one
/// component. The self-loop probability is renormalized to the exact residual.
class RandomWalkModel {
  public:
    RandomWalkModel(int dimension, std::vector<Component> components);

    int dim() const { return dim_; }
    int num_components() const { return static_cast<int>(comps_.size()); }
    const Component& component(int k) const { return comps_.at(k); }
    const std::vector<Component>& components() const { return comps_; }

    /// Index indicating function c(n).
    int component_of(const State& n) const;

    /// Largest probe coordinate used when a supremum over a component's states
    /// must distinguish boundary from interior behavior; partial sums are
    /// constant per component so no probing is actually needed.
    bool component_has_positive(int k, int i) const;  // does C_k contain a state with n_i > 0?

  private:
    int dim_;
    std::vector<Component> comps_;

    void validate() const;
};

struct PartialSums {
    double up = 0.0;    // s+_i
    double zero = 0.0;  // s°_i
    double down = 0.0;  // s-_i
};

/// Per-dimension partial sums of the transition probabilities at state n.
PartialSums partial_sums(const RandomWalkModel& model, const State& n, int i);

/// Same, for every state of component k (the sums depend on n only through c(n)).
PartialSums partial_sums_component(const RandomWalkModel& model, int k, int i);

struct DriftReport {
    bool negative = false;
    std::vector<double> supremum;  // per dimension: sup over components with n_i>0 of s+ - s-
};

/// Checks the negative drift condition: in every dimension i, over all
/// components containing states with n_i > 0, the up-mass stays strictly below
/// the down-mass. The supremum is exact (finite component list).
DriftReport has_negative_drift(const RandomWalkModel& model);

/// Component-wise polynomial of degree <= 2:
///   H(n) = h0_k + sum_i (h_{k,i} n_i + eta_{k,i} n_i^2)  on component k.
/// Degree-1 instances keep all eta at zero.
struct PiecewiseFn {
    int degree = 1;
    std::vector<double> h0;                // per component
    std::vector<std::vector<double>> h;    // [k][i]
    std::vector<std::vector<double>> eta;  // [k][i]; empty or zero when degree==1

    static PiecewiseFn zero(int num_components, int dim, int degree = 1);
    /// F(n) = n_i, the usual queue-length reward.
    static PiecewiseFn coordinate(int num_components, int dim, int axis);
    /// Same coefficients on every component.
    static PiecewiseFn uniform(int num_components, int dim, double c0,
                               const std::vector<double>& lin,
                               const std::vector<double>& quad = {});

    double eval_on(int k, const State& n) const;
    double max_abs_coeff() const;
};

/// Evaluates fn at n, looking the component up in the model.
double evaluate(const RandomWalkModel& model, const PiecewiseFn& fn, const State& n);

/// Finite mixture of product-form geometric measures:
///   pi(n) = sum_h c_h * prod_i (1 - rho_{h,i}) rho_{h,i}^{n_i}.
struct ProductFormDistribution {
    struct Term {
        double weight = 1.0;
        std::vector<double> ratios;  // each in [0,1)
    };
    std::vector<Term> terms;

    ProductFormDistribution() = default;
    ProductFormDistribution(std::vector<Term> t);
    ProductFormDistribution(std::initializer_list<Term> t) : ProductFormDistribution(std::vector<Term>(t)) {}

    int dim() const { return terms.empty() ? 0 : static_cast<int>(terms[0].ratios.size()); }
    double density(const State& n) const;
    /// Total mass via closed-form geometric sums; 1 within 1e-9 for a distribution.
    double total_mass() const;
};

struct ComponentMoments {
    double mass = 0.0;
    std::vector<double> first;   // E[n_i ; n in C_k]
    std::vector<double> second;  // E[n_i^2 ; n in C_k]
};

/// Exact restricted moments of pi over component k (closed-form box sums).
ComponentMoments component_moments(const RandomWalkModel& model,
                                   const ProductFormDistribution& dist, int k);

/// sum_n fn(n) pi(n), evaluated exactly; linear in fn's coefficients.
double product_form_moment(const RandomWalkModel& model, const ProductFormDistribution& dist,
                           const PiecewiseFn& fn);

/// sum over the box of pi(n) * prod_i scale_i^{n_i}; +inf when the sum
/// diverges (a scaled ratio reaching 1 on an unbounded edge).
double scaled_mass(const ProductFormDistribution& dist, const Box& box,
                   const std::vector<double>& scale);

/// Continuous-time specification: per-component transition rates plus a
/// uniformization constant dominating every component's total rate.
struct CtmcSpec {
    struct RateComponent {
        std::string name;
        std::vector<Box> region;
        std::vector<std::pair<Step, double>> rates;
    };
    int dimension = 0;
    double uniformization_constant = 1.0;
    std::vector<RateComponent> components;
};

/// Divides rates by the uniformization constant and assigns the residual to
/// the self-loop.
RandomWalkModel uniformize(const CtmcSpec& ctmc);

/// Geometric neighbor set of a zero pattern: u_i ranges over {0,1} where
/// zero_pattern[i] is true and {-1,0,1} otherwise. Canonical (lexicographic)
/// order, self-loop included.
std::vector<Step> neighbor_set(const std::vector<bool>& zero_pattern);

}  // namespace orthant
