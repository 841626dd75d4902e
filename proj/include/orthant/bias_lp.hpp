#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "orthant/lp.hpp"
#include "orthant/phi.hpp"

namespace orthant {

/// Coefficients of one component-wise quadratic: c0 + sum_i lin_i n_i + quad_i n_i^2.
struct EnvelopeCoeffs {
    double c0 = 0.0;
    std::vector<double> lin;
    std::vector<double> quad;

    double eval(const State& n) const {
        double v = c0;
        for (size_t i = 0; i < lin.size(); ++i) {
            v += lin[i] * n[i];
            if (!quad.empty()) v += quad[i] * static_cast<double>(n[i]) * n[i];
        }
        return v;
    }
};

/// Bias-term envelopes -A_u <= D^t_u <= B_u, carried per (component, step) slot.
struct BiasEnvelopes {
    struct Pair {
        EnvelopeCoeffs lower;  // A_u
        EnvelopeCoeffs upper;  // B_u
    };
    std::vector<std::map<int64_t, Pair>> slots;  // per component, keyed by encoded step

    bool has(int k, const Step& u) const {
        return k < static_cast<int>(slots.size()) && slots[k].count(encode_offset(u)) > 0;
    }
    const Pair& at(int k, const Step& u) const { return slots.at(k).at(encode_offset(u)); }
};

/// Certified bound on the stationary performance measure, together with the
/// bounding-function coefficients that prove it.
struct BoundReport {
    enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };
    Status status = Status::NumericalFailure;
    bool upper = true;
    int degree = 2;
    double bound = 0.0;

    PiecewiseFn f_bar;        // C-linear replacement reward
    PiecewiseFn g;            // error envelope (zero for comparison certificates)
    BiasEnvelopes envelopes;  // bias-term envelopes backing the certificate

    double certificate_min_slack = 0.0;  // scaled slack of the re-checked certificate
    int lp_rows = 0;
    int lp_cols = 0;
    int lp_iterations = 0;

    bool optimal() const { return status == Status::Optimal; }
    std::string status_name() const;
    /// Structured text (JSON) rendering of the report.
    std::string to_json() const;
};

enum class Side { Upper, Lower };

struct BiasLpOptions {
    int degree = 2;
    int refinement_radius = 2;
    SimplexOptions simplex;
};

/// Shared assembly state: refinement, coupling weights and envelope slots are
/// the same for the upper, lower and comparison programs of one instance.
class BiasLpContext {
  public:
    BiasLpContext(const RandomWalkModel& model, const RandomWalkModel& perturbed,
                  ProductFormDistribution pi, PiecewiseFn reward, int refinement_radius = 2);

    const RandomWalkModel& model() const { return *model_; }
    const RandomWalkModel& perturbed() const { return *perturbed_; }
    const ProductFormDistribution& pi() const { return pi_; }
    const PiecewiseFn& reward() const { return reward_; }
    const Refinement& refinement() const { return refinement_; }
    const PhiBuild& phi() const { return phi_; }

  private:
    const RandomWalkModel* model_;
    const RandomWalkModel* perturbed_;
    ProductFormDistribution pi_;
    PiecewiseFn reward_;
    Refinement refinement_;
    PhiBuild phi_;
};

/// Assembled restricted program plus the variable tables needed to read a
/// certificate back out of a solution vector.
struct AssembledLp {
    LinearProgramSpec spec;
    // variable ids; -1 where a coefficient is not part of the program
    std::vector<int> fbar0;
    std::vector<std::vector<int>> fbar_lin;
    std::vector<int> g0;
    std::vector<std::vector<int>> g_lin;
    std::vector<std::vector<int>> g_quad;
    struct EnvVars {
        int c0 = -1;
        std::vector<int> lin;
        std::vector<int> quad;
    };
    std::map<std::pair<int, int64_t>, EnvVars> env_A;
    std::map<std::pair<int, int64_t>, EnvVars> env_B;
    int degree = 2;
    bool comparison = false;
};

/// Restricted linear program for the upper bound: minimize sum (F_bar + G) pi.
AssembledLp assemble_upper_lp(const BiasLpContext& ctx, int degree);
/// Lower-bound variant: maximize sum (F_bar - G) pi.
AssembledLp assemble_lower_lp(const BiasLpContext& ctx, int degree);
/// One-sided comparison program with G == 0 (degree 2 envelopes).
AssembledLp assemble_comparison_lp(const BiasLpContext& ctx, Side side, int degree = 2);

/// Solves an assembled program and reads the certificate back; the
/// certificate is re-evaluated against every constraint before reporting.
BoundReport solve_assembled(const BiasLpContext& ctx, const AssembledLp& assembled,
                            const SimplexOptions& opts = {});

/// Convenience: assemble + solve.
BoundReport lp_bound(const BiasLpContext& ctx, Side side, const BiasLpOptions& opts = {});
BoundReport comparison_bound(const BiasLpContext& ctx, Side side, const BiasLpOptions& opts = {});

/// Sufficient linear conditions for "H <= 0 on piece Z": on every unbounded
/// dimension the quadratic coefficient is non-positive and the slope at the
/// lower edge is non-increasing, and H is non-positive at the corner.
/// Numeric variant used by tests and the randomized soundness sweep.
bool certify_nonpositive(const RefinedComponent& piece, double c0,
                         const std::vector<double>& lin, const std::vector<double>& quad);

/// Draws a random quadratic on `piece` that the certifier accepts.
struct CertifiedQuadratic {
    double c0;
    std::vector<double> lin;
    std::vector<double> quad;
};
CertifiedQuadratic sample_certified_quadratic(const RefinedComponent& piece, std::mt19937& rng);

}  // namespace orthant
