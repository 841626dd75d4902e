#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "orthant/refinement.hpp"

namespace orthant {

/// One coupling arc: weight phi moves probability mass from n+d to n+d+v.
struct PhiArc {
    Offset d;
    Step v;
    double weight = 0.0;
};

/// Non-negative weights decomposing the signed one-step difference
/// P(n+u,.) - P(n,.) into unit-step arcs, per refined piece and step. The
/// weights are constant over each piece, so one entry serves all its states.
class PhiTable {
  public:
    void put(int j, const Step& u, std::vector<PhiArc> arcs) {
        entries_[{j, encode_offset(u)}] = std::move(arcs);
    }
    bool has(int j, const Step& u) const { return entries_.count({j, encode_offset(u)}) > 0; }
    const std::vector<PhiArc>& get(int j, const Step& u) const;
    const std::map<std::pair<int, int64_t>, std::vector<PhiArc>>& entries() const {
        return entries_;
    }

  private:
    std::map<std::pair<int, int64_t>, std::vector<PhiArc>> entries_;
};

/// Envelope slots: per partition component, the steps u for which bias-term
/// envelopes A_u, B_u are carried (encoded, sorted).
using SlotSet = std::vector<std::set<int64_t>>;

/// Minimal-total-mass decomposition for one (piece, step) pair, solved as a
/// transportation problem over arcs (n+d -> n+d+v). Arc steps are drawn from
/// progressively larger classes (support steps first, then the full neighbor
/// set) until the flow is feasible.
/// Throws when no arc class can couple n and n+u in one step.
std::vector<PhiArc> solve_phi(const RandomWalkModel& model, const Refinement& ref, int j,
                              const Step& u);

struct PhiBuild {
    PhiTable table;
    SlotSet slots;
};

/// Steps whose probability differs between the two models, per component
/// (the self-loop is excluded: its bias term vanishes identically).
SlotSet perturbation_seeds(const RandomWalkModel& model, const RandomWalkModel& perturbed);

/// Solves phi for every (piece, slot step) pair and closes the slot set under
/// the steps the decompositions actually use.
PhiBuild build_phi_closure(const RandomWalkModel& model, const Refinement& ref, SlotSet seeds);

/// Max identity residual over sampled states and random bounded test
/// functions; a valid table stays below 1e-10.
double verify_phi(const RandomWalkModel& model, const Refinement& ref, const PhiTable& table,
                  int num_test_fns = 20, uint32_t seed = 7);

/// Checks that perturbed shares dimension, regions and neighbor sets with
/// model (only probabilities may differ). Throws otherwise.
void require_same_partition(const RandomWalkModel& model, const RandomWalkModel& perturbed);

}  // namespace orthant
