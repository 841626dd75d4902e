#include "orthant/phi.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "orthant/lp.hpp"

namespace orthant {

const std::vector<PhiArc>& PhiTable::get(int j, const Step& u) const {
    auto it = entries_.find({j, encode_offset(u)});
    if (it == entries_.end())
        throw std::invalid_argument("no phi entry for piece " + std::to_string(j) + ", step " +
                                    offset_name(u));
    return it->second;
}

namespace {

// signed difference sigma(w) = P(n+u, n+w) - P(n, n+w) as offset measures,
// over the union support N_j u (u + N_{c(j,u)})
std::map<int64_t, double> signed_difference(const RandomWalkModel& model, const Refinement& ref,
                                            int j, const Step& u) {
    const RefinedComponent& rc = ref.piece(j);
    const Component& from = model.component(rc.c_index);
    const Component& to = model.component(shift_component(ref, j, u));
    std::map<int64_t, double> sigma;
    for (size_t s = 0; s < to.steps.size(); ++s) {
        Offset w = add(u, to.steps[s]);
        sigma[encode_offset(w)] += to.probs[s];
    }
    for (size_t s = 0; s < from.steps.size(); ++s)
        sigma[encode_offset(from.steps[s])] -= from.probs[s];
    return sigma;
}

std::vector<Step> support_steps(const Component& c) {
    std::vector<Step> out;
    for (size_t s = 0; s < c.steps.size(); ++s)
        if (c.probs[s] > 0.0 && !is_zero(c.steps[s])) out.push_back(c.steps[s]);
    return out;
}

std::vector<Step> neighbor_steps(const Component& c) {
    std::vector<Step> out;
    for (const Step& s : c.steps)
        if (!is_zero(s)) out.push_back(s);
    return out;
}

std::vector<PhiArc> try_flow(const RandomWalkModel& model, const Refinement& ref, int j,
                             const Step& u, const std::map<int64_t, double>& sigma,
                             bool support_only, bool restrict_to_target_neighbors) {
    const int dim = model.dim();
    const int target_c = shift_component(ref, j, u);
    const Component& target = model.component(target_c);

    std::vector<int64_t> nodes;
    for (auto& [key, val] : sigma) nodes.push_back(key);

    struct Arc {
        int from;
        int to;
        Offset d;
        Step v;
    };
    std::vector<Arc> arcs;
    std::map<int64_t, int> node_index;
    for (size_t i = 0; i < nodes.size(); ++i) node_index[nodes[i]] = static_cast<int>(i);

    for (size_t i = 0; i < nodes.size(); ++i) {
        Offset d = decode_offset(nodes[i], dim);
        const int cd = shift_component(ref, j, d);
        const Component& comp = model.component(cd);
        std::vector<Step> steps = support_only ? support_steps(comp) : neighbor_steps(comp);
        for (const Step& v : steps) {
            if (restrict_to_target_neighbors && target.step_index(v) < 0) continue;
            Offset head = add(d, v);
            bool encodable = true;
            for (int h : head)
                if (h < -2 || h > 2) encodable = false;
            if (!encodable) continue;
            auto it = node_index.find(encode_offset(head));
            if (it == node_index.end()) continue;
            arcs.push_back({static_cast<int>(i), it->second, d, v});
        }
    }

    LinearProgramSpec lp;
    lp.sense = LinearProgramSpec::Sense::Min;
    std::vector<std::pair<int, double>> obj;
    for (size_t a = 0; a < arcs.size(); ++a) {
        int var = lp.add_variable("phi" + std::to_string(a), /*nonneg=*/true);
        obj.emplace_back(var, 1.0);
    }
    lp.set_objective(obj);
    for (size_t i = 0; i < nodes.size(); ++i) {
        LinearProgramSpec::Constraint row;
        row.rel = LinearProgramSpec::Rel::EQ;
        row.rhs = sigma.at(nodes[i]);
        for (size_t a = 0; a < arcs.size(); ++a) {
            if (arcs[a].to == static_cast<int>(i)) row.terms.emplace_back(static_cast<int>(a), 1.0);
            if (arcs[a].from == static_cast<int>(i))
                row.terms.emplace_back(static_cast<int>(a), -1.0);
        }
        lp.add_constraint(std::move(row));
    }
    LpSolution sol = solve_lp(lp);
    if (!sol.optimal()) return {};
    std::vector<PhiArc> out;
    for (size_t a = 0; a < arcs.size(); ++a)
        if (sol.x[a] > 1e-13) out.push_back({arcs[a].d, arcs[a].v, sol.x[a]});
    return out;
}

}  // namespace

std::vector<PhiArc> solve_phi(const RandomWalkModel& model, const Refinement& ref, int j,
                              const Step& u) {
    const RefinedComponent& rc = ref.piece(j);
    if (model.component(rc.c_index).step_index(u) < 0)
        throw std::invalid_argument("step " + offset_name(u) + " not admissible on piece " +
                                    std::to_string(j));
    std::map<int64_t, double> sigma = signed_difference(model, ref, j, u);
    // drop numerically zero entries but keep the node for routing
    double total = 0.0;
    for (auto& [k, v] : sigma) total += v;
    if (std::abs(total) > 1e-12) throw std::logic_error("signed difference does not cancel");

    for (auto [support_only, spec_shape] :
         {std::pair{true, true}, {false, true}, {false, false}}) {
        std::vector<PhiArc> arcs = try_flow(model, ref, j, u, sigma, support_only, spec_shape);
        bool all_zero = true;
        for (auto& [k, v] : sigma)
            if (std::abs(v) > 1e-13) all_zero = false;
        if (!arcs.empty() || all_zero) return arcs;
    }
    throw std::runtime_error("infeasible decomposition: the refinement/step structure cannot "
                             "couple n and n+" +
                             offset_name(u) + " in one step (piece " + std::to_string(j) + ")");
}

SlotSet perturbation_seeds(const RandomWalkModel& model, const RandomWalkModel& perturbed) {
    require_same_partition(model, perturbed);
    SlotSet seeds(model.num_components());
    for (int k = 0; k < model.num_components(); ++k) {
        const Component& a = model.component(k);
        const Component& b = perturbed.component(k);
        for (size_t s = 0; s < a.steps.size(); ++s)
            if (!is_zero(a.steps[s]) && a.probs[s] != b.probs[s])
                seeds[k].insert(encode_offset(a.steps[s]));
    }
    return seeds;
}

PhiBuild build_phi_closure(const RandomWalkModel& model, const Refinement& ref, SlotSet seeds) {
    PhiBuild out;
    out.slots = std::move(seeds);
    out.slots.resize(model.num_components());

    bool grew = true;
    while (grew) {
        grew = false;
        for (int j = 0; j < ref.size(); ++j) {
            const int k = ref.piece(j).c_index;
            for (int64_t ukey : std::set<int64_t>(out.slots[k])) {
                Step u = decode_offset(ukey, model.dim());
                if (out.table.has(j, u)) continue;
                std::vector<PhiArc> arcs = solve_phi(model, ref, j, u);
                for (const PhiArc& a : arcs) {
                    const int cd = shift_component(ref, j, a.d);
                    if (out.slots[cd].insert(encode_offset(a.v)).second) grew = true;
                }
                out.table.put(j, u, std::move(arcs));
            }
        }
    }
    return out;
}

double verify_phi(const RandomWalkModel& model, const Refinement& ref, const PhiTable& table,
                  int num_test_fns, uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int dim = model.dim();
    double worst = 0.0;

    for (const auto& [key, arcs] : table.entries()) {
        const auto& [j, ukey] = key;
        const Step u = decode_offset(ukey, dim);
        const RefinedComponent& rc = ref.piece(j);

        for (int depth : {0, 1, 3}) {
            const State n = ref.probe(j, depth);
            // rows looked up at the sampled state, independently of the
            // shift tables the solve used
            const Component& from = model.component(model.component_of(n));
            const Component& to = model.component(model.component_of(add(n, u)));
            for (int t = 0; t < num_test_fns; ++t) {
                // random bounded g on the two-step neighborhood of n
                std::map<State, double> g;
                auto eval_g = [&](const Offset& d) {
                    auto [it, fresh] = g.emplace(add(n, d), 0.0);
                    if (fresh) it->second = unif(rng);
                    return it->second;
                };
                double lhs = 0.0;
                for (size_t s = 0; s < to.steps.size(); ++s)
                    lhs += to.probs[s] * eval_g(add(u, to.steps[s]));
                for (size_t s = 0; s < from.steps.size(); ++s)
                    lhs -= from.probs[s] * eval_g(from.steps[s]);
                double rhs = 0.0;
                for (const PhiArc& a : arcs)
                    rhs += a.weight * (eval_g(add(a.d, a.v)) - eval_g(a.d));
                worst = std::max(worst, std::abs(lhs - rhs));
            }
            if (rc.unbounded.empty()) break;
        }
    }
    return worst;
}

void require_same_partition(const RandomWalkModel& model, const RandomWalkModel& perturbed) {
    if (model.dim() != perturbed.dim())
        throw std::invalid_argument("perturbed model dimension differs");
    if (model.num_components() != perturbed.num_components())
        throw std::invalid_argument("perturbed model component count differs");
    for (int k = 0; k < model.num_components(); ++k) {
        const Component& a = model.component(k);
        const Component& b = perturbed.component(k);
        if (a.steps != b.steps)
            throw std::invalid_argument("perturbed model neighbor set differs in component " +
                                        std::to_string(k));
        if (a.region.size() != b.region.size())
            throw std::invalid_argument("perturbed model region differs in component " +
                                        std::to_string(k));
        for (size_t r = 0; r < a.region.size(); ++r)
            if (a.region[r].lo != b.region[r].lo || a.region[r].hi != b.region[r].hi)
                throw std::invalid_argument("perturbed model region differs in component " +
                                            std::to_string(k));
    }
}

}  // namespace orthant
