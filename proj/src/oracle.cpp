#include "orthant/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace orthant {

TruncatedChain::TruncatedChain(const RandomWalkModel& model, int truncation)
    : model_(model), T_(truncation) {
    if (T_ < 2) throw std::invalid_argument("truncation too small");
    long long count = 1;
    for (int i = 0; i < model_.dim(); ++i) {
        count *= T_ + 1;
        if (count > 40'000'000) throw std::invalid_argument("truncated state space too large");
    }
    num_states_ = static_cast<int>(count);

    row_ptr_.assign(num_states_ + 1, 0);
    std::vector<std::pair<int, double>> edges;
    edges.reserve(8);
    col_.reserve(static_cast<size_t>(num_states_) * 4);
    prob_.reserve(static_cast<size_t>(num_states_) * 4);
    for (int idx = 0; idx < num_states_; ++idx) {
        const State n = state(idx);
        const Component& c = model_.component(model_.component_of(n));
        edges.clear();
        double self = 0.0;
        for (size_t s = 0; s < c.steps.size(); ++s) {
            if (c.probs[s] == 0.0) continue;
            if (is_zero(c.steps[s])) {
                self += c.probs[s];
                continue;
            }
            State m = add(n, c.steps[s]);
            bool inside = true;
            for (int i = 0; i < dim(); ++i)
                if (m[i] > T_) inside = false;
            if (inside)
                edges.emplace_back(index(m), c.probs[s]);
            else
                self += c.probs[s];  // reflection by holding
        }
        if (self > 0.0) edges.emplace_back(idx, self);
        std::sort(edges.begin(), edges.end());
        for (auto& [t, p] : edges) {
            col_.push_back(t);
            prob_.push_back(p);
        }
        row_ptr_[idx + 1] = static_cast<int>(col_.size());
    }
}

int TruncatedChain::index(const State& n) const {
    int idx = 0;
    for (int i = 0; i < dim(); ++i) {
        if (n[i] < 0 || n[i] > T_) throw std::invalid_argument("state outside truncation box");
        idx = idx * (T_ + 1) + n[i];
    }
    return idx;
}

State TruncatedChain::state(int idx) const {
    State n(dim());
    for (int i = dim() - 1; i >= 0; --i) {
        n[i] = idx % (T_ + 1);
        idx /= T_ + 1;
    }
    return n;
}

void TruncatedChain::reward_sweep(const std::vector<double>& cur,
                                  const std::vector<double>& reward, std::vector<double>& next,
                                  bool parallel) const {
    next.resize(num_states_);
#pragma omp parallel for schedule(static) if (parallel && num_states_ > 1024)
    for (int idx = 0; idx < num_states_; ++idx) {
        double acc = reward[idx];
        for (int e = row_ptr_[idx]; e < row_ptr_[idx + 1]; ++e) acc += prob_[e] * cur[col_[e]];
        next[idx] = acc;
    }
}

void TruncatedChain::distribution_sweep(const std::vector<double>& dist,
                                        std::vector<double>& next) const {
    next.assign(num_states_, 0.0);
    for (int idx = 0; idx < num_states_; ++idx) {
        const double d = dist[idx];
        if (d == 0.0) continue;
        for (int e = row_ptr_[idx]; e < row_ptr_[idx + 1]; ++e) next[col_[e]] += d * prob_[e];
    }
}

bool TruncatedChain::valid_at(const State& n, int t) const {
    int margin = T_;
    for (int i = 0; i < dim(); ++i) margin = std::min(margin, T_ - n[i]);
    return t <= margin;
}

std::vector<double> TruncatedChain::tabulate(const PiecewiseFn& fn) const {
    std::vector<double> out(num_states_);
    for (int idx = 0; idx < num_states_; ++idx) {
        const State n = state(idx);
        out[idx] = fn.eval_on(model_.component_of(n), n);
    }
    return out;
}

std::vector<std::vector<double>> iterate_reward(const TruncatedChain& chain, const PiecewiseFn& F,
                                                int t_max, bool parallel) {
    std::vector<std::vector<double>> fields(t_max + 1);
    fields[0].assign(chain.num_states(), 0.0);
    const std::vector<double> reward = chain.tabulate(F);
    for (int t = 0; t < t_max; ++t) chain.reward_sweep(fields[t], reward, fields[t + 1], parallel);
    return fields;
}

double bias_term(const TruncatedChain& chain, const std::vector<double>& field, const State& n,
                 const Step& u) {
    return field[chain.index(add(n, u))] - field[chain.index(n)];
}

StationaryResult stationary_truncated(const TruncatedChain& chain, const PiecewiseFn& F) {
    const int n = chain.num_states();
    // (P^T - I) pi = 0 with the first equation replaced by sum pi = 1
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(n) * 5);
    for (int s = 0; s < n; ++s) trips.emplace_back(0, s, 1.0);
    for (int s = 0; s < n; ++s) {
        const State st = chain.state(s);
        const Component& c = chain.model().component(chain.model().component_of(st));
        for (size_t e = 0; e < c.steps.size(); ++e) {
            if (c.probs[e] == 0.0) continue;
            State m = add(st, c.steps[e]);
            bool inside = true;
            for (int i = 0; i < chain.dim(); ++i)
                if (m[i] > chain.truncation()) inside = false;
            const int t = inside ? chain.index(m) : s;
            if (t != 0) trips.emplace_back(t, s, c.probs[e]);
        }
        if (s != 0) trips.emplace_back(s, s, -1.0);
    }
    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) throw std::runtime_error("stationary solve failed to factorize");
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs[0] = 1.0;
    Eigen::VectorXd pi = lu.solve(rhs);

    StationaryResult out;
    out.pi.assign(pi.data(), pi.data() + n);
    std::vector<double> forward;
    chain.distribution_sweep(out.pi, forward);
    double resid = 0.0;
    for (int s = 0; s < n; ++s) resid = std::max(resid, std::abs(forward[s] - out.pi[s]));
    out.residual = resid;
    const std::vector<double> reward = chain.tabulate(F);
    double val = 0.0;
    for (int s = 0; s < n; ++s) val += out.pi[s] * reward[s];
    out.value = val;
    return out;
}

RobustnessReport truncation_robustness(const RandomWalkModel& model, const PiecewiseFn& F, int T) {
    RobustnessReport rep;
    rep.value_T = stationary_truncated(TruncatedChain(model, T), F).value;
    rep.value_T_plus = stationary_truncated(TruncatedChain(model, T + 10), F).value;
    rep.delta = std::abs(rep.value_T_plus - rep.value_T);
    return rep;
}

std::vector<double> mu_tv_norm(const TruncatedChain& chain, const State& n, const State& n_prime,
                               int k_max, const PiecewiseFn& mu) {
    const int count = chain.num_states();
    std::vector<double> mu_tab = chain.tabulate(mu);
    for (double v : mu_tab)
        if (v < 1.0 - 1e-12)
            throw std::invalid_argument("mu must be >= 1 on the truncation box");
    std::vector<double> pa(count, 0.0), pb(count, 0.0), ta, tb;
    pa[chain.index(n)] = 1.0;
    pb[chain.index(n_prime)] = 1.0;
    std::vector<double> partial(k_max + 1, 0.0);
    double acc = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        double norm = 0.0;
        for (int s = 0; s < count; ++s) norm += std::abs(pa[s] - pb[s]) * mu_tab[s];
        acc += norm;
        partial[k] = acc;
        if (k == k_max) break;
        chain.distribution_sweep(pa, ta);
        chain.distribution_sweep(pb, tb);
        pa.swap(ta);
        pb.swap(tb);
    }
    return partial;
}

double phi_recursion_max_gap(const TruncatedChain& chain, const Refinement& ref,
                             const PhiTable& phi, const PiecewiseFn& F, int t_max) {
    const RandomWalkModel& model = chain.model();
    const int count = chain.num_states();
    const std::vector<double> reward = chain.tabulate(F);

    // collect the slot steps present per component
    std::vector<std::vector<Step>> slot_steps(model.num_components());
    for (const auto& [key, arcs] : phi.entries()) {
        const Step u = decode_offset(key.second, model.dim());
        const int k = ref.piece(key.first).c_index;
        auto& list = slot_steps[k];
        if (std::find(list.begin(), list.end(), u) == list.end()) list.push_back(u);
    }

    // one bias field entry per (state, slot step of its component); at states
    // too close to the truncation edge for the arc stencil the recursion falls
    // back to the direct difference, which keeps the two routes comparable
    // everywhere
    struct Slot {
        int state_idx;
        int piece;
        Step u;
        int shifted_idx;
        bool stencil_fits;
    };
    std::vector<Slot> slots;
    std::vector<std::vector<int>> slot_at(count);  // per state: slot ids aligned with slot_steps
    for (int idx = 0; idx < count; ++idx) {
        const State n = chain.state(idx);
        const int j = ref.index_of(n);
        const int k = ref.piece(j).c_index;
        bool interior = true;
        for (int i = 0; i < chain.dim(); ++i)
            if (n[i] + 2 > chain.truncation()) interior = false;
        for (const Step& u : slot_steps[k]) {
            State m = add(n, u);
            bool in_box = true;
            for (int i = 0; i < chain.dim(); ++i)
                if (m[i] > chain.truncation()) in_box = false;
            if (!in_box) {
                slot_at[idx].push_back(-1);
                continue;
            }
            slot_at[idx].push_back(static_cast<int>(slots.size()));
            slots.push_back({idx, j, u, chain.index(m), interior && phi.has(j, u)});
        }
    }

    // resolve each arc once: either a propagated-field slot or a direct pair
    struct ResolvedArc {
        int field = -1;  // slot id carrying D_v(n+d), or -1
        int md = -1;     // index(n+d)
        int mdv = -1;    // index(n+d+v)
        double weight = 0.0;
    };
    const int slot_count = static_cast<int>(slots.size());
    std::vector<std::vector<ResolvedArc>> slot_arcs(slot_count);
    for (int si = 0; si < slot_count; ++si) {
        const Slot& sl = slots[si];
        if (!sl.stencil_fits) continue;
        const State n = chain.state(sl.state_idx);
        for (const PhiArc& a : phi.get(sl.piece, sl.u)) {
            ResolvedArc ra;
            ra.weight = a.weight;
            ra.md = chain.index(add(n, a.d));
            ra.mdv = chain.index(add(add(n, a.d), a.v));
            const int cd = ref.piece(ref.index_of(add(n, a.d))).c_index;
            const auto& steps = slot_steps[cd];
            for (size_t q = 0; q < steps.size(); ++q)
                if (steps[q] == a.v) ra.field = slot_at[ra.md][q];
            slot_arcs[si].push_back(ra);
        }
    }

    std::vector<double> cur(count, 0.0), next(count);
    std::vector<double> dcur(slot_count, 0.0), dnext(slot_count);
    double worst = 0.0;
    for (int t = 0; t < t_max; ++t) {
        chain.reward_sweep(cur, reward, next, true);
#pragma omp parallel for schedule(static) if (slot_count > 512)
        for (int si = 0; si < slot_count; ++si) {
            const Slot& sl = slots[si];
            if (!sl.stencil_fits) {
                dnext[si] = next[sl.shifted_idx] - next[sl.state_idx];
                continue;
            }
            double acc = reward[sl.shifted_idx] - reward[sl.state_idx];
            for (const ResolvedArc& a : slot_arcs[si])
                acc += a.weight * (a.field >= 0 ? dcur[a.field] : cur[a.mdv] - cur[a.md]);
            dnext[si] = acc;
        }
        for (int si = 0; si < slot_count; ++si) {
            const Slot& sl = slots[si];
            const double direct = next[sl.shifted_idx] - next[sl.state_idx];
            worst = std::max(worst, std::abs(dnext[si] - direct));
        }
        cur.swap(next);
        dcur.swap(dnext);
    }
    return worst;
}

ValidationVerdict validate_bounds(const BoundReport& report, const TruncatedChain& chain,
                                  const PiecewiseFn& F, int t_max, const BoundReport* other_side) {
    ValidationVerdict verdict;
    verdict.certificate_min_slack = report.certificate_min_slack;
    verdict.certificate_feasible = report.certificate_min_slack >= -1e-9;

    StationaryResult st = stationary_truncated(chain, F);
    verdict.oracle_value = st.value;

    const RandomWalkModel& model = chain.model();
    const int count = chain.num_states();
    const std::vector<double> reward = chain.tabulate(F);
    std::vector<double> cur(count, 0.0), next(count);
    double worst_violation = -std::numeric_limits<double>::infinity();
    bool any_checked = false;
    for (int t = 0; t <= t_max; ++t) {
        if (t > 0) {
            chain.reward_sweep(cur, reward, next, true);
            cur.swap(next);
        }
        for (int idx = 0; idx < count; ++idx) {
            const State n = chain.state(idx);
            const int k = model.component_of(n);
            if (static_cast<int>(report.envelopes.slots.size()) <= k) continue;
            for (const auto& [ukey, pair] : report.envelopes.slots[k]) {
                const Step u = decode_offset(ukey, chain.dim());
                State top = n;
                bool ok = true;
                for (int i = 0; i < chain.dim(); ++i) {
                    top[i] = std::max(n[i], n[i] + u[i]);
                    if (top[i] > chain.truncation()) ok = false;
                }
                if (!ok || !chain.valid_at(top, t)) continue;
                const double d = cur[chain.index(add(n, u))] - cur[idx];
                worst_violation =
                    std::max({worst_violation, d - pair.upper.eval(n), -pair.lower.eval(n) - d});
                any_checked = true;
            }
        }
    }
    verdict.envelope_worst_violation = any_checked ? worst_violation : 0.0;
    verdict.envelopes_contain_bias = verdict.envelope_worst_violation <= 1e-6;

    if (report.optimal()) {
        double upper = report.upper ? report.bound : std::numeric_limits<double>::infinity();
        double lower = report.upper ? -std::numeric_limits<double>::infinity() : report.bound;
        if (other_side && other_side->optimal()) {
            if (other_side->upper)
                upper = other_side->bound;
            else
                lower = other_side->bound;
        }
        verdict.bracket_margin = std::min(upper - st.value, st.value - lower);
        verdict.bracket_holds = st.value <= upper + 1e-6 && st.value >= lower - 1e-6;
    }
    return verdict;
}

}  // namespace orthant
