#include "orthant/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace orthant {

namespace {

constexpr double kProbSumTol = 1e-12;

std::vector<bool> box_zero_pattern(const Box& b) {
    std::vector<bool> z(b.dim());
    for (int i = 0; i < b.dim(); ++i) {
        if (b.lo[i] == 0 && b.hi[i] == 0) {
            z[i] = true;
        } else if (b.lo[i] >= 1) {
            z[i] = false;
        } else {
            throw std::invalid_argument(
                "component box mixes zero and positive coordinates in dimension " +
                std::to_string(i) + "; split it so the neighbor set is constant");
        }
    }
    return z;
}

}  // namespace

int Component::step_index(const Step& u) const {
    for (size_t s = 0; s < steps.size(); ++s)
        if (steps[s] == u) return static_cast<int>(s);
    return -1;
}

double Component::prob(const Step& u) const {
    int s = step_index(u);
    return s < 0 ? 0.0 : probs[s];
}

std::vector<Step> neighbor_set(const std::vector<bool>& zero_pattern) {
    const int dim = static_cast<int>(zero_pattern.size());
    std::vector<Step> steps;
    Step u(dim, 0);
    // lexicographic over (-1|0)..1 per dimension
    std::vector<int> lo(dim), hi(dim, 1);
    for (int i = 0; i < dim; ++i) lo[i] = zero_pattern[i] ? 0 : -1;
    for (int i = 0; i < dim; ++i) u[i] = lo[i];
    while (true) {
        steps.push_back(u);
        int i = dim - 1;
        for (; i >= 0; --i) {
            if (u[i] < hi[i]) {
                ++u[i];
                break;
            }
            u[i] = lo[i];
        }
        if (i < 0) break;
    }
    return steps;
}

RandomWalkModel::RandomWalkModel(int dimension, std::vector<Component> components)
    : dim_(dimension), comps_(std::move(components)) {
    for (size_t k = 0; k < comps_.size(); ++k) comps_[k].index = static_cast<int>(k);
    validate();
}

void RandomWalkModel::validate() const {
    if (dim_ <= 0) throw std::invalid_argument("dimension must be positive");
    if (comps_.empty()) throw std::invalid_argument("model needs at least one component");

    for (const Component& c : comps_) {
        if (c.region.empty()) throw std::invalid_argument("component region empty");
        std::vector<bool> pattern = box_zero_pattern(c.region.front());
        for (const Box& b : c.region) {
            if (b.dim() != dim_) throw std::invalid_argument("box dimension mismatch");
            if (box_zero_pattern(b) != pattern)
                throw std::invalid_argument("component boxes disagree on zero pattern");
        }
        std::vector<Step> expect = neighbor_set(pattern);
        if (c.steps != expect)
            throw std::invalid_argument("component neighbor set is not the geometric one");
        if (c.probs.size() != c.steps.size())
            throw std::invalid_argument("probability vector not aligned with neighbor set");
        double sum = 0.0;
        for (double p : c.probs) {
            if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability outside [0,1]");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kProbSumTol)
            throw std::invalid_argument("component probabilities sum to " + std::to_string(sum));
    }

    // Disjointness and exhaustiveness, checked on region corners plus a sampled grid.
    auto check_state = [&](const State& n) {
        int claims = 0;
        for (const Component& c : comps_)
            if (c.contains(n)) ++claims;
        if (claims != 1)
            throw std::invalid_argument("state " + offset_name(n) + " claimed by " +
                                        std::to_string(claims) + " components");
    };
    for (const Component& c : comps_)
        for (const Box& b : c.region) {
            check_state(b.lower_corner());
            State top = b.lower_corner();
            for (int i = 0; i < dim_; ++i)
                if (b.hi[i] != kUnbounded) top[i] = b.hi[i];
            check_state(top);
        }
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> coord(0, 23);
    State n(dim_);
    for (int trial = 0; trial < 400; ++trial) {
        for (int i = 0; i < dim_; ++i) n[i] = coord(rng);
        check_state(n);
    }
}

int RandomWalkModel::component_of(const State& n) const {
    if (static_cast<int>(n.size()) != dim_) throw std::invalid_argument("state dimension mismatch");
    if (!in_orthant(n)) throw std::invalid_argument("state outside the orthant");
    for (const Component& c : comps_)
        if (c.contains(n)) return c.index;
    throw std::logic_error("partition not exhaustive at " + offset_name(n));
}

bool RandomWalkModel::component_has_positive(int k, int i) const {
    for (const Box& b : comps_.at(k).region)
        if (b.hi[i] == kUnbounded || b.hi[i] >= 1) {
            if (std::max(b.lo[i], 1) <= (b.hi[i] == kUnbounded ? kUnbounded : b.hi[i])) return true;
        }
    return false;
}

PartialSums partial_sums_component(const RandomWalkModel& model, int k, int i) {
    if (i < 0 || i >= model.dim()) throw std::invalid_argument("dimension index out of range");
    const Component& c = model.component(k);
    PartialSums s;
    for (size_t j = 0; j < c.steps.size(); ++j) {
        if (c.steps[j][i] > 0)
            s.up += c.probs[j];
        else if (c.steps[j][i] < 0)
            s.down += c.probs[j];
        else
            s.zero += c.probs[j];
    }
    return s;
}

PartialSums partial_sums(const RandomWalkModel& model, const State& n, int i) {
    return partial_sums_component(model, model.component_of(n), i);
}

DriftReport has_negative_drift(const RandomWalkModel& model) {
    DriftReport report;
    report.supremum.assign(model.dim(), -std::numeric_limits<double>::infinity());
    for (int k = 0; k < model.num_components(); ++k)
        for (int i = 0; i < model.dim(); ++i) {
            if (!model.component_has_positive(k, i)) continue;
            PartialSums s = partial_sums_component(model, k, i);
            report.supremum[i] = std::max(report.supremum[i], s.up - s.down);
        }
    report.negative = true;
    for (double d : report.supremum)
        if (!(d < 0.0)) report.negative = false;
    return report;
}

PiecewiseFn PiecewiseFn::zero(int num_components, int dim, int degree) {
    PiecewiseFn fn;
    fn.degree = degree;
    fn.h0.assign(num_components, 0.0);
    fn.h.assign(num_components, std::vector<double>(dim, 0.0));
    fn.eta.assign(num_components, std::vector<double>(dim, 0.0));
    return fn;
}

PiecewiseFn PiecewiseFn::coordinate(int num_components, int dim, int axis) {
    PiecewiseFn fn = zero(num_components, dim, 1);
    for (int k = 0; k < num_components; ++k) fn.h[k][axis] = 1.0;
    return fn;
}

PiecewiseFn PiecewiseFn::uniform(int num_components, int dim, double c0,
                                 const std::vector<double>& lin,
                                 const std::vector<double>& quad) {
    PiecewiseFn fn = zero(num_components, dim, quad.empty() ? 1 : 2);
    for (int k = 0; k < num_components; ++k) {
        fn.h0[k] = c0;
        fn.h[k] = lin;
        if (!quad.empty()) fn.eta[k] = quad;
    }
    return fn;
}

double PiecewiseFn::eval_on(int k, const State& n) const {
    double v = h0[k];
    for (size_t i = 0; i < n.size(); ++i) {
        v += h[k][i] * n[i];
        if (!eta.empty()) v += eta[k][i] * static_cast<double>(n[i]) * n[i];
    }
    return v;
}

double PiecewiseFn::max_abs_coeff() const {
    double m = 0.0;
    for (double c : h0) m = std::max(m, std::abs(c));
    for (const auto& row : h)
        for (double c : row) m = std::max(m, std::abs(c));
    for (const auto& row : eta)
        for (double c : row) m = std::max(m, std::abs(c));
    return m;
}

double evaluate(const RandomWalkModel& model, const PiecewiseFn& fn, const State& n) {
    return fn.eval_on(model.component_of(n), n);
}

ProductFormDistribution::ProductFormDistribution(std::vector<Term> t) : terms(std::move(t)) {
    for (const Term& term : terms)
        for (double r : term.ratios)
            if (r < 0.0 || r >= 1.0)
                throw std::invalid_argument("product-form ratio outside [0,1)");
}

double ProductFormDistribution::density(const State& n) const {
    double v = 0.0;
    for (const Term& t : terms) {
        double p = t.weight;
        for (size_t i = 0; i < t.ratios.size(); ++i)
            p *= (1.0 - t.ratios[i]) * std::pow(t.ratios[i], n[i]);
        v += p;
    }
    return v;
}

namespace {

// S_a(L,U,rho) = sum_{n=L}^{U} n^a rho^n for a in {0,1,2}; U == kUnbounded for a tail.
double power_tail(int a, long long L, double rho) {
    // sum_{n>=L} n^a rho^n
    if (rho == 0.0) return L == 0 ? (a == 0 ? 1.0 : 0.0) : 0.0;
    const double q = 1.0 - rho;
    const double rL = std::pow(rho, static_cast<double>(L));
    const double Ld = static_cast<double>(L);
    switch (a) {
        case 0: return rL / q;
        case 1: return rL * (Ld / q + rho / (q * q));
        case 2: return rL * (Ld * Ld / q + 2.0 * Ld * rho / (q * q) + rho * (1.0 + rho) / (q * q * q));
        default: throw std::invalid_argument("moment order > 2");
    }
}

double power_sum(int a, int L, int U, double rho) {
    if (U == kUnbounded) return power_tail(a, L, rho);
    return power_tail(a, L, rho) - power_tail(a, static_cast<long long>(U) + 1, rho);
}

// sum_{n=L}^{U} q^n for any q >= 0 (finite boxes tolerate q >= 1)
double geom_sum(int L, int U, double q) {
    if (U == kUnbounded) {
        if (q >= 1.0) return std::numeric_limits<double>::infinity();
        return std::pow(q, L) / (1.0 - q);
    }
    if (std::abs(q - 1.0) < 1e-14) return U - L + 1;
    return (std::pow(q, L) - std::pow(q, U + 1)) / (1.0 - q);
}

}  // namespace

double ProductFormDistribution::total_mass() const {
    double mass = 0.0;
    for (const Term& t : terms) {
        double m = t.weight;
        for (double rho : t.ratios) m *= (1.0 - rho) * power_sum(0, 0, kUnbounded, rho);
        mass += m;
    }
    return mass;
}

ComponentMoments component_moments(const RandomWalkModel& model,
                                   const ProductFormDistribution& dist, int k) {
    const int dim = model.dim();
    ComponentMoments out;
    out.first.assign(dim, 0.0);
    out.second.assign(dim, 0.0);
    for (const Box& b : model.component(k).region) {
        for (const auto& t : dist.terms) {
            std::vector<double> s0(dim), s1(dim), s2(dim);
            double norm = t.weight;
            for (int i = 0; i < dim; ++i) {
                s0[i] = power_sum(0, b.lo[i], b.hi[i], t.ratios[i]);
                s1[i] = power_sum(1, b.lo[i], b.hi[i], t.ratios[i]);
                s2[i] = power_sum(2, b.lo[i], b.hi[i], t.ratios[i]);
                norm *= (1.0 - t.ratios[i]);
            }
            double prod0 = 1.0;
            for (int i = 0; i < dim; ++i) prod0 *= s0[i];
            out.mass += norm * prod0;
            for (int i = 0; i < dim; ++i) {
                double rest = 1.0;
                for (int j = 0; j < dim; ++j)
                    if (j != i) rest *= s0[j];
                out.first[i] += norm * s1[i] * rest;
                out.second[i] += norm * s2[i] * rest;
            }
        }
    }
    return out;
}

double product_form_moment(const RandomWalkModel& model, const ProductFormDistribution& dist,
                           const PiecewiseFn& fn) {
    double v = 0.0;
    for (int k = 0; k < model.num_components(); ++k) {
        ComponentMoments m = component_moments(model, dist, k);
        v += fn.h0[k] * m.mass;
        for (int i = 0; i < model.dim(); ++i) {
            v += fn.h[k][i] * m.first[i];
            if (!fn.eta.empty()) v += fn.eta[k][i] * m.second[i];
        }
    }
    return v;
}

double scaled_mass(const ProductFormDistribution& dist, const Box& box,
                   const std::vector<double>& scale) {
    double total = 0.0;
    for (const auto& t : dist.terms) {
        double m = t.weight;
        for (int i = 0; i < box.dim(); ++i)
            m *= (1.0 - t.ratios[i]) * geom_sum(box.lo[i], box.hi[i], t.ratios[i] * scale[i]);
        total += m;
    }
    return total;
}

RandomWalkModel uniformize(const CtmcSpec& ctmc) {
    std::vector<Component> comps;
    const double gamma = ctmc.uniformization_constant;
    if (gamma <= 0.0) throw std::invalid_argument("uniformization constant must be positive");
    for (const auto& rc : ctmc.components) {
        Component c;
        c.name = rc.name;
        c.region = rc.region;
        std::vector<bool> pattern = box_zero_pattern(rc.region.front());
        c.steps = neighbor_set(pattern);
        c.probs.assign(c.steps.size(), 0.0);
        double total = 0.0;
        int self = -1;
        for (size_t s = 0; s < c.steps.size(); ++s)
            if (is_zero(c.steps[s])) self = static_cast<int>(s);
        for (const auto& [step, rate] : rc.rates) {
            if (rate < 0.0) throw std::invalid_argument("negative transition rate");
            int s = c.step_index(step);
            if (s < 0)
                throw std::invalid_argument("rate attached to step " + offset_name(step) +
                                            " outside component " + rc.name + "'s neighbor set");
            if (is_zero(step)) throw std::invalid_argument("self-loop rate is implicit");
            c.probs[s] += rate / gamma;
            total += rate / gamma;
        }
        if (total > 1.0 + kProbSumTol)
            throw std::invalid_argument("rate sum exceeds uniformization constant in component " +
                                        rc.name);
        c.probs[self] = 1.0 - std::min(total, 1.0);
        comps.push_back(std::move(c));
    }
    return RandomWalkModel(ctmc.dimension, std::move(comps));
}

}  // namespace orthant
