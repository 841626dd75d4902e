#include "orthant/ergodicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace orthant {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double expected_change(const RandomWalkModel& model, int k,
                       const std::function<double(const State&)>& V, const State& n) {
    const Component& c = model.component(k);
    double pv = 0.0;
    for (size_t s = 0; s < c.steps.size(); ++s)
        if (c.probs[s] > 0.0) pv += c.probs[s] * V(add(n, c.steps[s]));
    return pv - V(n);
}

}  // namespace

double GeometricLyapunov::value(const State& n) const {
    double val = v0;
    for (size_t i = 0; i < v.size(); ++i) val += v[i] * std::pow(r[i], n[i]);
    return val;
}

std::vector<double> ratio_range(const RandomWalkModel& model) {
    std::vector<double> sup(model.dim(), kInf);
    for (int k = 0; k < model.num_components(); ++k)
        for (int i = 0; i < model.dim(); ++i) {
            if (!model.component_has_positive(k, i)) continue;
            PartialSums s = partial_sums_component(model, k, i);
            double ratio = s.up > 0.0 ? s.down / s.up : kInf;
            sup[i] = std::min(sup[i], ratio);
        }
    return sup;
}

double drift_margin(const RandomWalkModel& model, const std::vector<double>& r) {
    double margin = kInf;
    for (int k = 0; k < model.num_components(); ++k)
        for (int i = 0; i < model.dim(); ++i) {
            if (!model.component_has_positive(k, i)) continue;
            PartialSums s = partial_sums_component(model, k, i);
            margin = std::min(margin, s.up * (1.0 - r[i]) + s.down * (1.0 - 1.0 / r[i]));
        }
    return margin;
}

GeometricLyapunov build_geometric_lyapunov(const RandomWalkModel& model, const PiecewiseFn& F,
                                           const std::vector<double>& r, double eps) {
    DriftReport drift = has_negative_drift(model);
    if (!drift.negative) throw std::invalid_argument("model does not have negative drift");
    if (F.degree != 1) throw std::invalid_argument("reward must be C-linear");
    const int dim = model.dim();
    std::vector<double> sup = ratio_range(model);
    for (int i = 0; i < dim; ++i)
        if (!(r[i] > 1.0) || !(r[i] < sup[i]))
            throw std::invalid_argument("ratio r[" + std::to_string(i) +
                                        "] outside the admissible range");

    GeometricLyapunov lyap;
    lyap.r = r;
    lyap.eps_margin = drift_margin(model, r);
    if (!(eps > 0.0) || !(eps < lyap.eps_margin))
        throw std::invalid_argument("eps outside (0, margin)");
    lyap.eps = eps;

    lyap.v0 = 1.0;
    for (int k = 0; k < model.num_components(); ++k) lyap.v0 = std::max(lyap.v0, F.h0[k]);

    lyap.v.assign(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        double fi = 1.0;
        for (int k = 0; k < model.num_components(); ++k) fi = std::max(fi, F.h[k][i]);
        const double lr = std::log(r[i]);
        double vi = fi / (lr * std::pow(r[i], lr));
        // the closed form dominates max_n f n / r^n only for r <= e; raise to
        // the exact integer maximum otherwise
        const double peak = 1.0 / lr;
        for (double x : {std::floor(peak), std::ceil(peak)})
            if (x >= 1.0) vi = std::max(vi, fi * x / std::pow(r[i], x) * (1.0 + 1e-12));
        lyap.v[i] = vi;
    }

    double b = eps * lyap.v0;
    for (int i = 0; i < dim; ++i) {
        double sup_up = 0.0;
        for (int k = 0; k < model.num_components(); ++k)
            sup_up = std::max(sup_up, partial_sums_component(model, k, i).up);
        b += lyap.v[i] * (sup_up * (r[i] - 1.0) + eps);
    }
    lyap.b = b;

    std::vector<int> lo(dim, 0), hi(dim, 0);
    for (int i = 0; i < dim; ++i) {
        double bound = (std::log(b / lyap.v[i]) - std::log(lyap.eps_margin - eps)) / std::log(r[i]);
        bound = std::max(bound, 1.0);
        if (bound > 5e7) throw std::invalid_argument("small set too large to enumerate");
        hi[i] = static_cast<int>(std::ceil(bound));
    }
    lyap.small_set = Box(lo, hi);
    if (lyap.small_set.cardinality() > 20'000'000)
        throw std::invalid_argument("small set too large to enumerate");
    return lyap;
}

GeometricLyapunov build_geometric_lyapunov(const RandomWalkModel& model, const PiecewiseFn& F) {
    std::vector<double> sup = ratio_range(model);
    std::vector<double> r(model.dim());
    for (int i = 0; i < model.dim(); ++i) {
        if (!std::isfinite(sup[i])) sup[i] = 4.0;  // no down-step pressure; any r works
        r[i] = std::sqrt(sup[i]);
    }
    double margin = drift_margin(model, r);
    return build_geometric_lyapunov(model, F, r, margin / 2.0);
}

double drift_inequality_check(const RandomWalkModel& model,
                              const std::function<double(const State&)>& V, double eps, double b,
                              const std::function<bool(const State&)>& in_B, const Box& box,
                              bool parallel) {
    std::vector<State> states;
    for_each_state(box, [&](const State& n) { states.push_back(n); });
    const int count = static_cast<int>(states.size());
    double worst = -kInf;
#pragma omp parallel for schedule(static) reduction(max : worst) if (parallel && count > 256)
    for (int idx = 0; idx < count; ++idx) {
        const State& n = states[idx];
        const int k = model.component_of(n);
        double slack = expected_change(model, k, V, n) + eps * V(n) - (in_B(n) ? b : 0.0);
        worst = std::max(worst, slack);
    }
    return worst;
}

MeynConstants meyn_constants(const RandomWalkModel& model, const GeometricLyapunov& lyap,
                             double rho_fraction) {
    if (!(rho_fraction > 0.0) || !(rho_fraction < 1.0))
        throw std::invalid_argument("rho fraction must lie in (0,1)");
    MeynConstants c;
    c.rho_fraction = rho_fraction;

    // delta = min over the small set of the probability of staying in it
    double delta = kInf;
    for_each_state(lyap.small_set, [&](const State& n) {
        const Component& comp = model.component(model.component_of(n));
        double stay = 0.0;
        for (size_t s = 0; s < comp.steps.size(); ++s)
            if (comp.probs[s] > 0.0 && lyap.small_set.contains(add(n, comp.steps[s])))
                stay += comp.probs[s];
        delta = std::min(delta, stay);
    });
    if (!(delta > 0.0)) throw std::invalid_argument("small set has escaping states (delta = 0)");
    c.delta = delta;

    const double eps = lyap.eps;
    const double b = lyap.b;
    const int dim = model.dim();
    c.v_B = lyap.v0 + dim * b / (lyap.eps_margin - eps);
    double vmax = 0.0;
    for_each_state(lyap.small_set, [&](const State& n) { vmax = std::max(vmax, lyap.value(n)); });
    c.v_B_max = vmax;

    c.eta = std::pow(delta, -5.0) * (4.0 - delta * delta) / (eps * eps) * b * b;
    c.gamma = (4.0 * b + 2.0 * delta * (1.0 - eps) * c.v_B) / (delta * delta);
    c.lambda = (1.0 - eps + c.gamma) / (1.0 + c.gamma);
    c.b_hat = c.v_B + c.gamma;
    const double one_minus_lambda = eps / (1.0 + c.gamma);  // 1 - lambda, cancellation-free
    c.M_B = (1.0 / (one_minus_lambda * one_minus_lambda)) *
            (one_minus_lambda + c.b_hat + c.b_hat * c.b_hat +
             c.eta * (c.b_hat * one_minus_lambda + c.b_hat * c.b_hat));
    c.theta_complement = 1.0 / c.M_B;

    // rho = theta + t (1-theta):  1-rho = (1-t)/M_B,  rho-theta = t/M_B
    const double t = rho_fraction;
    const double rho = 1.0 - (1.0 - t) * c.theta_complement;
    c.prefactor = (1.0 + c.gamma) * rho * c.M_B * c.M_B / ((1.0 - t) * t);
    return c;
}

double geometric_bias_bound(const MeynConstants& consts, const GeometricLyapunov& lyap,
                            const State& n, const Step& u) {
    return consts.prefactor * (lyap.value(n) + lyap.value(add(n, u)));
}

double QuadraticLyapunov::value(const State& n) const {
    double val = 0.0;
    for (size_t i = 0; i < v.size(); ++i) val += v[i] * static_cast<double>(n[i]) * n[i];
    return val;
}

QuadraticLyapunov build_quadratic_lyapunov(const RandomWalkModel& model, const PiecewiseFn& F) {
    DriftReport drift = has_negative_drift(model);
    if (!drift.negative) throw std::invalid_argument("model does not have negative drift");
    if (F.degree != 1) throw std::invalid_argument("reward must be C-linear");
    const int dim = model.dim();

    QuadraticLyapunov q;
    double f0 = 0.0;
    std::vector<double> fi(dim, 0.0);
    for (int k = 0; k < model.num_components(); ++k) {
        f0 = std::max(f0, F.h0[k]);
        for (int i = 0; i < dim; ++i) fi[i] = std::max(fi[i], F.h[k][i]);
    }
    q.mu0 = std::max(1.0, f0);
    q.mu.assign(dim, 0.0);
    for (int i = 0; i < dim; ++i) q.mu[i] = std::max(fi[i], 0.0);

    q.f_star = q.mu0;
    for (int i = 0; i < dim; ++i) q.f_star = std::max(q.f_star, q.mu[i]);

    q.v.assign(dim, 0.0);
    for (int i = 0; i < dim; ++i) q.v[i] = -q.f_star / drift.supremum[i];

    double b = q.mu0;
    for (double vi : q.v) b += vi;
    q.b = b;

    std::vector<int> lo(dim, 0), hi(dim, 0);
    for (int i = 0; i < dim; ++i) hi[i] = static_cast<int>(std::floor(b / q.f_star));
    q.small_set = Box(lo, hi);
    return q;
}

double mu_drift_check(const RandomWalkModel& model, const QuadraticLyapunov& qlyap,
                      const PiecewiseFn& mu_fn, const Box& box, bool parallel) {
    std::vector<State> states;
    for_each_state(box, [&](const State& n) { states.push_back(n); });
    const int count = static_cast<int>(states.size());
    double worst = -kInf;
#pragma omp parallel for schedule(static) reduction(max : worst) if (parallel && count > 256)
    for (int idx = 0; idx < count; ++idx) {
        const State& n = states[idx];
        const int k = model.component_of(n);
        double slack = expected_change(model, k, [&](const State& m) { return qlyap.value(m); }, n);
        slack += mu_fn.eval_on(k, n);
        if (qlyap.small_set.contains(n)) slack -= qlyap.b;
        worst = std::max(worst, slack);
    }
    return worst;
}

double sup_ratio_to(const RandomWalkModel& model, const PiecewiseFn& F,
                    const std::function<double(const State&)>& V, const Box& box) {
    double worst = -kInf;
    for_each_state(box, [&](const State& n) {
        worst = std::max(worst, F.eval_on(model.component_of(n), n) / V(n));
    });
    return worst;
}

}  // namespace orthant
