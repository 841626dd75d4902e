#include "orthant/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace orthant {

namespace {

using nlohmann::json;

Box parse_box(const json& j, int dim) {
    std::vector<int> lo(dim), hi(dim);
    const auto& jlo = j.at("lo");
    const auto& jhi = j.at("hi");
    for (int i = 0; i < dim; ++i) {
        lo[i] = jlo.at(i).get<int>();
        hi[i] = jhi.at(i).is_null() ? kUnbounded : jhi.at(i).get<int>();
    }
    return Box(lo, hi);
}

Step parse_step(const json& j, int dim) {
    Step u(dim);
    for (int i = 0; i < dim; ++i) u[i] = j.at(i).get<int>();
    return u;
}

CtmcSpec parse_ctmc(const json& doc, int dim, const json* override_components) {
    CtmcSpec spec;
    spec.dimension = dim;
    spec.uniformization_constant = doc.value("uniformization_constant", 1.0);
    std::map<std::string, json> overrides;
    if (override_components)
        for (const auto& oc : *override_components) overrides[oc.at("name")] = oc;
    for (const auto& jc : doc.at("components")) {
        CtmcSpec::RateComponent rc;
        rc.name = jc.at("name").get<std::string>();
        for (const auto& jb : jc.at("boxes")) rc.region.push_back(parse_box(jb, dim));
        const json& rates = overrides.count(rc.name) && overrides[rc.name].contains("rates")
                                ? overrides[rc.name].at("rates")
                                : jc.at("rates");
        for (const auto& jr : rates)
            rc.rates.emplace_back(parse_step(jr.at("step"), dim), jr.at("value").get<double>());
        spec.components.push_back(std::move(rc));
    }
    return spec;
}

PiecewiseFn parse_reward(const json& doc, const RandomWalkModel& model) {
    const json& jr = doc.at("reward");
    const int dim = model.dim();
    PiecewiseFn fn = PiecewiseFn::zero(model.num_components(), dim, jr.value("degree", 1));
    auto apply = [&](int k, const json& spec) {
        fn.h0[k] = spec.value("constant", 0.0);
        if (spec.contains("linear"))
            for (int i = 0; i < dim; ++i) fn.h[k][i] = spec.at("linear").at(i).get<double>();
        if (spec.contains("quadratic"))
            for (int i = 0; i < dim; ++i) fn.eta[k][i] = spec.at("quadratic").at(i).get<double>();
    };
    if (jr.contains("default"))
        for (int k = 0; k < model.num_components(); ++k) apply(k, jr.at("default"));
    if (jr.contains("components"))
        for (int k = 0; k < model.num_components(); ++k) {
            const std::string& name = model.component(k).name;
            if (jr.at("components").contains(name)) apply(k, jr.at("components").at(name));
        }
    return fn;
}

ProductFormDistribution parse_stationary(const json& doc, int dim) {
    std::vector<ProductFormDistribution::Term> terms;
    for (const auto& jt : doc.at("stationary").at("mixture")) {
        ProductFormDistribution::Term t;
        t.weight = jt.value("weight", 1.0);
        for (int i = 0; i < dim; ++i) t.ratios.push_back(jt.at("ratios").at(i).get<double>());
        terms.push_back(std::move(t));
    }
    return ProductFormDistribution(std::move(terms));
}

}  // namespace

ModelConfig parse_model_config(const std::string& json_text) {
    json doc = json::parse(json_text);
    const int dim = doc.at("dimension").get<int>();
    const std::string type = doc.value("type", "ctmc");

    RandomWalkModel model = [&] {
        if (type == "ctmc") return uniformize(parse_ctmc(doc, dim, nullptr));
        throw std::invalid_argument("unsupported model type: " + type);
    }();
    const json* pert =
        doc.contains("perturbed") && doc.at("perturbed").contains("components")
            ? &doc.at("perturbed").at("components")
            : nullptr;
    RandomWalkModel perturbed = uniformize(parse_ctmc(doc, dim, pert));

    ModelConfig cfg{doc.value("name", "model"), std::move(model), std::move(perturbed),
                    PiecewiseFn{}, ProductFormDistribution{}};
    cfg.reward = parse_reward(doc, cfg.model);
    cfg.stationary = parse_stationary(doc, dim);
    return cfg;
}

ModelConfig load_model_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model_config(ss.str());
}

ModelConfig make_tandem2(double lambda, double mu1, double mu1_star, double mu2) {
    if (lambda + std::max(mu1, mu1_star) + mu2 > 1.0 + 1e-12)
        throw std::invalid_argument("rates exceed the uniformization constant 1");
    const int dim = 2;
    const int inf = kUnbounded;
    CtmcSpec spec;
    spec.dimension = dim;
    spec.uniformization_constant = 1.0;

    const Step arrive{1, 0}, serve1{-1, 1}, serve2{0, -1};
    auto comp = [&](const std::string& name, Box box,
                    std::vector<std::pair<Step, double>> rates) {
        CtmcSpec::RateComponent rc;
        rc.name = name;
        rc.region = {std::move(box)};
        rc.rates = std::move(rates);
        spec.components.push_back(std::move(rc));
    };
    comp("origin", Box({0, 0}, {0, 0}), {{arrive, lambda}});
    comp("axis1", Box({1, 0}, {inf, 0}), {{arrive, lambda}, {serve1, mu1_star}});
    comp("axis2", Box({0, 1}, {0, inf}), {{arrive, lambda}, {serve2, mu2}});
    comp("interior", Box({1, 1}, {inf, inf}),
         {{arrive, lambda}, {serve1, mu1}, {serve2, mu2}});

    CtmcSpec pert = spec;
    pert.components[1].rates = {{arrive, lambda}, {serve1, mu1}};

    ModelConfig cfg{"tandem2", uniformize(spec), uniformize(pert), PiecewiseFn{},
                    ProductFormDistribution{}};
    cfg.reward = PiecewiseFn::coordinate(cfg.model.num_components(), dim, 0);
    cfg.stationary =
        ProductFormDistribution({{1.0, {lambda / mu1, lambda / mu2}}});
    return cfg;
}

ModelConfig make_tandem3(double lambda, double mu, double mu_star) {
    if (lambda + std::max(mu, mu_star) + 2.0 * mu > 1.0 + 1e-12)
        throw std::invalid_argument("rates exceed the uniformization constant 1");
    const int dim = 3;
    const int inf = kUnbounded;
    const Step e1{1, 0, 0}, d1{-1, 1, 0}, d2{0, -1, 1}, e3{0, 0, -1};

    CtmcSpec spec;
    spec.dimension = dim;
    spec.uniformization_constant = 1.0;
    // components by the sign pattern of (n1, n2, n3)
    for (int mask = 0; mask < 8; ++mask) {
        const bool p1 = mask & 1, p2 = mask & 2, p3 = mask & 4;
        CtmcSpec::RateComponent rc;
        std::vector<int> lo(dim), hi(dim);
        lo = {p1 ? 1 : 0, p2 ? 1 : 0, p3 ? 1 : 0};
        hi = {p1 ? inf : 0, p2 ? inf : 0, p3 ? inf : 0};
        rc.name = std::string(p1 ? "+" : "0") + (p2 ? "+" : "0") + (p3 ? "+" : "0");
        rc.region = {Box(lo, hi)};
        rc.rates.emplace_back(e1, lambda);
        if (p1) rc.rates.emplace_back(d1, (!p2 && !p3) ? mu_star : mu);
        if (p2) rc.rates.emplace_back(d2, mu);
        if (p3) rc.rates.emplace_back(e3, mu);
        spec.components.push_back(std::move(rc));
    }

    CtmcSpec pert = spec;
    for (auto& rc : pert.components)
        for (auto& [step, rate] : rc.rates)
            if (step == d1) rate = mu;

    ModelConfig cfg{"tandem3", uniformize(spec), uniformize(pert), PiecewiseFn{},
                    ProductFormDistribution{}};
    cfg.reward = PiecewiseFn::coordinate(cfg.model.num_components(), dim, 0);
    const double rho = lambda / mu;
    cfg.stationary = ProductFormDistribution({{1.0, {rho, rho, rho}}});
    return cfg;
}

}  // namespace orthant
