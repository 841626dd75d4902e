#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "orthant/oracle.hpp"
#include "orthant/sweep.hpp"

using namespace orthant;

namespace {

int cmd_check_drift(const std::string& config_path) {
    ModelConfig cfg = load_model_config(config_path);
    DriftReport rep = has_negative_drift(cfg.model);
    std::printf("model: %s\n", cfg.name.c_str());
    std::printf("negative drift: %s\n", rep.negative ? "yes" : "no");
    for (size_t i = 0; i < rep.supremum.size(); ++i)
        std::printf("  dim %zu: sup(s+ - s-) = %.12g\n", i + 1, rep.supremum[i]);
    return 0;
}

int cmd_geo_bound(const std::string& config_path, double eps_frac, double rho_frac, int box) {
    ModelConfig cfg = load_model_config(config_path);
    GeometricLyapunov lyap = [&] {
        if (eps_frac <= 0.0) return build_geometric_lyapunov(cfg.model, cfg.reward);
        std::vector<double> sup = ratio_range(cfg.model);
        std::vector<double> r(cfg.model.dim());
        for (int i = 0; i < cfg.model.dim(); ++i)
            r[i] = std::sqrt(std::isfinite(sup[i]) ? sup[i] : 4.0);
        return build_geometric_lyapunov(cfg.model, cfg.reward, r,
                                        eps_frac * drift_margin(cfg.model, r));
    }();
    MeynConstants consts = meyn_constants(cfg.model, lyap, rho_frac);

    std::printf("model: %s\n", cfg.name.c_str());
    std::printf("ratios r:");
    for (double ri : lyap.r) std::printf(" %.6g", ri);
    std::printf("\neps = %.6g (margin %.6g), b = %.6g\n", lyap.eps, lyap.eps_margin, lyap.b);
    std::printf("small set: up to (");
    for (int i = 0; i < cfg.model.dim(); ++i)
        std::printf("%s%d", i ? "," : "", lyap.small_set.hi[i]);
    std::printf(")\n");
    std::printf("delta = %.6g, gamma = %.6g, M_B = %.6g\n", consts.delta, consts.gamma, consts.M_B);
    std::printf("prefactor = %.6g\n", consts.prefactor);

    Box verify(std::vector<int>(cfg.model.dim(), 0), std::vector<int>(cfg.model.dim(), box));
    double slack = drift_inequality_check(
        cfg.model, [&](const State& n) { return lyap.value(n); }, lyap.eps, lyap.b,
        [&](const State& n) { return lyap.in_small_set(n); }, verify);
    std::printf("drift inequality slack on %d-box: %.3e (valid iff <= 0)\n", box, slack);
    std::printf("sample bound at origin, step e1: %.6g\n",
                geometric_bias_bound(consts, lyap, State(cfg.model.dim(), 0),
                                     [&] {
                                         Step u(cfg.model.dim(), 0);
                                         u[0] = 1;
                                         return u;
                                     }()));
    return 0;
}

int cmd_lp_bound(const std::string& config_path, int degree, const std::string& side,
                 const std::string& out, const std::string& mps) {
    ModelConfig cfg = load_model_config(config_path);
    BiasLpContext ctx(cfg.model, cfg.perturbed, cfg.stationary, cfg.reward);
    BiasLpOptions opts;
    opts.degree = degree;

    std::vector<std::pair<std::string, BoundReport>> reports;
    if (side == "upper" || side == "both")
        reports.emplace_back("upper", lp_bound(ctx, Side::Upper, opts));
    if (side == "lower" || side == "both")
        reports.emplace_back("lower", lp_bound(ctx, Side::Lower, opts));
    if (reports.empty()) {
        std::fprintf(stderr, "unknown side: %s\n", side.c_str());
        return 2;
    }

    for (auto& [name, rep] : reports) {
        std::printf("%s (degree %d): %s", name.c_str(), degree, rep.status_name().c_str());
        if (rep.optimal())
            std::printf(", bound = %.12g, certificate slack = %.3e", rep.bound,
                        rep.certificate_min_slack);
        std::printf("  [rows %d, cols %d, iters %d]\n", rep.lp_rows, rep.lp_cols,
                    rep.lp_iterations);
    }
    if (!out.empty()) {
        std::ofstream os(out);
        os << "[";
        for (size_t i = 0; i < reports.size(); ++i)
            os << (i ? ",\n" : "\n") << reports[i].second.to_json();
        os << "\n]\n";
        std::printf("report written to %s\n", out.c_str());
    }
    if (!mps.empty()) {
        AssembledLp assembled =
            side == "lower" ? assemble_lower_lp(ctx, degree) : assemble_upper_lp(ctx, degree);
        std::ofstream os(mps);
        write_mps(assembled.spec, os, cfg.name);
        std::printf("LP written to %s\n", mps.c_str());
    }
    return 0;
}

int cmd_compare(const std::string& config_path, const std::string& out) {
    ModelConfig cfg = load_model_config(config_path);
    BiasLpContext ctx(cfg.model, cfg.perturbed, cfg.stationary, cfg.reward);
    BoundReport up = comparison_bound(ctx, Side::Upper);
    BoundReport lo = comparison_bound(ctx, Side::Lower);
    std::printf("comparison upper: %s", up.status_name().c_str());
    if (up.optimal()) std::printf(", F <= %.12g", up.bound);
    std::printf("\ncomparison lower: %s", lo.status_name().c_str());
    if (lo.optimal()) std::printf(", F >= %.12g", lo.bound);
    std::printf("\n");
    if (!out.empty()) {
        std::ofstream os(out);
        os << "[\n" << up.to_json() << ",\n" << lo.to_json() << "\n]\n";
    }
    return 0;
}

int cmd_oracle(const std::string& config_path, int truncation, int tmax, bool perturbed,
               bool tv_check) {
    ModelConfig cfg = load_model_config(config_path);
    const RandomWalkModel& walk = perturbed ? cfg.perturbed : cfg.model;
    const int T = truncation > 0 ? truncation : (walk.dim() >= 3 ? 25 : 60);

    TruncatedChain chain(walk, T);
    StationaryResult st = stationary_truncated(chain, cfg.reward);
    std::printf("truncation T = %d (%d states), residual %.3e\n", T, chain.num_states(),
                st.residual);
    std::printf("F estimate: %.12g\n", st.value);

    RobustnessReport rob = truncation_robustness(walk, cfg.reward, T);
    std::printf("T vs T+10: %.12g vs %.12g (delta %.3e)\n", rob.value_T, rob.value_T_plus,
                rob.delta);
    if (rob.delta > 1e-4)
        std::printf("warning: estimates did not settle across truncations\n");

    if (tv_check) {
        double tv = 0.0;
        for (int idx = 0; idx < chain.num_states(); ++idx)
            tv += std::abs(st.pi[idx] - cfg.stationary.density(chain.state(idx)));
        std::printf("total variation vs closed-form mixture: %.3e\n", tv);
    }
    (void)tmax;
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override, int truncation,
              int tmax) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    if (truncation > 0) cfg.truncation = truncation;
    if (tmax > 0) cfg.tmax = tmax;
    const std::string out = out_override.empty() ? cfg.out : out_override;
    if (out.empty()) {
        run_experiment(cfg, std::cout);
        return 0;
    }
    std::ofstream os(out);
    if (!os) {
        std::fprintf(stderr, "cannot open output file %s\n", out.c_str());
        return 2;
    }
    run_experiment(cfg, os);
    std::printf("sweep written to %s\n", out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified stationary-performance bounds for nearest-neighbor random walks "
                 "on the positive orthant"};
    app.require_subcommand(1);

    std::string config, out, mps, side = "both";
    int degree = 2, truncation = 0, tmax = 200, box = 40;
    double eps_frac = 0.0, rho_frac = 0.5;
    bool perturbed = false, tv_check = false;

    auto* drift = app.add_subcommand("check-drift", "negative-drift diagnostic");
    drift->add_option("--config", config)->required();

    auto* geo = app.add_subcommand("geo-bound", "explicit geometric bias-term bound");
    geo->add_option("--config", config)->required();
    geo->add_option("--eps-frac", eps_frac, "eps as a fraction of the drift margin");
    geo->add_option("--rho-frac", rho_frac, "rho placement inside (theta, 1)");
    geo->add_option("--box", box, "drift verification box edge");

    auto* lp = app.add_subcommand("lp-bound", "restricted LP bounds");
    lp->add_option("--config", config)->required();
    lp->add_option("--degree", degree)->check(CLI::IsMember({1, 2}));
    lp->add_option("--side", side)->check(CLI::IsMember({"upper", "lower", "both"}));
    lp->add_option("--out", out, "write the bound report (JSON)");
    lp->add_option("--export-mps", mps, "write the assembled LP in MPS format");

    auto* cmp = app.add_subcommand("compare", "one-sided comparison certificates");
    cmp->add_option("--config", config)->required();
    cmp->add_option("--out", out);

    auto* orc = app.add_subcommand("oracle", "truncated-chain ground truth");
    orc->add_option("--config", config)->required();
    orc->add_option("--truncation", truncation);
    orc->add_option("--tmax", tmax);
    orc->add_flag("--perturbed", perturbed, "analyze the perturbed walk");
    orc->add_flag("--tv-check", tv_check, "compare against the closed-form mixture");

    auto* sw = app.add_subcommand("sweep", "parameter sweeps producing CSV");
    sw->add_option("--config", config)->required();
    sw->add_option("--out", out, "override the config's output path");
    sw->add_option("--truncation", truncation);
    sw->add_option("--tmax", tmax);

    CLI11_PARSE(app, argc, argv);

    try {
        if (drift->parsed()) return cmd_check_drift(config);
        if (geo->parsed()) return cmd_geo_bound(config, eps_frac, rho_frac, box);
        if (lp->parsed()) return cmd_lp_bound(config, degree, side, out, mps);
        if (cmp->parsed()) return cmd_compare(config, out);
        if (orc->parsed()) return cmd_oracle(config, truncation, tmax, perturbed, tv_check);
        if (sw->parsed()) return cmd_sweep(config, out, truncation, tmax);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
