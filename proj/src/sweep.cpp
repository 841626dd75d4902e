#include "orthant/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "orthant/oracle.hpp"

namespace orthant {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointResult {
    double x = 0.0;
    double q_lower = kNaN, q_upper = kNaN;
    double comp = kNaN;
    std::string comp_side;
    double lin_lower = kNaN, lin_upper = kNaN;
    double oracle = kNaN;
    std::string st_q_lower = "skipped", st_q_upper = "skipped";
    std::string st_comp = "skipped";
    std::string st_lin_lower = "skipped", st_lin_upper = "skipped";
    std::string validated = "unvalidated";
    std::string error;
};

void run_point(const ModelConfig& mc, const ExperimentConfig& cfg, bool comparison_upper,
               int truncation, PointResult& row) {
    try {
        BiasLpContext ctx(mc.model, mc.perturbed, mc.stationary, mc.reward);
        BiasLpOptions opts;

        BoundReport q_lo, q_up;
        if (cfg.methods.count("lp-quadratic")) {
            opts.degree = 2;
            q_lo = lp_bound(ctx, Side::Lower, opts);
            q_up = lp_bound(ctx, Side::Upper, opts);
            row.st_q_lower = q_lo.status_name();
            row.st_q_upper = q_up.status_name();
            if (q_lo.optimal()) row.q_lower = q_lo.bound;
            if (q_up.optimal()) row.q_upper = q_up.bound;
        }
        if (cfg.methods.count("lp-linear")) {
            opts.degree = 1;
            BoundReport lo = lp_bound(ctx, Side::Lower, opts);
            BoundReport up = lp_bound(ctx, Side::Upper, opts);
            row.st_lin_lower = lo.status_name();
            row.st_lin_upper = up.status_name();
            if (lo.optimal()) row.lin_lower = lo.bound;
            if (up.optimal()) row.lin_upper = up.bound;
        }
        if (cfg.methods.count("comparison")) {
            BiasLpOptions copts;
            BoundReport c = comparison_bound(ctx, comparison_upper ? Side::Upper : Side::Lower,
                                             copts);
            row.st_comp = c.status_name();
            row.comp_side = comparison_upper ? "upper" : "lower";
            if (c.optimal()) row.comp = c.bound;
        }
        if (cfg.methods.count("oracle")) {
            TruncatedChain chain(mc.model, truncation);
            StationaryResult st = stationary_truncated(chain, mc.reward);
            row.oracle = st.value;
            if (cfg.methods.count("lp-quadratic") && q_lo.optimal() && q_up.optimal()) {
                ValidationVerdict v =
                    validate_bounds(q_up, chain, mc.reward, std::min(cfg.tmax, 50), &q_lo);
                row.validated = v.all_pass() ? "yes" : "FAIL";
            }
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
}

void write_tandem_csv(std::ostream& csv, const std::string& xname,
                      const std::vector<PointResult>& rows, bool with_comparison) {
    csv << "# orthant-bounds sweep; empty cells = bound unavailable (see status columns)\n";
    csv << xname << ",f_q_lower,f_q_upper";
    if (with_comparison) csv << ",f_comp,comp_side";
    csv << ",f_lin_lower,f_lin_upper,f_oracle";
    csv << ",status_q_lower,status_q_upper";
    if (with_comparison) csv << ",status_comp";
    csv << ",status_lin_lower,status_lin_upper,validated,error\n";
    for (const PointResult& r : rows) {
        csv << fmt(r.x) << "," << fmt(r.q_lower) << "," << fmt(r.q_upper);
        if (with_comparison) csv << "," << fmt(r.comp) << "," << r.comp_side;
        csv << "," << fmt(r.lin_lower) << "," << fmt(r.lin_upper) << "," << fmt(r.oracle);
        csv << "," << r.st_q_lower << "," << r.st_q_upper;
        if (with_comparison) csv << "," << r.st_comp;
        csv << "," << r.st_lin_lower << "," << r.st_lin_upper << "," << r.validated << ","
            << r.error << "\n";
    }
}

void run_tandem2_load(const ExperimentConfig& cfg, std::ostream& csv) {
    const int truncation = cfg.truncation > 0 ? cfg.truncation : 60;
    std::vector<PointResult> rows(cfg.grid.size());
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < static_cast<int>(cfg.grid.size()); ++p) {
        const double x = cfg.grid[p];
        rows[p].x = x;
        try {
            ModelConfig mc = make_tandem2(x * cfg.mu1, cfg.mu1, cfg.eta * cfg.mu1,
                                          cfg.mu2_factor * cfg.mu1);
            run_point(mc, cfg, cfg.eta >= 1.0, truncation, rows[p]);
        } catch (const std::exception& e) {
            rows[p].error = e.what();
        }
    }
    write_tandem_csv(csv, "load", rows, true);
}

void run_tandem2_eta(const ExperimentConfig& cfg, std::ostream& csv) {
    const int truncation = cfg.truncation > 0 ? cfg.truncation : 60;
    std::vector<PointResult> rows(cfg.grid.size());
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < static_cast<int>(cfg.grid.size()); ++p) {
        const double eta = cfg.grid[p];
        rows[p].x = eta;
        try {
            ModelConfig mc = make_tandem2(cfg.load * cfg.mu1, cfg.mu1, eta * cfg.mu1,
                                          cfg.mu2_factor * cfg.mu1);
            run_point(mc, cfg, eta >= 1.0, truncation, rows[p]);
        } catch (const std::exception& e) {
            rows[p].error = e.what();
        }
    }
    write_tandem_csv(csv, "eta", rows, true);
}

void run_tandem3_load(const ExperimentConfig& cfg, std::ostream& csv) {
    const int truncation = cfg.truncation > 0 ? cfg.truncation : 25;
    std::vector<PointResult> rows(cfg.grid.size());
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < static_cast<int>(cfg.grid.size()); ++p) {
        const double x = cfg.grid[p];
        rows[p].x = x;
        try {
            ModelConfig mc = make_tandem3(x * cfg.mu, cfg.mu, cfg.eta_star * cfg.mu);
            run_point(mc, cfg, cfg.eta_star >= 1.0, truncation, rows[p]);
        } catch (const std::exception& e) {
            rows[p].error = e.what();
        }
    }
    write_tandem_csv(csv, "load", rows, false);
}

}  // namespace

GeoConstantsReport geo_constants_sweep(const ModelConfig& cfg, int grid_r, int grid_eps,
                                       int grid_rho, std::ostream* csv) {
    const RandomWalkModel& model = cfg.model;
    const int dim = model.dim();
    if (dim != 2) throw std::invalid_argument("geo-constants sweep expects a 2-D model");
    std::vector<double> sup = ratio_range(model);

    struct Point {
        double r1, r2, eps_frac, rho_frac, prefactor;
    };
    std::vector<Point> points;
    for (int a = 1; a <= grid_r; ++a)
        for (int b = 1; b <= grid_r; ++b)
            for (int e = 1; e <= grid_eps; ++e)
                for (int t = 1; t <= grid_rho; ++t)
                    points.push_back({1.0 + (sup[0] - 1.0) * a / (grid_r + 1),
                                      1.0 + (sup[1] - 1.0) * b / (grid_r + 1),
                                      static_cast<double>(e) / (grid_eps + 1),
                                      static_cast<double>(t) / (grid_rho + 1), kNaN});

    const int count = static_cast<int>(points.size());
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < count; ++p) {
        Point& pt = points[p];
        try {
            std::vector<double> r{pt.r1, pt.r2};
            const double margin = drift_margin(model, r);
            GeometricLyapunov lyap =
                build_geometric_lyapunov(model, cfg.reward, r, pt.eps_frac * margin);
            MeynConstants consts = meyn_constants(model, lyap, pt.rho_frac);
            pt.prefactor = consts.prefactor;
        } catch (const std::exception&) {
            pt.prefactor = kNaN;  // point outside admissible ranges
        }
    }

    GeoConstantsReport rep;
    rep.grid_points = count;
    rep.min_prefactor = std::numeric_limits<double>::infinity();
    for (const Point& pt : points)
        if (!std::isnan(pt.prefactor) && pt.prefactor < rep.min_prefactor) {
            rep.min_prefactor = pt.prefactor;
            rep.r1 = pt.r1;
            rep.r2 = pt.r2;
            rep.eps_fraction = pt.eps_frac;
            rep.rho_fraction = pt.rho_frac;
        }

    // error bound sum pi G at the minimizing point, with Fbar = F and
    // G(n) = sum_u |dp| prefactor (V(n) + V(n+u))
    {
        std::vector<double> r{rep.r1, rep.r2};
        const double margin = drift_margin(model, r);
        GeometricLyapunov lyap =
            build_geometric_lyapunov(model, cfg.reward, r, rep.eps_fraction * margin);
        double total = 0.0;
        for (int k = 0; k < model.num_components(); ++k) {
            const Component& orig = model.component(k);
            const Component& pert = cfg.perturbed.component(k);
            for (size_t s = 0; s < orig.steps.size(); ++s) {
                const double dp = std::abs(pert.probs[s] - orig.probs[s]);
                if (dp == 0.0 || is_zero(orig.steps[s])) continue;
                const Step& u = orig.steps[s];
                for (const Box& box : orig.region) {
                    // V(n) + V(n+u) = 2 v0 + sum_i v_i (1 + r_i^{u_i}) r_i^{n_i}
                    double acc = 2.0 * lyap.v0 * scaled_mass(cfg.stationary, box, {1.0, 1.0});
                    for (int i = 0; i < dim; ++i) {
                        std::vector<double> scale(dim, 1.0);
                        scale[i] = lyap.r[i];
                        acc += lyap.v[i] * (1.0 + std::pow(lyap.r[i], u[i])) *
                               scaled_mass(cfg.stationary, box, scale);
                    }
                    total += dp * acc;
                }
            }
        }
        rep.error_bound = rep.min_prefactor * total;
    }

    if (csv) {
        *csv << "# geometric-constants grid sweep\n";
        *csv << "r1,r2,eps_fraction,rho_fraction,prefactor\n";
        for (const Point& pt : points)
            *csv << fmt(pt.r1) << "," << fmt(pt.r2) << "," << fmt(pt.eps_frac) << ","
                 << fmt(pt.rho_frac) << "," << fmt(pt.prefactor) << "\n";
        *csv << "# min_prefactor," << fmt(rep.min_prefactor) << "\n";
        *csv << "# error_bound," << fmt(rep.error_bound) << "\n";
    }
    return rep;
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json doc = json::parse(json_text);
    ExperimentConfig cfg;
    cfg.kind = doc.at("experiment").get<std::string>();
    if (doc.contains("grid"))
        for (const auto& v : doc.at("grid")) cfg.grid.push_back(v.get<double>());
    if (doc.contains("methods")) {
        cfg.methods.clear();
        for (const auto& m : doc.at("methods")) cfg.methods.insert(m.get<std::string>());
    }
    const std::set<std::string> known{"lp-quadratic", "lp-linear", "comparison", "oracle",
                                      "geometric"};
    for (const auto& m : cfg.methods)
        if (!known.count(m)) throw std::invalid_argument("unknown method: " + m);
    cfg.mu1 = doc.value("mu1", cfg.mu1);
    cfg.eta = doc.value("eta", cfg.eta);
    cfg.mu2_factor = doc.value("mu2_factor", cfg.mu2_factor);
    cfg.load = doc.value("load", cfg.load);
    cfg.mu = doc.value("mu", cfg.mu);
    cfg.eta_star = doc.value("eta_star", cfg.eta_star);
    cfg.truncation = doc.value("truncation", cfg.truncation);
    cfg.tmax = doc.value("tmax", cfg.tmax);
    cfg.out = doc.value("out", cfg.out);
    cfg.grid_r = doc.value("grid_r", cfg.grid_r);
    cfg.grid_eps = doc.value("grid_eps", cfg.grid_eps);
    cfg.grid_rho = doc.value("grid_rho", cfg.grid_rho);
    cfg.load_point = doc.value("load_point", cfg.load_point);
    if (cfg.grid.empty() && cfg.kind != "geo-constants")
        throw std::invalid_argument("sweep grid must be non-empty");
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open experiment config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_config(ss.str());
}

void run_experiment(const ExperimentConfig& cfg, std::ostream& csv) {
    if (cfg.kind == "tandem2-load") {
        run_tandem2_load(cfg, csv);
    } else if (cfg.kind == "tandem2-eta") {
        run_tandem2_eta(cfg, csv);
    } else if (cfg.kind == "tandem3-load") {
        run_tandem3_load(cfg, csv);
    } else if (cfg.kind == "geo-constants") {
        ModelConfig mc = make_tandem2(cfg.load_point * cfg.mu1, cfg.mu1, cfg.eta * cfg.mu1,
                                      cfg.mu2_factor * cfg.mu1);
        geo_constants_sweep(mc, cfg.grid_r, cfg.grid_eps, cfg.grid_rho, &csv);
    } else {
        throw std::invalid_argument("unknown experiment kind: " + cfg.kind);
    }
}

}  // namespace orthant
