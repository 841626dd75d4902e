#include "orthant/bias_lp.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace orthant {

namespace {

/// Affine expression in LP variables.
struct LinExpr {
    double constant = 0.0;
    std::map<int, double> terms;

    void add_var(int v, double c) {
        if (v < 0 || c == 0.0) return;
        terms[v] += c;
    }
    void add(const LinExpr& e, double s) {
        constant += s * e.constant;
        for (auto& [v, c] : e.terms) terms[v] += s * c;
    }
};

/// H(n) = c0 + sum_i lin_i n_i + quad_i n_i^2 on one refined piece, with every
/// coefficient affine in the LP variables.
struct CellQuad {
    LinExpr c0;
    std::vector<LinExpr> lin, quad;

    explicit CellQuad(int dim) : lin(dim), quad(dim) {}
    void add(const CellQuad& o, double s) {
        c0.add(o.c0, s);
        for (size_t i = 0; i < lin.size(); ++i) {
            lin[i].add(o.lin[i], s);
            quad[i].add(o.quad[i], s);
        }
    }
};

using FnVarIds = AssembledLp::EnvVars;

/// Variable-backed function evaluated at n+d, as a quadratic in n.
CellQuad at_shift(const FnVarIds& ids, const Offset& d, int dim) {
    CellQuad q(dim);
    q.c0.add_var(ids.c0, 1.0);
    for (int i = 0; i < dim; ++i) {
        const double di = d[i];
        if (i < static_cast<int>(ids.lin.size())) q.c0.add_var(ids.lin[i], di);
        if (i < static_cast<int>(ids.quad.size())) q.c0.add_var(ids.quad[i], di * di);
        if (i < static_cast<int>(ids.lin.size())) q.lin[i].add_var(ids.lin[i], 1.0);
        if (i < static_cast<int>(ids.quad.size())) q.lin[i].add_var(ids.quad[i], 2.0 * di);
        if (i < static_cast<int>(ids.quad.size())) q.quad[i].add_var(ids.quad[i], 1.0);
    }
    return q;
}

/// Parameter function (known coefficients on component c) evaluated at n+d.
CellQuad param_at_shift(const PiecewiseFn& fn, int c, const Offset& d, int dim) {
    CellQuad q(dim);
    q.c0.constant = fn.h0[c];
    for (int i = 0; i < dim; ++i) {
        const double di = d[i];
        const double eta = fn.eta.empty() ? 0.0 : fn.eta[c][i];
        q.c0.constant += fn.h[c][i] * di + eta * di * di;
        q.lin[i].constant = fn.h[c][i] + 2.0 * eta * di;
        q.quad[i].constant = eta;
    }
    return q;
}

void emit_le_zero(LinearProgramSpec& lp, const LinExpr& e, const std::string& name) {
    if (e.terms.empty()) {
        if (e.constant <= 0.0) return;  // trivially satisfied
        // constant violation: record an explicitly infeasible row
    }
    LinearProgramSpec::Constraint row;
    row.rel = LinearProgramSpec::Rel::LE;
    row.rhs = -e.constant;
    row.terms.assign(e.terms.begin(), e.terms.end());
    row.name = name;
    lp.add_constraint(std::move(row));
}

/// Sufficient rows for "H <= 0 everywhere on the piece": non-positive
/// curvature and non-increasing slope along every unbounded dimension, and a
/// non-positive corner value.
void emit_nonpositivity(LinearProgramSpec& lp, const RefinedComponent& piece, const CellQuad& H,
                        const std::string& tag) {
    for (int i : piece.unbounded) {
        emit_le_zero(lp, H.quad[i], tag + ".curv" + std::to_string(i));
        LinExpr slope;
        slope.add(H.quad[i], 2.0 * piece.box.lo[i]);
        slope.add(H.lin[i], 1.0);
        emit_le_zero(lp, slope, tag + ".mono" + std::to_string(i));
    }
    LinExpr corner;
    corner.add(H.c0, 1.0);
    for (int i = 0; i < piece.box.dim(); ++i) {
        const double L = piece.corner[i];
        corner.add(H.lin[i], L);
        corner.add(H.quad[i], L * L);
    }
    emit_le_zero(lp, corner, tag + ".corner");
}

FnVarIds make_fn_vars(LinearProgramSpec& lp, const std::string& base, int dim, int degree) {
    FnVarIds ids;
    ids.c0 = lp.add_variable(base + ".c0");
    ids.lin.resize(dim);
    for (int i = 0; i < dim; ++i) ids.lin[i] = lp.add_variable(base + ".n" + std::to_string(i));
    if (degree >= 2) {
        ids.quad.resize(dim);
        for (int i = 0; i < dim; ++i)
            ids.quad[i] = lp.add_variable(base + ".n" + std::to_string(i) + "^2");
    }
    return ids;
}

CellQuad negate(const CellQuad& q) {
    CellQuad out(static_cast<int>(q.lin.size()));
    out.add(q, -1.0);
    return out;
}

struct AssemblyKit {
    const BiasLpContext& ctx;
    AssembledLp& out;
    int degree;

    const RandomWalkModel& model() const { return ctx.model(); }
    int dim() const { return ctx.model().dim(); }

    std::map<std::pair<int, int64_t>, FnVarIds>& env(bool upper_env) {
        return upper_env ? out.env_B : out.env_A;
    }

    CellQuad env_at(bool upper_env, int comp, const Step& v, const Offset& d) {
        auto it = env(upper_env).find({comp, encode_offset(v)});
        if (it == env(upper_env).end())
            throw std::logic_error("missing envelope slot referenced by the coupling table");
        return at_shift(it->second, d, dim());
    }

    void make_core_variables();
    void emit_envelope_constraints();
    void emit_nonnegativity(bool with_g);
};

void AssemblyKit::make_core_variables() {
    const RandomWalkModel& m = model();
    LinearProgramSpec& lp = out.spec;
    out.degree = degree;
    out.fbar0.resize(m.num_components());
    out.fbar_lin.assign(m.num_components(), {});
    for (int k = 0; k < m.num_components(); ++k) {
        FnVarIds ids = make_fn_vars(lp, "Fbar[" + m.component(k).name + "]", dim(), 1);
        out.fbar0[k] = ids.c0;
        out.fbar_lin[k] = ids.lin;
    }
    for (int k = 0; k < m.num_components(); ++k) {
        const auto& slots = ctx.phi().slots[k];
        for (int64_t ukey : slots) {
            Step u = decode_offset(ukey, dim());
            std::string su = offset_name(u);
            out.env_A[{k, ukey}] =
                make_fn_vars(lp, "A[" + m.component(k).name + "]" + su, dim(), degree);
            out.env_B[{k, ukey}] =
                make_fn_vars(lp, "B[" + m.component(k).name + "]" + su, dim(), degree);
        }
    }
}

FnVarIds fbar_ids(const AssembledLp& a, int k) {
    FnVarIds ids;
    ids.c0 = a.fbar0[k];
    ids.lin = a.fbar_lin[k];
    return ids;
}

FnVarIds g_ids(const AssembledLp& a, int k) {
    FnVarIds ids;
    ids.c0 = a.g0[k];
    ids.lin = a.g_lin[k];
    if (!a.g_quad.empty()) ids.quad = a.g_quad[k];
    return ids;
}

// bias-propagation constraints: on every piece and admissible slot step u,
//   F(n+u) - F(n) + sum_arcs phi (B_v at n+d)  <=  B_u(n)
//   F(n) - F(n+u) + sum_arcs phi (A_v at n+d)  <=  A_u(n)
void AssemblyKit::emit_envelope_constraints() {
    const Refinement& ref = ctx.refinement();
    const PiecewiseFn& F = ctx.reward();
    const Offset zero(dim(), 0);
    for (int j = 0; j < ref.size(); ++j) {
        const RefinedComponent& piece = ref.piece(j);
        const int k = piece.c_index;
        for (int64_t ukey : ctx.phi().slots[k]) {
            const Step u = decode_offset(ukey, dim());
            const int cu = shift_component(ref, j, u);
            const auto& arcs = ctx.phi().table.get(j, u);
            std::string tag = "prop[" + std::to_string(j) + "]" + offset_name(u);

            CellQuad fdiff(dim());
            fdiff.add(param_at_shift(F, cu, u, dim()), 1.0);
            fdiff.add(param_at_shift(F, k, zero, dim()), -1.0);

            CellQuad upper = fdiff;
            for (const PhiArc& a : arcs)
                upper.add(env_at(true, shift_component(ref, j, a.d), a.v, a.d), a.weight);
            upper.add(env_at(true, k, u, zero), -1.0);
            emit_nonpositivity(out.spec, piece, upper, tag + ".B");

            CellQuad lower = negate(fdiff);
            for (const PhiArc& a : arcs)
                lower.add(env_at(false, shift_component(ref, j, a.d), a.v, a.d), a.weight);
            lower.add(env_at(false, k, u, zero), -1.0);
            emit_nonpositivity(out.spec, piece, lower, tag + ".A");
        }
    }
}

void AssemblyKit::emit_nonnegativity(bool with_g) {
    const Refinement& ref = ctx.refinement();
    const Offset zero(dim(), 0);
    for (int j = 0; j < ref.size(); ++j) {
        const RefinedComponent& piece = ref.piece(j);
        const int k = piece.c_index;
        std::string tag = "nn[" + std::to_string(j) + "]";
        emit_nonpositivity(out.spec, piece, negate(at_shift(fbar_ids(out, k), zero, dim())),
                           tag + ".Fbar");
        if (with_g)
            emit_nonpositivity(out.spec, piece, negate(at_shift(g_ids(out, k), zero, dim())),
                               tag + ".G");
        for (int64_t ukey : ctx.phi().slots[k]) {
            const Step u = decode_offset(ukey, dim());
            emit_nonpositivity(out.spec, piece, negate(env_at(false, k, u, zero)),
                               tag + ".A" + offset_name(u));
            emit_nonpositivity(out.spec, piece, negate(env_at(true, k, u, zero)),
                               tag + ".B" + offset_name(u));
        }
    }
}

std::vector<std::pair<int, double>> moment_objective(const BiasLpContext& ctx,
                                                     const AssembledLp& a, double g_sign,
                                                     bool with_g) {
    const RandomWalkModel& m = ctx.model();
    std::vector<std::pair<int, double>> obj;
    for (int k = 0; k < m.num_components(); ++k) {
        ComponentMoments mom = component_moments(m, ctx.pi(), k);
        obj.emplace_back(a.fbar0[k], mom.mass);
        for (int i = 0; i < m.dim(); ++i) obj.emplace_back(a.fbar_lin[k][i], mom.first[i]);
        if (!with_g) continue;
        obj.emplace_back(a.g0[k], g_sign * mom.mass);
        for (int i = 0; i < m.dim(); ++i) {
            obj.emplace_back(a.g_lin[k][i], g_sign * mom.first[i]);
            if (!a.g_quad.empty()) obj.emplace_back(a.g_quad[k][i], g_sign * mom.second[i]);
        }
    }
    return obj;
}

AssembledLp assemble_bound_lp(const BiasLpContext& ctx, int degree, Side side) {
    AssembledLp out;
    AssemblyKit kit{ctx, out, degree};
    kit.make_core_variables();

    const RandomWalkModel& m = ctx.model();
    LinearProgramSpec& lp = out.spec;
    out.g0.resize(m.num_components());
    out.g_lin.assign(m.num_components(), {});
    if (degree >= 2) out.g_quad.assign(m.num_components(), {});
    for (int k = 0; k < m.num_components(); ++k) {
        FnVarIds ids = make_fn_vars(lp, "G[" + m.component(k).name + "]", m.dim(), degree);
        out.g0[k] = ids.c0;
        out.g_lin[k] = ids.lin;
        if (degree >= 2) out.g_quad[k] = ids.quad;
    }

    const Refinement& ref = ctx.refinement();
    const Offset zero(m.dim(), 0);
    const PiecewiseFn& F = ctx.reward();

    // reward-replacement constraints with per-step epigraph functions for the
    // perturbation terms:  Fbar - F + sum_u m_u <= G  and  F - Fbar + sum_u m'_u <= G,
    // with m_u >= dp B_u, m_u >= -dp A_u (and swapped envelopes for m').
    for (int j = 0; j < ref.size(); ++j) {
        const RefinedComponent& piece = ref.piece(j);
        const int k = piece.c_index;
        const Component& orig = m.component(k);
        const Component& pert = ctx.perturbed().component(k);

        for (int pass = 0; pass < 2; ++pass) {
            CellQuad H(m.dim());
            const double sgn = pass == 0 ? 1.0 : -1.0;
            H.add(at_shift(fbar_ids(out, k), zero, m.dim()), sgn);
            H.add(param_at_shift(F, k, zero, m.dim()), -sgn);
            H.add(at_shift(g_ids(out, k), zero, m.dim()), -1.0);
            std::string tag = "reward[" + std::to_string(j) + "]." + (pass == 0 ? "up" : "dn");

            for (size_t s = 0; s < orig.steps.size(); ++s) {
                if (is_zero(orig.steps[s])) continue;
                const double dp = pert.probs[s] - orig.probs[s];
                if (dp == 0.0) continue;
                const Step& u = orig.steps[s];
                FnVarIds mu = make_fn_vars(
                    lp, "m" + std::to_string(pass) + "[" + std::to_string(j) + "]" + offset_name(u),
                    m.dim(), degree);
                H.add(at_shift(mu, zero, m.dim()), 1.0);
                // pass 0: m >= dp*B, m >= -dp*A ; pass 1: m >= dp*A, m >= -dp*B
                CellQuad dom1 = kit.env_at(pass == 0, k, u, zero);
                CellQuad dom2 = kit.env_at(pass != 0, k, u, zero);
                CellQuad r1(m.dim()), r2(m.dim());
                r1.add(dom1, dp);
                r1.add(at_shift(mu, zero, m.dim()), -1.0);
                r2.add(dom2, -dp);
                r2.add(at_shift(mu, zero, m.dim()), -1.0);
                emit_nonpositivity(lp, piece, r1, tag + ".epi1" + offset_name(u));
                emit_nonpositivity(lp, piece, r2, tag + ".epi2" + offset_name(u));
            }
            emit_nonpositivity(lp, piece, H, tag);
        }
    }

    kit.emit_envelope_constraints();
    kit.emit_nonnegativity(/*with_g=*/true);

    lp.sense = side == Side::Upper ? LinearProgramSpec::Sense::Min : LinearProgramSpec::Sense::Max;
    lp.set_objective(moment_objective(ctx, out, side == Side::Upper ? 1.0 : -1.0, true));
    lp.deduplicate_rows();
    return out;
}

}  // namespace

BiasLpContext::BiasLpContext(const RandomWalkModel& model, const RandomWalkModel& perturbed,
                             ProductFormDistribution pi, PiecewiseFn reward, int refinement_radius)
    : model_(&model),
      perturbed_(&perturbed),
      pi_(std::move(pi)),
      reward_(std::move(reward)),
      refinement_(refine(model, refinement_radius)),
      phi_(build_phi_closure(model, refinement_, perturbation_seeds(model, perturbed))) {
    if (pi_.dim() != model.dim()) throw std::invalid_argument("stationary mixture dimension mismatch");
    const double mass = pi_.total_mass();
    if (std::abs(mass - 1.0) > 1e-9)
        throw std::invalid_argument("stationary mixture mass " + std::to_string(mass));
}

AssembledLp assemble_upper_lp(const BiasLpContext& ctx, int degree) {
    return assemble_bound_lp(ctx, degree, Side::Upper);
}

AssembledLp assemble_lower_lp(const BiasLpContext& ctx, int degree) {
    return assemble_bound_lp(ctx, degree, Side::Lower);
}

AssembledLp assemble_comparison_lp(const BiasLpContext& ctx, Side side, int degree) {
    AssembledLp out;
    out.comparison = true;
    AssemblyKit kit{ctx, out, degree};
    kit.make_core_variables();

    const RandomWalkModel& m = ctx.model();
    LinearProgramSpec& lp = out.spec;
    const Refinement& ref = ctx.refinement();
    const Offset zero(m.dim(), 0);
    const PiecewiseFn& F = ctx.reward();

    for (int j = 0; j < ref.size(); ++j) {
        const RefinedComponent& piece = ref.piece(j);
        const int k = piece.c_index;
        const Component& orig = m.component(k);
        const Component& pert = ctx.perturbed().component(k);

        // upper side: Fbar - F + sum_u w_u >= 0 with w_u below both envelope
        // products; lower side: Fbar - F + sum_u m_u <= 0 with m_u above both.
        CellQuad H(m.dim());
        const double sgn = side == Side::Upper ? -1.0 : 1.0;
        H.add(at_shift(fbar_ids(out, k), zero, m.dim()), sgn);
        H.add(param_at_shift(F, k, zero, m.dim()), -sgn);
        std::string tag = "cmp[" + std::to_string(j) + "]";

        for (size_t s = 0; s < orig.steps.size(); ++s) {
            if (is_zero(orig.steps[s])) continue;
            const double dp = pert.probs[s] - orig.probs[s];
            if (dp == 0.0) continue;
            const Step& u = orig.steps[s];
            FnVarIds w = make_fn_vars(lp, "w[" + std::to_string(j) + "]" + offset_name(u),
                                      m.dim(), degree);
            H.add(at_shift(w, zero, m.dim()), 1.0);
            CellQuad rB(m.dim()), rA(m.dim());
            if (side == Side::Upper) {
                // w <= dp B ; w <= -dp A
                rB.add(at_shift(w, zero, m.dim()), 1.0);
                rB.add(kit.env_at(true, k, u, zero), -dp);
                rA.add(at_shift(w, zero, m.dim()), 1.0);
                rA.add(kit.env_at(false, k, u, zero), dp);
            } else {
                // w >= dp B ; w >= -dp A
                rB.add(kit.env_at(true, k, u, zero), dp);
                rB.add(at_shift(w, zero, m.dim()), -1.0);
                rA.add(kit.env_at(false, k, u, zero), -dp);
                rA.add(at_shift(w, zero, m.dim()), -1.0);
            }
            emit_nonpositivity(lp, piece, rB, tag + ".wB" + offset_name(u));
            emit_nonpositivity(lp, piece, rA, tag + ".wA" + offset_name(u));
        }
        emit_nonpositivity(lp, piece, H, tag);
    }

    kit.emit_envelope_constraints();
    kit.emit_nonnegativity(/*with_g=*/false);

    lp.sense = side == Side::Upper ? LinearProgramSpec::Sense::Min : LinearProgramSpec::Sense::Max;
    lp.set_objective(moment_objective(ctx, out, 0.0, false));
    lp.deduplicate_rows();
    return out;
}

namespace {

EnvelopeCoeffs read_coeffs(const AssembledLp::EnvVars& ids, const std::vector<double>& x, int dim) {
    EnvelopeCoeffs c;
    c.c0 = x[ids.c0];
    c.lin.resize(dim);
    for (int i = 0; i < dim; ++i) c.lin[i] = x[ids.lin[i]];
    if (!ids.quad.empty()) {
        c.quad.resize(dim);
        for (int i = 0; i < dim; ++i) c.quad[i] = x[ids.quad[i]];
    }
    return c;
}

}  // namespace

BoundReport solve_assembled(const BiasLpContext& ctx, const AssembledLp& assembled,
                            const SimplexOptions& opts) {
    const RandomWalkModel& m = ctx.model();
    BoundReport report;
    report.degree = assembled.degree;
    report.upper = assembled.spec.sense == LinearProgramSpec::Sense::Min;
    report.lp_rows = assembled.spec.num_constraints();
    report.lp_cols = assembled.spec.num_variables();

    LpSolution sol = solve_lp(assembled.spec, opts);
    report.lp_iterations = sol.iterations;
    switch (sol.status) {
        case LpSolution::Status::Optimal: report.status = BoundReport::Status::Optimal; break;
        case LpSolution::Status::Infeasible: report.status = BoundReport::Status::Infeasible; break;
        case LpSolution::Status::Unbounded: report.status = BoundReport::Status::Unbounded; break;
        default: report.status = BoundReport::Status::NumericalFailure; break;
    }
    if (!sol.optimal()) {
        report.bound = std::numeric_limits<double>::quiet_NaN();
        return report;
    }

    report.bound = sol.value;
    report.certificate_min_slack = assembled.spec.min_slack(sol.x);

    report.f_bar = PiecewiseFn::zero(m.num_components(), m.dim(), 1);
    for (int k = 0; k < m.num_components(); ++k) {
        report.f_bar.h0[k] = sol.x[assembled.fbar0[k]];
        for (int i = 0; i < m.dim(); ++i) report.f_bar.h[k][i] = sol.x[assembled.fbar_lin[k][i]];
    }
    report.g = PiecewiseFn::zero(m.num_components(), m.dim(), assembled.degree);
    if (!assembled.comparison) {
        for (int k = 0; k < m.num_components(); ++k) {
            report.g.h0[k] = sol.x[assembled.g0[k]];
            for (int i = 0; i < m.dim(); ++i) {
                report.g.h[k][i] = sol.x[assembled.g_lin[k][i]];
                if (!assembled.g_quad.empty()) report.g.eta[k][i] = sol.x[assembled.g_quad[k][i]];
            }
        }
    }
    report.envelopes.slots.resize(m.num_components());
    for (auto& [key, ids] : assembled.env_A)
        report.envelopes.slots[key.first][key.second].lower = read_coeffs(ids, sol.x, m.dim());
    for (auto& [key, ids] : assembled.env_B)
        report.envelopes.slots[key.first][key.second].upper = read_coeffs(ids, sol.x, m.dim());
    return report;
}

BoundReport lp_bound(const BiasLpContext& ctx, Side side, const BiasLpOptions& opts) {
    AssembledLp assembled = assemble_bound_lp(ctx, opts.degree, side);
    BoundReport report = solve_assembled(ctx, assembled, opts.simplex);
    report.upper = side == Side::Upper;
    return report;
}

BoundReport comparison_bound(const BiasLpContext& ctx, Side side, const BiasLpOptions& opts) {
    AssembledLp assembled = assemble_comparison_lp(ctx, side, opts.degree);
    BoundReport report = solve_assembled(ctx, assembled, opts.simplex);
    report.upper = side == Side::Upper;
    return report;
}

bool certify_nonpositive(const RefinedComponent& piece, double c0, const std::vector<double>& lin,
                         const std::vector<double>& quad) {
    for (int i : piece.unbounded) {
        const double eta = quad.empty() ? 0.0 : quad[i];
        if (eta > 0.0) return false;
        if (2.0 * piece.box.lo[i] * eta + lin[i] > 0.0) return false;
    }
    double corner = c0;
    for (int i = 0; i < piece.box.dim(); ++i) {
        const double L = piece.corner[i];
        corner += lin[i] * L;
        if (!quad.empty()) corner += quad[i] * L * L;
    }
    return corner <= 0.0;
}

CertifiedQuadratic sample_certified_quadratic(const RefinedComponent& piece, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    const int dim = piece.box.dim();
    CertifiedQuadratic q;
    q.lin.assign(dim, 0.0);
    q.quad.assign(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        if (piece.is_unbounded(i)) {
            q.quad[i] = -std::abs(gauss(rng));
            q.lin[i] = -2.0 * piece.box.lo[i] * q.quad[i] - expo(rng);
        } else {
            q.quad[i] = gauss(rng);
            q.lin[i] = gauss(rng);
        }
    }
    double corner = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double L = piece.corner[i];
        corner += q.lin[i] * L + q.quad[i] * L * L;
    }
    q.c0 = -corner - expo(rng);
    return q;
}

std::string BoundReport::status_name() const {
    switch (status) {
        case Status::Optimal: return "optimal";
        case Status::Infeasible: return "infeasible";
        case Status::Unbounded: return "unbounded";
        default: return "numerical-failure";
    }
}

std::string BoundReport::to_json() const {
    nlohmann::json j;
    j["status"] = status_name();
    j["side"] = upper ? "upper" : "lower";
    j["degree"] = degree;
    if (optimal()) {
        j["bound"] = bound;
        j["certificate_min_slack"] = certificate_min_slack;
        j["f_bar"] = {{"h0", f_bar.h0}, {"h", f_bar.h}};
        j["g"] = {{"h0", g.h0}, {"h", g.h}, {"eta", g.eta}};
        nlohmann::json env = nlohmann::json::array();
        const int dim = f_bar.h.empty() ? 0 : static_cast<int>(f_bar.h[0].size());
        for (size_t k = 0; k < envelopes.slots.size(); ++k)
            for (auto& [ukey, pair] : envelopes.slots[k]) {
                nlohmann::json e;
                e["component"] = k;
                e["step"] = offset_name(decode_offset(ukey, dim));
                e["A"] = {{"c0", pair.lower.c0}, {"lin", pair.lower.lin}, {"quad", pair.lower.quad}};
                e["B"] = {{"c0", pair.upper.c0}, {"lin", pair.upper.lin}, {"quad", pair.upper.quad}};
                env.push_back(std::move(e));
            }
        j["envelopes"] = std::move(env);
    }
    j["lp"] = {{"rows", lp_rows}, {"cols", lp_cols}, {"iterations", lp_iterations}};
    return j.dump(2);
}

}  // namespace orthant
