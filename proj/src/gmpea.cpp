#include "gmpea/gmpea.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gmpea/batch.hpp"

namespace gmpea {

Population evaluate_population(const ProblemDef& p, Matrix X) {
    Population pop;
    EvalResult ev = evaluate(p, X);
    pop.X = std::move(X);
    pop.F = std::move(ev.F);
    pop.C = std::move(ev.G);
    pop.cv = cv_batch(pop.C, p.cspec());
    return pop;
}

namespace {

void compositions(std::size_t m, std::size_t H, std::vector<std::size_t>& cur,
                  std::vector<double>& out) {
    if (cur.size() + 1 == m) {
        for (std::size_t v : cur) out.push_back(static_cast<double>(v) / H);
        std::size_t used = std::accumulate(cur.begin(), cur.end(), std::size_t{0});
        out.push_back(static_cast<double>(H - used) / H);
        return;
    }
    std::size_t used = std::accumulate(cur.begin(), cur.end(), std::size_t{0});
    for (std::size_t v = 0; v + used <= H; ++v) {
        cur.push_back(v);
        compositions(m, H, cur, out);
        cur.pop_back();
    }
}

std::size_t lattice_size(std::size_t m, std::size_t H) {
    // C(H + m - 1, m - 1)
    std::size_t n = 1;
    for (std::size_t i = 1; i < m; ++i) n = n * (H + i) / i;
    return n;
}

}  // namespace

Matrix simplex_lattice(std::size_t m, std::size_t H) {
    if (m == 0) throw std::invalid_argument("simplex_lattice: m must be positive");
    std::vector<double> flat;
    std::vector<std::size_t> cur;
    compositions(m, H, cur, flat);
    Matrix W(flat.size() / m, m);
    W.data = std::move(flat);
    return W;
}

Matrix reference_vectors(std::size_t m, std::size_t target_n) {
    if (target_n == 0)
        throw std::invalid_argument("reference_vectors: target_n must be positive");
    std::size_t H = 1;
    while (lattice_size(m, H) < target_n) ++H;
    Matrix W = simplex_lattice(m, H);
    W.rows = target_n;
    W.data.resize(target_n * m);
    return W;
}

NeighborhoodTopology build_neighborhoods(const Matrix& W, std::size_t t1,
                                         std::size_t t2) {
    std::size_t n = W.rows;
    if (t1 > n || t2 > n)
        throw std::invalid_argument("build_neighborhoods: neighborhood exceeds population");
    NeighborhoodTopology topo;
    topo.t1 = t1;
    topo.t2 = t2;
    topo.b1.resize(n);
    topo.b2.resize(n);
    std::vector<std::pair<double, std::uint32_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double d2 = 0.0;
            for (std::size_t c = 0; c < W.cols; ++c) {
                double d = W.at(i, c) - W.at(j, c);
                d2 += d * d;
            }
            dist[j] = {d2, static_cast<std::uint32_t>(j)};
        }
        std::sort(dist.begin(), dist.end());
        topo.b1[i].resize(t1);
        topo.b2[i].resize(t2);
        for (std::size_t k = 0; k < t1; ++k) topo.b1[i][k] = dist[k].second;
        for (std::size_t k = 0; k < t2; ++k) topo.b2[i][k] = dist[k].second;
    }
    return topo;
}

std::vector<double> update_ideal(std::vector<double> z, const Matrix& F_new) {
    if (z.size() != F_new.cols)
        throw std::invalid_argument("update_ideal: dimension mismatch");
    for (std::size_t r = 0; r < F_new.rows; ++r)
        for (std::size_t c = 0; c < F_new.cols; ++c)
            z[c] = std::min(z[c], F_new.at(r, c));
    return z;
}

namespace {

void sbx_pm_child(std::span<const double> p1, std::span<const double> p2,
                  std::span<double> child, const ProblemDef& prob, Rng& rng,
                  const OperatorParams& params) {
    std::size_t d = prob.d;
    if (rng.uniform() <= params.sbx_prob) {
        for (std::size_t j = 0; j < d; ++j) {
            if (rng.uniform() <= 0.5) {
                double u = rng.uniform();
                double beta = u <= 0.5
                                  ? std::pow(2.0 * u, 1.0 / (params.sbx_eta + 1.0))
                                  : std::pow(1.0 / (2.0 * (1.0 - u)),
                                             1.0 / (params.sbx_eta + 1.0));
                child[j] = 0.5 * ((1.0 + beta) * p1[j] + (1.0 - beta) * p2[j]);
            } else {
                child[j] = p1[j];
            }
        }
    } else {
        std::copy(p1.begin(), p1.end(), child.begin());
    }
}

void polynomial_mutation(std::span<double> x, const ProblemDef& prob, Rng& rng,
                         const OperatorParams& params) {
    double pm = params.pm_prob.value_or(1.0 / static_cast<double>(prob.d));
    for (std::size_t j = 0; j < prob.d; ++j) {
        if (rng.uniform() > pm) continue;
        auto [lo, hi] = prob.bounds[j];
        double span = hi - lo;
        if (span <= 0.0) continue;
        double u = rng.uniform();
        double dq;
        if (u < 0.5) {
            double d1 = (x[j] - lo) / span;
            dq = std::pow(2.0 * u + (1.0 - 2.0 * u) *
                                        std::pow(1.0 - d1, params.pm_eta + 1.0),
                          1.0 / (params.pm_eta + 1.0)) -
                 1.0;
        } else {
            double d2 = (hi - x[j]) / span;
            dq = 1.0 - std::pow(2.0 * (1.0 - u) +
                                    2.0 * (u - 0.5) *
                                        std::pow(1.0 - d2, params.pm_eta + 1.0),
                                1.0 / (params.pm_eta + 1.0));
        }
        x[j] += dq * span;
    }
}

void clip_to_bounds(std::span<double> x, const ProblemDef& prob) {
    for (std::size_t j = 0; j < prob.d; ++j)
        x[j] = std::clamp(x[j], prob.bounds[j].first, prob.bounds[j].second);
}

}  // namespace

Matrix reproduce(const Population& pop,
                 const std::vector<std::vector<std::uint32_t>>& neighborhoods,
                 const ProblemDef& problem, Rng& rng, VariationOp op,
                 const OperatorParams& params) {
    std::size_t n = pop.size();
    if (neighborhoods.size() != n)
        throw std::invalid_argument("reproduce: topology/population mismatch");
    Matrix off(n, problem.d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& nb = neighborhoods[i];
        std::size_t t = nb.size();
        auto child = off.row(i);
        if (op == VariationOp::sbx_pm) {
            std::size_t a = rng.uniform_index(t);
            std::size_t b = rng.uniform_index(t);
            while (t > 1 && b == a) b = rng.uniform_index(t);
            sbx_pm_child(pop.X.row(nb[a]), pop.X.row(nb[b]), child, problem, rng,
                         params);
        } else {
            std::size_t a = rng.uniform_index(t);
            std::size_t b = rng.uniform_index(t);
            while (t > 1 && b == a) b = rng.uniform_index(t);
            auto base = pop.X.row(i);
            auto xa = pop.X.row(nb[a]);
            auto xb = pop.X.row(nb[b]);
            std::size_t jrand = rng.uniform_index(problem.d);
            for (std::size_t j = 0; j < problem.d; ++j) {
                if (j == jrand || rng.uniform() < params.de_cr)
                    child[j] = base[j] + params.de_f * (xa[j] - xb[j]);
                else
                    child[j] = base[j];
            }
        }
        polynomial_mutation(child, problem, rng, params);
        clip_to_bounds(child, problem);
    }
    return off;
}

namespace {

// PBI of row i against reference vector i, for every row
std::vector<double> pbi_diag(const Population& pop, const SelectionContext& ctx) {
    return pbi_batch(pop.F, ctx.W, ctx.z, ctx.theta);
}

Mask mask_not(Mask m) {
    for (auto& b : m.bits) b ^= 1;
    return m;
}

Mask mask_and(const Mask& a, const Mask& b) {
    Mask out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
    return out;
}

Mask mask_or(const Mask& a, const Mask& b) {
    Mask out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] | b[i];
    return out;
}

// step mask over an elementwise difference: out[i] = 1 iff a[i] - b[i] >= 0
Mask ge_mask(const std::vector<double>& a, const std::vector<double>& b) {
    Matrix diff(a.size(), 1);
    for (std::size_t i = 0; i < a.size(); ++i) diff.data[i] = a[i] - b[i];
    return heaviside(diff);
}

std::vector<double> select_scalars(const Mask& pick_a, const std::vector<double>& a,
                                   const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = pick_a[i] ? a[i] : b[i];
    return out;
}

}  // namespace

void op1_offspring_cooperation(Population& off1, Population& off2,
                               const SelectionContext& ctx) {
    std::vector<double> g1 = pbi_diag(off1, ctx);
    std::vector<double> g2 = pbi_diag(off2, ctx);

    // stream 1 keeps the FPR-preferred candidate:
    // take off2 when cv2 < cv1, or when the violations tie and g1 > g2
    Mask cv_le = ge_mask(off1.cv, off2.cv);   // cv1 >= cv2
    Mask cv_ge = ge_mask(off2.cv, off1.cv);   // cv2 >= cv1
    Mask cv_eq = mask_and(cv_le, cv_ge);
    Mask cv2_lt = mask_and(cv_le, mask_not(cv_ge));
    Mask g1_gt = mask_not(ge_mask(g2, g1));   // g1 > g2
    Mask s1 = mask_or(cv2_lt, mask_and(cv_eq, g1_gt));

    // stream 2 keeps the PBI-preferred candidate: take off1 when g2 > g1
    Mask s2 = mask_not(ge_mask(g1, g2));

    Population new1;
    new1.X = masked_select(s1, off2.X, off1.X);
    new1.F = masked_select(s1, off2.F, off1.F);
    new1.C = masked_select(s1, off2.C, off1.C);
    new1.cv = select_scalars(s1, off2.cv, off1.cv);

    Population new2;
    new2.X = masked_select(s2, off1.X, off2.X);
    new2.F = masked_select(s2, off1.F, off2.F);
    new2.C = masked_select(s2, off1.C, off2.C);
    new2.cv = select_scalars(s2, off1.cv, off2.cv);

    off1 = std::move(new1);
    off2 = std::move(new2);
}

namespace {

UpdateIndexMatrix mark_updates(const std::vector<std::vector<std::uint32_t>>& nb,
                               const Population& off, const Population& pop,
                               const SelectionContext& ctx, bool use_fpr) {
    std::size_t n = off.size();
    UpdateIndexMatrix marks;
    marks.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = nb[i];
        marks.rows[i] = IndexVector(row.size());
        for (std::size_t l = 0; l < row.size(); ++l) {
            std::uint32_t j = row[l];
            double g_off = pbi(off.F.row(i), ctx.W.row(j), ctx.z, ctx.theta);
            double g_par = pbi(pop.F.row(j), ctx.W.row(j), ctx.z, ctx.theta);
            bool replace = use_fpr ? fpr_better(g_off, off.cv[i], g_par, pop.cv[j])
                                   : g_off < g_par;
            marks.rows[i][l] = replace ? IndexVector::sentinel
                                       : static_cast<std::int64_t>(j);
        }
    }
    return marks;
}

}  // namespace

std::pair<UpdateIndexMatrix, UpdateIndexMatrix> op2_update_indexing(
    const NeighborhoodTopology& topo, const Population& off1,
    const Population& off2, const Population& pop1, const Population& pop2,
    const SelectionContext& ctx) {
    return {mark_updates(topo.b1, off1, pop1, ctx, true),
            mark_updates(topo.b2, off2, pop2, ctx, false)};
}

namespace {

// per parent slot j: the (sorted) offspring indices whose marks claim j
std::vector<std::vector<std::size_t>> bucket_claims(
    const std::vector<std::vector<std::uint32_t>>& nb,
    const UpdateIndexMatrix& marks, std::size_t n) {
    std::vector<std::vector<std::size_t>> buckets(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < marks.rows[i].size(); ++l)
            if (marks.rows[i][l] == IndexVector::sentinel)
                buckets[nb[i][l]].push_back(i);
    return buckets;
}

void copy_row(const Matrix& src, std::size_t sr, Matrix& dst, std::size_t dr) {
    std::copy_n(src.row(sr).data(), src.cols, dst.row(dr).data());
}

Population resolve_slots(const std::vector<std::vector<std::uint32_t>>& nb,
                         const UpdateIndexMatrix& marks, const Population& pop,
                         const Population& off, const SelectionContext& ctx,
                         bool key_on_cv) {
    std::size_t n = pop.size();
    auto buckets = bucket_claims(nb, marks, n);
    Population out = pop;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& claims = buckets[j];
        if (claims.empty()) continue;
        // the parent sits at the first position no offspring claimed
        std::size_t u = 0;
        for (std::size_t c : claims) {
            if (c != u) break;
            ++u;
        }
        double best_cv = pop.cv[j];
        double best_g = pbi(pop.F.row(j), ctx.W.row(j), ctx.z, ctx.theta);
        std::size_t best_idx = u;
        bool best_is_off = false;
        std::size_t best_off = 0;
        for (std::size_t c : claims) {
            double g = pbi(off.F.row(c), ctx.W.row(j), ctx.z, ctx.theta);
            double cv = off.cv[c];
            bool wins;
            if (key_on_cv) {
                wins = cv < best_cv || (cv == best_cv && g < best_g) ||
                       (cv == best_cv && g == best_g && c < best_idx);
            } else {
                wins = g < best_g || (g == best_g && c < best_idx);
            }
            if (wins) {
                best_cv = cv;
                best_g = g;
                best_idx = c;
                best_is_off = true;
                best_off = c;
            }
        }
        if (best_is_off) {
            copy_row(off.X, best_off, out.X, j);
            copy_row(off.F, best_off, out.F, j);
            copy_row(off.C, best_off, out.C, j);
            out.cv[j] = off.cv[best_off];
        }
    }
    return out;
}

}  // namespace

std::pair<Population, Population> op3_elite_update(
    const NeighborhoodTopology& topo, const UpdateIndexMatrix& i1,
    const UpdateIndexMatrix& i2, const Population& pop1, const Population& pop2,
    const Population& off1, const Population& off2, const SelectionContext& ctx) {
    return {resolve_slots(topo.b1, i1, pop1, off1, ctx, true),
            resolve_slots(topo.b2, i2, pop2, off2, ctx, false)};
}

std::pair<Population, Population> environmental_selection(
    const Population& pop1, const Population& pop2, Population off1,
    Population off2, const NeighborhoodTopology& topo,
    const SelectionContext& ctx) {
    op1_offspring_cooperation(off1, off2, ctx);
    auto [i1, i2] = op2_update_indexing(topo, off1, off2, pop1, pop2, ctx);
    return op3_elite_update(topo, i1, i2, pop1, pop2, off1, off2, ctx);
}

namespace {

Matrix random_population(const ProblemDef& p, std::size_t n, Rng& rng) {
    Matrix X(n, p.d);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < p.d; ++c)
            X.at(r, c) = rng.uniform(p.bounds[c].first, p.bounds[c].second);
    return X;
}

double feasible_ratio(const Population& pop) {
    if (pop.size() == 0) return 0.0;
    std::size_t k = 0;
    for (double v : pop.cv)
        if (v == 0.0) ++k;
    return static_cast<double>(k) / static_cast<double>(pop.size());
}

}  // namespace

RunResult run_gmpea(const ProblemDef& problem, const RunConfig& cfg) {
    using clock = std::chrono::steady_clock;

    Matrix W = reference_vectors(problem.m, cfg.n);
    std::size_t n = W.rows;
    // neighborhood sizes cannot exceed the effective population size
    NeighborhoodTopology topo =
        build_neighborhoods(W, std::min(cfg.t1, n), std::min(cfg.t2, n));

    Rng rng(cfg.seed);
    Population pop1 = evaluate_population(problem, random_population(problem, n, rng));
    Population pop2 = evaluate_population(problem, random_population(problem, n, rng));
    std::size_t evals = 2 * n;

    std::vector<double> z(problem.m, std::numeric_limits<double>::infinity());
    z = update_ideal(std::move(z), pop1.F);
    z = update_ideal(std::move(z), pop2.F);

    RunResult result;
    result.effective_n = n;

    // only the evolutionary loop is timed; metric hooks and setup are excluded
    double loop_s = 0.0;
    auto record = [&](std::size_t gen) {
        GenRecord rec;
        rec.gen = gen;
        rec.evals = evals;
        rec.wall_ms = cfg.record_walltime ? loop_s * 1e3 : 0.0;
        rec.feasible_ratio = feasible_ratio(pop1);
        if (cfg.igd_metric) rec.igd = cfg.igd_metric(pop1);
        if (cfg.hv_metric) rec.hv = cfg.hv_metric(pop1);
        result.history.push_back(rec);
    };
    record(0);

    bool unbounded_gens = cfg.k_max == 0 && (cfg.time_budget_s || cfg.eval_budget);
    for (std::size_t gen = 1; unbounded_gens || gen <= cfg.k_max; ++gen) {
        if (cfg.time_budget_s && loop_s >= *cfg.time_budget_s) break;
        if (cfg.eval_budget && evals + 2 * n > *cfg.eval_budget) break;

        Population prev1 = pop1, prev2 = pop2;
        auto g0 = clock::now();
        Matrix ox1 = reproduce(pop1, topo.b1, problem, rng, cfg.op, cfg.op_params);
        Matrix ox2 = reproduce(pop2, topo.b2, problem, rng, cfg.op, cfg.op_params);
        Population off1, off2;
        try {
            off1 = evaluate_population(problem, std::move(ox1));
            off2 = evaluate_population(problem, std::move(ox2));
        } catch (const std::exception& e) {
            throw std::runtime_error("run_gmpea: evaluation failed at generation " +
                                     std::to_string(gen) + ": " + e.what());
        }

        z = update_ideal(std::move(z), off1.F);
        z = update_ideal(std::move(z), off2.F);

        SelectionContext ctx{W, z, cfg.theta};
        std::tie(pop1, pop2) = environmental_selection(pop1, pop2, std::move(off1),
                                                       std::move(off2), topo, ctx);
        loop_s += std::chrono::duration<double>(clock::now() - g0).count();
        if (cfg.time_budget_s && loop_s >= *cfg.time_budget_s) {
            // the generation that crossed the deadline is discarded
            pop1 = std::move(prev1);
            pop2 = std::move(prev2);
            break;
        }
        evals += 2 * n;
        record(gen);
    }

    result.pop1 = std::move(pop1);
    return result;
}

}  // namespace gmpea
