#include "gmpea/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gmpea {

namespace {

bool better(const Matrix& F, const std::vector<double>& cv, std::size_t a,
            std::size_t b, bool use_cdp) {
    if (use_cdp) return cdp_better(F.row(a), cv[a], F.row(b), cv[b]);
    return pareto_dominates(F.row(a), F.row(b));
}

}  // namespace

std::vector<std::size_t> nondominated_sort(const Matrix& F,
                                           const std::vector<double>& cv,
                                           bool use_cdp) {
    std::size_t n = F.rows;
    std::vector<std::size_t> rank(n, 0), dom_count(n, 0);
    std::vector<std::vector<std::size_t>> dominated(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (better(F, cv, i, j, use_cdp)) {
                dominated[i].push_back(j);
                ++dom_count[j];
            } else if (better(F, cv, j, i, use_cdp)) {
                dominated[j].push_back(i);
                ++dom_count[i];
            }
        }
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (dom_count[i] == 0) current.push_back(i);
    std::size_t r = 0;
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current) {
            rank[i] = r;
            for (std::size_t j : dominated[i])
                if (--dom_count[j] == 0) next.push_back(j);
        }
        current = std::move(next);
        ++r;
    }
    return rank;
}

std::vector<double> crowding_distance(const Matrix& F,
                                      const std::vector<std::size_t>& front) {
    std::vector<double> dist(front.size(), 0.0);
    if (front.size() <= 2) {
        std::fill(dist.begin(), dist.end(),
                  std::numeric_limits<double>::infinity());
        return dist;
    }
    std::vector<std::size_t> order(front.size());
    for (std::size_t c = 0; c < F.cols; ++c) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return F.at(front[a], c) < F.at(front[b], c);
                         });
        double lo = F.at(front[order.front()], c);
        double hi = F.at(front[order.back()], c);
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        if (hi == lo) continue;
        for (std::size_t k = 1; k + 1 < order.size(); ++k)
            dist[order[k]] += (F.at(front[order[k + 1]], c) -
                               F.at(front[order[k - 1]], c)) /
                              (hi - lo);
    }
    // repeated objective vectors crowd each other out entirely
    for (std::size_t a = 0; a < front.size(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            if (std::equal(F.row(front[a]).begin(), F.row(front[a]).end(),
                           F.row(front[b]).begin())) {
                dist[a] = 0.0;
                break;
            }
    return dist;
}

std::vector<double> spea2_fitness(const Matrix& F, const std::vector<double>& cv,
                                  bool use_cdp) {
    std::size_t n = F.rows;
    std::vector<double> strength(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && better(F, cv, i, j, use_cdp)) strength[i] += 1.0;
    std::vector<double> fit(n, 0.0);
    std::size_t k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    if (k >= n) k = n > 1 ? n - 1 : 0;
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) {
        // second dominance pass instead of stored dominator lists: the pools
        // here reach tens of thousands of rows
        double raw = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && better(F, cv, j, i, use_cdp)) raw += strength[j];
        d2.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double s = 0.0;
            for (std::size_t c = 0; c < F.cols; ++c) {
                double d = F.at(i, c) - F.at(j, c);
                s += d * d;
            }
            d2.push_back(s);
        }
        double sigma = 0.0;
        if (!d2.empty()) {
            std::size_t kk = k < d2.size() ? k : d2.size() - 1;
            std::nth_element(d2.begin(), d2.begin() + kk, d2.end());
            sigma = std::sqrt(d2[kk]);
        }
        fit[i] = raw + 1.0 / (sigma + 2.0);
    }
    return fit;
}

std::vector<std::size_t> spea2_select(const Matrix& F,
                                      const std::vector<double>& cv, bool use_cdp,
                                      std::size_t capacity) {
    std::size_t n = F.rows;
    std::vector<double> fit = spea2_fitness(F, cv, use_cdp);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (fit[i] < 1.0) keep.push_back(i);
    if (keep.size() < capacity) {
        // fill with the best of the dominated, lowest fitness first
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
            if (fit[i] >= 1.0) rest.push_back(i);
        std::stable_sort(rest.begin(), rest.end(),
                         [&](std::size_t a, std::size_t b) {
                             return fit[a] < fit[b];
                         });
        for (std::size_t i : rest) {
            if (keep.size() == capacity) break;
            keep.push_back(i);
        }
        std::sort(keep.begin(), keep.end());
        return keep;
    }
    // serial truncation: drop the member with the smallest distance profile
    std::vector<char> alive(n, 0);
    for (std::size_t i : keep) alive[i] = 1;
    std::size_t alive_n = keep.size();
    auto dist2 = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (std::size_t c = 0; c < F.cols; ++c) {
            double d = F.at(a, c) - F.at(b, c);
            s += d * d;
        }
        return s;
    };
    while (alive_n > capacity) {
        std::size_t victim = n;
        std::vector<double> best_profile;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            std::vector<double> profile;
            profile.reserve(alive_n - 1);
            for (std::size_t j = 0; j < n; ++j)
                if (alive[j] && j != i) profile.push_back(dist2(i, j));
            std::sort(profile.begin(), profile.end());
            if (victim == n ||
                std::lexicographical_compare(profile.begin(), profile.end(),
                                             best_profile.begin(),
                                             best_profile.end())) {
                victim = i;
                best_profile = std::move(profile);
            }
        }
        alive[victim] = 0;
        --alive_n;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (alive[i]) out.push_back(i);
    return out;
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

void sbx_pm_child(std::span<const double> p1, std::span<const double> p2,
                  std::span<double> child, const ProblemDef& prob, Rng& rng,
                  const OperatorParams& params) {
    if (rng.uniform() <= params.sbx_prob) {
        for (std::size_t j = 0; j < prob.d; ++j) {
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
    double pm = params.pm_prob.value_or(1.0 / static_cast<double>(prob.d));
    for (std::size_t j = 0; j < prob.d; ++j) {
        if (rng.uniform() > pm) continue;
        auto [lo, hi] = prob.bounds[j];
        double span = hi - lo;
        if (span <= 0.0) continue;
        double u = rng.uniform();
        double dq;
        if (u < 0.5) {
            double d1 = (child[j] - lo) / span;
            dq = std::pow(2.0 * u + (1.0 - 2.0 * u) *
                                        std::pow(1.0 - d1, params.pm_eta + 1.0),
                          1.0 / (params.pm_eta + 1.0)) -
                 1.0;
        } else {
            double d2 = (hi - child[j]) / span;
            dq = 1.0 - std::pow(2.0 * (1.0 - u) +
                                    2.0 * (u - 0.5) *
                                        std::pow(1.0 - d2, params.pm_eta + 1.0),
                                1.0 / (params.pm_eta + 1.0));
        }
        child[j] += dq * span;
    }
    for (std::size_t j = 0; j < prob.d; ++j)
        child[j] = std::clamp(child[j], prob.bounds[j].first,
                              prob.bounds[j].second);
}

Population take_pop(const Population& pop, const std::vector<std::size_t>& idx) {
    Population out;
    out.X = Matrix(idx.size(), pop.X.cols);
    out.F = Matrix(idx.size(), pop.F.cols);
    out.C = Matrix(idx.size(), pop.C.cols);
    out.cv.resize(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        std::copy_n(pop.X.row(idx[r]).data(), pop.X.cols, out.X.row(r).data());
        std::copy_n(pop.F.row(idx[r]).data(), pop.F.cols, out.F.row(r).data());
        std::copy_n(pop.C.row(idx[r]).data(), pop.C.cols, out.C.row(r).data());
        out.cv[r] = pop.cv[idx[r]];
    }
    return out;
}

Population concat_pops(const Population& a, const Population& b) {
    Population out;
    out.X = Matrix(a.X.rows + b.X.rows, a.X.cols);
    out.F = Matrix(a.F.rows + b.F.rows, a.F.cols);
    out.C = Matrix(a.C.rows + b.C.rows, a.C.cols);
    std::copy(a.X.data.begin(), a.X.data.end(), out.X.data.begin());
    std::copy(b.X.data.begin(), b.X.data.end(),
              out.X.data.begin() + static_cast<std::ptrdiff_t>(a.X.data.size()));
    std::copy(a.F.data.begin(), a.F.data.end(), out.F.data.begin());
    std::copy(b.F.data.begin(), b.F.data.end(),
              out.F.data.begin() + static_cast<std::ptrdiff_t>(a.F.data.size()));
    std::copy(a.C.data.begin(), a.C.data.end(), out.C.data.begin());
    std::copy(b.C.data.begin(), b.C.data.end(),
              out.C.data.begin() + static_cast<std::ptrdiff_t>(a.C.data.size()));
    out.cv = a.cv;
    out.cv.insert(out.cv.end(), b.cv.begin(), b.cv.end());
    return out;
}

struct RunDriver {
    const ProblemDef& problem;
    const RunConfig& cfg;
    std::size_t evals = 0;
    double loop_s = 0.0;  // evolutionary loop only; metric hooks excluded
    RunResult result;

    void record(std::size_t gen, const Population& pop) {
        GenRecord rec;
        rec.gen = gen;
        rec.evals = evals;
        rec.wall_ms = cfg.record_walltime ? loop_s * 1e3 : 0.0;
        rec.feasible_ratio = feasible_ratio(pop);
        if (cfg.igd_metric) rec.igd = cfg.igd_metric(pop);
        if (cfg.hv_metric) rec.hv = cfg.hv_metric(pop);
        result.history.push_back(rec);
    }
    bool stop(std::size_t gen, std::size_t next_gen_evals) const {
        bool unbounded = cfg.k_max == 0 && (cfg.time_budget_s || cfg.eval_budget);
        if (!unbounded && gen > cfg.k_max) return true;
        if (cfg.time_budget_s && loop_s >= *cfg.time_budget_s) return true;
        if (cfg.eval_budget && evals + next_gen_evals > *cfg.eval_budget)
            return true;
        return false;
    }
};

}  // namespace

RunResult run_cnsga2(const ProblemDef& problem, const RunConfig& cfg) {
    RunDriver drv{problem, cfg, 0, 0.0, {}};
    Rng rng(cfg.seed);
    std::size_t n = cfg.n;
    Population pop =
        evaluate_population(problem, random_population(problem, n, rng));
    drv.evals = n;
    drv.result.effective_n = n;
    drv.record(0, pop);

    for (std::size_t gen = 1; !drv.stop(gen, n); ++gen) {
        Population prev = pop;
        auto g0 = std::chrono::steady_clock::now();
        std::vector<std::size_t> rank = nondominated_sort(pop.F, pop.cv, true);
        // crowding over the whole population, computed per front
        std::vector<double> crowd(n, 0.0);
        std::size_t max_rank = *std::max_element(rank.begin(), rank.end());
        for (std::size_t r = 0; r <= max_rank; ++r) {
            std::vector<std::size_t> front;
            for (std::size_t i = 0; i < n; ++i)
                if (rank[i] == r) front.push_back(i);
            if (front.empty()) continue;
            std::vector<double> cd = crowding_distance(pop.F, front);
            for (std::size_t k = 0; k < front.size(); ++k) crowd[front[k]] = cd[k];
        }
        auto tournament = [&] {
            std::size_t a = rng.uniform_index(n);
            std::size_t b = rng.uniform_index(n);
            if (rank[a] != rank[b]) return rank[a] < rank[b] ? a : b;
            if (crowd[a] != crowd[b]) return crowd[a] > crowd[b] ? a : b;
            return a;
        };
        Matrix ox(n, problem.d);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t a = tournament();
            std::size_t b = tournament();
            sbx_pm_child(pop.X.row(a), pop.X.row(b), ox.row(i), problem, rng,
                         cfg.op_params);
        }
        Population off = evaluate_population(problem, std::move(ox));

        Population merged = concat_pops(pop, off);
        std::vector<std::size_t> mrank =
            nondominated_sort(merged.F, merged.cv, true);
        std::vector<std::size_t> chosen;
        std::size_t mr = *std::max_element(mrank.begin(), mrank.end());
        for (std::size_t r = 0; r <= mr && chosen.size() < n; ++r) {
            std::vector<std::size_t> front;
            for (std::size_t i = 0; i < merged.size(); ++i)
                if (mrank[i] == r) front.push_back(i);
            if (chosen.size() + front.size() <= n) {
                chosen.insert(chosen.end(), front.begin(), front.end());
            } else {
                std::vector<double> cd = crowding_distance(merged.F, front);
                std::vector<std::size_t> order(front.size());
                std::iota(order.begin(), order.end(), 0);
                std::stable_sort(order.begin(), order.end(),
                                 [&](std::size_t a, std::size_t b) {
                                     return cd[a] > cd[b];
                                 });
                for (std::size_t k : order) {
                    if (chosen.size() == n) break;
                    chosen.push_back(front[k]);
                }
            }
        }
        std::sort(chosen.begin(), chosen.end());
        pop = take_pop(merged, chosen);
        drv.loop_s +=
            std::chrono::duration<double>(std::chrono::steady_clock::now() - g0)
                .count();
        if (cfg.time_budget_s && drv.loop_s >= *cfg.time_budget_s) {
            pop = std::move(prev);
            break;
        }
        drv.evals += n;
        drv.record(gen, pop);
    }
    drv.result.pop1 = std::move(pop);
    return drv.result;
}

RunResult run_ccmo(const ProblemDef& problem, const RunConfig& cfg) {
    RunDriver drv{problem, cfg, 0, 0.0, {}};
    Rng rng(cfg.seed);
    std::size_t n = cfg.n;
    Population pop1 =
        evaluate_population(problem, random_population(problem, n, rng));
    Population pop2 =
        evaluate_population(problem, random_population(problem, n, rng));
    drv.evals = 2 * n;
    drv.result.effective_n = n;
    drv.record(0, pop1);

    for (std::size_t gen = 1; !drv.stop(gen, 2 * n); ++gen) {
        Population prev1 = pop1, prev2 = pop2;
        auto g0 = std::chrono::steady_clock::now();
        std::vector<double> fit1 = spea2_fitness(pop1.F, pop1.cv, true);
        std::vector<double> fit2 = spea2_fitness(pop2.F, pop2.cv, false);
        auto tournament = [&](const std::vector<double>& fit) {
            std::size_t a = rng.uniform_index(n);
            std::size_t b = rng.uniform_index(n);
            return fit[a] <= fit[b] ? a : b;
        };
        Matrix ox1(n, problem.d), ox2(n, problem.d);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t a = tournament(fit1);
            std::size_t b = tournament(fit1);
            sbx_pm_child(pop1.X.row(a), pop1.X.row(b), ox1.row(i), problem, rng,
                         cfg.op_params);
        }
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t a = tournament(fit2);
            std::size_t b = tournament(fit2);
            sbx_pm_child(pop2.X.row(a), pop2.X.row(b), ox2.row(i), problem, rng,
                         cfg.op_params);
        }
        Population off1 = evaluate_population(problem, std::move(ox1));
        Population off2 = evaluate_population(problem, std::move(ox2));

        // offspring of both populations feed both selections
        Population shared = concat_pops(off1, off2);
        Population pool1 = concat_pops(pop1, shared);
        Population pool2 = concat_pops(pop2, shared);
        pop1 = take_pop(pool1, spea2_select(pool1.F, pool1.cv, true, n));
        pop2 = take_pop(pool2, spea2_select(pool2.F, pool2.cv, false, n));
        drv.loop_s +=
            std::chrono::duration<double>(std::chrono::steady_clock::now() - g0)
                .count();
        if (cfg.time_budget_s && drv.loop_s >= *cfg.time_budget_s) {
            pop1 = std::move(prev1);
            pop2 = std::move(prev2);
            break;
        }
        drv.evals += 2 * n;
        drv.record(gen, pop1);
    }
    drv.result.pop1 = std::move(pop1);
    return drv.result;
}

}  // namespace gmpea
