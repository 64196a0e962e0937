#include "gmpea/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gmpea/record.hpp"
#include "json.hpp"

namespace gmpea {

namespace {

const std::vector<std::string> kAlgorithms = {"gmpea", "gmpea-s", "gmpea-l",
                                              "cnsga2", "ccmo"};

bool known_algorithm(const std::string& a) {
    return std::find(kAlgorithms.begin(), kAlgorithms.end(), a) !=
           kAlgorithms.end();
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::string suite_of(const std::string& problem) {
    if (problem.rfind("LIRCMOP", 0) == 0) return "lircmop";
    if (problem.rfind("WTA", 0) == 0) return "wta";
    return "dtlz";
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("config " + path + " is not valid JSON: " +
                                 e.what());
    }
    ExperimentConfig cfg;
    cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    cfg.problems = j.at("problems").get<std::vector<std::string>>();
    cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("budget")) {
        const auto& b = j["budget"];
        if (b.contains("evals")) cfg.eval_budget = b["evals"].get<std::size_t>();
        if (b.contains("seconds")) cfg.time_budget_s = b["seconds"].get<double>();
    }
    cfg.k_max = j.value("k_max", std::size_t{0});
    cfg.n = j.value("n", std::size_t{100});
    if (j.contains("operators"))
        cfg.operators =
            j["operators"].get<std::map<std::string, std::string>>();
    cfg.reference_algorithm = j.value("reference_algorithm", std::string{});
    cfg.output_dir = j.value("output_dir", std::string{"out"});
    cfg.workers = j.value("workers", std::size_t{1});
    cfg.record_walltime = j.value("record_walltime", true);
    cfg.igd_reference_points =
        j.value("igd_reference_points", std::size_t{1000});
    return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> errors;
    if (cfg.algorithms.empty()) errors.push_back("empty algorithm list");
    if (cfg.problems.empty()) errors.push_back("empty problem list");
    if (cfg.seeds.empty()) errors.push_back("empty seed list");
    if (cfg.eval_budget && cfg.time_budget_s)
        errors.push_back("both evals and seconds budgets set; pick one");
    if (!cfg.eval_budget && !cfg.time_budget_s && cfg.k_max == 0)
        errors.push_back("no budget configured (evals, seconds or k_max)");
    if (cfg.eval_budget && *cfg.eval_budget == 0)
        errors.push_back("evals budget must be positive");
    if (cfg.time_budget_s && *cfg.time_budget_s <= 0.0)
        errors.push_back("seconds budget must be positive");
    if (cfg.n == 0) errors.push_back("population size must be positive");
    for (const auto& a : cfg.algorithms)
        if (!known_algorithm(a)) errors.push_back("unknown algorithm: " + a);
    if (!cfg.reference_algorithm.empty() &&
        std::find(cfg.algorithms.begin(), cfg.algorithms.end(),
                  cfg.reference_algorithm) == cfg.algorithms.end())
        errors.push_back("reference algorithm not in algorithm list: " +
                         cfg.reference_algorithm);
    for (const auto& p : cfg.problems) {
        try {
            make_problem(p);
        } catch (const std::exception&) {
            errors.push_back("unknown problem: " + p);
        }
    }
    for (const auto& [suite, op] : cfg.operators)
        if (op != "sbx" && op != "de")
            errors.push_back("unknown operator '" + op + "' for suite " + suite);
    if (!errors.empty()) {
        std::string msg = "invalid experiment config:";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw std::invalid_argument(msg);
    }
}

VariationOp operator_for(const ExperimentConfig& cfg, const std::string& problem) {
    std::string suite = suite_of(problem);
    auto it = cfg.operators.find(suite);
    if (it != cfg.operators.end())
        return it->second == "de" ? VariationOp::de : VariationOp::sbx_pm;
    return suite == "lircmop" ? VariationOp::de : VariationOp::sbx_pm;
}

RunResult run_algorithm(const std::string& algorithm, const ProblemDef& problem,
                        const RunConfig& cfg) {
    if (algorithm == "cnsga2") return run_cnsga2(problem, cfg);
    if (algorithm == "ccmo") return run_ccmo(problem, cfg);
    RunConfig c = cfg;
    if (algorithm == "gmpea-s") {
        c.t1 = c.t2 = 5;
    } else if (algorithm == "gmpea-l") {
        c.t1 = c.t2 = 20;
    } else if (algorithm != "gmpea") {
        throw std::invalid_argument("unknown algorithm: " + algorithm);
    }
    return run_gmpea(problem, c);
}

namespace {

struct Cell {
    std::size_t alg = 0, prob = 0, seed = 0;
};

struct CellOutcome {
    std::vector<GenRecord> history;
    Matrix front;  // feasible nondominated objective rows of the final pop
};

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) /
           static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    std::filesystem::create_directories(cfg.output_dir);

    std::vector<ProblemDef> problems;
    problems.reserve(cfg.problems.size());
    for (const auto& p : cfg.problems) problems.push_back(make_problem(p));

    // problems with an analytic front get per-generation IGD tracking against
    // a reference front computed once up front
    std::vector<Matrix> ref_fronts(cfg.problems.size());
    std::vector<bool> has_front(cfg.problems.size(), false);
    for (std::size_t pi = 0; pi < cfg.problems.size(); ++pi)
        if (problems[pi].front_candidates) {
            ref_fronts[pi] = pf_reference(problems[pi], cfg.igd_reference_points);
            has_front[pi] = true;
        }

    std::vector<Cell> cells;
    for (std::size_t pi = 0; pi < cfg.problems.size(); ++pi)
        for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai)
            for (std::size_t si = 0; si < cfg.seeds.size(); ++si)
                cells.push_back({ai, pi, si});
    std::vector<CellOutcome> outcomes(cells.size());

    auto run_cell = [&](std::size_t c) {
        const Cell& cell = cells[c];
        RunConfig rc;
        rc.n = cfg.n;
        rc.k_max = cfg.k_max;
        rc.eval_budget = cfg.eval_budget;
        rc.time_budget_s = cfg.time_budget_s;
        rc.seed = cfg.seeds[cell.seed];
        rc.op = operator_for(cfg, cfg.problems[cell.prob]);
        rc.record_walltime = cfg.record_walltime;
        if (has_front[cell.prob]) {
            const Matrix& ref = ref_fronts[cell.prob];
            rc.igd_metric = [&ref](const Population& pop) {
                return igd(metric_front(pop), ref);
            };
        }
        RunResult res = run_algorithm(cfg.algorithms[cell.alg],
                                      problems[cell.prob], rc);
        outcomes[c].history = std::move(res.history);
        outcomes[c].front = metric_front(res.pop1);
    };

    // timing budgets get exclusive execution to keep measurements clean
    std::size_t workers = cfg.time_budget_s ? 1 : std::max<std::size_t>(1, cfg.workers);
    if (workers == 1) {
        for (std::size_t c = 0; c < cells.size(); ++c) run_cell(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t c = next.fetch_add(1); c < cells.size();
                     c = next.fetch_add(1))
                    run_cell(c);
            });
        for (auto& t : pool) t.join();
    }

    ExperimentResult result;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const Cell& cell = cells[c];
        std::string path = cfg.output_dir + "/" + cfg.algorithms[cell.alg] + "_" +
                           cfg.problems[cell.prob] + "_s" +
                           std::to_string(cfg.seeds[cell.seed]) + ".jsonl";
        save_records(outcomes[c].history, path);
        result.jsonl_paths.push_back(path);
    }

    // per-problem metric: IGD against the analytic front when one exists,
    // normalized HV otherwise
    std::vector<RunSummary> summaries;
    for (std::size_t pi = 0; pi < cfg.problems.size(); ++pi) {
        bool use_igd = has_front[pi];
        const Matrix& ref_front = ref_fronts[pi];
        std::vector<double> ideal, nadir;
        if (!use_igd) {
            std::size_t m = problems[pi].m;
            ideal.assign(m, std::numeric_limits<double>::infinity());
            nadir.assign(m, -std::numeric_limits<double>::infinity());
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c].prob != pi) continue;
                const Matrix& F = outcomes[c].front;
                for (std::size_t r = 0; r < F.rows; ++r)
                    for (std::size_t k = 0; k < m; ++k) {
                        ideal[k] = std::min(ideal[k], F.at(r, k));
                        nadir[k] = std::max(nadir[k], F.at(r, k));
                    }
            }
            for (std::size_t k = 0; k < m; ++k)
                if (!(nadir[k] > ideal[k])) {
                    if (!std::isfinite(ideal[k])) ideal[k] = 0.0;
                    nadir[k] = ideal[k] + 1.0;
                }
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c].prob != pi) continue;
            const Matrix& F = outcomes[c].front;
            double value;
            if (use_igd) {
                value = igd(F, ref_front);
            } else if (F.rows == 0) {
                value = 0.0;
            } else {
                Matrix norm = normalize_for_hv(F, ideal, nadir);
                std::vector<double> rp(problems[pi].m, 1.1);
                value = hypervolume(norm, rp);
            }
            summaries.push_back({cfg.algorithms[cells[c].alg], cfg.problems[pi],
                                 cfg.seeds[cells[c].seed],
                                 use_igd ? "igd" : "hv", value});
        }
    }

    result.summary_path = cfg.output_dir + "/summary.jsonl";
    {
        std::ofstream os(result.summary_path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + result.summary_path);
        os << summaries_to_jsonl(summaries);
    }
    result.csv_text = aggregate_results(cfg, summaries);
    result.csv_path = cfg.output_dir + "/results.csv";
    std::ofstream os(result.csv_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + result.csv_path);
    os << result.csv_text;
    return result;
}

std::string summaries_to_jsonl(const std::vector<RunSummary>& summaries) {
    std::ostringstream os;
    for (const RunSummary& s : summaries) {
        nlohmann::ordered_json j;
        j["algorithm"] = s.algorithm;
        j["problem"] = s.problem;
        j["seed"] = s.seed;
        j["metric"] = s.metric;
        j["value"] = std::isfinite(s.value) ? nlohmann::ordered_json(s.value)
                                            : nlohmann::ordered_json(nullptr);
        os << j.dump() << "\n";
    }
    return os.str();
}

std::vector<RunSummary> load_summaries(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::vector<RunSummary> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        RunSummary s;
        s.algorithm = j.at("algorithm").get<std::string>();
        s.problem = j.at("problem").get<std::string>();
        s.seed = j.at("seed").get<std::uint64_t>();
        s.metric = j.at("metric").get<std::string>();
        s.value = j.at("value").is_null()
                      ? std::numeric_limits<double>::infinity()
                      : j.at("value").get<double>();
        out.push_back(s);
    }
    return out;
}

std::string aggregate_results(const ExperimentConfig& cfg,
                              const std::vector<RunSummary>& summaries) {
    std::string ref_alg = cfg.reference_algorithm.empty()
                              ? cfg.algorithms.front()
                              : cfg.reference_algorithm;
    std::ostringstream csv;
    csv << "algorithm,problem,metric,mean,std,mark\n";
    for (const auto& prob : cfg.problems) {
        auto samples_of = [&](const std::string& alg, std::string& metric) {
            std::vector<double> s;
            for (const RunSummary& r : summaries)
                if (r.problem == prob && r.algorithm == alg) {
                    s.push_back(r.value);
                    metric = r.metric;
                }
            return s;
        };
        std::string metric;
        std::vector<double> ref_samples = samples_of(ref_alg, metric);
        for (const auto& alg : cfg.algorithms) {
            std::vector<double> s = samples_of(alg, metric);
            if (s.empty())
                throw std::runtime_error("aggregate_results: no runs for " + alg +
                                         "/" + prob);
            double mean = mean_of(s);
            std::string mark;
            if (alg != ref_alg) {
                WilcoxonResult w = wilcoxon_rank_sum(ref_samples, s);
                // "+": the reference algorithm is significantly better
                int better = metric == "igd" ? -w.direction : w.direction;
                mark = better > 0 ? "+" : (better < 0 ? "-" : "=");
            }
            csv << alg << ',' << prob << ',' << metric << ',' << fmt(mean) << ','
                << fmt(std_of(s, mean)) << ',' << mark << '\n';
        }
    }
    return csv.str();
}

std::string scaling_study(const std::vector<std::string>& algorithms,
                          const std::string& problem,
                          const std::vector<std::size_t>& sizes,
                          std::size_t generations, std::uint64_t seed) {
    if (sizes.empty() || !std::is_sorted(sizes.begin(), sizes.end()))
        throw std::invalid_argument("scaling_study: sizes must be ascending");
    if (generations == 0)
        throw std::invalid_argument("scaling_study: need at least one generation");
    for (const auto& a : algorithms)
        if (!known_algorithm(a))
            throw std::invalid_argument("scaling_study: unknown algorithm " + a);
    ProblemDef prob = make_problem(problem);
    std::ostringstream csv;
    csv << "algorithm,n,mean_gen_ms,ratio\n";
    for (const auto& alg : algorithms) {
        double base_ms = 0.0;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            RunConfig rc;
            rc.n = sizes[i];
            rc.k_max = generations;
            rc.seed = seed;
            rc.record_walltime = true;
            RunResult res = run_algorithm(alg, prob, rc);
            double total_ms = res.history.back().wall_ms;
            double per_gen =
                total_ms / static_cast<double>(res.history.size() - 1);
            if (i == 0) base_ms = per_gen;
            csv << alg << ',' << sizes[i] << ',' << fmt(per_gen) << ','
                << fmt(per_gen / base_ms) << '\n';
        }
    }
    return csv.str();
}

std::size_t rank_diagnostic(const Population& pop, bool use_cdp) {
    if (pop.size() == 0) return 0;
    std::vector<std::size_t> rank = nondominated_sort(pop.F, pop.cv, use_cdp);
    return *std::max_element(rank.begin(), rank.end()) + 1;
}

std::string emit_plotdata(const std::vector<RunSeries>& series) {
    // group by (algorithm, problem) preserving first-appearance order
    std::vector<std::pair<std::string, std::string>> groups;
    for (const auto& s : series) {
        std::pair<std::string, std::string> key{s.algorithm, s.problem};
        if (std::find(groups.begin(), groups.end(), key) == groups.end())
            groups.push_back(key);
    }
    std::ostringstream csv;
    csv << "algorithm,problem,gen,metric,mean,std\n";
    for (const auto& [alg, prob] : groups) {
        std::vector<const RunSeries*> members;
        for (const auto& s : series)
            if (s.algorithm == alg && s.problem == prob) members.push_back(&s);
        std::size_t gens = members.front()->history.size();
        bool has_igd = !members.front()->history.empty() &&
                       members.front()->history.front().igd.has_value();
        bool has_hv = !members.front()->history.empty() &&
                      members.front()->history.front().hv.has_value();
        for (const RunSeries* s : members) {
            if (s->history.size() != gens)
                throw std::invalid_argument(
                    "emit_plotdata: generation counts differ within " + alg +
                    "/" + prob);
            for (const GenRecord& r : s->history)
                if (r.igd.has_value() != has_igd || r.hv.has_value() != has_hv)
                    throw std::invalid_argument(
                        "emit_plotdata: mixed record schemas within " + alg +
                        "/" + prob);
        }
        for (std::size_t g = 0; g < gens; ++g) {
            auto emit = [&](const std::string& metric, auto getter) {
                std::vector<double> v;
                for (const RunSeries* s : members) v.push_back(getter(s->history[g]));
                double mean = mean_of(v);
                csv << alg << ',' << prob << ','
                    << members.front()->history[g].gen << ',' << metric << ','
                    << fmt(mean) << ',' << fmt(std_of(v, mean)) << '\n';
            };
            emit("feasible_ratio",
                 [](const GenRecord& r) { return r.feasible_ratio; });
            if (has_igd) emit("igd", [](const GenRecord& r) { return *r.igd; });
            if (has_hv) emit("hv", [](const GenRecord& r) { return *r.hv; });
        }
    }
    return csv.str();
}

}  // namespace gmpea
