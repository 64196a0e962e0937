#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gmpea/experiment.hpp"
#include "gmpea/record.hpp"
#include "gmpea/wta.hpp"

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << text;
}

void check_precision(const std::string& precision) {
    if (precision != "f64")
        throw CLI::ValidationError(
            "--precision", "only the f64 pipeline is wired; got " + precision);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"batched constrained multiobjective optimization bench"};
    app.require_subcommand(1);

    std::string config_path, output_dir, precision = "f64";
    std::size_t workers = 0;

    auto* run = app.add_subcommand("run", "run an experiment matrix from a config");
    run->add_option("-c,--config", config_path, "experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("-o,--output", output_dir, "override the output directory");
    run->add_option("-w,--workers", workers, "override the worker count");
    run->add_option("-p,--precision", precision, "float pipeline (f64)");

    std::string scale_problem = "LIRCMOP1";
    std::vector<std::string> scale_algorithms = {"gmpea", "ccmo"};
    std::vector<std::size_t> scale_sizes = {100, 200};
    std::size_t scale_gens = 5;
    std::uint64_t scale_seed = 1;
    std::string scale_out = "scaling.csv";
    auto* scale = app.add_subcommand("scale", "population-size scaling study");
    scale->add_option("--problem", scale_problem, "problem name");
    scale->add_option("--algorithms", scale_algorithms, "algorithms to time");
    scale->add_option("--sizes", scale_sizes, "population sizes, ascending");
    scale->add_option("--generations", scale_gens, "generations per timing run");
    scale->add_option("--seed", scale_seed, "run seed");
    scale->add_option("-o,--output", scale_out, "CSV output path");
    scale->add_option("-p,--precision", precision, "float pipeline (f64)");

    auto* aggregate =
        app.add_subcommand("aggregate", "rebuild results.csv from summary.jsonl");
    aggregate->add_option("-c,--config", config_path, "experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    aggregate->add_option("-o,--output", output_dir,
                          "directory holding summary.jsonl");

    auto* plotdata = app.add_subcommand(
        "plotdata", "per-generation metric curves from run records");
    plotdata->add_option("-c,--config", config_path, "experiment config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    plotdata->add_option("-o,--output", output_dir,
                         "directory holding the run records");

    std::string rank_problem = "LIRCMOP5";
    std::size_t rank_n = 500, rank_seeds = 10, rank_gens = 1;
    std::string rank_out;
    auto* rankdiag = app.add_subcommand(
        "rankdiag", "nondominated-rank counts of early-generation populations");
    rankdiag->add_option("--problem", rank_problem, "problem name");
    rankdiag->add_option("--n", rank_n, "population size");
    rankdiag->add_option("--seeds", rank_seeds, "number of seeded populations");
    rankdiag->add_option("--gens", rank_gens,
                         "generations to evolve before diagnosing (0 = random init)");
    rankdiag->add_option("-o,--output", rank_out, "CSV output path (default stdout)");

    std::string front_problem;
    std::size_t front_points = 1000;
    std::string front_out;
    auto* front = app.add_subcommand("front", "write a reference front file");
    front->add_option("--problem", front_problem, "problem name")->required();
    front->add_option("--points", front_points, "number of front points");
    front->add_option("-o,--output", front_out, "output path")->required();

    std::string wta_id, wta_out;
    auto* wta = app.add_subcommand("wta", "export a built-in scenario file");
    wta->add_option("--scenario", wta_id, "scenario id (P1..P10)")->required();
    wta->add_option("-o,--output", wta_out, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        check_precision(precision);
        if (run->parsed()) {
            gmpea::ExperimentConfig cfg =
                gmpea::load_experiment_config(config_path);
            if (!output_dir.empty()) cfg.output_dir = output_dir;
            if (workers != 0) cfg.workers = workers;
            gmpea::ExperimentResult res = gmpea::run_experiment(cfg);
            std::cout << res.jsonl_paths.size() << " runs -> " << res.csv_path
                      << "\n";
        } else if (scale->parsed()) {
            std::string csv = gmpea::scaling_study(scale_algorithms, scale_problem,
                                                   scale_sizes, scale_gens,
                                                   scale_seed);
            write_text(scale_out, csv);
            std::cout << scale_out << "\n";
        } else if (aggregate->parsed()) {
            gmpea::ExperimentConfig cfg =
                gmpea::load_experiment_config(config_path);
            if (!output_dir.empty()) cfg.output_dir = output_dir;
            auto summaries =
                gmpea::load_summaries(cfg.output_dir + "/summary.jsonl");
            std::string csv = gmpea::aggregate_results(cfg, summaries);
            write_text(cfg.output_dir + "/results.csv", csv);
            std::cout << cfg.output_dir + "/results.csv" << "\n";
        } else if (plotdata->parsed()) {
            gmpea::ExperimentConfig cfg =
                gmpea::load_experiment_config(config_path);
            if (!output_dir.empty()) cfg.output_dir = output_dir;
            std::vector<gmpea::RunSeries> series;
            for (const auto& prob : cfg.problems)
                for (const auto& alg : cfg.algorithms)
                    for (auto seed : cfg.seeds) {
                        std::string path = cfg.output_dir + "/" + alg + "_" +
                                           prob + "_s" + std::to_string(seed) +
                                           ".jsonl";
                        series.push_back(
                            {alg, prob, gmpea::load_records(path)});
                    }
            std::string csv = gmpea::emit_plotdata(series);
            write_text(cfg.output_dir + "/plotdata.csv", csv);
            std::cout << cfg.output_dir + "/plotdata.csv" << "\n";
        } else if (rankdiag->parsed()) {
            gmpea::ProblemDef prob = gmpea::make_problem(rank_problem);
            std::ostringstream csv;
            csv << "problem,seed,cdp_ranks,unconstrained_ranks\n";
            for (std::size_t s = 1; s <= rank_seeds; ++s) {
                gmpea::Population pop;
                if (rank_gens == 0) {
                    gmpea::Rng rng(s);
                    gmpea::Matrix X(rank_n, prob.d);
                    for (std::size_t r = 0; r < rank_n; ++r)
                        for (std::size_t c = 0; c < prob.d; ++c)
                            X.at(r, c) = rng.uniform(prob.bounds[c].first,
                                                     prob.bounds[c].second);
                    pop = gmpea::evaluate_population(prob, std::move(X));
                } else {
                    gmpea::RunConfig rc;
                    rc.n = rank_n;
                    rc.k_max = rank_gens;
                    rc.seed = s;
                    rc.op = gmpea::VariationOp::de;
                    pop = gmpea::run_gmpea(prob, rc).pop1;
                }
                csv << rank_problem << ',' << s << ','
                    << gmpea::rank_diagnostic(pop, true) << ','
                    << gmpea::rank_diagnostic(pop, false) << '\n';
            }
            if (rank_out.empty())
                std::cout << csv.str();
            else {
                write_text(rank_out, csv.str());
                std::cout << rank_out << "\n";
            }
        } else if (front->parsed()) {
            gmpea::ProblemDef prob = gmpea::make_problem(front_problem);
            gmpea::Matrix F = gmpea::pf_reference(prob, front_points);
            gmpea::save_front(F, prob.name, front_out);
            std::cout << front_out << " (" << F.rows << " points)\n";
        } else if (wta->parsed()) {
            gmpea::save_wta(gmpea::wta_scenario(wta_id), wta_out);
            std::cout << wta_out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
