#include "gmpea/wta.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gmpea/rng.hpp"

namespace gmpea {

std::size_t WTAInstance::total_slots() const {
    return std::accumulate(max_strikes.begin(), max_strikes.end(), std::size_t{0});
}

std::size_t WTAInstance::gene_index(std::size_t i, std::size_t k, std::size_t m) const {
    std::size_t slot_base = 0;
    for (std::size_t t = 0; t < i; ++t) slot_base += max_strikes[t];
    return (slot_base + k) * n_vehicles + m;
}

WTAInstance wta_scenario(const std::string& id) {
    if (id.size() < 2 || id[0] != 'P')
        throw std::invalid_argument("unknown WTA scenario: " + id);
    int num = std::stoi(id.substr(1));
    if (num < 1 || num > 10)
        throw std::invalid_argument("unknown WTA scenario: " + id);
    WTAInstance inst;
    inst.scenario = id;
    // scenario sizes grow with the index; probabilities come from a seeded
    // stream so every build sees identical instances
    inst.n_targets = 4 + 2 * static_cast<std::size_t>(num - 1);
    inst.n_vehicles = 3 + (num - 1) / 2;
    inst.max_strikes.assign(inst.n_targets, 0);
    inst.capacity.assign(inst.n_vehicles, 0);
    Rng rng(0x57A0000 + static_cast<std::uint64_t>(num));
    for (std::size_t i = 0; i < inst.n_targets; ++i)
        inst.max_strikes[i] = 1 + rng.uniform_index(3);  // 1..3 strikes
    for (std::size_t m = 0; m < inst.n_vehicles; ++m)
        inst.capacity[m] = 2 + rng.uniform_index(3);  // 2..4 missiles
    inst.p.resize(inst.n_targets);
    for (std::size_t i = 0; i < inst.n_targets; ++i) {
        inst.p[i].resize(inst.max_strikes[i]);
        for (std::size_t k = 0; k < inst.max_strikes[i]; ++k)
            inst.p[i][k] = 0.35 + 0.6 * rng.uniform();
    }
    return inst;
}

std::vector<std::uint8_t> decode_wta(std::span<const double> genes,
                                     const WTAInstance& inst) {
    if (genes.size() != inst.gene_count())
        throw std::invalid_argument("decode_wta: wrong gene count");
    std::vector<std::uint8_t> x(genes.size(), 0);
    // candidate assignments ordered by descending gene value, ties by index
    std::vector<std::size_t> cand;
    for (std::size_t g = 0; g < genes.size(); ++g)
        if (genes[g] >= 0.5) cand.push_back(g);
    std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
        return genes[a] > genes[b];
    });
    std::vector<std::size_t> load(inst.n_vehicles, 0);
    for (std::size_t g : cand) {
        std::size_t vehicle = g % inst.n_vehicles;
        if (load[vehicle] < inst.capacity[vehicle]) {
            x[g] = 1;
            ++load[vehicle];
        }
    }
    return x;
}

void evaluate_wta(const WTAInstance& inst, std::span<const std::uint8_t> x,
                  std::span<double> f, std::span<double> g) {
    for (auto v : x)
        if (v > 1) throw std::invalid_argument("evaluate_wta: non-binary assignment");
    double f1 = 0.0, f2 = 0.0;
    std::size_t slot_base = 0;
    std::vector<double> load(inst.n_vehicles, 0.0);
    for (std::size_t i = 0; i < inst.n_targets; ++i) {
        double survive = 1.0;
        for (std::size_t k = 0; k < inst.max_strikes[i]; ++k) {
            double hits = 0.0;
            for (std::size_t m = 0; m < inst.n_vehicles; ++m) {
                double xv = x[(slot_base + k) * inst.n_vehicles + m];
                hits += xv;
                load[m] += xv;
            }
            survive *= 1.0 - inst.p[i][k] * hits;
            f2 += hits;
        }
        f1 += 1.0 - survive;
        slot_base += inst.max_strikes[i];
    }
    f[0] = f1;
    f[1] = f2;
    // per-vehicle capacity, then per-target strike budget
    for (std::size_t m = 0; m < inst.n_vehicles; ++m)
        g[m] = load[m] - static_cast<double>(inst.capacity[m]);
    slot_base = 0;
    for (std::size_t i = 0; i < inst.n_targets; ++i) {
        double strikes = 0.0;
        for (std::size_t k = 0; k < inst.max_strikes[i]; ++k)
            for (std::size_t m = 0; m < inst.n_vehicles; ++m)
                strikes += x[(slot_base + k) * inst.n_vehicles + m];
        g[inst.n_vehicles + i] = strikes - static_cast<double>(inst.max_strikes[i]);
        slot_base += inst.max_strikes[i];
    }
}

ProblemDef make_wta_problem(const WTAInstance& inst) {
    ProblemDef p;
    p.name = "WTA-" + inst.scenario;
    p.d = inst.gene_count();
    p.m = 2;
    p.n_ineq = inst.n_vehicles + inst.n_targets;
    p.bounds.assign(p.d, {0.0, 1.0});
    p.encoding = ProblemDef::Encoding::wta;
    p.eval_row = [inst](std::span<const double> x, std::span<double> f,
                        std::span<double> g) {
        auto a = decode_wta(x, inst);
        evaluate_wta(inst, a, f, g);
        // solvers minimize; flip the interception term so more intercepted
        // targets is better
        f[0] = -f[0];
    };
    return p;
}

void save_wta(const WTAInstance& inst, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_wta: cannot open " + path);
    os << "scenario " << inst.scenario << "\n";
    os << "targets " << inst.n_targets << "\n";
    os << "vehicles " << inst.n_vehicles << "\n";
    os << "strikes";
    for (auto s : inst.max_strikes) os << ' ' << s;
    os << "\ncapacity";
    for (auto c : inst.capacity) os << ' ' << c;
    os << "\n";
    os.precision(17);
    for (std::size_t i = 0; i < inst.n_targets; ++i)
        for (std::size_t k = 0; k < inst.max_strikes[i]; ++k)
            os << "p " << i << ' ' << k << ' ' << inst.p[i][k] << "\n";
}

WTAInstance load_wta(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_wta: cannot open " + path);
    WTAInstance inst;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "scenario") {
            ls >> inst.scenario;
        } else if (key == "targets") {
            ls >> inst.n_targets;
        } else if (key == "vehicles") {
            ls >> inst.n_vehicles;
        } else if (key == "strikes") {
            std::size_t s;
            while (ls >> s) inst.max_strikes.push_back(s);
        } else if (key == "capacity") {
            std::size_t c;
            while (ls >> c) inst.capacity.push_back(c);
        } else if (key == "p") {
            std::size_t i, k;
            double prob;
            ls >> i >> k >> prob;
            if (inst.p.size() <= i) inst.p.resize(i + 1);
            if (inst.p[i].size() <= k) inst.p[i].resize(k + 1);
            inst.p[i][k] = prob;
        } else if (!key.empty()) {
            throw std::runtime_error("load_wta: unknown key '" + key + "' in " + path);
        }
    }
    if (inst.n_targets == 0 || inst.n_vehicles == 0 ||
        inst.max_strikes.size() != inst.n_targets ||
        inst.capacity.size() != inst.n_vehicles || inst.p.size() != inst.n_targets)
        throw std::runtime_error("load_wta: incomplete scenario in " + path);
    for (std::size_t i = 0; i < inst.n_targets; ++i) {
        if (inst.p[i].size() != inst.max_strikes[i])
            throw std::runtime_error("load_wta: probability table mismatch in " + path);
        for (double v : inst.p[i])
            if (!(v >= 0.0 && v <= 1.0))
                throw std::runtime_error("load_wta: probability out of range in " + path);
    }
    return inst;
}

}  // namespace gmpea
