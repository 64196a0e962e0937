#include "gmpea/record.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gmpea {

using ordered_json = nlohmann::ordered_json;

std::string record_to_jsonl(const std::vector<GenRecord>& history) {
    std::ostringstream os;
    for (const GenRecord& r : history) {
        ordered_json j;
        j["gen"] = r.gen;
        j["evals"] = r.evals;
        j["wall_ms"] = r.wall_ms;
        j["feasible_ratio"] = r.feasible_ratio;
        // JSON has no infinity literal; null stands in for "no feasible point"
        if (r.igd)
            j["igd"] = std::isfinite(*r.igd) ? ordered_json(*r.igd)
                                             : ordered_json(nullptr);
        if (r.hv) j["hv"] = *r.hv;
        os << j.dump() << "\n";
    }
    return os.str();
}

std::vector<GenRecord> parse_jsonl(const std::string& text) {
    std::vector<GenRecord> out;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const std::exception& e) {
            throw std::runtime_error("parse_jsonl: bad JSON on line " +
                                     std::to_string(lineno) + ": " + e.what());
        }
        GenRecord r;
        r.gen = j.at("gen").get<std::size_t>();
        r.evals = j.at("evals").get<std::size_t>();
        r.wall_ms = j.at("wall_ms").get<double>();
        r.feasible_ratio = j.at("feasible_ratio").get<double>();
        if (j.contains("igd"))
            r.igd = j["igd"].is_null() ? std::numeric_limits<double>::infinity()
                                       : j["igd"].get<double>();
        if (j.contains("hv")) r.hv = j["hv"].get<double>();
        out.push_back(r);
    }
    return out;
}

void save_records(const std::vector<GenRecord>& history, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_records: cannot open " + path);
    os << record_to_jsonl(history);
}

std::vector<GenRecord> load_records(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_records: cannot open " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_jsonl(buf.str());
}

}  // namespace gmpea
