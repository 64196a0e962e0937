#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gmpea/problems.hpp"
#include "gmpea/scalarize.hpp"

namespace gmpea {

namespace {

// indices of mutually nondominated rows (minimization)
std::vector<std::size_t> nondominated_rows(const Matrix& F) {
    std::vector<std::size_t> idx(F.rows);
    std::iota(idx.begin(), idx.end(), 0);
    if (F.cols == 2) {
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (F.at(a, 0) != F.at(b, 0)) return F.at(a, 0) < F.at(b, 0);
            return F.at(a, 1) < F.at(b, 1);
        });
        std::vector<std::size_t> keep;
        double best2 = std::numeric_limits<double>::infinity();
        for (std::size_t i : idx) {
            if (F.at(i, 1) < best2) {
                keep.push_back(i);
                best2 = F.at(i, 1);
            }
        }
        std::sort(keep.begin(), keep.end());
        return keep;
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < F.rows; ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < F.rows && !dominated; ++j)
            if (j != i && pareto_dominates(F.row(j), F.row(i))) dominated = true;
        if (!dominated) keep.push_back(i);
    }
    return keep;
}

Matrix take_rows(const Matrix& F, const std::vector<std::size_t>& rows) {
    Matrix out(rows.size(), F.cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        std::copy_n(F.row(rows[r]).data(), F.cols, out.row(r).data());
    return out;
}

}  // namespace

Matrix pf_reference(const ProblemDef& p, std::size_t n_points) {
    if (!p.front_candidates)
        throw std::runtime_error("pf_reference: no analytic front for " + p.name +
                                 "; use the hypervolume metric instead");
    ConstraintSpec cs = p.cspec();
    std::size_t oversample = std::max<std::size_t>(8 * n_points, 2000);
    // 3-objective dominance filtering is quadratic, keep the pool bounded
    if (p.m >= 3) oversample = std::min<std::size_t>(oversample, 12000);
    for (int attempt = 0; attempt < 4; ++attempt) {
        Matrix cand = p.front_candidates(oversample);
        EvalResult ev = evaluate(p, cand);
        std::vector<std::size_t> feasible;
        for (std::size_t r = 0; r < ev.G.rows; ++r)
            if (cv_from_raw(ev.G.row(r), cs) == 0.0) feasible.push_back(r);
        Matrix Ff = take_rows(ev.F, feasible);
        if (Ff.rows >= std::max<std::size_t>(n_points, 1)) {
            Matrix nd = take_rows(Ff, nondominated_rows(Ff));
            if (nd.rows >= n_points) return subsample_front(nd, n_points);
            if (attempt == 3) return nd;
        }
        oversample *= 4;
        if (p.m >= 3) oversample = std::min<std::size_t>(oversample, 50000);
    }
    throw std::runtime_error("pf_reference: could not build a feasible front for " +
                             p.name);
}

Matrix subsample_front(const Matrix& F, std::size_t k) {
    if (F.rows <= k || k == 0) return F;
    std::vector<std::size_t> idx(F.rows);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t c = 0; c < F.cols; ++c) {
            if (F.at(a, c) != F.at(b, c)) return F.at(a, c) < F.at(b, c);
        }
        return false;
    });
    Matrix out(k, F.cols);
    for (std::size_t r = 0; r < k; ++r) {
        std::size_t pick = r * (F.rows - 1) / (k - 1 == 0 ? 1 : k - 1);
        std::copy_n(F.row(idx[pick]).data(), F.cols, out.row(r).data());
    }
    return out;
}

void save_front(const Matrix& F, const std::string& problem_name,
                const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_front: cannot open " + path);
    os << "# " << problem_name << " m=" << F.cols << "\n";
    os.precision(17);
    for (std::size_t r = 0; r < F.rows; ++r) {
        auto row = F.row(r);
        for (std::size_t c = 0; c < F.cols; ++c) {
            if (c) os << ' ';
            os << row[c];
        }
        os << "\n";
    }
}

Matrix load_front(const std::string& path, std::string* problem_name) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_front: cannot open " + path);
    std::string header;
    std::getline(is, header);
    std::size_t m = 0;
    {
        std::istringstream hs(header);
        std::string hash, name, mfield;
        hs >> hash >> name >> mfield;
        if (hash != "#" || mfield.rfind("m=", 0) != 0)
            throw std::runtime_error("load_front: bad header in " + path);
        m = std::stoul(mfield.substr(2));
        if (problem_name) *problem_name = name;
    }
    std::vector<double> vals;
    double v;
    while (is >> v) vals.push_back(v);
    if (m == 0 || vals.size() % m != 0)
        throw std::runtime_error("load_front: malformed data in " + path);
    Matrix F(vals.size() / m, m);
    F.data = std::move(vals);
    return F;
}

}  // namespace gmpea
