#include "gmpea/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gmpea/rng.hpp"
#include "gmpea/scalarize.hpp"

namespace gmpea {

double igd(const Matrix& approx, const Matrix& reference) {
    if (reference.rows == 0)
        throw std::invalid_argument("igd: empty reference front");
    if (approx.rows == 0) return std::numeric_limits<double>::infinity();
    if (approx.cols != reference.cols)
        throw std::invalid_argument("igd: objective count mismatch");
    double total = 0.0;
    for (std::size_t r = 0; r < reference.rows; ++r) {
        double best = std::numeric_limits<double>::infinity();
        auto ref = reference.row(r);
        for (std::size_t a = 0; a < approx.rows; ++a) {
            auto pt = approx.row(a);
            double s = 0.0;
            for (std::size_t c = 0; c < approx.cols; ++c) {
                double d = pt[c] - ref[c];
                s += d * d;
            }
            best = std::min(best, s);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(reference.rows);
}

namespace {

// rows strictly inside the reference box, mutually nondominated, deduplicated
std::vector<std::size_t> hv_relevant(const Matrix& P,
                                     std::span<const double> ref) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < P.rows; ++i) {
        auto pi = P.row(i);
        bool inside = true;
        for (std::size_t c = 0; c < P.cols; ++c)
            if (!(pi[c] < ref[c])) inside = false;
        if (!inside) continue;
        bool skip = false;
        for (std::size_t j = 0; j < P.rows && !skip; ++j) {
            if (j == i) continue;
            if (pareto_dominates(P.row(j), pi)) skip = true;
            if (j < i && std::equal(pi.begin(), pi.end(), P.row(j).begin()))
                skip = true;
        }
        if (!skip) keep.push_back(i);
    }
    return keep;
}

double hv2(std::vector<std::pair<double, double>> pts, double r0, double r1) {
    if (pts.empty()) return 0.0;
    std::sort(pts.begin(), pts.end());
    double vol = 0.0, prev_y = r1;
    for (auto [x, y] : pts) {
        if (y < prev_y) {
            vol += (r0 - x) * (prev_y - y);
            prev_y = y;
        }
    }
    return vol;
}

double hv3(const Matrix& P, const std::vector<std::size_t>& keep,
           std::span<const double> ref) {
    std::vector<std::size_t> order = keep;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return P.at(a, 2) < P.at(b, 2);
    });
    double vol = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        double z0 = P.at(order[k], 2);
        double z1 = k + 1 < order.size() ? P.at(order[k + 1], 2) : ref[2];
        if (z1 <= z0) continue;
        std::vector<std::pair<double, double>> slab;
        for (std::size_t t = 0; t <= k; ++t)
            slab.emplace_back(P.at(order[t], 0), P.at(order[t], 1));
        vol += (z1 - z0) * hv2(std::move(slab), ref[0], ref[1]);
    }
    return vol;
}

double hv_mc(const Matrix& P, const std::vector<std::size_t>& keep,
             std::span<const double> ref) {
    std::size_t m = P.cols;
    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    for (std::size_t i : keep)
        for (std::size_t c = 0; c < m; ++c) lo[c] = std::min(lo[c], P.at(i, c));
    double box = 1.0;
    for (std::size_t c = 0; c < m; ++c) box *= ref[c] - lo[c];
    if (box <= 0.0) return 0.0;
    Rng rng(0x48563D);
    const std::size_t samples = 1000000;
    std::size_t hits = 0;
    std::vector<double> x(m);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t c = 0; c < m; ++c) x[c] = rng.uniform(lo[c], ref[c]);
        for (std::size_t i : keep) {
            bool dom = true;
            for (std::size_t c = 0; c < m && dom; ++c)
                if (P.at(i, c) > x[c]) dom = false;
            if (dom) {
                ++hits;
                break;
            }
        }
    }
    return box * static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace

double hypervolume(const Matrix& points, std::span<const double> ref_point) {
    if (points.cols != ref_point.size())
        throw std::invalid_argument("hypervolume: reference dimension mismatch");
    std::vector<std::size_t> keep = hv_relevant(points, ref_point);
    if (keep.empty()) return 0.0;
    if (points.cols == 2) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i : keep) pts.emplace_back(points.at(i, 0), points.at(i, 1));
        return hv2(std::move(pts), ref_point[0], ref_point[1]);
    }
    if (points.cols == 3) return hv3(points, keep, ref_point);
    return hv_mc(points, keep, ref_point);
}

Matrix normalize_for_hv(const Matrix& F, std::span<const double> ideal,
                        std::span<const double> nadir) {
    if (ideal.size() != F.cols || nadir.size() != F.cols)
        throw std::invalid_argument("normalize_for_hv: dimension mismatch");
    Matrix out(F.rows, F.cols);
    for (std::size_t c = 0; c < F.cols; ++c) {
        double range = nadir[c] - ideal[c];
        if (range <= 0.0)
            throw std::invalid_argument("normalize_for_hv: degenerate axis " +
                                        std::to_string(c));
        for (std::size_t r = 0; r < F.rows; ++r)
            out.at(r, c) = (F.at(r, c) - ideal[c]) / range;
    }
    return out;
}

Matrix metric_front(const Population& pop) {
    std::vector<std::size_t> feas;
    for (std::size_t i = 0; i < pop.size(); ++i)
        if (pop.cv[i] == 0.0) feas.push_back(i);
    std::vector<std::size_t> keep;
    for (std::size_t a = 0; a < feas.size(); ++a) {
        auto fa = pop.F.row(feas[a]);
        bool skip = false;
        for (std::size_t b = 0; b < feas.size() && !skip; ++b) {
            if (a == b) continue;
            auto fb = pop.F.row(feas[b]);
            if (pareto_dominates(fb, fa)) skip = true;
            if (b < a && std::equal(fa.begin(), fa.end(), fb.begin())) skip = true;
        }
        if (!skip) keep.push_back(feas[a]);
    }
    Matrix out(keep.size(), pop.F.cols);
    for (std::size_t r = 0; r < keep.size(); ++r)
        std::copy_n(pop.F.row(keep[r]).data(), pop.F.cols, out.row(r).data());
    return out;
}

MetricReport metric_report(const Population& pop, const Matrix* reference_front,
                           std::span<const double> ideal,
                           std::span<const double> nadir) {
    MetricReport rep;
    Matrix front = metric_front(pop);
    rep.n_points = front.rows;
    std::size_t feas = 0;
    for (double v : pop.cv)
        if (v == 0.0) ++feas;
    rep.feasible_ratio = pop.size() == 0
                             ? 0.0
                             : static_cast<double>(feas) /
                                   static_cast<double>(pop.size());
    rep.no_feasible = feas == 0;
    if (reference_front) rep.igd = igd(front, *reference_front);
    if (!ideal.empty()) {
        if (front.rows == 0) {
            rep.hv = 0.0;
        } else {
            Matrix norm = normalize_for_hv(front, ideal, nadir);
            std::vector<double> ref(front.cols, 1.1);
            rep.hv = hypervolume(norm, ref);
        }
    }
    return rep;
}

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a,
                                 const std::vector<double>& b, double alpha) {
    std::size_t n1 = a.size(), n2 = b.size();
    if (n1 == 0 || n2 == 0)
        throw std::invalid_argument("wilcoxon_rank_sum: empty sample");
    std::vector<std::pair<double, int>> all;
    for (double v : a) all.emplace_back(v, 0);
    for (double v : b) all.emplace_back(v, 1);
    std::sort(all.begin(), all.end());
    std::size_t N = n1 + n2;
    std::vector<double> rank(N);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < N;) {
        std::size_t j = i;
        while (j < N && all[j].first == all[i].first) ++j;
        double avg = 0.5 * static_cast<double>(i + j - 1) + 1.0;
        for (std::size_t k = i; k < j; ++k) rank[k] = avg;
        double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    double w = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        if (all[i].second == 0) w += rank[i];
    double mean = static_cast<double>(n1) * (static_cast<double>(N) + 1.0) / 2.0;
    double var = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                 (static_cast<double>(N) + 1.0 -
                  tie_term / (static_cast<double>(N) * (static_cast<double>(N) - 1.0)));
    WilcoxonResult res;
    if (var <= 0.0) return res;  // all values identical
    double diff = w - mean;
    double cc = diff > 0.5 ? -0.5 : (diff < -0.5 ? 0.5 : -diff);
    double z = (diff + cc) / std::sqrt(var);
    res.p_value = 2.0 * (1.0 - std_normal_cdf(std::abs(z)));
    if (res.p_value < alpha) {
        double ma = median(a), mb = median(b);
        res.direction = ma < mb ? -1 : (ma > mb ? 1 : 0);
    }
    return res;
}

}  // namespace gmpea
