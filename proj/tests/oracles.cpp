#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace oracle {

using gmpea::Matrix;
using gmpea::Population;

namespace {
constexpr double PI = std::numbers::pi;
}

// ---- scalarization ----

double pbi(std::span<const double> f, std::span<const double> w,
           std::span<const double> z, double theta) {
    double wn2 = 0.0;
    for (double v : w) wn2 += v * v;
    double wn = std::sqrt(wn2);
    double proj = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) proj += (f[i] - z[i]) * w[i];
    double d1 = std::abs(proj) / wn;
    double d2sq = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double r = (f[i] - z[i]) - d1 * (w[i] / wn);
        d2sq += r * r;
    }
    return d1 + theta * std::sqrt(d2sq);
}

double relu_sum(std::span<const double> a) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t blocked = a.size() - a.size() % 4;
    for (std::size_t i = 0; i < blocked; ++i) {
        double v = a[i] > 0.0 ? a[i] : 0.0;
        acc[i % 4] += v;
    }
    double s = ((acc[0] + acc[1]) + acc[2]) + acc[3];
    for (std::size_t i = blocked; i < a.size(); ++i)
        s += a[i] > 0.0 ? a[i] : 0.0;
    return s;
}

double cv(std::span<const double> raw, const gmpea::ConstraintSpec& spec) {
    double s = relu_sum(raw.subspan(0, spec.n_ineq));
    for (std::size_t j = spec.n_ineq; j < raw.size(); ++j) {
        double v = std::abs(raw[j]) - spec.delta;
        if (v > 0.0) s += v;
    }
    return s;
}

// ---- environmental selection ----

namespace {

void assign_row(Population& dst, std::size_t dr, const Population& src,
                std::size_t sr) {
    std::copy_n(src.X.row(sr).data(), src.X.cols, dst.X.row(dr).data());
    std::copy_n(src.F.row(sr).data(), src.F.cols, dst.F.row(dr).data());
    std::copy_n(src.C.row(sr).data(), src.C.cols, dst.C.row(dr).data());
    dst.cv[dr] = src.cv[sr];
}

}  // namespace

std::pair<Population, Population> op1(const Population& off1,
                                      const Population& off2,
                                      const gmpea::SelectionContext& ctx) {
    std::size_t n = off1.size();
    Population new1 = off1, new2 = off2;
    for (std::size_t i = 0; i < n; ++i) {
        double g1 = pbi(off1.F.row(i), ctx.W.row(i), ctx.z, ctx.theta);
        double g2 = pbi(off2.F.row(i), ctx.W.row(i), ctx.z, ctx.theta);
        double cv1 = off1.cv[i], cv2 = off2.cv[i];
        bool s1 = cv2 < cv1 || (cv1 == cv2 && g1 > g2);
        bool s2 = g2 > g1;
        if (s1) assign_row(new1, i, off2, i);
        if (s2) assign_row(new2, i, off1, i);
    }
    return {new1, new2};
}

std::pair<Marks, Marks> op2(const gmpea::NeighborhoodTopology& topo,
                            const Population& off1, const Population& off2,
                            const Population& pop1, const Population& pop2,
                            const gmpea::SelectionContext& ctx) {
    std::size_t n = off1.size();
    Marks m1, m2;
    m1.replace.resize(n);
    m2.replace.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        m1.replace[i].resize(topo.b1[i].size(), false);
        for (std::size_t l = 0; l < topo.b1[i].size(); ++l) {
            std::uint32_t j = topo.b1[i][l];
            double go = pbi(off1.F.row(i), ctx.W.row(j), ctx.z, ctx.theta);
            double gp = pbi(pop1.F.row(j), ctx.W.row(j), ctx.z, ctx.theta);
            double co = off1.cv[i], cp = pop1.cv[j];
            // feasibility priority: equal violation falls back to aggregation
            bool prefer = co == cp ? go < gp : co < cp;
            m1.replace[i][l] = prefer;
        }
        m2.replace[i].resize(topo.b2[i].size(), false);
        for (std::size_t l = 0; l < topo.b2[i].size(); ++l) {
            std::uint32_t j = topo.b2[i][l];
            double go = pbi(off2.F.row(i), ctx.W.row(j), ctx.z, ctx.theta);
            double gp = pbi(pop2.F.row(j), ctx.W.row(j), ctx.z, ctx.theta);
            m2.replace[i][l] = go < gp;
        }
    }
    return {m1, m2};
}

namespace {

Population resolve(const std::vector<std::vector<std::uint32_t>>& nb,
                   const std::vector<std::vector<bool>>& replace,
                   const Population& pop, const Population& off,
                   const gmpea::SelectionContext& ctx, bool key_on_cv) {
    std::size_t n = pop.size();
    // claimed[i][j]: offspring i wants parent slot j
    std::vector<std::vector<bool>> claimed(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < nb[i].size(); ++l)
            if (replace[i][l]) claimed[i][nb[i][l]] = true;
    Population out = pop;
    for (std::size_t j = 0; j < n; ++j) {
        // candidate array: position i holds offspring i when it claimed this
        // slot, the incumbent parent otherwise; first minimum wins
        bool have = false;
        double best_cv = 0.0, best_g = 0.0;
        bool best_is_off = false;
        std::size_t best_src = 0;
        bool any_claim = false;
        for (std::size_t i = 0; i < n; ++i) {
            bool is_off = claimed[i][j];
            any_claim = any_claim || is_off;
            double ccv = is_off ? off.cv[i] : pop.cv[j];
            double cg = is_off
                            ? pbi(off.F.row(i), ctx.W.row(j), ctx.z, ctx.theta)
                            : pbi(pop.F.row(j), ctx.W.row(j), ctx.z, ctx.theta);
            bool wins;
            if (!have) {
                wins = true;
            } else if (key_on_cv) {
                wins = ccv < best_cv || (ccv == best_cv && cg < best_g);
            } else {
                wins = cg < best_g;
            }
            if (wins) {
                have = true;
                best_cv = ccv;
                best_g = cg;
                best_is_off = is_off;
                best_src = i;
            }
        }
        if (any_claim && best_is_off) assign_row(out, j, off, best_src);
    }
    return out;
}

}  // namespace

std::pair<Population, Population> op3(const gmpea::NeighborhoodTopology& topo,
                                      const Marks& m1, const Marks& m2,
                                      const Population& pop1,
                                      const Population& pop2,
                                      const Population& off1,
                                      const Population& off2,
                                      const gmpea::SelectionContext& ctx) {
    return {resolve(topo.b1, m1.replace, pop1, off1, ctx, true),
            resolve(topo.b2, m2.replace, pop2, off2, ctx, false)};
}

std::pair<Population, Population> environmental_selection(
    const Population& pop1, const Population& pop2, Population off1,
    Population off2, const gmpea::NeighborhoodTopology& topo,
    const gmpea::SelectionContext& ctx) {
    auto [o1, o2] = op1(off1, off2, ctx);
    auto [m1, m2] = op2(topo, o1, o2, pop1, pop2, ctx);
    return op3(topo, m1, m2, pop1, pop2, o1, o2, ctx);
}

// ---- structure oracles ----

std::vector<std::vector<std::uint32_t>> knn(const Matrix& W, std::size_t t) {
    std::size_t n = W.rows;
    std::vector<std::vector<std::uint32_t>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::pair<double, std::uint32_t>> d;
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < W.cols; ++c) {
                double v = W.at(i, c) - W.at(j, c);
                s += v * v;
            }
            d.emplace_back(s, static_cast<std::uint32_t>(j));
        }
        std::stable_sort(d.begin(), d.end(),
                         [](const auto& a, const auto& b) {
                             if (a.first != b.first) return a.first < b.first;
                             return a.second < b.second;
                         });
        for (std::size_t k = 0; k < t; ++k) out[i].push_back(d[k].second);
    }
    return out;
}

namespace {

bool dominates_pair(const Matrix& F, const std::vector<double>& cv_vals,
                    std::size_t a, std::size_t b, bool use_cdp) {
    if (use_cdp) {
        double ca = cv_vals[a], cb = cv_vals[b];
        if (ca == 0.0 && cb > 0.0) return true;
        if (ca > 0.0 && cb == 0.0) return false;
        if (ca > 0.0 && cb > 0.0) return ca < cb;
    }
    bool strict = false;
    for (std::size_t c = 0; c < F.cols; ++c) {
        if (F.at(a, c) > F.at(b, c)) return false;
        if (F.at(a, c) < F.at(b, c)) strict = true;
    }
    return strict;
}

}  // namespace

std::vector<std::size_t> nds(const Matrix& F, const std::vector<double>& cv_vals,
                             bool use_cdp) {
    std::size_t n = F.rows;
    std::vector<std::size_t> rank(n, 0);
    std::vector<bool> assigned(n, false);
    std::size_t done = 0, r = 0;
    while (done < n) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < n; ++i) {
            if (assigned[i]) continue;
            bool dominated = false;
            for (std::size_t j = 0; j < n && !dominated; ++j)
                if (j != i && !assigned[j] &&
                    dominates_pair(F, cv_vals, j, i, use_cdp))
                    dominated = true;
            if (!dominated) front.push_back(i);
        }
        for (std::size_t i : front) {
            rank[i] = r;
            assigned[i] = true;
        }
        done += front.size();
        ++r;
    }
    return rank;
}

std::vector<double> spea2(const Matrix& F, const std::vector<double>& cv_vals,
                          bool use_cdp) {
    std::size_t n = F.rows;
    std::vector<double> strength(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && dominates_pair(F, cv_vals, i, j, use_cdp))
                strength[i] += 1.0;
    std::size_t k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    if (k >= n) k = n > 1 ? n - 1 : 0;
    std::vector<double> fit(n);
    for (std::size_t i = 0; i < n; ++i) {
        double raw = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && dominates_pair(F, cv_vals, j, i, use_cdp))
                raw += strength[j];
        std::vector<double> d;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double s = 0.0;
            for (std::size_t c = 0; c < F.cols; ++c) {
                double v = F.at(i, c) - F.at(j, c);
                s += v * v;
            }
            d.push_back(s);
        }
        std::sort(d.begin(), d.end());
        double sigma = d.empty() ? 0.0 : std::sqrt(d[k < d.size() ? k : d.size() - 1]);
        fit[i] = raw + 1.0 / (sigma + 2.0);
    }
    return fit;
}

double igd(const Matrix& approx, const Matrix& reference) {
    if (approx.rows == 0) return std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (std::size_t r = 0; r < reference.rows; ++r) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < approx.rows; ++a) {
            double s = 0.0;
            for (std::size_t c = 0; c < approx.cols; ++c) {
                double d = approx.at(a, c) - reference.at(r, c);
                s += d * d;
            }
            double dist = std::sqrt(s);
            if (dist < best) best = dist;
        }
        total += best;
    }
    return total / static_cast<double>(reference.rows);
}

// ---- benchmark problems ----

namespace {

// LIRCMOP1-4 distance sums: even-position variables (1-based index 2,4,...)
// track cos(0.5 pi x1), odd ones (3,5,...) track sin(0.5 pi x1)
void lir_dist_fixed(std::span<const double> x, double& gs, double& gc) {
    gs = 0.0;
    gc = 0.0;
    double sv = std::sin(0.5 * PI * x[0]);
    double cva = std::cos(0.5 * PI * x[0]);
    for (std::size_t idx = 3; idx <= x.size(); idx += 2) {
        double t = x[idx - 1] - sv;
        gs += t * t;
    }
    for (std::size_t idx = 2; idx <= x.size(); idx += 2) {
        double t = x[idx - 1] - cva;
        gc += t * t;
    }
}

void lir_dist_shifted(std::span<const double> x, double& gs, double& gc) {
    gs = 0.0;
    gc = 0.0;
    double n = static_cast<double>(x.size());
    for (std::size_t idx = 3; idx <= x.size(); idx += 2) {
        double t = x[idx - 1] -
                   std::sin(0.5 * static_cast<double>(idx) * PI * x[0] / n);
        gs += t * t;
    }
    for (std::size_t idx = 2; idx <= x.size(); idx += 2) {
        double t = x[idx - 1] -
                   std::cos(0.5 * static_cast<double>(idx) * PI * x[0] / n);
        gc += t * t;
    }
}

double ellipse(double f1, double f2, double p, double q, double a, double b) {
    const double th = -0.25 * PI;
    double u = (f1 - p) * std::cos(th) - (f2 - q) * std::sin(th);
    double v = (f1 - p) * std::sin(th) + (f2 - q) * std::cos(th);
    return 0.1 - u * u / (a * a) - v * v / (b * b);
}

bool lircmop(int id, std::span<const double> x, std::vector<double>& f,
             std::vector<double>& g) {
    if (id <= 4) {
        double gs, gc;
        lir_dist_fixed(x, gs, gc);
        f.assign(2, 0.0);
        f[0] = x[0] + gs;
        f[1] = (id % 2 == 1 ? 1.0 - x[0] * x[0] : 1.0 - std::sqrt(x[0])) + gc;
        g.assign(id <= 2 ? 2 : 3, 0.0);
        g[0] = -((0.51 - gs) * (gs - 0.5));
        g[1] = -((0.51 - gc) * (gc - 0.5));
        if (id > 2) g[2] = 0.5 - std::sin(20.0 * PI * x[0]);
        return true;
    }
    if (id <= 8) {
        double gs, gc;
        lir_dist_shifted(x, gs, gc);
        f.assign(2, 0.0);
        f[0] = x[0] + 10.0 * gs + 0.7057;
        f[1] = (id % 2 == 1 ? 1.0 - std::sqrt(x[0]) : 1.0 - x[0] * x[0]) +
               10.0 * gc + 0.7057;
        if (id == 5) {
            g = {ellipse(f[0], f[1], 1.6, 1.6, 2.0, 4.0),
                 ellipse(f[0], f[1], 2.5, 2.5, 2.0, 8.0)};
        } else if (id == 6) {
            g = {ellipse(f[0], f[1], 1.8, 1.8, 2.0, 8.0),
                 ellipse(f[0], f[1], 2.8, 2.8, 2.0, 8.0)};
        } else {
            g = {ellipse(f[0], f[1], 1.2, 1.2, 2.0, 6.0),
                 ellipse(f[0], f[1], 2.25, 2.25, 2.5, 12.0),
                 ellipse(f[0], f[1], 3.5, 3.5, 2.5, 10.0)};
        }
        return true;
    }
    if (id <= 12) {
        double gs, gc;
        lir_dist_shifted(x, gs, gc);
        f.assign(2, 0.0);
        f[0] = 1.7057 * x[0] * (10.0 * gs + 1.0);
        f[1] = 1.7057 *
               (id == 10 || id == 11 ? 1.0 - std::sqrt(x[0]) : 1.0 - x[0] * x[0]) *
               (10.0 * gc + 1.0);
        double p, q, a, b, level;
        if (id == 9) {
            p = 1.4; q = 1.4; a = 1.5; b = 6.0; level = 2.0;
        } else if (id == 10) {
            p = 1.1; q = 1.2; a = 2.0; b = 4.0; level = 1.0;
        } else if (id == 11) {
            p = 1.2; q = 1.2; a = 1.5; b = 5.0; level = 2.1;
        } else {
            p = 1.6; q = 1.6; a = 1.5; b = 6.0; level = 2.5;
        }
        const double al = 0.25 * PI;
        g.assign(2, 0.0);
        g[0] = ellipse(f[0], f[1], p, q, a, b);
        g[1] = level - (f[0] * std::sin(al) + f[1] * std::cos(al) -
                        std::sin(4.0 * PI * (f[0] * std::cos(al) -
                                             f[1] * std::sin(al))));
        return true;
    }
    // 13 / 14
    double gd = 0.0;
    for (std::size_t i = 2; i < x.size(); ++i)
        gd += 10.0 * (x[i] - 0.5) * (x[i] - 0.5);
    double rad = 1.7057 + gd;
    f.assign(3, 0.0);
    f[0] = rad * std::cos(0.5 * PI * x[0]) * std::cos(0.5 * PI * x[1]);
    f[1] = rad * std::cos(0.5 * PI * x[0]) * std::sin(0.5 * PI * x[1]);
    f[2] = rad * std::sin(0.5 * PI * x[0]);
    double r2 = f[0] * f[0] + f[1] * f[1] + f[2] * f[2];
    g.assign(id == 14 ? 3 : 2, 0.0);
    g[0] = -((r2 - 9.0) * (r2 - 4.0));
    g[1] = -((r2 - 3.61) * (r2 - 3.24));
    if (id == 14) g[2] = -((r2 - 3.0625) * (r2 - 2.56));
    return true;
}

double rastrigin_g(std::span<const double> x) {
    // distance block starts at index m-1 = 2 for three objectives
    double s = 0.0;
    double k = static_cast<double>(x.size() - 2);
    for (std::size_t i = 2; i < x.size(); ++i)
        s += (x[i] - 0.5) * (x[i] - 0.5) - std::cos(20.0 * PI * (x[i] - 0.5));
    return 100.0 * (k + s);
}

double sphere_g(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 2; i < x.size(); ++i)
        s += (x[i] - 0.5) * (x[i] - 0.5);
    return s;
}

void linear_shape3(double x1, double x2, double gd, std::vector<double>& f) {
    f.assign(3, 0.0);
    f[0] = 0.5 * x1 * x2 * (1.0 + gd);
    f[1] = 0.5 * x1 * (1.0 - x2) * (1.0 + gd);
    f[2] = 0.5 * (1.0 - x1) * (1.0 + gd);
}

void sphere_shape3(double x1, double x2, double gd, std::vector<double>& f) {
    f.assign(3, 0.0);
    f[0] = (1.0 + gd) * std::cos(0.5 * PI * x1) * std::cos(0.5 * PI * x2);
    f[1] = (1.0 + gd) * std::cos(0.5 * PI * x1) * std::sin(0.5 * PI * x2);
    f[2] = (1.0 + gd) * std::sin(0.5 * PI * x1);
}

bool dtlz(const std::string& name, std::span<const double> x,
          std::vector<double>& f, std::vector<double>& g) {
    if (name == "C1-DTLZ1") {
        linear_shape3(x[0], x[1], rastrigin_g(x), f);
        g.assign(1, f[0] / 0.5 + f[1] / 0.5 + f[2] / 0.6 - 1.0);
        return true;
    }
    if (name == "C1-DTLZ3") {
        sphere_shape3(x[0], x[1], rastrigin_g(x), f);
        double r2 = f[0] * f[0] + f[1] * f[1] + f[2] * f[2];
        g.assign(1, -((r2 - 16.0) * (r2 - 81.0)));
        return true;
    }
    if (name == "C2-DTLZ2") {
        sphere_shape3(x[0], x[1], sphere_g(x), f);
        const double r = 0.4;
        double v1 = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 3; ++i) {
            double t = (f[i] - 1.0) * (f[i] - 1.0) - r * r;
            for (int j = 0; j < 3; ++j)
                if (j != i) t += f[j] * f[j];
            if (t < v1) v1 = t;
        }
        double c = 1.0 / std::sqrt(3.0);
        double v2 = (f[0] - c) * (f[0] - c) + (f[1] - c) * (f[1] - c) +
                    (f[2] - c) * (f[2] - c) - r * r;
        g.assign(1, std::min(v1, v2));
        return true;
    }
    if (name == "C3-DTLZ4") {
        double y1 = std::pow(x[0], 100.0), y2 = std::pow(x[1], 100.0);
        sphere_shape3(y1, y2, sphere_g(x), f);
        g.assign(3, 0.0);
        for (int j = 0; j < 3; ++j) {
            double s = f[j] * f[j] / 4.0;
            for (int i = 0; i < 3; ++i)
                if (i != j) s += f[i] * f[i];
            g[j] = 1.0 - s;
        }
        return true;
    }
    bool linear = name.size() >= 5 && name.substr(name.size() - 5) == "DTLZ1";
    auto shape = [&](std::vector<double>& out) {
        if (linear)
            linear_shape3(x[0], x[1], rastrigin_g(x), out);
        else
            sphere_shape3(x[0], x[1], rastrigin_g(x), out);
    };
    if (name.rfind("DC1-", 0) == 0) {
        shape(f);
        g.assign(1, -(std::cos(3.0 * PI * x[0]) + 0.5));
        return true;
    }
    if (name.rfind("DC2-", 0) == 0) {
        shape(f);
        double gd = rastrigin_g(x);
        g = {0.9 - std::cos(3.0 * PI * gd), 0.9 - std::exp(-gd)};
        return true;
    }
    if (name.rfind("DC3-", 0) == 0) {
        shape(f);
        double gd = rastrigin_g(x);
        g = {-(std::cos(3.0 * PI * x[0]) + 0.5),
             -(std::cos(3.0 * PI * x[1]) + 0.5),
             -(std::cos(3.0 * PI * gd) + 0.5)};
        return true;
    }
    return false;
}

}  // namespace

bool eval_problem(const std::string& name, std::span<const double> x,
                  std::vector<double>& f, std::vector<double>& g) {
    if (name.rfind("LIRCMOP", 0) == 0)
        return lircmop(std::stoi(name.substr(7)), x, f, g);
    if (name.rfind("WTA", 0) == 0) return false;
    return dtlz(name, x, f, g);
}

Population random_population(std::size_t n, std::size_t m, std::size_t n_con,
                             gmpea::Rng& rng) {
    Population pop;
    pop.X = Matrix(n, 2);
    pop.F = Matrix(n, m);
    pop.C = Matrix(n, n_con);
    pop.cv.resize(n);
    gmpea::ConstraintSpec spec{n_con, 0, 1e-6};
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < 2; ++c) pop.X.at(r, c) = rng.uniform();
        for (std::size_t c = 0; c < m; ++c) pop.F.at(r, c) = rng.uniform(0.0, 5.0);
        for (std::size_t c = 0; c < n_con; ++c)
            pop.C.at(r, c) = rng.uniform(-1.0, 1.0);
        // about a third of rows are exactly feasible
        if (rng.uniform() < 0.35)
            for (std::size_t c = 0; c < n_con; ++c)
                pop.C.at(r, c) = -std::abs(pop.C.at(r, c));
        pop.cv[r] = gmpea::cv_from_raw(pop.C.row(r), spec);
    }
    return pop;
}

}  // namespace oracle
