#include "gmpea/scalarize.hpp"

#include <cmath>
#include <stdexcept>

#include "gmpea/batch.hpp"
#include "gmpea/kernels.hpp"

namespace gmpea {

std::vector<double> violation_per_constraint(std::span<const double> g_vals,
                                             std::span<const double> h_vals,
                                             const ConstraintSpec& spec) {
    if (g_vals.size() != spec.n_ineq || h_vals.size() != spec.n_eq)
        throw std::invalid_argument("violation_per_constraint: length mismatch");
    std::vector<double> c;
    c.reserve(spec.n_ineq + spec.n_eq);
    for (double g : g_vals) c.push_back(g > 0.0 ? g : 0.0);
    for (double h : h_vals) {
        double v = std::abs(h) - spec.delta;
        c.push_back(v > 0.0 ? v : 0.0);
    }
    return c;
}

double cv_total(std::span<const double> g_vals, std::span<const double> h_vals,
                const ConstraintSpec& spec) {
    if (g_vals.size() != spec.n_ineq || h_vals.size() != spec.n_eq)
        throw std::invalid_argument("cv_total: length mismatch");
    // same accumulation as cv_from_raw so both routes agree bitwise
    double s = kernels::relu_sum(g_vals.data(), g_vals.size());
    for (double h : h_vals) {
        double v = std::abs(h) - spec.delta;
        s += v > 0.0 ? v : 0.0;
    }
    return s;
}

double cv_from_raw(std::span<const double> raw, const ConstraintSpec& spec) {
    if (raw.size() != spec.n_ineq + spec.n_eq)
        throw std::invalid_argument("cv_from_raw: length mismatch");
    if (spec.n_eq == 0) return kernels::relu_sum(raw.data(), raw.size());
    double s = kernels::relu_sum(raw.data(), spec.n_ineq);
    for (std::size_t j = spec.n_ineq; j < raw.size(); ++j) {
        double v = std::abs(raw[j]) - spec.delta;
        s += v > 0.0 ? v : 0.0;
    }
    return s;
}

bool pareto_dominates(std::span<const double> fa, std::span<const double> fb) {
    if (fa.size() != fb.size())
        throw std::invalid_argument("pareto_dominates: length mismatch");
    bool strict = false;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        if (fa[i] > fb[i]) return false;
        if (fa[i] < fb[i]) strict = true;
    }
    return strict;
}

bool cdp_better(std::span<const double> fa, double cva,
                std::span<const double> fb, double cvb) {
    if (cva < 0.0 || cvb < 0.0)
        throw std::invalid_argument("cdp_better: negative constraint violation");
    if (cva == 0.0 && cvb > 0.0) return true;
    if (cva == 0.0 && cvb == 0.0) return pareto_dominates(fa, fb);
    if (cva > 0.0 && cvb > 0.0) return cva < cvb;
    return false;
}

double pbi(std::span<const double> f, std::span<const double> w,
           std::span<const double> z, double theta) {
    if (f.size() != w.size() || f.size() != z.size())
        throw std::invalid_argument("pbi: dimension mismatch");
    double wn2 = 0.0;
    for (double v : w) wn2 += v * v;
    if (wn2 == 0.0) throw std::invalid_argument("pbi: zero-norm reference vector");
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

bool fpr_better(double ga, double cva, double gb, double cvb) {
    if (cva < 0.0 || cvb < 0.0)
        throw std::invalid_argument("fpr_better: negative constraint violation");
    if (cva == cvb) return ga < gb;
    return cva < cvb;
}

std::vector<double> cv_batch(const Matrix& raw, const ConstraintSpec& spec) {
    Matrix out = row_map(
        [&](std::span<const double> in, std::span<double> o) {
            o[0] = cv_from_raw(in, spec);
        },
        raw, 1);
    return out.data;
}

std::vector<double> pbi_batch(const Matrix& F, const Matrix& W,
                              std::span<const double> z, double theta) {
    if (F.rows != W.rows || F.cols != W.cols)
        throw std::invalid_argument("pbi_batch: shape mismatch");
    std::vector<double> out(F.rows);
    for (std::size_t i = 0; i < F.rows; ++i)
        out[i] = pbi(F.row(i), W.row(i), z, theta);
    return out;
}

Mask dominates_batch(const Matrix& FA, const Matrix& FB) {
    if (!FA.same_shape(FB)) throw std::invalid_argument("dominates_batch: shape mismatch");
    Mask m(FA.rows);
    for (std::size_t i = 0; i < FA.rows; ++i)
        m[i] = pareto_dominates(FA.row(i), FB.row(i)) ? 1 : 0;
    return m;
}

Mask cdp_better_batch(const Matrix& FA, std::span<const double> cva,
                      const Matrix& FB, std::span<const double> cvb) {
    Mask m(FA.rows);
    for (std::size_t i = 0; i < FA.rows; ++i)
        m[i] = cdp_better(FA.row(i), cva[i], FB.row(i), cvb[i]) ? 1 : 0;
    return m;
}

Mask fpr_better_batch(std::span<const double> ga, std::span<const double> cva,
                      std::span<const double> gb, std::span<const double> cvb) {
    Mask m(ga.size());
    for (std::size_t i = 0; i < ga.size(); ++i)
        m[i] = fpr_better(ga[i], cva[i], gb[i], cvb[i]) ? 1 : 0;
    return m;
}

}  // namespace gmpea
