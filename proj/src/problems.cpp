#include "gmpea/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gmpea/wta.hpp"

namespace gmpea {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------- LIRCMOP helpers ----------

// distance terms for LIRCMOP1-4: odd formula indices (3,5,...) track
// sin(0.5*pi*x1), even ones (2,4,...) track cos(0.5*pi*x1)
void lir_g_fixed(std::span<const double> x, double& g1, double& g2) {
    double s = std::sin(0.5 * kPi * x[0]);
    double c = std::cos(0.5 * kPi * x[0]);
    g1 = 0.0;
    g2 = 0.0;
    for (std::size_t j = 2; j < x.size(); j += 2) {  // formula index 3,5,...
        double t = x[j] - s;
        g1 += t * t;
    }
    for (std::size_t j = 1; j < x.size(); j += 2) {  // formula index 2,4,...
        double t = x[j] - c;
        g2 += t * t;
    }
}

// distance terms for LIRCMOP5-12: the tracked value depends on the variable
// index, sin(0.5*j*pi*x1/n) resp. cos(0.5*j*pi*x1/n) with 1-based j
void lir_g_shifted(std::span<const double> x, double& g1, double& g2) {
    const double n = static_cast<double>(x.size());
    g1 = 0.0;
    g2 = 0.0;
    for (std::size_t j = 2; j < x.size(); j += 2) {
        double t = x[j] - std::sin(0.5 * static_cast<double>(j + 1) * kPi * x[0] / n);
        g1 += t * t;
    }
    for (std::size_t j = 1; j < x.size(); j += 2) {
        double t = x[j] - std::cos(0.5 * static_cast<double>(j + 1) * kPi * x[0] / n);
        g2 += t * t;
    }
}

// raw value (<= 0 feasible) of the rotated-ellipse exclusion zone constraint
double ellipse_raw(double f1, double f2, double p, double q, double a, double b,
                   double r, double theta) {
    double u = (f1 - p) * std::cos(theta) - (f2 - q) * std::sin(theta);
    double v = (f1 - p) * std::sin(theta) + (f2 - q) * std::cos(theta);
    return r - u * u / (a * a) - v * v / (b * b);
}

struct LirSpec {
    int id;
    std::size_t n_con;
};

void lircmop_eval(int id, std::span<const double> x, std::span<double> f,
                  std::span<double> g) {
    const double x1 = x[0];
    if (id <= 4) {
        double g1, g2;
        lir_g_fixed(x, g1, g2);
        f[0] = x1 + g1;
        f[1] = (id == 1 || id == 3) ? 1.0 - x1 * x1 + g2 : 1.0 - std::sqrt(x1) + g2;
        g[0] = -((0.51 - g1) * (g1 - 0.5));
        g[1] = -((0.51 - g2) * (g2 - 0.5));
        if (id >= 3) g[2] = 0.5 - std::sin(20.0 * kPi * x1);
        return;
    }
    if (id <= 8) {
        double g1, g2;
        lir_g_shifted(x, g1, g2);
        f[0] = x1 + 10.0 * g1 + 0.7057;
        bool sqrt_shape = (id == 5 || id == 7);
        f[1] = (sqrt_shape ? 1.0 - std::sqrt(x1) : 1.0 - x1 * x1) + 10.0 * g2 + 0.7057;
        const double theta = -0.25 * kPi;
        if (id <= 6) {
            const double p[2] = {id == 5 ? 1.6 : 1.8, id == 5 ? 2.5 : 2.8};
            const double a[2] = {2.0, 2.0};
            const double b[2] = {id == 5 ? 4.0 : 8.0, 8.0};
            for (int k = 0; k < 2; ++k)
                g[k] = ellipse_raw(f[0], f[1], p[k], p[k], a[k], b[k], 0.1, theta);
        } else {
            const double p[3] = {1.2, 2.25, 3.5};
            const double a[3] = {2.0, 2.5, 2.5};
            const double b[3] = {6.0, 12.0, 10.0};
            for (int k = 0; k < 3; ++k)
                g[k] = ellipse_raw(f[0], f[1], p[k], p[k], a[k], b[k], 0.1, theta);
        }
        return;
    }
    if (id <= 12) {
        double g1, g2;
        lir_g_shifted(x, g1, g2);
        f[0] = 1.7057 * x1 * (10.0 * g1 + 1.0);
        bool sqrt_shape = (id == 10 || id == 11);
        f[1] = 1.7057 * (sqrt_shape ? 1.0 - std::sqrt(x1) : 1.0 - x1 * x1) *
               (10.0 * g2 + 1.0);
        const double theta = -0.25 * kPi;
        const double alpha = 0.25 * kPi;
        double p, q, a, b, level;
        switch (id) {
            case 9:  p = 1.4; q = 1.4; a = 1.5; b = 6.0; level = 2.0; break;
            case 10: p = 1.1; q = 1.2; a = 2.0; b = 4.0; level = 1.0; break;
            case 11: p = 1.2; q = 1.2; a = 1.5; b = 5.0; level = 2.1; break;
            default: p = 1.6; q = 1.6; a = 1.5; b = 6.0; level = 2.5; break;
        }
        g[0] = ellipse_raw(f[0], f[1], p, q, a, b, 0.1, theta);
        g[1] = level - (f[0] * std::sin(alpha) + f[1] * std::cos(alpha) -
                        std::sin(4.0 * kPi * (f[0] * std::cos(alpha) -
                                              f[1] * std::sin(alpha))));
        return;
    }
    // LIRCMOP13/14, three objectives on a sphere pushed out by g
    double gs = 0.0;
    for (std::size_t j = 2; j < x.size(); ++j) {
        double t = x[j] - 0.5;
        gs += 10.0 * t * t;
    }
    double radius = 1.7057 + gs;
    f[0] = radius * std::cos(0.5 * kPi * x[0]) * std::cos(0.5 * kPi * x[1]);
    f[1] = radius * std::cos(0.5 * kPi * x[0]) * std::sin(0.5 * kPi * x[1]);
    f[2] = radius * std::sin(0.5 * kPi * x[0]);
    double r2 = f[0] * f[0] + f[1] * f[1] + f[2] * f[2];
    g[0] = -((r2 - 9.0) * (r2 - 4.0));
    g[1] = -((r2 - 3.61) * (r2 - 3.24));
    if (id == 14) g[2] = -((r2 - 3.0625) * (r2 - 2.56));
}

// ---------- DTLZ helpers ----------

double dtlz_g_rastrigin(std::span<const double> x, std::size_t m) {
    double s = 0.0;
    std::size_t k = x.size() - m + 1;
    for (std::size_t i = m - 1; i < x.size(); ++i) {
        double t = x[i] - 0.5;
        s += t * t - std::cos(20.0 * kPi * t);
    }
    return 100.0 * (static_cast<double>(k) + s);
}

double dtlz_g_sphere(std::span<const double> x, std::size_t m) {
    double s = 0.0;
    for (std::size_t i = m - 1; i < x.size(); ++i) {
        double t = x[i] - 0.5;
        s += t * t;
    }
    return s;
}

void dtlz_linear_shape(std::span<const double> pos, double g, std::span<double> f) {
    std::size_t m = f.size();
    for (std::size_t j = 0; j < m; ++j) {
        double v = 0.5;
        for (std::size_t i = 0; i + j + 1 < m; ++i) v *= pos[i];
        if (j > 0) v *= 1.0 - pos[m - 1 - j];
        f[j] = v * (1.0 + g);
    }
}

void dtlz_sphere_shape(std::span<const double> pos, double g, std::span<double> f) {
    std::size_t m = f.size();
    for (std::size_t j = 0; j < m; ++j) {
        double v = 1.0 + g;
        for (std::size_t i = 0; i + j + 1 < m; ++i) v *= std::cos(0.5 * kPi * pos[i]);
        if (j > 0) v *= std::sin(0.5 * kPi * pos[m - 1 - j]);
        f[j] = v;
    }
}

enum class DtlzBase { d1, d2, d3, d4 };

void dtlz_eval(DtlzBase base, std::span<const double> x, std::span<double> f) {
    std::size_t m = f.size();
    std::vector<double> pos(x.begin(), x.begin() + (m - 1));
    switch (base) {
        case DtlzBase::d1:
            dtlz_linear_shape(pos, dtlz_g_rastrigin(x, m), f);
            break;
        case DtlzBase::d2:
            dtlz_sphere_shape(pos, dtlz_g_sphere(x, m), f);
            break;
        case DtlzBase::d3:
            dtlz_sphere_shape(pos, dtlz_g_rastrigin(x, m), f);
            break;
        case DtlzBase::d4: {
            for (auto& v : pos) v = std::pow(v, 100.0);
            dtlz_sphere_shape(pos, dtlz_g_sphere(x, m), f);
            break;
        }
    }
}

// ---------- front candidate generators ----------

Matrix simplex_weights(std::size_t n_samples) {
    // triangular grid over the 3-simplex, sized to give >= n_samples points
    std::size_t h = 1;
    while ((h + 1) * (h + 2) / 2 < n_samples) ++h;
    Matrix w((h + 1) * (h + 2) / 2, 3);
    std::size_t r = 0;
    for (std::size_t i = 0; i <= h; ++i)
        for (std::size_t j = 0; j <= h - i; ++j, ++r) {
            w.at(r, 0) = static_cast<double>(i) / static_cast<double>(h);
            w.at(r, 1) = static_cast<double>(j) / static_cast<double>(h);
            w.at(r, 2) = static_cast<double>(h - i - j) / static_cast<double>(h);
        }
    return w;
}

// decision rows whose DTLZ1-shape image is the 0.5-simplex (g = 0)
Matrix dtlz1_front_rows(std::size_t d, std::size_t n_samples) {
    Matrix w = simplex_weights(n_samples);
    Matrix X(w.rows, d, 0.5);
    for (std::size_t r = 0; r < w.rows; ++r) {
        double w1 = w.at(r, 0), w2 = w.at(r, 1);
        double x1 = w1 + w2;
        double x2 = x1 > 0.0 ? w1 / x1 : 0.0;
        X.at(r, 0) = x1;
        X.at(r, 1) = x2;
    }
    return X;
}

// decision rows mapping to direction v on the unit sphere octant, scaled to
// radius (1 + extra_g contribution); alpha is the DTLZ4 position exponent
Matrix sphere_front_rows(std::size_t d, std::size_t n_samples, double alpha,
                         double target_radius_num, double target_radius_den) {
    Matrix w = simplex_weights(n_samples);
    std::size_t k = d - 2;  // distance variables for m = 3
    Matrix X(w.rows, d, 0.5);
    for (std::size_t r = 0; r < w.rows; ++r) {
        double n2 = 0.0;
        for (std::size_t c = 0; c < 3; ++c) n2 += w.at(r, c) * w.at(r, c);
        double nrm = std::sqrt(n2);
        double v1 = w.at(r, 0) / nrm, v2 = w.at(r, 1) / nrm, v3 = w.at(r, 2) / nrm;
        double x1 = std::asin(std::min(1.0, v3)) / (0.5 * kPi);
        double x2 = (v1 == 0.0 && v2 == 0.0) ? 0.0 : std::atan2(v2, v1) / (0.5 * kPi);
        if (alpha != 1.0) {
            x1 = std::pow(x1, 1.0 / alpha);
            x2 = std::pow(x2, 1.0 / alpha);
        }
        X.at(r, 0) = std::clamp(x1, 0.0, 1.0);
        X.at(r, 1) = std::clamp(x2, 0.0, 1.0);
        // radius beyond 1 comes from the sphere g term
        double t = target_radius_num;
        if (target_radius_den != 0.0) {
            double mx = std::max({v1, v2, v3});
            t = (1.0 + 1e-9) / std::sqrt(1.0 - 0.75 * mx * mx);
        }
        double g = t - 1.0;
        if (g > 0.0) {
            double off = std::sqrt(g / static_cast<double>(k));
            for (std::size_t c = 2; c < d; ++c) X.at(r, c) = 0.5 + off;
        }
    }
    return X;
}

Matrix lircmop_front_rows(int id, std::size_t d, std::size_t n_samples) {
    const double n = static_cast<double>(d);
    if (id <= 12) {
        Matrix X(n_samples, d);
        for (std::size_t r = 0; r < n_samples; ++r) {
            double x1 = n_samples == 1
                            ? 0.0
                            : static_cast<double>(r) / static_cast<double>(n_samples - 1);
            auto row = X.row(r);
            row[0] = x1;
            double g1_target = 0.0, g2_target = 0.0;
            if (id <= 4) {
                g1_target = g2_target = 0.5 * (1.0 + 1e-9);
            } else if (id >= 9) {
                // grow both distance terms until the objective-space point
                // clears the exclusion constraints
                bool sqrt_shape = (id == 10 || id == 11);
                const double theta = -0.25 * kPi, al = 0.25 * kPi;
                double p, q, a, b, level;
                switch (id) {
                    case 9:  p = 1.4; q = 1.4; a = 1.5; b = 6.0; level = 2.0; break;
                    case 10: p = 1.1; q = 1.2; a = 2.0; b = 4.0; level = 1.0; break;
                    case 11: p = 1.2; q = 1.2; a = 1.5; b = 5.0; level = 2.1; break;
                    default: p = 1.6; q = 1.6; a = 1.5; b = 6.0; level = 2.5; break;
                }
                auto clear_at = [&](double s) {
                    double f1 = 1.7057 * x1 * s;
                    double f2 =
                        1.7057 * (sqrt_shape ? 1.0 - std::sqrt(x1) : 1.0 - x1 * x1) * s;
                    if (ellipse_raw(f1, f2, p, q, a, b, 0.1, theta) > 0.0)
                        return false;
                    return level - (f1 * std::sin(al) + f2 * std::cos(al) -
                                    std::sin(4.0 * kPi * (f1 * std::cos(al) -
                                                          f2 * std::sin(al)))) <=
                           0.0;
                };
                double s = 1.0;
                if (!clear_at(1.0)) {
                    double lo = 1.0, hi = 1.002;
                    while (hi < 64.0 && !clear_at(hi)) {
                        lo = hi;
                        hi *= 1.002;
                    }
                    for (int it = 0; it < 60; ++it) {
                        double mid = 0.5 * (lo + hi);
                        if (clear_at(mid))
                            hi = mid;
                        else
                            lo = mid;
                    }
                    s = hi;
                }
                s *= 1.0005;  // safety margin against rounding in the rebuild
                g1_target = g2_target = (s - 1.0) / 10.0;
            } else if (id >= 7) {
                // push the point diagonally out of the three exclusion
                // ellipses: f = base + u on both axes, with u = 10 * g_target
                double f1b = x1 + 0.7057;
                double f2b = (id == 7 ? 1.0 - std::sqrt(x1) : 1.0 - x1 * x1) + 0.7057;
                const double p[3] = {1.2, 2.25, 3.5};
                const double a[3] = {2.0, 2.5, 2.5};
                const double b[3] = {6.0, 12.0, 10.0};
                auto clear_at = [&](double u) {
                    for (int k = 0; k < 3; ++k)
                        if (ellipse_raw(f1b + u, f2b + u, p[k], p[k], a[k], b[k],
                                        0.1, -0.25 * kPi) > 0.0)
                            return false;
                    return true;
                };
                double u = 0.0;
                if (!clear_at(0.0)) {
                    double lo = 0.0, hi = 0.05;
                    while (hi < 16.0 && !clear_at(hi)) {
                        lo = hi;
                        hi += 0.05;
                    }
                    for (int it = 0; it < 80; ++it) {
                        double mid = 0.5 * (lo + hi);
                        if (clear_at(mid))
                            hi = mid;
                        else
                            lo = mid;
                    }
                    u = hi;
                }
                u += 1e-6;  // safety margin against rounding in the rebuild
                g1_target = g2_target = u / 10.0;
            }
            std::size_t len1 = 0, len2 = 0;
            for (std::size_t j = 2; j < d; j += 2) ++len1;
            for (std::size_t j = 1; j < d; j += 2) ++len2;
            double d1 = len1 ? std::sqrt(g1_target / static_cast<double>(len1)) : 0.0;
            double d2 = len2 ? std::sqrt(g2_target / static_cast<double>(len2)) : 0.0;
            for (std::size_t j = 2; j < d; j += 2) {
                double base = (id <= 4)
                                  ? std::sin(0.5 * kPi * x1)
                                  : std::sin(0.5 * static_cast<double>(j + 1) * kPi * x1 / n);
                row[j] = base <= 0.5 ? base + d1 : base - d1;
            }
            for (std::size_t j = 1; j < d; j += 2) {
                double base = (id <= 4)
                                  ? std::cos(0.5 * kPi * x1)
                                  : std::cos(0.5 * static_cast<double>(j + 1) * kPi * x1 / n);
                row[j] = base <= 0.5 ? base + d2 : base - d2;
            }
        }
        return X;
    }
    // LIRCMOP13/14: sphere front at the innermost feasible radius
    double radius = id == 13 ? 1.7057 : 1.75 * (1.0 + 1e-9);
    double g = radius - 1.7057;
    Matrix w = simplex_weights(n_samples);
    Matrix X(w.rows, d, 0.5);
    double off = g > 0.0 ? std::sqrt(g / (10.0 * static_cast<double>(d - 2))) : 0.0;
    for (std::size_t r = 0; r < w.rows; ++r) {
        double n2 = 0.0;
        for (std::size_t c = 0; c < 3; ++c) n2 += w.at(r, c) * w.at(r, c);
        double nrm = std::sqrt(n2);
        double v1 = w.at(r, 0) / nrm, v2 = w.at(r, 1) / nrm, v3 = w.at(r, 2) / nrm;
        X.at(r, 0) = std::asin(std::min(1.0, v3)) / (0.5 * kPi);
        X.at(r, 1) = (v1 == 0.0 && v2 == 0.0) ? 0.0 : std::atan2(v2, v1) / (0.5 * kPi);
        for (std::size_t c = 2; c < d; ++c) X.at(r, c) = 0.5 + off;
    }
    return X;
}

ProblemDef lircmop(int id) {
    ProblemDef p;
    p.name = "LIRCMOP" + std::to_string(id);
    p.d = 30;
    p.m = id >= 13 ? 3 : 2;
    p.n_ineq = (id == 3 || id == 4 || id == 7 || id == 8 || id == 14) ? 3 : 2;
    p.bounds.assign(p.d, {0.0, 1.0});
    p.eval_row = [id](std::span<const double> x, std::span<double> f,
                      std::span<double> g) { lircmop_eval(id, x, f, g); };
    std::size_t d = p.d;
    p.front_candidates = [id, d](std::size_t n) { return lircmop_front_rows(id, d, n); };
    return p;
}

ProblemDef dtlz_family(const std::string& name) {
    static const std::vector<std::string> known = {
        "C1-DTLZ1",  "C1-DTLZ3",  "C2-DTLZ2",  "C3-DTLZ4",  "DC1-DTLZ1",
        "DC1-DTLZ3", "DC2-DTLZ1", "DC2-DTLZ3", "DC3-DTLZ1", "DC3-DTLZ3"};
    if (std::find(known.begin(), known.end(), name) == known.end())
        throw std::invalid_argument("unknown problem: " + name);
    ProblemDef p;
    p.name = name;
    p.m = 3;
    if (name == "C1-DTLZ1" || name == "DC1-DTLZ1" || name == "DC2-DTLZ1" ||
        name == "DC3-DTLZ1")
        p.d = 7;
    else
        p.d = 12;
    p.bounds.assign(p.d, {0.0, 1.0});
    std::size_t d = p.d, m = p.m;

    if (name == "C1-DTLZ1") {
        p.n_ineq = 1;
        p.eval_row = [m](std::span<const double> x, std::span<double> f,
                         std::span<double> g) {
            dtlz_eval(DtlzBase::d1, x, f);
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < m; ++i) s += f[i] / 0.5;
            s += f[m - 1] / 0.6;
            g[0] = s - 1.0;
        };
        p.front_candidates = [d](std::size_t n) { return dtlz1_front_rows(d, n); };
    } else if (name == "C1-DTLZ3") {
        p.n_ineq = 1;
        p.eval_row = [m](std::span<const double> x, std::span<double> f,
                         std::span<double> g) {
            dtlz_eval(DtlzBase::d3, x, f);
            double r2 = 0.0;
            for (std::size_t i = 0; i < m; ++i) r2 += f[i] * f[i];
            const double r = 9.0;  // band parameter for three objectives
            g[0] = -((r2 - 16.0) * (r2 - r * r));
        };
        p.front_candidates = [d](std::size_t n) {
            return sphere_front_rows(d, n, 1.0, 1.0, 0.0);
        };
    } else if (name == "C2-DTLZ2") {
        p.n_ineq = 1;
        p.eval_row = [m](std::span<const double> x, std::span<double> f,
                         std::span<double> g) {
            dtlz_eval(DtlzBase::d2, x, f);
            const double r = 0.4;
            double v1 = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                double t = (f[i] - 1.0) * (f[i] - 1.0) - r * r;
                for (std::size_t j = 0; j < m; ++j)
                    if (j != i) t += f[j] * f[j];
                v1 = std::min(v1, t);
            }
            double v2 = 0.0;
            const double c = 1.0 / std::sqrt(static_cast<double>(m));
            for (std::size_t i = 0; i < m; ++i) v2 += (f[i] - c) * (f[i] - c);
            v2 -= r * r;
            g[0] = std::min(v1, v2);
        };
        p.front_candidates = [d](std::size_t n) {
            return sphere_front_rows(d, n, 1.0, 1.0, 0.0);
        };
    } else if (name == "C3-DTLZ4") {
        p.n_ineq = 3;
        p.eval_row = [m](std::span<const double> x, std::span<double> f,
                         std::span<double> g) {
            dtlz_eval(DtlzBase::d4, x, f);
            for (std::size_t j = 0; j < m; ++j) {
                double s = f[j] * f[j] / 4.0;
                for (std::size_t i = 0; i < m; ++i)
                    if (i != j) s += f[i] * f[i];
                g[j] = 1.0 - s;
            }
        };
        p.front_candidates = [d](std::size_t n) {
            return sphere_front_rows(d, n, 100.0, 0.0, 1.0);
        };
    } else {
        // DC-DTLZ family
        bool linear = name.ends_with("DTLZ1");
        DtlzBase base = linear ? DtlzBase::d1 : DtlzBase::d3;
        const double a = 3.0;
        if (name.starts_with("DC1")) {
            p.n_ineq = 1;
            p.eval_row = [base](std::span<const double> x, std::span<double> f,
                                std::span<double> g) {
                dtlz_eval(base, x, f);
                g[0] = -(std::cos(3.0 * kPi * x[0]) + 0.5);
            };
        } else if (name.starts_with("DC2")) {
            p.n_ineq = 2;
            p.eval_row = [base, m](std::span<const double> x, std::span<double> f,
                                   std::span<double> g) {
                dtlz_eval(base, x, f);
                double gd = dtlz_g_rastrigin(x, m);
                g[0] = 0.9 - std::cos(3.0 * kPi * gd);
                g[1] = 0.9 - std::exp(-gd);
            };
        } else {  // DC3
            p.n_ineq = m;
            p.eval_row = [base, m, a](std::span<const double> x, std::span<double> f,
                                      std::span<double> g) {
                dtlz_eval(base, x, f);
                for (std::size_t j = 0; j + 1 < m; ++j)
                    g[j] = -(std::cos(a * kPi * x[j]) + 0.5);
                double gd = dtlz_g_rastrigin(x, m);
                g[m - 1] = -(std::cos(a * kPi * gd) + 0.5);
            };
        }
        if (linear)
            p.front_candidates = [d](std::size_t n) { return dtlz1_front_rows(d, n); };
        else
            p.front_candidates = [d](std::size_t n) {
                return sphere_front_rows(d, n, 1.0, 1.0, 0.0);
            };
    }
    return p;
}

}  // namespace

std::vector<std::string> problem_names() {
    std::vector<std::string> names;
    for (int i = 1; i <= 14; ++i) names.push_back("LIRCMOP" + std::to_string(i));
    for (const char* n : {"C1-DTLZ1", "C1-DTLZ3", "C2-DTLZ2", "C3-DTLZ4",
                          "DC1-DTLZ1", "DC1-DTLZ3", "DC2-DTLZ1", "DC2-DTLZ3",
                          "DC3-DTLZ1", "DC3-DTLZ3"})
        names.push_back(n);
    for (int i = 1; i <= 10; ++i) names.push_back("WTA-P" + std::to_string(i));
    return names;
}

ProblemDef make_problem(const std::string& name) {
    if (name.starts_with("LIRCMOP")) {
        int id = std::stoi(name.substr(7));
        if (id >= 1 && id <= 14) return lircmop(id);
    }
    if (name.starts_with("C") || name.starts_with("DC")) return dtlz_family(name);
    if (name.starts_with("WTA-")) return make_wta_problem(wta_scenario(name.substr(4)));
    throw std::invalid_argument("unknown problem: " + name);
}

EvalResult evaluate(const ProblemDef& p, const Matrix& X) {
    if (X.cols != p.d) throw std::invalid_argument("evaluate: wrong decision dimension");
    std::vector<std::size_t> bad;
    for (std::size_t r = 0; r < X.rows; ++r) {
        auto row = X.row(r);
        for (std::size_t c = 0; c < p.d; ++c)
            if (!(row[c] >= p.bounds[c].first && row[c] <= p.bounds[c].second)) {
                bad.push_back(r);
                break;
            }
    }
    if (!bad.empty()) {
        std::ostringstream os;
        os << "evaluate: out-of-bounds rows:";
        for (auto r : bad) os << ' ' << r;
        throw std::invalid_argument(os.str());
    }
    EvalResult out{Matrix(X.rows, p.m), Matrix(X.rows, p.n_ineq + p.n_eq)};
    for (std::size_t r = 0; r < X.rows; ++r)
        p.eval_row(X.row(r), out.F.row(r), out.G.row(r));
    return out;
}

}  // namespace gmpea
