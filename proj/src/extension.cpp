#include "arl/extension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arl {

namespace {

constexpr double kGlX[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
constexpr double kGlW[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

double c3_constant(int d) {
    double c = std::pow(2.0, d), fact = 1.0;
    for (int j = 1; j <= d; ++j) {
        fact *= j;
        c /= fact;
    }
    return c;
}

Parallelepiped taylor_parallelepiped(const Curve& c, double t, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("taylor_parallelepiped: h must be positive");
    DetResult tau = c.torsion_det(t);
    if (tau.numerically_degenerate)
        throw std::domain_error("degenerate frame: tau(t) = 0, the sublevel branch is not constructed");
    const int d = c.dim();
    Parallelepiped p;
    p.base = c.position(t);
    double fact = 1.0;
    for (int j = 1; j <= d; ++j) {
        fact *= j;
        auto e = c.derivative(t, j);
        double scale = 2.0 * std::pow(h, j) / fact;
        for (auto& x : e) x *= scale;
        p.edges.push_back(std::move(e));
    }
    Matrix m(d, d);
    for (int j = 0; j < d; ++j) m.set_col(j, p.edges[j]);
    p.volume = std::abs(det_pivoted(std::move(m)).value);
    return p;
}

double parallelepiped_volume_closed_form(int d, double h, double tau) {
    return c3_constant(d) * std::pow(h, 0.5 * d * (d + 1)) * std::abs(tau);
}

bool parallelepiped_contains(const Parallelepiped& p, const std::vector<double>& x) {
    const std::size_t d = p.base.size();
    Matrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) m.set_col(j, p.edges[j]);
    std::vector<double> rhs(d);
    for (std::size_t i = 0; i < d; ++i) rhs[i] = x[i] - p.base[i];
    auto coords = solve(std::move(m), std::move(rhs));
    for (double c : coords)
        if (c < 0.0 || c > 1.0) return false;
    return true;
}

double curve_measure_in(const Curve& c, const Parallelepiped& p, double t_center, double h, int quad_n) {
    if (quad_n < 100) throw std::invalid_argument("curve_measure_in: quad_n >= 100");
    double acc = 0.0;
    for (int pnl = 0; pnl < quad_n; ++pnl) {
        double a = h * pnl / quad_n, b = h * (pnl + 1) / quad_n;
        double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int g = 0; g < 4; ++g) {
            double u = mid + hw * kGlX[g];
            if (parallelepiped_contains(p, c.position(t_center + u))) acc += hw * kGlW[g] * c.affine_weight(t_center + u);
        }
    }
    return acc;
}

std::vector<KnappReport> knapp_ratio_scan(const Curve& c, double t, const std::vector<double>& h_ladder, int quad_n) {
    for (std::size_t i = 0; i + 1 < h_ladder.size(); ++i)
        if (!(h_ladder[i] > h_ladder[i + 1])) throw std::invalid_argument("knapp_ratio_scan: h ladder must decrease");
    DetResult tau = c.torsion_det(t);
    if (tau.numerically_degenerate) throw std::domain_error("degenerate frame: tau(t) = 0");
    double w_t = std::pow(std::abs(tau.value), affine_weight_exponent(c.dim()));

    std::vector<KnappReport> out;
    for (double h : h_ladder) {
        KnappReport rep;
        rep.t = t;
        rep.h = h;
        Parallelepiped p = taylor_parallelepiped(c, t, h);
        rep.volume = p.volume;
        rep.curve_measure = curve_measure_in(c, p, t, h, std::max(quad_n, 100));
        double avg = 0.0;
        for (int pnl = 0; pnl < quad_n; ++pnl) {
            double a = h * pnl / quad_n, b = h * (pnl + 1) / quad_n;
            double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
            for (int g = 0; g < 4; ++g) avg += hw * kGlW[g] * c.affine_weight(t + mid + hw * kGlX[g]);
        }
        rep.avg_weight = avg / h;
        rep.ratio = rep.avg_weight / w_t;
        out.push_back(rep);
    }
    return out;
}

int required_panels(const Curve& c, const std::vector<double>& x) {
    // bound max |<x, gamma'(t)>| by sampling; the phase advance per panel
    // must stay below pi/4
    const int probes = 64;
    double vmax = 0.0;
    for (int i = 0; i <= probes; ++i) {
        double t = c.t_lo() + (c.t_hi() - c.t_lo()) * i / probes;
        if (c.family() == CurveFamily::Monomial && t <= 0.0) continue;
        vmax = std::max(vmax, std::abs(dot(x, c.derivative(t, 1))));
    }
    double total_phase = vmax * (c.t_hi() - c.t_lo());
    return std::max(1, static_cast<int>(std::ceil(total_phase / (0.25 * 3.14159265358979323846))));
}

namespace {

std::complex<double> extension_quadrature(const Curve& c, const std::function<double(double)>& f,
                                          const std::vector<double>& x, int panels) {
    std::complex<double> acc{0.0, 0.0};
    for (int pnl = 0; pnl < panels; ++pnl) {
        double a = c.t_lo() + (c.t_hi() - c.t_lo()) * pnl / panels;
        double b = c.t_lo() + (c.t_hi() - c.t_lo()) * (pnl + 1) / panels;
        double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int g = 0; g < 4; ++g) {
            double t = mid + hw * kGlX[g];
            double phase = dot(x, c.position(t));
            acc += hw * kGlW[g] * f(t) * c.affine_weight(t) * std::complex<double>{std::cos(phase), -std::sin(phase)};
        }
    }
    return acc;
}

}  // namespace

ExtensionValue extension_eval(const Curve& c, const std::function<double(double)>& f, const std::vector<double>& x,
                              int quad_n) {
    if (x.size() != static_cast<std::size_t>(c.dim())) throw std::invalid_argument("extension_eval: x must have d coordinates");
    int needed = required_panels(c, x);
    if (quad_n < needed)
        throw std::invalid_argument("extension_eval: quad_n too small for the phase at this x; need at least " +
                                    std::to_string(needed) + " panels");
    ExtensionValue out;
    out.panels = quad_n;
    out.value = extension_quadrature(c, f, x, quad_n);
    auto refined = extension_quadrature(c, f, x, 2 * quad_n);
    out.error_estimate = std::abs(refined - out.value);
    out.value = refined;
    return out;
}

double weak_norm_estimate(const std::vector<double>& abs_values, const std::vector<double>& cell_volumes, double Q) {
    if (abs_values.size() != cell_volumes.size()) throw std::invalid_argument("weak_norm: size mismatch");
    if (!(Q > 0.0)) throw std::invalid_argument("weak_norm: Q must be positive");
    std::vector<std::size_t> idx(abs_values.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return abs_values[a] > abs_values[b]; });
    double vol = 0.0, best = 0.0;
    for (std::size_t i : idx) {
        vol += cell_volumes[i];
        best = std::max(best, std::abs(abs_values[i]) * std::pow(vol, 1.0 / Q));
    }
    return best;
}

double weak_norm_estimate_ladder(const std::vector<double>& abs_values, const std::vector<double>& cell_volumes,
                                 double Q, const std::vector<double>& alphas) {
    if (abs_values.size() != cell_volumes.size()) throw std::invalid_argument("weak_norm: size mismatch");
    double best = 0.0;
    for (double alpha : alphas) {
        double vol = 0.0;
        for (std::size_t i = 0; i < abs_values.size(); ++i)
            if (std::abs(abs_values[i]) > alpha) vol += cell_volumes[i];
        best = std::max(best, alpha * std::pow(vol, 1.0 / Q));
    }
    return best;
}

}  // namespace arl
