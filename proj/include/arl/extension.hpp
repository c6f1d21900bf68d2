#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "arl/curves.hpp"

namespace arl {

/// Parallelepiped adapted to the curve at t: base gamma(t) and edge
/// vectors (2h^j/j!) gamma^{(j)}(t).
struct Parallelepiped {
    std::vector<double> base;
    std::vector<std::vector<double>> edges;
    double volume = 0.0;
};

/// 2^d prod_{j=1}^d 1/j!
double c3_constant(int d);

/// Builds P(h,t); throws std::domain_error("degenerate frame") when the
/// torsion vanishes at t (that branch is detected, not constructed).
Parallelepiped taylor_parallelepiped(const Curve& c, double t, double h);

/// C_3(d) h^{(d^2+d)/2} |tau|.
double parallelepiped_volume_closed_form(int d, double h, double tau);

/// Membership via the edge-coordinate system (coordinates in [0,1]).
bool parallelepiped_contains(const Parallelepiped& p, const std::vector<double>& x);

/// lambda({u in [0,h]: gamma(t+u) in P}) = int_0^h chi_P(gamma(t+u)) w(t+u) du
/// by composite quadrature with quad_n panels.
double curve_measure_in(const Curve& c, const Parallelepiped& p, double t_center, double h, int quad_n);

struct KnappReport {
    double t = 0.0, h = 0.0;
    double volume = 0.0;         // |P(h,t)|
    double curve_measure = 0.0;  // affine measure of the piece inside P
    double avg_weight = 0.0;     // (1/h) int_0^h w(t+u) du
    double ratio = 0.0;          // avg_weight / |tau(t)|^{2/(d^2+d)}
};
/// Ratio ladder for the optimality self-check: as h -> 0 the ratio tends
/// to 1 (Lebesgue point of the continuous weight).
std::vector<KnappReport> knapp_ratio_scan(const Curve& c, double t, const std::vector<double>& h_ladder,
                                          int quad_n = 64);

struct ExtensionValue {
    std::complex<double> value;
    double error_estimate = 0.0;  // panel-halving difference
    int panels = 0;
};

/// E_w f(x) = int_I e^{-i<x,gamma(t)>} f(t) w(t) dt by composite
/// Gauss-Legendre. The phase must advance less than pi/4 per panel;
/// when quad_n is too small the call refuses and reports the needed count.
ExtensionValue extension_eval(const Curve& c, const std::function<double(double)>& f, const std::vector<double>& x,
                              int quad_n);

/// Minimal panel count satisfying the phase rule at this x.
int required_panels(const Curve& c, const std::vector<double>& x);

/// Empirical lower bound for ||field||_{L^{Q,infty}} on sampled data:
/// sup over the value ladder of alpha * (volume where |field| >= alpha)^{1/Q}.
double weak_norm_estimate(const std::vector<double>& abs_values, const std::vector<double>& cell_volumes, double Q);
/// Same with an explicit alpha ladder (strict level sets |field| > alpha).
double weak_norm_estimate_ladder(const std::vector<double>& abs_values, const std::vector<double>& cell_volumes,
                                 double Q, const std::vector<double>& alphas);

}  // namespace arl
