#include "arl/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "arl/rng.hpp"

namespace arl {

namespace {

std::vector<double> sorted_uniform_tuple(Rng& rng, int d, double lo, double hi) {
    std::vector<double> t(d);
    for (int i = 0; i < d; ++i) t[i] = rng.uniform(lo, hi);
    std::sort(t.begin(), t.end());
    return t;
}

double gap_product(const std::vector<double>& t) {
    double p = 1.0;
    for (std::size_t j = 0; j < t.size(); ++j)
        for (std::size_t k = j + 1; k < t.size(); ++k) p *= t[k] - t[j];
    return p;
}

}  // namespace

SimplexSample SimplexSample::make(std::vector<double> t, const Curve& c) {
    if (t.size() != static_cast<std::size_t>(c.dim()))
        throw std::invalid_argument("SimplexSample: need d coordinates");
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (!(t[i] < t[i + 1])) throw std::invalid_argument("SimplexSample: coordinates must be strictly increasing");
    for (double ti : t) c.require_in_domain(ti);
    SimplexSample s;
    s.t_ = std::move(t);
    return s;
}

double jacobian_raw(const Curve& c, const std::vector<double>& t) {
    const int d = c.dim();
    if (t.size() != static_cast<std::size_t>(d)) throw std::invalid_argument("jacobian: need d coordinates");
    Matrix m(d, d);
    for (int j = 0; j < d; ++j) m.set_col(j, c.derivative(t[j], 1));
    return det_pivoted(std::move(m)).value;
}

double jacobian(const Curve& c, const SimplexSample& s) { return jacobian_raw(c, s.t()); }

JacobianBoundReport check_jacobian_bound(const Curve& c, std::uint64_t n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("check_jacobian_bound: n_samples >= 1");
    const int d = c.dim();
    JacobianBoundReport rep;
    rep.samples = n_samples;
    rep.seed = seed;

    std::vector<double> ratios(n_samples, std::numeric_limits<double>::quiet_NaN());
    chunked_reduce(n_samples, 1, [&](std::uint64_t lo, std::uint64_t hi, std::vector<double>&) {
        for (std::uint64_t k = lo; k < hi; ++k) {
            Rng rng(seed, k * static_cast<std::uint64_t>(d));
            auto t = sorted_uniform_tuple(rng, d, c.t_lo(), c.t_hi());
            double denom = gap_product(t);
            double tau_prod = 1.0;
            for (double ti : t) tau_prod *= std::abs(c.torsion(ti));
            if (tau_prod == 0.0 || denom == 0.0) continue;  // leaves NaN marker
            double num = std::abs(jacobian_raw(c, t));
            ratios[k] = num / (std::pow(tau_prod, 1.0 / d) * denom);
        }
    });

    double sum = 0.0, sum2 = 0.0;
    std::uint64_t valid = 0;
    for (double r : ratios) {
        if (std::isnan(r)) {
            ++rep.degenerate_samples;
            continue;
        }
        ++valid;
        sum += r;
        sum2 += r * r;
        rep.min_ratio = std::min(rep.min_ratio, r);
        rep.max_ratio = std::max(rep.max_ratio, r);
    }
    if (valid == 0) {
        rep.degenerate_family = true;
        rep.min_ratio = 0.0;
        return rep;
    }
    double mean = sum / valid;
    rep.ratio_variance = std::max(0.0, sum2 / valid - mean * mean);

    const int bins = 32;
    double lo = rep.min_ratio, hi = rep.max_ratio;
    if (hi <= lo) hi = lo + 1.0;
    rep.hist.edges.resize(bins + 1);
    rep.hist.counts.assign(bins, 0);
    for (int i = 0; i <= bins; ++i) rep.hist.edges[i] = lo + (hi - lo) * i / bins;
    for (double r : ratios) {
        if (std::isnan(r)) continue;
        int b = std::min(bins - 1, static_cast<int>((r - lo) / (hi - lo) * bins));
        ++rep.hist.counts[b];
    }
    return rep;
}

OffspringTorsionReport check_offspring_torsion(const Curve& c, const OffspringSpec& spec,
                                               const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("check_offspring_torsion: empty grid");
    OffspringCurve off(c, spec);
    OffspringTorsionReport rep;
    for (double t : grid) {
        off.require_in_domain(t);
        double parent_max = 0.0;
        for (double k : spec.kappa()) {
            double tj = std::min(std::max(t + k, c.t_lo()), c.t_hi());
            parent_max = std::max(parent_max, std::abs(c.torsion(tj)));
        }
        if (parent_max == 0.0) {
            ++rep.skipped;
            continue;
        }
        double ratio = std::abs(off.torsion(t)) / parent_max;
        rep.min_ratio = std::min(rep.min_ratio, ratio);
        ++rep.evaluated;
    }
    return rep;
}

namespace {

std::vector<double> phi_map(const Curve& c, const std::vector<double>& t) {
    std::vector<double> acc(c.dim(), 0.0);
    for (double ti : t) {
        auto p = c.position(ti);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += p[i];
    }
    return acc;
}

double linf(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

MultiplicityReport multiplicity_probe(const Curve& c, std::uint64_t n_pairs, std::uint64_t seed, double tol) {
    if (n_pairs < 1) throw std::invalid_argument("multiplicity_probe: n_pairs >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("multiplicity_probe: tol must be positive");
    const int d = c.dim();
    MultiplicityReport rep;
    rep.pairs = n_pairs;
    rep.seed = seed;
    rep.tol = tol;

    struct Candidate {
        double dist;
        std::vector<double> a, b;
    };
    std::vector<Candidate> best;  // a few closest pairs, kept for refinement

    Rng rng(seed);
    for (std::uint64_t k = 0; k < n_pairs; ++k) {
        auto s1 = sorted_uniform_tuple(rng, d, c.t_lo(), c.t_hi());
        auto s2 = sorted_uniform_tuple(rng, d, c.t_lo(), c.t_hi());
        double sdist = linf(s1, s2);
        if (sdist <= 10.0 * tol) continue;
        double pdist = linf(phi_map(c, s1), phi_map(c, s2));
        if (pdist < tol) {
            rep.flag = MultiplicityFlag::CollisionFound;
            rep.witness_a = s1;
            rep.witness_b = s2;
            rep.phi_distance = pdist;
            rep.sample_distance = sdist;
            return rep;
        }
        rep.phi_distance = std::min(rep.phi_distance, pdist);
        best.push_back({pdist, s1, s2});
        std::sort(best.begin(), best.end(), [](const Candidate& x, const Candidate& y) { return x.dist < y.dist; });
        if (best.size() > 8) best.pop_back();
    }

    // Refinement: for each near-miss, adjust the last coordinate of s2 by
    // bisection to match one coordinate of Phi exactly, then re-test the
    // full vector. Finds the continuum fibers of rank-deficient curves.
    for (const auto& cand : best) {
        auto target = phi_map(c, cand.a);
        auto s2 = cand.b;
        // pick the matching coordinate: largest |gamma_i'| at s2_d
        auto deriv = c.derivative(s2.back(), 1);
        std::size_t ci = 0;
        for (std::size_t i = 1; i < deriv.size(); ++i)
            if (std::abs(deriv[i]) > std::abs(deriv[ci])) ci = i;
        if (deriv[ci] == 0.0) continue;
        auto g = [&](double x) {
            auto s = s2;
            s.back() = x;
            return phi_map(c, s)[ci] - target[ci];
        };
        double lo = s2[d - 2] + 1e-15, hi = c.t_hi();
        if (c.family() == CurveFamily::Monomial) lo = std::max(lo, 1e-12);
        double glo = g(lo), ghi = g(hi);
        if (glo == 0.0 || ghi == 0.0 || (glo < 0) != (ghi < 0)) {
            for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(hi)); ++it) {
                double mid = 0.5 * (lo + hi);
                double gm = g(mid);
                if (gm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((gm < 0) == (glo < 0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            auto s2r = s2;
            s2r.back() = 0.5 * (lo + hi);
            if (!std::is_sorted(s2r.begin(), s2r.end())) continue;
            double sdist = linf(cand.a, s2r);
            double pdist = linf(phi_map(c, cand.a), phi_map(c, s2r));
            rep.phi_distance = std::min(rep.phi_distance, pdist);
            if (pdist < tol && sdist > 10.0 * tol) {
                rep.flag = MultiplicityFlag::CollisionFound;
                rep.witness_a = cand.a;
                rep.witness_b = s2r;
                rep.phi_distance = pdist;
                rep.sample_distance = sdist;
                return rep;
            }
        }
    }
    return rep;
}

std::vector<SublevelEstimate> vandermonde_sublevel_ladder(int d, const std::vector<double>& alphas,
                                                          double box_halfwidth, std::uint64_t n_mc,
                                                          std::uint64_t seed) {
    if (d < 2) throw std::invalid_argument("sublevel: d >= 2");
    if (n_mc < 1000) throw std::invalid_argument("sublevel: n_mc >= 1000");
    for (double a : alphas)
        if (!(a >= 0.0)) throw std::invalid_argument("sublevel: alpha must be nonnegative");
    const int m = d - 1;
    const double R = box_halfwidth;
    const double box_vol = std::pow(2.0 * R, m);

    // shared points across the alpha ladder: counts are nested, so the
    // estimates are monotone in alpha by construction
    auto hits = chunked_reduce(n_mc, alphas.size(), [&](std::uint64_t lo, std::uint64_t hi, std::vector<double>& acc) {
        std::vector<double> h(m);
        for (std::uint64_t k = lo; k < hi; ++k) {
            for (int i = 0; i < m; ++i) h[i] = -R + 2.0 * R * counter_u01(seed, k * m + i);
            double prod = 1.0;
            for (int i = 0; i < m; ++i) prod *= h[i];
            prod = std::abs(prod);
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) prod *= std::abs(h[j] - h[i]);
            for (std::size_t a = 0; a < alphas.size(); ++a)
                if (prod <= alphas[a]) acc[a] += 1.0;
        }
    });

    std::vector<SublevelEstimate> out(alphas.size());
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        double p = hits[a] / static_cast<double>(n_mc);
        out[a].alpha = alphas[a];
        out[a].hits = static_cast<std::uint64_t>(hits[a]);
        out[a].estimate = box_vol * p;
        out[a].std_error = box_vol * std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(n_mc)));
    }
    return out;
}

SublevelEstimate vandermonde_sublevel_measure(int d, double alpha, double box_halfwidth, std::uint64_t n_mc,
                                              std::uint64_t seed) {
    return vandermonde_sublevel_ladder(d, {alpha}, box_halfwidth, n_mc, seed)[0];
}

double loglog_slope(const std::vector<SublevelEstimate>& ladder) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& e : ladder) {
        if (e.estimate <= 0.0) continue;
        double x = std::log(e.alpha), y = std::log(e.estimate);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::domain_error("loglog_slope: not enough positive estimates");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

PolySublevelResult polynomial_sublevel_check(const Poly& p, double a, double b, double eps) {
    if (!(a < b)) throw std::invalid_argument("polynomial_sublevel_check: need a < b");
    const int N = p.degree();
    if (N < 0) throw std::invalid_argument("polynomial_sublevel_check: zero polynomial");
    if (!(eps > 0.0) || !(eps < std::pow(2.0, -N)))
        throw std::invalid_argument("polynomial_sublevel_check: need 0 < eps < 2^{-N}");

    // inputs snapped at their input precision (simplest rational that
    // reads back as the same double) so the Sturm chains stay small
    std::vector<Rational> snapped;
    for (double x : p.coeffs()) snapped.push_back(Rational::from_double_snapped(x));
    RPoly rp(std::move(snapped));
    Rational ra = Rational::from_double_snapped(a), rb = Rational::from_double_snapped(b);
    Rational pb = rp.eval(rb);
    if (pb.is_zero()) throw std::domain_error("polynomial_sublevel_check: p(b) = 0");
    if (rp.degree() >= 1) {
        SturmSequence sturm(rp);
        if (sturm.count_roots(ra, rb) > 0) throw std::domain_error("polynomial_sublevel_check: p has a root in (a,b)");
    }

    // q = p^2 - eps^2 p(b)^2; the sublevel set is {q < 0}
    Rational eps_r = Rational::from_double_snapped(eps);
    RPoly q = rp * rp;
    {
        auto c = q.coeffs();
        c[0] -= eps_r * eps_r * pb * pb;
        q = RPoly(std::move(c));
    }

    PolySublevelResult res;
    res.bound = 2.0 * N * std::pow(eps, 1.0 / (2.0 * N)) * (b - a);

    SturmSequence sq(q);
    auto roots = sq.isolate_roots(Rational::from_double(1e-12));
    // partition (a,b) by the roots and classify each open piece exactly
    std::vector<Rational> cuts{ra};
    for (const auto& r : roots) {
        Rational mid = (r.lo + r.hi) * Rational(1, 2);
        if (ra < mid && mid < rb) cuts.push_back(mid);
    }
    cuts.push_back(rb);
    double measured = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Rational mid = (cuts[i] + cuts[i + 1]) * Rational(1, 2);
        if (q.sign_at(mid) < 0) measured += (cuts[i + 1] - cuts[i]).to_double();
    }
    res.measured = measured;
    res.within_bound = measured <= res.bound;
    return res;
}

namespace {

struct GaussLegendre {
    std::vector<double> x, w;  // nodes/weights on [-1, 1]
};

// 4-point Gauss-Legendre; composite panels supply the resolution
const GaussLegendre& gl4() {
    static const GaussLegendre g{
        {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526},
        {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538}};
    return g;
}

}  // namespace

PsiReport psi_kernel_checks(const Poly& phi, const std::vector<double>& s, const PsiOptions& opt) {
    const int d = static_cast<int>(s.size());
    if (d < 3) throw std::invalid_argument("psi_kernel_checks: need d >= 3");
    for (int i = 0; i + 1 < d; ++i)
        if (!(s[i] < s[i + 1])) throw std::invalid_argument("psi_kernel_checks: s must be strictly increasing");

    PsiReport rep;

    // direct determinant: columns (1, s_j, s_j^2/2!, ..., s_j^{d-2}/(d-2)!, phi'(s_j))
    Poly dphi = phi.derivative();
    {
        Matrix m(d, d);
        for (int j = 0; j < d; ++j) {
            std::vector<double> col(d);
            double fact = 1.0;
            for (int r = 0; r < d - 1; ++r) {
                if (r > 0) fact *= r;
                col[r] = std::pow(s[j], r) / fact;
            }
            col[d - 1] = dphi(s[j]);
            m.set_col(j, col);
        }
        rep.jd_direct = det_pivoted(std::move(m)).value;
    }

    // c_d V(s), c_d = (2! ... (d-1)!)^{-1}
    double cd = 1.0, fact = 1.0;
    for (int k = 2; k <= d - 1; ++k) {
        fact *= k;
        cd /= fact;
    }
    rep.cd_vandermonde = cd * vandermonde(s);

    const double psi_bound = std::abs(vandermonde(s)) / (s[d - 1] - s[0]);

    // MC estimate of Psi(u) = vol(G_u): sample the bounding box
    // B_2 x ... x B_{d-1} and accept when the chain constraints hold.
    // level m has m coordinates, x_j^m in [s_j, s_{j + d - m}]
    double box_vol = 1.0;
    int n_coords = 0;
    for (int m = 2; m <= d - 1; ++m) {
        for (int j = 0; j < m; ++j) box_vol *= s[j + d - m] - s[j];
        n_coords += m;
    }

    auto psi_at = [&](double u, std::uint64_t node_seed) -> std::pair<double, double> {
        auto acc = chunked_reduce(opt.mc_points, 1, [&](std::uint64_t lo, std::uint64_t hi, std::vector<double>& out) {
            std::vector<std::vector<double>> x(d + 1);  // x[m] has m coords, levels 2..d-1
            for (std::uint64_t k = lo; k < hi; ++k) {
                std::uint64_t ctr = k * static_cast<std::uint64_t>(n_coords);
                bool ok = true;
                for (int m = d - 1; m >= 2; --m) {
                    x[m].assign(m, 0.0);
                    for (int j = 0; j < m; ++j) {
                        double lo_j = s[j], hi_j = s[j + d - m];
                        x[m][j] = lo_j + (hi_j - lo_j) * counter_u01(node_seed, ctr++);
                    }
                }
                // chain: x^{d-k} interleaves x^{d-k+1} (x^d = s)
                for (int m = d - 2; m >= 2 && ok; --m) {
                    const auto& upper = x[m + 1];
                    for (int j = 0; j < m; ++j)
                        if (!(upper[j] <= x[m][j] && x[m][j] <= upper[j + 1])) {
                            ok = false;
                            break;
                        }
                }
                if (ok && d >= 4) {
                    // top link: x^{d-1} interleaves s
                    for (int j = 0; j < d - 1; ++j)
                        if (!(s[j] <= x[d - 1][j] && x[d - 1][j] <= s[j + 1])) {
                            ok = false;
                            break;
                        }
                }
                if (ok && d == 3) {
                    // x^2 directly interleaves s
                    if (!(s[0] <= x[2][0] && x[2][0] <= s[1] && s[1] <= x[2][1] && x[2][1] <= s[2])) ok = false;
                }
                if (ok && !(x[2][0] <= u && u <= x[2][1])) ok = false;
                if (ok) out[0] += 1.0;
            }
        });
        double p = acc[0] / static_cast<double>(opt.mc_points);
        double est = box_vol * p;
        double se = box_vol * std::sqrt(std::max(0.0, p * (1.0 - p) / static_cast<double>(opt.mc_points)));
        return {est, se};
    };

    Poly phid = phi.derivative(d);
    const auto& gl = gl4();
    auto run_quadrature = [&](int panels, std::uint64_t pass_seed, double& integral, double& integral_se,
                              double& mass, double& mass_se, bool record_nodes) {
        integral = integral_se = mass = mass_se = 0.0;
        double var_int = 0.0, var_mass = 0.0;
        for (int pnl = 0; pnl < panels; ++pnl) {
            double a = s[0] + (s[d - 1] - s[0]) * pnl / panels;
            double b = s[0] + (s[d - 1] - s[0]) * (pnl + 1) / panels;
            double hw = 0.5 * (b - a), mid = 0.5 * (a + b);
            for (std::size_t g = 0; g < gl.x.size(); ++g) {
                double u = mid + hw * gl.x[g];
                double w = hw * gl.w[g];
                std::uint64_t node_seed = pass_seed ^ (0x9E37uLL + pnl * 131 + g);
                auto [psi, se] = psi_at(u, node_seed);
                integral += w * phid(u) * psi;
                var_int += (w * phid(u) * se) * (w * phid(u) * se);
                mass += w * psi;
                var_mass += (w * se) * (w * se);
                if (record_nodes) {
                    rep.nodes.push_back({u, psi, se, psi_bound});
                    if (psi < 0.0 || psi > psi_bound * (1.0 + 1e-12)) rep.pointwise_ok = false;
                }
            }
        }
        integral_se = std::sqrt(var_int);
        mass_se = std::sqrt(var_mass);
    };

    double i1, i1se, m1, m1se;
    run_quadrature(opt.panels, opt.seed, i1, i1se, m1, m1se, true);
    double i2, i2se, m2, m2se;
    run_quadrature(2 * opt.panels, opt.seed ^ 0xABCDEF123456ULL, i2, i2se, m2, m2se, false);

    rep.integral = i2;
    rep.integral_error = i2se + std::abs(i2 - i1);  // MC + panel-refinement discrepancy
    rep.psi_mass = m2;
    rep.psi_mass_error = m2se + std::abs(m2 - m1);

    double scale = std::max({std::abs(rep.jd_direct), std::abs(rep.integral), 1e-300});
    if (rep.integral_error > 0.25 * scale) rep.inconclusive = true;
    return rep;
}

SignDecomposition sign_interval_decomposition(const Poly& phi, int d) {
    SignDecomposition out;
    const double inf = std::numeric_limits<double>::infinity();
    Poly pd = phi.derivative(d);
    if (pd.is_zero()) {
        out.torsion_identically_zero = true;
        out.intervals.push_back({-inf, inf});
        return out;
    }
    Poly pd1 = phi.derivative(d + 1);
    Poly prod = pd1.is_zero() ? pd : pd * pd1;
    out.roots = real_roots(RPoly::from_poly(prod), 1e-12);
    double lo = -inf;
    for (double r : out.roots) {
        out.intervals.push_back({lo, r});
        lo = r;
    }
    out.intervals.push_back({lo, inf});
    return out;
}

int dyadic_cell_index_value(double v) {
    if (!(v > 0.0)) throw std::domain_error("dyadic_cell_index: |V| must be positive");
    int e;
    double m = std::frexp(v, &e);  // v = m 2^e, m in [0.5, 1)
    // 2^{-l-1} < v <= 2^{-l}; the boundary v = 2^{e-1} belongs to l = 1-e
    return m == 0.5 ? 1 - e : -e;
}

int dyadic_cell_index(const SimplexSample& s) {
    double v = std::abs(gap_product(s.t()));
    return dyadic_cell_index_value(v);
}

}  // namespace arl
