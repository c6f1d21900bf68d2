#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "arl/curves.hpp"
#include "arl/polynomial.hpp"

namespace arl {

/// Strictly increasing d-tuple inside the curve interval (the region E).
class SimplexSample {
public:
    static SimplexSample make(std::vector<double> t, const Curve& c);
    const std::vector<double>& t() const { return t_; }
    int dim() const { return static_cast<int>(t_.size()); }

private:
    std::vector<double> t_;
};

/// det(gamma'(t_1), ..., gamma'(t_d)); no ordering requirement, the sign
/// flips under transpositions.
double jacobian_raw(const Curve& c, const std::vector<double>& t);
double jacobian(const Curve& c, const SimplexSample& s);

struct Histogram {
    std::vector<double> edges;          // size bins+1
    std::vector<std::uint64_t> counts;  // size bins
};

/// Monte Carlo probe of |J| >= c1 (prod tau)^{1/d} prod (t_k - t_j):
/// the empirical infimum of the ratio is a lower-bound candidate for c1.
struct JacobianBoundReport {
    double min_ratio = std::numeric_limits<double>::infinity();
    double max_ratio = 0.0;
    double ratio_variance = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t degenerate_samples = 0;  // zero denominator (vanishing torsion)
    bool degenerate_family = false;        // every sample degenerate
    Histogram hist;
    std::uint64_t seed = 0;
};
JacobianBoundReport check_jacobian_bound(const Curve& c, std::uint64_t n_samples, std::uint64_t seed);

struct OffspringTorsionReport {
    double min_ratio = std::numeric_limits<double>::infinity();
    std::uint64_t evaluated = 0;
    std::uint64_t skipped = 0;  // points where every parent torsion vanishes
};
/// min over the grid of |tau_{gamma_kappa}(t)| / max_j |tau(t + kappa_j)|.
OffspringTorsionReport check_offspring_torsion(const Curve& c, const OffspringSpec& spec,
                                               const std::vector<double>& grid);

enum class MultiplicityFlag { NoCollisionFound, CollisionFound };

struct MultiplicityReport {
    MultiplicityFlag flag = MultiplicityFlag::NoCollisionFound;
    std::vector<double> witness_a, witness_b;  // collision witness pair (if found)
    double phi_distance = std::numeric_limits<double>::infinity();
    double sample_distance = 0.0;
    std::uint64_t pairs = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    /// Deliberately worded as a falsification outcome, never as a proof.
    std::string wording() const {
        return flag == MultiplicityFlag::CollisionFound ? "collision found" : "no collision found";
    }
};
/// Falsification probe for bounded multiplicity of Phi(t) = sum gamma(t_j):
/// looks for s != s' with |Phi(s) - Phi(s')| < tol but |s - s'| > 10 tol.
MultiplicityReport multiplicity_probe(const Curve& c, std::uint64_t n_pairs, std::uint64_t seed, double tol);

struct SublevelEstimate {
    double alpha = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t hits = 0;
};
/// meas{h in [-R,R]^{d-1} : |h_1...h_{d-1}| prod_{i<j<=d-1} |h_j-h_i| <= alpha}
/// by Monte Carlo; the ladder variant shares sample points across alphas,
/// making the estimates exactly monotone in alpha.
SublevelEstimate vandermonde_sublevel_measure(int d, double alpha, double box_halfwidth, std::uint64_t n_mc,
                                              std::uint64_t seed);
std::vector<SublevelEstimate> vandermonde_sublevel_ladder(int d, const std::vector<double>& alphas,
                                                          double box_halfwidth, std::uint64_t n_mc,
                                                          std::uint64_t seed);
/// Least-squares slope of log(estimate) against log(alpha).
double loglog_slope(const std::vector<SublevelEstimate>& ladder);

struct PolySublevelResult {
    double measured = 0.0;  // Lebesgue measure of {t in (a,b): |p| < eps |p(b)|}
    double bound = 0.0;     // 2 N eps^{1/(2N)} (b-a)
    bool within_bound = false;
};
/// Exact-root-isolation evaluation of the polynomial sublevel lemma.
/// Preconditions: |p| > 0 on (a,b) (verified), 0 < eps < 2^{-N}.
PolySublevelResult polynomial_sublevel_check(const Poly& p, double a, double b, double eps);

struct PsiNode {
    double u = 0.0;
    double psi = 0.0;        // MC volume estimate of the chained region G_u
    double std_error = 0.0;
    double upper_bound = 0.0;  // V(s)/(s_d - s_1)
};

struct PsiReport {
    double jd_direct = 0.0;        // determinant with columns (1, s_j, ..., phi'(s_j))
    double integral = 0.0;         // quadrature of phi^{(d)} Psi
    double integral_error = 0.0;   // combined MC + quadrature error estimate
    double psi_mass = 0.0;         // quadrature of Psi alone
    double psi_mass_error = 0.0;
    double cd_vandermonde = 0.0;   // c_d V(s), c_d = (2!...(d-1)!)^{-1}
    std::vector<PsiNode> nodes;
    bool pointwise_ok = true;      // 0 <= psi <= bound at every node
    bool inconclusive = false;     // MC error too large to decide
};

struct PsiOptions {
    int panels = 8;
    int nodes_per_panel = 4;
    std::uint64_t mc_points = 100000;  // per quadrature node
    std::uint64_t seed = 1;
};
PsiReport psi_kernel_checks(const Poly& phi, const std::vector<double>& s, const PsiOptions& opt);

struct SignInterval {
    double lo, hi;  // -inf / +inf encoded as infinities
};
struct SignDecomposition {
    std::vector<SignInterval> intervals;
    std::vector<double> roots;  // distinct real roots of phi^{(d)} phi^{(d+1)}
    bool torsion_identically_zero = false;  // deg phi < d
};
/// Partition of R by the roots of phi^{(d)} phi^{(d+1)} (Sturm isolation).
SignDecomposition sign_interval_decomposition(const Poly& phi, int d);

/// The unique l with 2^{-l-1} < |V(t)| <= 2^{-l}.
int dyadic_cell_index(const SimplexSample& s);
int dyadic_cell_index_value(double vandermonde_abs);

}  // namespace arl
