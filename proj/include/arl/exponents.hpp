#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arl/rational.hpp"
#include "arl/rng.hpp"

namespace arl {

/// p_d = (d^2+d+2)/(d^2+d), Q = (d^2+d+2)/2 and the exact consistency
/// checks p_d' = Q and sigma(p_d) = p_d with sigma(p) = 2p'/(d^2+d).
struct EndpointExponents {
    int d = 0;
    Rational p_d, Q, p_d_conjugate, sigma_of_p_d;
    bool conjugate_equals_Q = false;
    bool sigma_fixed_point = false;
    /// d = 2: the restricted weak type estimate fails at the endpoint.
    bool endpoint_known_to_fail = false;
};
EndpointExponents endpoint_exponents(int d);

/// Doubly stochastic matrix with exact rational entries.
class DSMatrix {
public:
    static DSMatrix from_entries(std::vector<std::vector<Rational>> entries);
    static DSMatrix balanced(int n);
    /// Permutation matrix: row i has its 1 in column perm[i].
    static DSMatrix permutation(const std::vector<int>& perm);
    /// Random convex combination of `n_perms` random permutations, with a
    /// small integer common denominator.
    static DSMatrix random(int n, int n_perms, Rng& rng);

    int size() const { return n_; }
    const Rational& at(int i, int j) const { return a_[i * n_ + j]; }
    bool interior() const;  // all entries strictly inside (0,1), DS°(n)

    friend DSMatrix operator*(const DSMatrix& x, const DSMatrix& y);
    static DSMatrix convex(const Rational& lambda, const DSMatrix& x, const DSMatrix& y);

    /// Matrix-vector product (exact).
    std::vector<Rational> apply(const std::vector<Rational>& v) const;
    std::vector<Rational> column(int j) const;

private:
    DSMatrix(int n, std::vector<Rational> a) : n_(n), a_(std::move(a)) {}
    int n_ = 0;
    std::vector<Rational> a_;  // row major
    void validate() const;
};

struct BirkhoffTerm {
    Rational coeff;
    std::vector<int> perm;  // row i -> column perm[i]
};

/// Birkhoff decomposition by repeated perfect matchings on the support
/// (deterministic lexicographic augmenting order). Coefficients are
/// positive, sum to 1, and the reconstruction is exact.
std::vector<BirkhoffTerm> birkhoff_decompose(const DSMatrix& a);
DSMatrix birkhoff_reconstruct(const std::vector<BirkhoffTerm>& terms, int n);

std::vector<int> random_permutation(int n, Rng& rng);

/// s = BA delta and theta = BA e_m of the interpolation theorem, with all
/// hypotheses checked exactly. q is passed through its inverses
/// (q_inv[i] = 1/q_i, zero meaning q_i = infinity). m is 0-based.
struct Theorem14Result {
    std::vector<Rational> s, theta;
    bool theta_interior = false;  // every theta_i in (0,1)
    Rational theta_sum;           // always exactly 1
};
Theorem14Result theorem14_targets(const std::vector<Rational>& delta, int m, const Rational& r,
                                  const std::vector<Rational>& q_inv, const DSMatrix& A, const DSMatrix& B);

/// Completes a doubly stochastic B with prescribed m-th column by
/// spreading each row's remaining mass uniformly over the other columns.
DSMatrix ds_with_column(int m, const std::vector<Rational>& column);

/// 1/p_i = (d-2)/(d+2) 1/q_i + 4/(d+2) 1/rho_i and
/// beta_i = (d-2)/(d+2) (1 - eta_i/Q') + (3-d)/(d+2); both sums equal d/Q.
struct Lemma52Result {
    std::vector<Rational> p_inv, beta;
    Rational sum_p_inv, sum_beta, d_over_Q;
    bool sums_ok = false;
};
Lemma52Result lemma52_system(int d, const std::vector<Rational>& eta, const std::vector<Rational>& q_inv,
                             const std::vector<Rational>& rho_inv);

/// The mu-perturbed exponent family with rho_i = 2d:
///   1/q_3 = 1/(Qd) + mu (d+2)/(d-2),  1/q_2 = 1/(Qd) + mu (d+2)/(n-2),
///   1/q_1 = 1/(Qd) - mu (d+2)(n-1)/(n-2),  q_4 = ... = q_3.
struct MuFamily {
    std::vector<Rational> q_inv, rho_inv, p_inv;
    Rational mu;
    bool nminustwo_holds = false;  // 1/p_2 = (d-2)/(n-2) 1/p_3 + (n-d)/(n-2) 1/Q
};
MuFamily lemma52_mu_family(int d, int n, const Rational& mu);

/// Symmetric eta = 1/d with the default perturbation making delta_2 != delta_3:
/// eta_2 = 1/d + e, eta_3..d = 1/d - e/(d-2), e = 1/(100 d Q).
std::vector<Rational> eta_symmetric(int d);
std::vector<Rational> eta_perturbed(int d);

/// The Lambda-balancing identities behind the weak-type summation:
/// (d+2)Q/(d-2+2Q) = Q/d and the final-bound exponent
/// (1 - (d-2)/(d(d+2)))^{-1} / d = (d+2)/(d^2+d+2), all exact.
struct BalanceReport {
    int d = 0;
    Rational Q;
    Rational balancing_exponent;  // d/(d-2+2Q)
    Rational key_lhs, key_rhs;
    bool key_identity = false;
    Rational final_exponent, final_expected;
    bool final_identity = false;
};
BalanceReport balance_lambda(int d);

/// The s*n = sum delta_i chain: delta_1 = beta_1, delta_2 = beta_2,
/// delta_3 = (d-2)/(n-2) beta_3 + (n-d)/(n-2)/Q, giving s = 1/Q exactly.
struct SnReport {
    std::vector<Rational> beta;
    Rational delta1, delta2, delta3;
    Rational s;
    bool s_is_one_over_Q = false;
    bool p_identity = false;  // (n-1)/(n p_2) + 1/(n p_1) = 1/Q
    bool delta23_distinct = false;
};
SnReport sn_bookkeeping(int d, int n, const std::vector<Rational>& eta, const Rational& mu);

/// Exact Drury bootstrap: 1/p_{j+1} = c/p_j + e with
/// c = 8/((d+1)(d+2)(d^2-3d+4)), e = d/((d+1)(d+2)); the fixed point is
/// (d^3-3d+6)/(d^2-3d+4) = d+3+2(d-3)/(d^2-3d+4).
struct DruryResult {
    std::vector<Rational> p;  // p_0 ... p_k
    Rational limit, theta_min, contraction;
    bool limit_closed_forms_agree = false;
    bool fixed_point_residual_zero = false;
    bool monotone = false;
    int steps_to_1e30 = -1;  // first j with |1/p_j - 1/limit| < 1e-30
};
DruryResult drury_iteration(int d, const Rational& p0, int max_iter);

}  // namespace arl
