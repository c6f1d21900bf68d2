#include "arl/exponents.hpp"

#include <algorithm>
#include <stdexcept>

namespace arl {

namespace {

std::string ordinal(int i) { return std::to_string(i); }

void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

}  // namespace

EndpointExponents endpoint_exponents(int d) {
    require(d >= 2, "endpoint_exponents: d >= 2 required");
    EndpointExponents e;
    e.d = d;
    const Rational dd(static_cast<std::int64_t>(d) * d + d);  // d^2+d
    e.p_d = (dd + Rational(2)) / dd;
    e.Q = (dd + Rational(2)) / Rational(2);
    e.p_d_conjugate = e.p_d / (e.p_d - Rational(1));
    e.sigma_of_p_d = Rational(2) * e.p_d_conjugate / dd;
    e.conjugate_equals_Q = e.p_d_conjugate == e.Q;
    e.sigma_fixed_point = e.sigma_of_p_d == e.p_d;
    e.endpoint_known_to_fail = (d == 2);
    return e;
}

DSMatrix DSMatrix::from_entries(std::vector<std::vector<Rational>> entries) {
    const int n = static_cast<int>(entries.size());
    require(n >= 1, "DSMatrix: empty");
    std::vector<Rational> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (auto& row : entries) {
        require(static_cast<int>(row.size()) == n, "DSMatrix: not square");
        for (auto& x : row) flat.push_back(std::move(x));
    }
    DSMatrix m(n, std::move(flat));
    m.validate();
    return m;
}

void DSMatrix::validate() const {
    const Rational one(1);
    for (int i = 0; i < n_; ++i) {
        Rational row_sum(0);
        for (int j = 0; j < n_; ++j) {
            const Rational& x = at(i, j);
            require(x >= Rational(0) && x <= one, "DSMatrix: entry (" + ordinal(i) + "," + ordinal(j) + ") outside [0,1]");
            row_sum += x;
        }
        require(row_sum == one, "DSMatrix: row " + ordinal(i) + " does not sum to 1");
    }
    for (int j = 0; j < n_; ++j) {
        Rational col_sum(0);
        for (int i = 0; i < n_; ++i) col_sum += at(i, j);
        require(col_sum == one, "DSMatrix: column " + ordinal(j) + " does not sum to 1");
    }
}

DSMatrix DSMatrix::balanced(int n) {
    std::vector<Rational> a(static_cast<std::size_t>(n) * n, Rational(1, n));
    return DSMatrix(n, std::move(a));
}

DSMatrix DSMatrix::permutation(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<Rational> a(static_cast<std::size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i) a[i * n + perm[i]] = Rational(1);
    DSMatrix m(n, std::move(a));
    m.validate();
    return m;
}

std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    return p;
}

DSMatrix DSMatrix::random(int n, int n_perms, Rng& rng) {
    require(n_perms >= 1, "DSMatrix::random: need at least one permutation");
    std::vector<std::vector<int>> perms;
    std::vector<std::int64_t> weights;
    std::int64_t total = 0;
    for (int k = 0; k < n_perms; ++k) {
        perms.push_back(random_permutation(n, rng));
        std::int64_t w = 1 + static_cast<std::int64_t>(rng.below(97));
        weights.push_back(w);
        total += w;
    }
    std::vector<Rational> a(static_cast<std::size_t>(n) * n, Rational(0));
    for (int k = 0; k < n_perms; ++k) {
        Rational lambda(weights[k], total);
        for (int i = 0; i < n; ++i) a[i * n + perms[k][i]] += lambda;
    }
    DSMatrix m(n, std::move(a));
    m.validate();
    return m;
}

bool DSMatrix::interior() const {
    for (const auto& x : a_)
        if (x <= Rational(0) || x >= Rational(1)) return false;
    return true;
}

DSMatrix operator*(const DSMatrix& x, const DSMatrix& y) {
    require(x.n_ == y.n_, "DSMatrix: size mismatch");
    const int n = x.n_;
    std::vector<Rational> a(static_cast<std::size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Rational& xik = x.at(i, k);
            if (xik.is_zero()) continue;
            for (int j = 0; j < n; ++j) a[i * n + j] += xik * y.at(k, j);
        }
    DSMatrix m(n, std::move(a));
    m.validate();
    return m;
}

DSMatrix DSMatrix::convex(const Rational& lambda, const DSMatrix& x, const DSMatrix& y) {
    require(x.n_ == y.n_, "DSMatrix: size mismatch");
    require(lambda >= Rational(0) && lambda <= Rational(1), "DSMatrix: lambda in [0,1]");
    const int n = x.n_;
    std::vector<Rational> a(static_cast<std::size_t>(n) * n, Rational(0));
    for (int i = 0; i < n * n; ++i) a[i] = lambda * x.a_[i] + (Rational(1) - lambda) * y.a_[i];
    DSMatrix m(n, std::move(a));
    m.validate();
    return m;
}

std::vector<Rational> DSMatrix::apply(const std::vector<Rational>& v) const {
    require(static_cast<int>(v.size()) == n_, "DSMatrix: vector size mismatch");
    std::vector<Rational> out(n_, Rational(0));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

std::vector<Rational> DSMatrix::column(int j) const {
    std::vector<Rational> out(n_, Rational(0));
    for (int i = 0; i < n_; ++i) out[i] = at(i, j);
    return out;
}

namespace {

// perfect matching on the support bipartite graph, rows matched in order,
// columns tried in ascending index (deterministic decompositions)
bool augment(const std::vector<char>& support, int n, int row, std::vector<int>& row_to_col,
             std::vector<int>& col_to_row, std::vector<char>& visited) {
    for (int j = 0; j < n; ++j) {
        if (!support[row * n + j] || visited[j]) continue;
        visited[j] = 1;
        if (col_to_row[j] < 0 || augment(support, n, col_to_row[j], row_to_col, col_to_row, visited)) {
            row_to_col[row] = j;
            col_to_row[j] = row;
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<BirkhoffTerm> birkhoff_decompose(const DSMatrix& a) {
    const int n = a.size();
    std::vector<Rational> work(static_cast<std::size_t>(n) * n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) work[i * n + j] = a.at(i, j);
    Rational remaining(1);
    std::vector<BirkhoffTerm> terms;

    while (remaining > Rational(0)) {
        std::vector<char> support(static_cast<std::size_t>(n) * n, 0);
        for (int i = 0; i < n * n; ++i) support[i] = !work[i].is_zero();
        std::vector<int> row_to_col(n, -1), col_to_row(n, -1);
        for (int i = 0; i < n; ++i) {
            std::vector<char> visited(n, 0);
            if (!augment(support, n, i, row_to_col, col_to_row, visited))
                throw std::logic_error("birkhoff_decompose: no perfect matching on the support");
        }
        Rational lambda = work[0 * n + row_to_col[0]];
        for (int i = 1; i < n; ++i) {
            const Rational& x = work[i * n + row_to_col[i]];
            if (x < lambda) lambda = x;
        }
        for (int i = 0; i < n; ++i) work[i * n + row_to_col[i]] -= lambda;
        terms.push_back({lambda, row_to_col});
        remaining -= lambda;
    }
    return terms;
}

DSMatrix birkhoff_reconstruct(const std::vector<BirkhoffTerm>& terms, int n) {
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
    for (const auto& t : terms)
        for (int i = 0; i < n; ++i) a[i][t.perm[i]] += t.coeff;
    return DSMatrix::from_entries(std::move(a));
}

Theorem14Result theorem14_targets(const std::vector<Rational>& delta, int m, const Rational& r,
                                  const std::vector<Rational>& q_inv, const DSMatrix& A, const DSMatrix& B) {
    const int n = A.size();
    require(B.size() == n, "theorem14: A and B must have the same size");
    require(static_cast<int>(delta.size()) == n, "theorem14: delta needs n entries");
    require(static_cast<int>(q_inv.size()) == n, "theorem14: q_inv needs n entries");
    require(m >= 0 && m < n, "theorem14: index m out of range");
    require(r > Rational(0) && r <= Rational(1), "theorem14: r in (0,1]");

    // sum 1/q_i = 1/r and q_i >= r
    Rational qsum(0);
    for (int i = 0; i < n; ++i) {
        require(q_inv[i] >= Rational(0), "theorem14: q_inv[" + std::to_string(i) + "] negative");
        require(q_inv[i] <= r.inverse(), "theorem14: q_" + std::to_string(i) + " < r");
        qsum += q_inv[i];
    }
    require(qsum == r.inverse(), "theorem14: sum of 1/q_i must equal 1/r");

    // delta_i, i != m, not all equal
    bool distinct = false;
    Rational first;
    bool have_first = false;
    for (int i = 0; i < n; ++i) {
        if (i == m) continue;
        if (!have_first) {
            first = delta[i];
            have_first = true;
        } else if (delta[i] != first) {
            distinct = true;
        }
    }
    require(distinct, "theorem14: the delta_i with i != m are all equal");
    require(A.interior(), "theorem14: A must lie in the open Birkhoff polytope DS°(n)");
    for (int i = 0; i < n; ++i)
        require(B.at(i, m) == r * q_inv[i],
                "theorem14: B e_m mismatch at row " + std::to_string(i) + " (expected r/q_i)");

    std::vector<Rational> e_m(n, Rational(0));
    e_m[m] = Rational(1);
    DSMatrix BA = B * A;
    Theorem14Result res;
    res.s = BA.apply(delta);
    res.theta = BA.apply(e_m);
    res.theta_interior = true;
    res.theta_sum = Rational(0);
    for (const auto& th : res.theta) {
        res.theta_sum += th;
        if (th <= Rational(0) || th >= Rational(1)) res.theta_interior = false;
    }
    return res;
}

DSMatrix ds_with_column(int m, const std::vector<Rational>& column) {
    const int n = static_cast<int>(column.size());
    Rational sum(0);
    for (const auto& c : column) {
        require(c >= Rational(0) && c <= Rational(1), "ds_with_column: column entries in [0,1]");
        sum += c;
    }
    require(sum == Rational(1), "ds_with_column: column must sum to 1");
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) {
        a[i][m] = column[i];
        Rational rest = (Rational(1) - column[i]) / Rational(n - 1);
        for (int j = 0; j < n; ++j)
            if (j != m) a[i][j] = rest;
    }
    return DSMatrix::from_entries(std::move(a));
}

Lemma52Result lemma52_system(int d, const std::vector<Rational>& eta, const std::vector<Rational>& q_inv,
                             const std::vector<Rational>& rho_inv) {
    require(d >= 3, "lemma52: d >= 3");
    require(static_cast<int>(eta.size()) == d && static_cast<int>(q_inv.size()) == d &&
                static_cast<int>(rho_inv.size()) == d,
            "lemma52: vectors need d entries");
    EndpointExponents e = endpoint_exponents(d);
    const Rational& Q = e.Q;

    Rational qsum(0), rsum(0), esum(0);
    for (int i = 0; i < d; ++i) {
        require(q_inv[i] >= Rational(0) && q_inv[i] <= Q.inverse(),
                "lemma52: q_" + std::to_string(i + 1) + " must be >= Q");
        require(rho_inv[i] >= Rational(0) && rho_inv[i] <= Rational(1, 2),
                "lemma52: rho_" + std::to_string(i + 1) + " must be >= 2");
        require(eta[i] >= Rational(0) && eta[i] <= Rational(1), "lemma52: eta in [0,1]");
        qsum += q_inv[i];
        rsum += rho_inv[i];
        esum += eta[i];
    }
    require(qsum == Q.inverse(), "lemma52: sum 1/q_i must equal 1/Q");
    require(rsum == Rational(1, 2), "lemma52: sum 1/rho_i must equal 1/2");
    require(esum == Rational(1), "lemma52: sum eta_i must equal 1");

    Lemma52Result res;
    const Rational cq(d - 2, d + 2), cr(4, d + 2), cc(3 - d, d + 2);
    const Rational Qp_inv = Rational(1) - Q.inverse();  // 1/Q'
    res.d_over_Q = Rational(d) / Q;
    res.sum_p_inv = Rational(0);
    res.sum_beta = Rational(0);
    for (int i = 0; i < d; ++i) {
        Rational pi = cq * q_inv[i] + cr * rho_inv[i];
        Rational bi = cq * (Rational(1) - eta[i] * Qp_inv) + cc;
        res.p_inv.push_back(pi);
        res.beta.push_back(bi);
        res.sum_p_inv += pi;
        res.sum_beta += bi;
    }
    res.sums_ok = (res.sum_p_inv == res.d_over_Q) && (res.sum_beta == res.d_over_Q);
    return res;
}

MuFamily lemma52_mu_family(int d, int n, const Rational& mu) {
    require(d >= 3, "mu_family: d >= 3");
    require(n >= d + 1, "mu_family: n > d");
    EndpointExponents e = endpoint_exponents(d);
    const Rational& Q = e.Q;
    require(mu.abs() < (Rational(10) * Q * Rational(static_cast<std::int64_t>(d) * d)).inverse(),
            "mu_family: |mu| must be below 1/(10 Q d^2)");

    MuFamily fam;
    fam.mu = mu;
    const Rational base = (Q * Rational(d)).inverse();
    const Rational dp2(d + 2);
    std::vector<Rational> q_inv(d, base + mu * dp2 / Rational(d - 2));  // q_3 = ... = q_d
    q_inv[0] = base - mu * dp2 * Rational(n - 1) / Rational(n - 2);
    q_inv[1] = base + mu * dp2 / Rational(n - 2);
    fam.q_inv = q_inv;
    fam.rho_inv.assign(d, Rational(1, 2 * d));  // rho_i = 2d

    const Rational cq(d - 2, d + 2), cr(4, d + 2);
    for (int i = 0; i < d; ++i) fam.p_inv.push_back(cq * q_inv[i] + cr * fam.rho_inv[i]);

    // (nminustwocond): 1/p_2 = (d-2)/(n-2) 1/p_3 + (n-d)/(n-2) 1/Q
    Rational rhs = Rational(d - 2, n - 2) * fam.p_inv[2] + Rational(n - d, n - 2) * Q.inverse();
    fam.nminustwo_holds = fam.p_inv[1] == rhs;
    return fam;
}

std::vector<Rational> eta_symmetric(int d) { return std::vector<Rational>(d, Rational(1, d)); }

std::vector<Rational> eta_perturbed(int d) {
    require(d >= 3, "eta_perturbed: d >= 3");
    EndpointExponents e = endpoint_exponents(d);
    Rational eps = (Rational(100) * Rational(d) * e.Q).inverse();
    std::vector<Rational> eta(d, Rational(1, d) - eps / Rational(d - 2));
    eta[0] = Rational(1, d);
    eta[1] = Rational(1, d) + eps;
    return eta;
}

BalanceReport balance_lambda(int d) {
    require(d >= 3, "balance_lambda: d >= 3");
    BalanceReport rep;
    rep.d = d;
    rep.Q = endpoint_exponents(d).Q;
    const Rational denom = Rational(d - 2) + Rational(2) * rep.Q;
    rep.balancing_exponent = Rational(d) / denom;
    rep.key_lhs = Rational(d + 2) * rep.Q / denom;
    rep.key_rhs = rep.Q / Rational(d);
    rep.key_identity = rep.key_lhs == rep.key_rhs;
    // from B <= C^{1/d} B^{(d-2)/(d(d+2))}: (1 - (d-2)/(d(d+2)))^{-1} / d
    Rational inner = Rational(1) - Rational(d - 2) / Rational(static_cast<std::int64_t>(d) * (d + 2));
    rep.final_exponent = inner.inverse() / Rational(d);
    rep.final_expected = Rational(d + 2) / Rational(static_cast<std::int64_t>(d) * d + d + 2);
    rep.final_identity = rep.final_exponent == rep.final_expected;
    return rep;
}

SnReport sn_bookkeeping(int d, int n, const std::vector<Rational>& eta, const Rational& mu) {
    EndpointExponents e = endpoint_exponents(d);
    const Rational& Q = e.Q;
    require(Rational(n) > Q, "sn_bookkeeping: need n > Q so that r = Q/n < 1");
    MuFamily fam = lemma52_mu_family(d, n, mu);
    Lemma52Result sys = lemma52_system(d, eta, fam.q_inv, fam.rho_inv);

    SnReport rep;
    rep.beta = sys.beta;
    rep.delta1 = sys.beta[0];
    rep.delta2 = sys.beta[1];
    rep.delta3 = Rational(d - 2, n - 2) * sys.beta[2] + Rational(n - d, n - 2) * Q.inverse();
    Rational sn = rep.delta1 + rep.delta2 + Rational(n - 2) * rep.delta3;
    rep.s = sn / Rational(n);
    rep.s_is_one_over_Q = rep.s == Q.inverse();
    // (n-1)/(n p_2) + 1/(n p_1) = 1/Q
    Rational lhs = Rational(n - 1, n) * fam.p_inv[1] + Rational(1, n) * fam.p_inv[0];
    rep.p_identity = lhs == Q.inverse();
    rep.delta23_distinct = rep.delta2 != rep.delta3;
    return rep;
}

DruryResult drury_iteration(int d, const Rational& p0, int max_iter) {
    require(d >= 3, "drury_iteration: d >= 3");
    require(p0 > Rational(1), "drury_iteration: p0 > 1 required");
    DruryResult res;
    const std::int64_t poly = static_cast<std::int64_t>(d) * d - 3 * d + 4;  // d^2-3d+4 > 0
    res.contraction = Rational(8, static_cast<std::int64_t>(d + 1) * (d + 2) * poly);
    const Rational e(d, static_cast<std::int64_t>(d + 1) * (d + 2));
    res.limit = Rational(static_cast<std::int64_t>(d) * d * d - 3 * d + 6, poly);
    Rational alt = Rational(d + 3) + Rational(2 * (static_cast<std::int64_t>(d) - 3), poly);
    res.limit_closed_forms_agree = res.limit == alt;
    res.theta_min =
        Rational(static_cast<std::int64_t>(d - 2) * (d + 1) * d, static_cast<std::int64_t>(d + 2) * poly);

    const Rational x_star = res.limit.inverse();
    res.fixed_point_residual_zero = (res.contraction * x_star + e) == x_star;

    const Rational threshold(BigInt(1), BigInt::pow(BigInt(10), 30));
    Rational x = p0.inverse();
    res.p.push_back(p0);
    res.monotone = true;
    int prev_dir = 0;
    for (int j = 0; j < max_iter; ++j) {
        if (res.steps_to_1e30 < 0 && (x - x_star).abs() < threshold) res.steps_to_1e30 = j;
        Rational x_next = res.contraction * x + e;
        int dir = Rational::compare(x_next, x);
        if (prev_dir != 0 && dir != 0 && dir != prev_dir) res.monotone = false;
        if (dir != 0) prev_dir = dir;
        x = x_next;
        res.p.push_back(x.inverse());
    }
    if (res.steps_to_1e30 < 0 && (x - x_star).abs() < threshold) res.steps_to_1e30 = max_iter;
    return res;
}

}  // namespace arl
