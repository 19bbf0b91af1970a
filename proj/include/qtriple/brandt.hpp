#pragma once
// weight-2k forms on the class set: rho, invariant fibres, Brandt and Atkin-Lehner
// matrices, simultaneous eigenforms, newform dimensions

#include "numeric.hpp"
#include "quatlat.hpp"
#include "su2rep.hpp"

#include <map>
#include <memory>

namespace qtriple {

// x -> [[z, -conj w], [w, conj z]], z = x0 + x1 i sqrt|a|, w = (x2 - x3 i sqrt|a|) sqrt|b|
template <class R = Real>
std::array<Cx<R>, 4> embed(const Quat& x) {
    using std::sqrt;
    R sa = sqrt(R(x.a < 0 ? -x.a : x.a)), sb = sqrt(R(x.b < 0 ? -x.b : x.b));
    R x0 = to_real<R>(x.x[0]), x1 = to_real<R>(x.x[1]), x2 = to_real<R>(x.x[2]), x3 = to_real<R>(x.x[3]);
    Cx<R> z(x0, x1 * sa), w(x2 * sb, -x3 * sa * sb);
    return {z, -w.conj(), w, z.conj()};  // g00, g01, g10, g11
}

// P(X,Y) -> P((X,Y) g), orthonormal coordinates, g scaled to determinant one
template <class R = Real>
CMat<R> rho_matrix(const std::array<Cx<R>, 4>& g_in, int k) {
    using std::sqrt;
    const int n = 2 * k - 2;
    const int d = n + 1;
    // det of [[z,-w~],[w,z~]] is |z|^2+|w|^2 for embedded quaternions; general 2x2 here
    Cx<R> det = g_in[0] * g_in[3] - g_in[1] * g_in[2];
    // principal square root of det
    R r = det.abs();
    R sr = sqrt(r);
    R cth = det.re / r;
    // half-angle
    R ch = sqrt((1 + cth) / 2), sh = sqrt((1 - cth) / 2);
    if (det.im < 0) sh = -sh;
    Cx<R> sq = sr * Cx<R>(ch, sh);
    std::array<Cx<R>, 4> g;
    for (int t = 0; t < 4; ++t) g[t] = g_in[t] / sq;
    const Cx<R>&a = g[0], &b = g[1], &c = g[2], &dd = g[3];
    std::vector<R> sb(d);
    for (int i = 0; i < d; ++i) sb[i] = sqrt(R(binom(n, i).str()));
    // powers of the linear forms as Y-degree coefficient arrays
    auto lin_pow = [&](const Cx<R>& cx, const Cx<R>& cy, int e) {
        CVec<R> p(1, Cx<R>(R(1)));
        for (int t = 0; t < e; ++t) {
            CVec<R> q(p.size() + 1);
            for (size_t u = 0; u < p.size(); ++u) {
                q[u] += p[u] * cx;
                q[u + 1] += p[u] * cy;
            }
            p = std::move(q);
        }
        return p;
    };
    auto M = cmat<R>(d, d);
    for (int col = 0; col < d; ++col) {
        CVec<R> A = lin_pow(a, c, n - col), B = lin_pow(b, dd, col);
        for (size_t u = 0; u < A.size(); ++u)
            for (size_t v = 0; v < B.size(); ++v) {
                size_t m = u + v;
                M[m][col] += (sb[col] / sb[m]) * (A[u] * B[v]);
            }
    }
    return M;
}

template <class R = Real>
CMat<R> rho(const Quat& x, int k) {
    if (x.is_zero()) throw domain_error("rho of zero");
    return rho_matrix<R>(embed<R>(x), k);
}

// orthonormal coordinate n = sqrt(binom) * monomial coefficient; this goes back
template <class R = Real>
CVec<R> monomial_coefficients(const CVec<R>& on, int k) {
    using std::sqrt;
    const int n = 2 * k - 2;
    CVec<R> out(on.size());
    for (int i = 0; i <= n; ++i) out[i] = on[i] / sqrt(R(binom(n, i).str()));
    return out;
}

template <class R = Real>
struct WeightSpace {
    int k = 1;
    std::shared_ptr<const ClassSet> cs;
    std::vector<CMat<R>> Q;       // per class, columns span the invariant fibre
    std::vector<size_t> offset;   // global index of each class block
    size_t total_dim = 0;

    size_t dim(size_t j) const { return Q[j].empty() ? 0 : Q[j][0].size(); }
};

template <class R = Real>
CMat<R> invariant_basis(const std::vector<Quat>& units, int k) {
    const size_t d = static_cast<size_t>(2 * k - 1);
    auto P = cmat<R>(d, d);
    for (auto& u : units) {
        auto M = rho<R>(u, k);
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b) P[a][b] += M[a][b];
    }
    R inv = R(1) / R(static_cast<long>(units.size()));
    for (auto& row : P)
        for (auto& e : row) e = inv * e;
    // Hermitize against rounding
    for (size_t a = 0; a < d; ++a)
        for (size_t b = a; b < d; ++b) {
            Cx<R> m = (P[a][b] + P[b][a].conj()) / R(2);
            P[a][b] = m;
            P[b][a] = m.conj();
        }
    auto E = hermitian_eigen(P);
    std::vector<size_t> keep;
    for (size_t c = 0; c < d; ++c)
        if (E.values[c] > R(1) / 2) keep.push_back(c);
    auto Qm = cmat<R>(d, keep.size());
    for (size_t c = 0; c < keep.size(); ++c)
        for (size_t r = 0; r < d; ++r) Qm[r][c] = E.vectors[r][keep[c]];
    return Qm;
}

template <class R = Real>
WeightSpace<R> weight_space(std::shared_ptr<const ClassSet> cs, int k) {
    if (k < 1) throw domain_error("weight_space: k must be >= 1");
    WeightSpace<R> ws;
    ws.k = k;
    ws.cs = cs;
    for (size_t j = 0; j < cs->size(); ++j) {
        ws.offset.push_back(ws.total_dim);
        ws.Q.push_back(invariant_basis<R>(cs->units[j], k));
        ws.total_dim += ws.dim(j);
    }
    return ws;
}

// operator sum_x rho(x) over x in I_i * M * conj(I_j) of norm scale * n_i n_j,
// compressed to the invariant fibres
template <class R = Real>
CMat<R> lattice_operator(const WeightSpace<R>& ws, const std::optional<Lattice4>& middle, const Rat& scale,
                         const R& prefactor) {
    using std::sqrt;
    const ClassSet& cs = *ws.cs;
    const size_t h = cs.size();
    const size_t d = static_cast<size_t>(2 * ws.k - 1);
    auto B = cmat<R>(ws.total_dim, ws.total_dim);
    for (size_t i = 0; i < h; ++i)
        for (size_t j = 0; j < h; ++j) {
            if (ws.dim(i) == 0 || ws.dim(j) == 0) continue;
            Lattice4 L = middle ? lattice_product(lattice_product(cs.ideal_reps[i], *middle), lattice_conj(cs.ideal_reps[j]))
                                : lattice_product(cs.ideal_reps[i], lattice_conj(cs.ideal_reps[j]));
            auto xs = short_vectors(L, scale * cs.ideal_norms[i] * cs.ideal_norms[j]);
            if (xs.empty()) continue;
            auto S = cmat<R>(d, d);
            for (auto& x : xs) {
                auto M = rho<R>(x, ws.k);
                for (size_t a = 0; a < d; ++a)
                    for (size_t b = 0; b < d; ++b) S[a][b] += M[a][b];
            }
            R c = prefactor / (2 * sqrt(R(cs.unit_orders[i] * cs.unit_orders[j])));
            auto blk = matmul(adjoint(ws.Q[i]), matmul(S, ws.Q[j]));
            for (size_t a = 0; a < ws.dim(i); ++a)
                for (size_t b = 0; b < ws.dim(j); ++b) B[ws.offset[i] + a][ws.offset[j] + b] = c * blk[a][b];
        }
    return B;
}

template <class R = Real>
struct HeckeMatrix {
    long long p = 0;
    bool atkin_lehner = false;
    CMat<R> entries;
};

template <class R = Real>
HeckeMatrix<R> brandt_matrix(long long p, const WeightSpace<R>& ws) {
    if (!is_prime(p)) throw domain_error("brandt_matrix: p must be prime");
    if (ws.cs->N % p == 0) throw domain_error("brandt_matrix: p divides the level, use al_operator");
    R pre = 1;
    for (int t = 0; t < ws.k - 1; ++t) pre *= p;
    return {p, false, lattice_operator<R>(ws, std::nullopt, Rat(p), pre)};
}

template <class R = Real>
HeckeMatrix<R> al_operator(long long q, const WeightSpace<R>& ws) {
    if (!is_prime(q) || ws.cs->N % q != 0) throw domain_error("al_operator: q must be a prime dividing the level");
    Lattice4 P = two_sided_prime(ws.cs->order.lattice, q);
    return {q, true, lattice_operator<R>(ws, P, Rat(q), R(1))};
}

inline Rat dim_newforms_exact(long long N, int two_k) {
    if (!valid_definite_level(N)) throw domain_error("dim_newforms: invalid level");
    if (two_k < 2 || two_k % 2) throw domain_error("dim_newforms: weight must be even and >= 2");
    const int k = two_k / 2;
    Rat c2 = (two_k % 4 == 0) ? Rat(1, 4) : Rat(-1, 4);
    Rat c3 = (two_k % 3 == 0) ? Rat(1, 3) : (two_k % 3 == 1 ? Rat(0) : Rat(-1, 3));
    Rat p4 = 1, p3 = 1;
    for (long long p : prime_divisors(N)) {
        p4 *= 1 - kronecker(-4, p);
        p3 *= 1 - kronecker(-3, p);
    }
    Rat d = Rat((two_k - 1) * euler_phi(N), 12) - c2 * p4 - c3 * p3 - (k == 1 ? 1 : 0);
    return d;
}

inline long long dim_newforms(long long N, int two_k) {
    Rat d = dim_newforms_exact(N, two_k);
    if (!is_integral(d)) throw domain_error("dim_newforms: non-integral result");
    return numer(d).convert_to<long long>();
}

template <class R = Real>
struct Eigenform {
    CVec<R> v;                        // global orthonormal coordinates
    std::vector<CVec<R>> fibre;       // per class, orthonormal coordinates of V
    std::map<long long, R> ap;        // eigenvalues (a_q = delta q^{k-1} at q | N)
    std::map<long long, int> delta;   // Atkin-Lehner signs at q | N
    bool residual = false;
};

template <class R = Real>
struct EigenformSet {
    WeightSpace<R> ws;
    std::vector<long long> primes;            // split primes used
    std::map<long long, HeckeMatrix<R>> ops;  // all operators, keyed by prime
    std::vector<Eigenform<R>> forms;

    size_t cusp_count() const {
        size_t c = 0;
        for (auto& f : forms) c += f.residual ? 0 : 1;
        return c;
    }
};

template <class R = Real>
R rayleigh(const CMat<R>& A, const CVec<R>& v) {
    return dot(matvec(A, v), v).re;
}

template <class R = Real>
EigenformSet<R> eigenforms(std::shared_ptr<const ClassSet> cs, int k, int prime_budget = 6) {
    using std::abs;
    EigenformSet<R> E;
    E.ws = weight_space<R>(cs, k);
    const long long N = cs->N;
    for (long long p = 2; static_cast<int>(E.primes.size()) < prime_budget; ++p)
        if (is_prime(p) && N % p) E.primes.push_back(p);
    std::vector<long long> order(E.primes);
    for (long long q : prime_divisors(N)) order.push_back(q);
    for (long long p : E.primes) E.ops.emplace(p, brandt_matrix<R>(p, E.ws));
    for (long long q : prime_divisors(N)) E.ops.emplace(q, al_operator<R>(q, E.ws));

    const size_t D = E.ws.total_dim;
    std::vector<CMat<R>> blocks;
    if (D > 0) blocks.push_back(identity<R>(D));
    const R tol = R(1e-15);
    for (long long p : order) {
        const auto& T = E.ops.at(p).entries;
        std::vector<CMat<R>> next;
        for (auto& V : blocks) {
            const size_t m = V[0].size();
            if (m == 1) { next.push_back(V); continue; }
            auto A = matmul(adjoint(V), matmul(T, V));
            for (size_t a = 0; a < m; ++a)
                for (size_t b = a; b < m; ++b) {
                    Cx<R> x = (A[a][b] + A[b][a].conj()) / R(2);
                    A[a][b] = x;
                    A[b][a] = x.conj();
                }
            auto eg = hermitian_eigen(A);
            size_t start = 0;
            R scale = 1;
            for (auto& ev : eg.values) scale = std::max(scale, R(abs(ev)));
            for (size_t c = 1; c <= m; ++c) {
                if (c < m && abs(eg.values[c] - eg.values[c - 1]) <= tol * scale) continue;
                auto W = cmat<R>(m, c - start);
                for (size_t r = 0; r < m; ++r)
                    for (size_t s = start; s < c; ++s) W[r][s - start] = eg.vectors[r][s];
                next.push_back(matmul(V, W));
                start = c;
            }
        }
        blocks = std::move(next);
    }
    for (auto& V : blocks)
        if (V[0].size() != 1) throw domain_error("unseparated eigenspace: raise the prime budget");

    for (auto& V : blocks) {
        Eigenform<R> f;
        f.v.resize(D);
        for (size_t r = 0; r < D; ++r) f.v[r] = V[r][0];
        // phase: largest coordinate (first within tolerance) made real positive
        size_t best = 0;
        R bm = -1;
        for (size_t r = 0; r < D; ++r) {
            R m = f.v[r].abs();
            if (m > bm * (1 + R(1e-20)) + R(1e-30)) { bm = m; best = r; }
        }
        Cx<R> ph = f.v[best].conj() / bm;
        for (auto& x : f.v) x = ph * x;
        for (long long p : E.primes) f.ap[p] = rayleigh(E.ops.at(p).entries, f.v);
        for (long long q : prime_divisors(N)) {
            R w = rayleigh(E.ops.at(q).entries, f.v);
            int s = w > 0 ? 1 : -1;
            if (abs(w - s) > R(1e-10)) throw domain_error("Atkin-Lehner eigenvalue is not +-1");
            f.delta[q] = s;
            R qk = 1;
            for (int t = 0; t < k - 1; ++t) qk *= q;
            f.ap[q] = s * qk;
        }
        if (k == 1) {
            bool eis = true;
            for (long long p : E.primes) eis = eis && abs(f.ap[p] - (p + 1)) < R(1e-10);
            f.residual = eis;
        }
        using std::sqrt;
        for (size_t j = 0; j < cs->size(); ++j) {
            CVec<R> Fj(static_cast<size_t>(2 * k - 1));
            R sg = sqrt(R(cs->unit_orders[j]));
            for (size_t b = 0; b < E.ws.dim(j); ++b) {
                Cx<R> c = f.v[E.ws.offset[j] + b];
                for (size_t r = 0; r < Fj.size(); ++r) Fj[r] += sg * (E.ws.Q[j][r][b] * c);
            }
            f.fibre.push_back(std::move(Fj));
        }
        E.forms.push_back(std::move(f));
    }
    // residual first, then lexicographic in (a_p) over the split primes
    std::stable_sort(E.forms.begin(), E.forms.end(), [&](const Eigenform<R>& x, const Eigenform<R>& y) {
        if (x.residual != y.residual) return x.residual;
        for (long long p : E.primes) {
            R d = x.ap.at(p) - y.ap.at(p);
            if (abs(d) > R(1e-12)) return d < 0;
        }
        return false;
    });
    return E;
}

}  // namespace qtriple
