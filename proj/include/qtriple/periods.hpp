#pragma once
// finite-sum periods on the class set: Petersson norms, trilinear and toric periods,
// L-value ratios

#include "brandt.hpp"

namespace qtriple {

template <class R = Real>
using ClassForm = std::vector<CVec<R>>;  // per class, orthonormal coordinates of V

template <class R = Real>
struct PeriodContext {
    std::shared_ptr<const ClassSet> cs;
    int k = 1;
    TriTensor tri;
    Rat vol_Kprime;
    Rat normP_sq;
    R normP;
    // C / sqrt(b_i b_j b_r), as a dense table
    std::vector<std::vector<std::vector<R>>> Pon;

    long long N() const { return cs->N; }
};

template <class R = Real>
PeriodContext<R> period_context(std::shared_ptr<const ClassSet> cs, int k) {
    using std::sqrt;
    PeriodContext<R> ctx;
    ctx.cs = cs;
    ctx.k = k;
    ctx.tri = expand_P(k);
    ctx.vol_Kprime = Rat(24, euler_phi(cs->N));
    if (ctx.vol_Kprime * cs->mass() != 2) throw domain_error("period_context: volume does not match the mass");
    ctx.normP_sq = norm_sq_P(k);
    ctx.normP = sqrt(to_real<R>(ctx.normP_sq));
    const int n = 2 * k - 2, d = n + 1;
    ctx.Pon.assign(d, std::vector<std::vector<R>>(d, std::vector<R>(d, R(0))));
    for (auto& [idx, c] : ctx.tri.C) {
        auto [i, j, r] = idx;
        R den = sqrt(R((binom(n, i) * binom(n, j) * binom(n, r)).str()));
        ctx.Pon[i][j][r] = R(c.str()) / den;
    }
    return ctx;
}

template <class R = Real>
R petersson_norm(const ClassForm<R>& F, const PeriodContext<R>& ctx) {
    R s = 0;
    for (size_t j = 0; j < F.size(); ++j) {
        R t = 0;
        for (auto& x : F[j]) t += x.norm2();
        s += t / R(ctx.cs->unit_orders[j]);
    }
    return to_real<R>(ctx.vol_Kprime) * s;
}

template <class R = Real>
Cx<R> petersson_pairing(const ClassForm<R>& F, const ClassForm<R>& G, const PeriodContext<R>& ctx) {
    Cx<R> s;
    for (size_t j = 0; j < F.size(); ++j) s += (R(1) / R(ctx.cs->unit_orders[j])) * dot(F[j], G[j]);
    return to_real<R>(ctx.vol_Kprime) * s;
}

// <x (x) y (x) z, P> in orthonormal coordinates (P real, no conjugation)
template <class R = Real>
Cx<R> tri_pair(const CVec<R>& x, const CVec<R>& y, const CVec<R>& z, const PeriodContext<R>& ctx) {
    Cx<R> s;
    for (auto& [idx, c] : ctx.tri.C) {
        auto [i, j, r] = idx;
        s += ctx.Pon[i][j][r] * (x[i] * y[j] * z[r]);
    }
    return s;
}

template <class R = Real>
Cx<R> trilinear_period(const ClassForm<R>& F, const ClassForm<R>& G, const ClassForm<R>& H,
                       const PeriodContext<R>& ctx) {
    if (F.size() != ctx.cs->size() || G.size() != F.size() || H.size() != F.size())
        throw domain_error("trilinear_period: class set mismatch");
    Cx<R> s;
    for (size_t j = 0; j < F.size(); ++j) {
        if (F[j].size() != ctx.Pon.size()) throw domain_error("trilinear_period: weight mismatch");
        s += (R(1) / R(ctx.cs->unit_orders[j])) * tri_pair(F[j], G[j], H[j], ctx);
    }
    return (to_real<R>(ctx.vol_Kprime) / ctx.normP) * s;
}

template <class R = Real>
bool epsilon_condition(const Eigenform<R>& f, const Eigenform<R>& g, const Eigenform<R>& h, long long N) {
    for (long long q : prime_divisors(N)) {
        auto a = f.delta.find(q), b = g.delta.find(q), c = h.delta.find(q);
        if (a == f.delta.end() || b == g.delta.end() || c == h.delta.end())
            throw domain_error("epsilon_condition: missing Atkin-Lehner sign");
        if (a->second * b->second * c->second != 1) return false;
    }
    return true;
}

enum class RatioKind { triple, toric };

template <class R = Real>
struct LRatio {
    R value = 0;
    RatioKind kind = RatioKind::triple;
    bool epsilon_ok = true;
};

// Gamma(k)^3 Gamma(3k-1) / (Gamma(2k)^2 Gamma(2k-1))
inline Rat ichino_gamma(int k) {
    Int g = gamma_int(k), g2 = gamma_int(2 * k), g1 = gamma_int(2 * k - 1);
    return Rat(g * g * g * gamma_int(3 * k - 1)) / Rat(g2 * g2 * g1);
}

// 48 N^2 Gamma-ratio / (2^omega phi), the constant turning (2k-1)^2 |T|^2/(N_f N_g N_h)
// into the central-value ratio
inline Rat ichino_constant(long long N, int k) {
    return Rat(48) * Rat(N) * Rat(N) * ichino_gamma(k) / Rat((1LL << omega(N)) * euler_phi(N));
}

// ratio without the root-number filter (used for Parseval-type checks)
template <class R = Real>
R ichino_raw(const ClassForm<R>& F, const ClassForm<R>& G, const ClassForm<R>& H, const PeriodContext<R>& ctx) {
    Cx<R> T = trilinear_period(F, G, H, ctx);
    R nf = petersson_norm(F, ctx), ng = petersson_norm(G, ctx), nh = petersson_norm(H, ctx);
    R kk = 2 * ctx.k - 1;
    return kk * kk * T.norm2() / (nf * ng * nh) * to_real<R>(ichino_constant(ctx.N(), ctx.k));
}

template <class R = Real>
LRatio<R> ichino_ratio(const Eigenform<R>& f, const Eigenform<R>& g, const Eigenform<R>& h,
                       const PeriodContext<R>& ctx) {
    LRatio<R> out;
    out.kind = RatioKind::triple;
    out.epsilon_ok = epsilon_condition(f, g, h, ctx.N());
    if (!out.epsilon_ok) return out;
    out.value = ichino_raw(f.fibre, g.fibre, h.fibre, ctx);
    return out;
}

// ---- toric periods

struct Embedding {
    size_t cls = 0;  // class whose left order receives the CM order
    Quat gamma;      // trd/nrd = (0,1) for E0, (1,1) for E1
};

inline std::vector<Embedding> optimal_embeddings(const ClassSet& cs, Field f) {
    const Rat t = (f == Field::E0) ? 0 : 1;
    std::vector<Embedding> out;
    for (size_t j = 0; j < cs.size(); ++j)
        for (auto& u : cs.units[j])
            for (const Quat& g : {u, -u}) {
                if (trd(g) != t || nrd(g) != 1) continue;
                // Z[gamma] is the maximal order of E, so the embedding is optimal
                out.push_back({j, g});
            }
    return out;
}

// weight vectors of the embedded torus on V: column n has torus weight k-1-n
template <class R = Real>
CMat<R> torus_weight_basis(const Quat& gamma, int k) {
    using std::sqrt;
    Quat t = Quat::one(gamma.a, gamma.b) + Rat(2) * gamma;
    auto g = embed<R>(t);
    Cx<R> det = g[0] * g[3] - g[1] * g[2];
    R re = (g[0].re + g[3].re) / 2;
    R im = sqrt(det.re - re * re);
    Cx<R> l1(re, im), l2(re, -im);
    auto eigvec = [&](const Cx<R>& lam) {
        // (g - lam) v = 0
        CVec<R> v1{-g[1], g[0] - lam}, v2{g[3] - lam, -g[2]};
        R n1 = v1[0].norm2() + v1[1].norm2(), n2 = v2[0].norm2() + v2[1].norm2();
        CVec<R> v = n1 >= n2 ? v1 : v2;
        R nn = sqrt(n1 >= n2 ? n1 : n2);
        return CVec<R>{v[0] / nn, v[1] / nn};
    };
    auto u1 = eigvec(l1), u2 = eigvec(l2);
    std::array<Cx<R>, 4> S{u1[0], u2[0], u1[1], u2[1]};
    return rho_matrix<R>(S, k);
}

// vol of the torus quotient: 2 L(1, eta) with the pi removed
template <class R = Real>
R torus_volume(Field f) {
    using std::sqrt;
    return f == Field::E0 ? R(1) / 2 : R(2) / (3 * sqrt(R(3)));
}

template <class R = Real>
Cx<R> toric_period_at(const ClassForm<R>& F, Field f, int m, const Embedding& e, int k) {
    if (m < -(k - 1) || m > k - 1) return Cx<R>();
    auto U = torus_weight_basis<R>(e.gamma, k);
    size_t n = static_cast<size_t>(k - 1 - m);
    CVec<R> u(U.size());
    for (size_t r = 0; r < U.size(); ++r) u[r] = U[r][n];
    return torus_volume<R>(f) * dot(F[e.cls], u);
}

template <class R = Real>
Cx<R> toric_period(const ClassForm<R>& F, Field f, int m, const PeriodContext<R>& ctx) {
    auto emb = optimal_embeddings(*ctx.cs, f);
    if (emb.empty()) throw domain_error("toric_period: no embedding of the CM order");
    return toric_period_at(F, f, m, emb.front(), ctx.k);
}

// local factors alpha_p at primes dividing 2 or 3 or N, pi-free
template <class R = Real>
R local_factor_product(Field f, long long N) {
    using std::sqrt;
    const long long pe = field_prime(f);
    R prod = 1;
    if (N % pe != 0) prod *= (f == Field::E0) ? R(1) / 2 : R(1) / sqrt(R(3));
    for (long long q : prime_divisors(N)) {
        R vol = 1;
        if (q == pe && f == Field::E1) vol = R(2) / sqrt(R(3));
        prod *= (R(1) - R(1) / R(q)) * vol;
    }
    return prod;
}

// L_fin(1/2, pi_E x Omega) / L(1, pi, Ad) from the toric period
template <class R = Real>
LRatio<R> waldspurger_ratio(const Eigenform<R>& h, Field f, const CharSpec& spec, const PeriodContext<R>& ctx,
                            const Embedding* emb = nullptr) {
    using std::pow;
    std::optional<int> delta;
    long long pe = field_prime(f);
    if (ctx.N() % pe == 0) delta = h.delta.at(pe);
    if (!is_admissible(ctx.k, spec, ctx.N(), delta)) throw domain_error("waldspurger_ratio: inadmissible character");
    Cx<R> P;
    if (emb) {
        P = toric_period_at(h.fibre, f, spec.m, *emb, ctx.k);
    } else {
        P = toric_period(h.fibre, f, spec.m, ctx);
    }
    const int k = ctx.k;
    R twopi = 2 * pi_value<R>();
    R num = 3 * pow(twopi, 2 * k) * R(2 * k - 1) * P.norm2();
    R den = petersson_norm(h.fibre, ctx) * R(gamma_int(2 * k).str()) * local_factor_product<R>(f, ctx.N());
    LRatio<R> out;
    out.kind = RatioKind::toric;
    out.value = num / den;
    return out;
}

}  // namespace qtriple
