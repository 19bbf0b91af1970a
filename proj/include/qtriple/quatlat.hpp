#pragma once
// quaternions over Q, rank-4 lattices in HNF, maximal orders, ideal classes, units

#include "localsym.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cmath>
#include <deque>
#include <functional>

namespace qtriple {

struct Quat {
    std::array<Rat, 4> x{};
    long long a = -1, b = -1;

    Quat() = default;
    Quat(long long a_, long long b_) : a(a_), b(b_) {}
    Quat(long long a_, long long b_, Rat x0, Rat x1, Rat x2, Rat x3) : x{x0, x1, x2, x3}, a(a_), b(b_) {}
    static Quat one(long long a, long long b) { return Quat(a, b, 1, 0, 0, 0); }

    bool is_zero() const { return x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0; }
};

inline void check_same(const Quat& p, const Quat& q) {
    if (p.a != q.a || p.b != q.b) throw domain_error("presentation mismatch");
}

inline Quat operator+(const Quat& p, const Quat& q) {
    check_same(p, q);
    Quat r(p.a, p.b);
    for (int t = 0; t < 4; ++t) r.x[t] = p.x[t] + q.x[t];
    return r;
}
inline Quat operator-(const Quat& p, const Quat& q) {
    check_same(p, q);
    Quat r(p.a, p.b);
    for (int t = 0; t < 4; ++t) r.x[t] = p.x[t] - q.x[t];
    return r;
}
inline Quat operator-(const Quat& p) {
    Quat r(p.a, p.b);
    for (int t = 0; t < 4; ++t) r.x[t] = -p.x[t];
    return r;
}
inline Quat operator*(const Rat& s, const Quat& p) {
    Quat r(p.a, p.b);
    for (int t = 0; t < 4; ++t) r.x[t] = s * p.x[t];
    return r;
}
inline bool operator==(const Quat& p, const Quat& q) {
    return p.a == q.a && p.b == q.b && p.x == q.x;
}

inline Quat quat_mul(const Quat& p, const Quat& q) {
    check_same(p, q);
    const Rat a = p.a, b = p.b;
    const auto& u = p.x;
    const auto& v = q.x;
    Quat r(p.a, p.b);
    r.x[0] = u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] - a * b * u[3] * v[3];
    r.x[1] = u[0] * v[1] + u[1] * v[0] - b * u[2] * v[3] + b * u[3] * v[2];
    r.x[2] = u[0] * v[2] + u[2] * v[0] + a * u[1] * v[3] - a * u[3] * v[1];
    r.x[3] = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] - u[2] * v[1];
    return r;
}
inline Quat operator*(const Quat& p, const Quat& q) { return quat_mul(p, q); }

inline Quat conj(const Quat& p) { return Quat(p.a, p.b, p.x[0], -p.x[1], -p.x[2], -p.x[3]); }
inline Rat trd(const Quat& p) { return 2 * p.x[0]; }
inline Rat nrd(const Quat& p) {
    const Rat a = p.a, b = p.b;
    return p.x[0] * p.x[0] - a * p.x[1] * p.x[1] - b * p.x[2] * p.x[2] + a * b * p.x[3] * p.x[3];
}

// ---- integer helpers

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    using boost::multiprecision::gcd;
    Int g = gcd(a, b);
    Int r = a / g * b;
    return r < 0 ? -r : r;
}

using IRow = std::array<Int, 4>;
using IMat4 = std::array<IRow, 4>;

// row-style Hermite normal form: upper triangular, positive pivots, entries above
// a pivot reduced into [0, pivot)
inline IMat4 hnf_rows(std::vector<IRow> rows) {
    size_t r = 0;
    for (int c = 0; c < 4; ++c) {
        for (;;) {
            size_t best = rows.size();
            for (size_t i = r; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
            }
            if (best == rows.size()) throw domain_error("lattice is not of rank 4");
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Int q = floor_div(rows[i][c], rows[r][c]);
                for (int t = 0; t < 4; ++t) rows[i][t] -= q * rows[r][t];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[r][c] < 0)
            for (int t = 0; t < 4; ++t) rows[r][t] = -rows[r][t];
        for (size_t i = 0; i < r; ++i) {
            Int q = floor_div(rows[i][c], rows[r][c]);
            if (q == 0) continue;
            for (int t = 0; t < 4; ++t) rows[i][t] -= q * rows[r][t];
        }
        ++r;
    }
    IMat4 out;
    for (int i = 0; i < 4; ++i) out[i] = rows[i];
    return out;
}

// lattice = (1/den) * rowspace(hnf), gcd(den, entries) = 1
struct Lattice4 {
    QuatPresentation pres;
    Int den = 1;
    IMat4 hnf{};

    Quat basis(int s) const {
        Quat q(pres.a, pres.b);
        for (int t = 0; t < 4; ++t) q.x[t] = Rat(hnf[s][t], den);
        return q;
    }
    std::array<Quat, 4> basis() const { return {basis(0), basis(1), basis(2), basis(3)}; }
};

inline bool operator==(const Lattice4& L, const Lattice4& M) {
    return L.pres.a == M.pres.a && L.pres.b == M.pres.b && L.den == M.den && L.hnf == M.hnf;
}

inline Lattice4 lattice_from(const QuatPresentation& pres, const std::vector<Quat>& gens) {
    Int D = 1;
    for (auto& g : gens) {
        if (g.a != pres.a || g.b != pres.b) throw domain_error("presentation mismatch");
        for (auto& c : g.x) D = lcm_int(D, denom(c));
    }
    std::vector<IRow> rows;
    for (auto& g : gens) {
        IRow r;
        for (int t = 0; t < 4; ++t) r[t] = numer(g.x[t] * D);
        rows.push_back(r);
    }
    Lattice4 L;
    L.pres = pres;
    L.hnf = hnf_rows(std::move(rows));
    using boost::multiprecision::gcd;
    Int g = D;
    for (auto& row : L.hnf)
        for (auto& e : row) g = gcd(g, e);
    for (auto& row : L.hnf)
        for (auto& e : row) e /= g;
    L.den = D / g;
    return L;
}

inline Lattice4 lattice_product(const Lattice4& L, const Lattice4& M) {
    std::vector<Quat> g;
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) g.push_back(L.basis(s) * M.basis(t));
    return lattice_from(L.pres, g);
}

inline Lattice4 lattice_conj(const Lattice4& L) {
    std::vector<Quat> g;
    for (int s = 0; s < 4; ++s) g.push_back(conj(L.basis(s)));
    return lattice_from(L.pres, g);
}

inline Lattice4 lattice_scale(const Lattice4& L, const Rat& s) {
    std::vector<Quat> g;
    for (int t = 0; t < 4; ++t) g.push_back(s * L.basis(t));
    return lattice_from(L.pres, g);
}

inline Lattice4 lattice_sum(const Lattice4& L, const std::vector<Quat>& extra) {
    std::vector<Quat> g(extra);
    for (int t = 0; t < 4; ++t) g.push_back(L.basis(t));
    return lattice_from(L.pres, g);
}

// integer coordinates of x in L's basis, if x is in L
inline std::optional<std::array<Int, 4>> lattice_coords(const Lattice4& L, const Quat& x) {
    std::array<Rat, 4> rem;
    for (int t = 0; t < 4; ++t) rem[t] = x.x[t] * L.den;
    std::array<Int, 4> c;
    for (int s = 0; s < 4; ++s) {
        Rat q = rem[s] / Rat(L.hnf[s][s]);
        if (!is_integral(q)) return std::nullopt;
        c[s] = numer(q);
        for (int t = s; t < 4; ++t) rem[t] -= Rat(c[s] * L.hnf[s][t]);
    }
    return c;
}

inline bool lattice_contains(const Lattice4& L, const Quat& x) { return lattice_coords(L, x).has_value(); }

inline bool lattice_subset(const Lattice4& L, const Lattice4& M) {
    for (int s = 0; s < 4; ++s)
        if (!lattice_contains(M, L.basis(s))) return false;
    return true;
}

// |det| of the basis matrix in coordinates 1, i, j, k
inline Rat covolume(const Lattice4& L) {
    Int d = 1;
    for (int s = 0; s < 4; ++s) d *= L.hnf[s][s];
    Int D = L.den * L.den;
    return Rat(d, D * D);
}

// exact rational determinant (fraction-free elimination on a copy)
inline Rat det4(std::array<std::array<Rat, 4>, 4> A) {
    Rat det = 1;
    for (int c = 0; c < 4; ++c) {
        int piv = -1;
        for (int r = c; r < 4; ++r)
            if (A[r][c] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) { std::swap(A[piv], A[c]); det = -det; }
        det *= A[c][c];
        for (int r = c + 1; r < 4; ++r) {
            Rat f = A[r][c] / A[c][c];
            for (int t = c; t < 4; ++t) A[r][t] -= f * A[c][t];
        }
    }
    return det;
}

inline Rat rat_sqrt(const Rat& q) {
    using boost::multiprecision::sqrt;
    Int n = numer(q), d = denom(q);
    if (n < 0) throw domain_error("rat_sqrt of negative");
    Int sn = sqrt(n), sd = sqrt(d);
    if (sn * sn != n || sd * sd != d) throw domain_error("rat_sqrt: not a square");
    return Rat(sn, sd);
}

// trace pairing matrix trd(e_s conj(e_t))
inline std::array<std::array<Rat, 4>, 4> trace_form(const Lattice4& L) {
    std::array<std::array<Rat, 4>, 4> T;
    auto B = L.basis();
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) T[s][t] = trd(B[s] * conj(B[t]));
    return T;
}

inline Rat reduced_discriminant(const Lattice4& L) {
    Rat d = det4(trace_form(L));
    if (d < 0) d = -d;
    return rat_sqrt(d);
}

inline bool is_order(const Lattice4& L) {
    if (!lattice_contains(L, Quat::one(L.pres.a, L.pres.b))) return false;
    auto B = L.basis();
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t)
            if (!lattice_contains(L, B[s] * B[t])) return false;
    return true;
}

// ---- short vectors: exact LLL on the nrd Gram matrix, Fincke-Pohst enumeration

using RMat4 = std::array<std::array<Rat, 4>, 4>;

// Gram of nrd: G_st = trd(b_s conj(b_t))/2
inline RMat4 nrd_gram(const std::array<Quat, 4>& B) {
    RMat4 G;
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) G[s][t] = trd(B[s] * conj(B[t])) / 2;
    return G;
}

struct LLLResult {
    IMat4 U;  // rows: reduced vectors in input coordinates
    RMat4 G;  // Gram of the reduced basis
};

inline LLLResult lll_gram(const RMat4& G0) {
    IMat4 U;
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) U[s][t] = (s == t) ? 1 : 0;
    auto gram_of = [&](const IMat4& V) {
        RMat4 G;
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t) {
                Rat acc = 0;
                for (int u = 0; u < 4; ++u) {
                    if (V[s][u] == 0) continue;
                    for (int w = 0; w < 4; ++w)
                        if (V[t][w] != 0) acc += Rat(V[s][u] * V[t][w]) * G0[u][w];
                }
                G[s][t] = acc;
            }
        return G;
    };
    auto gso = [](const RMat4& G, RMat4& mu, std::array<Rat, 4>& Bs) {
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < i; ++j) {
                Rat v = G[i][j];
                for (int l = 0; l < j; ++l) v -= mu[j][l] * mu[i][l] * Bs[l];
                mu[i][j] = v / Bs[j];
            }
            Rat v = G[i][i];
            for (int l = 0; l < i; ++l) v -= mu[i][l] * mu[i][l] * Bs[l];
            Bs[i] = v;
        }
    };
    const Rat delta(3, 4);
    int k = 1;
    RMat4 G = G0, mu{};
    std::array<Rat, 4> Bs{};
    for (int guard = 0; k < 4; ++guard) {
        if (guard > 100000) throw domain_error("LLL did not terminate");
        gso(G, mu, Bs);
        bool changed = false;
        for (int j = k - 1; j >= 0; --j) {
            // round to nearest
            Rat m = mu[k][j];
            Int q = floor_div(numer(m) * 2 + denom(m), denom(m) * 2);
            if (q == 0) continue;
            for (int t = 0; t < 4; ++t) U[k][t] -= q * U[j][t];
            G = gram_of(U);
            gso(G, mu, Bs);
            changed = true;
        }
        (void)changed;
        if (Bs[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * Bs[k - 1]) {
            ++k;
        } else {
            std::swap(U[k], U[k - 1]);
            G = gram_of(U);
            k = std::max(k - 1, 1);
        }
    }
    return {U, gram_of(U)};
}

// all coordinate vectors x with x^T G x == target (exact); zero excluded
inline std::vector<std::array<Int, 4>> enumerate_norm(const RMat4& G0, const Rat& target) {
    std::vector<std::array<Int, 4>> out;
    if (target <= 0) return out;
    LLLResult red = lll_gram(G0);
    const RMat4& G = red.G;
    // integer Gram for the exact check
    Int D = 1;
    for (auto& row : G)
        for (auto& e : row) D = lcm_int(D, denom(e));
    D = lcm_int(D, denom(target));
    std::array<std::array<Int, 4>, 4> Gi;
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) Gi[s][t] = numer(G[s][t] * D);
    Int Ti = numer(target * D);

    double A[4][4];
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) A[s][t] = G[s][t].convert_to<double>();
    double q[4][4] = {};
    for (int i = 0; i < 4; ++i) {
        double v = A[i][i];
        for (int l = 0; l < i; ++l) v -= q[l][l] * q[l][i] * q[l][i];
        q[i][i] = v;
        for (int j = i + 1; j < 4; ++j) {
            double w = A[i][j];
            for (int l = 0; l < i; ++l) w -= q[l][l] * q[l][i] * q[l][j];
            q[i][j] = w / q[i][i];
        }
    }
    const double C = target.convert_to<double>();
    const double slack = 1e-7 * (1.0 + C);
    long long x[4] = {0, 0, 0, 0};
    std::function<void(int, double)> rec = [&](int i, double remaining) {
        double c = 0;
        for (int j = i + 1; j < 4; ++j) c -= q[i][j] * static_cast<double>(x[j]);
        double bound = std::sqrt(std::max(0.0, remaining + slack) / q[i][i]);
        long long lo = static_cast<long long>(std::ceil(c - bound - 1e-9));
        long long hi = static_cast<long long>(std::floor(c + bound + 1e-9));
        for (long long v = lo; v <= hi; ++v) {
            x[i] = v;
            double d = static_cast<double>(v) - c;
            double t = q[i][i] * d * d;
            if (t > remaining + slack) continue;
            if (i == 0) {
                Int Q = 0;
                for (int s = 0; s < 4; ++s)
                    for (int u = 0; u < 4; ++u) Q += Gi[s][u] * x[s] * x[u];
                if (Q == Ti) {
                    std::array<Int, 4> y;
                    for (int t2 = 0; t2 < 4; ++t2) {
                        y[t2] = 0;
                        for (int s = 0; s < 4; ++s) y[t2] += x[s] * red.U[s][t2];
                    }
                    out.push_back(y);
                }
            } else {
                rec(i - 1, remaining - t);
            }
        }
        x[i] = 0;
    };
    rec(3, C);
    return out;
}

inline std::vector<Quat> short_vectors(const Lattice4& L, const Rat& target) {
    auto B = L.basis();
    std::vector<Quat> out;
    for (auto& c : enumerate_norm(nrd_gram(B), target)) {
        Quat q(L.pres.a, L.pres.b);
        for (int s = 0; s < 4; ++s) q = q + Rat(c[s]) * B[s];
        out.push_back(q);
    }
    return out;
}

inline bool has_vector_of_norm(const Lattice4& L, const Rat& target) {
    return !enumerate_norm(nrd_gram(L.basis()), target).empty();
}

// first nonzero coordinate positive: representative of {x, -x}
inline bool sign_canonical(const Quat& q) {
    for (auto& c : q.x)
        if (c != 0) return c > 0;
    return false;
}

inline std::vector<Quat> unit_group(const Lattice4& order) {
    std::vector<Quat> units;
    for (auto& u : short_vectors(order, 1))
        if (sign_canonical(u)) units.push_back(u);
    return units;
}

// ---- maximal order

struct OrderData {
    Lattice4 lattice;
    long long reduced_discriminant = 0;
    long long unit_order = 0;
};

inline Lattice4 standard_order(const QuatPresentation& pres) {
    const long long a = pres.a, b = pres.b;
    return lattice_from(pres, {Quat(a, b, 1, 0, 0, 0), Quat(a, b, 0, 1, 0, 0), Quat(a, b, 0, 0, 1, 0),
                               Quat(a, b, 0, 0, 0, 1)});
}

inline bool integral_trace_form(const Lattice4& L) {
    for (auto& row : trace_form(L))
        for (auto& e : row)
            if (!is_integral(e)) return false;
    for (int s = 0; s < 4; ++s)
        if (!is_integral(trd(L.basis(s)))) return false;
    return true;
}

// smallest ring containing L (with 1), or nullopt once integrality breaks
inline std::optional<Lattice4> ring_closure(Lattice4 L, int cap = 64) {
    for (int it = 0; it < cap; ++it) {
        if (!integral_trace_form(L)) return std::nullopt;
        Lattice4 M = lattice_product(L, L);
        if (M == L) return L;
        L = M;
    }
    return std::nullopt;
}

inline Int rat_to_int(const Rat& q) {
    if (!is_integral(q)) throw domain_error("expected an integer");
    return numer(q);
}

inline OrderData maximal_order(const QuatPresentation& pres) {
    if (!(pres.a < 0 && pres.b < 0)) throw domain_error("maximal_order: presentation must be definite");
    const long long N = pres.discriminant;
    Lattice4 O = standard_order(pres);
    for (int round = 0; round < 64; ++round) {
        Int rd = rat_to_int(reduced_discriminant(O));
        if (rd == N) {
            OrderData d;
            d.lattice = O;
            d.reduced_discriminant = N;
            d.unit_order = static_cast<long long>(unit_group(O).size());
            return d;
        }
        if (rd % N != 0) throw domain_error("saturation failure: discriminant not a multiple of N");
        long long excess = static_cast<long long>(rd / N);
        long long p = small_prime_support(excess).empty() ? 0 : *small_prime_support(excess).begin();
        // integral data of O
        auto B = O.basis();
        auto T = trace_form(O);
        std::array<long long, 4> tr, nr;
        for (int s = 0; s < 4; ++s) {
            tr[s] = rat_to_int(trd(B[s])).convert_to<long long>();
            nr[s] = rat_to_int(nrd(B[s])).convert_to<long long>();
        }
        long long Tst[4][4];
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t) Tst[s][t] = rat_to_int(T[s][t]).convert_to<long long>();
        const long long p2 = p * p;
        bool grown = false;
        std::array<long long, 4> c{};
        for (c[0] = 0; c[0] < p && !grown; ++c[0])
            for (c[1] = 0; c[1] < p && !grown; ++c[1])
                for (c[2] = 0; c[2] < p && !grown; ++c[2])
                    for (c[3] = 0; c[3] < p && !grown; ++c[3]) {
                        if (!c[0] && !c[1] && !c[2] && !c[3]) continue;
                        __int128 t = 0;
                        for (int s = 0; s < 4; ++s) t += static_cast<__int128>(c[s]) * tr[s];
                        if (t % p != 0) continue;
                        __int128 n = 0;
                        for (int s = 0; s < 4; ++s) n += static_cast<__int128>(c[s]) * c[s] % p2 * mod(nr[s], p2);
                        for (int s = 0; s < 4; ++s)
                            for (int u = s + 1; u < 4; ++u) n += static_cast<__int128>(c[s]) * c[u] % p2 * mod(Tst[s][u], p2);
                        if (n % p2 != 0) continue;
                        Quat x(pres.a, pres.b);
                        for (int s = 0; s < 4; ++s) x = x + Rat(c[s], p) * B[s];
                        if (lattice_contains(O, x)) continue;
                        auto R = ring_closure(lattice_sum(O, {x}));
                        if (!R) continue;
                        O = *R;
                        grown = true;
                    }
        if (!grown) throw domain_error("saturation failure at p=" + std::to_string(p));
    }
    throw domain_error("saturation failure: too many rounds");
}

// ---- ideal classes

struct ClassSet {
    OrderData order;
    long long N = 0;
    long long neighbor_prime = 0;
    std::vector<Lattice4> ideal_reps;
    std::vector<long long> unit_orders;
    std::vector<Rat> ideal_norms;
    std::vector<Lattice4> left_orders;
    std::vector<std::vector<Quat>> units;  // mod +-1, includes 1

    Rat mass() const {
        Rat m = 0;
        for (auto u : unit_orders) m += Rat(1, u);
        return m;
    }
    size_t size() const { return ideal_reps.size(); }
};

inline Rat ideal_norm(const Lattice4& I, const Lattice4& O) { return rat_sqrt(covolume(I) / covolume(O)); }

inline Lattice4 left_order(const Lattice4& I, const Rat& nI) {
    return lattice_scale(lattice_product(I, lattice_conj(I)), Rat(1) / nI);
}

inline bool ideals_equivalent(const Lattice4& I, const Rat& nI, const Lattice4& J, const Rat& nJ) {
    return has_vector_of_norm(lattice_product(I, lattice_conj(J)), nI * nJ);
}

// p-neighbours J = xO + pI of a right O-ideal I
inline std::vector<Lattice4> neighbors(const Lattice4& I, const Rat& nI, const Lattice4& O, long long p) {
    std::vector<Lattice4> out;
    auto B = I.basis();
    auto OB = O.basis();
    std::vector<Quat> pI;
    for (auto& b : B) pI.push_back(Rat(p) * b);
    std::array<long long, 4> c{};
    for (c[0] = 0; c[0] < p; ++c[0])
        for (c[1] = 0; c[1] < p; ++c[1])
            for (c[2] = 0; c[2] < p; ++c[2])
                for (c[3] = 0; c[3] < p; ++c[3]) {
                    if (!c[0] && !c[1] && !c[2] && !c[3]) continue;
                    Quat x(I.pres.a, I.pres.b);
                    for (int s = 0; s < 4; ++s) x = x + Rat(c[s]) * B[s];
                    if (!is_integral(nrd(x) / (nI * p))) continue;
                    std::vector<Quat> gens(pI);
                    for (auto& o : OB) gens.push_back(x * o);
                    Lattice4 J = lattice_from(I.pres, gens);
                    bool seen = false;
                    for (auto& K : out)
                        if (K == J) { seen = true; break; }
                    if (!seen) out.push_back(J);
                }
    return out;
}

inline ClassSet right_ideal_classes(const OrderData& order, int iteration_cap = 10000) {
    ClassSet cs;
    cs.order = order;
    cs.N = order.reduced_discriminant;
    const Rat target(euler_phi(cs.N), 12);
    long long p = 2;
    while (cs.N % p == 0) {
        do { ++p; } while (!is_prime(p));
    }
    cs.neighbor_prime = p;
    auto add = [&](const Lattice4& I, const Rat& n) {
        Lattice4 Ol = left_order(I, n);
        auto U = unit_group(Ol);
        cs.ideal_reps.push_back(I);
        cs.ideal_norms.push_back(n);
        cs.left_orders.push_back(Ol);
        cs.unit_orders.push_back(static_cast<long long>(U.size()));
        cs.units.push_back(std::move(U));
    };
    add(order.lattice, 1);
    std::deque<size_t> queue{0};
    int iterations = 0;
    while (cs.mass() != target) {
        if (queue.empty() || ++iterations > iteration_cap)
            throw domain_error("class enumeration stalled: mass " + to_string(cs.mass()) + " of " + to_string(target));
        size_t idx = queue.front();
        queue.pop_front();
        Lattice4 I = cs.ideal_reps[idx];
        Rat nI = cs.ideal_norms[idx];
        for (auto& J : neighbors(I, nI, order.lattice, p)) {
            Rat nJ = ideal_norm(J, order.lattice);
            bool known = false;
            for (size_t r = 0; r < cs.size() && !known; ++r)
                known = ideals_equivalent(cs.ideal_reps[r], cs.ideal_norms[r], J, nJ);
            if (known) continue;
            add(J, nJ);
            queue.push_back(cs.size() - 1);
            if (cs.mass() == target) break;
        }
        if (cs.mass() > target) throw domain_error("class enumeration overshot the mass");
    }
    return cs;
}

inline ClassSet class_set_for_level(long long N) {
    return right_ideal_classes(maximal_order(presentation_for_level(N)));
}

// two-sided ideal {x in O : q | nrd x} for q | N
inline Lattice4 two_sided_prime(const Lattice4& O, long long q) {
    auto B = O.basis();
    std::array<long long, 4> nr;
    long long Tst[4][4];
    auto T = trace_form(O);
    for (int s = 0; s < 4; ++s) nr[s] = mod(rat_to_int(nrd(B[s])).convert_to<long long>(), q);
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) Tst[s][t] = mod(rat_to_int(T[s][t]).convert_to<long long>(), q);
    std::array<long long, 4> c{};
    for (c[0] = 0; c[0] < q; ++c[0])
        for (c[1] = 0; c[1] < q; ++c[1])
            for (c[2] = 0; c[2] < q; ++c[2])
                for (c[3] = 0; c[3] < q; ++c[3]) {
                    if (!c[0] && !c[1] && !c[2] && !c[3]) continue;
                    long long n = 0;
                    for (int s = 0; s < 4; ++s) n = (n + c[s] * c[s] % q * nr[s]) % q;
                    for (int s = 0; s < 4; ++s)
                        for (int u = s + 1; u < 4; ++u) n = (n + c[s] * c[u] % q * Tst[s][u]) % q;
                    if (n != 0) continue;
                    Quat x(O.pres.a, O.pres.b);
                    for (int s = 0; s < 4; ++s) x = x + Rat(c[s]) * B[s];
                    std::vector<Quat> gens;
                    for (auto& b : B) gens.push_back(Rat(q) * b);
                    for (auto& b : B) gens.push_back(x * b);
                    Lattice4 P = lattice_from(O.pres, gens);
                    if (ideal_norm(P, O) != q) throw domain_error("two-sided ideal has wrong norm");
                    return P;
                }
    throw domain_error("no element of norm divisible by q");
}

}  // namespace qtriple
