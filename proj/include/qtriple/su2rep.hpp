#pragma once
// weight-2k polynomial spaces, the invariant trilinear tensor and the archimedean constants

#include "arith.hpp"

#include <map>
#include <optional>
#include <tuple>

namespace qtriple {

// coefficient of X^{2k-2-i} Y^i at index i
struct SymPoly {
    int k = 1;
    std::vector<Cyclo12> coeffs;

    SymPoly() = default;
    explicit SymPoly(int k_) : k(k_), coeffs(static_cast<size_t>(2 * k_ - 1)) {
        if (k_ < 1) throw domain_error("SymPoly: k must be >= 1");
    }
    static SymPoly monomial(int k, int i) {
        SymPoly p(k);
        p.coeffs.at(static_cast<size_t>(i)) = 1;
        return p;
    }
};

inline Cyclo12 inner_product(const SymPoly& u, const SymPoly& v) {
    if (u.k != v.k || u.coeffs.size() != v.coeffs.size()) throw domain_error("inner_product: weight mismatch");
    Cyclo12 s;
    const int n = 2 * u.k - 2;
    for (int i = 0; i <= n; ++i) {
        Rat w = Rat(1) / Rat(binom(n, i));
        s += u.coeffs[i] * v.coeffs[i].conj() * Cyclo12(w);
    }
    return s;
}

struct TriTensor {
    int k = 1;
    std::map<std::tuple<int, int, int>, Int> C;  // nonzero entries only

    Int at(int i, int j, int r) const {
        auto it = C.find({i, j, r});
        return it == C.end() ? Int(0) : it->second;
    }
};

inline TriTensor expand_P(int k) {
    if (k < 1) throw domain_error("expand_P: k must be >= 1");
    TriTensor T;
    T.k = k;
    const int e = k - 1;
    for (int a = 0; a <= e; ++a)
        for (int b = 0; b <= e; ++b)
            for (int c = 0; c <= e; ++c) {
                int i = a + e - c, j = e - a + b, r = e - b + c;
                Int v = binom(e, a) * binom(e, b) * binom(e, c);
                if ((a + b + c) & 1) v = -v;
                T.C[{i, j, r}] += v;
            }
    for (auto it = T.C.begin(); it != T.C.end();)
        it = (it->second == 0) ? T.C.erase(it) : std::next(it);
    return T;
}

inline Rat norm_sq_P_closed(int k) {
    Int g = gamma_int(k), g3 = gamma_int(3 * k - 1), g2 = gamma_int(2 * k - 1);
    return Rat(g * g * g * g3) / Rat(g2 * g2 * g2);
}

inline Rat norm_sq_P_direct(int k) {
    TriTensor T = expand_P(k);
    const int n = 2 * k - 2;
    Rat s = 0;
    for (auto& [idx, c] : T.C) {
        auto [i, j, r] = idx;
        s += Rat(c * c) / Rat(binom(n, i) * binom(n, j) * binom(n, r));
    }
    return s;
}

inline Rat norm_sq_P(int k) {
    Rat a = norm_sq_P_closed(k);
    if (a != norm_sq_P_direct(k)) throw domain_error("norm_sq_P: closed form and coefficient sum disagree");
    return a;
}

inline Rat norm_sq_w(int k) { return norm_sq_P(k) / (2 * k - 1); }

// summation over r = 0..m
inline std::pair<Int, Int> sum_binom(long long n, long long m) {
    if (n < 1 || m < 1) throw domain_error("sum_binom: n, m must be >= 1");
    Int lhs = 0;
    for (long long r = 0; r <= m; ++r) lhs += binom(n + r, n) * binom(m + n - r, n);
    return {lhs, binom(2 * n + m + 1, m)};
}

enum class Gamma { g0, g1 };
enum class Field { E0, E1 };  // Q(sqrt -1), Q(sqrt -3)

inline Gamma gamma_of(Field f) { return f == Field::E0 ? Gamma::g0 : Gamma::g1; }
inline long long field_prime(Field f) { return f == Field::E0 ? 2 : 3; }
inline const char* field_name(Field f) { return f == Field::E0 ? "E0" : "E1"; }

// gamma^2 as a power of zeta: -1 = zeta^6 for gamma0, zeta^4 for gamma1
inline int gamma_sq_exponent(Gamma g) { return g == Gamma::g0 ? 6 : 4; }

inline Cyclo12 archimedean_I(int k, int m, Gamma g) {
    if (k < 1) throw domain_error("archimedean_I: k must be >= 1");
    if (m < -(k - 1) || m > k - 1) throw domain_error("archimedean_I: m out of range");
    const int n = 2 * k - 2;
    const int r = m + k - 1;
    TriTensor T = expand_P(k);
    Cyclo12 s;
    for (int i = 0; i <= n; ++i) {
        int j = 3 * (k - 1) - r - i;
        if (j < 0 || j > n) continue;
        Int c = T.at(i, j, r);
        if (c == 0) continue;
        Rat w = Rat(c * c) / Rat(binom(n, i) * binom(n, j));
        s += Cyclo12::zeta_pow(static_cast<long long>(gamma_sq_exponent(g)) * (k - 1 - i)) * Cyclo12(w);
    }
    return s * Cyclo12(Rat(1) / Rat(binom(n, r)));
}

struct CharSpec {
    Field field = Field::E0;
    int m = 0;
};

inline int neg_one_pow(long long e) { return (e % 2 == 0) ? 1 : -1; }

inline std::vector<CharSpec> admissible_characters(int k, Field f, long long N, std::optional<int> delta) {
    const long long p = field_prime(f);
    const bool ram = N % p == 0;
    if (ram && !delta) throw domain_error("admissible_characters: delta sign required at the ramified prime");
    std::vector<CharSpec> out;
    for (int m = -(k - 1); m <= k - 1; ++m) {
        if (m % p != 0) continue;
        if (ram && m != 0 && neg_one_pow(m / p) != *delta) continue;
        out.push_back({f, m});
    }
    return out;
}

inline bool is_admissible(int k, const CharSpec& s, long long N, std::optional<int> delta) {
    for (auto& c : admissible_characters(k, s.field, N, delta))
        if (c.m == s.m) return true;
    return false;
}

inline Cyclo12 orbit_coefficient(int k, const CharSpec& s, long long N, std::optional<int> delta) {
    if (!is_admissible(k, s, N, delta)) throw domain_error("orbit_coefficient: inadmissible character");
    Cyclo12 I = archimedean_I(k, s.m, gamma_of(s.field));
    const long long p = field_prime(s.field);
    if (N % p != 0) return I;
    int sign = neg_one_pow(s.m / p) * *delta;
    return I * Cyclo12(Rat(1 + sign, 2));
}

}  // namespace qtriple
