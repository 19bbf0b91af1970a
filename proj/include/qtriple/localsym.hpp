#pragma once
// Hilbert symbols over R and Q_p, ramification of (a,b/Q), presentations, ternary forms

#include "arith.hpp"

#include <set>

namespace qtriple {

struct QuatPresentation {
    long long a = -1, b = -1;
    long long discriminant = 1;
    bool ramified_at_infinity = true;
};

inline int hilbert_real(long long a, long long b) {
    if (a == 0 || b == 0) throw domain_error("hilbert symbol of zero");
    return (a < 0 && b < 0) ? -1 : 1;
}

// class of n in Q_p^x / squares: valuation parity and unit class
// (Legendre sign for odd p, unit residue mod 8 for p = 2)
struct SquareClass {
    int vpar = 0;
    int unit = 1;
};

inline SquareClass square_class(long long n, long long p) {
    if (n == 0) throw domain_error("square class of zero");
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    SquareClass s;
    s.vpar = v & 1;
    s.unit = (p == 2) ? static_cast<int>(mod(n, 8)) : legendre(n, p);
    return s;
}

inline SquareClass operator*(const SquareClass& x, const SquareClass& y) {
    // only meaningful for the same p; p=2 units are odd residues mod 8
    SquareClass r;
    r.vpar = x.vpar ^ y.vpar;
    if (x.unit == 1 || x.unit == -1) {
        if (y.unit == 1 || y.unit == -1) { r.unit = x.unit * y.unit; return r; }
    }
    r.unit = static_cast<int>(mod(static_cast<long long>(x.unit) * y.unit, 8));
    return r;
}

inline bool operator==(const SquareClass& x, const SquareClass& y) {
    return x.vpar == y.vpar && x.unit == y.unit;
}

inline int hilbert_classes(const SquareClass& x, const SquareClass& y, long long p) {
    if (p == 2) {
        auto eps = [](int u) { return ((u - 1) / 2) & 1; };
        auto om = [](int u) { return ((u * u - 1) / 8) & 1; };
        int e = eps(x.unit) * eps(y.unit) + x.vpar * om(y.unit) + y.vpar * om(x.unit);
        return (e & 1) ? -1 : 1;
    }
    int s = 1;
    if (x.vpar && y.vpar && ((p - 1) / 2) % 2 == 1) s = -s;
    if (y.vpar && x.unit == -1) s = -s;
    if (x.vpar && y.unit == -1) s = -s;
    return s;
}

inline int hilbert_p(long long a, long long b, long long p) {
    if (a == 0 || b == 0) throw domain_error("hilbert symbol of zero");
    if (!is_prime(p)) throw domain_error("hilbert_p: p must be prime");
    return hilbert_classes(square_class(a, p), square_class(b, p), p);
}

// odd-or-2 primes dividing n, no size cap (plain trial division)
inline std::set<long long> small_prime_support(long long n) {
    std::set<long long> out;
    n = n < 0 ? -n : n;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.insert(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.insert(n);
    return out;
}

struct RamifiedSet {
    bool infinity = false;
    std::vector<long long> primes;
};

inline RamifiedSet ramified_set(long long a, long long b) {
    if (a == 0 || b == 0) throw domain_error("ramified_set of zero");
    RamifiedSet r;
    r.infinity = hilbert_real(a, b) == -1;
    auto ps = small_prime_support(a);
    for (long long p : small_prime_support(b)) ps.insert(p);
    ps.insert(2);
    for (long long p : ps)
        if (hilbert_p(a, b, p) == -1) r.primes.push_back(p);
    return r;
}

inline long long discriminant(long long a, long long b) {
    long long d = 1;
    for (long long p : ramified_set(a, b).primes) d *= p;
    return d;
}

inline bool valid_definite_level(long long N) {
    if (N < 1 || N >= kFactorCap || !is_squarefree(N)) return false;
    return omega(N) % 2 == 1;
}

inline QuatPresentation make_presentation(long long a, long long b) {
    QuatPresentation q;
    q.a = a;
    q.b = b;
    q.discriminant = discriminant(a, b);
    q.ramified_at_infinity = hilbert_real(a, b) == -1;
    return q;
}

inline QuatPresentation presentation_for_level(long long N) {
    if (!valid_definite_level(N)) throw domain_error("level must be square-free with an odd number of prime factors");
    auto ok = [&](long long a, long long b) {
        return a < 0 && b < 0 && discriminant(a, b) == N;
    };
    if (ok(-1, -N)) return make_presentation(-1, -N);
    if (ok(-3, -N)) return make_presentation(-3, -N);
    for (long long q = 3; q < 200; q += 4) {
        if (!is_prime(q)) continue;
        if (ok(-q, -N)) return make_presentation(-q, -N);
        if (N % q != 0 && ok(-q, -q * N)) return make_presentation(-q, -q * N);
    }
    throw domain_error("presentation search exhausted");
}

// does a1 X^2 + a2 Y^2 + a3 Z^2 represent a over Q_p
inline bool ternary_represents(long long a1, long long a2, long long a3, long long a, long long p) {
    if (!a1 || !a2 || !a3 || !a) throw domain_error("ternary_represents: zero argument");
    SquareClass c1 = square_class(a1, p), c2 = square_class(a2, p), c3 = square_class(a3, p);
    SquareClass minus_d = square_class(-1, p) * c1 * c2 * c3;
    SquareClass ca = square_class(a, p);
    if (!(ca == minus_d)) return true;
    int eps = hilbert_classes(c1, c2, p) * hilbert_classes(c2, c3, p) * hilbert_classes(c1, c3, p);
    return hilbert_classes(square_class(-1, p), ca, p) == eps;
}

// is there x in the algebra of discriminant N with trd x = t, nrd x = n
inline bool exists_trace_norm(long long N, long long t, long long n) {
    QuatPresentation q = presentation_for_level(N);
    long long c = 4 * n - t * t;
    if (c <= 0) return false;  // definite: the pure part has positive norm
    long long a = q.a, b = q.b;
    auto ps = small_prime_support(2 * a);
    for (long long p : small_prime_support(b)) ps.insert(p);
    for (long long p : small_prime_support(c)) ps.insert(p);
    for (long long p : ps)
        if (!ternary_represents(-a, -b, a * b, c, p)) return false;
    return true;
}

}  // namespace qtriple
