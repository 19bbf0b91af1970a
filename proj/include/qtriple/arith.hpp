#pragma once
// exact substrate: big integers, rationals, factorization, Kronecker, Q(zeta_12)

#include <boost/multiprecision/gmp.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtriple {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr long long kFactorCap = 1000000;

inline Int numer(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denom(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rat& q) { return denom(q) == 1; }

inline std::string to_string(const Rat& q) {
    // always "n/d" so consumers never have to guess
    return numer(q).str() + "/" + denom(q).str();
}

using Factorization = std::vector<std::pair<long long, int>>;

inline Factorization factorize(long long n) {
    if (n < 1) throw domain_error("factorize: n must be positive");
    if (n >= kFactorCap) throw domain_error("factorize: input above desk-scale cap");
    Factorization out;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::vector<long long> prime_divisors(long long n) {
    std::vector<long long> ps;
    for (auto& [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_squarefree(long long n) {
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

inline long long euler_phi(long long n) {
    long long r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline int omega(long long n) { return static_cast<int>(factorize(n).size()); }

inline int valuation(long long n, long long p) {
    if (n == 0) throw domain_error("valuation of zero");
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

inline long long mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

inline long long powmod(long long b, long long e, long long m) {
    __int128 r = 1, x = mod(b, m);
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<long long>(r);
}

// Legendre symbol for odd prime p
inline int legendre(long long a, long long p) {
    a = mod(a, p);
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Kronecker symbol (d/n), n may be negative or even
inline int kronecker(long long d, long long n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int res = 1;
    if (n < 0) {
        n = -n;
        if (d < 0) res = -res;
    }
    while (n % 2 == 0) {
        n /= 2;
        long long r = mod(d, 8);
        if (r % 2 == 0) return 0;
        if (r == 3 || r == 5) res = -res;
    }
    // Jacobi on the odd part
    long long a = mod(d, n), m = n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long r = m % 8;
            if (r == 3 || r == 5) res = -res;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) res = -res;
        a %= m;
    }
    return m == 1 ? res : 0;
}

inline Int binom(long long n, long long k) {
    if (k < 0 || k > n || n < 0) return 0;
    Int r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline Int factorial(long long n) {
    Int r = 1;
    for (long long i = 2; i <= n; ++i) r *= i;
    return r;
}

// Gamma at a positive integer
inline Int gamma_int(long long n) {
    if (n < 1) throw domain_error("gamma_int: argument must be positive");
    return factorial(n - 1);
}

// Q(zeta), zeta = exp(2 pi i/12), power basis 1, z, z^2, z^3 with z^4 = z^2 - 1
struct Cyclo12 {
    std::array<Rat, 4> c{};

    Cyclo12() = default;
    Cyclo12(const Rat& r) { c[0] = r; }
    Cyclo12(long long r) { c[0] = r; }
    Cyclo12(Rat a, Rat b, Rat d, Rat e) : c{a, b, d, e} {}

    static Cyclo12 zeta() { return Cyclo12(0, 1, 0, 0); }

    // zeta^e for any integer e
    static Cyclo12 zeta_pow(long long e) {
        e = mod(e, 12);
        std::vector<Rat> poly(static_cast<size_t>(e) + 1);
        poly[static_cast<size_t>(e)] = 1;
        return reduce(poly);
    }

    // coefficient at degree d >= 4 folds into d-2 (+) and d-4 (-)
    static Cyclo12 reduce(std::vector<Rat> p) {
        for (size_t d = p.size(); d-- > 4;) {
            if (p[d] == 0) continue;
            p[d - 2] += p[d];
            p[d - 4] -= p[d];
            p[d] = 0;
        }
        Cyclo12 r;
        for (size_t i = 0; i < 4 && i < p.size(); ++i) r.c[i] = p[i];
        return r;
    }

    friend Cyclo12 operator+(const Cyclo12& x, const Cyclo12& y) {
        Cyclo12 r;
        for (int i = 0; i < 4; ++i) r.c[i] = x.c[i] + y.c[i];
        return r;
    }
    friend Cyclo12 operator-(const Cyclo12& x, const Cyclo12& y) {
        Cyclo12 r;
        for (int i = 0; i < 4; ++i) r.c[i] = x.c[i] - y.c[i];
        return r;
    }
    Cyclo12 operator-() const { return Cyclo12() - *this; }
    friend Cyclo12 operator*(const Cyclo12& x, const Cyclo12& y) {
        std::vector<Rat> p(7);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) p[i + j] += x.c[i] * y.c[j];
        return reduce(std::move(p));
    }
    Cyclo12& operator+=(const Cyclo12& y) { return *this = *this + y; }
    Cyclo12& operator-=(const Cyclo12& y) { return *this = *this - y; }
    Cyclo12& operator*=(const Cyclo12& y) { return *this = *this * y; }

    friend bool operator==(const Cyclo12& x, const Cyclo12& y) { return x.c == y.c; }
    friend bool operator!=(const Cyclo12& x, const Cyclo12& y) { return !(x == y); }

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

    // sigma_a : zeta -> zeta^a, a a unit mod 12
    Cyclo12 galois(int a) const {
        Cyclo12 r;
        for (int i = 0; i < 4; ++i) {
            if (c[i] == 0) continue;
            r += Cyclo12(c[i]) * zeta_pow(static_cast<long long>(a) * i);
        }
        return r;
    }
    Cyclo12 conj() const { return galois(11); }
    bool is_real() const { return conj() == *this; }
    bool is_rational() const { return c[1] == 0 && c[2] == 0 && c[3] == 0; }

    Rat norm() const {
        Cyclo12 p = *this * galois(5) * galois(7) * galois(11);
        if (!p.is_rational()) throw domain_error("Cyclo12 norm not rational");
        return p.c[0];
    }

    Cyclo12 inverse() const {
        if (is_zero()) throw domain_error("Cyclo12 inverse of zero");
        Cyclo12 others = galois(5) * galois(7) * galois(11);
        Rat n = (*this * others).c[0];
        Cyclo12 r;
        for (int i = 0; i < 4; ++i) r.c[i] = others.c[i] / n;
        return r;
    }

    std::array<std::string, 4> coords() const {
        return {to_string(c[0]), to_string(c[1]), to_string(c[2]), to_string(c[3])};
    }
};

}  // namespace qtriple
