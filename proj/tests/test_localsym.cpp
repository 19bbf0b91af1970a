#include "qtriple/quatlat.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace qtriple;

namespace {

bool has_prime_mod(long long N, long long m) {
    for (long long p : prime_divisors(N))
        if (p % m == 1) return true;
    return false;
}

// brute force over projective points: -a y1^2 - b y2^2 + ab y3^2 = (4n - t^2) w^2, w != 0,
// i.e. x = t/2 + (y1 i + y2 j + y3 k)/(2w)
bool brute_trace_norm(const QuatPresentation& q, long long t, long long n, long long H) {
    const long long a = q.a, b = q.b, c = 4 * n - t * t;
    for (long long w = 1; w <= H; ++w)
        for (long long y1 = 0; y1 <= H; ++y1)
            for (long long y2 = 0; y2 <= H; ++y2) {
                long long r = c * w * w + a * y1 * y1 + b * y2 * y2;
                if (r % (a * b) != 0) continue;
                long long s = r / (a * b);
                if (s < 0) continue;
                long long y3 = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(s))));
                if (y3 * y3 != s) continue;
                Quat x(a, b, Rat(t, 2), Rat(y1, 2 * w), Rat(y2, 2 * w), Rat(y3, 2 * w));
                if (trd(x) == t && nrd(x) == n) return true;
            }
    return false;
}

}  // namespace

TEST(HilbertReal, KnownValues) {
    EXPECT_EQ(hilbert_real(1, -5), 1);
    EXPECT_EQ(hilbert_real(-1, -1), -1);
    EXPECT_EQ(hilbert_real(-3, 7), 1);
}

TEST(HilbertP, KnownValues) {
    EXPECT_EQ(hilbert_p(-1, -11, 11), -1);
    EXPECT_EQ(hilbert_p(-3, -2, 2), -1);
    for (long long p : {2, 3, 5, 7, 11, 13})
        for (long long b : {-7, -1, 2, 3, 5, 6, 10}) EXPECT_EQ(hilbert_p(9, b, p), 1);
}

TEST(HilbertP, ProductFormulaRandomPairs) {
    std::mt19937_64 g(2024);
    std::uniform_int_distribution<long long> d(-5000, 5000);
    int done = 0;
    while (done < 500) {
        long long a = d(g), b = d(g);
        if (!a || !b) continue;
        int prod = hilbert_real(a, b);
        auto ps = small_prime_support(a);
        for (long long p : small_prime_support(b)) ps.insert(p);
        ps.insert(2);
        for (long long p : ps) prod *= hilbert_p(a, b, p);
        EXPECT_EQ(prod, 1) << a << " " << b;
        ++done;
    }
}

TEST(HilbertP, SymmetricAndBimultiplicative) {
    std::mt19937_64 g(7);
    std::uniform_int_distribution<long long> d(-300, 300);
    for (int t = 0; t < 300; ++t) {
        long long a = d(g), a2 = d(g), b = d(g);
        if (!a || !a2 || !b) continue;
        for (long long p : {2, 3, 5, 7}) {
            EXPECT_EQ(hilbert_p(a, b, p), hilbert_p(b, a, p));
            EXPECT_EQ(hilbert_p(a * a2, b, p), hilbert_p(a, b, p) * hilbert_p(a2, b, p));
        }
    }
}

// (a,b)_p = 1 iff a x^2 + b y^2 = z^2 has a primitive solution; for odd p with
// a,b units the symbol is 1, and (p, u)_p is the Legendre symbol of u
TEST(HilbertP, OddPrimeClosedCases) {
    for (long long p : {3, 5, 7, 11, 13, 17}) {
        for (long long u = 1; u < p; ++u) {
            EXPECT_EQ(hilbert_p(p, u, p), legendre(u, p));
            for (long long v = 1; v < p; ++v) EXPECT_EQ(hilbert_p(u, v, p), 1);
        }
    }
}

TEST(Ramification, KnownValues) {
    auto r = ramified_set(-1, -1);
    EXPECT_TRUE(r.infinity);
    EXPECT_EQ(r.primes, std::vector<long long>{2});
    EXPECT_EQ(discriminant(-1, -1), 2);
    r = ramified_set(-1, -11);
    EXPECT_TRUE(r.infinity);
    EXPECT_EQ(r.primes, std::vector<long long>{11});
    EXPECT_EQ(discriminant(-1, -11), 11);
    EXPECT_EQ(discriminant(-3, -5), 5);
}

TEST(Ramification, EvenCardinality) {
    for (long long a = -30; a <= 30; ++a)
        for (long long b = -30; b <= 30; ++b) {
            if (!a || !b) continue;
            auto r = ramified_set(a, b);
            EXPECT_EQ((r.primes.size() + (r.infinity ? 1 : 0)) % 2, 0u) << a << " " << b;
        }
}

TEST(Presentation, AlternativePresentationsUpTo1000) {
    int n1 = 0, n3 = 0;
    for (long long N = 2; N <= 1000; ++N) {
        if (!valid_definite_level(N)) continue;
        if (!has_prime_mod(N, 4)) {
            EXPECT_EQ(discriminant(-1, -N), N) << N;
            ++n1;
        }
        if (!has_prime_mod(N, 3)) {
            EXPECT_EQ(discriminant(-3, -N), N) << N;
            ++n3;
        }
    }
    EXPECT_GT(n1, 100);
    EXPECT_GT(n3, 100);
}

TEST(Presentation, ForLevel) {
    auto p11 = presentation_for_level(11);
    EXPECT_EQ(p11.a, -1);
    EXPECT_EQ(p11.b, -11);
    auto p5 = presentation_for_level(5);
    EXPECT_EQ(p5.a, -3);
    EXPECT_EQ(p5.b, -5);
    auto p13 = presentation_for_level(13);
    auto r = ramified_set(p13.a, p13.b);
    EXPECT_TRUE(r.infinity);
    EXPECT_EQ(r.primes, std::vector<long long>{13});
    EXPECT_THROW(presentation_for_level(6), domain_error);
    EXPECT_THROW(presentation_for_level(18), domain_error);
    for (long long N = 2; N <= 1000; ++N) {
        if (!valid_definite_level(N)) continue;
        auto q = presentation_for_level(N);
        EXPECT_TRUE(q.a < 0 && q.b < 0 && q.ramified_at_infinity);
        EXPECT_EQ(q.discriminant, N);
    }
}

// the pure-quaternion norm form -aX^2 - bY^2 + abZ^2 of the algebra ramified at N
TEST(Ternary, KnownValues) {
    EXPECT_TRUE(ternary_represents(1, 1, 1, 2, 5));
    for (long long N : {5, 13, 17, 29, 37, 5 * 7 * 11}) {
        auto q = presentation_for_level(N);
        for (long long p : prime_divisors(N)) {
            if (p % 4 == 1) {
                EXPECT_FALSE(ternary_represents(-q.a, -q.b, q.a * q.b, 1, p)) << N;
            }
        }
    }
    for (long long N : {7, 13, 19, 31, 37}) {
        auto q = presentation_for_level(N);
        for (long long p : prime_divisors(N)) {
            if (p % 3 == 1) {
                EXPECT_FALSE(ternary_represents(-q.a, -q.b, q.a * q.b, 3, p)) << N;
            }
        }
    }
    // (-1,-N) itself is only the right algebra when no prime factor is 1 mod 4
    EXPECT_TRUE(ternary_represents(1, 11, 11, 1, 11));
}

TEST(Ternary, MatchesSolutionSearchModP) {
    // for odd p and unit coefficients every nonzero a is represented; check against search mod p
    for (long long p : {3, 5, 7}) {
        for (long long a = 1; a < p; ++a) {
            bool found = false;
            for (long long x = 0; x < p && !found; ++x)
                for (long long y = 0; y < p && !found; ++y)
                    for (long long z = 0; z < p && !found; ++z) found = (x * x + y * y + z * z - a) % p == 0;
            EXPECT_TRUE(found);
            EXPECT_TRUE(ternary_represents(1, 1, 1, a, p));
        }
    }
}

TEST(TraceNorm, KnownValues) {
    EXPECT_TRUE(exists_trace_norm(11, 0, 1));
    EXPECT_TRUE(exists_trace_norm(11, 1, 1));
    EXPECT_FALSE(exists_trace_norm(13, 0, 1));
    EXPECT_FALSE(exists_trace_norm(13, 1, 1));
    EXPECT_FALSE(exists_trace_norm(5, 0, 1));
    EXPECT_TRUE(exists_trace_norm(5, 1, 1));
}

TEST(TraceNorm, CongruenceCriterionUpTo200) {
    for (long long N = 2; N <= 200; ++N) {
        if (!valid_definite_level(N)) continue;
        EXPECT_EQ(exists_trace_norm(N, 0, 1), !has_prime_mod(N, 4)) << N;
        EXPECT_EQ(exists_trace_norm(N, 1, 1), !has_prime_mod(N, 3)) << N;
    }
}

TEST(TraceNorm, BruteForceUpTo50) {
    for (long long N = 2; N <= 50; ++N) {
        if (!valid_definite_level(N)) continue;
        auto q = presentation_for_level(N);
        for (auto [t, n] : {std::pair<long long, long long>{0, 1}, {1, 1}})
            EXPECT_EQ(exists_trace_norm(N, t, n), brute_trace_norm(q, t, n, 60)) << N << " t=" << t;
    }
}
