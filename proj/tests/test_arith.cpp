#include "qtriple/numeric.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qtriple;

namespace {

// independent trial division, no caching or early exits shared with the library
std::vector<std::pair<long long, int>> naive_factor(long long n) {
    std::vector<std::pair<long long, int>> out;
    for (long long p = 2; p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.push_back({p, e});
    }
    return out;
}

// (d/p) for odd p by listing squares mod p
int qr_table(long long d, long long p) {
    long long r = ((d % p) + p) % p;
    if (r == 0) return 0;
    for (long long x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}

Cyclo12 random_cyclo(std::mt19937& g) {
    std::uniform_int_distribution<int> d(-9, 9);
    return Cyclo12(Rat(d(g), 1 + (d(g) + 9) % 4), d(g), Rat(d(g), 3), d(g));
}

}  // namespace

TEST(Factorize, KnownValues) {
    EXPECT_TRUE(factorize(1).empty());
    Factorization f12{{2, 2}, {3, 1}};
    EXPECT_EQ(factorize(12), f12);
    Factorization f1001{{7, 1}, {11, 1}, {13, 1}};
    EXPECT_EQ(factorize(1001), f1001);
}

TEST(Factorize, MatchesTrialDivision) {
    for (long long n = 1; n <= 3000; ++n) {
        auto f = factorize(n);
        auto g = naive_factor(n);
        ASSERT_EQ(f.size(), g.size()) << n;
        for (size_t i = 0; i < f.size(); ++i) {
            EXPECT_EQ(f[i].first, g[i].first);
            EXPECT_EQ(f[i].second, g[i].second);
        }
    }
}

TEST(Factorize, RejectsLargeInput) {
    EXPECT_THROW(factorize(kFactorCap), domain_error);
    EXPECT_THROW(factorize(0), domain_error);
}

TEST(Multiplicative, PhiOmega) {
    EXPECT_EQ(euler_phi(1), 1);
    EXPECT_EQ(omega(1), 0);
    EXPECT_EQ(euler_phi(37), 36);
    EXPECT_EQ(omega(37), 1);
    EXPECT_EQ(euler_phi(66), 20);
    EXPECT_EQ(omega(66), 3);
    // gcd count oracle
    for (long long n = 1; n <= 300; ++n) {
        long long c = 0;
        for (long long a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
        EXPECT_EQ(euler_phi(n), c) << n;
    }
}

TEST(Kronecker, KnownValues) {
    EXPECT_EQ(kronecker(-4, 2), 0);
    EXPECT_EQ(kronecker(-4, 11), -1);
    EXPECT_EQ(kronecker(-3, 13), 1);
}

TEST(Kronecker, MatchesResidueTables) {
    for (long long d : {-4, -3, -7, -8, 5, 8, 12, -15}) {
        for (long long p = 3; p < 200; ++p) {
            if (!is_prime(p)) continue;
            EXPECT_EQ(kronecker(d, p), qr_table(d, p)) << d << " " << p;
        }
    }
}

TEST(Kronecker, MultiplicativeAndPeriodic) {
    for (long long d : {-4, -3, -7, -8, 5, 13}) {
        const long long D = d < 0 ? -d : d;
        for (long long m = 1; m < 60; ++m)
            for (long long n = 1; n < 60; ++n) EXPECT_EQ(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
        for (long long n = 1; n < 200; ++n) EXPECT_EQ(kronecker(d, n), kronecker(d, n + D)) << d << " " << n;
    }
}

TEST(Rat, ReducedForm) {
    Rat q(Int(6), Int(-4));  // a signed long long denominator is not normalized by the backend
    EXPECT_EQ(numer(q), -3);
    EXPECT_EQ(denom(q), 2);
    EXPECT_EQ(to_string(q), "-3/2");
    EXPECT_EQ(to_string(Rat(5)), "5/1");
}

TEST(Cyclo12, KnownValues) {
    Cyclo12 z = Cyclo12::zeta();
    Cyclo12 z3 = z * z * z;
    EXPECT_EQ(z3 * z3, Cyclo12(-1));
    EXPECT_EQ(z.conj() * z, Cyclo12(1));
    EXPECT_EQ(z * z * z * z, z * z - Cyclo12(1));
    EXPECT_EQ(Cyclo12::zeta_pow(12), Cyclo12(1));
    EXPECT_EQ(Cyclo12::zeta_pow(-1), z.conj());
}

TEST(Cyclo12, FieldAxiomsOnRandomTriples) {
    std::mt19937 g(12);
    for (int t = 0; t < 200; ++t) {
        Cyclo12 x = random_cyclo(g), y = random_cyclo(g), w = random_cyclo(g);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ((x * y) * w, x * (y * w));
        EXPECT_EQ(x * (y + w), x * y + x * w);
        EXPECT_EQ(x.conj().conj(), x);
        EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
        if (!x.is_zero()) {
            EXPECT_NE(x.norm(), 0);
            EXPECT_EQ(x * x.inverse(), Cyclo12(1));
        }
    }
}

TEST(Cyclo12, NumericEmbedding) {
    set_precision_bits(128);
    // zeta = exp(i pi/6)
    auto z = to_complex<Real>(Cyclo12::zeta());
    Real pi = pi_value<Real>();
    EXPECT_LT(abs(z.re - cos(pi / 6)), Real(1e-35));
    EXPECT_LT(abs(z.im - sin(pi / 6)), Real(1e-35));
    std::mt19937 g(5);
    for (int t = 0; t < 50; ++t) {
        Cyclo12 x = random_cyclo(g), y = random_cyclo(g);
        auto a = to_complex<Real>(x * y), b = to_complex<Real>(x) * to_complex<Real>(y);
        EXPECT_LT((a - b).abs(), Real(1e-30));
    }
}

TEST(Cyclo12, RealAndRationalPredicates) {
    Cyclo12 z = Cyclo12::zeta();
    EXPECT_TRUE((z + z.conj()).is_real());
    EXPECT_FALSE((z + z.conj()).is_rational());  // sqrt 3
    EXPECT_TRUE(Cyclo12(Rat(2, 7)).is_rational());
    EXPECT_FALSE(z.is_real());
}

TEST(RationalApprox, ContinuedFractions) {
    set_precision_bits(128);
    auto [q, err] = rational_approx(Real(355) / 113, 1000);
    EXPECT_EQ(q, Rat(355, 113));
    EXPECT_LT(err, 1e-30);
    auto [q2, err2] = rational_approx(sqrt(Real(2)), 10000);
    EXPECT_GT(err2, 1e-9);
    (void)q2;
}
