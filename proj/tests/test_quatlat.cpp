#include "qtriple/quatlat.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qtriple;

namespace {

Quat rq(std::mt19937& g, long long a, long long b) {
    std::uniform_int_distribution<int> d(-6, 6);
    return Quat(a, b, Rat(d(g), 2), d(g), Rat(d(g), 3), d(g));
}

// count x in L with nrd(x) = n by scanning a coordinate box
size_t box_count(const Lattice4& L, const Rat& n, int H) {
    auto B = L.basis();
    size_t c = 0;
    for (int a = -H; a <= H; ++a)
        for (int b = -H; b <= H; ++b)
            for (int d = -H; d <= H; ++d)
                for (int e = -H; e <= H; ++e) {
                    Quat x = Rat(a) * B[0] + Rat(b) * B[1] + Rat(d) * B[2] + Rat(e) * B[3];
                    if (!x.is_zero() && nrd(x) == n) ++c;
                }
    return c;
}

}  // namespace

TEST(Quat, TraceNormExamples) {
    Quat i(-1, -11, 0, 1, 0, 0);
    EXPECT_EQ(nrd(i), 1);
    EXPECT_EQ(trd(i), 0);
    for (long long N : {5, 11, 17}) {
        Quat h(-3, -N, Rat(1, 2), Rat(1, 2), 0, 0);
        EXPECT_EQ(trd(h), 1);
        EXPECT_EQ(nrd(h), 1);
    }
}

TEST(Quat, Relations) {
    for (auto [a, b] : {std::pair<long long, long long>{-1, -1}, {-3, -5}, {-1, -11}}) {
        Quat i(a, b, 0, 1, 0, 0), j(a, b, 0, 0, 1, 0), k(a, b, 0, 0, 0, 1);
        EXPECT_EQ(i * i, Rat(a) * Quat::one(a, b));
        EXPECT_EQ(j * j, Rat(b) * Quat::one(a, b));
        EXPECT_EQ(i * j, k);
        EXPECT_EQ(j * i, -k);
    }
}

TEST(Quat, NormMultiplicativeAndPositive) {
    std::mt19937 g(3);
    for (int t = 0; t < 300; ++t) {
        Quat x = rq(g, -3, -13), y = rq(g, -3, -13), z = rq(g, -3, -13);
        EXPECT_EQ(nrd(x * y * z), nrd(x) * nrd(y) * nrd(z));
        EXPECT_EQ(x * conj(x), nrd(x) * Quat::one(-3, -13));
        EXPECT_EQ(trd(x), (x + conj(x)).x[0]);
        if (!x.is_zero()) {
            EXPECT_GT(nrd(x), 0);
        }
    }
}

TEST(Quat, PresentationMismatch) {
    EXPECT_THROW(Quat(-1, -1, 1, 0, 0, 0) * Quat(-1, -11, 1, 0, 0, 0), domain_error);
    EXPECT_THROW(Quat(-1, -1, 1, 0, 0, 0) + Quat(-1, -11, 1, 0, 0, 0), domain_error);
}

TEST(Lattice, HnfCanonicalUnderUnimodularRebasing) {
    std::mt19937 g(17);
    auto pres = make_presentation(-1, -11);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Quat> B;
        for (int s = 0; s < 4; ++s) B.push_back(rq(g, -1, -11));
        Lattice4 L = lattice_from(pres, B);
        if (covolume(L) == 0) continue;
        // random elementary operations keep the lattice
        auto C = L.basis();
        for (int op = 0; op < 12; ++op) {
            int s = g() % 4, t = g() % 4;
            if (s == t) continue;
            C[s] = C[s] + Rat(d(g)) * C[t];
            if (g() % 2) std::swap(C[s], C[t]);
            if (g() % 3 == 0) C[t] = -C[t];
        }
        Lattice4 M = lattice_from(pres, {C[0], C[1], C[2], C[3]});
        EXPECT_EQ(L, M);
        EXPECT_EQ(lattice_from(pres, {M.basis(0), M.basis(1), M.basis(2), M.basis(3)}), M);  // idempotent
    }
}

TEST(Lattice, CoordinatesRoundTrip) {
    auto O = maximal_order(make_presentation(-1, -11)).lattice;
    std::mt19937 g(1);
    std::uniform_int_distribution<int> d(-20, 20);
    auto B = O.basis();
    for (int t = 0; t < 100; ++t) {
        std::array<int, 4> c{d(g), d(g), d(g), d(g)};
        Quat x(O.pres.a, O.pres.b);
        for (int s = 0; s < 4; ++s) x = x + Rat(c[s]) * B[s];
        auto back = lattice_coords(O, x);
        ASSERT_TRUE(back);
        for (int s = 0; s < 4; ++s) EXPECT_EQ((*back)[s], c[s]);
    }
    EXPECT_FALSE(lattice_contains(O, Rat(1, 3) * Quat::one(-1, -11)));
}

TEST(MaximalOrder, Hurwitz) {
    auto od = maximal_order(make_presentation(-1, -1));
    EXPECT_EQ(od.reduced_discriminant, 2);
    EXPECT_TRUE(lattice_contains(od.lattice, Quat(-1, -1, Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2))));
    EXPECT_EQ(od.unit_order, 12);
    EXPECT_EQ(short_vectors(od.lattice, 1).size(), 24u);
    EXPECT_EQ(box_count(od.lattice, 1, 2), 24u);
}

TEST(MaximalOrder, DiscriminantEqualsLevel) {
    for (long long N : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 30, 37, 42, 101, 131}) {
        auto od = maximal_order(presentation_for_level(N));
        EXPECT_TRUE(is_order(od.lattice)) << N;
        EXPECT_EQ(reduced_discriminant(od.lattice), N) << N;
        EXPECT_TRUE(integral_trace_form(od.lattice));
    }
}

TEST(ShortVectors, MatchBoxSearch) {
    // three small lattices: two orders and a sublattice
    auto O11 = maximal_order(make_presentation(-1, -11)).lattice;
    auto O5 = maximal_order(presentation_for_level(5)).lattice;
    auto S = lattice_from(O11.pres, {O11.basis(0), Rat(2) * O11.basis(1), O11.basis(2), Rat(3) * O11.basis(3)});
    for (const Lattice4* L : {&O11, &O5, &S}) {
        for (int n = 1; n <= 6; ++n) {
            auto v = short_vectors(*L, n);
            EXPECT_EQ(v.size(), box_count(*L, n, 6)) << n;
            for (auto& x : v) {
                EXPECT_EQ(nrd(x), n);
                EXPECT_TRUE(lattice_contains(*L, x));
            }
        }
        EXPECT_TRUE(short_vectors(*L, 0).empty());
    }
}

TEST(Units, GroupAxioms) {
    auto od = maximal_order(make_presentation(-1, -1));
    auto U = unit_group(od.lattice);
    auto in_group = [&](const Quat& x) {
        for (auto& u : U)
            if (u == x || u == -x) return true;
        return false;
    };
    for (auto& u : U) {
        EXPECT_TRUE(in_group(conj(u)));  // inverse
        for (auto& v : U) EXPECT_TRUE(in_group(u * v));
    }
    // units have |trd| <= 1 besides +-1, so at a Type-1 level (no trace 0 or 1 norm 1 element) all are trivial
    for (long long N : {13, 37, 61}) {
        auto cs = class_set_for_level(N);
        for (auto u : cs.unit_orders) EXPECT_EQ(u, 1) << N;
    }
    // 131 = 3 mod 4: the order of (-1,-131) contains i
    EXPECT_EQ(maximal_order(presentation_for_level(131)).unit_order, 2);
}

TEST(ClassSet, KnownValues) {
    auto c13 = class_set_for_level(13);
    EXPECT_EQ(c13.size(), 1u);
    EXPECT_EQ(c13.unit_orders, std::vector<long long>{1});
    EXPECT_EQ(c13.mass(), 1);
    auto c11 = class_set_for_level(11);
    EXPECT_EQ(c11.size(), 2u);
    auto uo = c11.unit_orders;
    std::sort(uo.begin(), uo.end());
    EXPECT_EQ(uo, (std::vector<long long>{2, 3}));
    EXPECT_EQ(c11.mass(), Rat(5, 6));
    auto c2 = class_set_for_level(2);
    EXPECT_EQ(c2.size(), 1u);
    EXPECT_EQ(c2.unit_orders, std::vector<long long>{12});
}

TEST(ClassSet, MassAndInequivalence) {
    for (long long N : {2, 3, 5, 7, 11, 13, 37, 101}) {
        auto cs = class_set_for_level(N);
        EXPECT_EQ(cs.mass(), Rat(euler_phi(N), 12)) << N;
        for (size_t i = 0; i < cs.size(); ++i) {
            EXPECT_TRUE(is_order(cs.left_orders[i]));
            EXPECT_EQ(reduced_discriminant(cs.left_orders[i]), N);
            for (size_t j = i + 1; j < cs.size(); ++j)
                EXPECT_FALSE(ideals_equivalent(cs.ideal_reps[i], cs.ideal_norms[i], cs.ideal_reps[j], cs.ideal_norms[j]));
        }
    }
}

TEST(ClassSet, EquivalenceIsTransitiveOnScaledIdeals) {
    auto cs = class_set_for_level(37);
    const auto& I = cs.ideal_reps[1];
    Rat n = cs.ideal_norms[1];
    // I, xI, yxI for elements x, y of the order (left multiplication keeps right ideals)
    Quat x = cs.order.lattice.basis(1) + Quat::one(I.pres.a, I.pres.b);
    Quat y = cs.order.lattice.basis(2) + Rat(2) * Quat::one(I.pres.a, I.pres.b);
    auto lmul = [&](const Quat& q, const Lattice4& L) {
        std::vector<Quat> g;
        for (int s = 0; s < 4; ++s) g.push_back(q * L.basis(s));
        return lattice_from(L.pres, g);
    };
    Lattice4 J = lmul(x, I), K = lmul(y, J);
    Rat nJ = n * nrd(x), nK = nJ * nrd(y);
    EXPECT_TRUE(ideals_equivalent(I, n, J, nJ));
    EXPECT_TRUE(ideals_equivalent(J, nJ, K, nK));
    EXPECT_TRUE(ideals_equivalent(I, n, K, nK));
    EXPECT_FALSE(ideals_equivalent(cs.ideal_reps[0], cs.ideal_norms[0], K, nK));
}
