#pragma once
// high-precision complex helpers, dense matrices, Hermitian Jacobi eigensolver

#include "arith.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace qtriple {

using Real = boost::multiprecision::mpfr_float;

// precision in bits; mpfr_float takes decimal digits
inline void set_precision_bits(unsigned bits) {
    if (bits < 64) throw domain_error("precision must be at least 64 bits");
    unsigned digits = static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1;
    Real::default_precision(digits);
}

inline unsigned precision_bits() {
    return static_cast<unsigned>(std::floor(Real::default_precision() / 0.30103));
}

template <class R>
R to_real(const Rat& q) {
    return R(numer(q).str()) / R(denom(q).str());
}

template <class R = Real>
struct Cx {
    R re{0}, im{0};

    Cx() = default;
    Cx(R r) : re(std::move(r)) {}
    Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    Cx(int r) : re(r) {}

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    Cx operator-() const { return {-re, -im}; }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator*(const R& s, const Cx& a) { return {s * a.re, s * a.im}; }
    friend Cx operator/(const Cx& a, const R& s) { return {a.re / s, a.im / s}; }
    friend Cx operator/(const Cx& a, const Cx& b) {
        R d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Cx& operator+=(const Cx& b) { re += b.re; im += b.im; return *this; }
    Cx& operator-=(const Cx& b) { re -= b.re; im -= b.im; return *this; }
    Cx& operator*=(const Cx& b) { return *this = *this * b; }

    Cx conj() const { return {re, -im}; }
    R norm2() const { return re * re + im * im; }
    R abs() const { using std::sqrt; return sqrt(norm2()); }
};

template <class R>
Cx<R> cx_polar(const R& r, const R& theta) {
    using std::cos;
    using std::sin;
    return {r * cos(theta), r * sin(theta)};
}

template <class R>
R pi_value() {
    return boost::math::constants::pi<R>();
}

// numeric embedding with zeta = sqrt(3)/2 + i/2
template <class R = Real>
Cx<R> to_complex(const Cyclo12& z) {
    using std::sqrt;
    Cx<R> w(sqrt(R(3)) / 2, R(1) / 2);
    Cx<R> acc, p(R(1));
    for (int i = 0; i < 4; ++i) {
        acc += to_real<R>(z.c[i]) * p;
        p = p * w;
    }
    return acc;
}

template <class R = Real>
using CMat = std::vector<std::vector<Cx<R>>>;
template <class R = Real>
using CVec = std::vector<Cx<R>>;

template <class R>
CMat<R> cmat(size_t n, size_t m) {
    return CMat<R>(n, CVec<R>(m));
}

template <class R>
CMat<R> identity(size_t n) {
    auto I = cmat<R>(n, n);
    for (size_t i = 0; i < n; ++i) I[i][i] = Cx<R>(R(1));
    return I;
}

template <class R>
CMat<R> matmul(const CMat<R>& A, const CMat<R>& B) {
    size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), l = B.size();
    auto C = cmat<R>(n, m);
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < l; ++t) {
            if (A[i][t].re == 0 && A[i][t].im == 0) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] += A[i][t] * B[t][j];
        }
    return C;
}

template <class R>
CMat<R> adjoint(const CMat<R>& A) {
    size_t n = A.size(), m = A.empty() ? 0 : A[0].size();
    auto C = cmat<R>(m, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) C[j][i] = A[i][j].conj();
    return C;
}

template <class R>
CVec<R> matvec(const CMat<R>& A, const CVec<R>& v) {
    CVec<R> out(A.size());
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += A[i][j] * v[j];
    return out;
}

// <u, v> = sum u_i conj(v_i)
template <class R>
Cx<R> dot(const CVec<R>& u, const CVec<R>& v) {
    Cx<R> s;
    for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i].conj();
    return s;
}

// largest entry modulus of A - B
template <class R>
R max_diff(const CMat<R>& A, const CMat<R>& B) {
    R m = 0;
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = 0; j < A[i].size(); ++j) {
            R d = (A[i][j] - B[i][j]).abs();
            if (d > m) m = d;
        }
    return m;
}

template <class R>
R frobenius(const CMat<R>& A) {
    using std::sqrt;
    R s = 0;
    for (auto& row : A)
        for (auto& x : row) s += x.norm2();
    return sqrt(s);
}

template <class R>
struct EigenResult {
    std::vector<R> values;  // ascending
    CMat<R> vectors;        // columns
};

// cyclic Jacobi for complex Hermitian matrices
template <class R>
EigenResult<R> hermitian_eigen(CMat<R> A) {
    using std::abs;
    using std::sqrt;
    const size_t n = A.size();
    auto V = identity<R>(n);
    R eps = std::numeric_limits<R>::epsilon();
    for (int sweep = 0; sweep < 100; ++sweep) {
        R off = 0, total = 0;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = 0; q < n; ++q) {
                if (p != q) off += A[p][q].norm2();
                total += A[p][q].norm2();
            }
        if (off <= eps * eps * total || off == 0) break;
        for (size_t p = 0; p + 1 < n; ++p)
            for (size_t q = p + 1; q < n; ++q) {
                R mag = A[p][q].abs();
                if (mag == 0) continue;
                Cx<R> ph = A[p][q] / mag;  // e^{i phi}
                Cx<R> phc = ph.conj();
                R theta = (A[q][q].re - A[p][p].re) / (2 * mag);
                R t = 1 / (abs(theta) + sqrt(theta * theta + 1));
                if (theta < 0) t = -t;
                R c = 1 / sqrt(t * t + 1), s = t * c;
                // columns p, q
                for (size_t k = 0; k < n; ++k) {
                    Cx<R> akp = A[k][p], akq = A[k][q];
                    A[k][p] = c * akp - s * (phc * akq);
                    A[k][q] = s * akp + c * (phc * akq);
                }
                // rows p, q
                for (size_t k = 0; k < n; ++k) {
                    Cx<R> apk = A[p][k], aqk = A[q][k];
                    A[p][k] = c * apk - s * (ph * aqk);
                    A[q][k] = s * apk + c * (ph * aqk);
                }
                A[p][q] = Cx<R>();
                A[q][p] = Cx<R>();
                for (size_t k = 0; k < n; ++k) {
                    Cx<R> vkp = V[k][p], vkq = V[k][q];
                    V[k][p] = c * vkp - s * (phc * vkq);
                    V[k][q] = s * vkp + c * (phc * vkq);
                }
            }
    }
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return A[a][a].re < A[b][b].re; });
    EigenResult<R> res;
    res.vectors = cmat<R>(n, n);
    for (size_t c = 0; c < n; ++c) {
        res.values.push_back(A[idx[c]][idx[c]].re);
        for (size_t r = 0; r < n; ++r) res.vectors[r][c] = V[r][idx[c]];
    }
    return res;
}

// rational p/q with q <= max_den closest to x (continued fractions)
inline std::pair<Rat, double> rational_approx(const Real& x, long long max_den) {
    using std::floor;
    Real y = x;
    Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    Rat best = 0;
    for (int it = 0; it < 64; ++it) {
        Real a = floor(y);
        Int ai = a.convert_to<Int>();
        Int h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        best = Rat(h1, k1);
        Real frac = y - a;
        if (frac < Real(1e-60)) break;
        y = 1 / frac;
    }
    Real err = x - to_real<Real>(best);
    using std::abs;
    return {best, static_cast<double>(abs(err))};
}

}  // namespace qtriple
