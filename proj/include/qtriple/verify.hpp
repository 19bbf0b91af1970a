#pragma once
// spectral side vs geometric side of the average formula, three-form sums, L^alg

#include "periods.hpp"

#include <chrono>

namespace qtriple {

enum class LevelType { Type1, Type5, Type7, Type11, Ramified23 };

inline const char* level_type_name(LevelType t) {
    switch (t) {
        case LevelType::Type1: return "Type1";
        case LevelType::Type5: return "Type5";
        case LevelType::Type7: return "Type7";
        case LevelType::Type11: return "Type11";
        default: return "ramified-at-2-or-3";
    }
}

// prod_{p|N} (1 - chi(p))/2 for chi = chi_{-4} or chi_{-3}
inline Rat orbit_product(long long N, long long d) {
    Rat r = 1;
    for (long long p : prime_divisors(N)) r *= Rat(1 - kronecker(d, p), 2);
    return r;
}

inline LevelType level_type(long long N) {
    if (!valid_definite_level(N)) throw domain_error("level_type: invalid level");
    if (N % 2 == 0 || N % 3 == 0) return LevelType::Ramified23;
    bool p4 = orbit_product(N, -4) != 0, p3 = orbit_product(N, -3) != 0;
    if (!p4 && !p3) return LevelType::Type1;
    if (!p4) return LevelType::Type5;
    if (!p3) return LevelType::Type7;
    return LevelType::Type11;
}

inline Rat geometric_rhs_type1(long long N, int two_k) {
    if (level_type(N) != LevelType::Type1) throw domain_error("geometric_rhs_type1: level is not of Type 1");
    const int k = two_k / 2;
    Rat res = k == 1 ? Rat(1) - Rat(24, euler_phi(N)) : Rat(1);
    Int g = gamma_int(k), g1 = gamma_int(2 * k - 1);
    return res * Rat(g * g * g * gamma_int(3 * k - 1)) / Rat(Int(1LL << omega(N)) * gamma_int(2 * k) * g1 * g1);
}

// everything computed once per (N, 2k)
template <class R = Real>
struct LevelData {
    std::shared_ptr<const ClassSet> cs;
    EigenformSet<R> eig;
    PeriodContext<R> ctx;
    std::vector<size_t> cusp;  // indices of non-residual forms
};

template <class R = Real>
LevelData<R> level_data(long long N, int two_k, int prime_budget = 6) {
    if (two_k < 2 || two_k % 2) throw domain_error("weight must be even and >= 2");
    LevelData<R> L;
    L.cs = std::make_shared<const ClassSet>(class_set_for_level(N));
    L.eig = eigenforms<R>(L.cs, two_k / 2, prime_budget);
    L.ctx = period_context<R>(L.cs, two_k / 2);
    for (size_t i = 0; i < L.eig.forms.size(); ++i)
        if (!L.eig.forms[i].residual) L.cusp.push_back(i);
    return L;
}

// (1/2N^2) sum over ordered cusp pairs (f, g) of the central-value ratio
template <class R = Real>
R spectral_lhs(const LevelData<R>& L, size_t h_index) {
    const auto& forms = L.eig.forms;
    const auto& h = forms.at(L.cusp.at(h_index));
    R s = 0;
    for (size_t a : L.cusp)
        for (size_t b : L.cusp) s += ichino_ratio(forms[a], forms[b], h, L.ctx).value;
    R N = R(L.cs->N);
    return s / (2 * N * N);
}

template <class R = Real>
struct OrbitTerms {
    R trivial = 0, gamma0 = 0, gamma1 = 0;
    R total() const { return trivial + gamma0 + gamma1; }
};

// geometric side through toric periods (extended scope)
template <class R = Real>
OrbitTerms<R> geometric_rhs_terms(const LevelData<R>& L, size_t h_index) {
    using std::pow;
    using std::sqrt;
    const long long N = L.cs->N;
    const int k = L.ctx.k;
    const auto& h = L.eig.forms.at(L.cusp.at(h_index));
    OrbitTerms<R> out;
    Rat res = k == 1 ? Rat(1) - Rat(24, euler_phi(N)) : Rat(1);
    Int g = gamma_int(k), g1 = gamma_int(2 * k - 1);
    out.trivial = to_real<R>(res * Rat(g * g * g * gamma_int(3 * k - 1)) /
                             Rat(Int(1LL << omega(N)) * gamma_int(2 * k) * g1 * g1));
    R twopi_k = pow(2 * pi_value<R>(), 2 * k);
    for (Field f : {Field::E0, Field::E1}) {
        const long long pe = field_prime(f);
        Rat prod = orbit_product(N, f == Field::E0 ? -4 : -3);
        if (prod == 0) continue;
        std::optional<int> delta;
        if (N % pe == 0) delta = h.delta.at(pe);
        R inner = 0;
        for (auto& spec : admissible_characters(k, f, N, delta)) {
            Cyclo12 c = orbit_coefficient(k, spec, N, delta);
            if (!c.is_rational()) throw domain_error("orbit coefficient is not rational");
            inner += to_real<R>(c.c[0]) * waldspurger_ratio(h, f, spec, L.ctx).value;
        }
        R c = f == Field::E0 ? R(4) : 6 * sqrt(R(3));
        R ordp = (N % pe == 0) ? R(2) : R(1);
        R term = c / twopi_k * R(g1.str()) / R(N) * ordp * to_real<R>(prod) * inner;
        (f == Field::E0 ? out.gamma0 : out.gamma1) = term;
    }
    return out;
}

template <class R = Real>
R geometric_rhs_full(const LevelData<R>& L, size_t h_index) {
    return geometric_rhs_terms(L, h_index).total();
}

// finite-model orbital decomposition of the full Parseval sum over all pairs,
// no root-number filter, residual forms included; a diagnostic oracle
template <class R = Real>
OrbitTerms<R> parseval_orbital_terms(const LevelData<R>& L, size_t form_index) {
    const auto& ctx = L.ctx;
    const ClassSet& cs = *L.cs;
    const auto& H = L.eig.forms.at(form_index).fibre;
    const size_t d = ctx.Pon.size();
    const int k = ctx.k;
    R Nh = petersson_norm(H, ctx);
    OrbitTerms<R> out;
    for (size_t j = 0; j < cs.size(); ++j) {
        auto U = cmat<R>(d, d);
        for (size_t i = 0; i < d; ++i)
            for (size_t l = 0; l < d; ++l) {
                Cx<R> s;
                for (size_t r = 0; r < d; ++r) s += ctx.Pon[i][l][r] * H[j][r];
                U[i][l] = s.conj();
            }
        for (auto& u : cs.units[j]) {
            auto Rm = rho<R>(u, k);
            auto RU = matmul(Rm, U);
            R t = 0;
            for (size_t i = 0; i < d; ++i)
                for (size_t l = 0; l < d; ++l) t += (RU[i][l] * U[i][l].conj()).re;
            t /= R(cs.unit_orders[j]);
            Rat tr = trd(u);
            if (u == Quat::one(u.a, u.b)) out.trivial += t;
            else if (tr == 0) out.gamma0 += t;
            else out.gamma1 += t;
        }
    }
    const long long N = cs.N;
    R s = R(24) * to_real<R>(ichino_gamma(k)) / R((1LL << omega(N)) * euler_phi(N));
    R kk = 2 * k - 1;
    R scale = s * kk * kk / (to_real<R>(ctx.normP_sq) * Nh);
    out.trivial *= scale;
    out.gamma0 *= scale;
    out.gamma1 *= scale;
    return out;
}

template <class R = Real>
R parseval_spectral(const LevelData<R>& L, size_t form_index) {
    const auto& forms = L.eig.forms;
    R s = 0;
    for (auto& f : forms)
        for (auto& g : forms) s += ichino_raw(f.fibre, g.fibre, forms.at(form_index).fibre, L.ctx);
    R N = R(L.cs->N);
    return s / (2 * N * N);
}

struct Record {
    size_t h_index = 0;
    double lhs = 0, rhs = 0, abs_err = 0, rel_err = 0;
    bool pass = false;
};

struct VerificationReport {
    long long N = 0;
    int weight = 0;
    LevelType type = LevelType::Type1;
    std::string rhs_kind;  // "type1" or "full"
    double tol_rel = 1e-8, tol_abs = 1e-10;
    std::vector<Record> records;
    size_t class_number = 0;
    size_t eigenform_count = 0;
    unsigned precision_bits = 0;
    double runtime_ms = 0;

    bool pass() const {
        for (auto& r : records)
            if (!r.pass) return false;
        return true;
    }
};

// a target below the absolute tolerance counts as zero
template <class R = Real>
Record make_record(size_t h, const R& lhs, const R& rhs, double tol_rel, double tol_abs) {
    using std::abs;
    Record r;
    r.h_index = h;
    r.lhs = lhs.template convert_to<double>();
    r.rhs = rhs.template convert_to<double>();
    R ae = abs(lhs - rhs);
    r.abs_err = ae.template convert_to<double>();
    const bool zero_target = abs(rhs) < R(tol_abs);
    r.rel_err = zero_target ? r.abs_err : R(ae / abs(rhs)).template convert_to<double>();
    r.pass = zero_target ? r.abs_err < tol_abs : r.rel_err < tol_rel;
    return r;
}

template <class R = Real>
VerificationReport verify_main(const LevelData<R>& L, double tol_rel = 1e-8, double tol_abs = 1e-10,
                               bool extended = false) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.N = L.cs->N;
    rep.weight = 2 * L.ctx.k;
    rep.type = level_type(rep.N);
    rep.tol_rel = tol_rel;
    rep.tol_abs = tol_abs;
    rep.class_number = L.cs->size();
    rep.eigenform_count = L.cusp.size();
    rep.precision_bits = precision_bits();
    const bool type1 = rep.type == LevelType::Type1;
    if (!type1 && !extended) throw domain_error("level is not of Type 1: the full geometric side needs --extended");
    rep.rhs_kind = type1 ? "type1" : "full";
    for (size_t h = 0; h < L.cusp.size(); ++h) {
        R lhs = spectral_lhs(L, h);
        R rhs = type1 ? to_real<R>(geometric_rhs_type1(rep.N, rep.weight)) : geometric_rhs_full(L, h);
        rep.records.push_back(make_record<R>(h, lhs, rhs, tol_rel, tol_abs));
    }
    rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---- three-form sums

// display scale turning the classical sum into the tabulated units (weights 2, 4, 6)
inline Rat table_scale(int two_k) {
    switch (two_k) {
        case 2: return 1;
        case 4: return 96;
        case 6: return 165888;
        default: return 1;
    }
}

struct SumOverThreeRhs {
    Rat value;              // in table units
    Rat correction;         // value - phi/2^omega, in table units
    LevelType type = LevelType::Type1;
    bool tabulated = false; // weight in {2, 4, 6}
};

// closed form of the sum over all (f, g, h), requires 2, 3 not dividing N
inline SumOverThreeRhs sum_over_three_rhs(long long N, int two_k) {
    if (N % 2 == 0 || N % 3 == 0) throw domain_error("sum_over_three: closed form needs 2, 3 not dividing N");
    const int k = two_k / 2;
    const long long phi = euler_phi(N);
    const Rat p4 = orbit_product(N, -4), p3 = orbit_product(N, -3);
    Rat sum_i0 = 0, sum_i1 = 0;
    for (auto& s : admissible_characters(k, Field::E0, N, std::nullopt)) {
        Cyclo12 c = orbit_coefficient(k, s, N, std::nullopt);
        if (!c.is_rational()) throw domain_error("orbit coefficient is not rational");
        sum_i0 += c.c[0];
    }
    for (auto& s : admissible_characters(k, Field::E1, N, std::nullopt)) {
        Cyclo12 c = orbit_coefficient(k, s, N, std::nullopt);
        if (!c.is_rational()) throw domain_error("orbit coefficient is not rational");
        sum_i1 += c.c[0];
    }
    Int g = gamma_int(k), g1 = gamma_int(2 * k - 1);
    Rat res = k == 1 ? Rat(1) - Rat(24, phi) : Rat(1);
    Rat first = Rat(dim_newforms(N, two_k)) * res / Rat(Int(1LL << omega(N)) * gamma_int(2 * k) * g1 * g1);
    Rat r4 = k == 1 ? Rat(1) - Rat(6, phi) : Rat(1);
    Rat r3 = k == 1 ? Rat(1) - Rat(4, phi) : Rat(1);
    Rat orbits = (sum_i0 * p4 * r4 / 2 + sum_i1 * p3 * r3) / Rat(g * g * g * gamma_int(3 * k - 1));
    SumOverThreeRhs out;
    out.type = level_type(N);
    out.tabulated = two_k == 2 || two_k == 4 || two_k == 6;
    out.value = table_scale(two_k) * (first + orbits);
    out.correction = out.value - Rat(phi, 1LL << omega(N));
    return out;
}

// the weight-4 table subtracts its constants, the weight-6 table adds them
inline int table_sign(int two_k) { return two_k == 4 ? -1 : 1; }

// printed constants of the weight-4/6 tables for Types 1, 7, 5, 11 (in that order),
// from the general expression with the indicator products set by hand
inline std::array<Rat, 4> type_constants(int two_k) {
    if (two_k != 4 && two_k != 6) throw domain_error("type_constants: only weights 4 and 6 are tabulated");
    const int k = two_k / 2;
    std::array<Rat, 4> out;
    const std::array<std::pair<int, int>, 4> ind{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
    Rat sum_i0 = 0, sum_i1 = 0;
    for (auto& s : admissible_characters(k, Field::E0, 1, std::nullopt)) sum_i0 += archimedean_I(k, s.m, Gamma::g0).c[0];
    for (auto& s : admissible_characters(k, Field::E1, 1, std::nullopt)) sum_i1 += archimedean_I(k, s.m, Gamma::g1).c[0];
    Rat c2 = (two_k % 4 == 0) ? Rat(1, 4) : Rat(-1, 4);
    Rat c3 = (two_k % 3 == 0) ? Rat(1, 3) : (two_k % 3 == 1 ? Rat(0) : Rat(-1, 3));
    Int g = gamma_int(k), g1 = gamma_int(2 * k - 1);
    Rat base = Rat(1) / Rat(gamma_int(2 * k) * g1 * g1);
    Rat orb = Rat(1) / Rat(g * g * g * gamma_int(3 * k - 1));
    for (size_t t = 0; t < 4; ++t) {
        Rat p4 = ind[t].first, p3 = ind[t].second;
        // #F = (2k-1) phi/12 - 2^omega (c2 p4 + c3 p3); the phi part gives phi/2^omega
        Rat v = -(c2 * p4 + c3 * p3) * base + (sum_i0 * p4 / 2 + sum_i1 * p3) * orb;
        out[t] = table_sign(two_k) * table_scale(two_k) * v;
    }
    return out;
}

template <class R = Real>
struct SumOverThree {
    R lhs = 0;
    SumOverThreeRhs rhs;
};

// lhs in table units: scale * sum over (f, g, h) of the classical normalized value
template <class R = Real>
SumOverThree<R> sum_over_three(const LevelData<R>& L) {
    SumOverThree<R> out;
    const long long N = L.cs->N;
    const int k = L.ctx.k;
    out.rhs = sum_over_three_rhs(N, 2 * k);
    R s = 0;
    for (size_t h = 0; h < L.cusp.size(); ++h) s += spectral_lhs(L, h);
    Int g = gamma_int(k);
    out.lhs = s * to_real<R>(table_scale(2 * k) / Rat(g * g * g * gamma_int(3 * k - 1)));
    return out;
}

// normalized algebraic part of the central value
template <class R = Real>
R l_algebraic(const Eigenform<R>& f, const Eigenform<R>& g, const Eigenform<R>& h, const PeriodContext<R>& ctx) {
    R lam = ichino_ratio(f, g, h, ctx).value;
    const long long N = ctx.N();
    Rat c = Rat(Int(1) << (4 * ctx.k - 1)) * Rat(1LL << omega(N)) / Rat(2 * N * N);
    return to_real<R>(c) * lam;
}

// classical display value: the summand normalized as in the pi-power form of the identity
template <class R = Real>
R classical_from_adelic(const R& adelic, int k) {
    Int g = gamma_int(k);
    return adelic / to_real<R>(Rat(g * g * g * gamma_int(3 * k - 1)));
}

}  // namespace qtriple
