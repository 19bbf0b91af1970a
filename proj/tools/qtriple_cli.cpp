// qtriple command line: class sets, Brandt data, period sums and the average-formula checks
#include "qtriple/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qtriple;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kCsvHeader = "command,level,weight,record,name,value,reference,abs_err,rel_err,pass";

struct Config {
    long long level = 0;
    int weight = 2;
    long long prime = 0;
    unsigned precision = 128;
    double tol = 1e-8;
    double tol_abs = 1e-10;
    std::string format = "json";
    bool extended = false;
    bool classical = false;
    bool timing = false;
    int threads = 1;
    int budget = 6;
    std::string out;
};

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    json params = json::object();
    json results = json::object();
    std::vector<std::vector<std::string>> rows;  // verify-style records; otherwise flattened from results
    int exit_code = 0;
};

double num(const Real& x) { return x.convert_to<double>(); }

json rat(const Rat& q) { return to_string(q); }

json cyclo(const Cyclo12& z) {
    json a = json::array();
    for (auto& c : z.coords()) a.push_back(c);
    return a;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void need_level(const Config& c) {
    if (!valid_definite_level(c.level))
        throw usage_error("--level must be square-free with an odd number of prime factors (got " +
                          std::to_string(c.level) + ")");
}

void need_weight(const Config& c) {
    if (c.weight < 2 || c.weight % 2) throw usage_error("--weight must be an even integer >= 2");
}

json form_json(const Eigenform<Real>& f) {
    json ap = json::object(), dl = json::object();
    for (auto& [p, a] : f.ap) ap[std::to_string(p)] = num(a);
    for (auto& [q, s] : f.delta) dl[std::to_string(q)] = s;
    return {{"residual", f.residual}, {"ap", ap}, {"delta", dl}};
}

json presentation_json(const QuatPresentation& q) {
    return {{"a", q.a}, {"b", q.b}, {"discriminant", q.discriminant}, {"definite", q.ramified_at_infinity}};
}

// ---- subcommands

Output cmd_hilbert(const Config& c, long long a, long long b) {
    if (a == 0 || b == 0) throw usage_error("hilbert: arguments must be nonzero");
    Output o;
    o.params = {{"a", a}, {"b", b}};
    json sym = json::object();
    sym["inf"] = hilbert_real(a, b);
    auto ps = small_prime_support(a);
    for (long long p : small_prime_support(b)) ps.insert(p);
    ps.insert(2);
    int prod = hilbert_real(a, b);
    for (long long p : ps) {
        int s = hilbert_p(a, b, p);
        sym[std::to_string(p)] = s;
        prod *= s;
    }
    auto rs = ramified_set(a, b);
    json ram = json::array();
    if (rs.infinity) ram.push_back("inf");
    for (long long p : rs.primes) ram.push_back(std::to_string(p));
    o.results["symbols"] = sym;
    o.results["product"] = prod;
    o.results["ramified"] = ram;
    o.results["discriminant"] = discriminant(a, b);
    o.results["definite"] = rs.infinity;
    if (c.prime) {
        if (!is_prime(c.prime)) throw usage_error("--prime must be prime");
        o.params["prime"] = c.prime;
        o.results["symbol_at_prime"] = hilbert_p(a, b, c.prime);
    }
    return o;
}

Output cmd_constants(const Config& c) {
    need_weight(c);
    const int k = c.weight / 2;
    Output o;
    o.params = {{"weight", c.weight}};
    json C = json::array();
    for (auto& [idx, v] : expand_P(k).C) {
        auto [i, j, r] = idx;
        C.push_back({{"i", i}, {"j", j}, {"r", r}, {"C", v.str()}});
    }
    o.results["C"] = C;
    o.results["norm_sq_P"] = rat(norm_sq_P(k));
    o.results["norm_sq_w"] = rat(norm_sq_w(k));
    json I = json::array();
    for (int m = -(k - 1); m <= k - 1; ++m) {
        Cyclo12 a = archimedean_I(k, m, Gamma::g0), b = archimedean_I(k, m, Gamma::g1);
        json row = {{"m", m}, {"gamma0", cyclo(a)}, {"gamma1", cyclo(b)}};
        if (a.is_rational()) row["gamma0_value"] = rat(a.c[0]);
        if (b.is_rational()) row["gamma1_value"] = rat(b.c[0]);
        I.push_back(row);
    }
    o.results["I"] = I;
    json adm = json::object();
    for (Field f : {Field::E0, Field::E1}) {
        json ms = json::array();
        for (auto& s : admissible_characters(k, f, 1, std::nullopt)) ms.push_back(s.m);
        adm[field_name(f)] = ms;
    }
    o.results["admissible_m_unramified"] = adm;
    if (c.weight == 4 || c.weight == 6) {
        auto tc = type_constants(c.weight);
        o.results["type_constants"] = {{"Type1", rat(tc[0])}, {"Type7", rat(tc[1])},
                                       {"Type5", rat(tc[2])}, {"Type11", rat(tc[3])}};
    }
    return o;
}

Output cmd_dims(const Config& c) {
    need_level(c);
    need_weight(c);
    Output o;
    o.params = {{"level", c.level}, {"weight", c.weight}};
    o.results["dim_newforms"] = dim_newforms(c.level, c.weight);
    o.results["level_type"] = level_type_name(level_type(c.level));
    o.results["phi"] = euler_phi(c.level);
    o.results["omega"] = omega(c.level);
    return o;
}

Output cmd_classset(const Config& c) {
    need_level(c);
    Output o;
    o.params = {{"level", c.level}};
    ClassSet cs = class_set_for_level(c.level);
    o.results["presentation"] = presentation_json(cs.order.lattice.pres);
    o.results["reduced_discriminant"] = rat(cs.order.reduced_discriminant);
    o.results["class_number"] = cs.size();
    o.results["neighbor_prime"] = cs.neighbor_prime;
    json uo = json::array(), nm = json::array();
    for (auto u : cs.unit_orders) uo.push_back(u);
    for (auto& n : cs.ideal_norms) nm.push_back(rat(n));
    o.results["unit_orders"] = uo;
    o.results["ideal_norms"] = nm;
    o.results["mass"] = rat(cs.mass());
    o.results["mass_expected"] = rat(Rat(euler_phi(c.level), 12));
    return o;
}

Output cmd_brandt(const Config& c) {
    need_level(c);
    need_weight(c);
    if (!c.prime || !is_prime(c.prime)) throw usage_error("brandt: --prime must be a prime");
    Output o;
    o.params = {{"level", c.level}, {"weight", c.weight}, {"prime", c.prime}};
    auto cs = std::make_shared<const ClassSet>(class_set_for_level(c.level));
    auto ws = weight_space<Real>(cs, c.weight / 2);
    auto H = c.level % c.prime == 0 ? al_operator<Real>(c.prime, ws) : brandt_matrix<Real>(c.prime, ws);
    o.results["atkin_lehner"] = H.atkin_lehner;
    o.results["dimension"] = ws.total_dim;
    json ev = json::array();
    Real tr = 0;
    if (ws.total_dim) {
        auto eg = hermitian_eigen(H.entries);
        for (auto& v : eg.values) ev.push_back(num(v));
        for (size_t i = 0; i < ws.total_dim; ++i) tr += H.entries[i][i].re;
    }
    o.results["eigenvalues"] = ev;
    o.results["trace"] = num(tr);
    o.results["self_adjoint_error"] = ws.total_dim ? num(max_diff(H.entries, adjoint(H.entries))) : 0.0;
    return o;
}

Output cmd_eigen(const Config& c) {
    need_level(c);
    need_weight(c);
    Output o;
    o.params = {{"level", c.level}, {"weight", c.weight}, {"budget", c.budget}};
    auto cs = std::make_shared<const ClassSet>(class_set_for_level(c.level));
    auto E = eigenforms<Real>(cs, c.weight / 2, c.budget);
    json pr = json::array(), fs = json::array();
    for (long long p : E.primes) pr.push_back(p);
    for (auto& f : E.forms) fs.push_back(form_json(f));
    o.results["primes"] = pr;
    o.results["forms"] = fs;
    o.results["cusp_count"] = E.cusp_count();
    o.results["dim_newforms"] = dim_newforms(c.level, c.weight);
    return o;
}

Output cmd_verify(const Config& c) {
    need_level(c);
    need_weight(c);
    if (level_type(c.level) != LevelType::Type1 && !c.extended)
        throw usage_error("verify: level " + std::to_string(c.level) +
                          " is not of Type 1; the full geometric side needs --extended");
    Output o;
    o.params = {{"level", c.level}, {"weight", c.weight}, {"tol", c.tol}, {"tol_abs", c.tol_abs},
                {"extended", c.extended}, {"budget", c.budget}};
    auto L = level_data<Real>(c.level, c.weight, c.budget);
    auto rep = verify_main(L, c.tol, c.tol_abs, c.extended);
    const int k = c.weight / 2;
    json recs = json::array();
    for (auto& r : rep.records) {
        json j = {{"h_index", r.h_index}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"abs_err", r.abs_err},
                  {"rel_err", r.rel_err}, {"pass", r.pass}};
        if (c.classical) {
            j["lhs_classical"] = num(classical_from_adelic(Real(r.lhs), k));
            j["rhs_classical"] = num(classical_from_adelic(Real(r.rhs), k));
        }
        recs.push_back(j);
        o.rows.push_back({"verify", std::to_string(c.level), std::to_string(c.weight), std::to_string(r.h_index),
                          "h", fmt(r.lhs), fmt(r.rhs), fmt(r.abs_err), fmt(r.rel_err), r.pass ? "1" : "0"});
    }
    o.results["level_type"] = level_type_name(rep.type);
    o.results["rhs_kind"] = rep.rhs_kind;
    if (rep.type == LevelType::Type1) o.results["rhs_exact"] = rat(geometric_rhs_type1(c.level, c.weight));
    o.results["records"] = recs;
    if (c.level % 2 && c.level % 3) {
        auto s = sum_over_three(L);
        double lhs = num(s.lhs);
        Real ae = abs(s.lhs - to_real<Real>(s.rhs.value));
        bool ok = s.rhs.value == 0 ? num(ae) < c.tol_abs : num(ae / abs(to_real<Real>(s.rhs.value))) < c.tol;
        o.results["three_form"] = {{"lhs", lhs}, {"rhs", rat(s.rhs.value)}, {"abs_err", num(ae)}, {"pass", ok}};
    }
    o.results["class_number"] = rep.class_number;
    o.results["eigenform_count"] = rep.eigenform_count;
    o.results["pass"] = rep.pass();
    if (!rep.pass()) o.exit_code = 3;
    return o;
}

Output cmd_sum3(const Config& c) {
    need_level(c);
    need_weight(c);
    if (c.level % 2 == 0 || c.level % 3 == 0) throw usage_error("sum3: the closed form needs 2, 3 not dividing the level");
    Output o;
    o.params = {{"level", c.level}, {"weight", c.weight}, {"budget", c.budget}};
    auto L = level_data<Real>(c.level, c.weight, c.budget);
    auto s = sum_over_three(L);
    Real rhs = to_real<Real>(s.rhs.value);
    Real ae = abs(s.lhs - rhs);
    o.results["level_type"] = level_type_name(s.rhs.type);
    o.results["tabulated"] = s.rhs.tabulated;
    o.results["units_scale"] = rat(table_scale(c.weight));
    o.results["lhs"] = num(s.lhs);
    o.results["rhs"] = rat(s.rhs.value);
    o.results["phi_over_2_omega"] = rat(Rat(euler_phi(c.level), 1LL << omega(c.level)));
    o.results["correction"] = rat(s.rhs.correction);
    o.results["abs_err"] = num(ae);
    bool ok = s.rhs.value == 0 ? num(ae) < c.tol_abs : num(ae / abs(rhs)) < c.tol;
    o.results["pass"] = ok;
    if (!ok) o.exit_code = 3;
    return o;
}

Output cmd_lalg(const Config& c) {
    need_level(c);
    need_weight(c);
    Output o;
    o.params = {{"level", c.level}, {"weight", c.weight}, {"budget", c.budget}};
    auto L = level_data<Real>(c.level, c.weight, c.budget);
    const auto& F = L.eig.forms;
    json tr = json::array();
    const size_t n = L.cusp.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a; b < n; ++b)
            for (size_t d = b; d < n; ++d) {
                const auto &f = F[L.cusp[a]], &g = F[L.cusp[b]], &h = F[L.cusp[d]];
                bool eps = epsilon_condition(f, g, h, c.level);
                Real v = l_algebraic(f, g, h, L.ctx);
                json j = {{"f", a}, {"g", b}, {"h", d}, {"epsilon_ok", eps}, {"value", num(v)}};
                auto [q, err] = rational_approx(v, 10000);
                if (err < 1e-8) j["rational"] = rat(q);
                tr.push_back(j);
            }
    o.results["triples"] = tr;
    return o;
}

// ---- rendering

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    } else if (j.is_string()) {
        out.emplace_back(path, j.get<std::string>());
    } else {
        out.emplace_back(path, j.dump());
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char ch : s) r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return r + "\"";
}

std::string render(const std::string& cmd, const Config& c, const Output& o, const json& meta) {
    std::ostringstream os;
    if (c.format == "json") {
        json doc = {{"command", cmd}, {"params", o.params}, {"results", o.results}, {"metadata", meta}};
        os << doc.dump(2) << "\n";
    } else if (c.format == "csv") {
        os << kCsvHeader << "\n";
        std::string lv = o.params.contains("level") ? o.params["level"].dump() : "";
        std::string wt = o.params.contains("weight") ? o.params["weight"].dump() : "";
        if (!o.rows.empty()) {
            for (auto& r : o.rows) {
                for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
                os << "\n";
            }
        } else {
            std::vector<std::pair<std::string, std::string>> kv;
            flatten(o.results, "", kv);
            size_t i = 0;
            for (auto& [k, v] : kv)
                os << cmd << "," << lv << "," << wt << "," << i++ << "," << csv_field(k) << "," << csv_field(v)
                   << ",,,,\n";
        }
    } else {
        std::vector<std::pair<std::string, std::string>> kv;
        os << cmd << "\n";
        flatten(o.params, "", kv);
        for (auto& [k, v] : kv) os << "  " << k << " = " << v << "\n";
        kv.clear();
        flatten(o.results, "", kv);
        for (auto& [k, v] : kv) os << "  " << k << " = " << v << "\n";
        os << "  runtime_ms = " << meta["runtime_ms"].dump() << "\n";
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quaternionic triple-product period sums"};
    app.require_subcommand(1);
    app.fallthrough();
    Config c;

    app.add_option("-N,--level", c.level, "level (square-free, odd number of primes)")->envname("QTRIPLE_LEVEL");
    app.add_option("-w,--weight", c.weight, "weight 2k")->envname("QTRIPLE_WEIGHT");
    app.add_option("-p,--prime", c.prime, "prime")->envname("QTRIPLE_PRIME");
    app.add_option("--precision", c.precision, "working precision in bits")
        ->envname("QTRIPLE_PRECISION")
        ->check(CLI::Range(64u, 4096u));
    app.add_option("--tol", c.tol, "relative tolerance")->envname("QTRIPLE_TOL")->check(CLI::PositiveNumber);
    app.add_option("--tol-abs", c.tol_abs, "absolute tolerance for zero targets")
        ->envname("QTRIPLE_TOL_ABS")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", c.format, "json, csv or pretty")
        ->envname("QTRIPLE_FORMAT")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_flag("--extended", c.extended, "use toric periods for the geometric side")->envname("QTRIPLE_EXTENDED");
    app.add_flag("--classical", c.classical, "also print classically normalized values")->envname("QTRIPLE_CLASSICAL");
    app.add_flag("--timing", c.timing, "record wall-clock runtime (output no longer byte-stable)")
        ->envname("QTRIPLE_TIMING");
    app.add_option("--threads", c.threads, "worker cap")->envname("QTRIPLE_THREADS")->check(CLI::PositiveNumber);
    app.add_option("--budget", c.budget, "split primes used to separate eigenspaces")
        ->envname("QTRIPLE_BUDGET")
        ->check(CLI::Range(1, 40));
    app.add_option("--out", c.out, "write output to this file")->envname("QTRIPLE_OUT");

    long long ha = 0, hb = 0;
    auto* hil = app.add_subcommand("hilbert", "local Hilbert symbols, ramification and discriminant of (a,b)");
    hil->add_option("a", ha)->required();
    hil->add_option("b", hb)->required();
    hil->allow_extras(false);
    app.add_subcommand("constants", "invariant tensor, norms, archimedean orbit constants");
    app.add_subcommand("dims", "newform dimension");
    app.add_subcommand("classset", "right ideal classes of the maximal order");
    app.add_subcommand("brandt", "Brandt matrix (Atkin-Lehner operator when p | N) and its spectrum");
    app.add_subcommand("eigen", "simultaneous Hecke eigenforms");
    app.add_subcommand("verify", "spectral side against the geometric side, per eigenform");
    app.add_subcommand("sum3", "sum over all three forms against its closed form");
    app.add_subcommand("lalg", "algebraic parts of the central triple values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    set_precision_bits(c.precision);
    auto t0 = std::chrono::steady_clock::now();
    Output o;
    try {
        if (cmd == "hilbert") o = cmd_hilbert(c, ha, hb);
        else if (cmd == "constants") o = cmd_constants(c);
        else if (cmd == "dims") o = cmd_dims(c);
        else if (cmd == "classset") o = cmd_classset(c);
        else if (cmd == "brandt") o = cmd_brandt(c);
        else if (cmd == "eigen") o = cmd_eigen(c);
        else if (cmd == "verify") o = cmd_verify(c);
        else if (cmd == "sum3") o = cmd_sum3(c);
        else o = cmd_lalg(c);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 1;
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    // engine work is sequential; the cap is recorded, not exceeded
    json meta = {{"precision", c.precision},
                 {"runtime_ms", c.timing ? ms : 0.0},
                 {"version", kVersion},
                 {"threads", 1},
                 {"threads_cap", c.threads}};
    std::string text = render(cmd, c, o, meta);
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
        if (!f) {
            std::cerr << "cannot open " << c.out << "\n";
            return 1;
        }
        f << text;
    }
    return o.exit_code;
}
