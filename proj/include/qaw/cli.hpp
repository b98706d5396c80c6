#pragma once

/// \file cli.hpp
/// Command-line front end: pointwise evaluation, measure export, and the
/// verification campaigns.
///
/// Exit codes: 0 on success, 2 when a verification report contains at least
/// one false flag, 1 on usage errors (unknown flags, malformed literals,
/// rejected parameter domains).  Output is JSON (default) or CSV, written to
/// stdout or to a --out file.  Repeated runs with identical flags produce
/// byte-identical output: campaign workers run concurrently but the report
/// is assembled in input order, and all randomness is seeded.
///
/// The exact backend parses every scalar flag as an integer or p/q literal
/// and refuses decimals; the float backend does the opposite.  The
/// environment variable QAW_MAX_DIM (default 1024) caps the ambient
/// dimension (n^2)^l of any module build.

#include <CLI11.hpp>
#include <json.hpp>

#include "qaw/askey_wilson.hpp"
#include "qaw/measure.hpp"
#include "qaw/qdiff.hpp"
#include "qaw/qjacobi.hpp"
#include "qaw/spherical.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qaw::cli {

using ordered_json = nlohmann::ordered_json;

/// Anything a better invocation would have avoided; mapped to exit code 1.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class backend_kind { exact, floating };

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

inline backend_kind parse_backend(const std::string& text) {
    if (text == "exact") return backend_kind::exact;
    if (text == "float") return backend_kind::floating;
    throw usage_error("--backend must be 'exact' or 'float', got '" + text + "'");
}

inline rational parse_rational(const std::string& text, const std::string& flag) {
    try {
        return rational::from_string(text);
    } catch (const std::exception&) {
        throw usage_error("--" + flag + ": the exact backend needs an integer or p/q literal, got '" + text + "'");
    }
}

inline double parse_float(const std::string& text, const std::string& flag) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size())
        throw usage_error("--" + flag + ": the float backend needs a decimal literal, got '" + text + "'");
    return v;
}

inline long parse_long(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw usage_error(what + ": expected an integer, got '" + text + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

inline std::vector<long> parse_long_list(const std::string& text, const std::string& flag) {
    std::vector<long> out;
    for (const std::string& p : split(text, ',')) out.push_back(parse_long(p, "--" + flag));
    return out;
}

/// "s,t" pairs separated by ';', e.g. "1,1;2,1;1,2".
inline std::vector<std::pair<rational, rational>> parse_pair_list(const std::string& text, const std::string& flag) {
    std::vector<std::pair<rational, rational>> out;
    for (const std::string& chunk : split(text, ';')) {
        const auto parts = split(chunk, ',');
        if (parts.size() != 2) throw usage_error("--" + flag + ": expected s,t pairs separated by ';', got '" + chunk + "'");
        out.emplace_back(parse_rational(parts[0], flag), parse_rational(parts[1], flag));
    }
    return out;
}

inline std::size_t max_dim_from_env() {
    const char* raw = std::getenv("QAW_MAX_DIM");
    if (raw == nullptr || *raw == '\0') return 1024;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v <= 0)
        throw usage_error(std::string("QAW_MAX_DIM must be a positive integer, got '") + raw + "'");
    return static_cast<std::size_t>(v);
}

inline void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw usage_error("--out: cannot open '" + out_path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw usage_error("--out: writing '" + out_path + "' failed");
}

inline std::string csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
    return os.str();
}

inline void check_format(const std::string& format) {
    if (format != "json" && format != "csv")
        throw usage_error("--format must be 'json' or 'csv', got '" + format + "'");
}

inline std::string bool_text(bool v) { return v ? "true" : "false"; }

}  // namespace detail

// ---------------------------------------------------------------------------
// eval-aw / eval-bigq / eval-littleq
// ---------------------------------------------------------------------------

struct eval_options {
    long n = 0;
    std::string backend;
    std::string q, a, b, c, d, x;
    std::string qalpha, qbeta;
    std::string format = "json";
    std::string out;
};

namespace detail {

template <class T>
struct eval_parser;

template <>
struct eval_parser<rational> {
    static rational get(const std::string& text, const std::string& flag) { return parse_rational(text, flag); }
    static ordered_json json(const rational& v) { return v.str(); }
    static std::string cell(const rational& v) { return v.str(); }
};

template <>
struct eval_parser<double> {
    static double get(const std::string& text, const std::string& flag) { return parse_float(text, flag); }
    static ordered_json json(double v) { return v; }
    static std::string cell(double v) { return fmt_double(v); }
};

template <class T>
int run_eval(const eval_options& o, const std::string& family) {
    using P = eval_parser<T>;
    if (o.n < 0) throw usage_error("--n: degree must be >= 0");
    ordered_json params;
    std::vector<std::string> header{"family", "n"};
    std::vector<std::string> row{family, std::to_string(o.n)};
    T value{};
    const T q = P::get(o.q, "q");
    const T x = P::get(o.x, "x");
    if (family == "aw") {
        const T a = P::get(o.a, "a"), b = P::get(o.b, "b"), c = P::get(o.c, "c"), d = P::get(o.d, "d");
        value = askey_wilson_rn_at(o.n, aw_params<T>{a, b, c, d, q}, x);
        params = ordered_json{{"n", o.n}, {"q", P::json(q)}, {"a", P::json(a)}, {"b", P::json(b)},
                              {"c", P::json(c)}, {"d", P::json(d)}, {"x", P::json(x)}};
        header.insert(header.end(), {"q", "a", "b", "c", "d", "x", "value"});
        row.insert(row.end(), {P::cell(q), P::cell(a), P::cell(b), P::cell(c), P::cell(d), P::cell(x)});
    } else if (family == "bigq") {
        const T qa = P::get(o.qalpha, "qalpha"), qb = P::get(o.qbeta, "qbeta");
        const T c = P::get(o.c, "c"), d = P::get(o.d, "d");
        value = big_qjacobi(o.n, big_qjacobi_params<T>{qa, qb, c, d, q}).eval(x);
        params = ordered_json{{"n", o.n}, {"q", P::json(q)}, {"qalpha", P::json(qa)}, {"qbeta", P::json(qb)},
                              {"c", P::json(c)}, {"d", P::json(d)}, {"x", P::json(x)}};
        header.insert(header.end(), {"q", "qalpha", "qbeta", "c", "d", "x", "value"});
        row.insert(row.end(), {P::cell(q), P::cell(qa), P::cell(qb), P::cell(c), P::cell(d), P::cell(x)});
    } else {
        const T qa = P::get(o.qalpha, "qalpha"), qb = P::get(o.qbeta, "qbeta");
        value = little_qjacobi(o.n, little_qjacobi_params<T>{qa, qb, q}).eval(x);
        params = ordered_json{{"n", o.n}, {"q", P::json(q)}, {"qalpha", P::json(qa)}, {"qbeta", P::json(qb)},
                              {"x", P::json(x)}};
        header.insert(header.end(), {"q", "qalpha", "qbeta", "x", "value"});
        row.insert(row.end(), {P::cell(q), P::cell(qa), P::cell(qb), P::cell(x)});
    }
    row.push_back(P::cell(value));

    if (o.format == "csv") {
        emit(csv_table(header, {row}), o.out);
    } else {
        ordered_json doc;
        doc["command"] = "eval-" + family;
        doc["backend"] = field_traits<T>::exact ? "exact" : "float";
        doc["params"] = params;
        doc["value"] = P::json(value);
        emit(doc.dump(2) + "\n", o.out);
    }
    return 0;
}

}  // namespace detail

inline int run_eval(const eval_options& o, const std::string& family) {
    detail::check_format(o.format);
    if (o.backend.empty()) throw usage_error("eval commands need --backend exact|float");
    if (detail::parse_backend(o.backend) == backend_kind::exact)
        return detail::run_eval<rational>(o, family);
    return detail::run_eval<double>(o, family);
}

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

struct measure_options {
    std::string backend;
    std::string q, a, b, c, d;
    std::string format = "json";
    std::string out;
};

inline int run_measure(const measure_options& o) {
    if (!o.backend.empty() && detail::parse_backend(o.backend) != backend_kind::floating)
        throw usage_error("measure: quadrature runs in the float backend only");
    if (o.format != "json") throw usage_error("measure: the serialized output is JSON only");
    const double q = detail::parse_float(o.q, "q");
    const double a = detail::parse_float(o.a, "a"), b = detail::parse_float(o.b, "b");
    const double c = detail::parse_float(o.c, "c"), d = detail::parse_float(o.d, "d");
    const measure_spec m = build_measure(aw_params<double>{a, b, c, d, q});

    ordered_json doc;
    doc["params"] = ordered_json{{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"q", q}};
    doc["atoms"] = ordered_json::array();
    for (const measure_atom& at : m.atoms)
        doc["atoms"].push_back(ordered_json{{"point", at.point}, {"mass", at.mass}});
    doc["norm"] = m.norm;
    detail::emit(doc.dump(2) + "\n", o.out);
    return 0;
}

// ---------------------------------------------------------------------------
// check-qdiff
// ---------------------------------------------------------------------------

struct qdiff_options {
    std::string backend;
    std::string q, a, b, c, d;  // all five given: single explicit parameter set
    long nmax = 6;
    long trials = 20;
    unsigned long long seed = 12345;
    std::string format = "json";
    std::string out;
};

inline int run_check_qdiff(const qdiff_options& o) {
    detail::check_format(o.format);
    if (!o.backend.empty() && detail::parse_backend(o.backend) != backend_kind::exact)
        throw usage_error("check-qdiff: the residual test is exact-backend only");
    if (o.nmax < 0) throw usage_error("--nmax: must be >= 0");

    struct param_set {
        rational q, a, b, c, d;
    };
    std::vector<param_set> sets;
    const bool explicit_set = !o.q.empty() || !o.a.empty() || !o.b.empty() || !o.c.empty() || !o.d.empty();
    if (explicit_set) {
        if (o.q.empty() || o.a.empty() || o.b.empty() || o.c.empty() || o.d.empty())
            throw usage_error("check-qdiff: give all of --q --a --b --c --d or none (random campaign)");
        sets.push_back({detail::parse_rational(o.q, "q"), detail::parse_rational(o.a, "a"),
                        detail::parse_rational(o.b, "b"), detail::parse_rational(o.c, "c"),
                        detail::parse_rational(o.d, "d")});
    } else {
        if (o.trials <= 0) throw usage_error("--trials: must be >= 1");
        std::mt19937_64 rng(o.seed);
        std::uniform_int_distribution<long> den_q(2, 9), num_abcd(-9, 9), den_abcd(1, 6);
        auto draw = [&]() -> param_set {
            const long dq = den_q(rng);
            std::uniform_int_distribution<long> num_q(1, dq - 1);
            auto nz = [&] {
                long v = 0;
                while (v == 0) v = num_abcd(rng);
                return v;
            };
            return {rational(num_q(rng), dq), rational(nz(), den_abcd(rng)), rational(nz(), den_abcd(rng)),
                    rational(nz(), den_abcd(rng)), rational(nz(), den_abcd(rng))};
        };
        while (static_cast<long>(sets.size()) < o.trials) {
            const param_set ps = draw();
            try {
                // a parameter-product collision with q^{-k} makes the family
                // undefined at some degree; discard and redraw
                for (long n = 0; n <= o.nmax; ++n) (void)askey_wilson_rn(n, aw_params<rational>{ps.a, ps.b, ps.c, ps.d, ps.q});
            } catch (const std::domain_error&) {
                continue;
            }
            sets.push_back(ps);
        }
    }

    struct case_result {
        param_set ps;
        long n = 0;
        bool residual_zero = false;
    };
    std::vector<std::future<std::vector<case_result>>> futures;
    for (const param_set& ps : sets)
        futures.push_back(std::async(std::launch::async, [ps, nmax = o.nmax] {
            std::vector<case_result> out;
            const aw_params<rational> p{ps.a, ps.b, ps.c, ps.d, ps.q};
            for (long n = 0; n <= nmax; ++n) {
                const laurent_poly<rational> rn = askey_wilson_rn(n, p);
                const laurent_poly<rational> image = apply_aw_operator(rn, p);
                const rational lam = (rational(1) - pow_int(ps.q, -n)) *
                                     (rational(1) - pow_int(ps.q, n - 1) * ps.a * ps.b * ps.c * ps.d);
                out.push_back({ps, n, (image + rn.scaled(lam)).is_zero()});
            }
            return out;
        }));

    bool all_pass = true;
    ordered_json cases = ordered_json::array();
    std::vector<std::vector<std::string>> rows;
    for (auto& f : futures)
        for (const case_result& r : f.get()) {
            all_pass = all_pass && r.residual_zero;
            cases.push_back(ordered_json{{"n", r.n}, {"q", r.ps.q.str()}, {"a", r.ps.a.str()}, {"b", r.ps.b.str()},
                                         {"c", r.ps.c.str()}, {"d", r.ps.d.str()}, {"residual_zero", r.residual_zero}});
            rows.push_back({"qdiff", std::to_string(r.n), r.ps.q.str(), r.ps.a.str(), r.ps.b.str(), r.ps.c.str(),
                            r.ps.d.str(), detail::bool_text(r.residual_zero)});
        }

    if (o.format == "csv") {
        detail::emit(detail::csv_table({"family", "n", "q", "a", "b", "c", "d", "residual_zero"}, rows), o.out);
    } else {
        ordered_json doc;
        doc["command"] = "check-qdiff";
        doc["cases"] = std::move(cases);
        doc["all_pass"] = all_pass;
        detail::emit(doc.dump(2) + "\n", o.out);
    }
    return all_pass ? 0 : 2;
}

// ---------------------------------------------------------------------------
// check-orth
// ---------------------------------------------------------------------------

struct orth_options {
    std::string backend;
    std::string q = "0.5", a = "1.2", b = "0.1", c = "0.1", d = "0.1";
    long degmax = 4;
    double tol = 1e-8;
    std::string format = "json";
    std::string out;
};

inline int run_check_orth(const orth_options& o) {
    detail::check_format(o.format);
    if (!o.backend.empty() && detail::parse_backend(o.backend) != backend_kind::floating)
        throw usage_error("check-orth: quadrature runs in the float backend only");
    if (o.degmax < 1) throw usage_error("--degmax: must be >= 1");
    if (!(o.tol > 0.0)) throw usage_error("--tol: must be positive");
    const double q = detail::parse_float(o.q, "q");
    const aw_params<double> p{detail::parse_float(o.a, "a"), detail::parse_float(o.b, "b"),
                              detail::parse_float(o.c, "c"), detail::parse_float(o.d, "d"), q};
    const measure_spec m = build_measure(p);

    std::vector<x_poly<double>> ps;
    for (long k = 0; k <= o.degmax; ++k) ps.push_back(askey_wilson_pn(k, p));
    std::vector<double> diag(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) diag[i] = inner_product(ps[i], ps[i], m);
    double max_offdiag = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const double g = std::abs(inner_product(ps[i], ps[j], m)) / std::sqrt(diag[i] * diag[j]);
            if (g > max_offdiag) max_offdiag = g;
        }
    const x_poly<double> one = x_poly<double>::constant(1.0);
    const double norm_rel_err = std::abs(inner_product(one, one, m) - m.norm) / std::abs(m.norm);
    const bool pass = max_offdiag < o.tol && norm_rel_err < o.tol;

    if (o.format == "csv") {
        detail::emit(detail::csv_table(
                         {"family", "degmax", "q", "a", "b", "c", "d", "max_offdiag", "norm_rel_err", "pass"},
                         {{"orth", std::to_string(o.degmax), detail::fmt_double(q), detail::fmt_double(p.a),
                           detail::fmt_double(p.b), detail::fmt_double(p.c), detail::fmt_double(p.d),
                           detail::fmt_double(max_offdiag), detail::fmt_double(norm_rel_err),
                           detail::bool_text(pass)}}),
                     o.out);
    } else {
        ordered_json doc;
        doc["command"] = "check-orth";
        doc["params"] = ordered_json{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}, {"q", q}};
        doc["degmax"] = o.degmax;
        doc["tol"] = o.tol;
        doc["max_offdiag"] = max_offdiag;
        doc["norm_rel_err"] = norm_rel_err;
        doc["pass"] = pass;
        detail::emit(doc.dump(2) + "\n", o.out);
    }
    return pass ? 0 : 2;
}

// ---------------------------------------------------------------------------
// check-limit
// ---------------------------------------------------------------------------

struct limit_options {
    std::string backend;
    std::string family = "both";  // big | little | both
    long nmax = 3;
    double q = 0.5, alpha = 0.3, beta = 0.7, c = 1.2, d = 0.8;
    int sign = 1;
    double tol = 1e-5;
    double ratio = 0.5;
    std::string format = "json";
    std::string out;
};

namespace detail {

inline double sup_distance_9(const x_poly<double>& f, const x_poly<double>& g, double lo, double hi) {
    double worst = 0.0;
    for (int i = 0; i < 9; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / 8.0;
        const double diff = std::abs(f.eval(x) - g.eval(x));
        if (diff > worst) worst = diff;
    }
    return worst;
}

}  // namespace detail

inline int run_check_limit(const limit_options& o) {
    detail::check_format(o.format);
    if (!o.backend.empty() && detail::parse_backend(o.backend) != backend_kind::floating)
        throw usage_error("check-limit: the degeneration ladder runs in the float backend only");
    if (o.family != "big" && o.family != "little" && o.family != "both")
        throw usage_error("--family must be 'big', 'little' or 'both'");
    if (o.nmax < 1) throw usage_error("--nmax: must be >= 1");
    if (!(o.tol > 0.0) || !(o.ratio > 0.0)) throw usage_error("--tol and --ratio must be positive");
    const std::vector<double> ladder{1e-2, 1e-3, 1e-4};

    bool all_pass = true;
    ordered_json cases = ordered_json::array();
    std::vector<std::vector<std::string>> rows;
    auto run_family = [&](const std::string& family) {
        for (long n = 1; n <= o.nmax; ++n) {
            x_poly<double> target;
            double lo = 0.0, hi = 1.0;
            if (family == "big") {
                target = big_qjacobi(n, big_qjacobi_params<double>{std::pow(o.q, o.alpha), std::pow(o.q, o.beta),
                                                                   o.c, o.d, o.q});
                lo = -o.d;
                hi = o.c;
            } else {
                // the degeneration target carries swapped exponents and an
                // n-dependent prefactor
                const double pref = qpochhammer(std::pow(o.q, o.beta + 1.0), o.q, n) /
                                    qpochhammer(std::pow(o.q, -static_cast<double>(n) - o.alpha), o.q, n);
                target = little_qjacobi(n, little_qjacobi_params<double>{std::pow(o.q, o.beta),
                                                                         std::pow(o.q, o.alpha), o.q})
                             .scaled(pref);
            }
            std::vector<double> dists;
            for (double a : ladder) {
                const x_poly<double> approx =
                    family == "big" ? limit_big_scaled(n, o.q, o.alpha, o.beta, o.c, o.d, a)
                                    : limit_little_scaled(n, o.q, o.alpha, o.beta, a, o.sign);
                dists.push_back(detail::sup_distance_9(approx, target, lo, hi));
            }
            std::vector<double> ratios;
            for (std::size_t i = 1; i < dists.size(); ++i) ratios.push_back(dists[i] / dists[i - 1]);
            bool pass = dists.back() < o.tol;
            for (double r : ratios) pass = pass && r < o.ratio;
            all_pass = all_pass && pass;

            cases.push_back(ordered_json{{"family", family},
                                         {"n", n},
                                         {"a", ladder},
                                         {"sup_dist", dists},
                                         {"ratios", ratios},
                                         {"pass", pass}});
            for (std::size_t i = 0; i < ladder.size(); ++i)
                rows.push_back({family, std::to_string(n), detail::fmt_double(ladder[i]),
                                detail::fmt_double(dists[i]),
                                i == 0 ? std::string() : detail::fmt_double(ratios[i - 1]),
                                detail::bool_text(pass)});
        }
    };
    if (o.family == "big" || o.family == "both") run_family("big");
    if (o.family == "little" || o.family == "both") run_family("little");

    if (o.format == "csv") {
        detail::emit(detail::csv_table({"family", "n", "a", "sup_dist", "ratio", "pass"}, rows), o.out);
    } else {
        ordered_json doc;
        doc["command"] = "check-limit";
        doc["params"] = ordered_json{{"q", o.q}, {"alpha", o.alpha}, {"beta", o.beta},
                                     {"c", o.c},  {"d", o.d},        {"sign", o.sign}};
        doc["cases"] = std::move(cases);
        doc["all_pass"] = all_pass;
        detail::emit(doc.dump(2) + "\n", o.out);
    }
    return all_pass ? 0 : 2;
}

// ---------------------------------------------------------------------------
// check-spherical
// ---------------------------------------------------------------------------

struct spherical_options {
    std::string backend;
    std::string q = "1/2";
    int n = 2;
    std::string l = "1";
    std::string s = "1", t = "1", s2 = "1", t2 = "1";
    std::string lefts, rights;  // "s,t;s,t;..." grids overriding the singles
    std::string format = "json";
    std::string out;
};

inline int run_check_spherical(const spherical_options& o) {
    detail::check_format(o.format);
    if (!o.backend.empty() && detail::parse_backend(o.backend) != backend_kind::exact)
        throw usage_error("check-spherical: the restriction pipeline is exact-backend only");
    const std::size_t max_dim = detail::max_dim_from_env();
    const rational q = detail::parse_rational(o.q, "q");
    const q_context<rational> ctx(q);
    const std::vector<long> ls = detail::parse_long_list(o.l, "l");
    const auto lefts = o.lefts.empty()
                           ? std::vector<std::pair<rational, rational>>{
                                 {detail::parse_rational(o.s, "s"), detail::parse_rational(o.t, "t")}}
                           : detail::parse_pair_list(o.lefts, "lefts");
    const auto rights = o.rights.empty()
                            ? std::vector<std::pair<rational, rational>>{
                                  {detail::parse_rational(o.s2, "s2"), detail::parse_rational(o.t2, "t2")}}
                            : detail::parse_pair_list(o.rights, "rights");

    struct case_input {
        long l;
        rational s, t, s2, t2;
    };
    std::vector<case_input> inputs;
    for (long l : ls)
        for (const auto& [s, t] : lefts)
            for (const auto& [s2, t2] : rights) inputs.push_back({l, s, t, s2, t2});

    struct case_result {
        bool residual_zero = false, collapsed = false, matched = false;
        std::string error;
    };
    std::vector<std::future<case_result>> futures;
    for (const case_input& in : inputs)
        futures.push_back(std::async(std::launch::async, [in, n = o.n, q, max_dim] {
            const q_context<rational> local(q);
            case_result res;
            const coideal_spec<rational> left{in.s, in.t, n};
            const coideal_spec<rational> right{in.s2, in.t2, n};
            laurent_poly<rational> r;
            try {
                r = spherical_restriction(n, in.l, left, right, local, max_dim);
            } catch (const std::runtime_error& e) {
                // structural failure inside the pipeline is a verification
                // failure, not a usage error
                res.error = e.what();
                return res;
            }
            res.collapsed = true;
            sigma_tau_params<rational> st;
            st.n = n;
            st.q = q;
            st.qsigma = in.t / in.s;
            st.qtau = in.t2 / in.s2;
            x_poly<rational> ref = askey_wilson_pn(in.l, parameter_map(st));
            ref = ref.scaled(rational(1) / ref.leading());
            res.matched = (to_x_basis(r) == ref);
            res.residual_zero = (apply_radial_operator(r, st) == r.scaled(chi_l(in.l, n, local)));
            return res;
        }));

    bool all_pass = true;
    ordered_json cases = ordered_json::array();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        const case_result r = futures[i].get();
        const case_input& in = inputs[i];
        all_pass = all_pass && r.residual_zero && r.collapsed && r.matched;
        ordered_json entry{{"n", o.n},           {"l", in.l},
                           {"s", in.s.str()},    {"t", in.t.str()},
                           {"s2", in.s2.str()},  {"t2", in.t2.str()},
                           {"residual_zero", r.residual_zero},
                           {"collapsed", r.collapsed},
                           {"matched_AW", r.matched}};
        if (!r.error.empty()) entry["error"] = r.error;
        cases.push_back(std::move(entry));
        rows.push_back({"spherical", std::to_string(o.n), std::to_string(in.l), in.s.str(), in.t.str(),
                        in.s2.str(), in.t2.str(), detail::bool_text(r.residual_zero),
                        detail::bool_text(r.collapsed), detail::bool_text(r.matched)});
    }

    if (o.format == "csv") {
        detail::emit(detail::csv_table({"family", "n", "l", "s", "t", "s2", "t2", "residual_zero", "collapsed",
                                        "matched_AW"},
                                       rows),
                     o.out);
    } else {
        ordered_json doc;
        doc["command"] = "check-spherical";
        doc["q"] = q.str();
        doc["cases"] = std::move(cases);
        doc["all_pass"] = all_pass;
        detail::emit(doc.dump(2) + "\n", o.out);
    }
    return all_pass ? 0 : 2;
}

// ---------------------------------------------------------------------------
// check-qhc
// ---------------------------------------------------------------------------

struct qhc_options {
    std::string backend;
    std::string q = "1/2";
    int n = 2;
    long l = 1;
    std::string s = "1", t = "1", s2 = "1", t2 = "1";
    std::string h;  // comma-separated integers, one per torus coordinate
    std::string format = "json";
    std::string out;
};

inline int run_check_qhc(const qhc_options& o) {
    detail::check_format(o.format);
    if (!o.backend.empty() && detail::parse_backend(o.backend) != backend_kind::exact)
        throw usage_error("check-qhc: the residual is exact-backend only");
    if (o.h.empty()) throw usage_error("check-qhc: --h is required (comma-separated integers)");
    const std::size_t max_dim = detail::max_dim_from_env();
    const rational q = detail::parse_rational(o.q, "q");
    const q_context<rational> ctx(q);
    const std::vector<long> h = detail::parse_long_list(o.h, "h");
    const coideal_spec<rational> left{detail::parse_rational(o.s, "s"), detail::parse_rational(o.t, "t"), o.n};
    const coideal_spec<rational> right{detail::parse_rational(o.s2, "s2"), detail::parse_rational(o.t2, "t2"), o.n};

    const rational residual = verify_qhC(o.n, o.l, left, right, h, ctx, max_dim);
    const bool ok = residual.is_zero();

    std::string h_text;
    for (std::size_t i = 0; i < h.size(); ++i) h_text += (i ? ":" : "") + std::to_string(h[i]);
    if (o.format == "csv") {
        detail::emit(detail::csv_table({"family", "n", "l", "s", "t", "s2", "t2", "h", "residual_zero"},
                                       {{"qhc", std::to_string(o.n), std::to_string(o.l), left.s.str(),
                                         left.t.str(), right.s.str(), right.t.str(), h_text,
                                         detail::bool_text(ok)}}),
                     o.out);
    } else {
        ordered_json doc;
        doc["command"] = "check-qhc";
        doc["case"] = ordered_json{{"n", o.n},          {"l", o.l},
                                   {"s", left.s.str()}, {"t", left.t.str()},
                                   {"s2", right.s.str()}, {"t2", right.t.str()},
                                   {"h", h},            {"residual", residual.str()}};
        doc["residual_zero"] = ok;
        detail::emit(doc.dump(2) + "\n", o.out);
    }
    return ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// top-level dispatch
// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv) {
    CLI::App app{"q-orthogonal polynomials, their measures, and the module-level cross checks"};
    app.require_subcommand(1);

    eval_options eo;
    auto add_eval_common = [&](CLI::App* sub) {
        sub->add_option("--n", eo.n, "polynomial degree");
        sub->add_option("--backend", eo.backend, "exact|float (required)");
        sub->add_option("--q", eo.q, "base q")->required();
        sub->add_option("--x", eo.x, "evaluation point")->required();
        sub->add_option("--format", eo.format, "json|csv");
        sub->add_option("--out", eo.out, "write the report here instead of stdout");
    };
    CLI::App* eval_aw = app.add_subcommand("eval-aw", "evaluate the four-parameter family at a point");
    add_eval_common(eval_aw);
    eval_aw->add_option("--a", eo.a)->required();
    eval_aw->add_option("--b", eo.b)->required();
    eval_aw->add_option("--c", eo.c)->required();
    eval_aw->add_option("--d", eo.d)->required();
    CLI::App* eval_bigq = app.add_subcommand("eval-bigq", "evaluate the big q-Jacobi family at a point");
    add_eval_common(eval_bigq);
    eval_bigq->add_option("--qalpha", eo.qalpha, "value of q^alpha")->required();
    eval_bigq->add_option("--qbeta", eo.qbeta, "value of q^beta")->required();
    eval_bigq->add_option("--c", eo.c)->required();
    eval_bigq->add_option("--d", eo.d)->required();
    CLI::App* eval_littleq = app.add_subcommand("eval-littleq", "evaluate the little q-Jacobi family at a point");
    add_eval_common(eval_littleq);
    eval_littleq->add_option("--qalpha", eo.qalpha, "value of q^alpha")->required();
    eval_littleq->add_option("--qbeta", eo.qbeta, "value of q^beta")->required();

    measure_options mo;
    CLI::App* measure = app.add_subcommand("measure", "export the orthogonality measure as JSON");
    measure->add_option("--backend", mo.backend, "float (the only supported backend)");
    measure->add_option("--q", mo.q)->required();
    measure->add_option("--a", mo.a)->required();
    measure->add_option("--b", mo.b)->required();
    measure->add_option("--c", mo.c)->required();
    measure->add_option("--d", mo.d)->required();
    measure->add_option("--format", mo.format, "json");
    measure->add_option("--out", mo.out);

    qdiff_options qo;
    CLI::App* qdiff = app.add_subcommand("check-qdiff", "second-order difference equation residuals, exact");
    qdiff->add_option("--backend", qo.backend, "exact (the only supported backend)");
    qdiff->add_option("--q", qo.q);
    qdiff->add_option("--a", qo.a);
    qdiff->add_option("--b", qo.b);
    qdiff->add_option("--c", qo.c);
    qdiff->add_option("--d", qo.d);
    qdiff->add_option("--nmax", qo.nmax, "degrees 0..nmax");
    qdiff->add_option("--trials", qo.trials, "random parameter sets when none are given");
    qdiff->add_option("--seed", qo.seed, "campaign seed");
    qdiff->add_option("--format", qo.format, "json|csv");
    qdiff->add_option("--out", qo.out);

    orth_options oo;
    CLI::App* orth = app.add_subcommand("check-orth", "Gram matrix of p_0..p_degmax under the measure");
    orth->add_option("--backend", oo.backend, "float (the only supported backend)");
    orth->add_option("--q", oo.q);
    orth->add_option("--a", oo.a);
    orth->add_option("--b", oo.b);
    orth->add_option("--c", oo.c);
    orth->add_option("--d", oo.d);
    orth->add_option("--degmax", oo.degmax);
    orth->add_option("--tol", oo.tol, "off-diagonal and norm tolerance");
    orth->add_option("--format", oo.format, "json|csv");
    orth->add_option("--out", oo.out);

    limit_options lo;
    CLI::App* limit = app.add_subcommand("check-limit", "degeneration ladder toward the q-Jacobi families");
    limit->add_option("--backend", lo.backend, "float (the only supported backend)");
    limit->add_option("--family", lo.family, "big|little|both");
    limit->add_option("--nmax", lo.nmax, "degrees 1..nmax");
    limit->add_option("--q", lo.q);
    limit->add_option("--alpha", lo.alpha);
    limit->add_option("--beta", lo.beta);
    limit->add_option("--c", lo.c);
    limit->add_option("--d", lo.d);
    limit->add_option("--sign", lo.sign, "+1 or -1 for the little-family substitution");
    limit->add_option("--tol", lo.tol, "final sup-distance bound");
    limit->add_option("--ratio", lo.ratio, "per-decade decay bound");
    limit->add_option("--format", lo.format, "json|csv");
    limit->add_option("--out", lo.out);

    spherical_options so;
    CLI::App* spherical = app.add_subcommand("check-spherical",
                                             "restricted matrix coefficients against the four-parameter family");
    spherical->add_option("--backend", so.backend, "exact (the only supported backend)");
    spherical->add_option("--q", so.q);
    spherical->add_option("--n", so.n, "rank");
    spherical->add_option("--l", so.l, "degree list, e.g. 1,2,3");
    spherical->add_option("--s", so.s);
    spherical->add_option("--t", so.t);
    spherical->add_option("--s2", so.s2);
    spherical->add_option("--t2", so.t2);
    spherical->add_option("--lefts", so.lefts, "grid of left s,t pairs, e.g. '1,1;2,1'");
    spherical->add_option("--rights", so.rights, "grid of right s,t pairs");
    spherical->add_option("--format", so.format, "json|csv");
    spherical->add_option("--out", so.out);

    qhc_options ho;
    CLI::App* qhc = app.add_subcommand("check-qhc", "radial identity residual against a torus character");
    // --h would collide with the default -h help short name
    qhc->set_help_flag("--help", "print this help message and exit");
    qhc->add_option("--backend", ho.backend, "exact (the only supported backend)");
    qhc->add_option("--q", ho.q);
    qhc->add_option("--n", ho.n, "rank");
    qhc->add_option("--l", ho.l, "degree");
    qhc->add_option("--s", ho.s);
    qhc->add_option("--t", ho.t);
    qhc->add_option("--s2", ho.s2);
    qhc->add_option("--t2", ho.t2);
    qhc->add_option("--h", ho.h, "torus exponents, e.g. 3,0");
    qhc->add_option("--format", ho.format, "json|csv");
    qhc->add_option("--out", ho.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends; prints and exits 0
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (eval_aw->parsed()) return run_eval(eo, "aw");
        if (eval_bigq->parsed()) return run_eval(eo, "bigq");
        if (eval_littleq->parsed()) return run_eval(eo, "littleq");
        if (measure->parsed()) return run_measure(mo);
        if (qdiff->parsed()) return run_check_qdiff(qo);
        if (orth->parsed()) return run_check_orth(oo);
        if (limit->parsed()) return run_check_limit(lo);
        if (spherical->parsed()) return run_check_spherical(so);
        if (qhc->parsed()) return run_check_qhc(ho);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace qaw::cli
