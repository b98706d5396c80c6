#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "qaw/qjacobi.hpp"
#include "qaw/qseries.hpp"

using qaw::big_qjacobi;
using qaw::big_qjacobi_params;
using qaw::little_qjacobi;
using qaw::little_qjacobi_params;
using qaw::pow_int;
using qaw::rational;
using qaw::x_poly;

namespace {

rational naive_qpoch(const rational& a, const rational& q, long n) {
    rational acc(1);
    for (long k = 0; k < n; ++k) acc = acc * (rational(1) - a * pow_int(q, k));
    return acc;
}

// Definition-level series sum at a point, every factor rebuilt per term.
rational naive_big_at(long n, const big_qjacobi_params<rational>& p, const rational& x) {
    const rational b1 = p.q * p.qalpha;
    const rational b2 = -(b1 * p.d / p.c);
    const rational top = pow_int(p.q, n + 1) * p.qalpha * p.qbeta;
    rational sum(0);
    for (long k = 0; k <= n; ++k) {
        sum += naive_qpoch(pow_int(p.q, -n), p.q, k) * naive_qpoch(top, p.q, k) *
               naive_qpoch(b1 * x / p.c, p.q, k) * pow_int(p.q, k) /
               (naive_qpoch(b1, p.q, k) * naive_qpoch(b2, p.q, k) * naive_qpoch(p.q, p.q, k));
    }
    return sum;
}

rational naive_little_at(long n, const little_qjacobi_params<rational>& p, const rational& x) {
    const rational b1 = p.q * p.qalpha;
    const rational top = pow_int(p.q, n + 1) * p.qalpha * p.qbeta;
    rational sum(0);
    for (long k = 0; k <= n; ++k) {
        sum += naive_qpoch(pow_int(p.q, -n), p.q, k) * naive_qpoch(top, p.q, k) *
               pow_int(p.q * x, k) /
               (naive_qpoch(b1, p.q, k) * naive_qpoch(p.q, p.q, k));
    }
    return sum;
}

}  // namespace

TEST_CASE("big q-Jacobi: degree 0 and the closed two-term degree-1 form") {
    big_qjacobi_params<rational> p{rational(1, 3), rational(2, 5), rational(3, 2), rational(1, 2), rational(1, 2)};
    CHECK(big_qjacobi(0, p) == x_poly<rational>::constant(rational(1)));

    const rational b1 = p.q * p.qalpha;
    rational c1 = (rational(1) - pow_int(p.q, -1)) * (rational(1) - p.q * p.q * p.qalpha * p.qbeta) * p.q /
                  ((rational(1) - b1) * (rational(1) + b1 * p.d / p.c) * (rational(1) - p.q));
    x_poly<rational> expect = x_poly<rational>::constant(rational(1) + c1);
    expect.set_coeff(1, -c1 * b1 / p.c);
    CHECK(big_qjacobi(1, p) == expect);
}

TEST_CASE("big q-Jacobi agrees with the raw series at random points") {
    std::mt19937_64 rng(91u);
    std::uniform_int_distribution<long> num(1, 8);
    std::uniform_int_distribution<long> xnum(-6, 6);
    for (int iter = 0; iter < 20; ++iter) {
        big_qjacobi_params<rational> p{rational(num(rng), 9), rational(num(rng), 9),
                                       rational(num(rng), 3), rational(num(rng), 3),
                                       rational(1, 1 + num(rng))};
        long n = static_cast<long>(rng() % 5);
        rational x(xnum(rng), num(rng));
        CHECK(big_qjacobi(n, p).eval(x) == naive_big_at(n, p, x));
    }
}

TEST_CASE("big q-Jacobi input validation") {
    big_qjacobi_params<rational> p{rational(1, 3), rational(2, 5), rational(3, 2), rational(1, 2), rational(1, 2)};
    CHECK_THROWS_AS(big_qjacobi(-1, p), std::invalid_argument);

    auto bad_c = p;
    bad_c.c = rational(-1);
    CHECK_THROWS_AS(big_qjacobi(1, bad_c), std::domain_error);

    // qalpha = q^{-3} puts q^{alpha+1} = q^{-2} in the collision set for n >= 3
    auto coll = p;
    coll.qalpha = rational(8);
    CHECK_NOTHROW(big_qjacobi(2, coll));
    CHECK_THROWS_AS(big_qjacobi(3, coll), std::domain_error);
}

TEST_CASE("little q-Jacobi: normalization at 0, degree-1 form, series agreement") {
    little_qjacobi_params<rational> p{rational(2, 7), rational(3, 5), rational(1, 2)};
    for (long n = 0; n <= 6; ++n) CHECK(little_qjacobi(n, p).eval(rational(0)) == rational(1));

    const rational b1 = p.q * p.qalpha;
    rational slope = -(rational(1) - p.q * p.q * p.qalpha * p.qbeta) / (rational(1) - b1);
    x_poly<rational> expect = x_poly<rational>::constant(rational(1));
    expect.set_coeff(1, slope);
    CHECK(little_qjacobi(1, p) == expect);

    std::mt19937_64 rng(17u);
    std::uniform_int_distribution<long> num(1, 8);
    std::uniform_int_distribution<long> xnum(-6, 6);
    for (int iter = 0; iter < 20; ++iter) {
        little_qjacobi_params<rational> lp{rational(num(rng), 9), rational(num(rng), 9),
                                           rational(1, 1 + num(rng))};
        long n = static_cast<long>(rng() % 6);
        rational x(xnum(rng), num(rng));
        CHECK(little_qjacobi(n, lp).eval(x) == naive_little_at(n, lp, x));
        CHECK(little_qjacobi(n, lp).degree() == n);
    }
}

TEST_CASE("node interpolation recovers exact polynomials") {
    // cubic through its own samples
    x_poly<double> cubic(std::vector<double>{1.0, -2.5, 0.0, 4.0});
    auto xs = qaw::detail::chebyshev_nodes(4, -1.0, 2.0);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = cubic.eval(xs[i]);
    x_poly<double> rec = qaw::detail::interpolate_poly(xs, ys);
    REQUIRE(rec.degree() == 3);
    for (long k = 0; k <= 3; ++k) CHECK(rec.coeff(k) == Catch::Approx(cubic.coeff(k)).margin(1e-12));

    for (double x : xs) {
        CHECK(x >= -1.0);
        CHECK(x <= 2.0);
    }
}

namespace {

double sup_distance(const x_poly<double>& f, const x_poly<double>& g, double lo, double hi) {
    double worst = 0.0;
    for (int i = 0; i < 9; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / 8.0;
        double diff = std::abs(f.eval(x) - g.eval(x));
        if (diff > worst) worst = diff;
    }
    return worst;
}

}  // namespace

TEST_CASE("scaled evaluators converge to big q-Jacobi as a -> 0") {
    const double q = 0.5, alpha = 0.3, beta = 0.7, c = 1.2, d = 0.8;
    big_qjacobi_params<double> target_p{std::pow(q, alpha), std::pow(q, beta), c, d, q};
    for (long n = 1; n <= 3; ++n) {
        x_poly<double> target = big_qjacobi(n, target_p);
        double d2 = sup_distance(qaw::limit_big_scaled(n, q, alpha, beta, c, d, 1e-2), target, -d, c);
        double d3 = sup_distance(qaw::limit_big_scaled(n, q, alpha, beta, c, d, 1e-3), target, -d, c);
        CHECK(d3 / d2 < 0.5);
        CHECK(sup_distance(qaw::limit_big_scaled(n, q, alpha, beta, c, d, 1e-4), target, -d, c) < 1e-5);
    }
}

TEST_CASE("scaled evaluators converge to little q-Jacobi for both sign choices") {
    const double q = 0.5, alpha = 0.4, beta = 0.6;
    for (long n = 1; n <= 3; ++n) {
        // limit target carries swapped exponents and an n-dependent prefactor
        little_qjacobi_params<double> lp{std::pow(q, beta), std::pow(q, alpha), q};
        double pref = qaw::qpochhammer(std::pow(q, beta + 1.0), q, n) /
                      qaw::qpochhammer(std::pow(q, -static_cast<double>(n) - alpha), q, n);
        x_poly<double> target = little_qjacobi(n, lp).scaled(pref);
        for (int sign : {1, -1}) {
            double d2 = sup_distance(qaw::limit_little_scaled(n, q, alpha, beta, 1e-2, sign), target, 0.0, 1.0);
            double d3 = sup_distance(qaw::limit_little_scaled(n, q, alpha, beta, 1e-3, sign), target, 0.0, 1.0);
            CHECK(d3 / d2 < 0.5);
            CHECK(sup_distance(qaw::limit_little_scaled(n, q, alpha, beta, 1e-4, sign), target, 0.0, 1.0) < 1e-5);
        }
    }
}
