#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "qaw/laurent.hpp"
#include "qaw/multilaurent.hpp"

using qaw::collapse_multilaurent;
using qaw::divide_exact;
using qaw::from_x_basis;
using qaw::laurent_poly;
using qaw::multi_laurent;
using qaw::q_context;
using qaw::rational;
using qaw::to_x_basis;
using qaw::x_poly;

using LP = laurent_poly<rational>;
using XP = x_poly<rational>;

namespace {

LP zpow(long e, rational c = rational(1)) { return LP::monomial(e, c); }

LP random_symmetric(std::mt19937_64& rng, long maxdeg) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    LP p;
    long d = static_cast<long>(rng() % static_cast<unsigned long>(maxdeg + 1));
    for (long j = 0; j <= d; ++j) {
        rational c(num(rng), den(rng));
        p.add_coeff(j, c);
        if (j > 0) p.add_coeff(-j, c);
    }
    return p;
}

}  // namespace

TEST_CASE("laurent ring operations") {
    LP zz = zpow(1) + zpow(-1);
    CHECK(zz + LP::zero() == zz);
    CHECK(zpow(1) * zpow(-1) == LP::one());
    CHECK(zz * zz == zpow(2) + zpow(0, rational(2)) + zpow(-2));
    CHECK((zz - zz).is_zero());
    CHECK(zz.scaled(rational(0)).is_zero());
}

TEST_CASE("no zero coefficients are stored") {
    LP p;
    p.add_coeff(3, rational(1, 2));
    p.add_coeff(3, rational(-1, 2));
    CHECK(p.is_zero());
    p.set_coeff(5, rational(0));
    CHECK(p.coeffs().empty());
}

TEST_CASE("q-shift of exponents") {
    q_context<rational> ctx(rational(1, 2));
    CHECK(LP::one().q_shift(ctx, 1) == LP::one());
    CHECK(zpow(1).q_shift(ctx, 1) == zpow(1, rational(1, 2)));
    CHECK(zpow(2).q_shift(ctx, -1) == zpow(2, rational(4)));

    std::mt19937_64 rng(5u);
    for (int iter = 0; iter < 20; ++iter) {
        LP p = random_symmetric(rng, 6) + zpow(-3, rational(7, 3));
        CHECK(p.q_shift(ctx, 2).q_shift(ctx, -2) == p);
    }
}

TEST_CASE("inversion and symmetry") {
    CHECK(zpow(1).invert_z() == zpow(-1));
    CHECK(zpow(2, rational(3)).invert_z() == zpow(-2, rational(3)));
    LP zz = zpow(1) + zpow(-1);
    CHECK(zz.invert_z() == zz);
    CHECK(zz.is_symmetric());
    CHECK_FALSE(zpow(1).is_symmetric());

    laurent_poly<double> f;
    f.add_coeff(1, 1.0);
    f.add_coeff(-1, 1.0 + 1e-13);  // inside the float tolerance window
    CHECK(f.is_symmetric());
    f.add_coeff(-1, 1e-6);
    CHECK_FALSE(f.is_symmetric());
}

TEST_CASE("x-basis conversion on pinned cases") {
    CHECK(to_x_basis(LP::one()) == XP::constant(rational(1)));
    CHECK(from_x_basis(XP::constant(rational(1))) == LP::one());

    XP x(std::vector<rational>{rational(0), rational(1)});
    LP half_zz = (zpow(1) + zpow(-1)).scaled(rational(1, 2));
    CHECK(from_x_basis(x) == half_zz);
    CHECK(to_x_basis(half_zz) == x);

    XP x2(std::vector<rational>{rational(0), rational(0), rational(1)});
    LP quarter = (zpow(2) + zpow(0, rational(2)) + zpow(-2)).scaled(rational(1, 4));
    CHECK(from_x_basis(x2) == quarter);
    CHECK(to_x_basis(quarter) == x2);

    CHECK_THROWS_AS(to_x_basis(zpow(1)), std::domain_error);
}

TEST_CASE("x-basis round trip and degree additivity") {
    std::mt19937_64 rng(20240811u);
    for (int iter = 0; iter < 60; ++iter) {
        LP p = random_symmetric(rng, 10);
        if (p.is_zero()) continue;
        XP px = to_x_basis(p);
        CHECK(from_x_basis(px) == p);
        CHECK(px.degree() == (p.max_exp() > 0 ? p.max_exp() : 0));

        LP p2 = random_symmetric(rng, 5);
        if (p2.is_zero()) continue;
        CHECK(to_x_basis(p * p2).degree() == to_x_basis(p).degree() + to_x_basis(p2).degree());
    }
}

TEST_CASE("exact laurent division") {
    LP den = (LP::one() - zpow(2)) * (LP::one() - zpow(2, rational(1, 2)));
    LP quot = zpow(-3, rational(5, 7)) + zpow(2) + LP::one();
    CHECK(divide_exact(den * quot, den) == quot);
    CHECK(divide_exact(LP::zero(), den).is_zero());

    // z^2 + 1 is not divisible by z + 1
    CHECK_THROWS_AS(divide_exact(zpow(2) + LP::one(), zpow(1) + LP::one()), std::runtime_error);
    CHECK_THROWS_AS(divide_exact(LP::one(), LP::zero()), std::domain_error);

    // float path accepts roundoff-sized remainders and rejects real ones
    laurent_poly<double> fd, fq;
    fd.add_coeff(0, 1.0);
    fd.add_coeff(2, -0.3);
    fq.add_coeff(-1, 0.7);
    fq.add_coeff(3, 1.9);
    laurent_poly<double> fn = fd * fq;
    fn.add_coeff(0, 1e-12);
    CHECK_NOTHROW(divide_exact(fn, fd, 1e-9));
    fn.add_coeff(0, 1e-3);
    CHECK_THROWS_AS(divide_exact(fn, fd, 1e-9), std::runtime_error);
}

TEST_CASE("multivariate collapse along a direction") {
    multi_laurent<rational> m(3);
    m.add_coeff({0, 0, 0}, rational(5, 3));
    CHECK(collapse_multilaurent(m, {1, 0, -1}) == zpow(0, rational(5, 3)));

    m.add_coeff({1, 0, -1}, rational(2));
    m.add_coeff({-2, 0, 2}, rational(-7, 2));
    LP out = collapse_multilaurent(m, {1, 0, -1});
    CHECK(out == zpow(0, rational(5, 3)) + zpow(1, rational(2)) + zpow(-2, rational(-7, 2)));

    m.add_coeff({1, -1, 0}, rational(1));
    try {
        collapse_multilaurent(m, {1, 0, -1});
        FAIL("expected domain_error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("(1,-1,0)") != std::string::npos);
    }

    CHECK_THROWS_AS(collapse_multilaurent(multi_laurent<rational>(2), {0, 0}), std::invalid_argument);
}
