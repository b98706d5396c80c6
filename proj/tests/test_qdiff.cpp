#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "qaw/askey_wilson.hpp"
#include "qaw/qdiff.hpp"

using qaw::askey_wilson_rn;
using qaw::aw_params;
using qaw::laurent_poly;
using qaw::pow_int;
using qaw::q_context;
using qaw::rational;
using qaw::sigma_tau_params;
using qaw::x_poly;

using LP = laurent_poly<rational>;

TEST_CASE("coefficient A at sample points") {
    aw_params<rational> zero{rational(0), rational(0), rational(0), rational(0), rational(1, 2)};
    // all parameters zero: A(z) = 1/((1-z^2)(1-qz^2))
    CHECK(qaw::coefficient_A(rational(2), zero) == rational(1, 3));

    aw_params<rational> p = zero;
    p.a = rational(1, 2);
    CHECK(qaw::coefficient_A(rational(2), p) == rational(0));

    CHECK_THROWS_AS(qaw::coefficient_A(rational(1), zero), std::domain_error);
    CHECK_THROWS_AS(qaw::coefficient_A(rational(-1), zero), std::domain_error);
    aw_params<rational> q4 = zero;
    q4.q = rational(1, 4);
    CHECK_THROWS_AS(qaw::coefficient_A(rational(2), q4), std::domain_error);
}

TEST_CASE("difference operator: kernel, domain, degree bound") {
    aw_params<rational> p{rational(1, 3), rational(-1, 4), rational(2, 5), rational(1, 7), rational(1, 2)};

    CHECK(qaw::apply_aw_operator(LP::one(), p).is_zero());
    CHECK(qaw::apply_aw_operator(LP::zero(), p).is_zero());
    CHECK_THROWS_AS(qaw::apply_aw_operator(LP::monomial(1), p), std::domain_error);

    std::mt19937_64 rng(33u);
    std::uniform_int_distribution<long> num(-4, 4);
    for (int iter = 0; iter < 10; ++iter) {
        x_poly<rational> f;
        long deg = 1 + static_cast<long>(rng() % 5);
        for (long k = 0; k < deg; ++k) f.set_coeff(k, rational(num(rng), 3));
        f.set_coeff(deg, rational(1 + static_cast<long>(rng() % 3)));
        LP sym = qaw::from_x_basis(f);
        LP image = qaw::apply_aw_operator(sym, p);
        CHECK(image.is_symmetric());
        if (!image.is_zero()) CHECK(image.max_exp() <= sym.max_exp());
    }
}

TEST_CASE("difference operator eigen-relation in the float backend") {
    aw_params<double> p{0.3, -0.25, 0.4, 0.1, 0.5};
    for (long n = 1; n <= 4; ++n) {
        laurent_poly<double> rn = askey_wilson_rn(n, p);
        double eig = -(1.0 - std::pow(p.q, -static_cast<double>(n))) *
                     (1.0 - std::pow(p.q, static_cast<double>(n - 1)) * p.a * p.b * p.c * p.d);
        laurent_poly<double> diff = qaw::apply_aw_operator(rn, p) - rn.scaled(eig);
        double worst = 0.0;
        for (const auto& [e, v] : diff.coeffs()) {
            (void)e;
            if (std::abs(v) > worst) worst = std::abs(v);
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("radial parameter map: pinned images and the abcd product") {
    const rational q(1, 2);

    sigma_tau_params<rational> st0{2, q, rational(1), rational(1), true, true};
    aw_params<rational> m0 = qaw::parameter_map(st0);
    CHECK(m0.a == -q);
    CHECK(m0.b == -q);
    CHECK(m0.c == q);
    CHECK(m0.d == q);
    CHECK(m0.q == q * q);

    // sigma = 1, tau = 0 at n = 3
    sigma_tau_params<rational> st1{3, q, q, rational(1), true, true};
    aw_params<rational> m1 = qaw::parameter_map(st1);
    CHECK(m1.a == -(q * q));
    CHECK(m1.b == rational(-1));
    CHECK(m1.c == q * q);
    CHECK(m1.d == q * q);

    std::mt19937_64 rng(5u);
    std::uniform_int_distribution<long> num(1, 6);
    for (int iter = 0; iter < 20; ++iter) {
        sigma_tau_params<rational> st{2 + static_cast<int>(rng() % 4), rational(1, 1 + num(rng)),
                                      rational(num(rng), num(rng)), rational(num(rng), num(rng)), true, true};
        aw_params<rational> m = qaw::parameter_map(st);
        CHECK(m.a * m.b * m.c * m.d == pow_int(st.q, 2L * st.n));
    }

    sigma_tau_params<rational> inf_st{2, q, rational(1), rational(1), false, true};
    CHECK_THROWS_AS(qaw::parameter_map(inf_st), std::domain_error);
    sigma_tau_params<rational> neg_st{2, q, rational(-1), rational(1), true, true};
    CHECK_THROWS_AS(qaw::parameter_map(neg_st), std::domain_error);
    sigma_tau_params<rational> small_n{1, q, rational(1), rational(1), true, true};
    CHECK_THROWS_AS(qaw::parameter_map(small_n), std::invalid_argument);
}

TEST_CASE("radial operator: constants and spherical eigenfunctions") {
    CHECK(qaw::radial_constant(2, rational(1, 2)) == rational(5, 4));

    sigma_tau_params<rational> st{2, rational(1, 2), rational(1), rational(1), true, true};
    CHECK(qaw::apply_radial_operator(LP::one(), st) == LP::one().scaled(rational(5, 4)));

    for (const rational& q : {rational(1, 2), rational(2, 3)}) {
        q_context<rational> ctx(q);
        for (int n = 2; n <= 3; ++n) {
            for (const auto& [qs, qt] : std::vector<std::pair<rational, rational>>{
                     {rational(1), rational(1)}, {rational(2), rational(1)}, {rational(1), rational(2)}}) {
                sigma_tau_params<rational> stp{n, q, qs, qt, true, true};
                aw_params<rational> mapped = qaw::parameter_map(stp);
                for (long l = 0; l <= 3; ++l) {
                    LP rl = askey_wilson_rn(l, mapped);
                    CHECK(qaw::apply_radial_operator(rl, stp) == rl.scaled(qaw::chi_l(l, n, ctx)));
                }
            }
        }
    }
}

TEST_CASE("Casimir eigenvalues") {
    q_context<rational> ctx(rational(1, 2));

    CHECK(qaw::casimir_eigenvalue({1, 0}, ctx) == rational(17, 16));

    for (int n = 2; n <= 4; ++n) {
        std::vector<int> zero(static_cast<std::size_t>(n), 0);
        CHECK(qaw::casimir_eigenvalue(zero, ctx) == qaw::radial_constant(n, rational(1, 2)));
    }

    CHECK_THROWS_AS(qaw::casimir_eigenvalue({}, ctx), std::invalid_argument);
    CHECK_THROWS_AS(qaw::chi_l(-1, 2, ctx), std::invalid_argument);
    CHECK_THROWS_AS(qaw::chi_l(0, 1, ctx), std::invalid_argument);
}

TEST_CASE("chi at l(e_1 - e_n) matches the general eigenvalue formula") {
    for (const rational& q : {rational(1, 2), rational(2, 3)}) {
        q_context<rational> ctx(q);
        for (int n = 2; n <= 4; ++n) {
            for (long l = 0; l <= 6; ++l) {
                std::vector<int> lam(static_cast<std::size_t>(n), 0);
                lam.front() = static_cast<int>(l);
                lam.back() = -static_cast<int>(l);
                CHECK(qaw::chi_l(l, n, ctx) == qaw::casimir_eigenvalue(lam, ctx));

                // difference-operator eigenvalue at base q^2 plus the constant
                rational from_op = -(rational(1) - pow_int(q, -2 * l)) *
                                       (rational(1) - pow_int(q, 2 * (l + n - 1))) +
                                   qaw::radial_constant(n, q);
                CHECK(from_op == qaw::chi_l(l, n, ctx));
            }
        }
    }
}
