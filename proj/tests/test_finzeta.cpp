#include <doctest.h>

#include "fzv/finzeta.hpp"

using namespace fzv;

TEST_CASE("zeta component worked instance and degree-1 primes") {
    auto F = Fq::prime(3);
    auto P = std::make_shared<const QuotCtx>(PolyA::from_coeffs(F, {1, 0, 1}));
    ZetaComponent z = zeta_component(P, 1, 1);
    CHECK(!z.is_zero);
    CHECK(z.is_unit);
    MPoly::Builder b(F, make_vars(true, 1, false, false));
    MPoly::Exp e{};
    e[0] = 1;
    e[1] = 1;
    b.add(e, 1);
    b.add(MPoly::Exp{}, 2);
    CHECK(z.value.lift() == b.build()); // theta t + 2
    // any degree-1 prime: F_1 = S_0 = 1
    for (const auto& L : enumerate_irreducibles(F, 1)) {
        auto ctx = std::make_shared<const QuotCtx>(L);
        ZetaComponent u = zeta_component(ctx, 4, 2);
        CHECK(u.value.lift() == MPoly::one(F, make_vars(true, 2, false, false)));
        CHECK(u.is_unit);
    }
    // q=3, P=theta^2+1, n=5, s=1: l_3(5) = 3 > 1 and 5 = 1 mod 2: zero
    ZetaComponent z5 = zeta_component(P, 5, 1);
    CHECK(z5.is_zero);
}

TEST_CASE("pi-hat and omega-hat components") {
    auto F = Fq::prime(3);
    QuotCtx P(PolyA::from_coeffs(F, {1, 0, 1}));
    CHECK(pi_hat(P) == PolyA::from_coeffs(F, {0, 2})); // 2 theta
    // degree-1 prime: P' = 1, pi-hat = -1
    QuotCtx L(PolyA::from_coeffs(F, {1, 1}));
    CHECK(pi_hat(L) == PolyA::constant(F, 2));
    MPoly om = omega_hat_denominator(P);
    MPoly::Builder b(F, make_vars(false, 1, false, false));
    b.add(std::vector<std::uint32_t>{2}, 1);
    b.add(std::vector<std::uint32_t>{0}, 1);
    CHECK(om == b.build()); // t^2 + 1
}

TEST_CASE("theorem1_check: s=1 across small primes") {
    for (unsigned q : {2u, 3u}) {
        auto F = Fq::prime(q);
        for (long long d = 1; d <= 3; ++d) {
            for (const auto& P : enumerate_irreducibles(F, d)) {
                auto ctx = std::make_shared<const QuotCtx>(P);
                CHECK(theorem1_check(ctx, 1, nullptr));
            }
        }
    }
}

TEST_CASE("theorem1_check: s = q and s = 2q-1 with the computed H") {
    for (unsigned q : {2u, 3u}) {
        auto F = Fq::prime(q);
        HPolynomial Hq = h_interpolate(F, q);
        HPolynomial H2q = h_interpolate(F, 2 * q - 1);
        for (long long d = 1; d <= 3; ++d) {
            for (const auto& P : enumerate_irreducibles(F, d)) {
                auto ctx = std::make_shared<const QuotCtx>(P);
                CHECK(theorem1_check(ctx, q, &Hq));
                CHECK(theorem1_check(ctx, 2 * q - 1, &H2q));
            }
        }
    }
}

TEST_CASE("psi nonvanishing device") {
    auto F2 = Fq::prime(2);
    PsiReport r2 = psi_nonvanish_check(F2, 3, 3);
    CHECK(r2.factorization);
    CHECK(r2.nonvanishing);
    CHECK(r2.degree_window);
    auto F3 = Fq::prime(3);
    PsiReport r3 = psi_nonvanish_check(F3, 3, 2);
    CHECK(r3.factorization); // Psi_2 = product of the 3 monic irreducible quadratics
    CHECK(r3.nonvanishing);
}

TEST_CASE("prop1_check: worked instances and preconditions") {
    auto F3 = Fq::prime(3);
    auto P = std::make_shared<const QuotCtx>(PolyA::from_coeffs(F3, {1, 0, 1}));
    CHECK(prop1_check(P, 5, 1)); // both sides zero
    auto F2 = Fq::prime(2);
    auto P2 = std::make_shared<const QuotCtx>(PolyA::from_coeffs(F2, {1, 1, 1}));
    CHECK(prop1_check(P2, 3, 1)); // l_2(3) = 2 > 1 wait s=1: need l>s: 2>1 ok
    // n = q^k (l=1), s=0: BG route vs direct route
    for (long long d = 1; d <= 3; ++d) {
        for (const auto& Pr : enumerate_irreducibles(F2, d)) {
            auto ctx = std::make_shared<const QuotCtx>(Pr);
            for (long long n : {1LL, 2LL}) {
                if (static_cast<unsigned long long>(n) >= ctx->card()) continue;
                CHECK(prop1_check(ctx, n, 0));
            }
        }
    }
    CHECK_THROWS_AS(prop1_check(P, 1, 1), PreconditionUnmet);  // l(1)=1 <= 1
    CHECK_THROWS_AS(prop1_check(P, 10, 0), PreconditionUnmet); // 10 >= 9 = q^2
}

TEST_CASE("iota compatibility: reduction respects products with integral K-scalars") {
    auto F = Fq::prime(3);
    auto P = std::make_shared<const QuotCtx>(PolyA::from_coeffs(F, {1, 0, 1}));
    // r in K with v_P(r) >= 0 (denominator prime to P)
    FracK r(PolyA::from_coeffs(F, {1, 2}), PolyA::from_coeffs(F, {1, 1}));
    PolyA x = PolyA::from_coeffs(F, {2, 0, 1, 1});
    QuotCtx::El rx = P->mul(P->reduce(r.num()), P->inv(P->reduce(r.den())));
    CHECK(P->mul(rx, P->reduce(x)) ==
          P->mul(P->reduce(r.num() * x), P->inv(P->reduce(r.den()))));
}

TEST_CASE("Frobenius-inverse realization: (theta^{q^{d-j}})^{q^j} = theta mod P") {
    for (unsigned q : {2u, 3u}) {
        auto F = Fq::prime(q);
        for (long long d = 1; d <= 4; ++d) {
            for (const auto& P : enumerate_irreducibles(F, d)) {
                QuotCtx ctx(P);
                for (long long j = 0; j <= d; ++j) {
                    QuotCtx::El x = ctx.frobenius_theta_el(static_cast<size_t>((d - j) % d));
                    long long Qj = 1;
                    for (long long i = 0; i < j; ++i) Qj *= q;
                    CHECK(ctx.pow(x, Qj) == ctx.theta());
                }
            }
        }
    }
}

TEST_CASE("zeta components with n <= 0 equal Bernoulli-Goss partial sums mod P") {
    auto F = Fq::prime(3);
    auto P = std::make_shared<const QuotCtx>(PolyA::from_coeffs(F, {1, 0, 1}));
    for (long long n : {0LL, -1LL, -2LL}) {
        ZetaComponent z = zeta_component(P, n, 1);
        // direct: sum over i < deg P of S_i(n;1) reduced
        SumSpec spec{F, n, 1, P->degree(), 1};
        MPolyK exact = harmonic_sum(spec);
        CHECK(exact.is_integral());
        ModTPoly red = ModTPoly::reduce(exact.num(), P, 1);
        CHECK((z.value - red).is_zero());
    }
}

TEST_CASE("bc unit check") {
    auto F2 = Fq::prime(2);
    for (const auto& P : enumerate_irreducibles(F2, 3)) {
        auto ctx = std::make_shared<const QuotCtx>(P);
        CHECK(bc_unit_check(ctx, 3)); // BC_5 mod P != 0
    }
    auto F3 = Fq::prime(3);
    auto P = std::make_shared<const QuotCtx>(PolyA::from_coeffs(F3, {1, 0, 1}));
    CHECK(bc_unit_check(P, 3)); // BC_6 mod theta^2+1 != 0
    CHECK_THROWS_AS(bc_unit_check(P, 2), DomainError);
}

TEST_CASE("conjecture scan: small grid has no hard counterexamples") {
    auto F = Fq::prime(3);
    ScanReport rep = conjecture_scan(F, 2, 8, 2, 1);
    CHECK(rep.hard_counterexamples.empty());
    CHECK(!rep.cells.empty());
    // deterministic serialization
    ScanReport rep2 = conjecture_scan(F, 2, 8, 2, 1);
    CHECK(rep.text() == rep2.text());
    // budget guard
    CHECK_THROWS_AS(conjecture_scan(F, 6, 100, 5, 1, 1000), BudgetExceeded);
}
