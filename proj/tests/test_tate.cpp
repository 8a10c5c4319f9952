#include <doctest.h>

#include <random>

#include "fzv/tate.hpp"
#include "fzv/carlitz.hpp"

using namespace fzv;

TEST_CASE("truncated Laurent arithmetic is exact above the floor") {
    auto F = Fq::prime(3);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<unsigned> dc(0, 2);
    for (int it = 0; it < 50; ++it) {
        // random polynomials in (theta, t1)
        VarList vars = make_vars(true, 1, false, false);
        MPoly::Builder ba(F, vars), bb(F, vars);
        for (int k = 0; k < 6; ++k) {
            ba.add(std::vector<std::uint32_t>{dc(rng), dc(rng)}, static_cast<fq_el>(dc(rng)));
            bb.add(std::vector<std::uint32_t>{dc(rng), dc(rng)}, static_cast<fq_el>(dc(rng)));
        }
        MPoly a = ba.build(), b = bb.build();
        TruncLaurent ta = TruncLaurent::from_mpoly(a, 1, -4);
        TruncLaurent tb = TruncLaurent::from_mpoly(b, 1, -4);
        TruncLaurent prod = ta * tb;
        MPoly ab = a * b;
        TruncLaurent expect = TruncLaurent::from_mpoly(ab, 1, prod.floor());
        CHECK(prod.same_known(expect));
        CHECK((ta + tb).same_known(TruncLaurent::from_mpoly(a + b, 1, -4)));
    }
}

TEST_CASE("geometric sweep multiplies by (1 - t theta^{-E})^{-1}") {
    auto F = Fq::prime(3);
    // X = 1: Y should be sum_k t^k theta^{-kE} down to the floor
    TruncLaurent X(F, 1, -7, 10);
    X.set(TExp{0}, 0, 1);
    TruncLaurent Y = X.mul_geom_inv_t(0, 2);
    for (long long k = 0; k <= 3; ++k)
        CHECK(Y.coeff(TExp{static_cast<std::uint32_t>(k)}, -2 * k) == 1);
    // verify by multiplying back with (1 - t theta^{-2})
    TruncLaurent one(F, 1, -7, 10);
    one.set(TExp{0}, 0, 1);
    TruncLaurent fac = one;
    fac.set(TExp{1}, -2, F->neg(1));
    TruncLaurent back = Y * fac;
    CHECK(back.nonneg_part() == one.nonneg_part());
    CHECK(!back.coeff(TExp{1}, -2));
}

TEST_CASE("mul_poly_inv inverts l_d") {
    auto F = Fq::prime(2);
    PolyA l2 = carlitz(F).l_seq(2);
    TruncLaurent X(F, 0, -20, 0);
    X.set(TExp{}, 0, 1);
    TruncLaurent Y = X.mul_poly_inv(l2);
    TruncLaurent back = Y.mul_poly(l2);
    // back should be 1 above the floor
    CHECK(back.coeff(TExp{}, 0) == 1);
    auto top = (back - X.truncated(back.floor(), 0)).top_exponent();
    CHECK(!top);
}

TEST_CASE("lemma identity check (pi~_d over omega products)") {
    auto F2 = Fq::prime(2);
    CHECK(lemma_ident_check(F2, 3, 2)); // d = m edge
    CHECK(lemma_ident_check(F2, 3, 3));
    CHECK(lemma_ident_check(F2, 3, 4));
    CHECK(lemma_ident_check(F2, 2, 2));
    auto F3 = Fq::prime(3);
    CHECK(lemma_ident_check(F3, 3, 1));
    CHECK(lemma_ident_check(F3, 3, 2));
    CHECK(lemma_ident_check(F3, 5, 2));
    CHECK(lemma_ident_check(F3, 5, 3));
}

TEST_CASE("gamma series: h_0 = 1, h_1 = t_1+..+t_s, and h f = g") {
    for (auto [q, s] : {std::pair<unsigned, unsigned>{2, 3}, {3, 5}}) {
        auto F = Fq::prime(q);
        GammaSeries G = gamma_series(F, s, 3);
        VarList vars = make_vars(true, s, false, false);
        CHECK(G.h[0] == MPoly::one(F, vars));
        MPoly tsum = MPoly::zero(F, vars);
        for (unsigned j = 1; j <= s; ++j) tsum = tsum + MPoly::var(F, vars, Var::t(j));
        CHECK(G.h[1] == tsum);
    }
    // multiply back: h * f = g to order 2 (q=2, s=3)
    {
        auto F = Fq::prime(2);
        const unsigned s = 3, ord = 2;
        GammaSeries G = gamma_series(F, s, ord);
        VarList vars = make_vars(true, s, false, false);
        // rebuild f and g the same way the paper defines them
        auto digits01 = [&](unsigned long long n) {
            while (n > 0) {
                if (n % 2 > 1) return false;
                n /= 2;
            }
            return true;
        };
        std::vector<MPoly> f(ord + 1, MPoly::zero(F, vars));
        f[0] = MPoly::one(F, vars);
        for (unsigned j = 0; j < s; ++j) {
            std::vector<MPoly> fac(ord + 1, MPoly::zero(F, vars));
            for (unsigned long long n = 0; n <= ord; ++n) {
                if (!digits01(n)) continue;
                unsigned ell = static_cast<unsigned>(digit_profile(2, n).ell);
                std::vector<std::uint32_t> e(vars.size(), 0);
                e[j + 1] = ell;
                fac[n] = MPoly::monomial(F, vars, e, 1); // char 2: signs trivial
            }
            std::vector<MPoly> nf(ord + 1, MPoly::zero(F, vars));
            for (unsigned a = 0; a <= ord; ++a)
                for (unsigned b = 0; a + b <= ord; ++b) nf[a + b] = nf[a + b] + f[a] * fac[b];
            f = std::move(nf);
        }
        // g coefficients: q^m n for m=2: Y^0 -> 1; Y^4 beyond order 2
        std::vector<MPoly> g(ord + 1, MPoly::zero(F, vars));
        g[0] = MPoly::one(F, vars);
        for (unsigned k = 0; k <= ord; ++k) {
            MPoly acc = MPoly::zero(F, vars);
            for (unsigned i = 0; i <= k; ++i) acc = acc + G.h[i] * f[k - i];
            CHECK(acc == g[k]);
        }
    }
}

TEST_CASE("gamma polynomials: degree shape and the two boundary cases") {
    for (auto [q, s] : {std::pair<unsigned, unsigned>{2, 3}, {3, 5}}) {
        auto F = Fq::prime(q);
        HParams par = h_params(q, s);
        for (long long r = 0; r <= par.mu; ++r) {
            MPoly g = gamma_poly(F, s, r);
            Degree dy = g.deg_in(Var::Y());
            if (par.mu - r == 0) {
                CHECK(g == MPoly::one(F, g.vars()));
            } else {
                CHECK(dy == Degree::of(par.mu - r));
                // monic in Y
                MPoly lead = g.coeff_of(Var::Y(), static_cast<std::uint32_t>(par.mu - r));
                CHECK(lead == MPoly::one(F, g.vars()));
            }
        }
        // r = mu - 1: Y + sum t_i
        if (par.mu >= 1) {
            MPoly g = gamma_poly(F, s, par.mu - 1);
            VarList vars = g.vars();
            MPoly expect = MPoly::var(F, vars, Var::Y());
            for (unsigned j = 1; j <= s; ++j) expect = expect + MPoly::var(F, vars, Var::t(j));
            CHECK(g == expect);
        }
    }
}

TEST_CASE("gamma defining property: theta^{(mu-r)q^{d-m}} Gamma_d - Gamma_{s,r}(theta^{q^{d-m}}) sinks") {
    auto F = Fq::prime(2);
    const unsigned s = 3, m = 2;
    HParams par = h_params(2, s);
    const long long r = 0;
    MPoly gam = gamma_poly(F, s, r);
    const long long floor = -40;
    const std::uint32_t tcap = 6;
    std::optional<long long> prev;
    for (long long d = 3; d <= 5; ++d) {
        // Gamma_d as a truncated product
        TruncLaurent G(F, s, floor, tcap);
        G.set(TExp(s, 0), 0, 1);
        for (long long i = d;; ++i) {
            long long E = 1;
            for (long long x = 0; x < i; ++x) E *= 2;
            if (E - 1 > -floor + 8) break;
            TruncLaurent shifted = G.mul_theta_pow(1 - E);
            G = G - shifted;
        }
        for (long long i = d - m;; ++i) {
            long long E = 1;
            for (long long x = 0; x < i; ++x) E *= 2;
            if (E > -floor + 8) break;
            for (unsigned j = 0; j < s; ++j) G = G.mul_geom_inv_t(j, E);
        }
        long long Q = 1 << (d - m);
        TruncLaurent lhs = G.mul_theta_pow((par.mu - r) * Q);
        TruncLaurent rhs = TruncLaurent::from_mpoly(
            gam.subst_var_theta_pow(Var::Y(), Q), s, floor, tcap);
        auto top = (lhs - rhs).top_exponent();
        REQUIRE(top);
        if (prev) CHECK(*top < *prev);
        CHECK(*top < 0);
        prev = top;
    }
}

TEST_CASE("lambda limit stabilizes to the top Y-coefficient") {
    for (auto [q, s] : {std::pair<unsigned, unsigned>{2, 3}, {3, 5}}) {
        auto F = Fq::prime(q);
        HPolynomial H = h_interpolate(F, s);
        MPoly cand = lambda_limit(H, H.m() + 2, H.m() + 4);
        // stabilized part of -theta^{-mu Q} H(theta^Q) is -D_mu
        MPoly top = H.y_coeff_mpoly(static_cast<size_t>(H.mu()));
        CHECK(cand == -top);
    }
}

TEST_CASE("lambda limit for s=2q-1 equals theta - e_q up to the route sign") {
    auto F = Fq::prime(3);
    HPolynomial H = h_interpolate(F, 5);
    MPoly cand = lambda_limit(H, 4, 6);
    VarList tv = make_vars(false, 5, false, false);
    VarList vars = make_vars(true, 5, false, false);
    MPoly expect = MPoly::var(F, vars, Var::theta()) -
                   CarlitzCache::elem_sym(F, 3, tv).embed(vars);
    // candidate = -D_mu = theta - e_q (paper: lambda_{1,2q-1} = theta - e_q)
    CHECK(cand == expect);
}

TEST_CASE("lower coefficient verification: q=2, s=3") {
    auto F = Fq::prime(2);
    HPolynomial H = h_interpolate(F, 3);
    LowerCoeffReport rep = lower_coeff_verify(H, 0, 4, 6);
    CHECK(rep.strictly_increasing);
    CHECK(rep.stabilized_matches);
    CHECK_THROWS_AS(lower_coeff_verify(H, H.mu(), 4, 6), DomainError); // r <= mu-1
}

TEST_CASE("nu value: tail-limit route agrees with the coefficient route") {
    auto F = Fq::prime(2);
    HPolynomial H = h_interpolate(F, 3);
    MPoly nu = nu_value(H, 4, 5, 8);
    // nu = D_{mu-1} - (t1+t2+t3) D_mu, checked internally; sanity: nonzero
    CHECK(!nu.is_zero());
}
