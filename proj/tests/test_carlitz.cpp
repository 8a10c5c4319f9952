#include <doctest.h>

#include "fzv/carlitz.hpp"

using namespace fzv;

namespace {

// z-derivative of an MPoly (z in the variable list)
MPoly z_derivative(const MPoly& f) {
    const FqPtr& F = f.field();
    int zi = f.var_index(Var::z());
    REQUIRE(zi >= 0);
    MPoly::Builder b(F, f.vars());
    for (const auto& t : f.terms()) {
        std::uint32_t e = t.e[static_cast<size_t>(zi)];
        if (e == 0) continue;
        MPoly::Exp ne = t.e;
        ne[static_cast<size_t>(zi)] = e - 1;
        b.add(ne, F->mul(t.c, F->from_int(e)));
    }
    return b.build();
}

} // namespace

TEST_CASE("seed values") {
    auto F = Fq::prime(3);
    const CarlitzCache& C = carlitz(F);
    CHECK(C.l_seq(0) == PolyA::one(F));
    CHECK(C.d_seq(0) == PolyA::one(F));
    CHECK(C.b_poly(0, Var::Y()) == MPoly::one(F, make_vars(true, 0, true, false)));
    CHECK(C.carlitz_factorial(1) == PolyA::one(F));
}

TEST_CASE("q=2 hand-computed values") {
    auto F = Fq::prime(2);
    const CarlitzCache& C = carlitz(F);
    // l_1 = theta^2 + theta
    CHECK(C.l_seq(1) == PolyA::from_coeffs(F, {0, 1, 1}));
    // D_2 = [2] [1]^2 = (theta^4+theta)(theta^2+theta)^2
    PolyA expect = (PolyA::theta_pow(F, 4) - PolyA::theta(F)) *
                   (PolyA::theta_pow(F, 2) - PolyA::theta(F)).pow(2);
    CHECK(C.d_seq(2) == expect);
}

TEST_CASE("l_d equals the product (theta-theta^q)...(theta-theta^{q^d})") {
    for (unsigned q : {2u, 3u, 5u}) {
        auto F = Fq::prime(q);
        const CarlitzCache& C = carlitz(F);
        for (unsigned d = 1; d <= 4; ++d) {
            PolyA prod = PolyA::one(F);
            long long Q = q;
            for (unsigned i = 1; i <= d; ++i) {
                prod = prod * (PolyA::theta(F) - PolyA::theta_pow(F, Q));
                Q *= q;
            }
            CHECK(C.l_seq(d) == prod);
        }
    }
}

TEST_CASE("Carlitz formula: E_0 = z and q=2 E_1 = (z^2+z)/(theta^2+theta)") {
    auto F = Fq::prime(2);
    const CarlitzCache& C = carlitz(F);
    VarList vz = make_vars(true, 0, false, true);
    CHECK(C.e_poly(0) == MPolyK(MPoly::var(F, vz, Var::z())));
    MPolyK E1 = C.e_poly(1);
    MPoly num = MPoly::monomial(F, vz, {0, 2}, 1) + MPoly::var(F, vz, Var::z());
    CHECK(E1 == MPolyK(num, PolyA::from_coeffs(F, {0, 1, 1})));
}

TEST_CASE("E_i(theta^i) = 1") {
    for (unsigned q : {2u, 3u, 5u}) {
        auto F = Fq::prime(q);
        const CarlitzCache& C = carlitz(F);
        for (unsigned i = 0; i <= 3; ++i) {
            MPolyK E = C.e_poly(i);
            VarList tv = make_vars(true, 0, false, false);
            MPolyK val = substitute(E, {{Var::z(), MPolyK{MPoly::from_polyA(PolyA::theta_pow(F, i), tv)}}});
            CHECK(val == MPolyK::one(F, tv));
        }
    }
}

TEST_CASE("Prop 2(3): E_i^q = E_i + [i+1] E_{i+1} exactly") {
    for (auto [p, e] : {std::pair<unsigned, unsigned>{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto F = Fq::make_default(p, e);
        const CarlitzCache& C = carlitz(F);
        unsigned imax = F->q() <= 3 ? 3 : 2;
        for (unsigned i = 0; i + 1 <= imax; ++i) {
            MPolyK lhs = C.e_poly(i);
            MPolyK pw = MPolyK::one(F, lhs.num().vars());
            for (unsigned k = 0; k < F->q(); ++k) pw = pw * lhs;
            MPolyK rhs = lhs + C.e_poly(i + 1).scale(FracK(C.bracket(i + 1)));
            CHECK(pw == rhs);
        }
    }
}

TEST_CASE("E_i is F_q-linear as a polynomial identity") {
    for (unsigned q : {2u, 3u}) {
        auto F = Fq::prime(q);
        const CarlitzCache& C = carlitz(F);
        for (unsigned i = 1; i <= 2; ++i) {
            MPolyK E = C.e_poly(i);
            VarList two = make_vars(true, 2, false, false);
            MPolyK x{MPoly::var(F, two, Var::t(1))};
            MPolyK y{MPoly::var(F, two, Var::t(2))};
            MPolyK exy = substitute(E, {{Var::z(), x + y}});
            MPolyK ex = substitute(E, {{Var::z(), x}});
            MPolyK ey = substitute(E, {{Var::z(), y}});
            CHECK(exy == ex + ey);
            for (unsigned c = 0; c < q; ++c) {
                MPolyK ecx = substitute(E, {{Var::z(), x.scale(FracK(PolyA::constant(F, static_cast<fq_el>(c))))}});
                CHECK(ecx == ex.scale(FracK(PolyA::constant(F, static_cast<fq_el>(c)))));
            }
        }
    }
}

TEST_CASE("product formula: D_i E_i = prod over A(i) of (z - a)") {
    for (unsigned q : {2u, 3u}) {
        auto F = Fq::prime(q);
        const CarlitzCache& C = carlitz(F);
        for (unsigned i = 0; i <= (q == 2 ? 3u : 2u); ++i) {
            MPoly de = C.de_poly(i);
            VarList vz = make_vars(true, 0, false, true);
            MPoly prod = MPoly::one(F, vz);
            // all q^i polynomials of degree < i
            std::uint64_t total = 1;
            for (unsigned k = 0; k < i; ++k) total *= q;
            for (std::uint64_t n = 0; n < total; ++n) {
                std::vector<fq_el> c(i, 0);
                std::uint64_t nn = n;
                for (unsigned k = 0; k < i; ++k) {
                    c[k] = static_cast<fq_el>(nn % q);
                    nn /= q;
                }
                prod = prod * (MPoly::var(F, vz, Var::z()) -
                               MPoly::from_polyA(PolyA::from_coeffs(F, c), vz));
            }
            CHECK(de == prod);
        }
    }
}

TEST_CASE("Prop 2(2): dE_i/dz = 1/l_i") {
    for (unsigned q : {2u, 3u}) {
        auto F = Fq::prime(q);
        const CarlitzCache& C = carlitz(F);
        for (unsigned i = 0; i <= 3; ++i) {
            MPolyK E = C.e_poly(i);
            MPoly der = z_derivative(E.num());
            // der / den == 1 / l_i  <=>  der * l_i == den
            MPoly lhs = der * MPoly::from_polyA(C.l_seq(i), der.vars());
            CHECK(MPolyK(lhs, E.den()) == MPolyK::one(F, der.vars()));
        }
    }
}

TEST_CASE("G_n basics and triangularity") {
    for (unsigned q : {2u, 3u}) {
        auto F = Fq::prime(q);
        const CarlitzCache& C = carlitz(F);
        VarList vz = make_vars(true, 0, false, true);
        CHECK(C.g_poly(0) == MPolyK::one(F, vz));
        CHECK(C.g_poly(1) == MPolyK(MPoly::var(F, vz, Var::z())));
        CHECK(C.g_poly(q) == C.e_poly(1));
        for (unsigned long long n = 0; n < 20; ++n) {
            Degree dz = C.g_poly(n).num().deg_in(Var::z());
            CHECK(dz == Degree::of(static_cast<long long>(n)));
        }
    }
}

TEST_CASE("elementary symmetric polynomials") {
    auto F = Fq::prime(5);
    VarList v3 = make_vars(false, 3, false, false);
    CHECK(CarlitzCache::elem_sym(F, 0, v3) == MPoly::one(F, v3));
    MPoly e2 = CarlitzCache::elem_sym(F, 2, v3);
    MPoly expect = MPoly::var(F, v3, Var::t(1)) * MPoly::var(F, v3, Var::t(2)) +
                   MPoly::var(F, v3, Var::t(1)) * MPoly::var(F, v3, Var::t(3)) +
                   MPoly::var(F, v3, Var::t(2)) * MPoly::var(F, v3, Var::t(3));
    CHECK(e2 == expect);
    CHECK(CarlitzCache::elem_sym(F, 3, v3) ==
          MPoly::var(F, v3, Var::t(1)) * MPoly::var(F, v3, Var::t(2)) * MPoly::var(F, v3, Var::t(3)));
    CHECK_THROWS_AS(CarlitzCache::elem_sym(F, 4, v3), IndexOutOfRange);
}

TEST_CASE("digit profiles") {
    CHECK(digit_profile(2, 5).digits == std::vector<unsigned>{1, 0, 1});
    CHECK(digit_profile(2, 5).ell == 2);
    CHECK(digit_profile(3, 5).digits == std::vector<unsigned>{2, 1});
    CHECK(digit_profile(3, 5).ell == 3);
    for (unsigned k = 0; k < 6; ++k) CHECK(digit_profile(3, 1ULL << (k * 2)).ell >= 1);
    CHECK(digit_profile(5, 25).ell == 1);
}

TEST_CASE("Bernoulli-Carlitz numbers") {
    for (unsigned q : {2u, 3u, 5u}) {
        auto F = Fq::prime(q);
        const CarlitzCache& C = carlitz(F);
        CHECK(C.bc_number(0, 10) == FracK::one(F));
        for (unsigned long long j = 1; j < q - 1; ++j)
            CHECK(C.bc_number(j, 10).is_zero());
    }
    // independent Newton-iteration oracle for the reciprocal series, q=3
    {
        auto F = Fq::prime(3);
        const CarlitzCache& C = carlitz(F);
        // series U = 1 + z^2/D_1 + z^8/D_2 + ... ; invert to order 8 by Newton:
        // V <- V(2 - UV) doubling precision
        const unsigned ord = 9;
        std::vector<FracK> U(ord, FracK::zero(F));
        U[0] = FracK::one(F);
        U[2] = FracK(PolyA::one(F), C.d_seq(1));
        U[8] = FracK(PolyA::one(F), C.d_seq(2));
        std::vector<FracK> V(ord, FracK::zero(F));
        V[0] = FracK::one(F);
        for (unsigned prec = 1; prec < ord; prec *= 2) {
            unsigned np = std::min(ord, prec * 2);
            // W = U*V mod z^np
            std::vector<FracK> W(np, FracK::zero(F));
            for (unsigned i = 0; i < np; ++i)
                for (unsigned j = 0; i + j < np; ++j) W[i + j] = W[i + j] + U[i] * V[j];
            // V = V*(2 - W) mod z^np
            std::vector<FracK> T(np, FracK::zero(F));
            T[0] = FracK(PolyA::constant(F, 2)) - W[0];
            for (unsigned i = 1; i < np; ++i) T[i] = -W[i];
            std::vector<FracK> NV(np, FracK::zero(F));
            for (unsigned i = 0; i < np; ++i)
                for (unsigned j = 0; i + j < np; ++j) NV[i + j] = NV[i + j] + V[i] * T[j];
            V.assign(ord, FracK::zero(F));
            for (unsigned i = 0; i < np; ++i) V[i] = NV[i];
        }
        for (unsigned long long j = 0; j <= 8; ++j) {
            FracK pi{C.carlitz_factorial(j)};
            CHECK(C.bc_number(j, 8) == V[static_cast<size_t>(j)] * pi);
        }
        CHECK(!C.bc_number(2, 8).is_zero()); // BC_{q-1} for q=3
    }
    // precision guard
    auto F = Fq::prime(3);
    CHECK_THROWS_AS(carlitz(F).bc_number(100, 10), PrecisionExceeded);
}

TEST_CASE("bc_number_mod agrees with the exact value reduced") {
    auto F = Fq::prime(3);
    const CarlitzCache& C = carlitz(F);
    QuotCtx ctx(PolyA::from_coeffs(F, {1, 0, 1})); // theta^2+1, card 9
    for (unsigned long long j : {0ULL, 2ULL, 4ULL, 6ULL}) {
        FracK exact = C.bc_number(j, 8);
        // reduce: num * inv(den) mod P (den is prime to P here)
        auto qctx = std::make_shared<const QuotCtx>(PolyA::from_coeffs(F, {1, 0, 1}));
        QuotCtx::El num = ctx.reduce(exact.num());
        QuotCtx::El den = ctx.reduce(exact.den());
        QuotCtx::El expect = ctx.mul(num, ctx.inv(den));
        CHECK(C.bc_number_mod(j, ctx) == ctx.lift(expect));
    }
    CHECK_THROWS_AS(C.bc_number_mod(8, ctx), PrecisionExceeded);
}
