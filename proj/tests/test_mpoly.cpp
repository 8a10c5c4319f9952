#include <doctest.h>

#include <random>

#include "fzv/mpoly.hpp"

using namespace fzv;

namespace {

MPoly random_mpoly(const FqPtr& F, const VarList& vars, int terms, std::mt19937_64& rng) {
    MPoly::Builder b(F, vars);
    std::uniform_int_distribution<unsigned> de(0, 3);
    std::uniform_int_distribution<unsigned> dc(0, F->q() - 1);
    for (int i = 0; i < terms; ++i) {
        std::vector<std::uint32_t> e(vars.size());
        for (auto& x : e) x = de(rng);
        b.add(e, static_cast<fq_el>(dc(rng)));
    }
    return b.build();
}

} // namespace

TEST_CASE("canonical term order is graded lexicographic") {
    auto F = Fq::prime(3);
    VarList vars = make_vars(true, 2, false, false); // theta, t1, t2
    MPoly::Builder b(F, vars);
    using V = std::vector<std::uint32_t>;
    b.add(V{2, 0, 0}, 1); // theta^2
    b.add(V{0, 0, 1}, 1); // t2
    b.add(V{1, 1, 1}, 1); // theta t1 t2
    b.add(V{0, 0, 0}, 2); // constant
    MPoly f = b.build();
    // expect: const (deg 0), t2 (deg 1), theta^2 (deg 2), theta t1 t2 (deg 3)
    REQUIRE(f.term_count() == 4);
    CHECK(f.terms()[0].e == MPoly::Exp{});
    CHECK(f.terms()[1].e[2] == 1);
    CHECK(f.terms()[2].e[0] == 2);
    CHECK(f.terms()[3].e[0] == 1);
}

TEST_CASE("arithmetic and embeddings") {
    auto F = Fq::prime(5);
    std::mt19937_64 rng(42);
    VarList v1 = make_vars(true, 1, false, false);
    VarList v2 = make_vars(true, 2, false, false);
    for (int it = 0; it < 100; ++it) {
        MPoly a = random_mpoly(F, v1, 5, rng);
        MPoly b = random_mpoly(F, v2, 5, rng);
        MPoly c = random_mpoly(F, v2, 5, rng);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK(a - a == MPoly::zero(F, v1));
    }
}

TEST_CASE("exact_div spec examples") {
    auto F = Fq::prime(3);
    VarList vars = make_vars(true, 1, false, false);
    MPoly t = MPoly::var(F, vars, Var::t(1));
    MPoly th = MPoly::var(F, vars, Var::theta());
    MPoly f1 = t - th;                       // t - theta
    MPoly f2 = t - th * th;                  // t - theta^2
    CHECK((f1 * f2).exact_div(f1) == f2);
    CHECK(MPoly::zero(F, vars).exact_div(f1) == MPoly::zero(F, vars));
    CHECK_THROWS_AS((f1 * f2 + MPoly::one(F, vars)).exact_div(f1), NonExactDivision);
}

TEST_CASE("divrem_in_var with monic divisors") {
    auto F = Fq::prime(2);
    VarList vars = make_vars(true, 1, true, false);
    std::mt19937_64 rng(7);
    for (int it = 0; it < 60; ++it) {
        MPoly a = random_mpoly(F, vars, 8, rng);
        // divisor Y^2 + theta (monic in Y)
        MPoly d = MPoly::monomial(F, vars, {0, 0, 2}, 1) + MPoly::var(F, vars, Var::theta());
        auto [q, r] = a.divrem_in_var(d, Var::Y());
        CHECK(q * d + r == a);
        Degree dr = r.deg_in(Var::Y());
        CHECK((!dr.finite || dr.v < 2));
    }
}

TEST_CASE("substitute is a ring homomorphism") {
    auto F = Fq::prime(3);
    VarList vars = make_vars(true, 2, false, false);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 50; ++it) {
        MPoly a = random_mpoly(F, vars, 4, rng);
        MPoly b = random_mpoly(F, vars, 4, rng);
        // bind t1 -> theta^2 + 1 (an MPolyK value)
        VarList tv = make_vars(true, 0, false, false);
        MPolyK val{MPoly::from_polyA(PolyA::from_coeffs(F, {1, 0, 1}), tv)};
        std::map<Var, MPolyK> bind{{Var::t(1), val}};
        CHECK(substitute(a * b, bind) == substitute(a, bind) * substitute(b, bind));
        CHECK(substitute(a + b, bind) == substitute(a, bind) + substitute(b, bind));
    }
    // unknown variable -> ArityMismatch
    MPoly a = random_mpoly(F, make_vars(true, 1, false, false), 3, rng);
    VarList tv = make_vars(true, 0, false, false);
    MPolyK val{MPoly::one(F, tv)};
    CHECK_THROWS_AS(substitute(a, {{Var::t(2), val}}), ArityMismatch);
}

TEST_CASE("MPoly serialization round-trips") {
    auto F4 = Fq::make_default(2, 2);
    VarList vars = make_vars(true, 2, true, false);
    std::mt19937_64 rng(23);
    for (int it = 0; it < 60; ++it) {
        MPoly a = random_mpoly(F4, vars, 6, rng);
        CHECK(MPoly::parse(F4, a.emit()) == a);
    }
}

TEST_CASE("MPolyK normalization: monic content-free denominator") {
    auto F = Fq::prime(3);
    VarList vars = make_vars(true, 1, false, false);
    PolyA den = PolyA::from_coeffs(F, {0, 2, 1});       // theta^2 + 2 theta
    MPoly num = MPoly::var(F, vars, Var::t(1));
    MPolyK f(num * MPoly::from_polyA(PolyA::from_coeffs(F, {0, 1}), vars), den); // t*theta/(theta^2+2theta)
    CHECK(f.den().is_monic());
    // theta cancels: den should be theta + 2
    CHECK(f.den() == PolyA::from_coeffs(F, {2, 1}));
    // rational normal form is literal: equal values give equal representations
    MPolyK g(num, PolyA::from_coeffs(F, {2, 1}));
    CHECK(f == g);
}

TEST_CASE("subst helpers") {
    auto F = Fq::prime(3);
    VarList vars = make_vars(true, 1, true, false);
    // b_2(Y) = (Y - theta)(Y - theta^3): vanishes at Y = theta
    MPoly b2 = (MPoly::var(F, vars, Var::Y()) - MPoly::var(F, vars, Var::theta())) *
               (MPoly::var(F, vars, Var::Y()) - MPoly::from_polyA(PolyA::theta_pow(F, 3), vars));
    MPoly ev = b2.subst_var_theta_pow(Var::Y(), 1);
    CHECK(ev.is_zero());
    MPoly sc = b2.subst_var_scalar(Var::t(1), 2); // t1 absent from terms: unchanged
    CHECK(sc == b2);
}
