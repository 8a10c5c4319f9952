#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fzv/hpoly.hpp"
#include "fzv/carlitz.hpp"

using namespace fzv;

TEST_CASE("h parameters") {
    HParams p23 = h_params(2, 3);
    CHECK(p23.m == 2);
    CHECK(p23.mu == 1);
    HParams p24 = h_params(2, 4);
    CHECK(p24.m == 3);
    CHECK(p24.mu == 4);
    HParams p35 = h_params(3, 5);
    CHECK(p35.m == 2);
    CHECK(p35.mu == 2);
    HParams p59 = h_params(5, 9);
    CHECK(p59.m == 2);
    CHECK(p59.mu == 4);
    CHECK_THROWS_AS(h_params(3, 4), DomainError);
}

TEST_CASE("pi_factor examples") {
    auto F2 = Fq::prime(2);
    // q=2, s=2, d=2: (t1+theta)(t2+theta)/(theta+theta^2)
    MPolyK pi = pi_factor(F2, 2, 2);
    VarList vars = make_vars(true, 2, false, false);
    MPoly num = (MPoly::var(F2, vars, Var::t(1)) + MPoly::var(F2, vars, Var::theta())) *
                (MPoly::var(F2, vars, Var::t(2)) + MPoly::var(F2, vars, Var::theta()));
    CHECK(pi == MPolyK(num, PolyA::from_coeffs(F2, {0, 1, 1})));
    // d = m: 1/l_{m-1}
    MPolyK pi3 = pi_factor(F2, 3, 2);
    CHECK(pi3.num() == MPoly::one(F2, pi3.num().vars()));
    CHECK(pi3.den() == PolyA::from_coeffs(F2, {0, 1, 1})); // l_1
    // d=1, s=1: b_1(t1)/l_0 = t1 - theta
    auto F3 = Fq::prime(3);
    MPolyK pi11 = pi_factor(F3, 1, 1);
    VarList v1 = make_vars(true, 1, false, false);
    CHECK(pi11 == MPolyK(MPoly::var(F3, v1, Var::t(1)) - MPoly::var(F3, v1, Var::theta())));
    CHECK_THROWS_AS(pi_factor(F3, 2, 3), DomainError); // 2 != 1 mod 2
}

TEST_CASE("universal-relations coefficients: base case and the q-run collapse") {
    auto F3 = Fq::prime(3);
    // no q consecutive equal entries: single coefficient 1 at sum q^{j_i}
    auto c = univ_coeffs(F3, {0, 0, 1});
    REQUIRE(c.size() == 1);
    CHECK(c.count(5) == 1);
    CHECK(c.at(5) == MPoly::one(F3, c.at(5).vars()));
    // (0,0,0) for q=3: E_n^3 = E_n + [n+1]E_{n+1}: c_1 = 1, c_3 = Y^3 - theta
    auto c000 = univ_coeffs(F3, {0, 0, 0});
    REQUIRE(c000.size() == 2);
    VarList cy = merge_vars({Var::theta()}, {Var::Y()});
    CHECK(c000.at(1) == MPoly::one(F3, cy));
    CHECK(c000.at(3) == MPoly::monomial(F3, cy, {0, 3}, 1) - MPoly::var(F3, cy, Var::theta()));
}

TEST_CASE("universal relations verified against E-product expansion (q=2)") {
    auto F = Fq::prime(2);
    const CarlitzCache& C = carlitz(F);
    for (std::vector<unsigned> tuple : {std::vector<unsigned>{0, 0, 0}, {0, 1, 1}, {1, 1, 1}}) {
        auto tab = univ_coeffs(F, tuple);
        for (unsigned n = 0; n <= 2; ++n) {
            // LHS: prod E_{n+j}
            VarList vz = make_vars(true, 0, false, true);
            MPolyK lhs = MPolyK::one(F, vz);
            for (unsigned j : tuple) lhs = lhs * C.e_poly(n + j);
            // RHS: sum_i c_{j,i}(theta^{q^n}) G_{i 2^n}
            MPolyK rhs = MPolyK::zero(F, vz);
            for (const auto& [i, cpoly] : tab) {
                MPoly cv = cpoly.subst_var_theta_pow(Var::Y(), 1LL << n);
                rhs = rhs + C.g_poly(static_cast<unsigned long long>(i) << n) *
                                MPolyK(cv.compact().embed(make_vars(true, 0, false, false)));
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("h_row worked example: q=2, s=3, d=2 is e3 + theta e2 + theta e1 + theta^2") {
    auto F = Fq::prime(2);
    HTableRow row = h_row(F, 3, 2);
    VarList vars = make_vars(true, 3, false, false);
    VarList tv = make_vars(false, 3, false, false);
    MPoly th = MPoly::var(F, vars, Var::theta());
    MPoly expect = CarlitzCache::elem_sym(F, 3, tv).embed(vars) +
                   th * CarlitzCache::elem_sym(F, 2, tv).embed(vars) +
                   th * CarlitzCache::elem_sym(F, 1, tv).embed(vars) + th * th;
    CHECK(row.as_mpoly(F) == expect);
    CHECK(row.theta_degree == 2);
    CHECK(row.theta_lead == 1);
}

TEST_CASE("h_row: expand and grid routes agree") {
    for (unsigned q : {2u, 3u}) {
        auto F = Fq::prime(q);
        unsigned s = q == 2 ? 3 : 5;
        for (long long d : {2LL, 3LL}) {
            RowOptions oe, og;
            oe.route = "expand";
            og.route = "grid";
            HTableRow a = h_row(F, s, d, oe);
            HTableRow b = h_row(F, s, d, og);
            CHECK(a.same_coeffs(b));
        }
    }
}

TEST_CASE("h_row constants for s=q") {
    auto F3 = Fq::prime(3);
    for (long long d : {1LL, 2LL}) {
        HTableRow row = h_row(F3, 3, d);
        CHECK(row.theta_degree == 0);
        CHECK(row.as_mpoly(F3) == MPoly::one(F3, make_vars(true, 3, false, false)));
    }
}

TEST_CASE("h_interpolate and h_universal agree (small grid)") {
    for (auto [q, s] : {std::pair<unsigned, unsigned>{2, 2}, {2, 3}, {3, 3}}) {
        auto F = Fq::prime(q);
        HPolynomial Hi = h_interpolate(F, s);
        HPolynomial Hu = h_universal(F, s, {}, &Hi);
        CHECK(Hi == Hu);
        CHECK(Hi.mu() == h_params(q, s).mu);
        if (Hi.mu() > 0) CHECK(!Hi.y_coeff(static_cast<size_t>(Hi.mu())).empty());
    }
}

TEST_CASE("H_q is the constant 1 under the defining identity") {
    for (unsigned q : {2u, 3u}) {
        auto F = Fq::prime(q);
        HPolynomial H = h_interpolate(F, q);
        CHECK(H.mu() == 0);
        REQUIRE(H.y_slices().size() == 1);
        MPoly c = H.y_coeff_mpoly(0);
        CHECK(c == MPoly::one(F, c.vars()));
    }
}

TEST_CASE("Eq.(10): H_{2q-1} for q=3 matches the closed form") {
    auto F = Fq::prime(3);
    const unsigned s = 5;
    HPolynomial H = h_interpolate(F, s);
    VarList vars = make_vars(true, s, true, false);
    MPoly Y = MPoly::var(F, vars, Var::Y());
    MPoly prod = MPoly::one(F, vars);
    for (unsigned i = 1; i <= s; ++i) prod = prod * (MPoly::var(F, vars, Var::t(i)) - Y);
    MPoly e2 = MPoly::zero(F, vars);
    for (unsigned i = 1; i <= s; ++i)
        for (unsigned j = i + 1; j <= s; ++j)
            e2 = e2 + (MPoly::var(F, vars, Var::t(i)) - Y) * (MPoly::var(F, vars, Var::t(j)) - Y);
    MPoly closed = prod + (Y.pow(3) - MPoly::var(F, vars, Var::theta())) * e2;
    CHECK(H.as_mpoly() == closed);
    // Y^mu coefficient: e_q - theta (= -lambda_{1,2q-1})
    VarList tv = make_vars(false, s, false, false);
    MPoly top = H.y_coeff_mpoly(static_cast<size_t>(H.mu()));
    MPoly expect_top = CarlitzCache::elem_sym(F, 3, tv).embed(make_vars(true, s, false, false)) -
                       MPoly::var(F, make_vars(true, s, false, false), Var::theta());
    CHECK(top == expect_top);
}

TEST_CASE("holdout evaluation equals rows for extra d") {
    auto F = Fq::prime(2);
    HPolynomial H = h_interpolate(F, 3);
    for (long long d = 2; d <= 6; ++d) {
        HTableRow row = h_row(F, 3, d);
        CHECK(H.eval_at_frob(d - H.m()) == row.coeffs);
    }
}

TEST_CASE("h_restrict: corner coefficients and the s=q trivial case") {
    auto F = Fq::prime(2);
    HPolynomial H3 = h_interpolate(F, 3);
    MPoly r0 = h_restrict(H3, 0); // extract coefficient of t1 t2 t3
    CHECK(!r0.is_zero());
    for (unsigned j = 1; j <= 3; ++j) {
        Degree dj = r0.deg_in(Var::t(j));
        CHECK((!dj.finite || dj.v == 0));
    }
    HPolynomial H2 = h_interpolate(F, 2); // s=q=2, m=1: restriction exponent 0
    MPoly r1 = h_restrict(H2, 1);
    CHECK(r1 == MPoly::one(F, r1.vars()));
}

TEST_CASE("Theorem 5: power sums via H") {
    auto F = Fq::prime(2);
    HPolynomial H = h_interpolate(F, 3); // s = 3 = 2q-1, m = 2
    for (unsigned sp = 0; sp < 3; ++sp) {
        for (long long d = 1; d <= 3; ++d) {
            CHECK(verify_theorem5(H, sp, d));
            MPolyK via = power_sum_via_h(H, sp, d);
            MPolyK direct = power_sum(SumSpec{F, 1, sp, d, 1});
            CHECK(via == direct);
        }
    }
    // m = 1 family: S_d(1;s') = prod b_d(t_i)/l_d for s' < q
    auto F3 = Fq::prime(3);
    HPolynomial Hq = h_interpolate(F3, 3);
    for (unsigned sp = 0; sp < 3; ++sp)
        for (long long d = 0; d <= 2; ++d) CHECK(verify_theorem5(Hq, sp, d));
}

TEST_CASE("interp_crosscheck section-2.2 identities") {
    for (unsigned q : {2u, 3u}) {
        auto F = Fq::prime(q);
        for (long long d : {1LL, 2LL}) {
            for (unsigned s : {1u, 2u, 3u}) {
                InterpReport rep = interp_crosscheck(F, s, d);
                CHECK(rep.interpolates);
                CHECK(rep.divisible);
                CHECK(rep.extraction);
            }
        }
    }
}

TEST_CASE("Lemma 3 utility: (Y^{q^M}-theta) divisibility via exact division") {
    auto F = Fq::prime(2);
    VarList vars = make_vars(true, 1, true, false);
    const long long M = 1;
    MPoly fac = MPoly::monomial(F, vars, {0, 0, 1u << M}, 1) - MPoly::var(F, vars, Var::theta());
    MPoly V = MPoly::var(F, vars, Var::t(1)) * MPoly::var(F, vars, Var::Y()) + MPoly::one(F, vars);
    MPoly U = fac * V;
    CHECK(U.exact_div(fac) == V);
    for (long long d : {2LL, 3LL}) {
        MPoly Ud = U.subst_var_theta_pow(Var::Y(), 1LL << d);
        PolyA div = PolyA::theta_pow(F, 1LL << (d + M)) - PolyA::theta(F);
        for (auto& [te, p] : Ud.theta_slices()) CHECK(p.divrem(div).second.is_zero());
    }
    MPoly W = U + MPoly::one(F, vars);
    CHECK_THROWS_AS(W.exact_div(fac), NonExactDivision);
    MPoly Wd = W.subst_var_theta_pow(Var::Y(), 1LL << 3);
    PolyA div = PolyA::theta_pow(F, 1LL << 4) - PolyA::theta(F);
    bool all_div = true;
    for (auto& [te, p] : Wd.theta_slices())
        if (!p.divrem(div).second.is_zero()) all_div = false;
    CHECK(!all_div);
}

TEST_CASE("cache round-trip, write-once and holdout verification") {
    auto F = Fq::prime(2);
    HPolynomial H = h_interpolate(F, 3);
    std::string dir = "build/test_cache";
    std::filesystem::remove_all(dir);
    h_cache_write(dir, H);
    auto loaded = h_cache_load(F, dir, 3, true);
    REQUIRE(loaded.has_value());
    CHECK(*loaded == H);
    h_cache_write(dir, H); // idempotent second write
    // tampering is detected
    std::string path = h_cache_path(dir, F, 3);
    {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        size_t pos = text.find("body:");
        REQUIRE(pos != std::string::npos);
        text[pos + 9] = text[pos + 9] == '1' ? '0' : '1';
        std::ofstream out(path);
        out << text;
    }
    CHECK_THROWS(h_cache_load(F, dir, 3, false));
    std::filesystem::remove_all(dir);
}
