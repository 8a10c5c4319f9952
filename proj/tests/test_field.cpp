#include <doctest.h>

#include "fzv/field.hpp"

using namespace fzv;

TEST_CASE("field axioms hold exhaustively for small q") {
    for (auto [p, e] : {std::pair<unsigned, unsigned>{2, 1}, {3, 1}, {5, 1}, {7, 1},
                        {2, 2}, {2, 3}, {3, 2}}) {
        auto F = Fq::make_default(p, e);
        const unsigned q = F->q();
        for (unsigned a = 0; a < q; ++a) {
            CHECK(F->add(a, 0) == a);
            CHECK(F->mul(a, 1) == a);
            CHECK(F->add(a, F->neg(a)) == 0);
            if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
            // Frobenius closes: a^q = a
            fq_el x = a;
            for (unsigned i = 0; i < e; ++i) x = F->frobenius(x);
            CHECK(x == a);
            for (unsigned b = 0; b < q; ++b) {
                CHECK(F->add(a, b) == F->add(b, a));
                CHECK(F->mul(a, b) == F->mul(b, a));
                for (unsigned c = 0; c < q; ++c) {
                    CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
                    CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
                    CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("x^q = x for every element, q <= 9") {
    for (auto [p, e] : {std::pair<unsigned, unsigned>{2, 1}, {3, 1}, {5, 1}, {7, 1},
                        {2, 2}, {2, 3}, {3, 2}}) {
        auto F = Fq::make_default(p, e);
        for (unsigned a = 0; a < F->q(); ++a)
            CHECK(F->pow(a, F->q()) == a);
    }
}

TEST_CASE("element serialization round-trips") {
    auto F4 = Fq::make_default(2, 2);
    for (unsigned a = 0; a < 4; ++a) {
        std::string s = F4->emit(static_cast<fq_el>(a));
        CHECK(s.size() == 2);
        CHECK(F4->parse(s) == a);
    }
    auto F5 = Fq::prime(5);
    CHECK(F5->emit(3) == "3");
    CHECK(F5->parse("4") == 4);
    CHECK_THROWS_AS(F5->parse("7"), ParseError);
}

TEST_CASE("bad moduli are rejected") {
    CHECK_THROWS_AS(Fq::make(2, 2, {0, 0, 1}), DomainError); // x^2 reducible
    CHECK_THROWS_AS(Fq::make(4, 1, {0, 1}), DomainError);    // p not prime
}
