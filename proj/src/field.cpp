#include "fzv/field.hpp"

#include <algorithm>

namespace fzv {

namespace {

// Multiply two F_p[x] polynomials given as digit vectors (constant first).
std::vector<unsigned> pmul(const std::vector<unsigned>& a, const std::vector<unsigned>& b, unsigned p) {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return c;
}

std::vector<unsigned> pmod(std::vector<unsigned> a, const std::vector<unsigned>& f, unsigned p) {
    // f monic of degree e
    const size_t e = f.size() - 1;
    while (a.size() > e) {
        unsigned lead = a.back();
        size_t sh = a.size() - 1 - e;
        if (lead != 0) {
            for (size_t j = 0; j <= e; ++j) {
                unsigned t = (lead * f[j]) % p;
                a[sh + j] = (a[sh + j] + p - t) % p;
            }
        }
        a.pop_back();
    }
    return a;
}

bool pdivides(const std::vector<unsigned>& g, const std::vector<unsigned>& a, unsigned p) {
    // does monic g divide a in F_p[x]?
    std::vector<unsigned> r = pmod(a, g, p);
    return std::all_of(r.begin(), r.end(), [](unsigned c) { return c == 0; });
}

bool is_irreducible_fp(const std::vector<unsigned>& f, unsigned p) {
    const size_t e = f.size() - 1;
    if (e == 0) return false;
    if (e == 1) return true;
    // exhaustive trial division by monic polynomials of degree 1..e/2
    for (size_t d = 1; 2 * d <= e; ++d) {
        std::vector<unsigned> g(d + 1, 0);
        g[d] = 1;
        // enumerate lower coefficients as base-p counter
        size_t total = 1;
        for (size_t i = 0; i < d; ++i) total *= p;
        for (size_t k = 0; k < total; ++k) {
            size_t kk = k;
            for (size_t i = 0; i < d; ++i) {
                g[i] = kk % p;
                kk /= p;
            }
            if (pdivides(g, f, p)) return false;
        }
    }
    return true;
}

} // namespace

Fq::Fq(unsigned p, unsigned e, std::vector<unsigned> f) : p_(p), e_(e), f_(std::move(f)) {
    q_ = 1;
    for (unsigned i = 0; i < e_; ++i) q_ *= p_;
    if (q_ > kMaxQ) throw DomainError("field size " + std::to_string(q_) + " exceeds table cap");
    build_tables();
}

void Fq::build_tables() {
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    frob_.assign(q_, 0);

    auto decode = [&](fq_el a) {
        std::vector<unsigned> c(e_);
        for (unsigned i = 0; i < e_; ++i) {
            c[i] = a % p_;
            a = static_cast<fq_el>(a / p_);
        }
        return c;
    };
    auto encode = [&](const std::vector<unsigned>& c) {
        unsigned a = 0, w = 1;
        for (unsigned i = 0; i < e_ && i < c.size(); ++i) {
            a += (c[i] % p_) * w;
            w *= p_;
        }
        return static_cast<fq_el>(a);
    };

    for (unsigned a = 0; a < q_; ++a) {
        auto ca = decode(static_cast<fq_el>(a));
        std::vector<unsigned> cn(e_);
        for (unsigned i = 0; i < e_; ++i) cn[i] = (p_ - ca[i]) % p_;
        neg_[a] = encode(cn);
        for (unsigned b = 0; b < q_; ++b) {
            auto cb = decode(static_cast<fq_el>(b));
            std::vector<unsigned> cs(e_);
            for (unsigned i = 0; i < e_; ++i) cs[i] = (ca[i] + cb[i]) % p_;
            add_[a * q_ + b] = encode(cs);
            auto prod = pmod(pmul(ca, cb, p_), f_, p_);
            mul_[a * q_ + b] = encode(prod);
        }
    }
    for (unsigned a = 1; a < q_; ++a) {
        for (unsigned b = 1; b < q_; ++b) {
            if (mul_[a * q_ + b] == 1) {
                inv_[a] = static_cast<fq_el>(b);
                break;
            }
        }
        if (inv_[a] == 0) throw DomainError("modulus is not irreducible: no inverse found");
    }
    for (unsigned a = 0; a < q_; ++a) {
        fq_el r = 1;
        for (unsigned i = 0; i < p_; ++i) r = mul_[r * q_ + a];
        frob_[a] = r;
    }
}

fq_el Fq::pow(fq_el a, long long n) const {
    if (n < 0) {
        a = inv(a);
        n = -n;
    }
    fq_el r = 1;
    while (n > 0) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

std::vector<unsigned> Fq::coords(fq_el a) const {
    std::vector<unsigned> c(e_);
    for (unsigned i = 0; i < e_; ++i) {
        c[i] = a % p_;
        a = static_cast<fq_el>(a / p_);
    }
    return c;
}

fq_el Fq::from_coords(const std::vector<unsigned>& c) const {
    unsigned a = 0, w = 1;
    for (unsigned i = 0; i < e_; ++i) {
        unsigned d = i < c.size() ? c[i] % p_ : 0;
        a += d * w;
        w *= p_;
    }
    return static_cast<fq_el>(a);
}

std::string Fq::emit(fq_el a) const {
    auto c = coords(a);
    std::string s;
    for (unsigned i = 0; i < e_; ++i) s += static_cast<char>('0' + c[i]);
    return s;
}

fq_el Fq::parse(const std::string& s) const {
    if (s.size() != e_) throw ParseError("F_q element '" + s + "': expected " + std::to_string(e_) + " digits");
    std::vector<unsigned> c(e_);
    for (unsigned i = 0; i < e_; ++i) {
        if (s[i] < '0' || s[i] >= static_cast<char>('0' + p_))
            throw ParseError("F_q element '" + s + "': digit out of range");
        c[i] = static_cast<unsigned>(s[i] - '0');
    }
    return from_coords(c);
}

std::shared_ptr<const Fq> Fq::prime(unsigned p) {
    return make(p, 1, {0, 1});
}

std::shared_ptr<const Fq> Fq::make(unsigned p, unsigned e, const std::vector<unsigned>& f) {
    if (p < 2) throw DomainError("p must be a prime >= 2");
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) throw DomainError("p = " + std::to_string(p) + " is not prime");
    if (f.size() != e + 1 || f.back() % p != 1) throw DomainError("modulus must be monic of degree e");
    std::vector<unsigned> fr(f);
    for (auto& c : fr) c %= p;
    if (e > 1 && !is_irreducible_fp(fr, p)) throw DomainError("modulus is reducible over F_p");
    return std::shared_ptr<const Fq>(new Fq(p, e, fr));
}

std::shared_ptr<const Fq> Fq::make_default(unsigned p, unsigned e) {
    if (e == 1) return prime(p);
    if (p == 2 && e == 2) return make(2, 2, {1, 1, 1});
    if (p == 2 && e == 3) return make(2, 3, {1, 1, 0, 1});
    if (p == 3 && e == 2) return make(3, 2, {1, 0, 1});
    throw DomainError("no default modulus for p=" + std::to_string(p) + ", e=" + std::to_string(e));
}

} // namespace fzv
