#include "fzv/quot.hpp"

#include <algorithm>

namespace fzv {

QuotCtx::QuotCtx(PolyA P, bool certify) : F_(P.field()), P_(std::move(P)) {
    if (P_.is_zero() || !P_.is_monic()) throw DomainError("QuotCtx modulus must be monic");
    d_ = P_.deg_int();
    if (d_ < 1) throw DomainError("QuotCtx modulus must be nonconstant");
    q_ = F_->q();
    card_ = 1;
    for (long long i = 0; i < d_; ++i) card_ *= q_;
    if (certify && !is_irreducible(P_)) throw DomainError("QuotCtx modulus is reducible");

    frob_.reserve(static_cast<size_t>(d_) + 1);
    frob_.push_back(PolyA::theta(F_).divrem(P_).second);
    for (long long j = 1; j <= d_; ++j) {
        // previous^q mod P
        PolyA x = frob_.back().subst_theta_pow(q_).divrem(P_).second;
        frob_.push_back(std::move(x));
    }
    if (card_ <= kZechCap) build_zech();
    frob_el_.reserve(frob_.size());
    for (const auto& f : frob_) frob_el_.push_back(reduce(f));
}

std::vector<fq_el> QuotCtx::unpack(El a) const {
    std::vector<fq_el> v(static_cast<size_t>(d_));
    for (long long i = 0; i < d_; ++i) {
        v[static_cast<size_t>(i)] = static_cast<fq_el>(a % q_);
        a /= q_;
    }
    return v;
}

QuotCtx::El QuotCtx::pack(const std::vector<fq_el>& v) const {
    El a = 0;
    for (size_t i = v.size(); i-- > 0;) a = a * q_ + v[i];
    return a;
}

QuotCtx::El QuotCtx::reduce(const PolyA& a) const {
    PolyA r = a.divrem(P_).second;
    std::vector<fq_el> v(static_cast<size_t>(d_), 0);
    const auto& c = r.coeffs();
    std::copy(c.begin(), c.end(), v.begin());
    return pack(v);
}

PolyA QuotCtx::lift(El a) const {
    return PolyA::from_coeffs(F_, unpack(a));
}

QuotCtx::El QuotCtx::add(El a, El b) const {
    if (!addtab_.empty()) return addtab_[a * card_ + b];
    const Fq& F = *F_;
    El r = 0, w = 1;
    for (long long i = 0; i < d_; ++i) {
        r += static_cast<El>(F.add(static_cast<fq_el>(a % q_), static_cast<fq_el>(b % q_))) * w;
        a /= q_;
        b /= q_;
        w *= q_;
    }
    return r;
}

QuotCtx::El QuotCtx::neg(El a) const {
    const Fq& F = *F_;
    El r = 0, w = 1;
    for (long long i = 0; i < d_; ++i) {
        r += static_cast<El>(F.neg(static_cast<fq_el>(a % q_))) * w;
        a /= q_;
        w *= q_;
    }
    return r;
}

QuotCtx::El QuotCtx::sub(El a, El b) const { return add(a, neg(b)); }

QuotCtx::El QuotCtx::mul_generic(El a, El b) const {
    if (a == 0 || b == 0) return 0;
    PolyA pa = lift(a), pb = lift(b);
    return reduce(pa * pb);
}

QuotCtx::El QuotCtx::mul(El a, El b) const {
    if (a == 0 || b == 0) return 0;
    if (zech_) {
        std::uint64_t l = log_[a] + log_[b];
        if (l >= order_) l -= order_;
        return expc_[l];
    }
    return mul_generic(a, b);
}

QuotCtx::El QuotCtx::inv(El a) const {
    if (a == 0) throw NotAUnit("zero in A/P");
    if (zech_) {
        std::uint64_t l = log_[a];
        return expc_[l == 0 ? 0 : order_ - l];
    }
    PolyA u(F_), v(F_);
    PolyA g = PolyA::xgcd(lift(a), P_, u, v);
    if (!g.is_one()) throw NotAUnit("gcd(a, P) != 1");
    return reduce(u);
}

QuotCtx::El QuotCtx::pow(El a, long long n) const {
    if (zech_ && a != 0) {
        long long l = static_cast<long long>(log_[a]) % static_cast<long long>(order_);
        long long e = (l * (n % static_cast<long long>(order_))) % static_cast<long long>(order_);
        if (e < 0) e += order_;
        return expc_[static_cast<size_t>(e)];
    }
    if (n < 0) return pow(inv(a), -n);
    El r = 1, b = a;
    while (n > 0) {
        if (n & 1) r = mul(r, b);
        b = mul(b, b);
        n >>= 1;
    }
    return r;
}

void QuotCtx::build_zech() {
    order_ = card_ - 1;
    // find a multiplicative generator by direct cycle test
    expc_.assign(order_, 0);
    log_.assign(card_, 0);
    if (order_ == 1) {
        expc_[0] = 1;
        log_[1] = 0;
        zech_ = true;
    }
    for (El g = 2; g < card_ && !zech_; ++g) {
        El x = 1;
        std::uint64_t n = 0;
        bool ok = true;
        std::fill(log_.begin(), log_.end(), 0);
        for (; n < order_; ++n) {
            expc_[n] = static_cast<std::uint32_t>(x);
            if (x == 1 && n > 0) { ok = false; break; }
            log_[x] = static_cast<std::uint32_t>(n);
            x = mul_generic(x, g);
        }
        if (ok && x == 1) {
            zech_ = true;
            break;
        }
    }
    if (!zech_) throw DomainError("no generator found (modulus reducible?)");
    // dense addition table for small cardinalities
    if (card_ <= 4096) {
        addtab_.assign(card_ * card_, 0);
        for (El a = 0; a < card_; ++a) {
            for (El b = 0; b <= a; ++b) {
                const Fq& F = *F_;
                El r = 0, w = 1, aa = a, bb = b;
                for (long long i = 0; i < d_; ++i) {
                    r += static_cast<El>(F.add(static_cast<fq_el>(aa % q_), static_cast<fq_el>(bb % q_))) * w;
                    aa /= q_;
                    bb /= q_;
                    w *= q_;
                }
                addtab_[a * card_ + b] = static_cast<std::uint32_t>(r);
                addtab_[b * card_ + a] = static_cast<std::uint32_t>(r);
            }
        }
    }
}

bool is_irreducible(const PolyA& P) {
    if (P.is_zero()) return false;
    long long d = P.deg_int();
    if (d < 1) return false;
    if (d == 1) return true;
    const FqPtr& F = P.field();
    const unsigned q = F->q();
    // x = theta^{q^j} mod P by repeated q-th powering
    PolyA x = PolyA::theta(F).divrem(P).second;
    PolyA theta = PolyA::theta(F);
    for (long long j = 1; j <= d / 2; ++j) {
        x = x.subst_theta_pow(q).divrem(P).second;
        PolyA g = PolyA::gcd(x - theta, P);
        if (!g.is_one()) return false;
    }
    // belt: theta^{q^d} == theta mod P
    PolyA y = x;
    for (long long j = d / 2 + 1; j <= d; ++j) y = y.subst_theta_pow(q).divrem(P).second;
    return (y - theta).divrem(P).second.is_zero();
}

std::vector<PolyA> enumerate_irreducibles(const FqPtr& F, long long d) {
    if (d < 1) throw DomainError("enumerate_irreducibles needs d >= 1");
    const unsigned q = F->q();
    std::uint64_t total = 1;
    for (long long i = 0; i < d; ++i) total *= q;
    std::vector<PolyA> out;
    std::vector<fq_el> c(static_cast<size_t>(d) + 1, 0);
    c.back() = 1;
    for (std::uint64_t k = 0; k < total; ++k) {
        std::uint64_t kk = k;
        for (long long i = 0; i < d; ++i) {
            c[static_cast<size_t>(i)] = static_cast<fq_el>(kk % q);
            kk /= q;
        }
        PolyA P = PolyA::from_coeffs(F, c);
        if (is_irreducible(P)) out.push_back(std::move(P));
    }
    return out;
}

std::uint64_t count_irreducibles(unsigned q, long long d) {
    auto moebius = [](long long n) -> int {
        int m = 1;
        for (long long p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                m = -m;
            }
        }
        if (n > 1) m = -m;
        return m;
    };
    long long acc = 0;
    for (long long e = 1; e <= d; ++e) {
        if (d % e != 0) continue;
        int mu = moebius(d / e);
        if (mu == 0) continue;
        long long pw = 1;
        for (long long i = 0; i < e; ++i) pw *= q;
        acc += mu * pw;
    }
    return static_cast<std::uint64_t>(acc / d);
}

PolyA invert_mod(const PolyA& a, const QuotCtx& ctx) {
    PolyA r = a.divrem(ctx.modulus()).second;
    if (r.is_zero()) throw NotAUnit("a = 0 mod P");
    PolyA u(a.field()), v(a.field());
    PolyA g = PolyA::xgcd(r, ctx.modulus(), u, v);
    if (!g.is_one()) throw NotAUnit("gcd(a, P) != 1");
    return u.divrem(ctx.modulus()).second;
}

MPoly invert_mod(const MPoly& a, const QuotCtx& ctx) {
    // restricted to theta-reductions of a nonzero PolyA (no t-dependence)
    for (size_t i = 0; i < a.vars().size(); ++i) {
        Degree d = a.deg_in(a.vars()[i]);
        if (!(a.vars()[i] == Var::theta()) && d.finite && d.v > 0)
            throw DomainError("invert_mod: input depends on " + a.vars()[i].name());
    }
    auto slices = a.theta_slices();
    PolyA p = slices.empty() ? PolyA::zero(a.field()) : slices.begin()->second;
    PolyA inv = invert_mod(p, ctx);
    return MPoly::from_polyA(inv, a.vars());
}

} // namespace fzv
