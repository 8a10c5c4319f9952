#include "fzv/carlitz.hpp"

#include <algorithm>

namespace fzv {

DigitProfile digit_profile(unsigned q, unsigned long long n) {
    DigitProfile r{n, {}, 0};
    unsigned long long m = n;
    while (m > 0) {
        unsigned d = static_cast<unsigned>(m % q);
        r.digits.push_back(d);
        r.ell += d;
        m /= q;
    }
    return r;
}

PolyA CarlitzCache::bracket(unsigned n) const {
    if (n == 0) return PolyA::one(F_);
    long long Q = 1;
    for (unsigned i = 0; i < n; ++i) Q *= F_->q();
    return PolyA::theta_pow(F_, Q) - PolyA::theta(F_);
}

PolyA CarlitzCache::l_seq(unsigned n) const {
    std::lock_guard<std::mutex> lk(mu_);
    if (l_.empty()) l_.push_back(PolyA::one(F_));
    while (l_.size() <= n)
        l_.push_back(-(bracket(static_cast<unsigned>(l_.size())) * l_.back()));
    return l_[n];
}

PolyA CarlitzCache::d_seq(unsigned n) const {
    std::lock_guard<std::mutex> lk(mu_);
    if (D_.empty()) D_.push_back(PolyA::one(F_));
    while (D_.size() <= n) {
        unsigned k = static_cast<unsigned>(D_.size());
        D_.push_back(bracket(k) * D_.back().pow(F_->q()));
    }
    return D_[n];
}

PolyA CarlitzCache::carlitz_factorial(unsigned long long n) const {
    DigitProfile dp = digit_profile(F_->q(), n);
    PolyA r = PolyA::one(F_);
    for (size_t i = 0; i < dp.digits.size(); ++i) {
        for (unsigned k = 0; k < dp.digits[i]; ++k) r = r * d_seq(static_cast<unsigned>(i));
    }
    return r;
}

MPoly CarlitzCache::b_poly(unsigned n, Var v) const {
    int key = (static_cast<int>(v.kind) << 16) | v.idx;
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = b_.find({key, n});
        if (it != b_.end()) return it->second;
    }
    VarList vars = merge_vars({Var::theta()}, {v});
    MPoly r = MPoly::one(F_, vars);
    long long Q = 1;
    for (unsigned i = 0; i < n; ++i) {
        MPoly f = MPoly::var(F_, vars, v) - MPoly::from_polyA(PolyA::theta_pow(F_, Q), vars);
        r = r * f;
        Q *= F_->q();
    }
    std::lock_guard<std::mutex> lk(mu_);
    b_.emplace(std::make_pair(key, n), r);
    return r;
}

MPoly CarlitzCache::de_poly(unsigned i) const {
    // D_i E_i(z) = sum_j (D_i / (D_j l_{i-j}^{q^j})) z^{q^j}; the divisions are
    // exact in A, which this computation re-verifies
    VarList vars = merge_vars({Var::theta()}, {Var::z()});
    PolyA Di = d_seq(i);
    MPoly acc = MPoly::zero(F_, vars);
    long long Qj = 1;
    for (unsigned j = 0; j <= i; ++j) {
        PolyA den = d_seq(j) * l_seq(i - j).pow(Qj);
        PolyA c = Di.exact_div(den);
        MPoly zt = MPoly::monomial(F_, vars, {0, static_cast<std::uint32_t>(Qj)}, 1);
        acc = acc + zt * MPoly::from_polyA(c, vars);
        Qj *= F_->q();
    }
    return acc;
}

MPolyK CarlitzCache::e_poly(unsigned i) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = E_.find(i);
        if (it != E_.end()) return it->second;
    }
    MPolyK r(de_poly(i), d_seq(i));
    std::lock_guard<std::mutex> lk(mu_);
    E_.emplace(i, r);
    return r;
}

MPolyK CarlitzCache::g_poly(unsigned long long n) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = G_.find(n);
        if (it != G_.end()) return it->second;
    }
    DigitProfile dp = digit_profile(F_->q(), n);
    VarList vars = merge_vars({Var::theta()}, {Var::z()});
    MPolyK r = MPolyK::one(F_, vars);
    for (size_t i = 0; i < dp.digits.size(); ++i) {
        for (unsigned k = 0; k < dp.digits[i]; ++k)
            r = r * e_poly(static_cast<unsigned>(i));
    }
    std::lock_guard<std::mutex> lk(mu_);
    G_.emplace(n, r);
    return r;
}

MPoly CarlitzCache::elem_sym(const FqPtr& F, unsigned j, const VarList& vars) {
    if (j > vars.size()) throw IndexOutOfRange("elem_sym: j > number of variables");
    // DP over variables: e_j(x_1..x_k) = e_j(..x_{k-1}) + x_k e_{j-1}(..x_{k-1})
    std::vector<MPoly> e(j + 1, MPoly::zero(F, vars));
    e[0] = MPoly::one(F, vars);
    for (const Var& v : vars) {
        MPoly xv = MPoly::var(F, vars, v);
        for (unsigned k = std::min<size_t>(j, vars.size()); k >= 1; --k) {
            e[k] = e[k] + xv * e[k - 1];
        }
    }
    return e[j];
}

FracK CarlitzCache::bc_number(unsigned long long j, unsigned long long precision) const {
    if (j > precision) throw PrecisionExceeded("BC_" + std::to_string(j) + " beyond order " + std::to_string(precision));
    std::lock_guard<std::mutex> lk(mu_);
    auto d_unlocked = [&](size_t i) -> const PolyA& {
        if (D_.empty()) D_.push_back(PolyA::one(F_));
        while (D_.size() <= i) {
            unsigned m = static_cast<unsigned>(D_.size());
            D_.push_back(bracket(m) * D_.back().pow(F_->q()));
        }
        return D_[i];
    };
    if (bc_.empty()) {
        bc_.push_back(FracK::one(F_));
        bc_hi_ = 0;
    }
    // series U(z) = sum_i z^{q^i-1}/D_i has constant term 1; long division:
    // c_k = -sum_{i>=1, q^i-1<=k} c_{k-(q^i-1)} / D_i
    while (bc_hi_ < j) {
        unsigned long long k = bc_hi_ + 1;
        FracK c = FracK::zero(F_);
        unsigned long long Qi = static_cast<unsigned long long>(F_->q());
        unsigned i = 1;
        while (Qi - 1 <= k) {
            c = c - bc_[static_cast<size_t>(k - (Qi - 1))] * FracK(PolyA::one(F_), d_unlocked(i));
            Qi *= F_->q();
            ++i;
        }
        bc_.push_back(c);
        bc_hi_ = k;
    }
    // BC_j = Pi_j * c_j
    FracK cj = bc_[static_cast<size_t>(j)];
    PolyA Pi = PolyA::one(F_);
    DigitProfile dp = digit_profile(F_->q(), j);
    for (size_t i = 0; i < dp.digits.size(); ++i)
        for (unsigned t = 0; t < dp.digits[i]; ++t) Pi = Pi * d_unlocked(i);
    return cj * FracK(Pi);
}

QuotCtx::El CarlitzCache::d_seq_mod(unsigned i, const QuotCtx& ctx) const {
    // theta^{q^k} mod P = frobenius_theta(k mod d) since theta^{q^d} = theta mod P
    QuotCtx::El D = ctx.one();
    const unsigned q = ctx.field()->q();
    const long long d = ctx.degree();
    for (unsigned k = 1; k <= i; ++k) {
        QuotCtx::El br = ctx.sub(ctx.frobenius_theta_el(static_cast<size_t>(k % d)), ctx.theta());
        D = ctx.mul(ctx.pow(D, q), br);
    }
    return D;
}

PolyA CarlitzCache::bc_number_mod(unsigned long long j, const QuotCtx& ctx) const {
    // require j < q^{deg P} - 1 so every D_i in the truncated series is a unit mod P
    if (j + 1 >= ctx.card())
        throw PrecisionExceeded("bc_number_mod: j >= q^deg(P) - 1");
    const unsigned q = ctx.field()->q();
    std::vector<QuotCtx::El> c(static_cast<size_t>(j) + 1, ctx.zero());
    c[0] = ctx.one();
    std::vector<QuotCtx::El> invD;
    for (unsigned long long Qi = 1; Qi - 1 <= j; Qi *= q)
        invD.push_back(ctx.inv(d_seq_mod(static_cast<unsigned>(invD.size()), ctx)));
    for (unsigned long long k = 1; k <= j; ++k) {
        QuotCtx::El acc = ctx.zero();
        unsigned long long Qi = q;
        unsigned i = 1;
        while (Qi - 1 <= k) {
            acc = ctx.sub(acc, ctx.mul(invD.at(i), c[static_cast<size_t>(k - (Qi - 1))]));
            Qi *= q;
            ++i;
        }
        c[static_cast<size_t>(k)] = acc;
    }
    // Pi_j mod P
    QuotCtx::El Pi = ctx.one();
    DigitProfile dp = digit_profile(q, j);
    for (size_t i = 0; i < dp.digits.size(); ++i)
        for (unsigned t = 0; t < dp.digits[i]; ++t)
            Pi = ctx.mul(Pi, d_seq_mod(static_cast<unsigned>(i), ctx));
    return ctx.lift(ctx.mul(Pi, c[static_cast<size_t>(j)]));
}

const CarlitzCache& carlitz(const FqPtr& F) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<CarlitzCache>> reg;
    std::string key = std::to_string(F->p()) + "^" + std::to_string(F->e()) + ":";
    for (unsigned c : F->modulus()) key += std::to_string(c) + ",";
    std::lock_guard<std::mutex> lk(mu);
    auto it = reg.find(key);
    if (it == reg.end()) it = reg.emplace(key, std::make_unique<CarlitzCache>(F)).first;
    return *it->second;
}

} // namespace fzv
