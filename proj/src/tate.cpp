#include "fzv/tate.hpp"

#include <algorithm>

namespace fzv {

namespace {

long long qpow(unsigned q, long long e) {
    long long r = 1;
    while (e-- > 0) r *= q;
    return r;
}

long long sat_add(long long a, long long b) {
    if (a <= TruncLaurent::kExact || b <= TruncLaurent::kExact) return TruncLaurent::kExact;
    return a + b;
}

} // namespace

TruncLaurent::TruncLaurent(FqPtr F, unsigned s, long long floor, std::uint32_t tcap)
    : F_(std::move(F)), s_(s), floor_(floor), tcap_(tcap) {}

TruncLaurent TruncLaurent::from_poly(const PolyA& p, unsigned s, long long floor, std::uint32_t tcap) {
    TruncLaurent r(p.field(), s, floor, tcap);
    TExp zero(s, 0);
    const auto& c = p.coeffs();
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0 && static_cast<long long>(i) >= floor) r.terms_[zero][static_cast<long long>(i)] = c[i];
    return r;
}

TruncLaurent TruncLaurent::from_mpoly(const MPoly& f, unsigned s, long long floor, std::uint32_t tcap) {
    VarList vars = merge_vars(make_vars(true, s, false, false), f.vars());
    MPoly g = f.embed(vars);
    TruncLaurent r(f.field(), s, floor, tcap);
    for (const auto& t : g.terms()) {
        TExp te(s);
        bool keep = static_cast<long long>(t.e[0]) >= floor;
        for (unsigned j = 0; j < s; ++j) {
            te[j] = t.e[j + 1];
            if (te[j] > tcap) keep = false;
        }
        if (keep) r.terms_[te][t.e[0]] = t.c;
    }
    return r;
}

size_t TruncLaurent::term_count() const {
    size_t n = 0;
    for (const auto& [te, row] : terms_) n += row.size();
    return n;
}

void TruncLaurent::set(const TExp& te, long long e, fq_el c) {
    if (c == 0 || e < floor_) return;
    for (unsigned j = 0; j < s_; ++j)
        if (te[j] > tcap_) return;
    terms_[te][e] = c;
}

fq_el TruncLaurent::coeff(const TExp& te, long long e) const {
    auto it = terms_.find(te);
    if (it == terms_.end()) return 0;
    auto jt = it->second.find(e);
    return jt == it->second.end() ? 0 : jt->second;
}

TruncLaurent TruncLaurent::operator+(const TruncLaurent& o) const {
    const Fq& f = *(F_ ? F_ : o.F_);
    TruncLaurent r(F_ ? F_ : o.F_, s_, std::max(floor_, o.floor_), std::min(tcap_, o.tcap_));
    r.terms_ = terms_;
    for (const auto& [te, row] : o.terms_) {
        auto& dst = r.terms_[te];
        for (const auto& [e, c] : row) {
            fq_el v = f.add(dst.count(e) ? dst[e] : 0, c);
            if (v == 0) dst.erase(e);
            else dst[e] = v;
        }
        if (dst.empty()) r.terms_.erase(te);
    }
    // prune below the merged floor / above the merged cap
    for (auto it = r.terms_.begin(); it != r.terms_.end();) {
        bool drop = false;
        for (unsigned j = 0; j < r.s_; ++j)
            if (it->first[j] > r.tcap_) drop = true;
        if (!drop) {
            auto& row = it->second;
            for (auto jt = row.begin(); jt != row.end() && jt->first < r.floor_;)
                jt = row.erase(jt);
        }
        if (drop || it->second.empty()) it = r.terms_.erase(it);
        else ++it;
    }
    return r;
}

TruncLaurent TruncLaurent::operator-() const {
    const Fq& f = *F_;
    TruncLaurent r = *this;
    for (auto& [te, row] : r.terms_)
        for (auto& [e, c] : row) c = f.neg(c);
    return r;
}

TruncLaurent TruncLaurent::operator-(const TruncLaurent& o) const { return *this + (-o); }

TruncLaurent TruncLaurent::scale(fq_el c) const {
    const Fq& f = *F_;
    TruncLaurent r(F_, s_, floor_, tcap_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [te, row] : r.terms_)
        for (auto& [e, x] : row) x = f.mul(x, c);
    return r;
}

TruncLaurent TruncLaurent::mul_theta_pow(long long k) const {
    TruncLaurent r(F_, s_, sat_add(floor_, k), tcap_);
    for (const auto& [te, row] : terms_) {
        auto& dst = r.terms_[te];
        for (const auto& [e, c] : row) dst[e + k] = c;
    }
    return r;
}

TruncLaurent TruncLaurent::truncated(long long floor, std::uint32_t tcap) const {
    TruncLaurent r(F_, s_, std::max(floor, floor_), std::min(tcap, tcap_));
    for (const auto& [te, row] : terms_) {
        bool drop = false;
        for (unsigned j = 0; j < s_; ++j)
            if (te[j] > r.tcap_) drop = true;
        if (drop) continue;
        auto& dst = r.terms_[te];
        for (const auto& [e, c] : row)
            if (e >= r.floor_) dst[e] = c;
        if (dst.empty()) r.terms_.erase(te);
    }
    return r;
}

TruncLaurent TruncLaurent::operator*(const TruncLaurent& o) const {
    const Fq& f = *F_;
    // unknown parts: eps_a * B (below floor_a + top_b) and A * eps_b
    long long topa = LLONG_MIN, topb = LLONG_MIN;
    for (const auto& [te, row] : terms_)
        if (!row.empty()) topa = std::max(topa, row.rbegin()->first);
    for (const auto& [te, row] : o.terms_)
        if (!row.empty()) topb = std::max(topb, row.rbegin()->first);
    long long nf = TruncLaurent::kExact;
    if (floor_ > kExact) nf = std::max(nf, topb == LLONG_MIN ? floor_ : sat_add(floor_, topb));
    if (o.floor_ > kExact) nf = std::max(nf, topa == LLONG_MIN ? o.floor_ : sat_add(o.floor_, topa));
    TruncLaurent r(F_, s_, nf, std::min(tcap_, o.tcap_));
    for (const auto& [ta, rowa] : terms_) {
        for (const auto& [tb, rowb] : o.terms_) {
            TExp te(s_);
            bool ok = true;
            for (unsigned j = 0; j < s_; ++j) {
                te[j] = ta[j] + tb[j];
                if (te[j] > r.tcap_) { ok = false; break; }
            }
            if (!ok) continue;
            auto& dst = r.terms_[te];
            for (const auto& [ea, ca] : rowa) {
                for (const auto& [eb, cb] : rowb) {
                    long long e = ea + eb;
                    if (e < r.floor_) continue;
                    fq_el v = f.add(dst.count(e) ? dst[e] : 0, f.mul(ca, cb));
                    if (v == 0) dst.erase(e);
                    else dst[e] = v;
                }
            }
            if (dst.empty()) r.terms_.erase(te);
        }
    }
    return r;
}

TruncLaurent TruncLaurent::mul_geom_inv_t(unsigned j, long long E) const {
    // Y = X + t_j theta^{-E} Y, solved level by level in the t_j-exponent
    if (j >= s_) throw IndexOutOfRange("mul_geom_inv_t variable index");
    if (floor_ <= kExact) throw DomainError("mul_geom_inv_t needs a finite precision floor");
    const Fq& f = *F_;
    TruncLaurent r = *this;
    for (std::uint32_t k = 1; k <= tcap_ && k < (1u << 24); ++k) {
        std::vector<std::pair<TExp, std::map<long long, fq_el>>> updates;
        bool source = false, higher = false;
        for (const auto& [te, row] : r.terms_) {
            if (te[j] >= k) higher = true;
            if (te[j] != k - 1) continue;
            source = true;
            TExp nt = te;
            ++nt[j];
            std::map<long long, fq_el> add;
            for (const auto& [e, c] : row) {
                long long ne = e - E;
                if (ne >= floor_) add[ne] = c;
            }
            if (!add.empty()) updates.emplace_back(std::move(nt), std::move(add));
        }
        for (auto& [nt, add] : updates) {
            auto& dst = r.terms_[nt];
            for (const auto& [e, c] : add) {
                fq_el v = f.add(dst.count(e) ? dst[e] : 0, c);
                if (v == 0) dst.erase(e);
                else dst[e] = v;
            }
            if (dst.empty()) r.terms_.erase(nt);
        }
        if (!source && !higher) break;
    }
    return r;
}

TruncLaurent TruncLaurent::mul_poly(const PolyA& p) const {
    TruncLaurent r(F_, s_, floor_, tcap_);
    const Fq& f = *F_;
    const auto& c = p.coeffs();
    // adjust floor: multiplying by an exact polynomial of degree D means the
    // unknown part can reach floor_ + D
    if (floor_ > kExact && !p.is_zero()) r.floor_ = floor_ + p.deg_int();
    for (const auto& [te, row] : terms_) {
        auto& dst = r.terms_[te];
        for (const auto& [e, x] : row) {
            for (size_t i = 0; i < c.size(); ++i) {
                if (c[i] == 0) continue;
                long long ne = e + static_cast<long long>(i);
                if (ne < r.floor_) continue;
                fq_el v = f.add(dst.count(ne) ? dst[ne] : 0, f.mul(x, c[i]));
                if (v == 0) dst.erase(ne);
                else dst[ne] = v;
            }
        }
        if (dst.empty()) r.terms_.erase(te);
    }
    return r;
}

TruncLaurent TruncLaurent::mul_poly_inv(const PolyA& p) const {
    if (p.is_zero()) throw DomainError("mul_poly_inv by zero");
    const Fq& f = *F_;
    const long long D = p.deg_int();
    const fq_el lcinv = f.inv(p.lc());
    // 1/p = lcinv theta^{-D} (1 - v)^{-1}, v = -(lower terms)/lc shifted:
    // Y = X + v Y with v-exponents < 0 -> per-key descending sweep
    TruncLaurent x = mul_theta_pow(-D).scale(lcinv);
    // v terms: for i < D, coefficient -p[i]*lcinv at exponent i - D
    std::vector<std::pair<long long, fq_el>> v;
    for (long long i = 0; i < D; ++i) {
        fq_el c = p.coeffs()[static_cast<size_t>(i)];
        if (c != 0) v.push_back({i - D, f.neg(f.mul(c, lcinv))});
    }
    if (x.floor_ <= kExact)
        throw DomainError("mul_poly_inv needs a finite precision floor");
    TruncLaurent r(F_, s_, x.floor_, x.tcap_);
    for (const auto& [te, row] : x.terms_) {
        // dense sweep over the exponent window
        if (row.empty()) continue;
        long long hi = row.rbegin()->first;
        long long lo = x.floor_;
        std::vector<fq_el> buf(static_cast<size_t>(hi - lo + 1), 0);
        for (const auto& [e, c] : row) buf[static_cast<size_t>(e - lo)] = c;
        for (long long e = hi; e >= lo; --e) {
            fq_el cur = buf[static_cast<size_t>(e - lo)];
            if (cur == 0) continue;
            for (const auto& [ev, cv] : v) {
                long long ne = e + ev;
                if (ne < lo) continue;
                size_t idx = static_cast<size_t>(ne - lo);
                buf[idx] = f.add(buf[idx], f.mul(cur, cv));
            }
        }
        auto& dst = r.terms_[te];
        for (long long e = lo; e <= hi; ++e)
            if (buf[static_cast<size_t>(e - lo)] != 0) dst[e] = buf[static_cast<size_t>(e - lo)];
        if (dst.empty()) r.terms_.erase(te);
    }
    return r;
}

std::optional<long long> TruncLaurent::top_exponent() const {
    std::optional<long long> top;
    for (const auto& [te, row] : terms_) {
        if (row.empty()) continue;
        long long e = row.rbegin()->first;
        if (!top || e > *top) top = e;
    }
    return top;
}

MPoly TruncLaurent::nonneg_part() const {
    VarList vars = make_vars(true, s_, false, false);
    MPoly::Builder b(F_, vars);
    for (const auto& [te, row] : terms_) {
        for (const auto& [e, c] : row) {
            if (e < 0) continue;
            MPoly::Exp ee{};
            ee[0] = static_cast<std::uint32_t>(e);
            for (unsigned j = 0; j < s_; ++j) ee[j + 1] = te[j];
            b.add(ee, c);
        }
    }
    return b.build();
}

TruncLaurent TruncLaurent::negative_part() const {
    TruncLaurent r(F_, s_, floor_, tcap_);
    for (const auto& [te, row] : terms_) {
        auto& dst = r.terms_[te];
        for (const auto& [e, c] : row)
            if (e < 0) dst[e] = c;
        if (dst.empty()) r.terms_.erase(te);
    }
    return r;
}

bool TruncLaurent::same_known(const TruncLaurent& o) const {
    long long fl = std::max(floor_, o.floor_);
    auto collect = [&](const TruncLaurent& x) {
        std::map<std::pair<TExp, long long>, fq_el> m;
        for (const auto& [te, row] : x.terms_)
            for (const auto& [e, c] : row)
                if (e >= fl) m[{te, e}] = c;
        return m;
    };
    return collect(*this) == collect(o);
}

// ---- omega / pi~ model ----

TruncLaurent omega_over_pi(const FqPtr& F, unsigned s, long long floor, std::uint32_t tcap) {
    const unsigned q = F->q();
    HParams par = h_params(q, s);
    const unsigned m = par.m;
    // exact head: (-theta)^m theta^{-1} prod_{i=1}^{imax} (1 - theta^{1-q^i})
    long long span = -floor + 4;
    TruncLaurent acc(F, s, floor, tcap);
    {
        TExp z(s, 0);
        acc.set(z, static_cast<long long>(m) - 1, F->from_int(m % 2 == 0 ? 1 : -1));
    }
    for (unsigned i = 1;; ++i) {
        long long drop = qpow(q, i) - 1; // factor (1 - theta^{1-q^i}) shifts by -(q^i - 1)
        if (drop > span) break;
        // multiply by (1 - theta^{1-q^i})
        TruncLaurent shifted = acc.mul_theta_pow(1 - qpow(q, i));
        acc = acc - shifted;
    }
    // divide by prod_{i>=0} prod_j (1 - t_j theta^{-q^i})
    for (unsigned i = 0;; ++i) {
        long long E = qpow(q, i);
        if (E > span) break;
        for (unsigned j = 0; j < s; ++j) acc = acc.mul_geom_inv_t(j, E);
    }
    return acc;
}

// ---- Lemma: pi~_d / prod omega_{d-m}(t_j) = -(-theta)^{delta-m+1} prod b / l ----

bool lemma_ident_check(const FqPtr& F, unsigned s, long long d) {
    const unsigned q = F->q();
    HParams par = h_params(q, s);
    const unsigned m = par.m;
    if (d < m) throw DomainError("lemma_ident_check needs d >= m");
    const CarlitzCache& C = carlitz(F);
    // LHS * denominators = RHS * denominators, all exact Laurent polynomials:
    // theta (-theta)^{-m} prod_j prod_{i=0}^{d-m-1} (1 - t_j theta^{-q^i}) * l_{d-1}
    //   == -(-theta)^{delta_{s,d}-m+1} prod_j b_{d-m}(t_j) * prod_{i=1}^{d-1}(1 - theta^{1-q^i})
    TruncLaurent lhs = TruncLaurent::from_poly(C.l_seq(static_cast<unsigned>(d - 1)), s);
    lhs = lhs.mul_theta_pow(1 - static_cast<long long>(m));
    if (m % 2 == 1) lhs = lhs.scale(F->from_int(-1));
    for (long long i = 0; i < d - static_cast<long long>(m); ++i) {
        long long E = qpow(q, i);
        for (unsigned j = 0; j < s; ++j) {
            // multiply by (1 - t_j theta^{-E})
            TruncLaurent tj(F, s);
            TExp te(s, 0);
            te[j] = 1;
            tj.set(te, -E, 1);
            TruncLaurent one(F, s);
            one.set(TExp(s, 0), 0, 1);
            lhs = lhs * (one - tj);
        }
    }
    long long delta = static_cast<long long>(m) - 1 + par.mu * qpow(q, d - m);
    long long epow = delta - static_cast<long long>(m) + 1;
    TruncLaurent rhs(F, s);
    {
        // -(-1)^{epow} theta^{epow}
        fq_el c = F->from_int(epow % 2 == 0 ? -1 : 1);
        rhs.set(TExp(s, 0), epow, c);
    }
    for (unsigned j = 0; j < s; ++j) {
        MPoly bj = C.b_poly(static_cast<unsigned>(d - m), Var::t(j + 1));
        rhs = rhs * TruncLaurent::from_mpoly(bj, s);
    }
    for (long long i = 1; i < d; ++i) {
        TruncLaurent one(F, s);
        one.set(TExp(s, 0), 0, 1);
        TruncLaurent sh(F, s);
        sh.set(TExp(s, 0), 1 - qpow(q, i), 1);
        rhs = rhs * (one - sh);
    }
    return lhs.same_known(rhs);
}

// ---- Gamma series ----

GammaSeries gamma_series(const FqPtr& F, unsigned s, unsigned upto) {
    const unsigned q = F->q();
    HParams par = h_params(q, s);
    GammaSeries G;
    G.s = s;
    G.m = par.m;
    VarList vars = make_vars(true, s, false, false);
    auto zero = [&]() { return MPoly::zero(F, vars); };
    auto one = [&]() { return MPoly::one(F, vars); };

    auto digits01 = [&](unsigned long long n) {
        while (n > 0) {
            if (n % q > 1) return false;
            n /= q;
        }
        return true;
    };
    // f = prod_j sum'_{n_j} (-t_j)^{l(n_j)} Y^{n_j}
    std::vector<MPoly> f(upto + 1, zero());
    f[0] = one();
    for (unsigned j = 0; j < s; ++j) {
        std::vector<MPoly> fac(upto + 1, zero());
        for (unsigned long long n = 0; n <= upto; ++n) {
            if (!digits01(n)) continue;
            unsigned ell = static_cast<unsigned>(digit_profile(q, n).ell);
            std::vector<std::uint32_t> e(vars.size(), 0);
            e[j + 1] = ell;
            fq_el c = (ell % 2 == 0) ? 1 : F->from_int(-1);
            fac[static_cast<size_t>(n)] = MPoly::monomial(F, vars, e, c);
        }
        // f *= fac (truncated convolution)
        std::vector<MPoly> nf(upto + 1, zero());
        for (unsigned a = 0; a <= upto; ++a) {
            if (f[a].is_zero()) continue;
            for (unsigned b = 0; a + b <= upto; ++b) {
                if (fac[b].is_zero()) continue;
                nf[a + b] = nf[a + b] + f[a] * fac[b];
            }
        }
        f = std::move(nf);
    }
    // g = sum' (-theta)^{l(n)} Y^{q^m n}
    std::vector<MPoly> g(upto + 1, zero());
    for (unsigned long long n = 0; qpow(q, par.m) * static_cast<long long>(n) <= upto; ++n) {
        if (!digits01(n)) continue;
        unsigned ell = static_cast<unsigned>(digit_profile(q, n).ell);
        std::vector<std::uint32_t> e(vars.size(), 0);
        e[0] = ell;
        fq_el c = (ell % 2 == 0) ? 1 : F->from_int(-1);
        g[static_cast<size_t>(qpow(q, par.m) * static_cast<long long>(n))] = MPoly::monomial(F, vars, e, c);
    }
    // h = g / f: h_k = g_k - sum_{i=1}^{k} f_i h_{k-i}
    std::vector<MPoly> h(upto + 1, zero());
    for (unsigned k = 0; k <= upto; ++k) {
        MPoly acc = g[k];
        for (unsigned i = 1; i <= k; ++i) {
            if (f[i].is_zero() || h[k - i].is_zero()) continue;
            acc = acc - f[i] * h[k - i];
        }
        h[k] = acc; // f_0 = 1
    }
    G.h = std::move(h);
    return G;
}

MPoly gamma_poly(const FqPtr& F, unsigned s, long long r) {
    HParams par = h_params(F->q(), s);
    if (r < 0 || r > par.mu) throw DomainError("gamma_poly needs 0 <= r <= mu");
    unsigned upto = static_cast<unsigned>(par.mu - r);
    GammaSeries G = gamma_series(F, s, upto);
    VarList vars = make_vars(true, s, true, false);
    MPoly acc = MPoly::zero(F, vars);
    for (unsigned n = 0; n <= upto; ++n) {
        std::vector<std::uint32_t> e(vars.size(), 0);
        e[vars.size() - 1] = static_cast<std::uint32_t>(upto - n); // Y is last
        acc = acc + G.h[n].embed(vars) * MPoly::monomial(F, vars, e, 1);
    }
    return acc;
}

// ---- lambda limit ----

MPoly lambda_limit(const HPolynomial& H, long long d_lo, long long d_hi) {
    if (H.is_rational_s1()) throw DomainError("lambda_limit needs s >= q");
    const FqPtr& F = H.field();
    const unsigned q = F->q();
    const unsigned s = H.s();
    const unsigned m = H.m();
    const long long mu = H.mu();
    if (d_lo < m || d_hi <= d_lo) throw DomainError("lambda_limit window invalid");

    auto Rd = [&](long long d) {
        long long Q = qpow(q, d - m);
        TruncLaurent acc(F, s);
        for (size_t i = 0; i < H.y_slices().size(); ++i) {
            for (const auto& [te, p] : H.y_slices()[i]) {
                const auto& c = p.coeffs();
                for (size_t t = 0; t < c.size(); ++t) {
                    if (c[t] == 0) continue;
                    long long e = static_cast<long long>(t) + (static_cast<long long>(i) - mu) * Q;
                    acc.set(te, e, F->neg(c[t]));
                }
            }
        }
        return acc;
    };

    std::vector<TruncLaurent> R;
    for (long long d = d_lo; d <= d_hi; ++d) R.push_back(Rd(d));
    MPoly cand = R.back().nonneg_part();
    for (size_t i = 0; i < R.size(); ++i) {
        if (!(R[i].nonneg_part() == cand))
            throw NotStabilized("lambda_limit: nonnegative parts differ across the window");
    }
    std::optional<long long> prev;
    for (size_t i = 0; i < R.size(); ++i) {
        auto top = R[i].negative_part().top_exponent();
        if (top && prev && *top >= *prev)
            throw NotStabilized("lambda_limit: residual top exponent not strictly decreasing");
        if (top) prev = top;
        else prev = std::nullopt;
    }
    return cand;
}

// ---- lower coefficients ----

LowerCoeffReport lower_coeff_verify(const HPolynomial& H, long long r, long long d_lo, long long d_hi,
                                    unsigned threads) {
    const FqPtr& F = H.field();
    const unsigned q = F->q();
    const unsigned s = H.s();
    const unsigned m = H.m();
    const long long mu = H.mu();
    if (r < 0 || r > mu - 1) throw DomainError("lower_coeff_verify needs 0 <= r <= mu-1");
    if (d_lo < m + 1 || d_hi < d_lo + 2) throw DomainError("lower_coeff_verify window too small");

    LowerCoeffReport rep;
    rep.r = r;
    // the W factor is later multiplied by Gamma(theta^{q^{d-m}}) (top ~ mu Q), so
    // its floor must sit below the residual window by that much
    const long long floor = -(qpow(q, d_hi - m) * (mu + 2) + 64);
    const std::uint32_t tcap = static_cast<std::uint32_t>(d_hi - 1); // F_d has t-degree <= d-1
    TruncLaurent W = omega_over_pi(F, s, floor, tcap);
    MPoly gam = gamma_poly(F, s, r);

    // reference coefficients D_i as exact Laurent embeddings
    auto Dslice = [&](long long i) {
        HTableRow row;
        row.s = s;
        row.coeffs = H.y_coeff(static_cast<size_t>(i));
        return TruncLaurent::from_mpoly(row.as_mpoly(F), s, floor, tcap);
    };

    bool increasing = true;
    bool stabilized = true;
    std::optional<long long> prev;
    for (long long d = d_lo; d <= d_hi; ++d) {
        long long Q = qpow(q, d - m);
        MPoly gamQ = gam.subst_var_theta_pow(Var::Y(), Q);
        SumSpec spec{F, 1, s, d, threads};
        SumTensor Fd = range_sum_tensor(spec, 0, d - 1);
        TruncLaurent Ft = TruncLaurent::from_mpoly(
            Fd.num.to_mpoly(make_vars(true, s, false, false)), s, floor, tcap);
        Ft = Ft.mul_poly_inv(Fd.den);
        TruncLaurent bracket = (W * TruncLaurent::from_mpoly(gamQ, s, floor, tcap)) * Ft;
        for (long long i = 1; i <= mu - r; ++i)
            bracket = bracket + Dslice(i + r).mul_theta_pow(i * Q);
        TruncLaurent resid = bracket + Dslice(r);
        rep.d.push_back(d);
        auto top = resid.top_exponent();
        long long val = top ? -*top : -(floor)+1;
        rep.valuation.push_back(val);
        if (prev && val <= *prev) increasing = false;
        prev = val;
        // stabilized part must equal -D_r
        MPoly nn = (-bracket).nonneg_part();
        HTableRow refrow;
        refrow.s = s;
        refrow.coeffs = H.y_coeff(static_cast<size_t>(r));
        if (!(nn == refrow.as_mpoly(F))) stabilized = false;
    }
    rep.strictly_increasing = increasing;
    rep.stabilized_matches = stabilized;
    return rep;
}

// ---- nu ----

MPoly nu_value(const HPolynomial& H, long long d_lo, long long d_hi, long long D, unsigned threads) {
    const FqPtr& F = H.field();
    const unsigned q = F->q();
    const unsigned s = H.s();
    const unsigned m = H.m();
    const long long mu = H.mu();
    if (mu < 1) throw DomainError("nu_value requires mu >= 1 (s >= 2q-1)");
    if (D < d_hi) throw DomainError("nu_value requires D >= d_hi");

    // route (b): nu = D_{mu-1} - (t_1+..+t_s) D_mu
    VarList vars = make_vars(true, s, false, false);
    MPoly nu_b;
    {
        HTableRow top, low;
        top.s = low.s = s;
        top.coeffs = H.y_coeff(static_cast<size_t>(mu));
        low.coeffs = H.y_coeff(static_cast<size_t>(mu - 1));
        MPoly tsum = MPoly::zero(F, vars);
        for (unsigned j = 1; j <= s; ++j) tsum = tsum + MPoly::var(F, vars, Var::t(j));
        nu_b = low.as_mpoly(F) - tsum * top.as_mpoly(F);
    }

    const long long floor = -(2 * qpow(q, d_hi - m) + 64);
    const std::uint32_t tcap = static_cast<std::uint32_t>(D);
    TruncLaurent W = omega_over_pi(F, s, floor, tcap);

    std::optional<MPoly> cand;
    for (long long d = d_lo; d <= d_hi; ++d) {
        SumSpec spec{F, 1, s, d, threads};
        SumTensor tl = range_sum_tensor(spec, d, D);
        TruncLaurent T = TruncLaurent::from_mpoly(
            tl.num.to_mpoly(make_vars(true, s, false, false)), s, floor, tcap);
        T = T.mul_poly_inv(tl.den);
        TruncLaurent V = (W * T).mul_theta_pow(qpow(q, d - m));
        MPoly nn = V.nonneg_part();
        if (!cand) cand = nn;
        else if (!(*cand == nn))
            throw NotStabilized("nu_value: window values disagree");
    }
    if (!(*cand == nu_b)) throw NotStabilized("nu_value: routes (a) and (b) disagree");
    return *cand;
}

} // namespace fzv
