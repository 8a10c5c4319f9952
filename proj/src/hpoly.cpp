#include "fzv/hpoly.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>

namespace fzv {

HParams h_params(unsigned q, unsigned s) {
    if (s < 1 || (s - 1) % (q - 1) != 0)
        throw DomainError("s = " + std::to_string(s) + " is not 1 mod (q-1)");
    HParams p;
    p.s = s;
    p.m = (s - 1) / (q - 1);
    long long qm = 1;
    for (unsigned i = 0; i < p.m; ++i) qm *= q;
    p.mu = (qm - 1) / (q - 1) - p.m;
    return p;
}

namespace {

long long qpow(unsigned q, long long e) {
    long long r = 1;
    while (e-- > 0) r *= q;
    return r;
}

// delta_{s,d} = m - 1 + mu q^{d-m}
long long delta_sd(unsigned q, const HParams& p, long long d) {
    return static_cast<long long>(p.m) - 1 + p.mu * qpow(q, d - p.m);
}

// b_n evaluated at t = v in F_q: prod_{j<n} (v - theta^{q^j})
PolyA b_value(const FqPtr& F, unsigned n, fq_el v) {
    PolyA r = PolyA::one(F);
    long long Q = 1;
    for (unsigned j = 0; j < n; ++j) {
        // r <- v*r - theta^Q * r
        PolyA shifted = r.shift_up(Q);
        r = r.scale(v) - shifted;
        Q *= F->q();
    }
    return r;
}

// theta-coefficient rows of b_n(v) for a t-variable v, by v-degree
std::vector<PolyA> b_theta_rows(const FqPtr& F, unsigned n) {
    MPoly b = carlitz(F).b_poly(n, Var::t(1));
    std::vector<PolyA> rows(n + 1, PolyA::zero(F));
    for (unsigned k = 0; k <= n; ++k) {
        MPoly ck = b.coeff_of(Var::t(1), k);
        auto sl = ck.theta_slices();
        if (!sl.empty()) rows[k] = sl.begin()->second;
    }
    return rows;
}

} // namespace

MPoly HTableRow::as_mpoly(const FqPtr& F) const {
    VarList vars = make_vars(true, s, false, false);
    MPoly::Builder b(F, vars);
    for (const auto& [te, p] : coeffs) {
        const auto& c = p.coeffs();
        for (size_t t = 0; t < c.size(); ++t) {
            if (c[t] == 0) continue;
            MPoly::Exp e{};
            e[0] = static_cast<std::uint32_t>(t);
            for (size_t j = 0; j < te.size(); ++j) e[j + 1] = te[j];
            b.add(e, c[t]);
        }
    }
    return b.build();
}

HPolynomial::HPolynomial(FqPtr F, HParams p, std::string route, std::vector<std::map<TExp, PolyA>> yslices)
    : F_(std::move(F)), par_(p), route_(std::move(route)), D_(std::move(yslices)) {}

HPolynomial HPolynomial::rational_s1(FqPtr F) {
    HPolynomial h;
    h.F_ = std::move(F);
    h.par_ = {1, 0, 0};
    h.route_ = "explicit";
    h.s1_ = true;
    return h;
}

const std::map<TExp, PolyA>& HPolynomial::y_coeff(size_t i) const {
    static const std::map<TExp, PolyA> empty;
    if (i >= D_.size()) return empty;
    return D_[i];
}

MPoly HPolynomial::y_coeff_mpoly(size_t i) const {
    HTableRow r;
    r.s = par_.s;
    r.coeffs = y_coeff(i);
    return r.as_mpoly(F_);
}

std::map<TExp, PolyA> HPolynomial::eval_at_frob(long long j) const {
    if (s1_) throw DomainError("eval_at_frob on the rational s=1 object");
    long long Q = qpow(F_->q(), j);
    std::map<TExp, PolyA> out;
    for (size_t i = 0; i < D_.size(); ++i) {
        for (const auto& [te, p] : D_[i]) {
            PolyA term = p.shift_up(static_cast<long long>(i) * Q);
            auto it = out.find(te);
            if (it == out.end()) out.emplace(te, term);
            else it->second = it->second + term;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero()) it = out.erase(it);
        else ++it;
    }
    return out;
}

MPoly HPolynomial::as_mpoly() const {
    if (s1_) throw DomainError("as_mpoly on the rational s=1 object");
    VarList vars = make_vars(true, par_.s, true, false);
    MPoly::Builder b(F_, vars);
    for (size_t i = 0; i < D_.size(); ++i) {
        for (const auto& [te, p] : D_[i]) {
            const auto& c = p.coeffs();
            for (size_t t = 0; t < c.size(); ++t) {
                if (c[t] == 0) continue;
                MPoly::Exp e{};
                e[0] = static_cast<std::uint32_t>(t);
                for (size_t j = 0; j < te.size(); ++j) e[j + 1] = te[j];
                e[par_.s + 1] = static_cast<std::uint32_t>(i);
                b.add(e, c[t]);
            }
        }
    }
    return b.build();
}

std::vector<PolyA> HPolynomial::corner_y_poly() const {
    TExp corner(par_.s, par_.m == 0 ? 0u : par_.m - 1);
    std::vector<PolyA> out;
    for (size_t i = 0; i < D_.size(); ++i) {
        auto it = D_[i].find(corner);
        out.push_back(it == D_[i].end() ? PolyA::zero(F_) : it->second);
    }
    return out;
}

PolyA HPolynomial::corner_coefficient() const {
    auto v = corner_y_poly();
    PolyA acc = PolyA::zero(F_);
    for (size_t i = 0; i < v.size(); ++i) {
        if (i > 0 && !v[i].is_zero()) throw DomainError("corner coefficient has positive Y-degree");
        if (i == 0) acc = v[i];
    }
    return acc;
}

long long HPolynomial::theta_degree() const {
    long long d = -1;
    for (const auto& sl : D_)
        for (const auto& [te, p] : sl)
            if (!p.is_zero()) d = std::max(d, p.deg_int());
    return d;
}

bool HPolynomial::operator==(const HPolynomial& o) const {
    if (s1_ != o.s1_ || par_.s != o.par_.s) return false;
    if (s1_) return true;
    size_t n = std::max(D_.size(), o.D_.size());
    for (size_t i = 0; i < n; ++i) {
        const auto& a = y_coeff(i);
        const auto& b = o.y_coeff(i);
        if (a != b) return false;
    }
    return true;
}

// ---- universal relations ----

namespace {

struct UnivMemo {
    std::mutex mu;
    std::map<std::vector<unsigned>, std::map<long long, MPoly>> tab;
};

UnivMemo& univ_memo(const FqPtr& F) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<UnivMemo>> reg;
    std::string key = std::to_string(F->p()) + "^" + std::to_string(F->e());
    for (unsigned c : F->modulus()) key += "," + std::to_string(c);
    std::lock_guard<std::mutex> lk(mu);
    auto it = reg.find(key);
    if (it == reg.end()) it = reg.emplace(key, std::make_unique<UnivMemo>()).first;
    return *it->second;
}

} // namespace

std::map<long long, MPoly> univ_coeffs(const FqPtr& F, std::vector<unsigned> tuple) {
    std::sort(tuple.begin(), tuple.end());
    UnivMemo& memo = univ_memo(F);
    {
        std::lock_guard<std::mutex> lk(memo.mu);
        auto it = memo.tab.find(tuple);
        if (it != memo.tab.end()) return it->second;
    }
    const unsigned q = F->q();
    VarList vars = merge_vars({Var::theta()}, {Var::Y()});
    std::map<long long, MPoly> result;
    // first run of q equal entries, scanning left to right
    size_t run = tuple.size();
    for (size_t k = 0; k + q <= tuple.size(); ++k) {
        bool eq = true;
        for (unsigned t = 1; t < q; ++t)
            if (tuple[k + t] != tuple[k]) { eq = false; break; }
        if (eq) { run = k; break; }
    }
    if (run == tuple.size()) {
        long long idx = 0;
        for (unsigned j : tuple) idx += qpow(q, j);
        result.emplace(idx, MPoly::one(F, vars));
    } else {
        unsigned v = tuple[run];
        std::vector<unsigned> j1, j2;
        for (size_t k = 0; k < tuple.size(); ++k) {
            if (k > run && k <= run + q - 1) continue; // drop q-1 copies
            j1.push_back(tuple[k]);
        }
        for (size_t k = 0; k < tuple.size(); ++k) {
            if (k >= run && k <= run + q - 1) continue; // drop all q copies
            j2.push_back(tuple[k]);
        }
        j2.push_back(v + 1);
        auto c1 = univ_coeffs(F, j1);
        auto c2 = univ_coeffs(F, j2);
        // factor (Y^{q^{v+1}} - theta)
        MPoly fac = MPoly::monomial(F, vars, {0, static_cast<std::uint32_t>(qpow(q, v + 1))}, 1) -
                    MPoly::var(F, vars, Var::theta());
        result = c1;
        for (const auto& [i, c] : c2) {
            MPoly add = fac * c;
            auto it = result.find(i);
            if (it == result.end()) result.emplace(i, add);
            else {
                it->second = it->second + add;
                if (it->second.is_zero()) result.erase(it);
            }
        }
    }
    std::lock_guard<std::mutex> lk(memo.mu);
    memo.tab.emplace(tuple, result);
    return result;
}

MPolyK pi_factor(const FqPtr& F, unsigned s, long long d) {
    HParams p = h_params(F->q(), s); // DomainError unless s = 1 mod (q-1)
    if (d < std::max<long long>(1, p.m)) throw DomainError("pi_factor: d >= max(1, m) required");
    const CarlitzCache& C = carlitz(F);
    VarList vars = make_vars(true, s, false, false);
    MPoly num = MPoly::one(F, vars);
    for (unsigned i = 1; i <= s; ++i)
        num = num * C.b_poly(static_cast<unsigned>(d - p.m), Var::t(i)).embed(vars);
    return MPolyK(std::move(num), C.l_seq(static_cast<unsigned>(d - 1)));
}

// ---- h_row ----

namespace {

HTableRow row_from_tensor(const FqPtr& F, unsigned s, long long d, TPoly&& T, const std::string& route) {
    HTableRow row;
    row.s = s;
    row.d = d;
    row.route = route;
    long long best = -1;
    fq_el lead = 0;
    for (size_t idx = 0; idx < T.cells(); ++idx) {
        PolyA p = T.cell_poly(idx);
        if (p.is_zero()) continue;
        if (p.deg_int() > best) {
            best = p.deg_int();
            lead = p.lc();
        }
        auto k = T.cell_coords(idx);
        row.coeffs.emplace(TExp(k.begin(), k.end()), std::move(p));
    }
    row.theta_degree = best;
    row.theta_lead = lead;
    return row;
}

HTableRow h_row_expand(const FqPtr& F, unsigned s, long long d, const HParams& par, unsigned threads) {
    SumSpec spec{F, 1, s, d, threads};
    SumTensor st = range_sum_tensor(spec, 0, d - 1); // l_{d-1} F_d(1;s)
    std::vector<PolyA> brows = b_theta_rows(F, static_cast<unsigned>(d - par.m));
    TPoly T = std::move(st.num);
    if (d > par.m) {
        for (unsigned j = 0; j < s; ++j) T.exact_div_in_var(j, brows);
    }
    return row_from_tensor(F, s, d, std::move(T), "expand");
}

// raw extension-field helpers for the randomized identity certificate
struct ExtOps {
    FqPtr F;
    unsigned kappa;
    std::vector<fq_el> P; // monic modulus, length kappa+1
    using E = std::vector<fq_el>;

    E zero() const { return E(kappa, 0); }
    E one() const {
        E r(kappa, 0);
        r[0] = 1;
        return r;
    }
    void add_into(E& a, const E& b) const {
        const Fq& f = *F;
        for (unsigned i = 0; i < kappa; ++i) a[i] = f.add(a[i], b[i]);
    }
    E sub(const E& a, const E& b) const {
        const Fq& f = *F;
        E r(kappa);
        for (unsigned i = 0; i < kappa; ++i) r[i] = f.sub(a[i], b[i]);
        return r;
    }
    void scal_mul_into(E& acc, fq_el c, const E& b) const {
        if (c == 0) return;
        const Fq& f = *F;
        for (unsigned i = 0; i < kappa; ++i) acc[i] = f.add(acc[i], f.mul(c, b[i]));
    }
    E mul(const E& a, const E& b) const {
        const Fq& f = *F;
        std::vector<fq_el> t(2 * kappa - 1, 0);
        detail::mul_acc_raw(f, a.data(), kappa, b.data(), kappa, t.data());
        // reduce by monic P
        for (size_t k = t.size(); k-- > kappa;) {
            fq_el lead = t[k];
            if (lead == 0) continue;
            t[k] = 0;
            for (unsigned j = 0; j < kappa; ++j)
                t[k - kappa + j] = f.sub(t[k - kappa + j], f.mul(lead, P[j]));
        }
        t.resize(kappa);
        return t;
    }
    E mul_theta(const E& a) const {
        const Fq& f = *F;
        E r(kappa, 0);
        fq_el lead = a[kappa - 1];
        for (unsigned i = kappa - 1; i >= 1; --i) r[i] = a[i - 1];
        r[0] = 0;
        if (lead != 0)
            for (unsigned j = 0; j < kappa; ++j) r[j] = f.sub(r[j], f.mul(lead, P[j]));
        return r;
    }
    E inv(const E& a) const {
        PolyA pa = PolyA::from_coeffs(F, a);
        PolyA pp = PolyA::from_coeffs(F, P);
        PolyA u(F), v(F);
        PolyA g = PolyA::xgcd(pa, pp, u, v);
        if (!g.is_one()) throw NotAUnit("extension inverse");
        PolyA r = u.divrem(pp).second;
        E out(kappa, 0);
        std::copy(r.coeffs().begin(), r.coeffs().end(), out.begin());
        return out;
    }
    E pow(E a, long long n) const {
        E r = one();
        while (n > 0) {
            if (n & 1) r = mul(r, a);
            a = mul(a, a);
            n >>= 1;
        }
        return r;
    }
    E eval_poly(const PolyA& p) const {
        // p(theta) with theta = class of the variable, via shift-reduce Horner
        E r = zero();
        const auto& c = p.coeffs();
        for (size_t i = c.size(); i-- > 0;) {
            r = mul_theta(r);
            if (c[i] != 0) {
                const Fq& f = *F;
                r[0] = f.add(r[0], c[i]);
            }
        }
        return r;
    }
};

ExtOps make_ext(const FqPtr& F, unsigned kappa, std::uint64_t seed) {
    ExtOps ext;
    ext.F = F;
    ext.kappa = kappa;
    std::uint64_t total = monic_count(F->q(), kappa);
    for (std::uint64_t t = 0; t < 100000; ++t) {
        std::uint64_t idx = (seed * 6364136223846793005ULL + 1442695040888963407ULL * (t + 1)) % total;
        PolyA cand = monic_at(F, kappa, idx);
        if (is_irreducible(cand)) {
            ext.P.assign(static_cast<size_t>(kappa) + 1, 0);
            const auto& c = cand.coeffs();
            std::copy(c.begin(), c.end(), ext.P.begin());
            return ext;
        }
    }
    throw DomainError("could not find an irreducible modulus for the certificate field");
}

// randomized check that l_{d-1} F_d(1;s) = Q * prod_i b_{d-m}(t_i)
void certify_row_identity(const FqPtr& F, const HTableRow& row, const HParams& par,
                          unsigned trials, std::uint64_t seed) {
    const unsigned q = F->q();
    const unsigned s = row.s;
    const long long d = row.d;
    const unsigned kappa = 12;
    ExtOps ext = make_ext(F, kappa, seed);
    std::uint64_t state = seed ^ 0x9e3779b97f4a7c15ULL;
    auto rnd = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    PolyA L = l_poly(F, static_cast<unsigned>(d - 1));

    for (unsigned trial = 0; trial < trials; ++trial) {
        // random points xi_1..xi_s
        std::vector<ExtOps::E> xi(s);
        for (auto& x : xi) {
            x = ext.zero();
            for (unsigned i = 0; i < kappa; ++i) x[i] = static_cast<fq_el>(rnd() % q);
        }
        // powers xi^e for e <= d, and zeta powers for a(zeta)
        std::vector<std::vector<ExtOps::E>> xp(s);
        for (unsigned v = 0; v < s; ++v) {
            xp[v].resize(static_cast<size_t>(d) + 1, ext.zero());
            xp[v][0] = ext.one();
            for (long long e = 1; e <= d; ++e) xp[v][static_cast<size_t>(e)] = ext.mul(xp[v][static_cast<size_t>(e) - 1], xi[v]);
        }
        std::vector<ExtOps::E> zp(static_cast<size_t>(d) + 1, ext.zero());
        zp[0] = ext.one();
        for (long long e = 1; e <= d; ++e) zp[static_cast<size_t>(e)] = ext.mul_theta(zp[static_cast<size_t>(e) - 1]);

        // LHS = l_{d-1}(zeta) * sum_{i<d} sum_a (prod_k a(xi_k)) / a(zeta)
        ExtOps::E lhs = ext.zero();
        const size_t block = 256;
        std::vector<ExtOps::E> ws, vs;
        ws.reserve(block);
        vs.reserve(block);
        auto flush = [&]() {
            if (vs.empty()) return;
            // batched inversion (Montgomery)
            std::vector<ExtOps::E> pref(vs.size());
            pref[0] = vs[0];
            for (size_t i = 1; i < vs.size(); ++i) pref[i] = ext.mul(pref[i - 1], vs[i]);
            ExtOps::E t = ext.inv(pref.back());
            for (size_t i = vs.size(); i-- > 0;) {
                ExtOps::E invi = i == 0 ? t : ext.mul(t, pref[i - 1]);
                ext.add_into(lhs, ext.mul(ws[i], invi));
                t = ext.mul(t, vs[i]);
            }
            ws.clear();
            vs.clear();
        };
        for (long long i = 0; i < d; ++i) {
            for_each_monic(F, i, [&](const std::vector<fq_el>& a) {
                ExtOps::E prod = ext.one();
                for (unsigned v = 0; v < s; ++v) {
                    ExtOps::E av = ext.zero();
                    for (size_t e = 0; e < a.size(); ++e) ext.scal_mul_into(av, a[e], xp[v][e]);
                    prod = ext.mul(prod, av);
                }
                ExtOps::E az = ext.zero();
                for (size_t e = 0; e < a.size(); ++e) ext.scal_mul_into(az, a[e], zp[e]);
                ws.push_back(std::move(prod));
                vs.push_back(std::move(az));
                if (vs.size() >= block) flush();
            });
        }
        flush();
        lhs = ext.mul(lhs, ext.eval_poly(L));

        // RHS = Q(zeta, xi) * prod_k b_{d-m}(xi_k)
        ExtOps::E rhs = ext.zero();
        for (const auto& [te, p] : row.coeffs) {
            ExtOps::E c = ext.eval_poly(p);
            for (unsigned v = 0; v < s; ++v)
                if (te[v] != 0) c = ext.mul(c, xp[v][te[v]]);
            ext.add_into(rhs, c);
        }
        for (unsigned v = 0; v < s; ++v) {
            ExtOps::E b = ext.one();
            for (long long j = 0; j < d - static_cast<long long>(par.m); ++j) {
                ExtOps::E fr = ext.pow(zp[1], qpow(q, j));
                b = ext.mul(b, ext.sub(xi[v], fr));
            }
            rhs = ext.mul(rhs, b);
        }
        if (!(lhs == rhs))
            throw NonExactDivision("grid row certificate failed (s=" + std::to_string(s) +
                                   ", d=" + std::to_string(d) + ")");
    }
}

HTableRow h_row_grid(const FqPtr& F, unsigned s, long long d, const HParams& par,
                     const RowOptions& opt) {
    const unsigned q = F->q();
    const unsigned m = par.m;
    if (m > q) throw DomainError("grid route requires m <= q");
    std::vector<fq_el> nodes(m);
    for (unsigned i = 0; i < m; ++i) nodes[i] = static_cast<fq_el>(i);
    ClassSums cs(F, nodes, 0, d - 1, opt.threads);

    // values of Q = l_{d-1} F_d / prod b at each node assignment, by multiset
    std::map<std::vector<unsigned>, PolyA> cache;
    auto value = [&](const std::vector<unsigned>& sel) -> const PolyA& {
        std::vector<unsigned> key = sel;
        std::sort(key.begin(), key.end());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        PolyA val = cs.value_at(key);
        // divide by prod_k b_{d-m}(v_{key_k}) one sparse binomial at a time
        for (unsigned x : key) {
            long long Q = 1;
            for (long long j = 0; j < d - static_cast<long long>(m); ++j) {
                // (v - theta^{q^j}) with leading coefficient -1
                std::vector<std::pair<long long, fq_el>> div{{Q, F->neg(1)}};
                if (nodes[x] != 0) div.push_back({0, nodes[x]});
                val = val.exact_div_sparse(div);
                Q *= q;
            }
        }
        return cache.emplace(std::move(key), std::move(val)).first->second;
    };

    // full m^s grid by symmetry, then per-axis inverse Vandermonde
    // inverse of V[x][k] = nodes[x]^k
    std::vector<fq_el> Minv(m * m, 0);
    {
        // Gaussian elimination on [V | I]
        std::vector<fq_el> A(m * 2 * m, 0);
        const Fq& f = *F;
        for (unsigned x = 0; x < m; ++x) {
            fq_el pw = 1;
            for (unsigned k = 0; k < m; ++k) {
                A[x * 2 * m + k] = pw;
                pw = f.mul(pw, nodes[x]);
            }
            A[x * 2 * m + m + x] = 1;
        }
        for (unsigned c = 0; c < m; ++c) {
            unsigned piv = c;
            while (piv < m && A[piv * 2 * m + c] == 0) ++piv;
            if (piv == m) throw DomainError("singular Vandermonde");
            if (piv != c)
                for (unsigned j = 0; j < 2 * m; ++j) std::swap(A[c * 2 * m + j], A[piv * 2 * m + j]);
            fq_el pi = f.inv(A[c * 2 * m + c]);
            for (unsigned j = 0; j < 2 * m; ++j) A[c * 2 * m + j] = f.mul(A[c * 2 * m + j], pi);
            for (unsigned r = 0; r < m; ++r) {
                if (r == c) continue;
                fq_el t = A[r * 2 * m + c];
                if (t == 0) continue;
                for (unsigned j = 0; j < 2 * m; ++j)
                    A[r * 2 * m + j] = f.sub(A[r * 2 * m + j], f.mul(t, A[c * 2 * m + j]));
            }
        }
        for (unsigned kk = 0; kk < m; ++kk)
            for (unsigned x = 0; x < m; ++x) Minv[kk * m + x] = A[kk * 2 * m + m + x];
    }

    // coefficient tensor: iterate the m^s grid; apply Minv axis by axis
    size_t cells = 1;
    for (unsigned i = 0; i < s; ++i) cells *= m;
    std::vector<PolyA> grid(cells, PolyA::zero(F));
    {
        std::vector<unsigned> sel(s, 0);
        for (size_t idx = 0;; ++idx) {
            grid[idx] = value(sel);
            unsigned j = s;
            bool done = true;
            while (j-- > 0) {
                if (sel[j] + 1 < m) {
                    ++sel[j];
                    for (unsigned x = j + 1; x < s; ++x) sel[x] = 0;
                    done = false;
                    break;
                }
            }
            if (done) break;
        }
    }
    // axis transforms (last axis has stride 1)
    const Fq& f = *F;
    std::vector<PolyA> tmp(m, PolyA::zero(F));
    for (unsigned axis = 0; axis < s; ++axis) {
        size_t stride = 1;
        for (unsigned x = axis + 1; x < s; ++x) stride *= m;
        for (size_t base = 0; base < cells; ++base) {
            if ((base / stride) % m != 0) continue;
            for (unsigned k = 0; k < m; ++k) {
                PolyA acc = PolyA::zero(F);
                for (unsigned x = 0; x < m; ++x) {
                    fq_el c = Minv[k * m + x];
                    if (c == 0) continue;
                    acc = acc + grid[base + x * stride].scale(c);
                }
                tmp[k] = std::move(acc);
            }
            for (unsigned k = 0; k < m; ++k) grid[base + k * stride] = std::move(tmp[k]);
        }
    }

    HTableRow row;
    row.s = s;
    row.d = d;
    row.route = "grid";
    long long best = -1;
    fq_el lead = 0;
    for (size_t idx = 0; idx < cells; ++idx) {
        if (grid[idx].is_zero()) continue;
        TExp te(s);
        size_t r = idx;
        for (unsigned j = s; j-- > 0;) {
            te[j] = static_cast<std::uint32_t>(r % m);
            r /= m;
        }
        if (grid[idx].deg_int() > best) {
            best = grid[idx].deg_int();
            lead = grid[idx].lc();
        }
        row.coeffs.emplace(std::move(te), std::move(grid[idx]));
    }
    row.theta_degree = best;
    row.theta_lead = lead;
    certify_row_identity(F, row, par, opt.sz_trials, opt.sz_seed + static_cast<std::uint64_t>(d) * 1007);
    return row;
}

} // namespace

HTableRow h_row(const FqPtr& F, unsigned s, long long d, const RowOptions& opt) {
    const unsigned q = F->q();
    HParams par = h_params(q, s);
    if (s < q) throw DomainError("h_row requires s >= q");
    if (d < par.m) throw DomainError("h_row requires d >= m");
    std::string route = opt.route;
    if (route == "auto") {
        // direct cost ~ (#monic a) * cells * theta-length
        long double na = 0;
        for (long long i = 0; i < d; ++i) na += static_cast<long double>(monic_count(q, i));
        long double cells = 1;
        for (unsigned i = 0; i < s; ++i) cells *= static_cast<long double>(d);
        long double L = static_cast<long double>(qpow(q, d) / std::max(1u, q - 1)) + 1;
        long double direct = na * cells * L;
        bool grid_ok = par.m <= q && par.m >= 1;
        route = (direct > 2.0e9L && grid_ok) ? "grid" : "expand";
    }
    HTableRow row = route == "grid" ? h_row_grid(F, s, d, par, opt)
                                    : h_row_expand(F, s, d, par, opt.threads);
    // Remark after Prop. 3: deg_theta H_{s,d} = m - 1 + mu q^{d-m}
    long long expect = delta_sd(q, par, d);
    if (row.theta_degree != expect)
        throw DomainError("h_row theta degree " + std::to_string(row.theta_degree) +
                          " != delta = " + std::to_string(expect));
    for (const auto& [te, p] : row.coeffs) {
        for (unsigned j = 0; j < s; ++j)
            if (te[j] > (par.m == 0 ? 0 : par.m - 1))
                throw DomainError("h_row t-degree exceeds m-1");
        (void)p;
    }
    return row;
}

// ---- interpolation route ----

HPolynomial h_interpolate(const FqPtr& F, unsigned s, const RowOptions& opt) {
    const unsigned q = F->q();
    HParams par = h_params(q, s);
    if (s == 1) return HPolynomial::rational_s1(F);
    if (s < q) throw DomainError("h_interpolate requires s >= q (or s = 1)");

    const long long mu = par.mu;
    std::vector<HTableRow> rows;
    rows.reserve(static_cast<size_t>(mu) + 1);
    for (long long j = 0; j <= mu; ++j)
        rows.push_back(h_row(F, s, par.m + j, opt));

    // union of t-exponent supports
    std::vector<TExp> support;
    {
        std::map<TExp, bool> seen;
        for (const auto& r : rows)
            for (const auto& [te, p] : r.coeffs) seen.emplace(te, true);
        for (auto& [te, b] : seen) support.push_back(te);
    }

    // Newton divided differences at nodes y_j = theta^{q^j}; every division
    // must be exact in A, otherwise the data is not a degree-mu polynomial
    std::vector<std::map<TExp, PolyA>> yslices(static_cast<size_t>(mu) + 1);
    for (const auto& te : support) {
        std::vector<PolyA> cur;
        for (const auto& r : rows) {
            auto it = r.coeffs.find(te);
            cur.push_back(it == r.coeffs.end() ? PolyA::zero(F) : it->second);
        }
        std::vector<PolyA> newton;
        newton.push_back(cur[0]);
        for (long long k = 1; k <= mu; ++k) {
            for (long long j = 0; j + k <= mu; ++j) {
                PolyA diff = cur[static_cast<size_t>(j) + 1] - cur[static_cast<size_t>(j)];
                // divide by theta^{q^{j+k}} - theta^{q^j}
                std::vector<std::pair<long long, fq_el>> div{{qpow(q, j + k), 1},
                                                             {qpow(q, j), F->neg(1)}};
                PolyA quot;
                try {
                    quot = diff.exact_div_sparse(div);
                } catch (const NonExactDivision&) {
                    throw NonIntegralResult("Newton step not integral (s=" + std::to_string(s) + ")");
                }
                cur[static_cast<size_t>(j)] = std::move(quot);
            }
            cur.pop_back();
            newton.push_back(cur[0]);
        }
        // Newton basis -> monomial basis in Y
        std::vector<PolyA> C{newton[static_cast<size_t>(mu)]};
        for (long long k = mu - 1; k >= 0; --k) {
            std::vector<PolyA> nc(C.size() + 1, PolyA::zero(F));
            for (size_t i = 0; i < C.size(); ++i) {
                nc[i + 1] = nc[i + 1] + C[i];
                nc[i] = nc[i] - C[i].shift_up(qpow(q, k));
            }
            nc[0] = nc[0] + newton[static_cast<size_t>(k)];
            // trim top zeros
            while (nc.size() > 1 && nc.back().is_zero()) nc.pop_back();
            C = std::move(nc);
        }
        for (size_t i = 0; i < C.size(); ++i)
            if (!C[i].is_zero()) yslices[i].emplace(te, C[i]);
    }

    HPolynomial H(F, par, "vandermonde", std::move(yslices));

    // Theorem 1 degree postconditions
    if (mu >= 0) {
        bool top = !H.y_coeff(static_cast<size_t>(mu)).empty();
        if (mu > 0 && !top) throw DomainError("deg_Y(H) < mu");
    }
    // corner normalization: coefficient of t^(m-1,...) must be the constant 1
    {
        auto cy = H.corner_y_poly();
        for (size_t i = 0; i < cy.size(); ++i) {
            if (i == 0) {
                if (!(cy[i] == PolyA::one(F)))
                    throw DomainError("corner coefficient of H_s is not 1");
            } else if (!cy[i].is_zero()) {
                throw DomainError("corner coefficient of H_s has Y-degree > 0");
            }
        }
    }
    // holdout rows
    for (long long d = par.m + mu + 1; d <= par.m + mu + 2; ++d) {
        HTableRow r = h_row(F, s, d, opt);
        auto ev = H.eval_at_frob(d - par.m);
        if (!(ev == r.coeffs))
            throw RouteMismatch("holdout row d=" + std::to_string(d) + " does not match H_s");
    }
    return H;
}

// ---- universal route ----

HPolynomial h_universal(const FqPtr& F, unsigned s, const RowOptions& opt, const HPolynomial* reference) {
    const unsigned q = F->q();
    HParams par = h_params(q, s);
    if (s == 1) return HPolynomial::rational_s1(F);
    if (s < q) throw DomainError("h_universal requires s >= q (or s = 1)");
    const unsigned m = par.m;

    // kappa0 = floor(log_q s) - 1
    long long kappa0 = -1;
    {
        long long pw = q;
        while (pw <= static_cast<long long>(s)) {
            ++kappa0;
            pw *= q;
        }
    }
    if (kappa0 < 0) throw DomainError("h_universal: s < q");

    VarList cy = merge_vars({Var::theta()}, {Var::Y()});
    // hshift_h = prod_{h' > h} (theta - Y^{q^{m+h'}})
    std::vector<MPoly> hshift(static_cast<size_t>(kappa0) + 1, MPoly::one(F, cy));
    for (long long h = kappa0 - 1; h >= 0; --h) {
        MPoly fac = MPoly::var(F, cy, Var::theta()) -
                    MPoly::monomial(F, cy, {0, static_cast<std::uint32_t>(qpow(q, m + h + 1))}, 1);
        hshift[static_cast<size_t>(h)] = hshift[static_cast<size_t>(h) + 1] * fac;
    }

    // The b-basis support of l_{d-1} F_d / prod b_{d-m} runs over indices
    // d-m <= i <= d-1, so the tuple entries j_i range over 0..m-1.
    const unsigned R = m; // radix: values 0..R-1
    // cc[counts] = sum_h c_{tuple(counts), q^{h+m}} * hshift_h
    std::map<std::vector<unsigned>, MPoly> cc;
    {
        std::vector<unsigned> counts;
        std::function<void(unsigned)> rec = [&](unsigned left) {
            if (counts.size() == static_cast<size_t>(R) - 1) {
                counts.push_back(left);
                std::vector<unsigned> tuple;
                for (unsigned val = 0; val < R; ++val)
                    for (unsigned c = 0; c < counts[val]; ++c) tuple.push_back(val);
                auto tab = univ_coeffs(F, tuple);
                MPoly acc = MPoly::zero(F, cy);
                for (long long h = 0; h <= kappa0; ++h) {
                    auto it = tab.find(qpow(q, m + h));
                    if (it == tab.end()) continue;
                    acc = acc + it->second.embed(cy) * hshift[static_cast<size_t>(h)];
                }
                cc.emplace(counts, std::move(acc));
                counts.pop_back();
                return;
            }
            for (unsigned c = 0; c <= left; ++c) {
                counts.push_back(c);
                rec(left - c);
                counts.pop_back();
            }
        };
        rec(s);
    }

    // degree bounds for the dense accumulator
    std::uint32_t ccY = 0, ccT = 0;
    for (const auto& [k, p] : cc) {
        Degree dy = p.deg_in(Var::Y());
        Degree dt = p.deg_in(Var::theta());
        if (dy.finite) ccY = std::max(ccY, static_cast<std::uint32_t>(dy.v));
        if (dt.finite) ccT = std::max(ccT, static_cast<std::uint32_t>(dt.v));
    }
    // per-variable Y-degree of the binomial products is at most 1+q+..+q^{m-2}
    const std::uint32_t prodY =
        static_cast<std::uint32_t>(s) * static_cast<std::uint32_t>((qpow(q, R - 1) - 1) / (q - 1));
    const std::uint32_t YB = prodY + ccY + 1;
    const std::uint32_t TB = ccT + 2;
    size_t tcells = 1;
    for (unsigned i = 0; i < s; ++i) tcells *= R;
    std::vector<fq_el> dense(tcells * YB * TB, 0);
    const Fq& f = *F;

    // recursion over the variables with incremental sparse products in (t, Y)
    struct PTerm {
        size_t tidx;
        std::uint32_t ye;
        fq_el c;
    };
    // in the (theta, Y) variable list, theta has index 0 and Y index 1
    constexpr size_t ti = 0, yi = 1;
    std::vector<unsigned> counts(R, 0);
    std::function<void(unsigned, const std::vector<PTerm>&)> walk =
        [&](unsigned depth, const std::vector<PTerm>& terms) {
            if (depth == s) {
                const MPoly& c = cc.at(counts);
                for (const auto& t : c.terms()) {
                    std::uint32_t ce = t.e[ti];
                    std::uint32_t ye2 = t.e[yi];
                    for (const auto& pt : terms) {
                        size_t off = (pt.tidx * YB + pt.ye + ye2) * TB + ce;
                        dense[off] = f.add(dense[off], f.mul(pt.c, t.c));
                    }
                }
                return;
            }
            size_t stride = 1;
            for (unsigned x = depth + 1; x < s; ++x) stride *= R;
            std::vector<PTerm> cur = terms;
            for (unsigned j = 0; j < R; ++j) {
                ++counts[j];
                walk(depth + 1, cur);
                --counts[j];
                if (j + 1 == R) break;
                // extend the product by (t_i - Y^{q^j})
                std::vector<PTerm> next;
                next.reserve(cur.size() * 2);
                for (const auto& pt : cur) {
                    next.push_back({pt.tidx + stride, pt.ye, pt.c});
                    next.push_back({pt.tidx, pt.ye + static_cast<std::uint32_t>(qpow(q, j)), f.neg(pt.c)});
                }
                cur = std::move(next);
            }
        };
    {
        std::vector<PTerm> unit{{0, 0, 1}};
        walk(0, unit);
    }

    // negate and divide by prod_{h'=0}^{kappa0} (theta - Y^{q^{m+h'}})
    for (auto& x : dense) x = f.neg(x);
    for (long long h = 0; h <= kappa0; ++h) {
        const std::uint32_t E = static_cast<std::uint32_t>(qpow(q, m + h));
        for (size_t cell = 0; cell < tcells; ++cell) {
            fq_el* plane = dense.data() + cell * YB * TB;
            // divide the (theta, Y) plane by (theta - Y^E): g_k = f_{k+1} + Y^E g_{k+1}
            std::vector<fq_el> g(YB * TB, 0);
            for (std::uint32_t k = TB - 1; k-- > 0;) {
                for (std::uint32_t y = 0; y < YB; ++y) {
                    fq_el val = plane[y * TB + (k + 1)];
                    if (y >= E) val = f.add(val, g[(y - E) * TB + (k + 1)]);
                    g[y * TB + k] = val;
                }
            }
            // remainder: f_0 + Y^E g_0 must vanish
            for (std::uint32_t y = 0; y < YB; ++y) {
                fq_el r = plane[y * TB + 0];
                if (y >= E) r = f.add(r, g[(y - E) * TB + 0]);
                if (r != 0) throw NonExactDivision("universal denominator does not divide");
            }
            std::copy(g.begin(), g.end(), plane);
        }
    }

    // collect into Y-slices; deg_Y must be mu and t-degrees m-1
    std::vector<std::map<TExp, PolyA>> yslices(static_cast<size_t>(par.mu) + 1);
    for (size_t cell = 0; cell < tcells; ++cell) {
        TExp te(s);
        size_t r = cell;
        for (unsigned j = s; j-- > 0;) {
            te[j] = static_cast<std::uint32_t>(r % R);
            r /= R;
        }
        const fq_el* plane = dense.data() + cell * YB * TB;
        for (std::uint32_t y = 0; y < YB; ++y) {
            std::vector<fq_el> theta_row(TB, 0);
            bool nz = false;
            for (std::uint32_t k = 0; k < TB; ++k) {
                theta_row[k] = plane[y * TB + k];
                nz = nz || theta_row[k] != 0;
            }
            if (!nz) continue;
            if (y > static_cast<std::uint32_t>(par.mu))
                throw DomainError("universal route: Y-degree exceeds mu");
            for (unsigned j = 0; j < s; ++j)
                if (te[j] > (m == 0 ? 0u : m - 1))
                    throw DomainError("universal route: t-degree exceeds m-1");
            PolyA c = PolyA::from_coeffs(F, theta_row);
            auto& slice = yslices[y];
            auto it = slice.find(te);
            if (it == slice.end()) slice.emplace(te, c);
            else it->second = it->second + c;
        }
    }

    HPolynomial H(F, par, "universal", std::move(yslices));
    if (reference && !(H == *reference))
        throw RouteMismatch("universal and interpolation routes disagree (s=" + std::to_string(s) + ")");
    (void)opt;
    return H;
}

// ---- restriction and power sums ----

MPoly h_restrict(const HPolynomial& H, unsigned s_prime) {
    if (H.is_rational_s1()) throw DomainError("h_restrict on the s=1 object");
    const unsigned s = H.s();
    if (s_prime >= s) throw DomainError("h_restrict requires s' < s");
    const unsigned m = H.m();
    const std::uint32_t corner = m == 0 ? 0u : m - 1;
    const FqPtr& F = H.field();
    VarList vars = make_vars(true, s_prime, true, false);
    MPoly::Builder b(F, vars);
    for (size_t i = 0; i < H.y_slices().size(); ++i) {
        for (const auto& [te, p] : H.y_slices()[i]) {
            bool keep = true;
            for (unsigned j = s_prime; j < s; ++j)
                if (te[j] != corner) { keep = false; break; }
            if (!keep) continue;
            const auto& c = p.coeffs();
            for (size_t t = 0; t < c.size(); ++t) {
                if (c[t] == 0) continue;
                MPoly::Exp e{};
                e[0] = static_cast<std::uint32_t>(t);
                for (unsigned j = 0; j < s_prime; ++j) e[j + 1] = te[j];
                e[s_prime + 1] = static_cast<std::uint32_t>(i);
                b.add(e, c[t]);
            }
        }
    }
    MPoly r = b.build();
    // corner coefficient of the restriction must still be 1
    MPoly probe = r;
    for (unsigned j = 1; j <= s_prime; ++j) probe = probe.coeff_of(Var::t(j), corner);
    Degree dy = probe.deg_in(Var::Y());
    if (!(dy == Degree::of(0)) || !(probe == MPoly::one(F, probe.vars())))
        throw DomainError("restricted corner coefficient is not 1");
    return r;
}

MPolyK power_sum_via_h(const HPolynomial& H, unsigned s_prime, long long d) {
    const FqPtr& F = H.field();
    const unsigned q = F->q();
    const unsigned m = H.m();
    if (d < static_cast<long long>(m) - 1) throw DomainError("power_sum_via_h needs d >= m-1");
    MPoly R = h_restrict(H, s_prime);
    MPoly Rv = R.subst_var_theta_pow(Var::Y(), qpow(q, d + 1 - static_cast<long long>(m)));
    const CarlitzCache& C = carlitz(F);
    VarList vars = make_vars(true, s_prime, false, false);
    MPoly num = Rv.compact().embed(vars);
    for (unsigned i = 1; i <= s_prime; ++i) {
        num = num * C.b_poly(static_cast<unsigned>(d + 1 - static_cast<long long>(m)), Var::t(i)).embed(vars);
        if (num.term_count() > 30000000) throw BudgetExceeded("power_sum_via_h materialization");
    }
    return MPolyK(std::move(num), C.l_seq(static_cast<unsigned>(d)));
}

bool verify_theorem5(const HPolynomial& H, unsigned s_prime, long long d, unsigned threads) {
    const FqPtr& F = H.field();
    const unsigned q = F->q();
    const unsigned m = H.m();
    // materialized comparison when small enough
    long double cells = 1;
    for (unsigned i = 0; i < s_prime; ++i) cells *= static_cast<long double>(d + 1);
    long double cost = cells * static_cast<long double>(qpow(q, d)) +
                       cells * static_cast<long double>(qpow(q, d) / std::max(1u, q - 1));
    if (cost < 5.0e7L) {
        MPolyK lhs = power_sum(SumSpec{F, 1, s_prime, d, threads});
        MPolyK rhs = power_sum_via_h(H, s_prime, d);
        return lhs == rhs;
    }
    // complete-grid comparison: both sides have t-degree <= d per variable;
    // requires d+1 distinct nodes in F_q
    if (static_cast<long long>(q) < d + 1)
        throw BudgetExceeded("theorem5 grid comparison needs d+1 <= q");
    std::vector<fq_el> nodes(static_cast<size_t>(d) + 1);
    for (long long i = 0; i <= d; ++i) nodes[static_cast<size_t>(i)] = static_cast<fq_el>(i);
    ClassSums cs(F, nodes, d, d, threads); // single degree d, denominators l_d
    MPoly R = h_restrict(H, s_prime);

    // iterate multisets of node assignments
    std::vector<unsigned> sel(s_prime, 0);
    const Fq& f = *F;
    std::function<bool(unsigned, unsigned)> rec = [&](unsigned pos, unsigned lo) -> bool {
        if (pos == s_prime) {
            PolyA lhs = cs.value_at(sel); // l_d * S_d(1;s') at the point
            // rhs: prod_k b_{d+1-m}(v_k) * H_{s,s'}(Y=theta^{q^{d+1-m}}, t=v)
            MPoly Rv = R;
            for (unsigned j = 0; j < s_prime; ++j)
                Rv = Rv.subst_var_scalar(Var::t(j + 1), nodes[sel[j]]);
            Rv = Rv.subst_var_theta_pow(Var::Y(), qpow(q, d + 1 - static_cast<long long>(m)));
            auto slices = Rv.theta_slices();
            PolyA rhs = slices.empty() ? PolyA::zero(F) : slices.begin()->second;
            for (unsigned j = 0; j < s_prime; ++j)
                rhs = rhs * b_value(F, static_cast<unsigned>(d + 1 - static_cast<long long>(m)), nodes[sel[j]]);
            (void)f;
            return lhs == rhs;
        }
        for (unsigned x = lo; x <= static_cast<unsigned>(d); ++x) {
            sel[pos] = x;
            if (!rec(pos + 1, x)) return false;
        }
        return true;
    };
    return rec(0, 0);
}

// ---- interpolation cross-check (section 2.2 identities) ----

InterpReport interp_crosscheck(const FqPtr& F, unsigned s, long long d) {
    InterpReport rep;
    const unsigned q = F->q();
    const CarlitzCache& C = carlitz(F);
    VarList vz1 = merge_vars(make_vars(true, 1, false, true), {});
    // N_{1,d} = sum_{j<d} E_j(z) b_j(t1)
    MPolyK N1 = MPolyK::zero(F, vz1);
    for (long long j = 0; j < d; ++j) {
        MPolyK Ej = C.e_poly(static_cast<unsigned>(j));
        MPoly bj = C.b_poly(static_cast<unsigned>(j), Var::t(1));
        N1 = N1 + MPolyK(Ej.num().embed(merge_vars(vz1, Ej.num().vars())) * bj.embed(merge_vars(vz1, bj.vars())), Ej.den());
    }
    // (i) interpolation on all of A(d)
    rep.interpolates = true;
    {
        std::uint64_t total = monic_count(q, d);
        for (std::uint64_t k = 0; k < total && rep.interpolates; ++k) {
            // all polynomials of degree < d: digits of k
            std::vector<fq_el> c(static_cast<size_t>(d), 0);
            std::uint64_t kk = k;
            for (long long i = 0; i < d; ++i) {
                c[static_cast<size_t>(i)] = static_cast<fq_el>(kk % q);
                kk /= q;
            }
            PolyA a = PolyA::from_coeffs(F, c);
            MPolyK az{MPoly::from_polyA(a, make_vars(true, 0, false, false))};
            MPolyK img = substitute(N1, {{Var::z(), az}});
            // expected: a(t1)
            MPoly::Builder eb(F, make_vars(true, 1, false, false));
            for (size_t i = 0; i < a.coeffs().size(); ++i) {
                if (a.coeffs()[i] == 0) continue;
                MPoly::Exp ee{};
                ee[1] = static_cast<std::uint32_t>(i);
                eb.add(ee, a.coeffs()[i]);
            }
            MPolyK expect{eb.build()};
            if (!(img == expect)) rep.interpolates = false;
        }
    }
    // M_{s,d} = prod_i N_{1,d}(t_i)
    VarList vzs = make_vars(true, s, false, true);
    MPolyK M = MPolyK::one(F, vzs);
    for (unsigned i = 1; i <= s; ++i) {
        MPolyK Ni(N1.num().rename_var(Var::t(1), Var::t(i)), N1.den());
        M = M * Ni;
    }
    // N_{s,d} = l_d E_d psi_{s,d} = sum_{a in A(d)} a(t_1)..a(t_s) l_d (D_d E_d/(z-a)) / D_d
    MPoly de = C.de_poly(static_cast<unsigned>(d)); // D_d E_d, monic in z
    MPolyK Ns = MPolyK::zero(F, vzs);
    {
        MPoly acc = MPoly::zero(F, vzs);
        std::uint64_t total = monic_count(q, d);
        for (std::uint64_t k = 0; k < total; ++k) {
            std::vector<fq_el> c(static_cast<size_t>(d), 0);
            std::uint64_t kk = k;
            for (long long i = 0; i < d; ++i) {
                c[static_cast<size_t>(i)] = static_cast<fq_el>(kk % q);
                kk /= q;
            }
            PolyA a = PolyA::from_coeffs(F, c);
            // z - a, monic in z
            MPoly za = MPoly::var(F, vzs, Var::z()) - MPoly::from_polyA(a, vzs);
            MPoly quot = de.embed(vzs).exact_div(za);
            // product of the twists
            MPoly tw = MPoly::one(F, vzs);
            for (unsigned i = 1; i <= s; ++i) {
                MPoly::Builder tb(F, vzs);
                for (size_t x = 0; x < c.size(); ++x) {
                    if (c[x] == 0) continue;
                    MPoly::Exp ee{};
                    ee[i] = static_cast<std::uint32_t>(x); // t_i sits at position i
                    tb.add(ee, c[x]);
                }
                tw = tw * tb.build();
            }
            acc = acc + tw * quot;
        }
        PolyA ld = C.l_seq(static_cast<unsigned>(d));
        Ns = MPolyK(acc * MPoly::from_polyA(ld, vzs), C.d_seq(static_cast<unsigned>(d)));
    }
    // (ii) E_d | M - N
    MPolyK Diff = M - Ns;
    auto [G, R] = Diff.num().divrem_in_var(de.embed(merge_vars(vzs, de.vars())), Var::z());
    rep.divisible = R.is_zero();
    // (iii) ((M-N)/(l_d E_d))|_{z=0} = -F_d(1;s); the nonzero right side needs
    // s >= 2 (so that (M/E_d)_{z=0} = 0) and s = 1 mod (q-1) (so that the
    // unit-scaling sum is -1); otherwise the extraction value is plain zero
    if (rep.divisible) {
        MPoly G0 = G.coeff_of(Var::z(), 0);
        MPolyK lhs(G0 * MPoly::from_polyA(C.d_seq(static_cast<unsigned>(d)), G0.vars()),
                   Diff.den() * C.l_seq(static_cast<unsigned>(d)));
        if (s == 1) {
            rep.extraction = Diff.is_zero() && lhs.is_zero();
        } else if ((s - 1) % (q - 1) == 0) {
            MPolyK rhs = -harmonic_sum(SumSpec{F, 1, s, d, 1});
            rep.extraction = lhs == rhs;
        } else {
            rep.extraction = lhs.is_zero();
        }
    }
    return rep;
}

// ---- cache ----

std::string h_cache_path(const std::string& dir, const FqPtr& F, unsigned s) {
    std::string fname = "H_q" + std::to_string(F->q()) + "_s" + std::to_string(s) + ".txt";
    return dir + "/" + fname;
}

std::string HPolynomial::cache_text() const {
    std::ostringstream out;
    out << "fzv-hcache v1\n";
    out << "p: " << F_->p() << "\n";
    out << "e: " << F_->e() << "\n";
    out << "f:";
    for (unsigned c : F_->modulus()) out << ' ' << c;
    out << "\n";
    out << "q: " << F_->q() << "\n";
    out << "s: " << par_.s << "\n";
    out << "m: " << par_.m << "\n";
    out << "mu: " << par_.mu << "\n";
    out << "route: " << route_ << "\n";
    std::ostringstream body;
    if (s1_) {
        body << "rational 1/(t1-theta)\n";
    } else {
        for (size_t i = 0; i < D_.size(); ++i) {
            body << "Y " << i << "\n";
            for (const auto& [te, p] : D_[i]) {
                for (size_t j = 0; j < te.size(); ++j) {
                    if (j) body << ' ';
                    body << te[j];
                }
                body << " : " << p.emit() << "\n";
            }
        }
    }
    std::string b = body.str();
    out << "hash: " << hash_hex(b) << "\n";
    out << "body:\n" << b;
    return out.str();
}

HPolynomial HPolynomial::from_cache_text(const FqPtr& F, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "fzv-hcache v1") throw ParseError("bad cache magic");
    std::map<std::string, std::string> hdr;
    while (std::getline(in, line)) {
        if (line == "body:") break;
        size_t colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("bad cache header line");
        std::string key = line.substr(0, colon);
        std::string val = line.substr(colon + 1);
        size_t a = val.find_first_not_of(' ');
        hdr[key] = a == std::string::npos ? "" : val.substr(a);
    }
    std::string body, rest;
    {
        std::ostringstream bo;
        while (std::getline(in, line)) bo << line << "\n";
        body = bo.str();
    }
    if (hdr.at("hash") != hash_hex(body)) throw CacheMismatch("cache body hash mismatch");
    if (std::stoul(hdr.at("q")) != F->q()) throw CacheMismatch("cache q mismatch");
    unsigned s = static_cast<unsigned>(std::stoul(hdr.at("s")));
    HParams par = h_params(F->q(), s);
    if (par.m != std::stoul(hdr.at("m")) || par.mu != std::stol(hdr.at("mu")))
        throw CacheMismatch("cache m/mu mismatch");
    if (s == 1) {
        HPolynomial h = rational_s1(F);
        h.route_ = hdr.at("route");
        return h;
    }
    std::vector<std::map<TExp, PolyA>> ys(static_cast<size_t>(par.mu) + 1);
    std::istringstream bin(body);
    long long ycur = -1;
    while (std::getline(bin, line)) {
        if (line.empty()) continue;
        if (line.rfind("Y ", 0) == 0) {
            ycur = std::stoll(line.substr(2));
            if (ycur < 0 || ycur > par.mu) throw ParseError("cache Y index out of range");
            continue;
        }
        size_t colon = line.find(" : ");
        if (colon == std::string::npos || ycur < 0) throw ParseError("bad cache body line");
        std::istringstream es(line.substr(0, colon));
        TExp te(s);
        for (unsigned j = 0; j < s; ++j) {
            if (!(es >> te[j])) throw ParseError("bad cache exponent line");
        }
        PolyA p = PolyA::parse(F, line.substr(colon + 3));
        ys[static_cast<size_t>(ycur)].emplace(std::move(te), std::move(p));
    }
    HPolynomial h(F, par, hdr.at("route"), std::move(ys));
    return h;
}

void h_cache_write(const std::string& dir, const HPolynomial& H) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::string path = h_cache_path(dir, H.field(), H.s());
    std::string text = H.cache_text();
    if (fs::exists(path)) {
        std::ifstream in(path);
        std::stringstream ss;
        ss << in.rdbuf();
        // write-once: a differing recomputation is an error, never an overwrite
        if (ss.str() != text) throw CacheMismatch("existing cache file differs: " + path);
        return;
    }
    std::ofstream out(path);
    out << text;
}

std::optional<HPolynomial> h_cache_load(const FqPtr& F, const std::string& dir, unsigned s,
                                        bool verify_holdout, unsigned threads) {
    namespace fs = std::filesystem;
    std::string path = h_cache_path(dir, F, s);
    if (!fs::exists(path)) return std::nullopt;
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    HPolynomial H = HPolynomial::from_cache_text(F, ss.str());
    if (verify_holdout && s != 1) {
        RowOptions opt;
        opt.threads = threads;
        long long d = H.m() + H.mu() + 1;
        HTableRow r = h_row(F, s, d, opt);
        if (!(H.eval_at_frob(d - H.m()) == r.coeffs))
            throw CacheMismatch("cached H fails holdout re-derivation");
    }
    return H;
}

} // namespace fzv
