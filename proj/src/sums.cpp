#include "fzv/sums.hpp"

#include <algorithm>

#include "fzv/par.hpp"

namespace fzv {

namespace detail {

void exact_quotient_raw(const Fq& F, const fq_el* num, size_t nn, const fq_el* den, size_t nd,
                        fq_el* out, fq_el* scratch, bool check_exact) {
    // den monic: den[nd-1] == 1
    std::copy(num, num + nn, scratch);
    const size_t nq = nn - nd + 1;
    if (F.e() == 1) {
        const unsigned p = F.p();
        fq_el negden[64];
        for (size_t j = 0; j + 1 < nd; ++j) negden[j] = static_cast<fq_el>((p - den[j]) % p);
        for (size_t k = nq; k-- > 0;) {
            const fq_el lead = scratch[k + nd - 1];
            out[k] = lead;
            if (lead == 0) continue;
            fq_el* row = scratch + k;
            for (size_t j = 0; j + 1 < nd; ++j) {
                unsigned v = row[j] + lead * negden[j];
                row[j] = static_cast<fq_el>(v % p);
            }
        }
    } else {
        for (size_t k = nq; k-- > 0;) {
            const fq_el lead = scratch[k + nd - 1];
            out[k] = lead;
            if (lead == 0) continue;
            fq_el* row = scratch + k;
            for (size_t j = 0; j + 1 < nd; ++j)
                row[j] = F.sub(row[j], F.mul(lead, den[j]));
        }
    }
    if (check_exact) {
        for (size_t j = 0; j + 1 < nd; ++j)
            if (scratch[j] != 0) throw NonExactDivision("raw quotient remainder");
    }
}

} // namespace detail

std::uint64_t monic_count(unsigned q, long long d) {
    std::uint64_t c = 1;
    for (long long i = 0; i < d; ++i) c *= q;
    return c;
}

PolyA monic_at(const FqPtr& F, long long d, std::uint64_t k) {
    std::vector<fq_el> c(static_cast<size_t>(d) + 1, 0);
    c.back() = 1;
    const unsigned q = F->q();
    for (long long i = 0; i < d; ++i) {
        c[static_cast<size_t>(i)] = static_cast<fq_el>(k % q);
        k /= q;
    }
    return PolyA::from_coeffs(F, std::move(c));
}

std::vector<PolyA> monic_enum(const FqPtr& F, long long d) {
    if (d < 0) throw DomainError("monic_enum needs d >= 0");
    std::uint64_t total = monic_count(F->q(), d);
    if (total > (1u << 22)) throw BudgetExceeded("monic_enum materialization too large");
    std::vector<PolyA> out;
    out.reserve(total);
    for (std::uint64_t k = 0; k < total; ++k) out.push_back(monic_at(F, d, k));
    return out;
}

void for_each_monic(const FqPtr& F, long long d,
                    const std::function<void(const std::vector<fq_el>&)>& fn) {
    const unsigned q = F->q();
    std::vector<fq_el> c(static_cast<size_t>(d) + 1, 0);
    c.back() = 1;
    std::uint64_t total = monic_count(q, d);
    for (std::uint64_t k = 0; k < total; ++k) {
        std::uint64_t kk = k;
        for (long long i = 0; i < d; ++i) {
            c[static_cast<size_t>(i)] = static_cast<fq_el>(kk % q);
            kk /= q;
        }
        fn(c);
    }
}

PolyA l_poly(const FqPtr& F, unsigned n) { return carlitz(F).l_seq(n); }

SumTensor range_sum_tensor(const SumSpec& spec, long long lo, long long hi) {
    if (lo < 0 || hi < lo) throw DomainError("range_sum_tensor: bad degree range");
    const FqPtr& F = spec.F;
    const unsigned q = F->q();
    const long long n = spec.n;
    const unsigned s = spec.s;

    PolyA L = l_poly(F, static_cast<unsigned>(hi));
    PolyA Lpow = n >= 1 ? L.pow(n) : PolyA::one(F);
    const size_t Llen = Lpow.is_zero() ? 1 : static_cast<size_t>(Lpow.deg_int()) + 1;
    size_t cap = n >= 1 ? Llen : static_cast<size_t>(-n) * static_cast<size_t>(hi) + 1;
    std::vector<std::uint32_t> dims(s, static_cast<std::uint32_t>(hi) + 1);

    // global index space across degrees lo..hi
    std::vector<std::uint64_t> base(static_cast<size_t>(hi - lo) + 2, 0);
    for (long long i = lo; i <= hi; ++i)
        base[static_cast<size_t>(i - lo) + 1] = base[static_cast<size_t>(i - lo)] + monic_count(q, i);
    const std::uint64_t total = base.back();

    auto work = [&](std::size_t wlo, std::size_t whi, TPoly& acc) {
        std::vector<fq_el> a, u, scratch;
        a.reserve(static_cast<size_t>(hi) + 1);
        u.resize(cap);
        scratch.resize(Lpow.coeffs().size() + 1);
        std::vector<const std::vector<fq_el>*> imgs(s, &a);
        for (std::size_t g = wlo; g < whi; ++g) {
            // decode degree and index
            size_t di = static_cast<size_t>(std::upper_bound(base.begin(), base.end(), g) - base.begin()) - 1;
            long long i = lo + static_cast<long long>(di);
            std::uint64_t k = g - base[di];
            a.assign(static_cast<size_t>(i) + 1, 0);
            a.back() = 1;
            for (long long x = 0; x < i; ++x) {
                a[static_cast<size_t>(x)] = static_cast<fq_el>(k % q);
                k /= q;
            }
            size_t ulen;
            if (n >= 1) {
                if (n == 1) {
                    ulen = Lpow.coeffs().size() - static_cast<size_t>(i);
                    detail::exact_quotient_raw(*F, Lpow.coeffs().data(), Lpow.coeffs().size(),
                                               a.data(), a.size(), u.data(), scratch.data(), true);
                } else {
                    PolyA ap = PolyA::from_coeffs(F, a);
                    PolyA up = Lpow.exact_div(ap.pow(n));
                    ulen = up.coeffs().size();
                    std::copy(up.coeffs().begin(), up.coeffs().end(), u.begin());
                }
            } else {
                PolyA ap = PolyA::from_coeffs(F, a);
                PolyA up = ap.pow(-n);
                ulen = up.coeffs().size();
                std::copy(up.coeffs().begin(), up.coeffs().end(), u.begin());
            }
            acc.add_rank1(imgs, u.data(), ulen);
        }
    };
    auto fold = [](TPoly& acc, const TPoly& part) { acc.add_inplace(part); };
    TPoly init(F, dims, cap);
    std::size_t chunk = std::max<std::size_t>(1, total / std::max(1u, spec.threads * 8));
    TPoly num = parallel_reduce<TPoly>(total, spec.threads, chunk, work, fold, init);
    return {std::move(num), std::move(Lpow)};
}

SumTensor power_sum_tensor(const SumSpec& spec) {
    return range_sum_tensor(spec, spec.d, spec.d);
}

namespace {

MPolyK tensor_to_mpolyk(const SumTensor& st, unsigned s) {
    VarList vars = make_vars(true, s, false, false);
    MPoly num = st.num.to_mpoly(vars);
    return MPolyK(std::move(num), st.den);
}

} // namespace

MPolyK power_sum(const SumSpec& spec) {
    if (spec.d < 0) throw DomainError("power_sum: d >= 0");
    return tensor_to_mpolyk(power_sum_tensor(spec), spec.s);
}

MPolyK harmonic_sum(const SumSpec& spec) {
    if (spec.d < 1) throw DomainError("harmonic_sum: d >= 1");
    return tensor_to_mpolyk(range_sum_tensor(spec, 0, spec.d - 1), spec.s);
}

MPolyK tail_sum(const SumSpec& spec, long long D) {
    if (spec.d > D) throw DomainError("tail_sum: d <= D required");
    return tensor_to_mpolyk(range_sum_tensor(spec, spec.d, D), spec.s);
}

MPoly simon_sum(const FqPtr& F, unsigned j, unsigned s, unsigned threads) {
    SumSpec spec{F, 0, s, static_cast<long long>(j), threads};
    SumTensor st = power_sum_tensor(spec);
    return st.num.to_mpoly(make_vars(true, s, false, false)).compact().embed(make_vars(false, s, false, false));
}

bool simon_sum_is_zero(const FqPtr& F, unsigned j, unsigned s, unsigned threads) {
    const unsigned q = F->q();
    // witness evaluation in an extension field: a nonzero value proves
    // nonvanishing without materializing the (j+1)^s tensor
    {
        unsigned kappa = 8;
        PolyA P = PolyA::zero(F);
        for (std::uint64_t seed = 1; seed < 4000; ++seed) {
            PolyA cand = monic_at(F, kappa, 0x9e3779b97f4a7c15ULL * seed % monic_count(q, kappa));
            if (is_irreducible(cand)) { P = cand; break; }
        }
        if (!P.is_zero()) {
            auto ctx = std::make_shared<const QuotCtx>(P, false);
            std::uint64_t state = 0x243f6a8885a308d3ULL + j * 1315423911ULL + s;
            auto rnd = [&]() {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                return state;
            };
            for (unsigned trial = 0; trial < 3; ++trial) {
                std::vector<QuotCtx::El> xi(s);
                for (auto& x : xi) x = rnd() % ctx->card();
                // powers xi^i for i <= j
                std::vector<std::vector<QuotCtx::El>> pw(s, std::vector<QuotCtx::El>(j + 1));
                for (unsigned v = 0; v < s; ++v) {
                    pw[v][0] = ctx->one();
                    for (unsigned i = 1; i <= j; ++i) pw[v][i] = ctx->mul(pw[v][i - 1], xi[v]);
                }
                QuotCtx::El acc = 0;
                for_each_monic(F, j, [&](const std::vector<fq_el>& a) {
                    QuotCtx::El prod = ctx->one();
                    for (unsigned v = 0; v < s && prod != 0; ++v) {
                        QuotCtx::El av = 0;
                        for (size_t i = 0; i < a.size(); ++i) {
                            if (a[i] == 0) continue;
                            QuotCtx::El term = pw[v][i];
                            if (a[i] != 1) {
                                // scalar multiple: digitwise F_q scaling
                                QuotCtx::El t2 = 0, w = 1;
                                QuotCtx::El tt = term;
                                for (long long dd = 0; dd < ctx->degree(); ++dd) {
                                    t2 += static_cast<QuotCtx::El>(F->mul(static_cast<fq_el>(tt % q), a[i])) * w;
                                    tt /= q;
                                    w *= q;
                                }
                                term = t2;
                            }
                            av = ctx->add(av, term);
                        }
                        prod = ctx->mul(prod, av);
                    }
                    acc = ctx->add(acc, prod);
                });
                if (acc != 0) return false; // certified nonzero
            }
        }
    }
    // full exact expansion
    return simon_sum(F, j, s, threads).is_zero();
}

long long bernoulli_goss_cutoff(unsigned q, unsigned long long N, unsigned s) {
    unsigned long long ell = digit_profile(q, N).ell;
    return static_cast<long long>((s + ell) / (q - 1));
}

MPoly bernoulli_goss(const FqPtr& F, unsigned long long N, unsigned s, unsigned threads) {
    const long long cutoff = bernoulli_goss_cutoff(F->q(), N, s);
    SumSpec spec{F, -static_cast<long long>(N), s, 0, threads};
    SumTensor st = range_sum_tensor(spec, 0, cutoff);
    // defense against an off-by-one in the cutoff: the first omitted degree
    // must contribute zero
    SumTensor next = range_sum_tensor(spec, cutoff + 1, cutoff + 1);
    if (!next.num.is_zero())
        throw DomainError("bernoulli_goss: term beyond cutoff does not vanish");
    return st.num.to_mpoly(make_vars(true, s, false, false));
}

ModTPoly power_sum_mod(const FqPtr& F, long long n, unsigned s, long long j, const QuotPtr& ctx) {
    const unsigned q = F->q();
    std::vector<std::uint32_t> dims(s, static_cast<std::uint32_t>(j) + 1);
    ModTPoly acc(ctx, dims);
    std::vector<std::vector<QuotCtx::El>> imgs(s, std::vector<QuotCtx::El>(static_cast<size_t>(j) + 1));
    for_each_monic(F, j, [&](const std::vector<fq_el>& a) {
        // a has degree < deg P or not; reduce via packing when possible
        PolyA ap = PolyA::from_coeffs(F, a);
        QuotCtx::El ae = ctx->reduce(ap);
        QuotCtx::El w;
        if (n == 0) w = ctx->one();
        else if (n > 0) w = ctx->pow(ctx->inv(ae), n);
        else w = ctx->pow(ae, -n);
        for (unsigned v = 0; v < s; ++v)
            for (size_t i = 0; i < a.size(); ++i) imgs[v][i] = ctx->from_fq(a[i]);
        acc.add_rank1(imgs, w);
    });
    return acc;
}

ModTPoly harmonic_sum_mod(const SumSpec& spec, const QuotPtr& ctx) {
    if (spec.d != ctx->degree())
        throw PreconditionUnmet("harmonic_sum_mod: d must equal deg P");
    const unsigned s = spec.s;
    std::vector<std::uint32_t> dims(s, static_cast<std::uint32_t>(std::max<long long>(spec.d - 1, 0)) + 1);
    ModTPoly acc(ctx, dims);
    for (long long i = 0; i < spec.d; ++i)
        acc = acc + power_sum_mod(spec.F, spec.n, s, i, ctx);
    return acc;
}

ClassSums::ClassSums(FqPtr F, std::vector<fq_el> nodes, long long lo, long long D, unsigned threads)
    : F_(std::move(F)), nodes_(std::move(nodes)), lo_(lo), D_(D) {
    const unsigned q = F_->q();
    lD_ = l_poly(F_, static_cast<unsigned>(D));
    rowlen_ = lD_.coeffs().size();
    nclasses_ = 1;
    for (size_t k = 0; k < nodes_.size(); ++k) nclasses_ *= q;

    std::vector<std::uint64_t> base(static_cast<size_t>(D - lo) + 2, 0);
    for (long long i = lo; i <= D; ++i)
        base[static_cast<size_t>(i - lo) + 1] = base[static_cast<size_t>(i - lo)] + monic_count(q, i);
    const std::uint64_t total = base.back();

    using Rows = std::vector<fq_el>;
    auto work = [&](std::size_t wlo, std::size_t whi, Rows& rows) {
        const Fq& F = *F_;
        std::vector<fq_el> a, u(rowlen_), scratch(rowlen_ + 1);
        for (std::size_t g = wlo; g < whi; ++g) {
            size_t di = static_cast<size_t>(std::upper_bound(base.begin(), base.end(), g) - base.begin()) - 1;
            long long i = lo_ + static_cast<long long>(di);
            std::uint64_t k = g - base[di];
            a.assign(static_cast<size_t>(i) + 1, 0);
            a.back() = 1;
            for (long long x = 0; x < i; ++x) {
                a[static_cast<size_t>(x)] = static_cast<fq_el>(k % q);
                k /= q;
            }
            // class of a: evaluations at the nodes
            size_t cls = 0, w = 1;
            for (size_t nn = 0; nn < nodes_.size(); ++nn) {
                fq_el v = 0;
                for (size_t x = a.size(); x-- > 0;) v = F.add(F.mul(v, nodes_[nn]), a[x]);
                cls += static_cast<size_t>(v) * w;
                w *= q;
            }
            const size_t ulen = rowlen_ - static_cast<size_t>(i);
            detail::exact_quotient_raw(F, lD_.coeffs().data(), rowlen_, a.data(), a.size(),
                                       u.data(), scratch.data(), true);
            fq_el* dst = rows.data() + cls * rowlen_;
            if (F.e() == 1) {
                const unsigned p = F.p();
                for (size_t t = 0; t < ulen; ++t) {
                    fq_el v = static_cast<fq_el>(dst[t] + u[t]);
                    dst[t] = v >= p ? static_cast<fq_el>(v - p) : v;
                }
            } else {
                for (size_t t = 0; t < ulen; ++t) dst[t] = F.add(dst[t], u[t]);
            }
        }
    };
    auto fold = [&](Rows& acc, const Rows& part) {
        const Fq& F = *F_;
        if (F.e() == 1) {
            const unsigned p = F.p();
            for (size_t t = 0; t < acc.size(); ++t) {
                fq_el v = static_cast<fq_el>(acc[t] + part[t]);
                acc[t] = v >= p ? static_cast<fq_el>(v - p) : v;
            }
        } else {
            for (size_t t = 0; t < acc.size(); ++t) acc[t] = F.add(acc[t], part[t]);
        }
    };
    Rows init(nclasses_ * rowlen_, 0);
    std::size_t chunk = std::max<std::size_t>(1, total / std::max(1u, threads * 8));
    rows_ = parallel_reduce<Rows>(total, threads, chunk, work, fold, init);
}

PolyA ClassSums::value_at(const std::vector<unsigned>& sel) const {
    const Fq& F = *F_;
    const unsigned q = F.q();
    // counts per node
    std::vector<unsigned> cnt(nodes_.size(), 0);
    for (unsigned x : sel) {
        if (x >= nodes_.size()) throw IndexOutOfRange("ClassSums::value_at node index");
        ++cnt[x];
    }
    std::vector<fq_el> out(rowlen_, 0);
    for (size_t cls = 0; cls < nclasses_; ++cls) {
        // digits of cls are the node evaluations
        fq_el c = 1;
        size_t cc = cls;
        for (size_t nn = 0; nn < nodes_.size(); ++nn) {
            fq_el digit = static_cast<fq_el>(cc % q);
            cc /= q;
            if (cnt[nn] > 0) c = F.mul(c, F.pow(digit, cnt[nn]));
            if (c == 0) break;
        }
        if (c == 0) continue;
        const fq_el* src = rows_.data() + cls * rowlen_;
        for (size_t t = 0; t < rowlen_; ++t)
            out[t] = F.add(out[t], F.mul(c, src[t]));
    }
    return PolyA::from_coeffs(F_, std::move(out));
}

} // namespace fzv
