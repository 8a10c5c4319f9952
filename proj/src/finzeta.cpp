#include "fzv/finzeta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fzv {

namespace {

long long qpow(unsigned q, long long e) {
    long long r = 1;
    while (e-- > 0) r *= q;
    return r;
}

} // namespace

ZetaComponent zeta_component(const QuotPtr& P, long long n, unsigned s) {
    ZetaComponent z;
    z.P = P;
    z.n = n;
    z.s = s;
    z.value = harmonic_sum_mod(SumSpec{P->field(), n, s, P->degree(), 1}, P);
    z.is_zero = z.value.is_zero();
    z.is_unit = !z.is_zero;
    return z;
}

PolyA pi_hat(const QuotCtx& P) {
    PolyA dP = P.modulus().derivative();
    PolyA inv = invert_mod(dP, P);
    return (-inv).divrem(P.modulus()).second;
}

MPoly omega_hat_denominator(const QuotCtx& P) {
    // P(t_1): substitute t for theta in P
    VarList vars = make_vars(false, 1, false, false);
    MPoly::Builder b(P.field(), vars);
    const auto& c = P.modulus().coeffs();
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        MPoly::Exp e{};
        e[0] = static_cast<std::uint32_t>(i);
        b.add(e, c[i]);
    }
    return b.build();
}

bool theorem1_check(const QuotPtr& Pctx, unsigned s, const HPolynomial* H) {
    const QuotCtx& R = *Pctx;
    const FqPtr& F = R.field();
    const unsigned q = F->q();
    HParams par = h_params(q, s);
    const unsigned m = par.m;
    const long long d = R.degree();

    ZetaComponent Z = zeta_component(Pctx, 1, s);
    if (!Z.is_unit) return false;

    // LHS = Z * P'(theta) * prod_{i=1..s} prod_{j=1..m} (t_i - theta^{q^{d-j}})
    ModTPoly lhs = Z.value.scale(R.reduce(R.modulus().derivative()));
    for (unsigned i = 0; i < s; ++i) {
        for (unsigned j = 1; j <= m; ++j) {
            long long e = ((d - static_cast<long long>(j)) % d + d) % d;
            QuotCtx::El c = R.frobenius_theta_el(static_cast<size_t>(e));
            lhs = lhs.mul_univariate(i, {R.neg(c), R.one()});
        }
    }

    // RHS = prod_i P(t_i) * H|_{Y=theta^{q^{d-m}}}
    ModTPoly rhs(Pctx, std::vector<std::uint32_t>(s, 1));
    if (s == 1 && m == 0) {
        // H_1 = 1/(t_1 - theta): identity becomes Z P' (t_1 - theta) = P(t_1)
        rhs.at(0) = R.one();
        lhs = lhs.mul_univariate(0, {R.neg(R.theta()), R.one()});
    } else {
        if (H == nullptr || H->s() != s) throw DomainError("theorem1_check needs H_s");
        long long e = (((d - static_cast<long long>(m)) % d) + d) % d;
        QuotCtx::El yv = R.frobenius_theta_el(static_cast<size_t>(e));
        std::vector<std::uint32_t> dims(s, m == 0 ? 1u : m);
        ModTPoly acc(Pctx, dims);
        QuotCtx::El ypow = R.one();
        for (size_t i = 0; i < H->y_slices().size(); ++i) {
            for (const auto& [te, p] : H->y_slices()[i]) {
                QuotCtx::El c = R.mul(R.reduce(p), ypow);
                if (c == 0) continue;
                std::vector<std::uint32_t> k(te.begin(), te.end());
                size_t idx = acc.cell_index(k);
                acc.at(idx) = R.add(acc.at(idx), c);
            }
            ypow = R.mul(ypow, yv);
        }
        rhs = acc;
    }
    // multiply by P(t_i) for every i
    std::vector<QuotCtx::El> pc;
    for (fq_el c : R.modulus().coeffs()) pc.push_back(R.from_fq(c));
    for (unsigned i = 0; i < s; ++i) rhs = rhs.mul_univariate(i, pc);

    return (lhs - rhs).is_zero();
}

PsiReport psi_nonvanish_check(const FqPtr& F, unsigned s, long long d, unsigned threads) {
    PsiReport rep;
    const unsigned q = F->q();
    HParams par = h_params(q, s);
    // Psi_d(theta) = (theta^{q^d} - theta)/(theta^q - theta)
    PolyA num = PolyA::theta_pow(F, qpow(q, d)) - PolyA::theta(F);
    PolyA den = PolyA::theta_pow(F, q) - PolyA::theta(F);
    PolyA psi = num.exact_div(den);
    // (i) for prime d: product of all monic irreducibles of degree d
    bool dprime = d >= 2;
    for (long long x = 2; x * x <= d; ++x)
        if (d % x == 0) dprime = false;
    if (dprime) {
        PolyA prod = PolyA::one(F);
        for (const auto& P : enumerate_irreducibles(F, d)) prod = prod * P;
        rep.factorization = prod == psi;
    } else {
        rep.factorization = true; // the device applies to prime d only
    }
    // (ii) H_{s,d} mod Psi_d != 0
    RowOptions opt;
    opt.threads = threads;
    HTableRow row = h_row(F, s, d, opt);
    bool nonzero = false;
    for (const auto& [te, p] : row.coeffs) {
        if (!p.divrem(psi).second.is_zero()) {
            nonzero = true;
            break;
        }
    }
    rep.nonvanishing = nonzero;
    // (iii) w = mu q^{d-m} + m - 1 < q^d - q
    long long w = par.mu * qpow(q, d - par.m) + par.m - 1;
    rep.degree_window = w < qpow(q, d) - q;
    return rep;
}

ModTPoly bernoulli_goss_mod(const FqPtr& F, unsigned long long N, unsigned s, const QuotPtr& ctx) {
    const long long cutoff = bernoulli_goss_cutoff(F->q(), N, s);
    std::vector<std::uint32_t> dims(s, static_cast<std::uint32_t>(cutoff) + 1);
    ModTPoly acc(ctx, dims);
    for (long long j = 0; j <= cutoff; ++j)
        acc = acc + power_sum_mod(F, -static_cast<long long>(N), s, j, ctx);
    ModTPoly next = power_sum_mod(F, -static_cast<long long>(N), s, cutoff + 1, ctx);
    if (!next.is_zero())
        throw DomainError("bernoulli_goss_mod: term beyond cutoff does not vanish mod P");
    return acc;
}

bool prop1_check(const QuotPtr& P, long long n, unsigned s) {
    const FqPtr& F = P->field();
    const unsigned q = F->q();
    if (n < 1) throw PreconditionUnmet("prop1_check needs n >= 1");
    unsigned long long ell = digit_profile(q, static_cast<unsigned long long>(n)).ell;
    if (ell <= s) throw PreconditionUnmet("prop1_check needs l_q(n) > s");
    if (static_cast<unsigned long long>(n) >= P->card())
        throw PreconditionUnmet("prop1_check needs q^{deg P} > n");
    ZetaComponent Z = zeta_component(P, n, s);
    unsigned long long N = P->card() - 1 - static_cast<unsigned long long>(n);
    ModTPoly bg = bernoulli_goss_mod(F, N, s, P);
    if (!(Z.value - bg).is_zero()) return false;
    // the vanishing direction needs N >= 1: at n = q^d - 1 the polynomial
    // BG(0;s) does not vanish (the finite exceptional set of the theorem)
    if (N >= 1 && (static_cast<unsigned long long>(n) % (q - 1)) == (s % (q - 1)) && !Z.is_zero)
        return false;
    return true;
}

ScanReport conjecture_scan(const FqPtr& F, long long maxdeg, long long n_max, unsigned s_max,
                           unsigned threads, std::uint64_t budget) {
    (void)threads;
    const unsigned q = F->q();
    ScanReport rep;
    rep.q = q;
    {
        std::string f;
        for (unsigned c : F->modulus()) f += std::to_string(c) + ",";
        rep.f = f;
    }
    rep.maxdeg = maxdeg;
    rep.n_max = n_max;
    rep.s_max = s_max;

    // cost guard: sum over cells of the enumeration work
    {
        long double cost = 0;
        long double primes = 0;
        for (long long d = 1; d <= maxdeg; ++d) {
            primes += static_cast<long double>(count_irreducibles(q, d));
            long double inner = 0;
            for (long long i = 0; i < d; ++i)
                inner += static_cast<long double>(monic_count(q, i)) *
                         std::pow(static_cast<long double>(i + 1), static_cast<long double>(s_max));
            cost += static_cast<long double>(count_irreducibles(q, d)) *
                    static_cast<long double>(n_max) * (s_max + 1) * inner;
        }
        if (cost > static_cast<long double>(budget))
            throw BudgetExceeded("conjecture_scan estimated cost " + std::to_string(static_cast<double>(cost)));
    }

    for (long long d = 1; d <= maxdeg; ++d) {
        for (const auto& P : enumerate_irreducibles(F, d)) {
            auto ctx = std::make_shared<const QuotCtx>(P, false);
            for (long long n = 1; n <= n_max; ++n) {
                unsigned long long ell = digit_profile(q, static_cast<unsigned long long>(n)).ell;
                for (unsigned s = 0; s <= s_max; ++s) {
                    ZetaComponent Z = zeta_component(ctx, n, s);
                    ScanCell cell;
                    cell.P = P.emit();
                    cell.n = n;
                    cell.s = s;
                    cell.zero = Z.is_zero;
                    bool congruent = (static_cast<unsigned long long>(n) % (q - 1)) == (s % (q - 1));
                    if (!congruent) {
                        cell.clause = s == 0 ? "c1-s0" : "c1";
                        cell.expect = s == 0 ? "open" : "nonzero";
                    } else if (ell > s) {
                        // the per-prime zero claim holds for n < q^{deg P} - 1;
                        // n = q^{deg P} - 1 and n >= q^{deg P} are the ranges the
                        // almost-all quantifier absorbs
                        bool in_range = static_cast<unsigned long long>(n) + 1 < ctx->card();
                        cell.clause = in_range ? "c2v" : "c2v-range";
                        cell.expect = in_range ? "zero" : "open";
                    } else {
                        cell.clause = "c2nv";
                        cell.expect = "open-nonzero"; // conjectural direction
                    }
                    cell.value_hash = hash_hex(Z.value.lift().emit());
                    std::string id = "q=" + std::to_string(q) + " P=" + cell.P +
                                     " n=" + std::to_string(n) + " s=" + std::to_string(s);
                    if (cell.clause == "c1" && cell.zero) {
                        cell.hard_fail = true;
                        rep.hard_counterexamples.push_back(id + " [clause 1 zero; possible exceptional prime]");
                    } else if (cell.clause == "c2v" && !cell.zero) {
                        cell.hard_fail = true;
                        rep.hard_counterexamples.push_back(id + " [clause 2 vanishing violated]");
                    } else if (cell.clause == "c2nv" && cell.zero) {
                        cell.soft_finding = true;
                        rep.soft_findings.push_back(id + " [conjectural nonvanishing region: zero component] value=" +
                                                    Z.value.lift().emit());
                    } else if (cell.clause == "c1-s0" && cell.zero) {
                        cell.soft_finding = true;
                        rep.soft_findings.push_back(id + " [s=0 clause-1 region: zero component]");
                    }
                    rep.cells.push_back(std::move(cell));
                }
            }
        }
    }
    return rep;
}

std::string ScanReport::text() const {
    std::ostringstream out;
    out << "scan-report v1\n";
    out << "q: " << q << "\n";
    out << "f: " << f << "\n";
    out << "maxdeg: " << maxdeg << "\n";
    out << "n_max: " << n_max << "\n";
    out << "s_max: " << s_max << "\n";
    out << "cells: " << cells.size() << "\n";
    for (const auto& c : cells) {
        out << "P=" << c.P << " n=" << c.n << " s=" << c.s
            << " verdict=" << (c.zero ? "zero" : "nonzero")
            << " clause=" << c.clause << " expect=" << c.expect
            << " hash=" << c.value_hash;
        if (c.hard_fail) out << " HARD";
        if (c.soft_finding) out << " FINDING";
        out << "\n";
    }
    out << "summary:\n";
    out << "  hard_counterexamples: " << hard_counterexamples.size() << "\n";
    for (const auto& h : hard_counterexamples) out << "    " << h << "\n";
    out << "  soft_findings: " << soft_findings.size() << "\n";
    for (const auto& s : soft_findings) out << "    " << s << "\n";
    return out.str();
}

bool bc_unit_check(const QuotPtr& P, unsigned s) {
    const unsigned q = P->field()->q();
    if (s <= 1 || (s - 1) % (q - 1) != 0) throw DomainError("bc_unit_check needs s > 1, s = 1 mod (q-1)");
    if (P->card() < s) throw DomainError("bc_unit_check needs q^{deg P} >= s");
    unsigned long long j = P->card() - s;
    PolyA bc = carlitz(P->field()).bc_number_mod(j, *P);
    return !bc.is_zero();
}

} // namespace fzv
