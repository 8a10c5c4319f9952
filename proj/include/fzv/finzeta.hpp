#ifndef FZV_FINZETA_HPP
#define FZV_FINZETA_HPP

#include <string>
#include <vector>

#include "fzv/hpoly.hpp"
#include "fzv/tate.hpp"

namespace fzv {

// One component F_{deg P}(n;s) mod P of a finite zeta value. The component
// ring F_q(t_1..t_s)[theta]/P is a field, so nonzero values are units.
struct ZetaComponent {
    QuotPtr P;
    long long n = 0;
    unsigned s = 0;
    ModTPoly value;
    bool is_zero = false;
    bool is_unit = false;
};

ZetaComponent zeta_component(const QuotPtr& P, long long n, unsigned s);

// pi-hat component: canonical lift of -1/P'(theta) mod P
PolyA pi_hat(const QuotCtx& P);
// omega-hat component is 1/P(t); the defining denominator P(t_1) is returned
// (a unit of F_q(t)[theta]/P since P(t) != 0 in F_q[t])
MPoly omega_hat_denominator(const QuotCtx& P);

// Per-prime instance of the zeta-unit factorization: checks, in the component
// field, that Z(1;s) * P'(theta) * prod_{i<=s} prod_{j<=m} (t_i - theta^{q^{d-j}})
// equals prod_i P(t_i) * H_s|_{Y=theta^{q^{d-m}}} mod P (exponents mod d), and
// that the component is a unit. s=1 uses H_1 = 1/(t_1-theta).
bool theorem1_check(const QuotPtr& P, unsigned s, const HPolynomial* H);

struct PsiReport {
    bool factorization = false;  // Psi_d = product of all degree-d irreducibles (prime d)
    bool nonvanishing = false;   // H_{s,d} != 0 mod Psi_d
    bool degree_window = false;  // deg_theta H_{s,d} < q^d - q
    bool all() const { return factorization && nonvanishing && degree_window; }
};
PsiReport psi_nonvanish_check(const FqPtr& F, unsigned s, long long d, unsigned threads = 1);

// BG(q^{deg P}-1-n; s) mod P, with the first omitted degree checked to vanish
ModTPoly bernoulli_goss_mod(const FqPtr& F, unsigned long long N, unsigned s, const QuotPtr& ctx);

// Z(n;s) = (BG(q^{deg P}-1-n;s) mod P) under l_q(n) > s; requires
// q^{deg P} > n (the per-prime range of the congruence); additionally zero
// when n = s mod (q-1)
bool prop1_check(const QuotPtr& P, long long n, unsigned s);

struct ScanCell {
    std::string P;
    long long n = 0;
    unsigned s = 0;
    bool zero = false;
    std::string clause;   // c1, c1-s0, c2v, c2v-range, c2nv
    std::string expect;   // nonzero / zero / open
    bool hard_fail = false;
    bool soft_finding = false;
    std::string value_hash;
};

struct ScanReport {
    unsigned q = 0;
    std::string f;
    long long maxdeg = 0;
    long long n_max = 0;
    unsigned s_max = 0;
    std::vector<ScanCell> cells;
    std::vector<std::string> hard_counterexamples;
    std::vector<std::string> soft_findings;
    std::string text() const;
};

ScanReport conjecture_scan(const FqPtr& F, long long maxdeg, long long n_max, unsigned s_max,
                           unsigned threads = 1, std::uint64_t budget = 200000000ULL);

// BC_{q^{deg P}-s} mod P != 0 (s > 1, s = 1 mod (q-1))
bool bc_unit_check(const QuotPtr& P, unsigned s);

} // namespace fzv

#endif
