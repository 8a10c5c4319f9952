#ifndef FZV_SUMS_HPP
#define FZV_SUMS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "fzv/carlitz.hpp"
#include "fzv/tensor.hpp"

namespace fzv {

// Twisted power sum specification: S_d(n;s) and F_d(n;s) parameters.
struct SumSpec {
    FqPtr F;
    long long n = 1;  // exponent, may be <= 0
    unsigned s = 0;   // level
    long long d = 0;  // degree (power_sum) / degree bound (harmonic_sum)
    unsigned threads = 1;
};

std::uint64_t monic_count(unsigned q, long long d); // q^d
// k-th monic polynomial of degree d in the canonical enumeration order
// (constant coefficient fastest-varying)
PolyA monic_at(const FqPtr& F, long long d, std::uint64_t k);
std::vector<PolyA> monic_enum(const FqPtr& F, long long d);
// visit coefficient vectors (length d+1, monic) of all of A^+(d) in order
void for_each_monic(const FqPtr& F, long long d,
                    const std::function<void(const std::vector<fq_el>&)>& fn);

// S_d(n;s) = sum_{a in A^+(d)} a(t_1)...a(t_s) / a^n
MPolyK power_sum(const SumSpec& spec);
// F_d(n;s) = sum_{i<d} S_i(n;s), d >= 1
MPolyK harmonic_sum(const SumSpec& spec);
// sum_{i=d}^{D} S_i(n;s)
MPolyK tail_sum(const SumSpec& spec, long long D);

// dense internal forms: numerator tensor over the stated denominator
// (l-polynomial power); n <= 0 gives denominator 1
struct SumTensor {
    TPoly num;
    PolyA den;
};
SumTensor power_sum_tensor(const SumSpec& spec);
SumTensor range_sum_tensor(const SumSpec& spec, long long lo, long long hi);

// S_{j,s} = sum_{a in A^+(j)} a(t_1)...a(t_s) in F_q[t_1..t_s]
MPoly simon_sum(const FqPtr& F, unsigned j, unsigned s, unsigned threads = 1);
// Simon's lemma: S_{j,s} = 0 iff j(q-1) > s, decided exactly (witness
// evaluation for nonzero, full expansion for zero)
bool simon_sum_is_zero(const FqPtr& F, unsigned j, unsigned s, unsigned threads = 1);

// BG(N;s) = sum_j sum_{a in A^+(j)} a^N a(t_1)...a(t_s), finite by Simon's
// lemma; the first omitted degree is verified to vanish
MPoly bernoulli_goss(const FqPtr& F, unsigned long long N, unsigned s, unsigned threads = 1);
long long bernoulli_goss_cutoff(unsigned q, unsigned long long N, unsigned s);

// F_{deg P}(n;s) computed entirely in (A/P)[t_1..t_s]
ModTPoly harmonic_sum_mod(const SumSpec& spec, const QuotPtr& ctx);
// single-degree variant: S_j(n;s) mod P (j may differ from deg P)
ModTPoly power_sum_mod(const FqPtr& F, long long n, unsigned s, long long j, const QuotPtr& ctx);

// Residue-class sums for grid evaluation: for nodes v_0..v_{m-1} in F_q and
// M = prod (theta - v_k), accumulates per residue class of a mod M
//   G_class = sum_{lo <= deg a <= D, a monic, a in class} l_D / a.
// Values of l_D * sum_i S_i(1;s) at any t-grid point over the nodes are then
// F_q-linear combinations of the class rows.
class ClassSums {
  public:
    ClassSums(FqPtr F, std::vector<fq_el> nodes, long long lo, long long D, unsigned threads);

    const PolyA& lD() const { return lD_; }
    const std::vector<fq_el>& nodes() const { return nodes_; }
    // value of sum_{a} (prod_k a(nodes[sel_k])) * lD/a at the grid point
    // t_k = nodes[sel_k]; sel has one entry per t-variable
    PolyA value_at(const std::vector<unsigned>& sel) const;

  private:
    FqPtr F_;
    std::vector<fq_el> nodes_;
    long long lo_, D_;
    PolyA lD_;
    size_t nclasses_, rowlen_;
    std::vector<fq_el> rows_; // nclasses_ x rowlen_
};

// l_n h helper: the A-polynomial l_n (wrapper over the carlitz cache)
PolyA l_poly(const FqPtr& F, unsigned n);

namespace detail {
// quotient of numerator (len nn) by monic divisor (len nd), both coefficient
// arrays; requires exact divisibility unless check_exact is false.
// out must have length nn - nd + 1.
void exact_quotient_raw(const Fq& F, const fq_el* num, size_t nn, const fq_el* den, size_t nd,
                        fq_el* out, fq_el* scratch, bool check_exact);
} // namespace detail

} // namespace fzv

#endif
