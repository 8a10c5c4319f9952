#ifndef FZV_CARLITZ_HPP
#define FZV_CARLITZ_HPP

#include <map>
#include <mutex>
#include <vector>

#include "fzv/mpoly.hpp"
#include "fzv/quot.hpp"

namespace fzv {

struct DigitProfile {
    unsigned long long n;
    std::vector<unsigned> digits; // base-q, least significant first
    unsigned long long ell;       // digit sum
};

DigitProfile digit_profile(unsigned q, unsigned long long n);

// Memo table for the special sequences of Carlitz arithmetic over one F_q:
// [n], l_n, D_n, Pi_n, b_n, E_i, G_n. Values are immutable once inserted;
// concurrent readers and idempotent first-writers are safe.
class CarlitzCache {
  public:
    explicit CarlitzCache(FqPtr F) : F_(std::move(F)) {}

    const FqPtr& field() const { return F_; }
    unsigned q() const { return F_->q(); }

    PolyA bracket(unsigned n) const;            // [n], with [0] = 1
    PolyA l_seq(unsigned n) const;               // l_0 = 1, l_n = -[n] l_{n-1}
    PolyA d_seq(unsigned n) const;               // D_0 = 1, D_n = [n] D_{n-1}^q
    PolyA carlitz_factorial(unsigned long long n) const; // Pi_n
    MPoly b_poly(unsigned n, Var v) const;       // (v-theta)...(v-theta^{q^{n-1}})

    // Carlitz F_q-linear polynomial E_i(z), F_q-linear of degree q^i in z
    MPolyK e_poly(unsigned i) const;
    // G_n = prod E_i^{n_i} over the base-q digits of n; deg_z = n
    MPolyK g_poly(unsigned long long n) const;

    // D_i * E_i = prod_{a in A(i)} (z - a), an A[z] polynomial
    MPoly de_poly(unsigned i) const;

    // j-th elementary symmetric polynomial of the given variables
    static MPoly elem_sym(const FqPtr& F, unsigned j, const VarList& vars);

    // Bernoulli-Carlitz number BC_j as an exact fraction; the reciprocal
    // series is expanded up to order `precision` (throws PrecisionExceeded
    // when j > precision)
    FracK bc_number(unsigned long long j, unsigned long long precision) const;
    // BC_j mod P; requires j < q^{deg P} - 1 so only unit D_i appear
    PolyA bc_number_mod(unsigned long long j, const QuotCtx& ctx) const;

    // D_i mod P computed inside the quotient ring (no big exact polynomials)
    QuotCtx::El d_seq_mod(unsigned i, const QuotCtx& ctx) const;

  private:
    FqPtr F_;
    mutable std::mutex mu_;
    mutable std::vector<PolyA> l_, D_;
    mutable std::map<std::pair<int, unsigned>, MPoly> b_; // (var key, n)
    mutable std::map<unsigned, MPolyK> E_;
    mutable std::map<unsigned long long, MPolyK> G_;
    mutable std::vector<FracK> bc_;       // reciprocal series coefficients c_j
    mutable unsigned long long bc_hi_ = 0;
};

// per-(q, f) registry
const CarlitzCache& carlitz(const FqPtr& F);

} // namespace fzv

#endif
