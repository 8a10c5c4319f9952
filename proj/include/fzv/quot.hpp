#ifndef FZV_QUOT_HPP
#define FZV_QUOT_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "fzv/mpoly.hpp"
#include "fzv/poly.hpp"

namespace fzv {

// Quotient-ring context A/P for a monic irreducible P. Elements are packed
// base-q codes (digit i = coefficient of theta^i of the reduced residue).
// Multiplication goes through discrete-log tables when q^d is small enough;
// otherwise through polynomial arithmetic on unpacked digits.
class QuotCtx {
  public:
    using El = std::uint64_t;
    static constexpr std::uint64_t kZechCap = 1u << 16;

    // certify=true verifies irreducibility at construction
    explicit QuotCtx(PolyA P, bool certify = true);

    const FqPtr& field() const { return F_; }
    const PolyA& modulus() const { return P_; }
    long long degree() const { return d_; }
    std::uint64_t card() const { return card_; } // q^d

    El zero() const { return 0; }
    El one() const { return 1; }
    El from_fq(fq_el c) const { return c; }
    El theta() const { return frob_el_.at(0); } // theta mod P

    El reduce(const PolyA& a) const;        // a mod P
    PolyA lift(El a) const;                 // canonical representative, degree < d

    El add(El a, El b) const;
    El sub(El a, El b) const;
    El neg(El a) const;
    El mul(El a, El b) const;
    El inv(El a) const; // throws NotAUnit on zero
    El pow(El a, long long n) const;
    bool is_zero(El a) const { return a == 0; }

    // theta^{q^j} mod P for 0 <= j <= d (precomputed at construction)
    const PolyA& frobenius_theta(size_t j) const { return frob_.at(j); }
    El frobenius_theta_el(size_t j) const { return frob_el_.at(j); }

    bool has_zech() const { return zech_; }

  private:
    void build_zech();
    std::vector<fq_el> unpack(El a) const;
    El pack(const std::vector<fq_el>& v) const;
    El mul_generic(El a, El b) const;

    FqPtr F_;
    PolyA P_;
    long long d_;
    unsigned q_;
    std::uint64_t card_;
    std::vector<PolyA> frob_;
    std::vector<El> frob_el_;

    bool zech_ = false;
    std::uint64_t order_ = 0;
    std::vector<std::uint32_t> log_;     // code -> log, log_[0] unused
    std::vector<std::uint32_t> expc_;    // log -> code
    std::vector<std::uint32_t> addtab_;  // code x code -> code, built when q^d small
};

using QuotPtr = std::shared_ptr<const QuotCtx>;

// distinct-degree irreducibility check (gcd(theta^{q^j} - theta mod P, P) for j <= d/2)
bool is_irreducible(const PolyA& P);

// all monic irreducibles of degree exactly d, ordered by the canonical
// coefficient-counter enumeration (constant coefficient fastest-varying)
std::vector<PolyA> enumerate_irreducibles(const FqPtr& F, long long d);

// necklace / Moebius count of monic irreducibles of degree d over F_q
std::uint64_t count_irreducibles(unsigned q, long long d);

// inverse of a mod ctx.modulus(); throws NotAUnit when gcd(a, P) != 1
PolyA invert_mod(const PolyA& a, const QuotCtx& ctx);
// Restricted overload: the input must be free of t-variables (a theta-reduction
// of a PolyA); throws DomainError otherwise.
MPoly invert_mod(const MPoly& a, const QuotCtx& ctx);

} // namespace fzv

#endif
