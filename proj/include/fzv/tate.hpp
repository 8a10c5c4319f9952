#ifndef FZV_TATE_HPP
#define FZV_TATE_HPP

#include <climits>
#include <map>
#include <optional>
#include <vector>

#include "fzv/hpoly.hpp"

namespace fzv {

// Finite-precision Laurent series in 1/theta with F_q[t_1..t_s] coefficients:
// a map (t-monomial, theta-exponent) -> coefficient, a precision floor
// ("theta-exponents below `floor` are unknown"), and an optional per-variable
// t-degree cap (t-exponents never mix downward, so capping is exact for the
// monomials kept).
class TruncLaurent {
  public:
    static constexpr long long kExact = LLONG_MIN / 4; // floor sentinel: fully exact

    TruncLaurent() = default;
    TruncLaurent(FqPtr F, unsigned s, long long floor = kExact, std::uint32_t tcap = UINT32_MAX);

    static TruncLaurent from_poly(const PolyA& p, unsigned s, long long floor = kExact,
                                  std::uint32_t tcap = UINT32_MAX);
    // embed an MPoly in (theta, t_1..t_s)
    static TruncLaurent from_mpoly(const MPoly& f, unsigned s, long long floor = kExact,
                                   std::uint32_t tcap = UINT32_MAX);

    const FqPtr& field() const { return F_; }
    unsigned s() const { return s_; }
    long long floor() const { return floor_; }
    std::uint32_t tcap() const { return tcap_; }
    bool known_zero() const { return terms_.empty(); }
    size_t term_count() const;

    void set(const TExp& te, long long e, fq_el c);
    fq_el coeff(const TExp& te, long long e) const;

    TruncLaurent operator+(const TruncLaurent& o) const;
    TruncLaurent operator-(const TruncLaurent& o) const;
    TruncLaurent operator-() const;
    // generic product (sizes must be moderate); floor propagated pessimistically
    TruncLaurent operator*(const TruncLaurent& o) const;
    TruncLaurent scale(fq_el c) const;
    TruncLaurent mul_theta_pow(long long k) const; // multiply by theta^k
    TruncLaurent truncated(long long floor, std::uint32_t tcap) const;

    // multiply by (1 - t_j theta^{-E})^{-1} (geometric sweep, exact above floor)
    TruncLaurent mul_geom_inv_t(unsigned j, long long E) const;
    // multiply by the inverse of a nonzero PolyA (Laurent expansion at infinity)
    TruncLaurent mul_poly_inv(const PolyA& p) const;
    TruncLaurent mul_poly(const PolyA& p) const;

    // largest theta-exponent of the known part (nullopt when no known terms)
    std::optional<long long> top_exponent() const;
    // exact part with theta-exponent >= 0, as an MPoly in (theta, t_1..t_s)
    MPoly nonneg_part() const;
    // drop all terms with theta-exponent >= 0
    TruncLaurent negative_part() const;

    bool same_known(const TruncLaurent& o) const;

  private:
    FqPtr F_;
    unsigned s_ = 0;
    long long floor_ = kExact;
    std::uint32_t tcap_ = UINT32_MAX;
    std::map<TExp, std::map<long long, fq_el>> terms_;
};

// the truncated model of omega(t_1)...omega(t_s)/pi~ =
//   (-theta)^m theta^{-1} prod_{i>=1}(1-theta^{1-q^i}) /
//   prod_{i>=0} prod_j (1-t_j theta^{-q^i})
TruncLaurent omega_over_pi(const FqPtr& F, unsigned s, long long floor, std::uint32_t tcap);

// Lemma "pi~_d / (omega_{d-m}(t_1)...omega_{d-m}(t_s))" identity check:
// both sides expanded exactly in K[t_s] with the fractional powers cancelled
bool lemma_ident_check(const FqPtr& F, unsigned s, long long d);

// Gamma series h = g f^{-1}: h_0 = 1, coefficients in A[t_1..t_s]
struct GammaSeries {
    unsigned s = 0;
    unsigned m = 0;
    std::vector<MPoly> h; // h[0..upto]
};
GammaSeries gamma_series(const FqPtr& F, unsigned s, unsigned upto);

// Gamma_{s,r}(Y) = sum_{n=0}^{mu-r} h_n Y^{mu-r-n}, monic of degree mu-r in Y
MPoly gamma_poly(const FqPtr& F, unsigned s, long long r);

// stabilized value of -theta^{-mu q^{d-m}} H_s(theta^{q^{d-m}});
// throws NotStabilized unless the window agrees and residuals sink
MPoly lambda_limit(const HPolynomial& H, long long d_lo, long long d_hi);

struct LowerCoeffReport {
    long long r = 0;
    std::vector<long long> d;          // probed degrees
    std::vector<long long> valuation;  // -top(residual_d); huge value = below floor
    bool strictly_increasing = false;
    bool stabilized_matches = false;   // stabilized part equals -D_r
};
LowerCoeffReport lower_coeff_verify(const HPolynomial& H, long long r, long long d_lo, long long d_hi,
                                    unsigned threads = 1);

// nu_{1,s} two ways: (a) stabilized limit of theta^{q^{d-m}} W tail_d(D),
// (b) D_{mu-1} - (t_1+..+t_s) D_mu; asserts agreement
MPoly nu_value(const HPolynomial& H, long long d_lo, long long d_hi, long long D, unsigned threads = 1);

} // namespace fzv

#endif
