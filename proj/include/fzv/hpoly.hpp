#ifndef FZV_HPOLY_HPP
#define FZV_HPOLY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fzv/sums.hpp"

namespace fzv {

// Parameters attached to a level s = 1 + m(q-1): m and the Y-degree mu.
struct HParams {
    unsigned s = 0;
    unsigned m = 0;
    long long mu = 0;
};
HParams h_params(unsigned q, unsigned s); // throws DomainError unless s = 1 mod (q-1)

using TExp = std::vector<std::uint32_t>; // t-exponent vector, one entry per t_i

// One interpolation node: H_{s,d} = l_{d-1} F_d(1;s) / prod_i b_{d-m}(t_i),
// a polynomial of A[t_1..t_s] with deg_{t_i} = m-1.
struct HTableRow {
    unsigned s = 0;
    long long d = 0;
    std::string route;                 // "expand" or "grid"
    std::map<TExp, PolyA> coeffs;      // t-exponents -> theta polynomial
    long long theta_degree = 0;        // max theta degree over coefficients
    fq_el theta_lead = 0;              // coefficient at that degree

    MPoly as_mpoly(const FqPtr& F) const;
    bool same_coeffs(const HTableRow& o) const { return coeffs == o.coeffs; }
};

// The interpolation polynomial H_s in A[Y, t_1..t_s], stored as Y-slices.
// For s = 1 the object is the rational 1/(t_1 - theta) and carries no slices.
class HPolynomial {
  public:
    HPolynomial() = default;
    HPolynomial(FqPtr F, HParams p, std::string route, std::vector<std::map<TExp, PolyA>> yslices);
    static HPolynomial rational_s1(FqPtr F);

    const FqPtr& field() const { return F_; }
    unsigned s() const { return par_.s; }
    unsigned m() const { return par_.m; }
    long long mu() const { return par_.mu; }
    const std::string& route() const { return route_; }
    bool is_rational_s1() const { return s1_; }

    const std::vector<std::map<TExp, PolyA>>& y_slices() const { return D_; }
    // coefficient of Y^i as a polynomial map (empty map = zero)
    const std::map<TExp, PolyA>& y_coeff(size_t i) const;
    MPoly y_coeff_mpoly(size_t i) const; // in (theta, t_1..t_s)

    // H_s evaluated at Y = theta^{q^j} (a node or holdout evaluation)
    std::map<TExp, PolyA> eval_at_frob(long long j) const;

    MPoly as_mpoly() const; // in (theta, t_1..t_s, Y)
    PolyA corner_coefficient() const; // coefficient of t_1^{m-1}...t_s^{m-1} (in A[..] cases a PolyA in theta? it's an A[Y] slice stack) -- see corner_y_poly
    // the corner coefficient as a polynomial in Y (expected to be 1)
    std::vector<PolyA> corner_y_poly() const;

    long long theta_degree() const; // empirical deg_theta of H_s

    std::string cache_text() const;
    static HPolynomial from_cache_text(const FqPtr& F, const std::string& text);

    bool operator==(const HPolynomial& o) const;

  private:
    FqPtr F_;
    HParams par_;
    std::string route_;
    bool s1_ = false;
    std::vector<std::map<TExp, PolyA>> D_; // index = Y-degree
};

// ---- operations ----

struct RowOptions {
    unsigned threads = 1;
    // "auto" chooses between full expansion and grid reconstruction by cost;
    // "expand" / "grid" force a route
    std::string route = "auto";
    unsigned sz_trials = 3;      // randomized certificate repetitions (grid route)
    std::uint64_t sz_seed = 0x5eed5eedULL;
};

// universal-relations coefficients c_{j,i}(theta, Y) for a sorted tuple
std::map<long long, MPoly> univ_coeffs(const FqPtr& F, std::vector<unsigned> tuple);

// Pi_{s,d} = prod_i b_{d-m}(t_i) / l_{d-1}
MPolyK pi_factor(const FqPtr& F, unsigned s, long long d);

HTableRow h_row(const FqPtr& F, unsigned s, long long d, const RowOptions& opt = {});

// Vandermonde/Newton interpolation through the nodes d = m..m+mu with two
// holdout rows; throws NonIntegralResult / RouteMismatch on failure
HPolynomial h_interpolate(const FqPtr& F, unsigned s, const RowOptions& opt = {});

// assembly from the universal-relations formula; when `reference` is given,
// asserts equality (RouteMismatch)
HPolynomial h_universal(const FqPtr& F, unsigned s, const RowOptions& opt = {},
                        const HPolynomial* reference = nullptr);

// coefficient of t_{s'+1}^{m-1}..t_s^{m-1} in H_s, in (theta, t_1..t_{s'}, Y);
// verifies the corner normalization of the restriction
MPoly h_restrict(const HPolynomial& H, unsigned s_prime);

// S_d(1;s') from H via the power-sum extraction formula
MPolyK power_sum_via_h(const HPolynomial& H, unsigned s_prime, long long d);

// check S_d(1;s') = extraction formula; chooses between a materialized
// comparison and a complete-evaluation-grid comparison (both exact)
bool verify_theorem5(const HPolynomial& H, unsigned s_prime, long long d, unsigned threads = 1);

struct InterpReport {
    bool interpolates = false;   // N_{1,d} matches a -> a(t) on all of A(d)
    bool divisible = false;      // E_d | M_{s,d} - N_{s,d}
    bool extraction = false;     // z=0 extraction equals -F_d(1;s)
    bool all() const { return interpolates && divisible && extraction; }
};
InterpReport interp_crosscheck(const FqPtr& F, unsigned s, long long d);

// write-once cache; throws CacheMismatch if an existing file differs
void h_cache_write(const std::string& dir, const HPolynomial& H);
std::optional<HPolynomial> h_cache_load(const FqPtr& F, const std::string& dir, unsigned s,
                                        bool verify_holdout, unsigned threads = 1);
std::string h_cache_path(const std::string& dir, const FqPtr& F, unsigned s);

} // namespace fzv

#endif
