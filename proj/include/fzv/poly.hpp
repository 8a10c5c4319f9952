#ifndef FZV_POLY_HPP
#define FZV_POLY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fzv/field.hpp"

namespace fzv {

// Degree of a polynomial with an explicit sentinel for the zero polynomial
// (never -1-as-integer).
struct Degree {
    bool finite;
    long long v; // meaningful only when finite

    static Degree minus_infinity() { return {false, 0}; }
    static Degree of(long long d) { return {true, d}; }

    bool operator==(const Degree& o) const {
        return finite == o.finite && (!finite || v == o.v);
    }
    bool operator<(const Degree& o) const {
        if (!finite) return o.finite;
        if (!o.finite) return false;
        return v < o.v;
    }
    bool operator<=(const Degree& o) const { return *this < o || *this == o; }
};

// Dense univariate polynomial over F_q in theta: the ring A = F_q[theta].
// Invariant: no trailing zero coefficients (zero polynomial has empty vector).
class PolyA {
  public:
    PolyA() = default;
    explicit PolyA(FqPtr F) : F_(std::move(F)) {}

    static PolyA zero(FqPtr F) { return PolyA(std::move(F)); }
    static PolyA constant(FqPtr F, fq_el c);
    static PolyA one(FqPtr F) { return constant(std::move(F), 1); }
    static PolyA theta(FqPtr F) { return theta_pow(std::move(F), 1); }
    static PolyA theta_pow(FqPtr F, long long k);
    static PolyA from_coeffs(FqPtr F, std::vector<fq_el> c);

    const FqPtr& field() const { return F_; }
    const std::vector<fq_el>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    Degree deg() const { return c_.empty() ? Degree::minus_infinity() : Degree::of(static_cast<long long>(c_.size()) - 1); }
    // degree as an integer; caller must ensure the polynomial is nonzero
    long long deg_int() const;
    fq_el coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    fq_el lc() const;
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    PolyA operator+(const PolyA& o) const;
    PolyA operator-(const PolyA& o) const;
    PolyA operator-() const;
    PolyA operator*(const PolyA& o) const;
    bool operator==(const PolyA& o) const { return c_ == o.c_; }
    bool operator!=(const PolyA& o) const { return !(*this == o); }

    PolyA scale(fq_el c) const;
    PolyA shift_up(long long k) const; // multiply by theta^k
    PolyA pow(long long n) const;

    // Euclidean division by a nonzero divisor: returns (quotient, remainder).
    std::pair<PolyA, PolyA> divrem(const PolyA& d) const;
    // division by a sparse divisor given as (exponent, coefficient) pairs in
    // strictly descending exponent order with invertible leading coefficient;
    // O(len * terms), used for theta-power binomials
    std::pair<PolyA, PolyA> divrem_sparse(const std::vector<std::pair<long long, fq_el>>& d) const;
    PolyA exact_div_sparse(const std::vector<std::pair<long long, fq_el>>& d) const;
    // Exact division; throws NonExactDivision on nonzero remainder.
    PolyA exact_div(const PolyA& d) const;
    bool divisible_by(const PolyA& d) const;

    PolyA monic() const; // scale so the leading coefficient is 1

    static PolyA gcd(const PolyA& a, const PolyA& b); // monic gcd
    // g = gcd(a,b) monic, with u*a + v*b = g
    static PolyA xgcd(const PolyA& a, const PolyA& b, PolyA& u, PolyA& v);

    fq_el eval(fq_el x) const; // evaluate at theta = x in F_q
    PolyA derivative() const;
    // f(theta^Q): substitute theta -> theta^Q (Q >= 1)
    PolyA subst_theta_pow(long long Q) const;

    // canonical text form: comma-separated coefficients, constant first
    std::string emit() const;
    static PolyA parse(const FqPtr& F, const std::string& s);

    // strict total order (by degree then coefficient codes), for canonical sorting
    static int cmp(const PolyA& a, const PolyA& b);

  private:
    void trim();

    FqPtr F_;
    std::vector<fq_el> c_;
};

// Normalized fraction num/den of two PolyA: the field K = F_q(theta).
// Invariants: den monic and nonzero, gcd(num, den) = 1.
class FracK {
  public:
    FracK() = default;
    explicit FracK(PolyA n);                 // n / 1
    FracK(PolyA n, PolyA d);                 // normalizes
    static FracK zero(const FqPtr& F) { return FracK(PolyA::zero(F)); }
    static FracK one(const FqPtr& F) { return FracK(PolyA::one(F)); }

    const PolyA& num() const { return num_; }
    const PolyA& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_.is_one(); }

    FracK operator+(const FracK& o) const;
    FracK operator-(const FracK& o) const;
    FracK operator-() const;
    FracK operator*(const FracK& o) const;
    FracK operator/(const FracK& o) const;
    FracK inv() const;
    bool operator==(const FracK& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const FracK& o) const { return !(*this == o); }

    std::string emit() const; // "num / den"
    static FracK parse(const FqPtr& F, const std::string& s);

  private:
    void normalize();
    PolyA num_, den_;
};

namespace detail {
// out[k] += sum_{i+j=k} a[i]*b[j]; out must have length >= na+nb-1.
void mul_acc_raw(const Fq& F, const fq_el* a, size_t na, const fq_el* b, size_t nb, fq_el* out);
} // namespace detail

} // namespace fzv

#endif
