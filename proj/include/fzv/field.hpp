#ifndef FZV_FIELD_HPP
#define FZV_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fzv/errors.hpp"

namespace fzv {

using fq_el = std::uint8_t; // element code: sum coords[i] * p^i, in [0, q)

// The coefficient field F_q, q = p^e, realized as F_p[x]/(f) for a monic
// irreducible f of degree e. All arithmetic is table-driven; q is capped at
// 16 which covers every configuration this library is used with.
class Fq {
  public:
    static constexpr unsigned kMaxQ = 16;

    // Prime field F_p.
    static std::shared_ptr<const Fq> prime(unsigned p);
    // F_{p^e} with an explicit modulus (coeffs of f, constant first, length e+1, monic).
    static std::shared_ptr<const Fq> make(unsigned p, unsigned e, const std::vector<unsigned>& f);
    // F_{p^e} with a default modulus (e.g. x^2+x+1 for q=4).
    static std::shared_ptr<const Fq> make_default(unsigned p, unsigned e);

    unsigned p() const { return p_; }
    unsigned e() const { return e_; }
    unsigned q() const { return q_; }
    const std::vector<unsigned>& modulus() const { return f_; }

    fq_el zero() const { return 0; }
    fq_el one() const { return 1; }
    fq_el add(fq_el a, fq_el b) const { return add_[a * q_ + b]; }
    fq_el sub(fq_el a, fq_el b) const { return add_[a * q_ + neg_[b]]; }
    fq_el neg(fq_el a) const { return neg_[a]; }
    fq_el mul(fq_el a, fq_el b) const { return mul_[a * q_ + b]; }
    fq_el inv(fq_el a) const {
        if (a == 0) throw NotAUnit("zero in F_q");
        return inv_[a];
    }
    fq_el div(fq_el a, fq_el b) const { return mul(a, inv(b)); }
    fq_el pow(fq_el a, long long n) const;
    // Image of the integer n under Z -> F_p -> F_q.
    fq_el from_int(long long n) const {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<fq_el>(r);
    }
    fq_el frobenius(fq_el a) const { return frob_[a]; } // a -> a^p

    // Coordinates w.r.t. the power basis of F_p[x]/(f), constant first.
    std::vector<unsigned> coords(fq_el a) const;
    fq_el from_coords(const std::vector<unsigned>& c) const;

    // Base-p digit string, coords[0] first ("10" is 1, "01" is x for q=4).
    std::string emit(fq_el a) const;
    fq_el parse(const std::string& s) const;

    bool same(const Fq& other) const {
        return p_ == other.p_ && e_ == other.e_ && f_ == other.f_;
    }

  private:
    Fq(unsigned p, unsigned e, std::vector<unsigned> f);
    void build_tables();

    unsigned p_, e_, q_;
    std::vector<unsigned> f_;
    std::vector<fq_el> add_, mul_, neg_, inv_, frob_;
};

using FqPtr = std::shared_ptr<const Fq>;

} // namespace fzv

#endif
