#ifndef FZV_MPOLY_HPP
#define FZV_MPOLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fzv/poly.hpp"

namespace fzv {

// Variables drawn from the fixed universe {theta, t_1..t_s, Y, z}, with the
// canonical order theta < t_1 < ... < t_s < Y < z.
struct Var {
    enum Kind : std::uint8_t { Theta = 0, T = 1, YVar = 2, ZVar = 3 };
    Kind kind = Theta;
    std::uint16_t idx = 0; // only for T

    static Var theta() { return {Theta, 0}; }
    static Var t(unsigned i) { return {T, static_cast<std::uint16_t>(i)}; } // i >= 1
    static Var Y() { return {YVar, 0}; }
    static Var z() { return {ZVar, 0}; }

    bool operator==(const Var& o) const { return kind == o.kind && idx == o.idx; }
    bool operator<(const Var& o) const {
        if (kind != o.kind) return kind < o.kind;
        return idx < o.idx;
    }
    std::string name() const;
    static Var parse(const std::string& s);
};

using VarList = std::vector<Var>; // always canonically sorted, no duplicates

VarList make_vars(bool theta, unsigned s, bool Y, bool z);
VarList merge_vars(const VarList& a, const VarList& b);

// Sparse multivariate polynomial over F_q in a declared variable set.
// Terms are kept sorted in graded lexicographic order (total degree first,
// then exponents along the canonical variable order); no zero coefficients.
class MPoly {
  public:
    static constexpr size_t kMaxVars = 12;
    using Exp = std::array<std::uint32_t, kMaxVars>;

    struct Term {
        Exp e;
        fq_el c;
    };

    MPoly() = default;
    MPoly(FqPtr F, VarList vars);

    static MPoly zero(FqPtr F, VarList vars) { return MPoly(std::move(F), std::move(vars)); }
    static MPoly constant(FqPtr F, VarList vars, fq_el c);
    static MPoly one(FqPtr F, VarList vars) { return constant(std::move(F), std::move(vars), 1); }
    static MPoly monomial(FqPtr F, VarList vars, const std::vector<std::uint32_t>& exps, fq_el c);
    // the variable v as a polynomial
    static MPoly var(FqPtr F, VarList vars, Var v);
    // embed a PolyA as a polynomial in theta (theta must be among vars)
    static MPoly from_polyA(const PolyA& a, VarList vars);

    const FqPtr& field() const { return F_; }
    const VarList& vars() const { return vars_; }
    size_t nvars() const { return vars_.size(); }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t term_count() const { return t_.size(); }

    int var_index(Var v) const; // -1 if absent

    Degree deg_in(Var v) const;
    Degree total_deg() const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;
    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly scale(fq_el c) const;
    MPoly mul_monomial(const std::vector<std::uint32_t>& exps, fq_el c) const;
    MPoly pow(long long n) const;

    // widen/re-map to a variable list that contains all current vars
    MPoly embed(const VarList& nv) const;
    // drop variables that do not occur (helper for canonical comparisons)
    MPoly compact() const;

    // coefficient of v^k, as a polynomial in the same variable list (v-degree 0)
    MPoly coeff_of(Var v, std::uint32_t k) const;
    // substitute integer power: v -> theta^Q (theta must be in vars or is added)
    MPoly subst_var_theta_pow(Var v, long long Q) const;
    // evaluate v at an F_q scalar
    MPoly subst_var_scalar(Var v, fq_el c) const;
    // rename a variable (target must not already occur)
    MPoly rename_var(Var from, Var to) const;

    // collect the polynomial as a dense vector in theta for each exponent
    // pattern of the non-theta variables
    std::map<Exp, PolyA> theta_slices() const;
    static MPoly from_theta_slices(const FqPtr& F, const VarList& vars, const std::map<Exp, PolyA>& slices);

    // exact division; throws NonExactDivision if g does not divide this
    MPoly exact_div(const MPoly& g) const;
    // division treating both as univariate in v; lc of g in v must be a
    // nonzero F_q constant; returns (quotient, remainder)
    std::pair<MPoly, MPoly> divrem_in_var(const MPoly& g, Var v) const;

    // canonical text serialization (variable header + sorted term lines)
    std::string emit() const;
    static MPoly parse(const FqPtr& F, const std::string& text);

    // builder: accumulate unsorted (exp, coeff) pairs, then normalize once
    class Builder {
      public:
        Builder(FqPtr F, VarList vars) : F_(std::move(F)), vars_(std::move(vars)) {}
        void add(const Exp& e, fq_el c) {
            if (c != 0) raw_.push_back({e, c});
        }
        void add(const std::vector<std::uint32_t>& exps, fq_el c);
        MPoly build();

      private:
        FqPtr F_;
        VarList vars_;
        std::vector<Term> raw_;
    };

  private:
    friend class Builder;
    void normalize_sorted(); // t_ is sorted; combine equal exps, drop zeros

    FqPtr F_;
    VarList vars_;
    std::vector<Term> t_;
};

int graded_lex_cmp(const MPoly::Exp& a, const MPoly::Exp& b, size_t nvars);

// Element of K[vars'] stored as num/den with den in A: num is an MPoly with
// theta among its variables, den a monic PolyA, and no common PolyA factor
// of all theta-slices of num remains in den.
class MPolyK {
  public:
    MPolyK() = default;
    explicit MPolyK(MPoly n);
    MPolyK(MPoly n, PolyA d);

    static MPolyK zero(const FqPtr& F, VarList vars) { return MPolyK(MPoly::zero(F, std::move(vars))); }
    static MPolyK one(const FqPtr& F, VarList vars) { return MPolyK(MPoly::one(F, std::move(vars))); }
    static MPolyK from_frac(const FracK& f, VarList vars);

    const MPoly& num() const { return num_; }
    const PolyA& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_.is_one(); }

    MPolyK operator+(const MPolyK& o) const;
    MPolyK operator-(const MPolyK& o) const;
    MPolyK operator-() const;
    MPolyK operator*(const MPolyK& o) const;
    MPolyK scale(const FracK& c) const;
    bool operator==(const MPolyK& o) const;
    bool operator!=(const MPolyK& o) const { return !(*this == o); }

    std::string emit() const;
    static MPolyK parse(const FqPtr& F, const std::string& text);

  private:
    void normalize();
    MPoly num_;
    PolyA den_; // monic
};

// substitute(f, bindings): homomorphic image, retained variables untouched.
// Every bound variable must occur in the binding map by exact Var identity.
MPolyK substitute(const MPoly& f, const std::map<Var, MPolyK>& bindings);
MPolyK substitute(const MPolyK& f, const std::map<Var, MPolyK>& bindings);

// FNV-1a 64-bit over a string; used for content hashes in reports
std::uint64_t fnv1a64(const std::string& s);
std::string hash_hex(const std::string& s);

} // namespace fzv

#endif
