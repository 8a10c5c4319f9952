#ifndef FZV_TENSOR_HPP
#define FZV_TENSOR_HPP

#include <cstdint>
#include <vector>

#include "fzv/mpoly.hpp"
#include "fzv/quot.hpp"

namespace fzv {

// Dense polynomial in t_1..t_s over A with per-variable degree bounds:
// cell (k_1..k_s) holds the theta-coefficient row of t_1^{k_1}...t_s^{k_s}.
// This is the accumulation format of the enumeration loops; it converts to
// the sparse MPoly form at the boundaries.
class TPoly {
  public:
    TPoly() = default;
    TPoly(FqPtr F, std::vector<std::uint32_t> dims, size_t theta_cap);

    const FqPtr& field() const { return F_; }
    unsigned s() const { return static_cast<unsigned>(dims_.size()); }
    const std::vector<std::uint32_t>& dims() const { return dims_; }
    size_t cells() const { return cells_; }
    size_t theta_cap() const { return cap_; }
    fq_el* row(size_t cell) { return data_.data() + cell * cap_; }
    const fq_el* row(size_t cell) const { return data_.data() + cell * cap_; }

    size_t cell_index(const std::vector<std::uint32_t>& k) const;
    std::vector<std::uint32_t> cell_coords(size_t idx) const;

    // data[cell] += (prod_j a_j[k_j]) * u for every cell (k_1..k_s);
    // a_j are coefficient vectors of the univariate images, u a theta-row.
    void add_rank1(const std::vector<const std::vector<fq_el>*>& a, const fq_el* u, size_t ulen);

    void add_inplace(const TPoly& o); // cellwise +=

    PolyA cell_poly(size_t idx) const;
    bool is_zero() const;

    // exact division by a monic-in-t_j polynomial given by its t_j-coefficient
    // rows (PolyA per degree), e.g. b_{d-m}(t_j); shrinks dims_[j]
    void exact_div_in_var(unsigned j, const std::vector<PolyA>& divisor);

    MPoly to_mpoly(const VarList& vars) const; // vars must be theta + t_1..t_s
    static TPoly from_mpoly(const MPoly& f, unsigned s);

  private:
    FqPtr F_;
    std::vector<std::uint32_t> dims_;
    std::vector<size_t> stride_;
    size_t cells_ = 0, cap_ = 0;
    std::vector<fq_el> data_;
};

// Dense polynomial in t_1..t_s over A/P (element codes of a QuotCtx).
class ModTPoly {
  public:
    ModTPoly() = default;
    ModTPoly(QuotPtr ctx, std::vector<std::uint32_t> dims);

    const QuotPtr& ctx() const { return ctx_; }
    const std::vector<std::uint32_t>& dims() const { return dims_; }
    size_t cells() const { return cells_; }
    QuotCtx::El& at(size_t idx) { return data_[idx]; }
    QuotCtx::El at(size_t idx) const { return data_[idx]; }
    size_t cell_index(const std::vector<std::uint32_t>& k) const;

    // data[cell] += c * prod_j a_j[k_j], with a_j vectors of field elements
    void add_rank1(const std::vector<std::vector<QuotCtx::El>>& a, QuotCtx::El c);

    bool is_zero() const;
    bool operator==(const ModTPoly& o) const;

    // canonical lift: MPoly in (theta, t_1..t_s) with theta-degree < deg P
    MPoly lift() const;
    static ModTPoly reduce(const MPoly& f, const QuotPtr& ctx, unsigned s);

    // multiply by a polynomial in one t-variable with A/P coefficients
    ModTPoly mul_univariate(unsigned j, const std::vector<QuotCtx::El>& g) const;
    ModTPoly scale(QuotCtx::El c) const;
    ModTPoly operator-(const ModTPoly& o) const;
    ModTPoly operator+(const ModTPoly& o) const;

  private:
    QuotPtr ctx_;
    std::vector<std::uint32_t> dims_;
    std::vector<size_t> stride_;
    size_t cells_ = 0;
    std::vector<QuotCtx::El> data_;
};

} // namespace fzv

#endif
