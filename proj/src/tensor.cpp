#include "fzv/tensor.hpp"

#include <algorithm>

namespace fzv {

TPoly::TPoly(FqPtr F, std::vector<std::uint32_t> dims, size_t theta_cap)
    : F_(std::move(F)), dims_(std::move(dims)), cap_(theta_cap) {
    cells_ = 1;
    stride_.resize(dims_.size());
    for (size_t j = dims_.size(); j-- > 0;) {
        stride_[j] = cells_;
        cells_ *= dims_[j];
    }
    data_.assign(cells_ * cap_, 0);
}

size_t TPoly::cell_index(const std::vector<std::uint32_t>& k) const {
    size_t idx = 0;
    for (size_t j = 0; j < dims_.size(); ++j) idx += k[j] * stride_[j];
    return idx;
}

std::vector<std::uint32_t> TPoly::cell_coords(size_t idx) const {
    std::vector<std::uint32_t> k(dims_.size());
    for (size_t j = 0; j < dims_.size(); ++j) {
        k[j] = static_cast<std::uint32_t>(idx / stride_[j]);
        idx %= stride_[j];
    }
    return k;
}

void TPoly::add_rank1(const std::vector<const std::vector<fq_el>*>& a, const fq_el* u, size_t ulen) {
    const Fq& F = *F_;
    const size_t s = dims_.size();
    const bool prime = F.e() == 1;
    const unsigned p = F.p();
    if (ulen > cap_) throw DomainError("add_rank1: theta row exceeds capacity");
    // odometer over cells (last variable fastest) with prefix products
    std::vector<std::uint32_t> k(s, 0);
    std::vector<fq_el> prefix(s + 1, 1);
    for (size_t j = 0; j < s; ++j) prefix[j + 1] = F.mul(prefix[j], (*a[j])[0]);
    size_t cell = 0;
    for (;;) {
        fq_el c = prefix[s];
        if (c != 0) {
            fq_el* dst = data_.data() + cell * cap_;
            if (prime) {
                const unsigned cc = c;
                for (size_t t = 0; t < ulen; ++t) {
                    unsigned v = dst[t] + cc * u[t];
                    dst[t] = static_cast<fq_el>(v % p);
                }
            } else {
                for (size_t t = 0; t < ulen; ++t)
                    dst[t] = F.add(dst[t], F.mul(c, u[t]));
            }
        }
        size_t j = s;
        bool done = true;
        while (j-- > 0) {
            if (k[j] + 1 < dims_[j] && k[j] + 1 < a[j]->size()) {
                ++k[j];
                cell += stride_[j];
                prefix[j + 1] = F.mul(prefix[j], (*a[j])[k[j]]);
                for (size_t i = j + 1; i < s; ++i) {
                    cell -= k[i] * stride_[i];
                    k[i] = 0;
                    prefix[i + 1] = F.mul(prefix[i], (*a[i])[0]);
                }
                done = false;
                break;
            }
        }
        if (done) break;
    }
}

void TPoly::add_inplace(const TPoly& o) {
    const Fq& F = *F_;
    for (size_t i = 0; i < data_.size() && i < o.data_.size(); ++i)
        data_[i] = F.add(data_[i], o.data_[i]);
}

PolyA TPoly::cell_poly(size_t idx) const {
    std::vector<fq_el> c(row(idx), row(idx) + cap_);
    return PolyA::from_coeffs(F_, std::move(c));
}

bool TPoly::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](fq_el c) { return c == 0; });
}

void TPoly::exact_div_in_var(unsigned j, const std::vector<PolyA>& divisor) {
    // divisor = sum_k divisor[k] t_j^k, monic: divisor.back() == 1
    const size_t e = divisor.size() - 1;
    if (divisor.back() != PolyA::one(F_)) throw DomainError("exact_div_in_var: divisor not monic");
    if (dims_[j] < e + 1) throw NonExactDivision("tensor divisor degree exceeds dividend");
    const std::uint32_t dn = dims_[j];
    // iterate all fibers along axis j
    std::vector<std::uint32_t> k(dims_.size(), 0);
    std::vector<PolyA> fiber(dn);
    for (;;) {
        if (k[j] == 0) {
            size_t base = cell_index(k);
            for (std::uint32_t x = 0; x < dn; ++x) fiber[x] = cell_poly(base + x * stride_[j]);
            // synthetic division by monic divisor of degree e
            for (std::uint32_t x = dn; x-- > e;) {
                PolyA qc = fiber[x];
                if (qc.is_zero()) continue;
                for (size_t y = 0; y < e; ++y)
                    fiber[x - e + y] = fiber[x - e + y] - qc * divisor[y];
            }
            for (size_t y = 0; y < e; ++y)
                if (!fiber[y].is_zero()) throw NonExactDivision("tensor fiber remainder (axis " + std::to_string(j) + ")");
            // write quotient back (cells e.. shift down to 0..)
            for (std::uint32_t x = 0; x + e < dn; ++x) {
                fq_el* dst = row(base + x * stride_[j]);
                std::fill(dst, dst + cap_, 0);
                const auto& c = fiber[x + e].coeffs();
                if (c.size() > cap_) throw DomainError("tensor quotient overflows theta capacity");
                std::copy(c.begin(), c.end(), dst);
            }
            for (std::uint32_t x = dn - static_cast<std::uint32_t>(e); x < dn; ++x) {
                fq_el* dst = row(base + x * stride_[j]);
                std::fill(dst, dst + cap_, 0);
            }
        }
        // advance odometer skipping axis j
        size_t i = dims_.size();
        bool done = true;
        while (i-- > 0) {
            if (i == j) continue;
            if (k[i] + 1 < dims_[i]) {
                ++k[i];
                for (size_t x = i + 1; x < dims_.size(); ++x)
                    if (x != j) k[x] = 0;
                done = false;
                break;
            }
        }
        if (done) break;
    }
    dims_[j] -= static_cast<std::uint32_t>(e);
    // compact the data (strides changed); rebuild
    TPoly out(F_, dims_, cap_);
    std::vector<std::uint32_t> kk(dims_.size(), 0);
    for (size_t idx = 0; idx < out.cells_; ++idx) {
        auto co = out.cell_coords(idx);
        // old index with same coords (old strides)
        size_t old = 0;
        for (size_t x = 0; x < co.size(); ++x) old += co[x] * stride_[x];
        std::copy(row(old), row(old) + cap_, out.row(idx));
    }
    *this = std::move(out);
    (void)kk;
}

MPoly TPoly::to_mpoly(const VarList& vars) const {
    MPoly::Builder b(F_, vars);
    // vars = theta, t_1..t_s expected
    if (vars.size() != dims_.size() + 1) throw ArityMismatch("TPoly::to_mpoly variable count");
    for (size_t idx = 0; idx < cells_; ++idx) {
        auto k = cell_coords(idx);
        const fq_el* r = row(idx);
        for (size_t t = 0; t < cap_; ++t) {
            if (r[t] == 0) continue;
            MPoly::Exp e{};
            e[0] = static_cast<std::uint32_t>(t);
            for (size_t j = 0; j < k.size(); ++j) e[j + 1] = k[j];
            b.add(e, r[t]);
        }
    }
    return b.build();
}

TPoly TPoly::from_mpoly(const MPoly& f, unsigned s) {
    VarList vars = merge_vars(make_vars(true, s, false, false), f.vars());
    MPoly g = f.embed(vars);
    std::vector<std::uint32_t> dims(s, 1);
    size_t cap = 1;
    for (const auto& t : g.terms()) {
        cap = std::max(cap, static_cast<size_t>(t.e[0]) + 1);
        for (unsigned j = 0; j < s; ++j) dims[j] = std::max(dims[j], t.e[j + 1] + 1);
    }
    TPoly r(f.field(), dims, cap);
    for (const auto& t : g.terms()) {
        std::vector<std::uint32_t> k(t.e.begin() + 1, t.e.begin() + 1 + s);
        r.row(r.cell_index(k))[t.e[0]] = t.c;
    }
    return r;
}

// ---- ModTPoly ----

ModTPoly::ModTPoly(QuotPtr ctx, std::vector<std::uint32_t> dims)
    : ctx_(std::move(ctx)), dims_(std::move(dims)) {
    cells_ = 1;
    stride_.resize(dims_.size());
    for (size_t j = dims_.size(); j-- > 0;) {
        stride_[j] = cells_;
        cells_ *= dims_[j];
    }
    data_.assign(cells_, 0);
}

size_t ModTPoly::cell_index(const std::vector<std::uint32_t>& k) const {
    size_t idx = 0;
    for (size_t j = 0; j < dims_.size(); ++j) idx += k[j] * stride_[j];
    return idx;
}

void ModTPoly::add_rank1(const std::vector<std::vector<QuotCtx::El>>& a, QuotCtx::El c) {
    const QuotCtx& R = *ctx_;
    const size_t s = dims_.size();
    std::vector<std::uint32_t> k(s, 0);
    std::vector<QuotCtx::El> prefix(s + 1, c);
    for (size_t j = 0; j < s; ++j) prefix[j + 1] = R.mul(prefix[j], a[j][0]);
    size_t cell = 0;
    for (;;) {
        data_[cell] = R.add(data_[cell], prefix[s]);
        size_t j = s;
        bool done = true;
        while (j-- > 0) {
            if (k[j] + 1 < dims_[j] && k[j] + 1 < a[j].size()) {
                ++k[j];
                cell += stride_[j];
                prefix[j + 1] = R.mul(prefix[j], a[j][k[j]]);
                for (size_t i = j + 1; i < s; ++i) {
                    cell -= k[i] * stride_[i];
                    k[i] = 0;
                    prefix[i + 1] = R.mul(prefix[i], a[i][0]);
                }
                done = false;
                break;
            }
        }
        if (done) break;
    }
}

bool ModTPoly::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](QuotCtx::El c) { return c == 0; });
}

bool ModTPoly::operator==(const ModTPoly& o) const {
    return dims_ == o.dims_ && data_ == o.data_;
}

MPoly ModTPoly::lift() const {
    const unsigned s = static_cast<unsigned>(dims_.size());
    VarList vars = make_vars(true, s, false, false);
    MPoly::Builder b(ctx_->field(), vars);
    for (size_t idx = 0; idx < cells_; ++idx) {
        if (data_[idx] == 0) continue;
        PolyA c = ctx_->lift(data_[idx]);
        std::vector<std::uint32_t> k(s);
        size_t r = idx;
        for (size_t j = 0; j < s; ++j) {
            k[j] = static_cast<std::uint32_t>(r / stride_[j]);
            r %= stride_[j];
        }
        for (size_t t = 0; t < c.coeffs().size(); ++t) {
            if (c.coeffs()[t] == 0) continue;
            MPoly::Exp e{};
            e[0] = static_cast<std::uint32_t>(t);
            for (size_t j = 0; j < s; ++j) e[j + 1] = k[j];
            b.add(e, c.coeffs()[t]);
        }
    }
    return b.build();
}

ModTPoly ModTPoly::reduce(const MPoly& f, const QuotPtr& ctx, unsigned s) {
    VarList vars = merge_vars(make_vars(true, s, false, false), f.vars());
    MPoly g = f.embed(vars);
    std::vector<std::uint32_t> dims(s, 1);
    for (const auto& t : g.terms())
        for (unsigned j = 0; j < s; ++j) dims[j] = std::max(dims[j], t.e[j + 1] + 1);
    ModTPoly r(ctx, dims);
    // accumulate theta-rows per cell then reduce
    std::map<std::vector<std::uint32_t>, std::vector<fq_el>> rows;
    for (const auto& t : g.terms()) {
        std::vector<std::uint32_t> k(t.e.begin() + 1, t.e.begin() + 1 + s);
        auto& row = rows[k];
        if (row.size() <= t.e[0]) row.resize(t.e[0] + 1, 0);
        row[t.e[0]] = t.c;
    }
    for (auto& [k, row] : rows) {
        PolyA p = PolyA::from_coeffs(ctx->field(), row);
        r.data_[r.cell_index(k)] = ctx->reduce(p);
    }
    return r;
}

ModTPoly ModTPoly::mul_univariate(unsigned j, const std::vector<QuotCtx::El>& g) const {
    const QuotCtx& R = *ctx_;
    std::vector<std::uint32_t> nd = dims_;
    nd[j] += static_cast<std::uint32_t>(g.size()) - 1;
    ModTPoly out(ctx_, nd);
    for (size_t idx = 0; idx < cells_; ++idx) {
        if (data_[idx] == 0) continue;
        std::vector<std::uint32_t> k(dims_.size());
        size_t r = idx;
        for (size_t x = 0; x < dims_.size(); ++x) {
            k[x] = static_cast<std::uint32_t>(r / stride_[x]);
            r %= stride_[x];
        }
        for (size_t e = 0; e < g.size(); ++e) {
            if (g[e] == 0) continue;
            auto kk = k;
            kk[j] += static_cast<std::uint32_t>(e);
            size_t oi = out.cell_index(kk);
            out.data_[oi] = R.add(out.data_[oi], R.mul(data_[idx], g[e]));
        }
    }
    return out;
}

ModTPoly ModTPoly::scale(QuotCtx::El c) const {
    ModTPoly out = *this;
    for (auto& x : out.data_) x = ctx_->mul(x, c);
    return out;
}

ModTPoly ModTPoly::operator+(const ModTPoly& o) const {
    return *this - o.scale(ctx_->neg(ctx_->one()));
}

ModTPoly ModTPoly::operator-(const ModTPoly& o) const {
    // dims must match after widening by caller
    if (dims_ != o.dims_) {
        // widen both to the max dims
        std::vector<std::uint32_t> nd(dims_.size());
        for (size_t j = 0; j < dims_.size(); ++j) nd[j] = std::max(dims_[j], o.dims_[j]);
        auto widen = [&](const ModTPoly& f) {
            ModTPoly w(f.ctx_, nd);
            for (size_t idx = 0; idx < f.cells_; ++idx) {
                if (f.data_[idx] == 0) continue;
                std::vector<std::uint32_t> k(f.dims_.size());
                size_t r = idx;
                for (size_t x = 0; x < f.dims_.size(); ++x) {
                    k[x] = static_cast<std::uint32_t>(r / f.stride_[x]);
                    r %= f.stride_[x];
                }
                w.data_[w.cell_index(k)] = f.data_[idx];
            }
            return w;
        };
        return widen(*this) - widen(o);
    }
    ModTPoly out = *this;
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = ctx_->sub(data_[i], o.data_[i]);
    return out;
}

} // namespace fzv
