#include "fzv/poly.hpp"

#include <algorithm>
#include <sstream>

namespace fzv {

namespace detail {

void mul_acc_raw(const Fq& F, const fq_el* a, size_t na, const fq_el* b, size_t nb, fq_el* out) {
    if (na == 0 || nb == 0) return;
    if (F.e() == 1) {
        const unsigned p = F.p();
        // accumulate in 32-bit: na * (p-1)^2 stays far below 2^32 at our sizes,
        // reduce once per output coefficient
        for (size_t k = 0; k < na + nb - 1; ++k) {
            size_t ilo = k >= nb - 1 ? k - (nb - 1) : 0;
            size_t ihi = std::min(k, na - 1);
            std::uint64_t acc = out[k];
            for (size_t i = ilo; i <= ihi; ++i)
                acc += static_cast<std::uint32_t>(a[i]) * b[k - i];
            out[k] = static_cast<fq_el>(acc % p);
        }
    } else {
        for (size_t i = 0; i < na; ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < nb; ++j)
                out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
        }
    }
}

} // namespace detail

void PolyA::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyA PolyA::constant(FqPtr F, fq_el c) {
    PolyA r(std::move(F));
    if (c != 0) r.c_ = {c};
    return r;
}

PolyA PolyA::theta_pow(FqPtr F, long long k) {
    PolyA r(std::move(F));
    r.c_.assign(static_cast<size_t>(k) + 1, 0);
    r.c_.back() = 1;
    return r;
}

PolyA PolyA::from_coeffs(FqPtr F, std::vector<fq_el> c) {
    PolyA r(std::move(F));
    r.c_ = std::move(c);
    r.trim();
    return r;
}

long long PolyA::deg_int() const {
    if (c_.empty()) throw DomainError("deg_int of the zero polynomial");
    return static_cast<long long>(c_.size()) - 1;
}

fq_el PolyA::lc() const {
    if (c_.empty()) throw DomainError("leading coefficient of zero");
    return c_.back();
}

PolyA PolyA::operator+(const PolyA& o) const {
    const Fq& F = F_ ? *F_ : *o.F_;
    PolyA r(F_ ? F_ : o.F_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F.add(coeff(i), o.coeff(i));
    r.trim();
    return r;
}

PolyA PolyA::operator-(const PolyA& o) const {
    const Fq& F = F_ ? *F_ : *o.F_;
    PolyA r(F_ ? F_ : o.F_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F.sub(coeff(i), o.coeff(i));
    r.trim();
    return r;
}

PolyA PolyA::operator-() const {
    const Fq& F = *F_;
    PolyA r(F_);
    r.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = F.neg(c_[i]);
    return r;
}

PolyA PolyA::operator*(const PolyA& o) const {
    PolyA r(F_);
    if (c_.empty() || o.c_.empty()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    detail::mul_acc_raw(*F_, c_.data(), c_.size(), o.c_.data(), o.c_.size(), r.c_.data());
    r.trim();
    return r;
}

PolyA PolyA::scale(fq_el c) const {
    const Fq& F = *F_;
    PolyA r(F_);
    if (c == 0) return r;
    r.c_.resize(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = F.mul(c_[i], c);
    return r;
}

PolyA PolyA::shift_up(long long k) const {
    PolyA r(F_);
    if (c_.empty()) return r;
    r.c_.assign(c_.size() + static_cast<size_t>(k), 0);
    std::copy(c_.begin(), c_.end(), r.c_.begin() + static_cast<size_t>(k));
    return r;
}

PolyA PolyA::pow(long long n) const {
    PolyA r = one(F_);
    PolyA b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

std::pair<PolyA, PolyA> PolyA::divrem(const PolyA& d) const {
    if (d.is_zero()) throw DomainError("division by the zero polynomial");
    const Fq& F = *F_;
    if (c_.size() < d.c_.size()) return {zero(F_), *this};
    const size_t nd = d.c_.size();
    const fq_el dinv = F.inv(d.c_.back());
    std::vector<fq_el> rem = c_;
    std::vector<fq_el> quo(c_.size() - nd + 1, 0);

    if (F.e() == 1) {
        // prime field: synthetic division with signed accumulation; values stay
        // in [0,p), products below p^2 <= 25, per-step sums bounded by nd*25
        const int p = static_cast<int>(F.p());
        for (size_t k = quo.size(); k-- > 0;) {
            int lead = rem[k + nd - 1];
            if (lead == 0) continue;
            int qc = (lead * dinv) % p;
            quo[k] = static_cast<fq_el>(qc);
            for (size_t j = 0; j < nd; ++j) {
                int t = rem[k + j] - qc * d.c_[j];
                t %= p;
                if (t < 0) t += p;
                rem[k + j] = static_cast<fq_el>(t);
            }
        }
    } else {
        for (size_t k = quo.size(); k-- > 0;) {
            fq_el lead = rem[k + nd - 1];
            if (lead == 0) continue;
            fq_el qc = F.mul(lead, dinv);
            quo[k] = qc;
            for (size_t j = 0; j < nd; ++j)
                rem[k + j] = F.sub(rem[k + j], F.mul(qc, d.c_[j]));
        }
    }
    PolyA Q(F_), R(F_);
    Q.c_ = std::move(quo);
    Q.trim();
    rem.resize(nd - 1);
    R.c_ = std::move(rem);
    R.trim();
    return {std::move(Q), std::move(R)};
}

std::pair<PolyA, PolyA> PolyA::divrem_sparse(const std::vector<std::pair<long long, fq_el>>& d) const {
    if (d.empty() || d.front().second == 0) throw DomainError("divrem_sparse: bad divisor");
    const Fq& F = *F_;
    const long long de = d.front().first;
    if (c_.empty() || static_cast<long long>(c_.size()) - 1 < de) return {zero(F_), *this};
    const fq_el linv = F.inv(d.front().second);
    std::vector<fq_el> rem = c_;
    std::vector<fq_el> quo(c_.size() - static_cast<size_t>(de), 0);
    for (size_t k = rem.size(); k-- > static_cast<size_t>(de);) {
        fq_el lead = rem[k];
        if (lead == 0) continue;
        fq_el qc = F.mul(lead, linv);
        quo[k - static_cast<size_t>(de)] = qc;
        for (const auto& [e, c] : d)
            rem[k - static_cast<size_t>(de - e)] = F.sub(rem[k - static_cast<size_t>(de - e)], F.mul(qc, c));
    }
    rem.resize(static_cast<size_t>(de));
    PolyA Q(F_), R(F_);
    Q.c_ = std::move(quo);
    Q.trim();
    R.c_ = std::move(rem);
    R.trim();
    return {std::move(Q), std::move(R)};
}

PolyA PolyA::exact_div_sparse(const std::vector<std::pair<long long, fq_el>>& d) const {
    auto [q, r] = divrem_sparse(d);
    if (!r.is_zero()) throw NonExactDivision("sparse divisor remainder");
    return q;
}

PolyA PolyA::exact_div(const PolyA& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero())
        throw NonExactDivision("PolyA remainder of degree " + std::to_string(r.deg_int()));
    return q;
}

bool PolyA::divisible_by(const PolyA& d) const {
    return divrem(d).second.is_zero();
}

PolyA PolyA::monic() const {
    if (is_zero()) throw DomainError("monic normalization of zero");
    return scale(F_->inv(c_.back()));
}

PolyA PolyA::gcd(const PolyA& a, const PolyA& b) {
    PolyA x = a, y = b;
    while (!y.is_zero()) {
        PolyA r = x.divrem(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero()) return x;
    return x.monic();
}

PolyA PolyA::xgcd(const PolyA& a, const PolyA& b, PolyA& u, PolyA& v) {
    const FqPtr& F = a.F_ ? a.F_ : b.F_;
    PolyA r0 = a, r1 = b;
    PolyA u0 = one(F), u1 = zero(F), v0 = zero(F), v1 = one(F);
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divrem(r1);
        PolyA u2 = u0 - q * u1;
        PolyA v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (r0.is_zero()) { u = u0; v = v0; return r0; }
    fq_el s = F->inv(r0.lc());
    u = u0.scale(s);
    v = v0.scale(s);
    return r0.scale(s);
}

fq_el PolyA::eval(fq_el x) const {
    const Fq& F = *F_;
    fq_el r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = F.add(F.mul(r, x), c_[i]);
    return r;
}

PolyA PolyA::derivative() const {
    const Fq& F = *F_;
    PolyA r(F_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) {
        fq_el m = F.from_int(static_cast<long long>(i));
        r.c_[i - 1] = F.mul(c_[i], m);
    }
    r.trim();
    return r;
}

PolyA PolyA::subst_theta_pow(long long Q) const {
    if (Q < 1) throw DomainError("subst_theta_pow needs Q >= 1");
    PolyA r(F_);
    if (c_.empty()) return r;
    r.c_.assign(static_cast<size_t>((c_.size() - 1) * Q) + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i * Q] = c_[i];
    return r;
}

std::string PolyA::emit() const {
    const Fq& F = *F_;
    if (c_.empty()) return F.emit(0);
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ',';
        s += F.emit(c_[i]);
    }
    return s;
}

PolyA PolyA::parse(const FqPtr& F, const std::string& s) {
    std::vector<fq_el> c;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, ',')) {
        // trim spaces
        size_t a = tok.find_first_not_of(" \t");
        size_t b = tok.find_last_not_of(" \t");
        if (a == std::string::npos) throw ParseError("empty coefficient in '" + s + "'");
        c.push_back(F->parse(tok.substr(a, b - a + 1)));
    }
    if (c.empty()) throw ParseError("empty polynomial text");
    return from_coeffs(F, std::move(c));
}

int PolyA::cmp(const PolyA& a, const PolyA& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size() ? -1 : 1;
    for (size_t i = a.c_.size(); i-- > 0;) {
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
    }
    return 0;
}

FracK::FracK(PolyA n) : num_(std::move(n)), den_(PolyA::one(num_.field())) {}

FracK::FracK(PolyA n, PolyA d) : num_(std::move(n)), den_(std::move(d)) {
    normalize();
}

void FracK::normalize() {
    if (den_.is_zero()) throw DomainError("fraction with zero denominator");
    if (num_.is_zero()) {
        den_ = PolyA::one(den_.field());
        return;
    }
    PolyA g = PolyA::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_.exact_div(g);
        den_ = den_.exact_div(g);
    }
    fq_el l = den_.lc();
    if (l != 1) {
        fq_el li = den_.field()->inv(l);
        den_ = den_.scale(li);
        num_ = num_.scale(li);
    }
}

FracK FracK::operator+(const FracK& o) const {
    return FracK(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FracK FracK::operator-(const FracK& o) const {
    return FracK(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

FracK FracK::operator-() const {
    FracK r = *this;
    r.num_ = -r.num_;
    return r;
}

FracK FracK::operator*(const FracK& o) const {
    return FracK(num_ * o.num_, den_ * o.den_);
}

FracK FracK::operator/(const FracK& o) const {
    if (o.is_zero()) throw DomainError("division by zero fraction");
    return FracK(num_ * o.den_, den_ * o.num_);
}

FracK FracK::inv() const {
    if (is_zero()) throw DomainError("inverse of zero fraction");
    return FracK(den_, num_);
}

std::string FracK::emit() const {
    return num_.emit() + " / " + den_.emit();
}

FracK FracK::parse(const FqPtr& F, const std::string& s) {
    size_t slash = s.find('/');
    if (slash == std::string::npos) return FracK(PolyA::parse(F, s));
    return FracK(PolyA::parse(F, s.substr(0, slash)), PolyA::parse(F, s.substr(slash + 1)));
}

} // namespace fzv
