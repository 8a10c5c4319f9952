#include "fzv/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace fzv {

std::string Var::name() const {
    switch (kind) {
        case Theta: return "theta";
        case T: return "t" + std::to_string(idx);
        case YVar: return "Y";
        case ZVar: return "z";
    }
    return "?";
}

Var Var::parse(const std::string& s) {
    if (s == "theta") return theta();
    if (s == "Y") return Y();
    if (s == "z") return z();
    if (s.size() >= 2 && s[0] == 't') {
        unsigned i = static_cast<unsigned>(std::stoul(s.substr(1)));
        if (i >= 1) return t(i);
    }
    throw ParseError("unknown variable '" + s + "'");
}

VarList make_vars(bool theta, unsigned s, bool Y, bool z) {
    VarList v;
    if (theta) v.push_back(Var::theta());
    for (unsigned i = 1; i <= s; ++i) v.push_back(Var::t(i));
    if (Y) v.push_back(Var::Y());
    if (z) v.push_back(Var::z());
    return v;
}

VarList merge_vars(const VarList& a, const VarList& b) {
    VarList r;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

int graded_lex_cmp(const MPoly::Exp& a, const MPoly::Exp& b, size_t nvars) {
    std::uint64_t da = 0, db = 0;
    for (size_t i = 0; i < nvars; ++i) { da += a[i]; db += b[i]; }
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = 0; i < nvars; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

MPoly::MPoly(FqPtr F, VarList vars) : F_(std::move(F)), vars_(std::move(vars)) {
    if (vars_.size() > kMaxVars) throw DomainError("too many variables");
    if (!std::is_sorted(vars_.begin(), vars_.end()))
        std::sort(vars_.begin(), vars_.end());
    if (std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
        throw DomainError("duplicate variable in list");
}

MPoly MPoly::constant(FqPtr F, VarList vars, fq_el c) {
    MPoly r(std::move(F), std::move(vars));
    if (c != 0) r.t_.push_back({Exp{}, c});
    return r;
}

MPoly MPoly::monomial(FqPtr F, VarList vars, const std::vector<std::uint32_t>& exps, fq_el c) {
    MPoly r(std::move(F), std::move(vars));
    if (exps.size() != r.vars_.size()) throw ArityMismatch("monomial exponent arity");
    if (c != 0) {
        Exp e{};
        std::copy(exps.begin(), exps.end(), e.begin());
        r.t_.push_back({e, c});
    }
    return r;
}

MPoly MPoly::var(FqPtr F, VarList vars, Var v) {
    MPoly r(std::move(F), std::move(vars));
    int i = r.var_index(v);
    if (i < 0) throw ArityMismatch("variable " + v.name() + " not in list");
    Exp e{};
    e[static_cast<size_t>(i)] = 1;
    r.t_.push_back({e, 1});
    return r;
}

MPoly MPoly::from_polyA(const PolyA& a, VarList vars) {
    MPoly r(a.field(), std::move(vars));
    int ti = r.var_index(Var::theta());
    if (ti < 0) throw ArityMismatch("theta not in variable list");
    const auto& c = a.coeffs();
    r.t_.reserve(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        Exp e{};
        e[static_cast<size_t>(ti)] = static_cast<std::uint32_t>(i);
        r.t_.push_back({e, c[i]});
    }
    std::sort(r.t_.begin(), r.t_.end(), [&](const Term& x, const Term& y) {
        return graded_lex_cmp(x.e, y.e, r.vars_.size()) < 0;
    });
    return r;
}

int MPoly::var_index(Var v) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
    if (it == vars_.end() || !(*it == v)) return -1;
    return static_cast<int>(it - vars_.begin());
}

Degree MPoly::deg_in(Var v) const {
    int i = var_index(v);
    if (t_.empty()) return Degree::minus_infinity();
    if (i < 0) return Degree::of(0);
    std::uint32_t d = 0;
    for (const auto& t : t_) d = std::max(d, t.e[static_cast<size_t>(i)]);
    return Degree::of(d);
}

Degree MPoly::total_deg() const {
    if (t_.empty()) return Degree::minus_infinity();
    std::uint64_t d = 0;
    for (const auto& t : t_) {
        std::uint64_t s = 0;
        for (size_t i = 0; i < vars_.size(); ++i) s += t.e[i];
        d = std::max(d, s);
    }
    return Degree::of(static_cast<long long>(d));
}

void MPoly::normalize_sorted() {
    std::sort(t_.begin(), t_.end(), [&](const Term& x, const Term& y) {
        return graded_lex_cmp(x.e, y.e, vars_.size()) < 0;
    });
    const Fq& F = *F_;
    size_t w = 0;
    for (size_t r = 0; r < t_.size();) {
        Exp e = t_[r].e;
        fq_el acc = 0;
        while (r < t_.size() && t_[r].e == e) {
            acc = F.add(acc, t_[r].c);
            ++r;
        }
        if (acc != 0) t_[w++] = {e, acc};
    }
    t_.resize(w);
}

void MPoly::Builder::add(const std::vector<std::uint32_t>& exps, fq_el c) {
    if (c == 0) return;
    if (exps.size() != vars_.size()) throw ArityMismatch("builder exponent arity");
    Exp e{};
    std::copy(exps.begin(), exps.end(), e.begin());
    raw_.push_back({e, c});
}

MPoly MPoly::Builder::build() {
    MPoly r(F_, vars_);
    r.t_ = std::move(raw_);
    r.normalize_sorted();
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    if (!(vars_ == o.vars_)) {
        VarList nv = merge_vars(vars_, o.vars_);
        return embed(nv) + o.embed(nv);
    }
    const Fq& F = *(F_ ? F_ : o.F_);
    MPoly r(F_ ? F_ : o.F_, vars_);
    r.t_.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        int c;
        if (i >= t_.size()) c = 1;
        else if (j >= o.t_.size()) c = -1;
        else c = graded_lex_cmp(t_[i].e, o.t_[j].e, vars_.size());
        if (c < 0) r.t_.push_back(t_[i++]);
        else if (c > 0) r.t_.push_back(o.t_[j++]);
        else {
            fq_el s = F.add(t_[i].c, o.t_[j].c);
            if (s != 0) r.t_.push_back({t_[i].e, s});
            ++i, ++j;
        }
    }
    return r;
}

MPoly MPoly::operator-() const {
    const Fq& F = *F_;
    MPoly r = *this;
    for (auto& t : r.t_) t.c = F.neg(t.c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    if (!(vars_ == o.vars_)) {
        VarList nv = merge_vars(vars_, o.vars_);
        return embed(nv) * o.embed(nv);
    }
    const Fq& F = *(F_ ? F_ : o.F_);
    MPoly r(F_ ? F_ : o.F_, vars_);
    if (t_.empty() || o.t_.empty()) return r;
    r.t_.reserve(t_.size() * o.t_.size());
    for (const auto& x : t_) {
        for (const auto& y : o.t_) {
            Exp e{};
            for (size_t k = 0; k < vars_.size(); ++k) e[k] = x.e[k] + y.e[k];
            r.t_.push_back({e, F.mul(x.c, y.c)});
        }
    }
    r.normalize_sorted();
    return r;
}

bool MPoly::operator==(const MPoly& o) const {
    if (vars_ == o.vars_) {
        if (t_.size() != o.t_.size()) return false;
        for (size_t i = 0; i < t_.size(); ++i)
            if (!(t_[i].e == o.t_[i].e) || t_[i].c != o.t_[i].c) return false;
        return true;
    }
    VarList nv = merge_vars(vars_, o.vars_);
    return embed(nv) == o.embed(nv);
}

MPoly MPoly::scale(fq_el c) const {
    const Fq& F = *F_;
    MPoly r(F_, vars_);
    if (c == 0) return r;
    r.t_ = t_;
    for (auto& t : r.t_) t.c = F.mul(t.c, c);
    return r;
}

MPoly MPoly::mul_monomial(const std::vector<std::uint32_t>& exps, fq_el c) const {
    if (exps.size() != vars_.size()) throw ArityMismatch("mul_monomial arity");
    const Fq& F = *F_;
    MPoly r(F_, vars_);
    if (c == 0) return r;
    r.t_ = t_;
    for (auto& t : r.t_) {
        for (size_t k = 0; k < vars_.size(); ++k) t.e[k] += exps[k];
        t.c = F.mul(t.c, c);
    }
    return r;
}

MPoly MPoly::pow(long long n) const {
    MPoly r = one(F_, vars_);
    MPoly b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

MPoly MPoly::embed(const VarList& nv) const {
    if (nv == vars_) return *this;
    MPoly r(F_, nv);
    std::array<int, kMaxVars> map{};
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::lower_bound(nv.begin(), nv.end(), vars_[i]);
        if (it == nv.end() || !(*it == vars_[i]))
            throw ArityMismatch("embed: variable " + vars_[i].name() + " missing from target");
        map[i] = static_cast<int>(it - nv.begin());
    }
    r.t_.reserve(t_.size());
    for (const auto& t : t_) {
        Exp e{};
        for (size_t i = 0; i < vars_.size(); ++i) e[static_cast<size_t>(map[i])] = t.e[i];
        r.t_.push_back({e, t.c});
    }
    std::sort(r.t_.begin(), r.t_.end(), [&](const Term& x, const Term& y) {
        return graded_lex_cmp(x.e, y.e, r.vars_.size()) < 0;
    });
    return r;
}

MPoly MPoly::compact() const {
    VarList nv;
    for (size_t i = 0; i < vars_.size(); ++i) {
        for (const auto& t : t_) {
            if (t.e[i] != 0) {
                nv.push_back(vars_[i]);
                break;
            }
        }
    }
    MPoly r(F_, nv);
    std::array<int, kMaxVars> map{};
    for (size_t i = 0, j = 0; i < vars_.size(); ++i) {
        map[i] = -1;
        if (j < nv.size() && nv[j] == vars_[i]) map[i] = static_cast<int>(j++);
    }
    r.t_.reserve(t_.size());
    for (const auto& t : t_) {
        Exp e{};
        for (size_t i = 0; i < vars_.size(); ++i)
            if (map[i] >= 0) e[static_cast<size_t>(map[i])] = t.e[i];
        r.t_.push_back({e, t.c});
    }
    std::sort(r.t_.begin(), r.t_.end(), [&](const Term& x, const Term& y) {
        return graded_lex_cmp(x.e, y.e, r.vars_.size()) < 0;
    });
    return r;
}

MPoly MPoly::coeff_of(Var v, std::uint32_t k) const {
    int i = var_index(v);
    if (i < 0) throw ArityMismatch("coeff_of: " + v.name() + " not in list");
    MPoly r(F_, vars_);
    for (const auto& t : t_) {
        if (t.e[static_cast<size_t>(i)] == k) {
            Term nt = t;
            nt.e[static_cast<size_t>(i)] = 0;
            r.t_.push_back(nt);
        }
    }
    std::sort(r.t_.begin(), r.t_.end(), [&](const Term& x, const Term& y) {
        return graded_lex_cmp(x.e, y.e, r.vars_.size()) < 0;
    });
    return r;
}

MPoly MPoly::subst_var_theta_pow(Var v, long long Q) const {
    int vi = var_index(v);
    if (vi < 0) throw ArityMismatch("subst: " + v.name() + " not in list");
    VarList nv = merge_vars(vars_, {Var::theta()});
    MPoly f = embed(nv);
    int ti = f.var_index(Var::theta());
    int vj = f.var_index(v);
    MPoly r(F_, nv);
    r.t_.reserve(f.t_.size());
    for (auto t : f.t_) {
        t.e[static_cast<size_t>(ti)] += static_cast<std::uint32_t>(Q * t.e[static_cast<size_t>(vj)]);
        t.e[static_cast<size_t>(vj)] = 0;
        r.t_.push_back(t);
    }
    r.normalize_sorted();
    return r;
}

MPoly MPoly::subst_var_scalar(Var v, fq_el c) const {
    int vi = var_index(v);
    if (vi < 0) throw ArityMismatch("subst: " + v.name() + " not in list");
    const Fq& F = *F_;
    MPoly r(F_, vars_);
    r.t_.reserve(t_.size());
    for (auto t : t_) {
        std::uint32_t k = t.e[static_cast<size_t>(vi)];
        if (k > 0) {
            if (c == 0) continue;
            t.c = F.mul(t.c, F.pow(c, k));
            t.e[static_cast<size_t>(vi)] = 0;
        }
        r.t_.push_back(t);
    }
    r.normalize_sorted();
    return r;
}

MPoly MPoly::rename_var(Var from, Var to) const {
    if (from == to) return *this;
    int fi = var_index(from);
    if (fi < 0) throw ArityMismatch("rename_var: " + from.name() + " not in list");
    if (var_index(to) >= 0) {
        Degree d = deg_in(to);
        if (d.finite && d.v > 0) throw ArityMismatch("rename_var: " + to.name() + " already occurs");
    }
    VarList nv;
    for (const auto& v : vars_)
        if (!(v == from)) nv.push_back(v);
    nv = merge_vars(nv, {to});
    MPoly r(F_, nv);
    int ti = r.var_index(to);
    std::vector<MPoly::Term> terms;
    terms.reserve(t_.size());
    for (const auto& t : t_) {
        Exp e{};
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (static_cast<int>(i) == fi) continue;
            int ni = r.var_index(vars_[i]);
            e[static_cast<size_t>(ni)] = t.e[i];
        }
        e[static_cast<size_t>(ti)] += t.e[static_cast<size_t>(fi)];
        terms.push_back({e, t.c});
    }
    r.t_ = std::move(terms);
    r.normalize_sorted();
    return r;
}

std::map<MPoly::Exp, PolyA> MPoly::theta_slices() const {
    int ti = var_index(Var::theta());
    std::map<Exp, std::vector<fq_el>> acc;
    for (const auto& t : t_) {
        Exp e = t.e;
        std::uint32_t k = 0;
        if (ti >= 0) {
            k = e[static_cast<size_t>(ti)];
            e[static_cast<size_t>(ti)] = 0;
        }
        auto& v = acc[e];
        if (v.size() <= k) v.resize(k + 1, 0);
        v[k] = t.c;
    }
    std::map<Exp, PolyA> r;
    for (auto& [e, v] : acc) r.emplace(e, PolyA::from_coeffs(F_, std::move(v)));
    return r;
}

MPoly MPoly::from_theta_slices(const FqPtr& F, const VarList& vars, const std::map<Exp, PolyA>& slices) {
    MPoly r(F, vars);
    int ti = r.var_index(Var::theta());
    if (ti < 0) throw ArityMismatch("from_theta_slices: theta not in list");
    for (const auto& [e, p] : slices) {
        const auto& c = p.coeffs();
        for (size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            Exp ne = e;
            ne[static_cast<size_t>(ti)] = static_cast<std::uint32_t>(k);
            r.t_.push_back({ne, c[k]});
        }
    }
    r.normalize_sorted();
    return r;
}

std::pair<MPoly, MPoly> MPoly::divrem_in_var(const MPoly& gin, Var v) const {
    MPoly g = gin;
    if (!(g.vars() == vars_)) {
        VarList nv = merge_vars(vars_, g.vars());
        return embed(nv).divrem_in_var(g.embed(nv), v);
    }
    int vi = var_index(v);
    if (vi < 0) throw ArityMismatch("divrem_in_var: " + v.name() + " not in list");
    const Fq& F = *F_;
    Degree dgv = g.deg_in(v);
    if (g.is_zero()) throw DomainError("division by zero polynomial");
    std::uint32_t dg = dgv.finite ? static_cast<std::uint32_t>(dgv.v) : 0;

    // leading v-coefficient of g must be an F_q constant
    fq_el glc = 0;
    {
        MPoly lead = g.coeff_of(v, dg);
        if (lead.term_count() != 1) throw DomainError("divrem_in_var: leading coefficient not constant");
        const Term& lt = lead.terms()[0];
        for (size_t k = 0; k < vars_.size(); ++k)
            if (lt.e[k] != 0) throw DomainError("divrem_in_var: leading coefficient not constant");
        glc = lt.c;
    }
    fq_el glcinv = F.inv(glc);

    // slice f and g by v-exponent
    auto slices = [&](const MPoly& f, std::uint32_t& dmax) {
        dmax = 0;
        for (const auto& t : f.t_) dmax = std::max(dmax, t.e[static_cast<size_t>(vi)]);
        std::vector<MPoly> s(dmax + 1, MPoly(F_, vars_));
        for (const auto& t : f.t_) {
            Term nt = t;
            std::uint32_t k = nt.e[static_cast<size_t>(vi)];
            nt.e[static_cast<size_t>(vi)] = 0;
            s[k].t_.push_back(nt);
        }
        for (auto& m : s) m.normalize_sorted();
        return s;
    };
    std::uint32_t df = 0, dgu = 0;
    std::vector<MPoly> fs = slices(*this, df);
    std::vector<MPoly> gs = slices(g, dgu);
    if (is_zero() || df < dg) return {zero(F_, vars_), *this};

    std::vector<MPoly> quo(df - dg + 1, MPoly(F_, vars_));
    for (std::uint32_t k = df - dg + 1; k-- > 0;) {
        MPoly qc = fs[k + dg].scale(glcinv);
        quo[k] = qc;
        if (qc.is_zero()) continue;
        for (std::uint32_t j = 0; j <= dg; ++j) {
            if (gs[j].is_zero()) continue;
            fs[k + j] = fs[k + j] - qc * gs[j];
        }
    }
    // reassemble
    auto assemble = [&](const std::vector<MPoly>& s, std::uint32_t hi) {
        MPoly r(F_, vars_);
        for (std::uint32_t k = 0; k <= hi && k < s.size(); ++k) {
            for (auto t : s[k].t_) {
                t.e[static_cast<size_t>(vi)] = k;
                r.t_.push_back(t);
            }
        }
        r.normalize_sorted();
        return r;
    };
    MPoly Q = assemble(quo, df - dg);
    MPoly R = assemble(fs, dg == 0 ? 0 : dg - 1);
    if (dg == 0) R = MPoly(F_, vars_); // divisor free of v: remainder handled via Q
    return {Q, R};
}

MPoly MPoly::exact_div(const MPoly& gin) const {
    if (gin.is_zero()) throw DomainError("exact_div by zero");
    if (is_zero()) return zero(F_, vars_.empty() ? gin.vars_ : vars_);
    MPoly g = gin;
    if (!(g.vars() == vars_)) {
        VarList nv = merge_vars(vars_, g.vars());
        return embed(nv).exact_div(g.embed(nv));
    }
    // fast path: some variable in which g is nonconstant with a pure constant
    // leading coefficient (covers monic-in-v divisors and theta binomials)
    for (size_t i = 0; i < vars_.size(); ++i) {
        Degree d = g.deg_in(vars_[i]);
        if (!d.finite || d.v == 0) continue;
        std::uint32_t dg = static_cast<std::uint32_t>(d.v);
        MPoly lead = g.coeff_of(vars_[i], dg);
        bool pure = lead.term_count() == 1;
        if (pure) {
            const Term& lt = lead.terms()[0];
            for (size_t k = 0; k < vars_.size(); ++k)
                if (lt.e[k] != 0) { pure = false; break; }
        }
        if (pure) {
            auto [q, r] = divrem_in_var(g, vars_[i]);
            if (!r.is_zero()) throw NonExactDivision("multivariate remainder (in " + vars_[i].name() + ")");
            return q;
        }
    }
    // general leading-term cancellation
    const Fq& F = *F_;
    MPoly f = *this;
    MPoly::Builder qb(F_, vars_);
    const Term& glt = g.t_.back();
    fq_el glcinv = F.inv(glt.c);
    size_t guard = 0;
    while (!f.is_zero()) {
        if (++guard > 4000000) throw BudgetExceeded("exact_div step limit");
        const Term& flt = f.t_.back();
        Exp qe{};
        for (size_t k = 0; k < vars_.size(); ++k) {
            if (flt.e[k] < glt.e[k]) throw NonExactDivision("leading term not divisible");
            qe[k] = flt.e[k] - glt.e[k];
        }
        fq_el qc = F.mul(flt.c, glcinv);
        qb.add(qe, qc);
        MPoly sub(F_, vars_);
        sub.t_.reserve(g.t_.size());
        for (const auto& t : g.t_) {
            Exp e{};
            for (size_t k = 0; k < vars_.size(); ++k) e[k] = t.e[k] + qe[k];
            sub.t_.push_back({e, F.neg(F.mul(t.c, qc))});
        }
        sub.normalize_sorted();
        f = f + sub;
    }
    return qb.build();
}

std::string MPoly::emit() const {
    std::ostringstream out;
    out << "vars:";
    for (const auto& v : vars_) out << ' ' << v.name();
    out << '\n';
    const Fq& F = *F_;
    for (const auto& t : t_) {
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (i) out << ' ';
            out << t.e[i];
        }
        out << " : " << F.emit(t.c) << '\n';
    }
    return out.str();
}

MPoly MPoly::parse(const FqPtr& F, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("vars:", 0) != 0)
        throw ParseError("MPoly text must start with 'vars:'");
    VarList vars;
    {
        std::istringstream ls(line.substr(5));
        std::string tok;
        while (ls >> tok) vars.push_back(Var::parse(tok));
    }
    MPoly r(F, vars);
    std::vector<Term> terms;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("MPoly term line missing ':'");
        std::istringstream es(line.substr(0, colon));
        Exp e{};
        for (size_t i = 0; i < vars.size(); ++i) {
            std::uint64_t x;
            if (!(es >> x)) throw ParseError("MPoly term line: bad exponents");
            e[i] = static_cast<std::uint32_t>(x);
        }
        std::string ctok = line.substr(colon + 1);
        size_t a = ctok.find_first_not_of(" \t");
        size_t b = ctok.find_last_not_of(" \t");
        if (a == std::string::npos) throw ParseError("MPoly term line: missing coefficient");
        terms.push_back({e, F->parse(ctok.substr(a, b - a + 1))});
    }
    r.t_ = std::move(terms);
    r.normalize_sorted();
    return r;
}

// ---- MPolyK ----

MPolyK::MPolyK(MPoly n) : num_(std::move(n)), den_(PolyA::one(num_.field())) {
    if (num_.var_index(Var::theta()) < 0) num_ = num_.embed(merge_vars(num_.vars(), {Var::theta()}));
}

MPolyK::MPolyK(MPoly n, PolyA d) : num_(std::move(n)), den_(std::move(d)) {
    if (num_.var_index(Var::theta()) < 0) num_ = num_.embed(merge_vars(num_.vars(), {Var::theta()}));
    normalize();
}

MPolyK MPolyK::from_frac(const FracK& f, VarList vars) {
    VarList nv = merge_vars(vars, {Var::theta()});
    return MPolyK(MPoly::from_polyA(f.num(), nv), f.den());
}

void MPolyK::normalize() {
    if (den_.is_zero()) throw DomainError("MPolyK zero denominator");
    if (num_.is_zero()) {
        den_ = PolyA::one(den_.field());
        return;
    }
    PolyA g = den_;
    for (const auto& [e, p] : num_.theta_slices()) {
        g = PolyA::gcd(g, p);
        if (g.is_one()) break;
    }
    if (!g.is_one()) {
        auto slices = num_.theta_slices();
        std::map<MPoly::Exp, PolyA> ns;
        for (auto& [e, p] : slices) ns.emplace(e, p.exact_div(g));
        num_ = MPoly::from_theta_slices(num_.field(), num_.vars(), ns);
        den_ = den_.exact_div(g);
    }
    fq_el l = den_.lc();
    if (l != 1) {
        fq_el li = den_.field()->inv(l);
        den_ = den_.scale(li);
        num_ = num_.scale(li);
    }
}

MPolyK MPolyK::operator+(const MPolyK& o) const {
    VarList nv = merge_vars(num_.vars(), o.num_.vars());
    MPoly a = num_.embed(nv) * MPoly::from_polyA(o.den_, nv);
    MPoly b = o.num_.embed(nv) * MPoly::from_polyA(den_, nv);
    return MPolyK(a + b, den_ * o.den_);
}

MPolyK MPolyK::operator-(const MPolyK& o) const { return *this + (-o); }

MPolyK MPolyK::operator-() const {
    MPolyK r = *this;
    r.num_ = -r.num_;
    return r;
}

MPolyK MPolyK::operator*(const MPolyK& o) const {
    return MPolyK(num_ * o.num_, den_ * o.den_);
}

MPolyK MPolyK::scale(const FracK& c) const {
    VarList nv = merge_vars(num_.vars(), {Var::theta()});
    return MPolyK(num_.embed(nv) * MPoly::from_polyA(c.num(), nv), den_ * c.den());
}

bool MPolyK::operator==(const MPolyK& o) const {
    // normalized representatives are literal
    return den_ == o.den_ && num_.compact() == o.num_.compact();
}

std::string MPolyK::emit() const {
    return num_.emit() + "den: " + den_.emit() + "\n";
}

MPolyK MPolyK::parse(const FqPtr& F, const std::string& text) {
    size_t pos = text.rfind("den:");
    if (pos == std::string::npos) throw ParseError("MPolyK text missing 'den:'");
    MPoly n = MPoly::parse(F, text.substr(0, pos));
    std::string d = text.substr(pos + 4);
    size_t a = d.find_first_not_of(" \t");
    size_t b = d.find_last_not_of(" \t\n");
    return MPolyK(std::move(n), PolyA::parse(F, d.substr(a, b - a + 1)));
}

// ---- substitute ----

MPolyK substitute(const MPoly& f, const std::map<Var, MPolyK>& bindings) {
    for (const auto& [v, val] : bindings) {
        if (f.var_index(v) < 0) throw ArityMismatch("substitute: " + v.name() + " not a variable of f");
        (void)val;
    }
    MPolyK acc(f);
    for (const auto& [v, val] : bindings) {
        // Horner in v over MPolyK arithmetic
        const MPoly& n = acc.num();
        Degree dv = n.deg_in(v);
        if (!dv.finite) continue; // zero polynomial stays zero
        std::uint32_t d = static_cast<std::uint32_t>(dv.v);
        VarList nv = merge_vars(n.vars(), val.num().vars());
        MPolyK res = MPolyK(n.coeff_of(v, d).embed(nv));
        for (std::uint32_t k = d; k-- > 0;) {
            res = res * val + MPolyK(n.coeff_of(v, k).embed(nv));
        }
        acc = MPolyK(res.num(), res.den() * acc.den());
    }
    return acc;
}

MPolyK substitute(const MPolyK& f, const std::map<Var, MPolyK>& bindings) {
    MPolyK n = substitute(f.num(), bindings);
    return MPolyK(n.num(), n.den() * f.den());
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(const std::string& s) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
    return std::string(buf);
}

} // namespace fzv
