#include "keller/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace keller {

VariableSet::VariableSet(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw error("empty variable name");
        if (!seen.insert(n).second) throw error("duplicate variable name: " + n);
    }
}

std::optional<std::size_t> VariableSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

Monomial::Monomial(std::vector<std::uint32_t> exps) : e_(std::move(exps)), deg_(0) {
    for (auto v : e_) deg_ += v;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    r.deg_ += o.deg_;
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::divide_by(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
    r.deg_ -= o.deg_;
    return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    r.deg_ = 0;
    for (std::size_t i = 0; i < r.e_.size(); ++i) {
        r.e_[i] = std::max(a.e_[i], b.e_[i]);
        r.deg_ += r.e_[i];
    }
    return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    r.deg_ = 0;
    for (std::size_t i = 0; i < r.e_.size(); ++i) {
        r.e_[i] = std::min(a.e_[i], b.e_[i]);
        r.deg_ += r.e_[i];
    }
    return r;
}

bool Monomial::coprime_with(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > 0 && o.e_[i] > 0) return false;
    return true;
}

std::string order_name(MonomialOrder o) {
    switch (o) {
        case MonomialOrder::GradedReverseLex: return "grevlex";
        case MonomialOrder::GradedLex: return "grlex";
        case MonomialOrder::Lex: return "lex";
    }
    return "?";
}

std::optional<MonomialOrder> order_from_name(std::string_view name) {
    if (name == "grevlex") return MonomialOrder::GradedReverseLex;
    if (name == "grlex") return MonomialOrder::GradedLex;
    if (name == "lex") return MonomialOrder::Lex;
    return std::nullopt;
}

int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
    const auto& ea = a.exponents();
    const auto& eb = b.exponents();
    switch (order) {
        case MonomialOrder::GradedReverseLex: {
            if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
            for (std::size_t i = ea.size(); i-- > 0;) {
                if (ea[i] != eb[i]) return ea[i] > eb[i] ? -1 : 1;
            }
            return 0;
        }
        case MonomialOrder::GradedLex:
            if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
            [[fallthrough]];
        case MonomialOrder::Lex: {
            for (std::size_t i = 0; i < ea.size(); ++i) {
                if (ea[i] != eb[i]) return ea[i] < eb[i] ? -1 : 1;
            }
            return 0;
        }
    }
    return 0;
}

Polynomial Polynomial::constant(const Scalar& c, const VarsPtr& vars) {
    Polynomial p(c.ring(), vars);
    if (!c.is_zero()) p.terms_.emplace(Monomial(vars->size()), c);
    return p;
}

Polynomial Polynomial::variable(const Ring& ring, const VarsPtr& vars, std::size_t index) {
    if (index >= vars->size()) throw error("variable index out of range");
    std::vector<std::uint32_t> e(vars->size(), 0);
    e[index] = 1;
    Polynomial p(ring, vars);
    p.terms_.emplace(Monomial(std::move(e)), Scalar::one(ring));
    return p;
}

Polynomial Polynomial::term(const Scalar& c, const Monomial& m, const VarsPtr& vars) {
    if (m.nvars() != vars->size()) throw error("monomial arity mismatch");
    Polynomial p(c.ring(), vars);
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

bool Polynomial::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_constant() && terms_.begin()->second.is_one();
}

long Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    // storage order is graded, so the last term has maximal degree
    return static_cast<long>(terms_.rbegin()->first.degree());
}

Scalar Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero(ring_) : it->second;
}

const std::pair<const Monomial, Scalar>& Polynomial::leading_term(MonomialOrder order) const {
    if (terms_.empty()) throw error("leading term of zero polynomial");
    if (order == MonomialOrder::GradedReverseLex) return *terms_.rbegin();
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (compare(it->first, best->first, order) > 0) best = it;
    return *best;
}

void Polynomial::check_compatible(const Polynomial& o) const {
    if (ring_ != o.ring_) throw ring_mismatch_error("polynomial ring mismatch");
    if (vars_ != o.vars_ && !(*vars_ == *o.vars_)) throw ring_mismatch_error("variable set mismatch");
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ring_, vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
    if (c.ring() != ring_) throw ring_mismatch_error("scalar ring mismatch in scale");
    Polynomial r(ring_, vars_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) {
        Scalar p = v * c;
        if (!p.is_zero()) r.terms_.emplace(m, p);
    }
    return r;
}

Polynomial Polynomial::times_term(const Scalar& c, const Monomial& m) const {
    Polynomial r(ring_, vars_);
    if (c.is_zero()) return r;
    for (const auto& [mm, v] : terms_) {
        Scalar p = v * c;
        if (!p.is_zero()) r.terms_.emplace(mm * m, p);
    }
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(ring_, vars_);
    const Polynomial& small = terms_.size() <= o.terms_.size() ? *this : o;
    const Polynomial& large = terms_.size() <= o.terms_.size() ? o : *this;
    for (const auto& [m, c] : small.terms_)
        for (const auto& [mm, cc] : large.terms_) r.add_term(m * mm, c * cc);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial acc = Polynomial::constant(Scalar::one(ring_), vars_);
    Polynomial base(*this);
    while (e) {
        if (e & 1) acc = acc * base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (ring_ != o.ring_ || !(vars_ == o.vars_ || *vars_ == *o.vars_)) return false;
    return terms_ == o.terms_;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    if (var >= nvars()) throw error("derivative: variable index out of range");
    Polynomial r(ring_, vars_);
    for (const auto& [m, c] : terms_) {
        std::uint32_t e = m.exponent(var);
        if (e == 0) continue;
        Scalar nc = c * Scalar::of_int(static_cast<long>(e), ring_);
        if (nc.is_zero()) continue;
        auto exps = m.exponents();
        exps[var] -= 1;
        r.terms_.emplace(Monomial(std::move(exps)), nc);
    }
    return r;
}

Scalar Polynomial::evaluate(std::span<const Scalar> point) const {
    if (point.size() != nvars()) throw error("evaluate: point arity mismatch");
    for (const auto& v : point)
        if (v.ring() != ring_) throw ring_mismatch_error("evaluate: point ring mismatch");
    // power tables per variable
    std::vector<std::vector<Scalar>> pows(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) pows[i].push_back(Scalar::one(ring_));
    auto power = [&](std::size_t i, std::uint32_t e) -> const Scalar& {
        auto& tab = pows[i];
        while (tab.size() <= e) tab.push_back(tab.back() * point[i]);
        return tab[e];
    };
    Scalar acc = Scalar::zero(ring_);
    for (const auto& [m, c] : terms_) {
        Scalar t = c;
        for (std::size_t i = 0; i < nvars(); ++i)
            if (m.exponent(i) > 0) t = t * power(i, m.exponent(i));
        acc = acc + t;
    }
    return acc;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> images) const {
    if (images.size() != nvars()) throw error("substitute: arity mismatch");
    const Ring target = images.empty() ? ring_ : images[0].ring();
    const VarsPtr tvars = images.empty() ? vars_ : images[0].vars();
    for (const auto& g : images)
        if (g.ring() != target || !(*g.vars() == *tvars))
            throw ring_mismatch_error("substitute: images disagree on ring/variables");
    std::vector<std::vector<Polynomial>> pows(nvars());
    auto power = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
        auto& tab = pows[i];
        if (tab.empty()) tab.push_back(Polynomial::constant(Scalar::one(target), tvars));
        while (tab.size() <= e) tab.push_back(tab.back() * images[i]);
        return tab[e];
    };
    Polynomial acc(target, tvars);
    for (const auto& [m, c] : terms_) {
        Polynomial t = Polynomial::constant(convert_scalar(c, target), tvars);
        for (std::size_t i = 0; i < nvars(); ++i)
            if (m.exponent(i) > 0) t = t * power(i, m.exponent(i));
        acc = acc + t;
    }
    return acc;
}

IntegerNormalForm integer_normalize(const Polynomial& f) {
    if (f.is_zero()) throw error("integer_normalize of zero polynomial");
    if (f.ring().kind() == RingKind::PrimeField)
        throw error("integer_normalize over a prime field");
    Integer den_lcm = 1;
    if (f.ring().kind() == RingKind::Rationals) {
        for (const auto& [m, c] : f.terms())
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.rational_value().get_den().get_mpz_t());
    }
    std::vector<Integer> nums;
    nums.reserve(f.term_count());
    for (const auto& [m, c] : f.terms()) {
        if (f.ring().kind() == RingKind::Rationals) {
            const Rational& q = c.rational_value();
            Integer scale;
            mpz_divexact(scale.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
            nums.push_back(q.get_num() * scale);
        } else {
            nums.push_back(c.integer_value());
        }
    }
    Integer cont = content(nums);
    Polynomial prim(Ring::integers(), f.vars());
    std::size_t i = 0;
    for (const auto& [m, c] : f.terms()) {
        Integer v;
        mpz_divexact(v.get_mpz_t(), nums[i].get_mpz_t(), cont.get_mpz_t());
        prim.add_term(m, Scalar::integer(v));
        ++i;
    }
    return IntegerNormalForm{den_lcm, cont, std::move(prim)};
}

Polynomial reduce_mod_p(const Polynomial& f, const Ring& field) {
    return convert_ring(f, field);
}

Polynomial convert_ring(const Polynomial& f, const Ring& target) {
    if (f.ring() == target) return f;
    Polynomial r(target, f.vars());
    for (const auto& [m, c] : f.terms()) r.add_term(m, convert_scalar(c, target));
    return r;
}

Polynomial reindex_variables(const Polynomial& f, const VarsPtr& target,
                             std::span<const std::size_t> var_map) {
    if (var_map.size() != f.nvars()) throw error("reindex_variables: map arity mismatch");
    Polynomial r(f.ring(), target);
    for (const auto& [m, c] : f.terms()) {
        std::vector<std::uint32_t> e(target->size(), 0);
        for (std::size_t i = 0; i < var_map.size(); ++i) {
            if (var_map[i] >= target->size()) throw error("reindex_variables: index out of range");
            e[var_map[i]] += m.exponent(i);
        }
        r.add_term(Monomial(std::move(e)), c);
    }
    return r;
}

std::map<Monomial, Polynomial, GrevlexLess>
collect_coefficients(const Polynomial& f, std::span<const std::size_t> selected,
                     const VarsPtr& sub_vars, const VarsPtr& rest_vars) {
    if (selected.size() != sub_vars->size()) throw error("collect_coefficients: sub arity mismatch");
    if (selected.size() + rest_vars->size() != f.nvars())
        throw error("collect_coefficients: rest arity mismatch");
    std::vector<bool> is_selected(f.nvars(), false);
    for (auto i : selected) is_selected[i] = true;
    std::map<Monomial, Polynomial, GrevlexLess> out;
    for (const auto& [m, c] : f.terms()) {
        std::vector<std::uint32_t> sub(selected.size(), 0);
        std::vector<std::uint32_t> rest;
        rest.reserve(rest_vars->size());
        for (std::size_t i = 0; i < f.nvars(); ++i) {
            if (is_selected[i]) continue;
            rest.push_back(m.exponent(i));
        }
        for (std::size_t k = 0; k < selected.size(); ++k) sub[k] = m.exponent(selected[k]);
        Monomial key(std::move(sub));
        auto it = out.find(key);
        if (it == out.end()) it = out.emplace(key, Polynomial(f.ring(), rest_vars)).first;
        it->second.add_term(Monomial(std::move(rest)), c);
    }
    return out;
}

Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero()) throw division_error("exact polynomial division by zero");
    Polynomial rem = f;
    Polynomial quot(f.ring(), f.vars());
    const auto& [gm, gc] = g.leading_term(MonomialOrder::GradedReverseLex);
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading_term(MonomialOrder::GradedReverseLex);
        if (!gm.divides(rm)) throw division_error("polynomial division is not exact");
        Scalar c = rc.exact_div(gc);
        Monomial m = rm.divide_by(gm);
        quot.add_term(m, c);
        rem = rem - g.times_term(c, m);
    }
    return quot;
}

} // namespace keller
