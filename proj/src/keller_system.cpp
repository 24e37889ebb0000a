#include "keller/keller_system.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "keller/parse.hpp"

namespace keller {

namespace {

std::vector<std::string> x_names(std::size_t n) {
    if (n == 1) return {"x"};
    if (n == 2) return {"x", "y"};
    if (n == 3) return {"x", "y", "z"};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    return names;
}

/// All exponent vectors of total degree k over n variables, grevlex descending.
std::vector<Monomial> monomials_of_degree(std::size_t n, std::uint32_t k) {
    std::vector<Monomial> out;
    std::vector<std::uint32_t> e(n, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::uint32_t left) -> void {
        if (pos + 1 == n) {
            e[pos] = left;
            out.push_back(Monomial(e));
            e[pos] = 0;
            return;
        }
        for (std::uint32_t v = left; v + 1 > 0; --v) {
            e[pos] = v;
            self(self, pos + 1, left - v);
            e[pos] = 0;
            if (v == 0) break;
        }
    };
    rec(rec, 0, k);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return compare(a, b, MonomialOrder::GradedReverseLex) > 0;
    });
    return out;
}

std::string canonical_coeff_name(std::size_t component, const Monomial& alpha) {
    std::string s = "c" + std::to_string(component + 1) + "_";
    for (std::size_t i = 0; i < alpha.nvars(); ++i) {
        if (alpha.exponent(i) > 9) throw error("coefficient naming supports exponents <= 9");
        s += std::to_string(alpha.exponent(i));
    }
    return s;
}

/// Paper aliases for the curated systems; empty when none are defined.
std::vector<std::string> alias_names(std::size_t n, std::size_t d,
                                     const std::vector<CoeffIndex>& index) {
    auto key = [](const Monomial& m) {
        return std::pair<std::uint32_t, std::uint32_t>(m.exponent(0), m.exponent(1));
    };
    if (n == 2 && d == 2) {
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::string> tab = {
            {{2, 0}, "1"}, {{1, 1}, "2"}, {{0, 2}, "3"}};
        std::vector<std::string> names;
        for (const auto& ci : index)
            names.push_back((ci.component == 0 ? "a" : "b") + tab.at(key(ci.alpha)));
        return names;
    }
    if (n == 2 && d == 3) {
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::string> tab = {
            {{2, 0}, "A"}, {{1, 1}, "C"}, {{0, 2}, "B"},
            {{3, 0}, "D"}, {{2, 1}, "F"}, {{1, 2}, "G"}, {{0, 3}, "E"}};
        std::vector<std::string> names;
        for (const auto& ci : index)
            names.push_back(tab.at(key(ci.alpha)) + (ci.component == 0 ? "" : "1"));
        return names;
    }
    return {};
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Sign-normalize an integer polynomial: positive leading coefficient.
Polynomial sign_normalize(const Polynomial& f) {
    if (f.is_zero()) return f;
    const auto& lc = f.leading_term(MonomialOrder::GradedReverseLex).second;
    if (lc.integer_value() < 0) return -f;
    return f;
}

} // namespace

KellerSystem KellerSystem::build(std::size_t n, std::size_t d) {
    if (n < 1) throw error("universal map needs n >= 1");
    if (d < 2) throw error("universal map needs d >= 2");
    KellerSystem sys;
    sys.n_ = n;
    sys.d_ = d;

    std::vector<std::string> xs = x_names(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t k = 2; k <= d; ++k)
            for (const auto& alpha : monomials_of_degree(n, k))
                sys.index_.push_back(CoeffIndex{i, alpha});

    std::vector<std::string> cnames;
    cnames.reserve(sys.index_.size());
    for (const auto& ci : sys.index_) cnames.push_back(canonical_coeff_name(ci.component, ci.alpha));
    sys.coeff_vars_ = make_vars(cnames);
    std::vector<std::string> full = cnames;
    full.insert(full.end(), xs.begin(), xs.end());
    sys.full_vars_ = make_vars(full);
    sys.x_vars_ = make_vars(xs);
    sys.display_ = alias_names(n, d, sys.index_);
    if (sys.display_.empty()) sys.display_ = cnames;

    const Ring Q = Ring::rationals();
    const std::size_t nc = sys.index_.size();
    std::vector<Polynomial> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        comps.push_back(Polynomial::variable(Q, sys.full_vars_, nc + i));
    for (std::size_t k = 0; k < nc; ++k) {
        const auto& ci = sys.index_[k];
        std::vector<std::uint32_t> e(nc + n, 0);
        e[k] = 1;
        for (std::size_t j = 0; j < n; ++j) e[nc + j] = ci.alpha.exponent(j);
        comps[ci.component].add_term(Monomial(std::move(e)), Scalar::one(Q));
    }
    sys.universal_.emplace(std::move(comps));

    Polynomial det = determinant(jacobian(*sys.universal_));
    Polynomial dm1 = det - Polynomial::constant(Scalar::one(Q), sys.full_vars_);
    std::vector<std::size_t> sel(n);
    for (std::size_t j = 0; j < n; ++j) sel[j] = nc + j;
    auto by_x = collect_coefficients(dm1, sel, sys.x_vars_, sys.coeff_vars_);
    for (auto& [alpha, poly] : by_x)
        if (!poly.is_zero()) sys.e_gens_.emplace_back(alpha, poly);
    std::sort(sys.e_gens_.begin(), sys.e_gens_.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return compare(a.first, b.first, MonomialOrder::GradedReverseLex) > 0;
    });
    return sys;
}

const Ideal& KellerSystem::ideal() const {
    if (!ideal_) {
        std::vector<Polynomial> gens;
        gens.reserve(e_gens_.size());
        for (const auto& [m, p] : e_gens_) gens.push_back(p);
        ideal_.emplace(std::move(gens));
    }
    return *ideal_;
}

void KellerSystem::run_integer_candidate_search() {
    integer_gens_.clear();
    nd_lcm_ = 1;
    std::set<std::string> seen;
    auto push = [&](Polynomial prim, const Integer& den, const std::string& note,
                    CertKind kind) -> bool {
        prim = sign_normalize(prim);
        std::string key = format_polynomial(prim);
        if (!seen.insert(key).second) return false;
        mpz_lcm(nd_lcm_.get_mpz_t(), nd_lcm_.get_mpz_t(), den.get_mpz_t());
        integer_gens_.push_back(GeneratorCertificate{std::move(prim), kind, den, false, note});
        return true;
    };

    for (const auto& [alpha, e] : e_gens_) {
        IntegerNormalForm nf = integer_normalize(e);
        push(nf.primitive, nf.content, "primitive of E_" + format_monomial(alpha, *x_vars_),
             CertKind::InIdeal);
    }

    // bounded combination search: u*L1 + v*L2 + w*g with u, v of degree <= 1,
    // L1, L2 among the linear generators, w in {0, +-1}, g already certified
    const Ring Z = Ring::integers();
    std::vector<Polynomial> lin;
    for (const auto& cert : integer_gens_)
        if (cert.g.total_degree() == 1) lin.push_back(cert.g);

    std::vector<Polynomial> mults;
    mults.push_back(Polynomial::constant(Scalar::one(Z), coeff_vars_));
    for (std::size_t i = 0; i < coeff_vars_->size(); ++i)
        mults.push_back(Polynomial::variable(Z, coeff_vars_, i));

    for (int round = 0; round < 3; ++round) {
        bool found = false;
        std::vector<Polynomial> pool;
        for (const auto& cert : integer_gens_) pool.push_back(cert.g);
        for (std::size_t i = 0; i < lin.size(); ++i) {
            for (std::size_t j = i + 1; j < lin.size(); ++j) {
                for (std::size_t ui = 0; ui < mults.size(); ++ui) {
                    for (int us = -1; us <= 1; us += 2) {
                        for (std::size_t vi = 0; vi < mults.size(); ++vi) {
                            for (int vs = -1; vs <= 1; vs += 2) {
                                Polynomial base = lin[i] * mults[ui];
                                if (us < 0) base = -base;
                                Polynomial second = lin[j] * mults[vi];
                                base = vs < 0 ? base - second : base + second;
                                for (std::size_t k = 0; k <= pool.size(); ++k) {
                                    Polynomial cand = base;
                                    if (k < pool.size()) cand = cand - pool[k];
                                    if (cand.is_zero()) continue;
                                    IntegerNormalForm nf = integer_normalize(cand);
                                    if (nf.content < 2) continue;
                                    found |= push(nf.primitive, nf.content, "combination search",
                                                  CertKind::InIdeal);
                                }
                            }
                        }
                    }
                }
            }
        }
        if (!found) break;
    }
}

namespace {

/// Parse a polynomial written with display names into the coefficient ring.
Polynomial parse_display(const KellerSystem& sys, const std::string& text, const Ring& ring) {
    VarsPtr disp = make_vars(sys.display_names());
    Polynomial f = parse_polynomial(text, disp, ring);
    std::vector<std::size_t> where(disp->size());
    for (std::size_t i = 0; i < where.size(); ++i) where[i] = i;
    return reindex_variables(f, sys.coeff_vars(), where);
}

} // namespace

void KellerSystem::add_builtin_radical_generators(const GroebnerOptions& opts) {
    if (integer_gens_.empty()) run_integer_candidate_search();
    const Ring Z = Ring::integers();
    std::set<std::string> seen;
    for (const auto& cert : integer_gens_) seen.insert(format_polynomial(cert.g));

    auto add = [&](const std::string& text, CertKind kind, bool not_in_ideal,
                   const std::string& note) {
        Polynomial g = sign_normalize(parse_display(*this, text, Z));
        if (!seen.insert(format_polynomial(g)).second) return;
        integer_gens_.push_back(GeneratorCertificate{std::move(g), kind, Integer(1), not_in_ideal, note});
    };

    if (n_ == 2 && d_ == 2) {
        // derived quadratic generators; all are found by the combination
        // search, listed here to pin the curated set
        add("a1^2 - b1*b3", CertKind::InIdeal, false, "derived");
        add("b3^2 - a1*a3", CertKind::InIdeal, false, "derived");
        add("a1*b3 - a3*b1", CertKind::InIdeal, false, "derived");
        return;
    }
    if (n_ == 2 && d_ == 3) {
        // two-term members: the quartic primitives lie in I_Q^3 itself, the
        // remaining listed products only in its radical
        const char* in_ideal[] = {"D*G1 - G*D1", "F*E1 - E*F1", "D*F1 - D1*F", "G*E1 - E*G1"};
        const char* in_radical[] = {
            "F1 + 3*D", "A*C1 - A1*C", "G1 + F", "A*B1 - A1*B", "3*E1 + G", "C*B1 - B*C1",
            "A*E1 - A1*E", "B1*F - B*F1", "C*G1 - C1*G", "D*B1 - D1*B", "A*G1 - A1*G",
            "F*C1 - F1*C", "D*E1 - D1*E", "F*G1 - F1*G", "F*A1 - F1*A", "D*C1 - D1*C",
            "C*E1 - C1*E", "B1*G - B*G1"};
        for (auto s : in_ideal) add(s, CertKind::InIdeal, false, "two-term member");
        for (auto s : in_radical) add(s, CertKind::InRadical, false, "two-term radical member");
        add("A^3*E1^2 - B^3*D1^2", CertKind::InRadical, true, "radical-only member");
        add("A^3*E^2 - B^3*D^2", CertKind::InRadical, true, "radical-only member");
        (void)opts;
        return;
    }
    throw error("no curated generators for n=" + std::to_string(n_) + ", d=" + std::to_string(d_));
}

std::vector<Scalar> KellerSystem::coefficient_vector(const PolyMap& F) const {
    if (F.n() != n_) throw error("coefficient_vector: dimension mismatch");
    if (F.params() != 0) throw error("coefficient_vector: map has parameters");
    if (degree(F) > static_cast<long>(d_)) throw error("coefficient_vector: degree exceeds d");
    if (!has_identity_affine_part(F))
        throw error("coefficient_vector: map must have identity affine part");
    std::vector<Scalar> v;
    v.reserve(index_.size());
    for (const auto& ci : index_) v.push_back(F.component(ci.component).coefficient(ci.alpha));
    return v;
}

PolyMap KellerSystem::map_from_coefficients(std::span<const Scalar> v, const Ring& ring) const {
    if (v.size() != index_.size()) throw error("map_from_coefficients: wrong vector length");
    std::vector<Polynomial> comps;
    for (std::size_t i = 0; i < n_; ++i)
        comps.push_back(Polynomial::variable(ring, x_vars_, i));
    for (std::size_t k = 0; k < index_.size(); ++k) {
        if (v[k].ring() != ring) throw ring_mismatch_error("map_from_coefficients: ring mismatch");
        comps[index_[k].component].add_term(index_[k].alpha, v[k]);
    }
    return PolyMap(std::move(comps));
}

std::string KellerSystem::generator_set_hash() const {
    std::string blob;
    for (const auto& cert : integer_gens_) {
        blob += format_polynomial(cert.g);
        blob += cert.kind == CertKind::InIdeal ? "|I;" : (cert.kind == CertKind::InRadical ? "|R;" : "|P;");
    }
    std::uint64_t h = fnv1a(blob);
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

bool verify_certificate(const KellerSystem& sys, const GeneratorCertificate& cert,
                        const GroebnerOptions& opts) {
    const Ring Q = Ring::rationals();
    Polynomial g = convert_ring(cert.g, Q);
    switch (cert.kind) {
        case CertKind::InIdeal:
            return sys.ideal().contains(g, MonomialOrder::GradedReverseLex, opts);
        case CertKind::InRadical: {
            bool rad = sys.ideal().radical_contains(g, opts);
            if (!rad) return false;
            if (cert.asserted_not_in_ideal &&
                sys.ideal().contains(g, MonomialOrder::GradedReverseLex, opts))
                return false;
            return true;
        }
        case CertKind::PaperAsserted:
            return true;
    }
    return false;
}

std::vector<Scalar> embed_coefficient_vector(const KellerSystem& from, const KellerSystem& to,
                                             std::span<const Scalar> v) {
    if (from.n() != to.n()) throw error("embed: dimension mismatch");
    if (from.d() > to.d()) throw error("embed: target degree smaller than source");
    if (v.size() != from.coeff_dimension()) throw error("embed: wrong vector length");
    std::map<std::pair<std::size_t, std::vector<std::uint32_t>>, Scalar> table;
    for (std::size_t k = 0; k < v.size(); ++k)
        table.emplace(std::make_pair(from.coeff_index()[k].component,
                                     from.coeff_index()[k].alpha.exponents()),
                      v[k]);
    std::vector<Scalar> out;
    const Ring ring = v.empty() ? Ring::rationals() : v[0].ring();
    for (const auto& ci : to.coeff_index()) {
        auto it = table.find(std::make_pair(ci.component, ci.alpha.exponents()));
        out.push_back(it == table.end() ? Scalar::zero(ring) : it->second);
    }
    return out;
}

} // namespace keller
