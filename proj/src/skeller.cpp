#include "keller/skeller.hpp"

#include <algorithm>
#include <set>

#include "keller/parse.hpp"

namespace keller {

bool keller_check(const PolyMap& F) {
    Polynomial det = determinant(jacobian(F));
    return det == Polynomial::constant(Scalar::one(F.ring()), F.vars());
}

Verdict strong_keller_check(const PolyMap& F, const KellerSystem& sys,
                            std::span<const GeneratorCertificate> certs) {
    if (F.ring().kind() != RingKind::PrimeField)
        throw error("strong_keller_check: map must be over a prime field");
    PolyMap G = F;
    if (!has_identity_affine_part(G)) {
        auto Ainv = formal_inverse(affine_part(G), 1);
        if (!Ainv) throw division_error("affine part is not invertible");
        G = compose(*Ainv, G);
    }
    std::vector<Scalar> v = sys.coefficient_vector(G);

    Verdict verdict;
    verdict.p = F.ring().modulus();
    verdict.n = sys.n();
    verdict.d = sys.d();
    verdict.generators_used = certs.size();
    verdict.generator_set_hash = sys.generator_set_hash();

    for (const auto& cert : certs) {
        Polynomial gp = reduce_mod_p(cert.g, F.ring());
        Scalar val = gp.evaluate(v);
        if (!val.is_zero()) {
            verdict.outcome = Verdict::Outcome::Fails;
            verdict.witness = cert.g;
            verdict.value = val;
            return verdict;
        }
    }

    verdict.outcome = Verdict::Outcome::PassesKnownGenerators;
    Integer p(static_cast<unsigned long>(F.ring().modulus()));
    if (p > sys.nd_lcm_lower_bound()) {
        // Certified needs every E_alpha present in the evaluated set
        std::set<std::string> have;
        for (const auto& cert : certs) have.insert(format_polynomial(cert.g));
        bool full = true;
        for (const auto& [alpha, e] : sys.generators()) {
            IntegerNormalForm nf = integer_normalize(e);
            Polynomial prim = nf.primitive;
            const auto& lc = prim.leading_term(MonomialOrder::GradedReverseLex).second;
            if (lc.integer_value() < 0) prim = -prim;
            if (!have.count(format_polynomial(prim))) {
                full = false;
                break;
            }
        }
        if (full) verdict.outcome = Verdict::Outcome::Certified;
    }
    return verdict;
}

std::optional<PolyMap> bounded_lift(const PolyMap& f, const Integer& C, const KellerSystem& sys,
                                    std::uint64_t node_budget) {
    if (f.ring().kind() != RingKind::PrimeField)
        throw error("bounded_lift: map must be over a prime field");
    if (C < 0) throw error("bounded_lift: bound must be >= 0");
    if (!has_identity_affine_part(f))
        throw error("bounded_lift: map must have identity affine part");
    const Integer p(static_cast<unsigned long>(f.ring().modulus()));
    std::vector<Scalar> v = sys.coefficient_vector(f);
    const std::size_t nc = v.size();

    // candidate lifts per coefficient, smallest magnitude first
    std::vector<std::vector<Integer>> candidates(nc);
    for (std::size_t k = 0; k < nc; ++k) {
        Integer r(static_cast<unsigned long>(v[k].residue_value()));
        for (Integer x = r - ((r + C) / p) * p; x <= C; x += p)
            if (x >= -C) candidates[k].push_back(x);
        std::sort(candidates[k].begin(), candidates[k].end(), [](const Integer& a, const Integer& b) {
            Integer aa = abs(a), ab = abs(b);
            if (aa != ab) return aa < ab;
            return a > b;
        });
        if (candidates[k].empty()) return std::nullopt;
    }

    // generators become checkable once their highest coefficient variable is set
    const Ring Z = Ring::integers();
    std::vector<std::vector<Polynomial>> checks(nc);
    for (const auto& [alpha, e] : sys.generators()) {
        Polynomial g = convert_ring(integer_normalize(e).primitive, Z);
        std::size_t maxvar = 0;
        for (const auto& [m, c] : g.terms())
            for (std::size_t i = 0; i < nc; ++i)
                if (m.exponent(i) > 0) maxvar = std::max(maxvar, i);
        checks[maxvar].push_back(std::move(g));
    }

    std::vector<Scalar> point(nc, Scalar::zero(Z));
    std::uint64_t nodes = 0;
    auto dfs = [&](auto&& self, std::size_t k) -> bool {
        if (k == nc) return true;
        for (const Integer& cand : candidates[k]) {
            if (++nodes > node_budget) throw budget_exceeded("bounded_lift: node budget exceeded");
            point[k] = Scalar::integer(cand);
            bool ok = true;
            for (const auto& g : checks[k])
                if (!g.evaluate(point).is_zero()) {
                    ok = false;
                    break;
                }
            if (ok && self(self, k + 1)) return true;
        }
        point[k] = Scalar::zero(Z);
        return false;
    };
    if (!dfs(dfs, 0)) return std::nullopt;

    PolyMap lift = sys.map_from_coefficients(point, Z);
    if (!keller_check(lift)) throw error("bounded_lift: internal pruning error");
    return lift;
}

} // namespace keller
