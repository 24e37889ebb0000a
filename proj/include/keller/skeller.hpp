#pragma once

#include "keller/keller_system.hpp"

namespace keller {

/// Outcome of the strong-Keller check against a certified generator set.
///
/// Fails carries a witness generator with its nonzero value mod p.
/// PassesKnownGenerators means every certified generator vanished at v(F);
/// for small p this cannot exclude further integer Keller equations.
/// Certified is the large-p regime: p exceeds the recorded denominator lcm
/// and the evaluated set contains every E_alpha, so the generators cut the
/// full degree-d ideal up to radical.
struct Verdict {
    enum class Outcome { Fails, PassesKnownGenerators, Certified };
    Outcome outcome = Outcome::PassesKnownGenerators;
    std::optional<Polynomial> witness; // integer generator over Z
    std::optional<Scalar> value;       // witness value in F_p
    std::size_t generators_used = 0;
    std::uint64_t p = 0;
    std::size_t n = 0, d = 0;
    std::string generator_set_hash;

    bool passed() const { return outcome != Outcome::Fails; }
};

/// det Jac(F) == 1 exactly in the coefficient ring.
bool keller_check(const PolyMap& F);

/// Evaluates every certified integer generator mod p at v(F). Maps with an
/// invertible non-identity affine part A are normalized to A^{-1} o F first.
Verdict strong_keller_check(const PolyMap& F, const KellerSystem& sys,
                            std::span<const GeneratorCertificate> certs);

/// Searches for F over Z with coefficients in [-C, C], F mod p = f and
/// det Jac(F) = 1 (all E_alpha vanishing). Coefficients are enumerated
/// smallest magnitude first with incremental det-Jac pruning. Returns
/// nullopt when the search space is exhausted (NOT a nonexistence proof);
/// throws budget_exceeded when the node budget runs out first.
std::optional<PolyMap> bounded_lift(const PolyMap& f, const Integer& C, const KellerSystem& sys,
                                    std::uint64_t node_budget = 4000000);

} // namespace keller
