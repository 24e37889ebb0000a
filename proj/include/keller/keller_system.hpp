#pragma once

#include "keller/groebner.hpp"
#include "keller/polymap.hpp"

namespace keller {

/// Position of one universal coefficient: component i (0-based), exponent
/// vector alpha over the map variables, 2 <= |alpha| <= d.
struct CoeffIndex {
    std::size_t component;
    Monomial alpha;
};

enum class CertKind { InIdeal, InRadical, PaperAsserted };

/// An integer polynomial in the coefficient variables together with how it
/// was certified. InIdeal re-verifies by normal form 0 against GB(I_Q^d);
/// InRadical by Rabinowitsch radical membership.
struct GeneratorCertificate {
    Polynomial g; // over Z, in the coefficient variables
    CertKind kind = CertKind::InIdeal;
    Integer denominator = 1; // content cleared when the generator was derived
    bool asserted_not_in_ideal = false;
    std::string note;
};

/// The universal degree-d system: F[d], its det-Jacobian coefficient
/// generators E_alpha, and the certified integer generators derived from them.
class KellerSystem {
public:
    static KellerSystem build(std::size_t n, std::size_t d);

    std::size_t n() const { return n_; }
    std::size_t d() const { return d_; }
    std::size_t coeff_dimension() const { return index_.size(); }
    const VarsPtr& coeff_vars() const { return coeff_vars_; }
    const VarsPtr& full_vars() const { return full_vars_; }
    const VarsPtr& x_vars() const { return x_vars_; }
    const std::vector<CoeffIndex>& coeff_index() const { return index_; }
    /// Paper-style aliases (a1..b3 / A..G1) when defined, else canonical names.
    const std::vector<std::string>& display_names() const { return display_; }
    const PolyMap& universal_map() const { return *universal_; }
    /// E_alpha keyed by x-monomial, ordered by degree then descending grevlex.
    const std::vector<std::pair<Monomial, Polynomial>>& generators() const { return e_gens_; }
    const std::vector<GeneratorCertificate>& integer_generators() const { return integer_gens_; }
    /// lcm of the denominators recorded by the certified integer generators;
    /// a lower bound for the clearing constant of I_Q^d over Z.
    const Integer& nd_lcm_lower_bound() const { return nd_lcm_; }

    /// I_Q^d as an ideal over Q in the coefficient variables.
    const Ideal& ideal() const;

    /// Content-normalized primitives of every E_alpha plus a bounded,
    /// deterministic combination search for further integer generators
    /// (multiplier degree <= 1, combination size <= 3). Sound, not complete.
    void run_integer_candidate_search();

    /// Adds the curated certificate-backed generators for (n,d) in
    /// {(2,2),(2,3)}; for (2,3) these include the radical-only members.
    /// Throws for unsupported (n,d). Requires run_integer_candidate_search.
    void add_builtin_radical_generators(const GroebnerOptions& opts = {});

    /// Coefficient vector v(F) in system order; F must have degree <= d and
    /// identity affine part.
    std::vector<Scalar> coefficient_vector(const PolyMap& F) const;

    /// Reads v back into a degree-<= d map with identity affine part.
    PolyMap map_from_coefficients(std::span<const Scalar> v, const Ring& ring) const;

    /// FNV hash of the certified generator set (verdict metadata).
    std::string generator_set_hash() const;

private:
    KellerSystem() = default;

    std::size_t n_ = 0, d_ = 0;
    VarsPtr coeff_vars_, full_vars_, x_vars_;
    std::vector<std::string> display_;
    std::vector<CoeffIndex> index_;
    std::optional<PolyMap> universal_;
    std::vector<std::pair<Monomial, Polynomial>> e_gens_;
    std::vector<GeneratorCertificate> integer_gens_;
    Integer nd_lcm_ = 1;
    mutable std::optional<Ideal> ideal_;
};

/// Re-checks one certificate against I_Q^d (normal form / Rabinowitsch /
/// the not-in-ideal assertion). PaperAsserted entries are not checkable.
bool verify_certificate(const KellerSystem& sys, const GeneratorCertificate& cert,
                        const GroebnerOptions& opts = {});

/// Embeds a coefficient vector of a degree-d' system into a degree-d >= d'
/// system over the same n (zeros elsewhere).
std::vector<Scalar> embed_coefficient_vector(const KellerSystem& from, const KellerSystem& to,
                                             std::span<const Scalar> v);

} // namespace keller
