#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "keller/polynomial.hpp"

namespace keller {

struct GroebnerProgress {
    std::size_t pairs_done = 0;
    std::size_t pairs_pending = 0;
    std::size_t basis_size = 0;
};

struct GroebnerOptions {
    bool use_cache = true;
    /// Overrides KELLER_CACHE_DIR / the default ./.keller-cache location.
    std::optional<std::filesystem::path> cache_dir;
    std::function<void(const GroebnerProgress&)> progress;
};

/// Reduced Groebner basis of the given generators (field coefficients).
/// Deterministic: normal selection strategy, Gebauer-Moeller pair update,
/// output sorted by leading monomial, monic.
std::vector<Polynomial> groebner_basis(std::span<const Polynomial> gens, MonomialOrder order,
                                       const GroebnerOptions& opts = {});

/// Remainder of multivariate division by a Groebner basis: zero iff f lies in
/// the ideal; idempotent; exact field arithmetic.
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis,
                       MonomialOrder order);

/// Generator list with cached reduced bases per monomial order.
class Ideal {
public:
    explicit Ideal(std::vector<Polynomial> generators);

    const std::vector<Polynomial>& generators() const { return gens_; }
    const std::vector<Polynomial>& groebner(MonomialOrder order = MonomialOrder::GradedReverseLex,
                                            const GroebnerOptions& opts = {}) const;
    Polynomial reduce(const Polynomial& f,
                      MonomialOrder order = MonomialOrder::GradedReverseLex,
                      const GroebnerOptions& opts = {}) const;
    /// Membership: normal_form(f) == 0.
    bool contains(const Polynomial& f,
                  MonomialOrder order = MonomialOrder::GradedReverseLex,
                  const GroebnerOptions& opts = {}) const;
    /// Radical membership via the Rabinowitsch trick: f in rad(I) iff
    /// 1 in I + (1 - t*f) in the ring extended by a fresh variable t.
    bool radical_contains(const Polynomial& f, const GroebnerOptions& opts = {}) const;

private:
    std::vector<Polynomial> gens_;
    mutable std::map<MonomialOrder, std::vector<Polynomial>> cache_;
};

/// Content of the cache key used for basis files (exposed for tests).
std::string groebner_cache_key(std::span<const Polynomial> gens, MonomialOrder order);
std::filesystem::path groebner_cache_dir(const GroebnerOptions& opts);

} // namespace keller
