#pragma once

#include <optional>
#include <variant>

#include "keller/polynomial.hpp"
#include "keller/rng.hpp"

namespace keller {

/// Polynomial endomorphism in n variables. The map variables are the LAST n
/// variables of the ring's variable set; any preceding variables act as
/// scalar parameters (used by the universal coefficient maps).
class PolyMap {
public:
    explicit PolyMap(std::vector<Polynomial> components);

    static PolyMap identity(const Ring& ring, const VarsPtr& vars);

    std::size_t n() const { return comps_.size(); }
    std::size_t params() const { return vars()->size() - n(); }
    const Ring& ring() const { return comps_[0].ring(); }
    const VarsPtr& vars() const { return comps_[0].vars(); }
    const Polynomial& component(std::size_t i) const { return comps_[i]; }
    const std::vector<Polynomial>& components() const { return comps_; }
    /// Index (into the variable set) of map variable j.
    std::size_t xvar(std::size_t j) const { return params() + j; }

    bool operator==(const PolyMap& o) const { return comps_ == o.comps_; }
    bool operator!=(const PolyMap& o) const { return !(*this == o); }

    /// Point evaluation; requires a parameter-free map.
    std::vector<Scalar> apply(std::span<const Scalar> point) const;

private:
    std::vector<Polynomial> comps_;
};

/// Degree in the map variables only (parameters do not count).
long map_degree(const Polynomial& f, std::size_t n_map_vars);
long degree(const PolyMap& F);

class PolyMatrix {
public:
    PolyMatrix(std::size_t n, const Ring& ring, const VarsPtr& vars);
    std::size_t size() const { return rows_.size(); }
    Polynomial& at(std::size_t i, std::size_t j) { return rows_[i][j]; }
    const Polynomial& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }

private:
    std::vector<std::vector<Polynomial>> rows_;
};

/// Entry (i,j) = d F_i / d x_j (map variables).
PolyMatrix jacobian(const PolyMap& F);

/// Cofactor expansion for n <= 4, fraction-free Bareiss elimination above.
Polynomial determinant(const PolyMatrix& M);

/// (F o G)_i = F_i(G); parameters are left fixed.
PolyMap compose(const PolyMap& F, const PolyMap& G);

/// Terms of map-degree <= 1.
PolyMap affine_part(const PolyMap& F);
bool has_identity_affine_part(const PolyMap& F);

/// Reduction mod p of an integer (or p-regular rational) map.
PolyMap reduce_map_mod_p(const PolyMap& F, const Ring& field);
PolyMap convert_map(const PolyMap& F, const Ring& target);

/// Inverse with deg <= degree_bound, if one exists: solved degree by degree
/// by undetermined coefficients after normalizing the affine part, then
/// verified by exact composition both ways. Field coefficients only.
/// Throws division_error if the affine part is not invertible.
std::optional<PolyMap> formal_inverse(const PolyMap& F, long degree_bound);

/// formal_inverse with the classical automorphism bound deg(F)^(n-1).
std::optional<PolyMap> is_invertible(const PolyMap& F);

struct AffineFactor {
    std::vector<std::vector<Scalar>> matrix; // determinant 1
    std::vector<Scalar> translation;
};
struct TriangularFactor {
    std::size_t index;  // x_index += shift(x_{index+1}, ..., x_n)
    Polynomial shift;
};
struct TameRecipe {
    std::vector<std::variant<AffineFactor, TriangularFactor>> factors;
};

/// Composition of the recipe's factors, left to right: factors[0] applied last.
PolyMap apply_recipe(const TameRecipe& recipe, const Ring& ring, const VarsPtr& vars);
/// Recipe of the exact inverse (factors reversed and individually inverted).
TameRecipe reverse_recipe(const TameRecipe& recipe);

/// Random element of STA_n(Z): SL-affine and elementary triangular factors,
/// coefficients in [-3, 3], composed degree <= degree_budget. det Jac = 1.
std::pair<PolyMap, TameRecipe> sample_tame(std::size_t n, long degree_budget,
                                           std::size_t factor_count, Rng& rng);

/// Brute-force injectivity of a map over F_p on all p^n points.
/// Throws budget_exceeded if p^n > cap.
bool is_injective_on_points(const PolyMap& F, std::uint64_t cap = 1000000);

} // namespace keller
