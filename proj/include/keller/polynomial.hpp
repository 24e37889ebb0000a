#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "keller/arith.hpp"
#include "keller/monomial.hpp"

namespace keller {

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
///
/// Terms are stored in ascending GradedReverseLex order; no zero coefficient
/// is ever kept. All operations are pure; values are safe to share.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Scalar, GrevlexLess>;

    Polynomial(Ring ring, VarsPtr vars) : ring_(ring), vars_(std::move(vars)) {}

    static Polynomial zero(const Ring& ring, const VarsPtr& vars) { return Polynomial(ring, vars); }
    static Polynomial constant(const Scalar& c, const VarsPtr& vars);
    static Polynomial variable(const Ring& ring, const VarsPtr& vars, std::size_t index);
    static Polynomial term(const Scalar& c, const Monomial& m, const VarsPtr& vars);

    const Ring& ring() const { return ring_; }
    const VarsPtr& vars() const { return vars_; }
    std::size_t nvars() const { return vars_->size(); }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    std::size_t term_count() const { return terms_.size(); }
    /// Total degree; -1 for the zero polynomial.
    long total_degree() const;
    /// Coefficient of m (zero scalar if absent).
    Scalar coefficient(const Monomial& m) const;
    /// Largest term in the given order; polynomial must be nonzero.
    const std::pair<const Monomial, Scalar>& leading_term(MonomialOrder order) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(const Scalar& c) const;
    Polynomial times_term(const Scalar& c, const Monomial& m) const;
    Polynomial pow(unsigned e) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial derivative(std::size_t var) const;
    Scalar evaluate(std::span<const Scalar> point) const;
    /// Ring homomorphism sending variable i to images[i]; images share a common
    /// ring/variable set, which may differ from this polynomial's (coefficients
    /// are converted canonically).
    Polynomial substitute(std::span<const Polynomial> images) const;

    void add_term(const Monomial& m, const Scalar& c);

private:
    void check_compatible(const Polynomial& o) const;

    Ring ring_;
    VarsPtr vars_;
    TermMap terms_;
};

/// f = (content / denominator_lcm) * primitive with primitive over Z, content 1.
struct IntegerNormalForm {
    Integer denominator_lcm;
    Integer content;
    Polynomial primitive;
};

/// Clears denominators and content of a nonzero polynomial over Q (or Z).
IntegerNormalForm integer_normalize(const Polynomial& f);

/// Coefficient-wise projection to F_p; throws denominator_vanishes_mod_p.
Polynomial reduce_mod_p(const Polynomial& f, const Ring& field);

/// Coefficient-wise canonical ring conversion (see convert_scalar).
Polynomial convert_ring(const Polynomial& f, const Ring& target);

/// Re-expresses f over `target` variables; var_map[i] is the target index of
/// this polynomial's variable i.
Polynomial reindex_variables(const Polynomial& f, const VarsPtr& target,
                             std::span<const std::size_t> var_map);

/// Splits f by the monomial in the selected variables: key = monomial over
/// sub_vars (the selected variables, in the given order), value = coefficient
/// polynomial over rest_vars (the remaining variables, in original order).
std::map<Monomial, Polynomial, GrevlexLess>
collect_coefficients(const Polynomial& f, std::span<const std::size_t> selected,
                     const VarsPtr& sub_vars, const VarsPtr& rest_vars);

/// Exact multivariate division: returns q with f = q*g, or throws
/// division_error if g does not divide f exactly.
Polynomial exact_divide(const Polynomial& f, const Polynomial& g);

} // namespace keller
