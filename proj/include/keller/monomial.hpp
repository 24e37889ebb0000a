#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "keller/errors.hpp"

namespace keller {

/// Ordered set of distinct variable names; fixed for the lifetime of a ring.
class VariableSet {
public:
    explicit VariableSet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;
    bool operator==(const VariableSet& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
};

using VarsPtr = std::shared_ptr<const VariableSet>;

inline VarsPtr make_vars(std::vector<std::string> names) {
    return std::make_shared<VariableSet>(std::move(names));
}

/// x1^e1 ... xn^en as a dense exponent vector with cached total degree.
class Monomial {
public:
    explicit Monomial(std::size_t nvars) : e_(nvars, 0), deg_(0) {}
    explicit Monomial(std::vector<std::uint32_t> exps);

    std::size_t nvars() const { return e_.size(); }
    std::uint32_t degree() const { return deg_; }
    std::uint32_t exponent(std::size_t i) const { return e_[i]; }
    const std::vector<std::uint32_t>& exponents() const { return e_; }
    bool is_constant() const { return deg_ == 0; }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    /// Exact quotient; caller must ensure o divides *this.
    Monomial divide_by(const Monomial& o) const;
    static Monomial lcm(const Monomial& a, const Monomial& b);
    static Monomial gcd(const Monomial& a, const Monomial& b);
    bool coprime_with(const Monomial& o) const;

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

private:
    std::vector<std::uint32_t> e_;
    std::uint32_t deg_;
};

enum class MonomialOrder { GradedReverseLex, GradedLex, Lex };

std::string order_name(MonomialOrder o);
std::optional<MonomialOrder> order_from_name(std::string_view name);

/// Three-way comparison under the given admissible order: <0, 0, >0.
int compare(const Monomial& a, const Monomial& b, MonomialOrder order);

/// Strict-weak-order functor; GradedReverseLex is the storage order everywhere.
struct MonoLess {
    MonomialOrder order = MonomialOrder::GradedReverseLex;
    bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b, order) < 0; }
};

struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return compare(a, b, MonomialOrder::GradedReverseLex) < 0;
    }
};

} // namespace keller
