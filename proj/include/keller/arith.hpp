#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "keller/errors.hpp"

namespace keller {

using Integer = mpz_class;
using Rational = mpq_class;

enum class RingKind { Integers, Rationals, PrimeField };

/// Descriptor of a coefficient ring: Z, Q, or F_p for a prime p.
class Ring {
public:
    static Ring integers() { return Ring(RingKind::Integers, 0); }
    static Ring rationals() { return Ring(RingKind::Rationals, 0); }
    static Ring prime_field(std::uint64_t p);

    RingKind kind() const { return kind_; }
    std::uint64_t modulus() const { return p_; }
    bool is_field() const { return kind_ != RingKind::Integers; }
    bool operator==(const Ring&) const = default;

    std::string to_string() const;

private:
    Ring(RingKind k, std::uint64_t p) : kind_(k), p_(p) {}
    RingKind kind_;
    std::uint64_t p_;
};

/// Deterministic trial division up to sqrt(n); desk-scale n only.
bool is_prime(std::uint64_t n);

/// An exact element of one of the three coefficient rings.
///
/// Integers and rationals are GMP-backed; prime-field residues live in a
/// machine word for p < 2^31 and fall back to GMP above that.
class Scalar {
public:
    Scalar() : Scalar(zero(Ring::integers())) {}

    static Scalar zero(const Ring& ring);
    static Scalar one(const Ring& ring);
    /// Canonical image of a machine integer in any ring.
    static Scalar of_int(long v, const Ring& ring);
    static Scalar integer(Integer v);
    static Scalar rational(Rational v);
    /// Residue class of v in F_p.
    static Scalar residue(const Integer& v, const Ring& field);

    const Ring& ring() const { return ring_; }
    bool is_zero() const;
    bool is_one() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;

    /// Field division; division_error on zero divisor or in Z.
    Scalar div(const Scalar& o) const;
    Scalar inv() const;
    /// Exact division in Z (also valid in the fields, where it is div).
    Scalar exact_div(const Scalar& o) const;

    /// Underlying value accessors; ring kind must match.
    const Rational& rational_value() const;
    Integer integer_value() const;
    std::uint64_t residue_value() const;

    std::string to_string() const;

private:
    explicit Scalar(Ring r) : ring_(r), r_(0) {}
    void check_same_ring(const Scalar& o) const;
    bool big_modulus() const;
    void normalize_residue();

    Ring ring_;
    Rational q_;      // Integers (den = 1), Rationals, and residues for big p
    std::uint64_t r_; // residue for small p
};

/// gcd of absolute values; 0 only for all-zero input. Errors on empty input.
Integer content(std::span<const Integer> values);

/// num * inv(den) mod p; throws denominator_vanishes_mod_p if p | den.
Scalar project_mod_p(const Rational& q, const Ring& field);

/// Canonical embedding/conversion between coefficient rings.
/// Z -> Q, Z -> F_p, Q -> F_p (may throw denominator_vanishes_mod_p),
/// Q -> Z (exact only), identity otherwise. Field -> smaller ring is rejected.
Scalar convert_scalar(const Scalar& v, const Ring& target);

} // namespace keller
