#include "keller/arith.hpp"

#include <limits>

namespace keller {

namespace {
constexpr std::uint64_t kSmallModulusLimit = std::uint64_t(1) << 31;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    // a, b < p < 2^31, so the product fits in 64 bits
    return (a * b) % p;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    while (e) {
        if (e & 1) acc = mul_mod(acc, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return acc;
}
} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Ring Ring::prime_field(std::uint64_t p) {
    if (!is_prime(p)) throw error("prime_field: modulus " + std::to_string(p) + " is not prime");
    return Ring(RingKind::PrimeField, p);
}

std::string Ring::to_string() const {
    switch (kind_) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::PrimeField: return "F" + std::to_string(p_);
    }
    return "?";
}

bool Scalar::big_modulus() const { return ring_.modulus() >= kSmallModulusLimit; }

Scalar Scalar::zero(const Ring& ring) { return Scalar(ring); }

Scalar Scalar::one(const Ring& ring) { return of_int(1, ring); }

Scalar Scalar::of_int(long v, const Ring& ring) {
    Scalar s(ring);
    if (ring.kind() == RingKind::PrimeField) {
        return residue(Integer(v), ring);
    }
    s.q_ = Rational(v);
    return s;
}

Scalar Scalar::integer(Integer v) {
    Scalar s(Ring::integers());
    s.q_ = Rational(std::move(v));
    return s;
}

Scalar Scalar::rational(Rational v) {
    Scalar s(Ring::rationals());
    v.canonicalize();
    s.q_ = std::move(v);
    return s;
}

Scalar Scalar::residue(const Integer& v, const Ring& field) {
    if (field.kind() != RingKind::PrimeField)
        throw error("residue: not a prime field");
    Scalar s(field);
    Integer p(static_cast<unsigned long>(field.modulus()));
    Integer r = v % p;
    if (r < 0) r += p;
    if (s.big_modulus())
        s.q_ = Rational(r);
    else
        s.r_ = r.get_ui();
    return s;
}

void Scalar::check_same_ring(const Scalar& o) const {
    if (ring_ != o.ring_)
        throw ring_mismatch_error("scalar ring mismatch: " + ring_.to_string() + " vs " + o.ring_.to_string());
}

bool Scalar::is_zero() const {
    if (ring_.kind() == RingKind::PrimeField && !big_modulus()) return r_ == 0;
    return q_ == 0;
}

bool Scalar::is_one() const {
    if (ring_.kind() == RingKind::PrimeField && !big_modulus()) return r_ == 1 % ring_.modulus();
    return q_ == 1;
}

bool Scalar::operator==(const Scalar& o) const {
    if (ring_ != o.ring_) return false;
    if (ring_.kind() == RingKind::PrimeField && !big_modulus()) return r_ == o.r_;
    return q_ == o.q_;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_ring(o);
    Scalar s(ring_);
    if (ring_.kind() == RingKind::PrimeField) {
        if (!big_modulus()) {
            s.r_ = (r_ + o.r_) % ring_.modulus();
        } else {
            s.q_ = q_ + o.q_;
            s.normalize_residue();
        }
        return s;
    }
    s.q_ = q_ + o.q_;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar s(ring_);
    if (ring_.kind() == RingKind::PrimeField) {
        if (!big_modulus()) {
            s.r_ = r_ == 0 ? 0 : ring_.modulus() - r_;
        } else {
            s.q_ = -q_;
            s.normalize_residue();
        }
        return s;
    }
    s.q_ = -q_;
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_ring(o);
    Scalar s(ring_);
    if (ring_.kind() == RingKind::PrimeField) {
        if (!big_modulus()) {
            s.r_ = mul_mod(r_, o.r_, ring_.modulus());
        } else {
            s.q_ = q_ * o.q_;
            s.normalize_residue();
        }
        return s;
    }
    s.q_ = q_ * o.q_;
    return s;
}

void Scalar::normalize_residue() {
    Integer p(static_cast<unsigned long>(ring_.modulus()));
    Integer r = q_.get_num() % p;
    if (r < 0) r += p;
    q_ = Rational(r);
}

Scalar Scalar::inv() const {
    if (is_zero()) throw division_error("inverse of zero");
    Scalar s(ring_);
    switch (ring_.kind()) {
        case RingKind::Integers:
            if (q_ == 1 || q_ == -1) { s.q_ = q_; return s; }
            throw division_error("non-unit integer has no inverse");
        case RingKind::Rationals:
            s.q_ = 1 / q_;
            return s;
        case RingKind::PrimeField:
            if (!big_modulus()) {
                s.r_ = pow_mod(r_, ring_.modulus() - 2, ring_.modulus());
            } else {
                Integer p(static_cast<unsigned long>(ring_.modulus()));
                Integer r;
                if (mpz_invert(r.get_mpz_t(), q_.get_num().get_mpz_t(), p.get_mpz_t()) == 0)
                    throw division_error("no inverse mod p");
                s.q_ = Rational(r);
            }
            return s;
    }
    throw error("unreachable");
}

Scalar Scalar::div(const Scalar& o) const {
    check_same_ring(o);
    if (!ring_.is_field()) throw division_error("div is a field operation; use exact_div over Z");
    return *this * o.inv();
}

Scalar Scalar::exact_div(const Scalar& o) const {
    check_same_ring(o);
    if (ring_.is_field()) return div(o);
    if (o.is_zero()) throw division_error("exact division by zero");
    Integer a = q_.get_num(), b = o.q_.get_num();
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
        throw division_error("non-exact integer division");
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return Scalar::integer(q);
}

const Rational& Scalar::rational_value() const {
    if (ring_.kind() == RingKind::PrimeField)
        throw error("rational_value on prime-field element");
    return q_;
}

Integer Scalar::integer_value() const {
    switch (ring_.kind()) {
        case RingKind::Integers: return q_.get_num();
        case RingKind::Rationals:
            if (q_.get_den() != 1) throw error("rational is not an integer");
            return q_.get_num();
        case RingKind::PrimeField:
            return big_modulus() ? q_.get_num() : Integer(static_cast<unsigned long>(r_));
    }
    throw error("unreachable");
}

std::uint64_t Scalar::residue_value() const {
    if (ring_.kind() != RingKind::PrimeField) throw error("residue_value on non prime-field element");
    return big_modulus() ? static_cast<std::uint64_t>(q_.get_num().get_ui()) : r_;
}

std::string Scalar::to_string() const {
    if (ring_.kind() == RingKind::PrimeField) return integer_value().get_str();
    return q_.get_str();
}

Integer content(std::span<const Integer> values) {
    if (values.empty()) throw error("content of empty list");
    Integer g = 0;
    for (const Integer& v : values) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Scalar project_mod_p(const Rational& q, const Ring& field) {
    if (field.kind() != RingKind::PrimeField) throw error("project_mod_p: target is not a prime field");
    Integer p(static_cast<unsigned long>(field.modulus()));
    if (mpz_divisible_p(q.get_den().get_mpz_t(), p.get_mpz_t()))
        throw denominator_vanishes_mod_p("denominator of " + q.get_str() + " vanishes mod " +
                                         std::to_string(field.modulus()));
    Scalar num = Scalar::residue(q.get_num(), field);
    Scalar den = Scalar::residue(q.get_den(), field);
    return num * den.inv();
}

Scalar convert_scalar(const Scalar& v, const Ring& target) {
    if (v.ring() == target) return v;
    switch (v.ring().kind()) {
        case RingKind::Integers:
            if (target.kind() == RingKind::Rationals) return Scalar::rational(v.rational_value());
            if (target.kind() == RingKind::PrimeField) return Scalar::residue(v.integer_value(), target);
            break;
        case RingKind::Rationals:
            if (target.kind() == RingKind::Integers) {
                if (v.rational_value().get_den() != 1)
                    throw error("cannot convert non-integer rational to Z");
                return Scalar::integer(v.integer_value());
            }
            if (target.kind() == RingKind::PrimeField) return project_mod_p(v.rational_value(), target);
            break;
        case RingKind::PrimeField:
            break;
    }
    throw ring_mismatch_error("no canonical conversion " + v.ring().to_string() + " -> " + target.to_string());
}

} // namespace keller
