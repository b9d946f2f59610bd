#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fanokit {

// Exact arithmetic substrate. Everything in this project is integer or
// rational; there is no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

std::string to_decimal(const Int& v);

// Canonical "p" or "p/q" rendering, denominator > 0, reduced.
std::string to_fraction_string(const Rat& v);

// Binomial coefficient with the zero-outside-range convention:
// binom(a, b) = 0 whenever a < 0 or a < b, binom(a, 0) = 1 for a >= 0.
// No analytic continuation for negative tops.
Int binom(const Int& a, const Int& b);
Int binom(long long a, long long b);

bool is_prime_u32(std::uint32_t n);

// Base field selector: characteristic 0 (rationals) or a prime p < 2^31.
struct FieldSpec {
    std::uint32_t characteristic = 0;

    FieldSpec() = default;
    explicit FieldSpec(std::uint32_t p) : characteristic(p) {
        if (p != 0) {
            if (p >= (1u << 31))
                throw std::invalid_argument("field characteristic must be < 2^31");
            if (!is_prime_u32(p))
                throw std::invalid_argument("field characteristic must be 0 or prime");
        }
    }

    bool is_rational() const { return characteristic == 0; }
    bool operator==(const FieldSpec& o) const { return characteristic == o.characteristic; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }
};

// The two concrete coefficient fields. Generic code is templated on the
// field object; elements carry no field pointer, all operations go through
// the field, so a prime field with runtime modulus stays a plain value type.
struct RationalField {
    using Elem = Rat;

    FieldSpec spec() const { return FieldSpec(0); }
    Elem zero() const { return Rat(0); }
    Elem one() const { return Rat(1); }
    Elem from_int(const Int& v) const { return Rat(v); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::domain_error("division by zero");
        return Rat(1) / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string str(const Elem& a) const { return to_fraction_string(a); }
};

struct PrimeField {
    std::uint32_t p;
    using Elem = std::uint32_t;  // canonical residue in [0, p)

    explicit PrimeField(std::uint32_t p_) : p(p_) {
        FieldSpec check(p_);  // validates primality and size
        if (p_ == 0) throw std::invalid_argument("prime field needs p > 0");
    }

    FieldSpec spec() const { return FieldSpec(p); }
    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem from_int(const Int& v) const {
        Int r = v % p;
        if (r < 0) r += p;
        return static_cast<Elem>(r);
    }
    Elem add(Elem a, Elem b) const {
        std::uint64_t s = std::uint64_t(a) + b;
        if (s >= p) s -= p;
        return static_cast<Elem>(s);
    }
    Elem sub(Elem a, Elem b) const { return add(a, b == 0 ? 0 : p - b); }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>((std::uint64_t(a) * b) % p);
    }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    std::string str(Elem a) const { return std::to_string(a); }
};

// Runtime dispatch from a FieldSpec to the matching field object.
template <class Fn>
auto with_field(const FieldSpec& fs, Fn&& fn) {
    if (fs.is_rational()) return fn(RationalField{});
    return fn(PrimeField(fs.characteristic));
}

}  // namespace fanokit
