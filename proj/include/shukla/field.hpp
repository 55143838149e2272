#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <variant>

#include "shukla/error.hpp"

namespace shukla {

// All linear algebra is templated on a field type F providing:
//   using Elem = ...;                  value type, regular, equality-comparable
//   Elem zero()/one() const;
//   Elem add/sub/mul(a,b) const;  Elem neg(a) const;
//   Elem inv(a) const;                 throws on zero
//   bool is_zero(a) const;
//   Elem from_int(long long) const;
//   Elem parse(const std::string&) const;
//   std::string render(const Elem&) const;
// Exact arithmetic only: the rationals, or a prime field.

struct RationalField {
    using Elem = boost::multiprecision::cpp_rational;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw division_by_zero("inverse of zero in Q");
        return 1 / a;
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    Elem from_int(long long n) const { return Elem(n); }

    Elem parse(const std::string& text) const;
    std::string render(const Elem& a) const {
        return a.str();
    }
};

struct PrimeField {
    using Elem = std::uint64_t;

    explicit PrimeField(std::uint64_t p);

    std::uint64_t p;

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem add(Elem a, Elem b) const {
        Elem s = a + b;  // p < 2^63 so no overflow
        return s >= p ? s - p : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % p);
    }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem inv(Elem a) const;
    bool is_zero(Elem a) const { return a == 0; }
    Elem from_int(long long n) const {
        long long r = n % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        return static_cast<Elem>(r);
    }

    Elem parse(const std::string& text) const;
    std::string render(Elem a) const { return std::to_string(a); }
};

// ---------------------------------------------------------------------------
// Boundary representation: a field specifier plus variant scalars, used by
// parsing, JSON I/O, the CLI, and the python bindings.  Internally everything
// immediately dispatches through with_field() onto concrete field types.

struct FieldSpec {
    enum class Kind { Rationals, Prime } kind = Kind::Rationals;
    std::uint64_t p = 0;  // only for Kind::Prime

    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }

    std::string name() const {
        return kind == Kind::Rationals ? "Q" : "F" + std::to_string(p);
    }

    // Accepts "Q", "q", "Fp:<p>", "F<p>", "GF(<p>)".
    static FieldSpec parse(const std::string& text);
};

using Scalar = std::variant<RationalField::Elem, PrimeField::Elem>;

template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::Rationals) {
        return fn(RationalField{});
    }
    return fn(PrimeField(spec.p));
}

// Scalar text syntax shared by both fields: optional sign, digits, optional
// "/" digits.  No decimals, no exponents, no whitespace.
// Over F_p the value is reduced mod p ("7" over F_5 is 2, "1/2" is 3).
void check_scalar_syntax(const std::string& text);

}  // namespace shukla
