#include "shukla/field.hpp"

#include <cctype>

namespace shukla {

void check_scalar_syntax(const std::string& text) {
    auto bad = [&]() -> Error {
        return parse_error("invalid scalar literal: '" + text + "'");
    };
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
        ++digits;
    }
    if (digits == 0) throw bad();
    if (i == text.size()) return;
    if (text[i] != '/') throw bad();
    ++i;
    digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
        ++digits;
    }
    if (digits == 0 || i != text.size()) throw bad();
}

RationalField::Elem RationalField::parse(const std::string& text) const {
    check_scalar_syntax(text);
    auto slash = text.find('/');
    using Int = boost::multiprecision::cpp_int;
    if (slash == std::string::npos) {
        return Elem(Int(text));
    }
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) throw division_by_zero("scalar literal with zero denominator: '" + text + "'");
    return Elem(num, den);
}

PrimeField::PrimeField(std::uint64_t p_) : p(p_) {
    if (p < 2) throw validation_error("field characteristic must be a prime, got " + std::to_string(p));
    if (p >= (1ull << 62)) throw validation_error("prime too large (must be < 2^62): " + std::to_string(p));
    if (p % 2 == 0 && p != 2)
        throw validation_error("field characteristic must be a prime, got " + std::to_string(p));
    for (std::uint64_t d = 3; d * d <= p; d += 2) {
        if (p % d == 0)
            throw validation_error("field characteristic must be a prime, got " + std::to_string(p));
    }
}

PrimeField::Elem PrimeField::inv(Elem a) const {
    a %= p;
    if (a == 0) throw division_by_zero("inverse of zero in F" + std::to_string(p));
    // extended Euclid on (a, p); p prime so gcd = 1
    std::int64_t t = 0, newt = 1;
    std::uint64_t r = p, newr = a;
    while (newr != 0) {
        std::uint64_t q = r / newr;
        std::int64_t tt = t - static_cast<std::int64_t>(q) * newt;
        t = newt;
        newt = tt;
        std::uint64_t rr = r - q * newr;
        r = newr;
        newr = rr;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<Elem>(t);
}

PrimeField::Elem PrimeField::parse(const std::string& text) const {
    check_scalar_syntax(text);
    auto slash = text.find('/');
    std::string num_text = slash == std::string::npos ? text : text.substr(0, slash);

    bool negative = false;
    std::size_t start = 0;
    if (num_text[0] == '+' || num_text[0] == '-') {
        negative = num_text[0] == '-';
        start = 1;
    }
    Elem value = 0;
    for (std::size_t i = start; i < num_text.size(); ++i) {
        value = add(mul(value, 10 % p), static_cast<Elem>(num_text[i] - '0') % p);
    }
    if (negative) value = neg(value);

    if (slash != std::string::npos) {
        std::string den_text = text.substr(slash + 1);
        Elem den = 0;
        for (char c : den_text) den = add(mul(den, 10 % p), static_cast<Elem>(c - '0') % p);
        if (den == 0)
            throw division_by_zero("scalar literal '" + text + "' has denominator divisible by " +
                                   std::to_string(p));
        value = mul(value, inv(den));
    }
    return value;
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "Q" || text == "q") return FieldSpec{Kind::Rationals, 0};
    auto from_digits = [&](const std::string& digits) {
        if (digits.empty()) throw usage_error("invalid field specifier: '" + text + "'");
        std::uint64_t p = 0;
        for (char c : digits) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw usage_error("invalid field specifier: '" + text + "'");
            if (p > ((1ull << 62) / 10))
                throw usage_error("field characteristic too large: '" + text + "'");
            p = p * 10 + static_cast<std::uint64_t>(c - '0');
        }
        try {
            PrimeField check(p);  // validates primality
        } catch (const Error& e) {
            throw usage_error("invalid field specifier '" + text + "': " + e.what());
        }
        return FieldSpec{Kind::Prime, p};
    };
    if (text.rfind("Fp:", 0) == 0) return from_digits(text.substr(3));
    if (text.rfind("GF(", 0) == 0 && text.back() == ')')
        return from_digits(text.substr(3, text.size() - 4));
    if ((text[0] == 'F' || text[0] == 'f') && text.size() > 1) return from_digits(text.substr(1));
    throw usage_error("invalid field specifier: '" + text + "' (expected Q, Fp:<p>, F<p>, or GF(<p>))");
}

}  // namespace shukla
