#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace thh {

using Integer = mpz_class;

bool is_prime(std::uint64_t n);

/// Either the integers or a prime field F_p.
class CoefficientRing {
public:
    static CoefficientRing integers() { return CoefficientRing(0); }
    /// Throws std::invalid_argument unless p is prime.
    static CoefficientRing prime_field(unsigned p);
    /// Accepts "Z" or "F<p>" (e.g. "F2").
    static CoefficientRing parse(std::string_view text);

    bool is_integers() const { return p_ == 0; }
    bool is_field() const { return p_ != 0; }
    /// 0 for the integers.
    unsigned characteristic() const { return p_; }

    /// Canonical representative: unchanged over Z, in [0, p) over F_p.
    Integer normalize(const Integer& x) const;
    bool is_zero(const Integer& x) const;

    std::string name() const;

    friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;

private:
    explicit CoefficientRing(unsigned p) : p_(p) {}
    unsigned p_;
};

}  // namespace thh
