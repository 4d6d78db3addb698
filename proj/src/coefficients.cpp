#include "thh/coefficients.hpp"

#include <charconv>
#include <stdexcept>

namespace thh {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

CoefficientRing CoefficientRing::prime_field(unsigned p)
{
    if (!is_prime(p))
        throw std::invalid_argument("coefficient field characteristic " + std::to_string(p) + " is not prime");
    return CoefficientRing(p);
}

CoefficientRing CoefficientRing::parse(std::string_view text)
{
    if (text == "Z")
        return integers();
    if (text.size() >= 2 && (text[0] == 'F' || text[0] == 'f')) {
        unsigned p = 0;
        auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), p);
        if (ec == std::errc() && ptr == text.data() + text.size())
            return prime_field(p);
    }
    throw std::invalid_argument("unknown coefficient ring '" + std::string(text) + "' (expected Z or F<p>)");
}

Integer CoefficientRing::normalize(const Integer& x) const
{
    if (p_ == 0)
        return x;
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p_);
    return r;
}

bool CoefficientRing::is_zero(const Integer& x) const
{
    if (p_ == 0)
        return x == 0;
    return mpz_divisible_ui_p(x.get_mpz_t(), p_) != 0;
}

std::string CoefficientRing::name() const
{
    return p_ == 0 ? std::string("Z") : "F" + std::to_string(p_);
}

}  // namespace thh
