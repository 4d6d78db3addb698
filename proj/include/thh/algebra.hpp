#pragma once

// Free graded-commutative algebras over Z or F_p, truncated at a maximal degree.
//
// Sign convention: transposing homogeneous factors of degrees d and e
// multiplies by (-1)^(d*e). Every construction downstream inherits it.

#include "thh/coefficients.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace thh {

enum class GeneratorKind { polynomial, exterior };

std::string_view to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(std::string_view text);

struct Generator {
    std::string name;
    int degree = 1;
    GeneratorKind kind = GeneratorKind::polynomial;

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Exponent vector aligned with the owning algebra's generator list.
struct Monomial {
    std::vector<std::uint32_t> exponents;
    int degree = 0;

    bool is_unit() const { return degree == 0; }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded-lex: lower degree first; within a degree, lexicographically larger
/// exponent vectors first (x0^3 precedes x1).
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

/// Product of two basis monomials: a sign times a monomial, or zero.
struct SignedMonomial {
    int sign = 1;
    Monomial monomial;
};

class FreeGCA {
public:
    /// Validates the presentation and materializes the monomial basis in
    /// every degree 0..truncation.
    FreeGCA(CoefficientRing ring, std::vector<Generator> generators, int truncation);

    /// The ground ring itself, concentrated in degree 0.
    static FreeGCA trivial(CoefficientRing ring, int truncation);

    const CoefficientRing& ring() const;
    const std::vector<Generator>& generators() const;
    int truncation() const;
    /// Smallest generator degree; truncation + 1 when there are no generators.
    int min_generator_degree() const;
    std::optional<std::size_t> generator_index(std::string_view name) const;

    /// Basis of degree n in graded-lex order. Throws TruncationError outside [0, truncation].
    const std::vector<Monomial>& basis(int degree) const;
    std::size_t rank(int degree) const { return basis(degree).size(); }

    /// Position of a monomial inside basis(m.degree).
    std::size_t index_in_degree(const Monomial& m) const;
    /// Dense numbering across all degrees (degree-major).
    std::uint32_t global_index(const Monomial& m) const;
    const Monomial& monomial_at(std::uint32_t global) const;
    /// Global index of basis(degree)[0]. Global index 0 is always the unit.
    std::uint32_t first_global_index(int degree) const;
    std::size_t total_basis_size() const;

    Monomial unit() const;
    Monomial generator_monomial(std::size_t generator) const;

    /// Product with the Koszul sign. nullopt when an exterior square appears.
    /// Throws TruncationError if the product degree exceeds the truncation.
    std::optional<SignedMonomial> multiply(const Monomial& a, const Monomial& b) const;

    std::string format(const Monomial& m) const;

    /// Same ring, generators and truncation.
    friend bool operator==(const FreeGCA& a, const FreeGCA& b);

private:
    struct Data;
    std::shared_ptr<const Data> d_;
};

/// Homogeneous element: sparse combination of basis monomials of one degree.
class Element {
public:
    Element(FreeGCA algebra, int degree);

    static Element from_monomial(const FreeGCA& algebra, const Monomial& m, const Integer& coefficient = 1);
    static Element generator(const FreeGCA& algebra, std::string_view name);

    const FreeGCA& algebra() const { return algebra_; }
    int degree() const { return degree_; }
    const std::map<Monomial, Integer, GradedLexLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Integer coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const Integer& coefficient);

    Element operator+(const Element& other) const;
    Element operator-() const;
    Element operator-(const Element& other) const;
    Element scaled(const Integer& c) const;

    std::string format() const;

    friend bool operator==(const Element& a, const Element& b);

private:
    FreeGCA algebra_;
    int degree_;
    std::map<Monomial, Integer, GradedLexLess> terms_;
};

/// Bilinear graded-commutative product. Throws std::invalid_argument on
/// mismatched algebras and TruncationError past the truncation.
Element multiply(const Element& a, const Element& b);
inline Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

/// Ranks (dimensions over F_p, ranks over Z) per degree 0..N.
struct PoincareVector {
    std::vector<std::uint64_t> ranks;

    std::uint64_t at(int degree) const
    {
        return degree >= 0 && static_cast<std::size_t>(degree) < ranks.size() ? ranks[degree] : 0;
    }
    int max_degree() const { return static_cast<int>(ranks.size()) - 1; }
    friend bool operator==(const PoincareVector&, const PoincareVector&) = default;
};

std::vector<Monomial> monomial_basis(const FreeGCA& algebra, int degree);
PoincareVector poincare_series(const FreeGCA& algebra, int max_degree);

/// Cauchy product of two rank sequences, cut at max_degree.
PoincareVector convolve(const PoincareVector& a, const PoincareVector& b, int max_degree);

/// Concatenates generator lists. Clashing names in b get a "_2", "_3", ...
/// suffix. The truncation is the smaller of the two.
FreeGCA tensor_algebras(const FreeGCA& a, const FreeGCA& b);

std::string format_ranks(const PoincareVector& p);

}  // namespace thh
