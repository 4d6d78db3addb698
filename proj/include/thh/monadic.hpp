#pragma once

// Colimits and tensors of algebras over the finite-powerset monad (finite
// join-semilattices with bottom), computed two ways: literally through the
// monadic coequalizer formulas, and through an independent congruence oracle.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace thh {

inline constexpr std::size_t kMaxFreeGenerators = 12;
inline constexpr std::size_t kMaxCoequalizerGenerators = 64;
inline constexpr std::size_t kMaxCarrier = 4096;

class SemilatticeAlgebra {
public:
    using Element = std::uint32_t;

    SemilatticeAlgebra();  // the one-element algebra
    /// Validates idempotence, commutativity, associativity and a bottom element.
    SemilatticeAlgebra(std::vector<std::string> labels, std::vector<Element> join_table);
    /// Skips the axiom checks; for tables that satisfy them by construction.
    static SemilatticeAlgebra unchecked(std::vector<std::string> labels, std::vector<Element> join_table);

    std::size_t size() const { return labels_.size(); }
    Element join(Element a, Element b) const { return table_[a * size() + b]; }
    Element bottom() const { return bottom_; }
    bool leq(Element a, Element b) const { return join(a, b) == b; }
    const std::string& label(Element a) const { return labels_[a]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<Element>& table() const { return table_; }
    std::optional<Element> find(const std::string& label) const;

    /// Longest chain from the bottom to each element.
    std::vector<int> heights() const;

private:
    void find_bottom();

    std::vector<std::string> labels_;
    std::vector<Element> table_;
    Element bottom_ = 0;
};

/// Carrier all subsets of `generators`, join union, bottom the empty set.
/// Element i is the subset with bit mask i; the unit sends generator k to 1 << k.
SemilatticeAlgebra free_semilattice(const std::vector<std::string>& generators);

/// 0 < 1 < ... < n-1.
SemilatticeAlgebra chain_semilattice(std::size_t n);

struct DiagramArrow {
    std::string name;
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<SemilatticeAlgebra::Element> images;
};

struct AlgebraDiagram {
    std::string name;
    std::vector<std::string> object_names;
    std::vector<SemilatticeAlgebra> objects;
    std::vector<DiagramArrow> arrows;

    /// Every arrow must preserve joins and the bottom element.
    void validate() const;
};

bool preserves_joins(const SemilatticeAlgebra& source, const SemilatticeAlgebra& target,
                     const std::vector<SemilatticeAlgebra::Element>& images);

struct CoequalizerResult {
    SemilatticeAlgebra algebra;
    std::size_t generators = 0;       // size of the set-level colimit
    bool reflexive = true;            // e h = id and f h = id
};

/// The pair E(colim E R_i) => E(colim R_i), E(colim xi_i) and mu E(alpha),
/// quotiented by the congruence it generates.
CoequalizerResult colimit_coequalizer(const AlgebraDiagram& d);
SemilatticeAlgebra colimit_via_coequalizer(const AlgebraDiagram& d);

/// Product of the carriers (the coproduct of bounded semilattices) modulo the
/// congruence generated by the arrows, by union-find saturation.
SemilatticeAlgebra colimit_direct(const AlgebraDiagram& d);

/// The pair E(E X (x) A) => E(X (x) A) with X (x) A the |A|-fold copower in sets.
CoequalizerResult tensor_coequalizer(const SemilatticeAlgebra& x, std::size_t copies);
SemilatticeAlgebra tensor_via_coequalizer(const SemilatticeAlgebra& x, std::size_t copies);

/// Discrete diagram of `copies` copies of x.
AlgebraDiagram copower_diagram(const SemilatticeAlgebra& x, std::size_t copies);

bool iso_check(const SemilatticeAlgebra& x, const SemilatticeAlgebra& y);

/// Elements sorted by (height, down-set size, up-set size, label).
SemilatticeAlgebra canonicalize(const SemilatticeAlgebra& x);

/// All join- and bottom-preserving maps, in lexicographic order of images.
std::vector<std::vector<SemilatticeAlgebra::Element>> semilattice_homs(const SemilatticeAlgebra& source,
                                                                       const SemilatticeAlgebra& target);

struct SuiteEntry {
    AlgebraDiagram diagram;
    std::vector<std::pair<std::size_t, std::size_t>> tensors;  // (object, copies)
};

/// Text format, one block per diagram:
///   diagram <name>
///   object <name> free <gen>...
///   object <name> chain <n>
///   object <name> elements <bottom> <label>...
///   join <object> <x> <y> <x v y>   (omitted joins: least upper bounds in the generated order)
///   arrow <name> <source> <target> <image of each source element>...
///   tensor <object> <copies>
///   end
/// '#' starts a comment. Errors are ParseError with the line number.
std::vector<SuiteEntry> parse_diagram_suite(std::istream& in);
void write_diagram_suite(std::ostream& out, const std::vector<SuiteEntry>& suite);

/// Every shape with at most 3 objects and 4 arrows, up to relabelling, each
/// with deterministic algebra and map assignments; carriers at most 16.
std::vector<SuiteEntry> generate_diagram_suite();

struct MonadicReport {
    std::size_t diagrams = 0;
    std::size_t colimit_agreements = 0;
    std::size_t tensors = 0;
    std::size_t tensor_agreements = 0;
    std::size_t reflexivity_checks = 0;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

MonadicReport verify_monadic_suite(const std::vector<SuiteEntry>& suite);

}  // namespace thh
