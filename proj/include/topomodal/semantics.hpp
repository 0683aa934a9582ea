#pragma once

#include "topomodal/errors.hpp"
#include "topomodal/formula.hpp"
#include "topomodal/realline.hpp"
#include "topomodal/topology.hpp"

#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace topomodal
{

/// How a set compares against the whole carrier.
enum class Coverage
{
    Full,
    CoSingleton,
    Other,
};

template < class Point >
struct CoverageResult
{
    Coverage kind = Coverage::Other;
    /// The single missing point when kind is CoSingleton.
    std::optional< Point > missing;
};

/// What the evaluator needs from a space: Boolean structure, the four
/// topological operators and a test against the full set.
template < class C >
concept Carrier = requires(const C& c, const typename C::Set& s, const typename C::Point& x, TopoOp op) {
    { c.full() } -> std::same_as< typename C::Set >;
    { c.empty() } -> std::same_as< typename C::Set >;
    { c.complement(s) } -> std::same_as< typename C::Set >;
    { c.unite(s, s) } -> std::same_as< typename C::Set >;
    { c.intersect(s, s) } -> std::same_as< typename C::Set >;
    { c.apply(op, s) } -> std::same_as< typename C::Set >;
    { c.coverage(s) } -> std::same_as< CoverageResult< typename C::Point > >;
    { c.singleton(x) } -> std::same_as< typename C::Set >;
    { c.contains(s, x) } -> std::same_as< bool >;
};

class FiniteCarrier
{
public:
    using Set = PointSet;
    using Point = PointIndex;

    explicit FiniteCarrier(const FiniteSpace& space) : space_{ &space } {}

    [[nodiscard]] const FiniteSpace& space() const noexcept { return *space_; }

    [[nodiscard]] Set full() const { return space_->full(); }
    [[nodiscard]] Set empty() const { return {}; }
    [[nodiscard]] Set complement(Set s) const { return space_->full() - s; }
    [[nodiscard]] Set unite(Set a, Set b) const { return a | b; }
    [[nodiscard]] Set intersect(Set a, Set b) const { return a & b; }
    [[nodiscard]] Set apply(TopoOp op, Set s) const { return topomodal::apply(*space_, op, s); }
    [[nodiscard]] Set singleton(Point x) const { return PointSet::singleton(x); }
    [[nodiscard]] bool contains(Set s, Point x) const { return s.contains(x); }
    [[nodiscard]] CoverageResult< Point > coverage(Set s) const
    {
        const PointSet missing = space_->full() - s;
        if (missing.empty())
            return { Coverage::Full, std::nullopt };
        if (missing.size() == 1)
            return { Coverage::CoSingleton, missing.front() };
        return { Coverage::Other, std::nullopt };
    }

private:
    const FiniteSpace* space_;
};

class RealCarrier
{
public:
    using Set = Region;
    using Point = Rat;

    [[nodiscard]] Set full() const { return Region::full(); }
    [[nodiscard]] Set empty() const { return Region::empty(); }
    [[nodiscard]] Set complement(const Set& s) const { return topomodal::complement(s); }
    [[nodiscard]] Set unite(const Set& a, const Set& b) const { return topomodal::unite(a, b); }
    [[nodiscard]] Set intersect(const Set& a, const Set& b) const { return topomodal::intersect(a, b); }
    [[nodiscard]] Set apply(TopoOp op, const Set& s) const { return topomodal::apply(op, s); }
    [[nodiscard]] Set singleton(const Point& x) const { return Region::point(x); }
    [[nodiscard]] bool contains(const Set& s, const Point& x) const { return s.contains(x); }
    [[nodiscard]] CoverageResult< Point > coverage(const Set& s) const
    {
        auto c = classify(s);
        if (c.shape == RegionShape::Full)
            return { Coverage::Full, std::nullopt };
        if (c.shape == RegionShape::CoSingleton)
            return { Coverage::CoSingleton, c.point };
        return { Coverage::Other, std::nullopt };
    }
};

static_assert(Carrier< FiniteCarrier >);
static_assert(Carrier< RealCarrier >);

template < Carrier C >
using Valuation = std::map< std::string, typename C::Set, std::less<> >;

using FiniteValuation = Valuation< FiniteCarrier >;
using RealValuation = Valuation< RealCarrier >;

/// Extension of `f` in the model (carrier, valuation).
template < Carrier C >
[[nodiscard]] typename C::Set eval(const C& c, const Valuation< C >& val, const Formula& f)
{
    using Set = typename C::Set;
    auto sub = [&](const Formula& g) { return eval(c, val, g); };
    auto elsewhere = [&](const Set& s) -> Set {
        auto cov = c.coverage(s);
        switch (cov.kind) {
        case Coverage::Full: return c.full();
        case Coverage::CoSingleton: return c.singleton(*cov.missing);
        case Coverage::Other: break;
        }
        return c.empty();
    };
    auto everywhere = [&](const Set& s) -> Set {
        return c.coverage(s).kind == Coverage::Full ? c.full() : c.empty();
    };

    switch (f.kind()) {
    case Kind::Var: {
        auto it = val.find(f.name());
        if (it == val.end())
            throw EvalError{ "unbound variable '" + f.name() + "'" };
        return it->second;
    }
    case Kind::Top: return c.full();
    case Kind::Bot: return c.empty();
    case Kind::Not: return c.complement(sub(f.child()));
    case Kind::And: return c.intersect(sub(f.left()), sub(f.right()));
    case Kind::Or: return c.unite(sub(f.left()), sub(f.right()));
    case Kind::Implies: return c.unite(c.complement(sub(f.left())), sub(f.right()));
    case Kind::DBox: return c.apply(TopoOp::PuncturedInterior, sub(f.child()));
    case Kind::IBox: return c.apply(TopoOp::Interior, sub(f.child()));
    case Kind::DiffBox: return elsewhere(sub(f.child()));
    case Kind::All: return everywhere(sub(f.child()));
    // Duals unfold as ~M~.
    case Kind::DDia: return c.complement(c.apply(TopoOp::PuncturedInterior, c.complement(sub(f.child()))));
    case Kind::CDia: return c.complement(c.apply(TopoOp::Interior, c.complement(sub(f.child()))));
    case Kind::DiffDia: return c.complement(elsewhere(c.complement(sub(f.child()))));
    case Kind::Exists: return c.complement(everywhere(c.complement(sub(f.child()))));
    }
    throw EvalError{ "unknown formula node" };
}

template < Carrier C >
[[nodiscard]] bool satisfies(const C& c, const Valuation< C >& val, const typename C::Point& x, const Formula& f)
{
    return c.contains(eval(c, val, f), x);
}

[[nodiscard]] inline PointSet eval(const FiniteSpace& s, const FiniteValuation& val, const Formula& f)
{
    return eval(FiniteCarrier{ s }, val, f);
}

[[nodiscard]] inline Region eval(const RealValuation& val, const Formula& f) { return eval(RealCarrier{}, val, f); }

/// Valuation of every variable in `vars` (listed in order) from bit counter
/// `counter`: bit (point * vars.size() + var) decides membership.
[[nodiscard]] FiniteValuation valuation_from_counter(const FiniteSpace& s, const std::set< std::string >& vars,
                                                     std::uint64_t counter);

struct Countermodel
{
    FiniteValuation valuation;
    PointIndex point = 0;
    PointSet extension;
    std::uint64_t counter = 0;
};

struct ValidityReport
{
    bool valid = true;
    /// Valuations examined in counter order up to the verdict.
    std::uint64_t valuations = 0;
    std::optional< Countermodel > countermodel;
};

struct ValidityOptions
{
    /// Upper bound on points * variables.
    unsigned max_bits = 24;
    unsigned jobs = 1;
};

/// Truth at every point under every valuation of vars(f). The reported
/// countermodel is the least failing valuation in counter order, at the least
/// failing point, independent of `jobs`.
[[nodiscard]] ValidityReport valid_on_space(const FiniteSpace& s, const Formula& f, const ValidityOptions& opts = {});
[[nodiscard]] ValidityReport point_validity(const FiniteSpace& s, PointIndex x, const Formula& f,
                                            const ValidityOptions& opts = {});

struct EquivWitness
{
    std::string id;
    FiniteSpace space;
    bool first_valid = false;
    bool second_valid = false;
};

struct EquivResult
{
    bool equal = true;
    std::size_t spaces = 0;
    std::uint64_t valuations = 0;
    std::optional< EquivWitness > witness;
};

struct EquivOptions
{
    std::size_t max_size = 5;
    bool include_empty = false;
    ValidityOptions validity{};
};

/// Compares validity of `f` and `g` on every space of the catalog with 1..n
/// points, up to homeomorphism; the witness is the first disagreement.
[[nodiscard]] EquivResult equiv_classes_up_to(std::size_t n, const Formula& f, const Formula& g,
                                              const EquivOptions& opts = {});

} // namespace topomodal
