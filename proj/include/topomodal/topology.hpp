#pragma once

#include "topomodal/errors.hpp"

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace topomodal
{

using PointIndex = std::size_t;

/// Finite spaces are capped by the width of PointSet.
inline constexpr std::size_t max_space_points = 64;

/// Subset of a finite space, as a bit mask over the space's point indices.
class PointSet
{
public:
    constexpr PointSet() noexcept = default;
    constexpr explicit PointSet(std::uint64_t bits) noexcept : bits_{ bits } {}

    [[nodiscard]] static constexpr PointSet singleton(PointIndex i) noexcept { return PointSet{ std::uint64_t{ 1 } << i }; }
    /// The set {0, ..., n-1}.
    [[nodiscard]] static constexpr PointSet first(std::size_t n) noexcept
    {
        return PointSet{ n >= 64 ? ~std::uint64_t{ 0 } : (std::uint64_t{ 1 } << n) - 1 };
    }

    [[nodiscard]] constexpr std::uint64_t bits() const noexcept { return bits_; }
    [[nodiscard]] constexpr bool contains(PointIndex i) const noexcept { return (bits_ >> i) & 1U; }
    [[nodiscard]] constexpr bool empty() const noexcept { return bits_ == 0; }
    [[nodiscard]] constexpr std::size_t size() const noexcept { return static_cast< std::size_t >(std::popcount(bits_)); }
    [[nodiscard]] constexpr bool subset_of(PointSet o) const noexcept { return (bits_ & ~o.bits_) == 0; }
    [[nodiscard]] constexpr bool intersects(PointSet o) const noexcept { return (bits_ & o.bits_) != 0; }
    /// Smallest member; undefined on the empty set.
    [[nodiscard]] constexpr PointIndex front() const noexcept { return static_cast< PointIndex >(std::countr_zero(bits_)); }

    constexpr PointSet& insert(PointIndex i) noexcept { bits_ |= std::uint64_t{ 1 } << i; return *this; }
    constexpr PointSet& erase(PointIndex i) noexcept { bits_ &= ~(std::uint64_t{ 1 } << i); return *this; }

    [[nodiscard]] std::vector< PointIndex > indices() const;

    friend constexpr PointSet operator|(PointSet a, PointSet b) noexcept { return PointSet{ a.bits_ | b.bits_ }; }
    friend constexpr PointSet operator&(PointSet a, PointSet b) noexcept { return PointSet{ a.bits_ & b.bits_ }; }
    friend constexpr PointSet operator-(PointSet a, PointSet b) noexcept { return PointSet{ a.bits_ & ~b.bits_ }; }
    friend constexpr bool operator==(PointSet a, PointSet b) noexcept = default;
    friend constexpr auto operator<=>(PointSet a, PointSet b) noexcept { return a.bits_ <=> b.bits_; }

private:
    std::uint64_t bits_ = 0;
};

class Preorder;

/// A finite topological space. Points are kept in lexicographic order and
/// the topology is stored as the minimal-neighbourhood map x -> U_x.
class FiniteSpace
{
public:
    FiniteSpace() = default;

    /// Checks the topology axioms on an explicit open family and reports the
    /// first missing witness.
    [[nodiscard]] static FiniteSpace validate(std::vector< std::string > points,
                                              const std::vector< std::vector< std::string > >& opens);
    /// Smallest topology containing the subbasis.
    [[nodiscard]] static FiniteSpace from_subbasis(std::vector< std::string > points,
                                                   const std::vector< std::vector< std::string > >& subbasis);
    /// Minimal neighbourhoods indexed by position in `points` (not yet sorted).
    /// Each U_x must contain x and be closed under U_y for y in U_x.
    [[nodiscard]] static FiniteSpace from_neighborhoods(std::vector< std::string > points,
                                                        std::vector< PointSet > neighborhoods);

    [[nodiscard]] static FiniteSpace discrete(std::size_t n);
    [[nodiscard]] static FiniteSpace indiscrete(std::size_t n);
    /// Points a < b, opens {}, {a}, {a,b}.
    [[nodiscard]] static FiniteSpace sierpinski();
    /// Points l, m, r, opens generated by {l} and {r}.
    [[nodiscard]] static FiniteSpace pseudo_line();

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] const std::vector< std::string >& points() const noexcept { return points_; }
    [[nodiscard]] const std::string& point(PointIndex i) const { return points_.at(i); }
    [[nodiscard]] std::optional< PointIndex > find(std::string_view name) const;
    /// Throws TopologyError for unknown names.
    [[nodiscard]] PointIndex index_of(std::string_view name) const;

    [[nodiscard]] PointSet full() const noexcept { return PointSet::first(size()); }
    [[nodiscard]] PointSet subset(const std::vector< std::string >& names) const;
    [[nodiscard]] std::vector< std::string > names(PointSet s) const;
    /// Throws TopologyError when `s` mentions an index outside the space.
    void check_subset(PointSet s) const;

    /// U_x, the intersection of all opens containing x.
    [[nodiscard]] PointSet neighborhood(PointIndex x) const { return nbhd_.at(x); }
    [[nodiscard]] const std::vector< PointSet >& neighborhoods() const noexcept { return nbhd_; }
    /// Specialisation order: x <= y iff x lies in U_y.
    [[nodiscard]] bool leq(PointIndex x, PointIndex y) const { return nbhd_[y].contains(x); }
    /// {y : x <= y}
    [[nodiscard]] PointSet above(PointIndex x) const;

    [[nodiscard]] bool is_open(PointSet s) const;
    /// Every open set, sorted by bit mask. Exponential in general.
    [[nodiscard]] std::vector< PointSet > opens() const;

    friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

private:
    FiniteSpace(std::vector< std::string > points, std::vector< PointSet > nbhd)
        : points_{ std::move(points) }, nbhd_{ std::move(nbhd) } {}

    std::vector< std::string > points_;
    std::vector< PointSet > nbhd_;
};

/// Reflexive, transitive relation on named points.
class Preorder
{
public:
    /// `below[y]` lists all x with x <= y. Reflexivity and transitivity are checked.
    Preorder(std::vector< std::string > points, std::vector< PointSet > below);

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] const std::vector< std::string >& points() const noexcept { return points_; }
    [[nodiscard]] bool leq(PointIndex x, PointIndex y) const { return below_[y].contains(x); }
    [[nodiscard]] PointSet below(PointIndex y) const { return below_.at(y); }

    friend bool operator==(const Preorder&, const Preorder&) = default;

private:
    std::vector< std::string > points_;
    std::vector< PointSet > below_;
};

[[nodiscard]] Preorder to_preorder(const FiniteSpace& s);
/// Opens of the result are exactly the down-closed sets of `p`.
[[nodiscard]] FiniteSpace from_preorder(const Preorder& p);

enum class TopoOp
{
    Derivative,        // d
    Closure,           // c
    Interior,          // i
    PuncturedInterior, // p
};

[[nodiscard]] TopoOp topo_op_from_char(char c);
[[nodiscard]] char to_char(TopoOp op) noexcept;

/// d A = {x : (U_x \ {x}) meets A}, c A = A u d A, i A = {x : U_x in A},
/// p A = {x : U_x \ {x} in A}.
[[nodiscard]] PointSet apply(const FiniteSpace& s, TopoOp op, PointSet a);

/// No two disjoint opens split C into two nonempty parts. The empty set is connected.
[[nodiscard]] bool is_connected(const FiniteSpace& s, PointSet c);
[[nodiscard]] bool is_locally_1_component(const FiniteSpace& s, PointIndex x);

/// Canonical labelling of the specialisation preorder. Two spaces are
/// homeomorphic iff their codes are equal.
struct CanonicalForm
{
    std::size_t size = 0;
    std::vector< std::uint64_t > code;
    /// labeling[pos] is the original index of the point placed at `pos`.
    std::vector< PointIndex > labeling;
};

inline constexpr std::size_t default_homeomorphism_guard = 10;

[[nodiscard]] CanonicalForm canonical_form(const FiniteSpace& s,
                                           std::size_t max_points = default_homeomorphism_guard);

/// Witness bijection (index in `a` -> index in `b`) when the spaces are homeomorphic.
[[nodiscard]] std::optional< std::vector< PointIndex > >
homeomorphism(const FiniteSpace& a, const FiniteSpace& b, std::size_t max_points = default_homeomorphism_guard);

[[nodiscard]] inline bool is_homeomorphic(const FiniteSpace& a, const FiniteSpace& b,
                                          std::size_t max_points = default_homeomorphism_guard)
{
    return homeomorphism(a, b, max_points).has_value();
}

/// Space obtained from a canonical form with points named a, b, c, ...
[[nodiscard]] FiniteSpace space_from_canonical(const FiniteSpace& s, const CanonicalForm& form);

/// "a".."z" for up to 26 points, otherwise zero-padded "x00", "x01", ... so that
/// lexicographic order matches index order.
[[nodiscard]] std::vector< std::string > default_point_names(std::size_t n);

} // namespace topomodal
