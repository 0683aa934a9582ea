#pragma once

#include "topomodal/topology.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topomodal
{

/// Exact rational, always in lowest terms with a positive denominator.
using Rat = boost::multiprecision::cpp_rational;

[[nodiscard]] Rat parse_rat(std::string_view text);
[[nodiscard]] std::string to_string(const Rat& r);
/// 2^-k
[[nodiscard]] Rat inverse_power_of_two(unsigned k);

class RegionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// One maximal piece of a region: an interval or an isolated point.
/// An absent bound stands for -inf / +inf and is always exclusive.
struct Component
{
    std::optional< Rat > lower;
    bool lower_closed = false;
    std::optional< Rat > upper;
    bool upper_closed = false;

    [[nodiscard]] static Component point(Rat x);
    [[nodiscard]] static Component interval(std::optional< Rat > lower, bool lower_closed, std::optional< Rat > upper,
                                            bool upper_closed);

    [[nodiscard]] bool is_point() const { return lower && upper && *lower == *upper; }

    friend bool operator==(const Component&, const Component&) = default;
};

/// Finite union of rational intervals and points on the real line.
///
/// Stored as strictly increasing cut points c_0 < ... < c_{m-1} together with
/// one membership bit per cell, cells alternating open gap / cut point:
/// (-inf,c_0), {c_0}, (c_0,c_1), ..., {c_{m-1}}, (c_{m-1},inf). A cut is kept
/// only if removing it would change the set, which makes the form canonical.
class Region
{
public:
    Region() : cells_{ false } {}

    [[nodiscard]] static Region empty() { return Region{}; }
    [[nodiscard]] static Region full();
    [[nodiscard]] static Region point(Rat x);
    [[nodiscard]] static Region of(const Component& c);
    /// Canonical region for the union of the components, in any order.
    [[nodiscard]] static Region normalize(const std::vector< Component >& components);
    [[nodiscard]] static Region parse(std::string_view text);

    [[nodiscard]] std::vector< Component > components() const;
    [[nodiscard]] std::string str() const;

    [[nodiscard]] bool contains(const Rat& x) const;
    [[nodiscard]] bool is_empty() const { return cuts_.empty() && !cells_[0]; }
    [[nodiscard]] bool is_full() const { return cuts_.empty() && cells_[0]; }
    [[nodiscard]] bool subset_of(const Region& other) const;

    [[nodiscard]] const std::vector< Rat >& cuts() const noexcept { return cuts_; }

    friend bool operator==(const Region&, const Region&) = default;

    friend Region complement(const Region& r);
    friend Region unite(const Region& a, const Region& b);
    friend Region intersect(const Region& a, const Region& b);
    friend Region difference(const Region& a, const Region& b);
    friend Region apply(TopoOp op, const Region& r);

private:
    Region(std::vector< Rat > cuts, std::vector< bool > cells) : cuts_{ std::move(cuts) }, cells_{ std::move(cells) }
    {
        canonicalize();
    }

    void canonicalize();
    /// Membership bits of this region over the cells of `finer` (a superset of cuts_).
    [[nodiscard]] std::vector< bool > refine(const std::vector< Rat >& finer) const;
    template < class Combine >
    [[nodiscard]] static Region combine(const Region& a, const Region& b, Combine op);

    std::vector< Rat > cuts_;
    std::vector< bool > cells_;
};

[[nodiscard]] Region complement(const Region& r);
[[nodiscard]] Region unite(const Region& a, const Region& b);
[[nodiscard]] Region intersect(const Region& a, const Region& b);
[[nodiscard]] Region difference(const Region& a, const Region& b);

enum class BoolOp
{
    Union,
    Intersect,
    Complement,
    Difference,
};

/// `b` is ignored for Complement and required otherwise.
[[nodiscard]] Region bool_op(BoolOp kind, const Region& a, const Region* b = nullptr);

/// Derivative, closure, interior and punctured interior on the real line.
[[nodiscard]] Region apply(TopoOp op, const Region& r);

/// Union of (2^{-2n-1}, 2^{-2n}) for n = first .. first + extra.
[[nodiscard]] Region comb(unsigned first, unsigned extra);

enum class RegionShape
{
    Empty,
    Singleton,
    CoSingleton,
    Full,
    Other,
};

struct RegionClass
{
    RegionShape shape = RegionShape::Other;
    /// The point for Singleton / CoSingleton.
    std::optional< Rat > point;
};

[[nodiscard]] RegionClass classify(const Region& r);

} // namespace topomodal
