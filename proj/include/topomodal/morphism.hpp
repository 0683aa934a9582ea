#pragma once

#include "topomodal/formula.hpp"
#include "topomodal/semantics.hpp"
#include "topomodal/topology.hpp"

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace topomodal
{

/// Total map between the point sets of two finite spaces.
class PointMap
{
public:
    PointMap(std::shared_ptr< const FiniteSpace > source, std::shared_ptr< const FiniteSpace > target,
             std::vector< PointIndex > image);
    PointMap(const FiniteSpace& source, const FiniteSpace& target, std::vector< PointIndex > image);

    /// Every source point must be mapped, by name.
    [[nodiscard]] static PointMap from_names(const FiniteSpace& source, const FiniteSpace& target,
                                             const std::map< std::string, std::string >& assignment);

    [[nodiscard]] const FiniteSpace& source() const noexcept { return *source_; }
    [[nodiscard]] const FiniteSpace& target() const noexcept { return *target_; }
    [[nodiscard]] const std::vector< PointIndex >& image() const noexcept { return image_; }
    [[nodiscard]] PointIndex operator()(PointIndex x) const { return image_.at(x); }

    [[nodiscard]] PointSet image_of(PointSet a) const;
    [[nodiscard]] PointSet preimage(PointSet b) const;
    [[nodiscard]] std::map< std::string, std::string > as_names() const;

private:
    std::shared_ptr< const FiniteSpace > source_;
    std::shared_ptr< const FiniteSpace > target_;
    std::vector< PointIndex > image_;
};

struct MorphismReport
{
    bool continuous = false;
    bool open = false;
    bool surjective = false;
    bool injective_on_subset = false;

    /// A target open set whose preimage is not open.
    std::optional< PointSet > continuity_witness;
    /// A source open set whose image is not open.
    std::optional< PointSet > openness_witness;
    /// A target point outside the image.
    std::optional< PointIndex > missed_point;
    /// A point of the subset whose fibre is not a singleton.
    std::optional< PointIndex > fiber_witness;

    [[nodiscard]] bool interior() const noexcept { return continuous && open; }
    /// Interior, surjective and injective over the subset.
    [[nodiscard]] bool is_u_morphism() const noexcept { return interior() && surjective && injective_on_subset; }
};

[[nodiscard]] MorphismReport analyze_map(const PointMap& f, PointSet subset);

class FragmentError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Points y such that some member of sigma has extension exactly {y}.
/// Sigma must avoid [d], <d>, [A] and <E>.
[[nodiscard]] PointSet unique_points(const FiniteSpace& y, const FiniteValuation& val, const ClosureSet& sigma);

/// Variable-wise preimage of a target valuation.
[[nodiscard]] FiniteValuation pullback_valuation(const PointMap& f, const FiniteValuation& target_val);

struct PreservationMismatch
{
    Formula formula;
    /// Extension in the source under the pulled-back valuation.
    PointSet source_extension;
    /// Preimage of the target extension.
    PointSet pulled_back;
};

struct PreservationReport
{
    PointSet unique;
    MorphismReport morphism;
    bool sigma_morphism = false;
    std::vector< PreservationMismatch > mismatches;
};

[[nodiscard]] PreservationReport verify_preservation(const PointMap& f, const FiniteValuation& target_val,
                                                     const ClosureSet& sigma);

struct MorphismSearchOptions
{
    std::size_t max_points = 6;
    /// Stop after this many results.
    std::size_t limit = std::numeric_limits< std::size_t >::max();
};

/// Every interior surjection X -> Y injective over `subset`, in
/// lexicographic order of the image vector.
[[nodiscard]] std::vector< PointMap > find_U_morphisms(const FiniteSpace& x, const FiniteSpace& y, PointSet subset,
                                                       const MorphismSearchOptions& opts = {});

struct GgResult
{
    bool holds = true;
    /// Least subset (by size, then lexicographically) with no morphism.
    std::optional< PointSet > failing;
    std::size_t subsets_checked = 0;
};

/// Checks that a subset-morphism X -> Y exists for every subset of Y with at most k points.
[[nodiscard]] GgResult gg_check(const FiniteSpace& x, const FiniteSpace& y, std::size_t k,
                                const MorphismSearchOptions& opts = {});

/// Subsets of {0..n-1} with at most k members, by size and then lexicographically.
[[nodiscard]] std::vector< PointSet > subsets_by_size(std::size_t n, std::size_t k);

} // namespace topomodal
