#pragma once

#include "topomodal/formula.hpp"
#include "topomodal/semantics.hpp"
#include "topomodal/topology.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace topomodal
{

enum class EnumerationMode
{
    Labeled,
    Homeo,
};

struct CatalogEntry
{
    /// "T<n>.<k>" in homeomorphism mode, "L<n>.<k>" in labeled mode.
    std::string id;
    FiniteSpace space;
};

struct SpaceCatalog
{
    std::size_t n = 0;
    EnumerationMode mode = EnumerationMode::Homeo;
    std::vector< CatalogEntry > entries;

    [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }
};

struct EnumerateOptions
{
    std::size_t max_labeled = 5;
    std::size_t max_homeo = 6;
};

/// All topologies on n points, either every labelling or one canonical
/// representative per homeomorphism class (sorted by canonical code).
[[nodiscard]] SpaceCatalog enumerate(std::size_t n, EnumerationMode mode, const EnumerateOptions& opts = {});

/// Representatives of sizes 1..n (0..n with `include_empty`) in catalog order.
[[nodiscard]] std::vector< CatalogEntry > catalog_up_to(std::size_t n, bool include_empty = false,
                                                        const EnumerateOptions& opts = {});

struct CatalogOptions
{
    std::size_t max_size = 5;
    bool include_empty = false;
    ValidityOptions validity{};
    /// Space-level worker threads; results keep catalog order.
    unsigned jobs = 1;
};

struct NamedFormula
{
    std::string name;
    Formula formula;
};

struct ClassificationRow
{
    std::string id;
    FiniteSpace space;
    std::vector< bool > flags;
    bool loc1comp = false;
    bool connected = false;
};

[[nodiscard]] std::vector< ClassificationRow > classify(std::size_t n, const std::vector< NamedFormula >& formulas,
                                                        const CatalogOptions& opts = {});

/// Header `space_id,n,<names...>,loc1comp,connected`; flags printed as 0/1.
[[nodiscard]] std::string classification_csv(const std::vector< ClassificationRow >& rows,
                                             const std::vector< NamedFormula >& formulas);

struct KurDiscrepancy
{
    std::string id;
    FiniteSpace space;
    bool kur = false;
    bool kur_idiff = false;
};

struct KurTheoremReport
{
    std::size_t spaces = 0;
    std::uint64_t valuations = 0;
    std::vector< KurDiscrepancy > discrepancies;

    [[nodiscard]] bool holds() const noexcept { return discrepancies.empty(); }
};

/// Validity of Kur and KurIDiff must agree on every representative.
[[nodiscard]] KurTheoremReport verify_theorem_kur(std::size_t n, const CatalogOptions& opts = {});

struct L1cViolation
{
    std::string id;
    FiniteSpace space;
    PointIndex point = 0;
    Countermodel countermodel;
};

struct L1cLemmaReport
{
    std::size_t spaces = 0;
    std::size_t points_checked = 0;
    std::vector< L1cViolation > violations;

    [[nodiscard]] bool holds() const noexcept { return violations.empty(); }
};

/// Every locally 1-component point must satisfy Kur under all valuations.
[[nodiscard]] L1cLemmaReport verify_lemma_l1c(std::size_t n, const CatalogOptions& opts = {});

struct TransferFinding
{
    std::string source_id;
    std::string target_id;
    FiniteSpace source;
    FiniteSpace target;
    std::uint64_t valuations_tested = 0;
};

struct TransferReport
{
    std::size_t pairs_scanned = 0;
    std::vector< TransferFinding > findings;
};

/// Exploratory: pairs (X, Y) where X admits a Sigma-morphism onto Y under
/// every valuation of vars(Sigma) on Y, X validates phi and Y does not.
[[nodiscard]] TransferReport search_transfer_pairs(std::size_t n, const Formula& phi, const ClosureSet& sigma,
                                                   const CatalogOptions& opts = {});

/// Labelled extensions of a preorder on m points by one new point m, in a
/// fixed order. Exposed for enumeration tests.
[[nodiscard]] std::vector< std::vector< PointSet > > extend_preorder(const std::vector< PointSet >& below);

} // namespace topomodal
