#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topomodal
{

/// Node kinds of the full topological language. The duals (`DDia`, `CDia`,
/// `DiffDia`, `Exists`) are kept as distinct nodes so that rendering is
/// faithful to the input; evaluation unfolds them through negation.
enum class Kind
{
    Var,
    Top,
    Bot,
    Not,
    And,
    Or,
    Implies,
    DBox,    // [d]   punctured interior
    DDia,    // <d>   derivative
    IBox,    // [i]   interior
    CDia,    // <c>   closure
    DiffBox, // [!=]  elsewhere
    DiffDia, // <!=>  somewhere else
    All,     // [A]
    Exists,  // <E>
};

[[nodiscard]] bool is_unary(Kind k) noexcept;
[[nodiscard]] bool is_binary(Kind k) noexcept;

/// Immutable formula tree with structural equality. Copies share nodes.
class Formula
{
public:
    struct Node;

    [[nodiscard]] static Formula var(std::string name);
    [[nodiscard]] static Formula top();
    [[nodiscard]] static Formula bot();
    [[nodiscard]] static Formula unary(Kind kind, Formula child);
    [[nodiscard]] static Formula binary(Kind kind, Formula left, Formula right);

    [[nodiscard]] static Formula neg(Formula f) { return unary(Kind::Not, std::move(f)); }
    [[nodiscard]] static Formula conj(Formula l, Formula r) { return binary(Kind::And, std::move(l), std::move(r)); }
    [[nodiscard]] static Formula disj(Formula l, Formula r) { return binary(Kind::Or, std::move(l), std::move(r)); }
    [[nodiscard]] static Formula implies(Formula l, Formula r) { return binary(Kind::Implies, std::move(l), std::move(r)); }

    [[nodiscard]] Kind kind() const noexcept;
    /// Variable name; empty for non-variables.
    [[nodiscard]] const std::string& name() const noexcept;
    /// Only child of a unary node, left child of a binary node.
    [[nodiscard]] const Formula& child() const;
    [[nodiscard]] const Formula& left() const;
    [[nodiscard]] const Formula& right() const;

    [[nodiscard]] const std::vector<Formula>& children() const;
    [[nodiscard]] std::size_t depth() const;
    [[nodiscard]] std::size_t size() const;

    /// Three-way structural comparison (negative, zero, positive).
    [[nodiscard]] static int compare(const Formula& a, const Formula& b);

    friend bool operator==(const Formula& a, const Formula& b);
    /// Total structural order; used to key sets of formulas.
    friend bool operator<(const Formula& a, const Formula& b);

private:
    explicit Formula(std::shared_ptr<const Node> node) : node_{ std::move(node) } {}
    std::shared_ptr<const Node> node_;
};

struct Formula::Node
{
    Kind kind;
    std::string name;
    std::vector<Formula> kids;
};

class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found);

    [[nodiscard]] std::size_t position() const noexcept { return position_; }
    [[nodiscard]] const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::vector<std::string> expected_;
};

/// Parses the ASCII surface syntax. Precedence from tightest to loosest:
/// prefix operators, `&`, `|`, `->` (right associative). `&` and `|` group
/// to the left. Capitalised identifiers resolve to built-in formulas.
[[nodiscard]] Formula parse(std::string_view text);

/// Minimally parenthesised rendering; `parse(render(f)) == f`.
[[nodiscard]] std::string render(const Formula& f);

[[nodiscard]] std::set<std::string> vars(const Formula& f);

/// Set of formulas closed under immediate subformulas and single negations.
class ClosureSet
{
public:
    ClosureSet() = default;

    [[nodiscard]] const std::set<Formula>& members() const noexcept { return members_; }
    [[nodiscard]] bool contains(const Formula& f) const { return members_.count(f) > 0; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] auto begin() const { return members_.begin(); }
    [[nodiscard]] auto end() const { return members_.end(); }

    friend ClosureSet closure_set(const std::set<Formula>& generators);

private:
    std::set<Formula> members_;
};

[[nodiscard]] ClosureSet closure_set(const std::set<Formula>& generators);

/// All distinct subformulas, the formula itself included.
[[nodiscard]] std::set<Formula> subformulas(const Formula& f);

/// `true` when no node is `[d]`, `<d>`, `[A]` or `<E>`.
[[nodiscard]] bool in_interior_difference_fragment(const Formula& f);

namespace builtin
{

/// [d]([i]p | [i]~p) -> [d]p | [d]~p
[[nodiscard]] const Formula& kur();
/// [d] applied to kur()
[[nodiscard]] const Formula& box_kur();
/// Interior/elsewhere rendering of kur() with [q]x := [i](q -> x).
[[nodiscard]] const Formula& kur_idiff();

/// Looks up `Kur`, `BoxKur`, `KurIDiff`; nullptr when unknown.
[[nodiscard]] const Formula* lookup(std::string_view name);

[[nodiscard]] std::vector<std::string> names();

} // namespace builtin

} // namespace topomodal
