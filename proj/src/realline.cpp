#include "topomodal/realline.hpp"

#include <algorithm>
#include <cctype>

namespace topomodal
{

namespace
{

bool is_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast< unsigned char >(c)); });
}

} // namespace

Rat parse_rat(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{ "1" } : body.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den))
        throw RegionError{ "malformed rational '" + std::string(text) + "'" };
    boost::multiprecision::cpp_int n{ std::string(num) };
    boost::multiprecision::cpp_int d{ std::string(den) };
    if (d == 0)
        throw RegionError{ "zero denominator in '" + std::string(text) + "'" };
    Rat r{ n, d };
    return negative ? Rat{ -r } : r;
}

std::string to_string(const Rat& r) { return r.str(); }

Rat inverse_power_of_two(unsigned k)
{
    boost::multiprecision::cpp_int den{ 1 };
    den <<= k;
    return Rat{ boost::multiprecision::cpp_int{ 1 }, den };
}

Component Component::point(Rat x)
{
    return Component{ x, true, x, true };
}

Component Component::interval(std::optional< Rat > lower, bool lower_closed, std::optional< Rat > upper,
                              bool upper_closed)
{
    return Component{ std::move(lower), lower_closed, std::move(upper), upper_closed };
}

// ---------------------------------------------------------------------------

void Region::canonicalize()
{
    std::vector< Rat > cuts;
    std::vector< bool > cells{ cells_[0] };
    for (std::size_t k = 0; k < cuts_.size(); ++k) {
        const bool gap_before = cells.back();
        if (cells_[2 * k + 1] == gap_before && cells_[2 * k + 2] == gap_before)
            continue;
        cuts.push_back(cuts_[k]);
        cells.push_back(cells_[2 * k + 1]);
        cells.push_back(cells_[2 * k + 2]);
    }
    cuts_ = std::move(cuts);
    cells_ = std::move(cells);
}

std::vector< bool > Region::refine(const std::vector< Rat >& finer) const
{
    std::vector< bool > out;
    out.reserve(2 * finer.size() + 1);
    std::size_t k = 0; // own cuts strictly below the current position
    for (const auto& c : finer) {
        out.push_back(cells_[2 * k]);
        if (k < cuts_.size() && cuts_[k] == c) {
            out.push_back(cells_[2 * k + 1]);
            ++k;
        } else
            out.push_back(cells_[2 * k]);
    }
    out.push_back(cells_[2 * k]);
    return out;
}

template < class Combine >
Region Region::combine(const Region& a, const Region& b, Combine op)
{
    std::vector< Rat > merged;
    merged.reserve(a.cuts_.size() + b.cuts_.size());
    std::set_union(a.cuts_.begin(), a.cuts_.end(), b.cuts_.begin(), b.cuts_.end(), std::back_inserter(merged));
    auto ca = a.refine(merged);
    auto cb = b.refine(merged);
    std::vector< bool > cells(ca.size());
    for (std::size_t i = 0; i < ca.size(); ++i)
        cells[i] = op(ca[i], cb[i]);
    return Region{ std::move(merged), std::move(cells) };
}

Region Region::full() { return Region{ {}, { true } }; }

Region Region::point(Rat x) { return Region{ { std::move(x) }, { false, true, false } }; }

Region Region::of(const Component& c)
{
    if (!c.lower && c.lower_closed)
        throw RegionError{ "-inf cannot be an included endpoint" };
    if (!c.upper && c.upper_closed)
        throw RegionError{ "inf cannot be an included endpoint" };
    if (c.lower && c.upper) {
        if (*c.lower > *c.upper)
            throw RegionError{ "malformed interval: lower endpoint " + to_string(*c.lower) + " exceeds upper " +
                               to_string(*c.upper) };
        if (*c.lower == *c.upper) {
            if (!(c.lower_closed && c.upper_closed))
                throw RegionError{ "malformed interval: empty interval at " + to_string(*c.lower) };
            return point(*c.lower);
        }
        return Region{ { *c.lower, *c.upper }, { false, c.lower_closed, true, c.upper_closed, false } };
    }
    if (c.lower)
        return Region{ { *c.lower }, { false, c.lower_closed, true } };
    if (c.upper)
        return Region{ { *c.upper }, { true, c.upper_closed, false } };
    return full();
}

Region Region::normalize(const std::vector< Component >& components)
{
    Region acc;
    for (const auto& c : components)
        acc = unite(acc, of(c));
    return acc;
}

std::vector< Component > Region::components() const
{
    std::vector< Component > out;
    const std::size_t cells = cells_.size();
    std::size_t i = 0;
    while (i < cells) {
        if (!cells_[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < cells && cells_[j + 1])
            ++j;
        Component c;
        // Even cells are open gaps, odd cells are cut points.
        if (i % 2 == 1) {
            c.lower = cuts_[(i - 1) / 2];
            c.lower_closed = true;
        } else if (i > 0) {
            c.lower = cuts_[i / 2 - 1];
        }
        if (j % 2 == 1) {
            c.upper = cuts_[(j - 1) / 2];
            c.upper_closed = true;
        } else if (j / 2 < cuts_.size()) {
            c.upper = cuts_[j / 2];
        }
        out.push_back(std::move(c));
        i = j + 1;
    }
    return out;
}

namespace
{

std::string bound_text(const std::optional< Rat >& b, bool lower)
{
    if (!b)
        return lower ? "-inf" : "inf";
    return to_string(*b);
}

} // namespace

std::string Region::str() const
{
    if (is_empty())
        return "empty";
    if (is_full())
        return "R";
    std::string out;
    for (const auto& c : components()) {
        if (!out.empty())
            out += " u ";
        if (c.is_point()) {
            out += "{" + to_string(*c.lower) + "}";
            continue;
        }
        out += c.lower_closed ? '[' : '(';
        out += bound_text(c.lower, true);
        out += ',';
        out += bound_text(c.upper, false);
        out += c.upper_closed ? ']' : ')';
    }
    return out;
}

bool Region::contains(const Rat& x) const
{
    auto it = std::lower_bound(cuts_.begin(), cuts_.end(), x);
    const auto k = static_cast< std::size_t >(it - cuts_.begin());
    if (it != cuts_.end() && *it == x)
        return cells_[2 * k + 1];
    return cells_[2 * k];
}

bool Region::subset_of(const Region& other) const { return difference(*this, other).is_empty(); }

Region complement(const Region& r)
{
    std::vector< bool > cells(r.cells_.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
        cells[i] = !r.cells_[i];
    return Region{ r.cuts_, std::move(cells) };
}

Region unite(const Region& a, const Region& b)
{
    return Region::combine(a, b, [](bool x, bool y) { return x || y; });
}

Region intersect(const Region& a, const Region& b)
{
    return Region::combine(a, b, [](bool x, bool y) { return x && y; });
}

Region difference(const Region& a, const Region& b)
{
    return Region::combine(a, b, [](bool x, bool y) { return x && !y; });
}

Region bool_op(BoolOp kind, const Region& a, const Region* b)
{
    if (kind == BoolOp::Complement)
        return complement(a);
    if (b == nullptr)
        throw RegionError{ "bool_op: binary operation needs two regions" };
    switch (kind) {
    case BoolOp::Union: return unite(a, *b);
    case BoolOp::Intersect: return intersect(a, *b);
    case BoolOp::Difference: return difference(a, *b);
    case BoolOp::Complement: break;
    }
    return complement(a);
}

Region apply(TopoOp op, const Region& r)
{
    // Every point inside an open gap has a neighbourhood within that gap, so
    // gap bits are unchanged by all four operators; only cut points move.
    std::vector< bool > cells = r.cells_;
    for (std::size_t k = 0; k < r.cuts_.size(); ++k) {
        const bool left = r.cells_[2 * k];
        const bool self = r.cells_[2 * k + 1];
        const bool right = r.cells_[2 * k + 2];
        bool in = false;
        switch (op) {
        case TopoOp::Derivative: in = left || right; break;
        case TopoOp::Closure: in = left || self || right; break;
        case TopoOp::Interior: in = left && self && right; break;
        case TopoOp::PuncturedInterior: in = left && right; break;
        }
        cells[2 * k + 1] = in;
    }
    return Region{ r.cuts_, std::move(cells) };
}

Region comb(unsigned first, unsigned extra)
{
    std::vector< Component > parts;
    for (unsigned n = first; n <= first + extra; ++n)
        parts.push_back(Component::interval(inverse_power_of_two(2 * n + 1), false, inverse_power_of_two(2 * n), false));
    return Region::normalize(parts);
}

RegionClass classify(const Region& r)
{
    if (r.is_empty())
        return { RegionShape::Empty, std::nullopt };
    if (r.is_full())
        return { RegionShape::Full, std::nullopt };
    auto parts = r.components();
    if (parts.size() == 1 && parts.front().is_point())
        return { RegionShape::Singleton, parts.front().lower };
    auto holes = complement(r).components();
    if (holes.size() == 1 && holes.front().is_point())
        return { RegionShape::CoSingleton, holes.front().lower };
    return { RegionShape::Other, std::nullopt };
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

namespace
{

class RegionParser
{
public:
    explicit RegionParser(std::string_view text) : text_{ text } {}

    Region run()
    {
        skip();
        if (word("empty")) {
            finish();
            return Region::empty();
        }
        if (word("R")) {
            finish();
            return Region::full();
        }
        std::vector< Component > parts;
        parts.push_back(component());
        skip();
        while (at_ < text_.size()) {
            if (text_[at_] != 'u')
                fail("expected 'u' or end of input");
            ++at_;
            parts.push_back(component());
            skip();
        }
        return Region::normalize(parts);
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw RegionError{ "region syntax error at position " + std::to_string(at_) + ": " + what };
    }

    void skip()
    {
        while (at_ < text_.size() && std::isspace(static_cast< unsigned char >(text_[at_])))
            ++at_;
    }

    bool word(std::string_view w)
    {
        if (text_.substr(at_, w.size()) != w)
            return false;
        const std::size_t end = at_ + w.size();
        if (end < text_.size() && std::isalnum(static_cast< unsigned char >(text_[end])))
            return false;
        at_ = end;
        return true;
    }

    void finish()
    {
        skip();
        if (at_ != text_.size())
            fail("trailing input");
    }

    void expect(char c)
    {
        skip();
        if (at_ >= text_.size() || text_[at_] != c)
            fail(std::string("expected '") + c + "'");
        ++at_;
    }

    /// nullopt for an infinite bound; `sign` records which infinity.
    std::optional< Rat > bound(int& sign)
    {
        skip();
        const std::size_t start = at_;
        while (at_ < text_.size() && (std::isalnum(static_cast< unsigned char >(text_[at_])) || text_[at_] == '/' ||
                                      text_[at_] == '-' || text_[at_] == '+'))
            ++at_;
        std::string_view tok = text_.substr(start, at_ - start);
        if (tok == "inf" || tok == "+inf") {
            sign = 1;
            return std::nullopt;
        }
        if (tok == "-inf") {
            sign = -1;
            return std::nullopt;
        }
        sign = 0;
        if (tok.empty())
            fail("expected a rational endpoint");
        try {
            return parse_rat(tok);
        } catch (const RegionError& e) {
            fail(e.what());
        }
    }

    Component component()
    {
        skip();
        if (at_ >= text_.size())
            fail("expected '(', '[' or '{'");
        const char open = text_[at_];
        if (open == '{') {
            ++at_;
            int sign = 0;
            auto x = bound(sign);
            if (!x)
                fail("an isolated point must be finite");
            expect('}');
            return Component::point(*x);
        }
        if (open != '(' && open != '[')
            fail("expected '(', '[' or '{'");
        ++at_;
        int lo_sign = 0, hi_sign = 0;
        auto lo = bound(lo_sign);
        expect(',');
        auto hi = bound(hi_sign);
        skip();
        if (at_ >= text_.size() || (text_[at_] != ')' && text_[at_] != ']'))
            fail("expected ')' or ']'");
        const char close = text_[at_++];
        if (!lo && lo_sign > 0)
            fail("lower endpoint cannot be +inf");
        if (!hi && hi_sign < 0)
            fail("upper endpoint cannot be -inf");
        return Component::interval(lo, open == '[', hi, close == ']');
    }

    std::string_view text_;
    std::size_t at_ = 0;
};

} // namespace

Region Region::parse(std::string_view text) { return RegionParser{ text }.run(); }

} // namespace topomodal
