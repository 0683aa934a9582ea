#include "topomodal/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace topomodal
{

namespace
{

struct Spelling
{
    Kind kind;
    std::string_view text;
};

// Longest tokens first so that "<!=>" is not mistaken for a prefix of something shorter.
constexpr std::array< Spelling, 8 > modalities{ {
    { Kind::DiffBox, "[!=]" },
    { Kind::DiffDia, "<!=>" },
    { Kind::DBox, "[d]" },
    { Kind::DDia, "<d>" },
    { Kind::IBox, "[i]" },
    { Kind::CDia, "<c>" },
    { Kind::All, "[A]" },
    { Kind::Exists, "<E>" },
} };

std::string_view spelling(Kind k)
{
    if (k == Kind::Not)
        return "~";
    for (const auto& m : modalities)
        if (m.kind == k)
            return m.text;
    return "";
}

} // namespace

bool is_unary(Kind k) noexcept
{
    switch (k) {
    case Kind::Not:
    case Kind::DBox:
    case Kind::DDia:
    case Kind::IBox:
    case Kind::CDia:
    case Kind::DiffBox:
    case Kind::DiffDia:
    case Kind::All:
    case Kind::Exists:
        return true;
    default:
        return false;
    }
}

bool is_binary(Kind k) noexcept
{
    return k == Kind::And || k == Kind::Or || k == Kind::Implies;
}

Formula Formula::var(std::string name)
{
    return Formula{ std::make_shared< const Node >(Node{ Kind::Var, std::move(name), {} }) };
}

Formula Formula::top()
{
    static const Formula t{ std::make_shared< const Node >(Node{ Kind::Top, {}, {} }) };
    return t;
}

Formula Formula::bot()
{
    static const Formula b{ std::make_shared< const Node >(Node{ Kind::Bot, {}, {} }) };
    return b;
}

Formula Formula::unary(Kind kind, Formula child)
{
    if (!is_unary(kind))
        throw std::invalid_argument("Formula::unary: not a unary kind");
    return Formula{ std::make_shared< const Node >(Node{ kind, {}, { std::move(child) } }) };
}

Formula Formula::binary(Kind kind, Formula left, Formula right)
{
    if (!is_binary(kind))
        throw std::invalid_argument("Formula::binary: not a binary kind");
    return Formula{ std::make_shared< const Node >(Node{ kind, {}, { std::move(left), std::move(right) } }) };
}

Kind Formula::kind() const noexcept { return node_->kind; }
const std::string& Formula::name() const noexcept { return node_->name; }

const Formula& Formula::child() const
{
    if (node_->kids.empty())
        throw std::logic_error("Formula::child on a leaf");
    return node_->kids.front();
}

const Formula& Formula::left() const { return child(); }

const Formula& Formula::right() const
{
    if (node_->kids.size() != 2)
        throw std::logic_error("Formula::right on a non-binary node");
    return node_->kids[1];
}

const std::vector< Formula >& Formula::children() const { return node_->kids; }

std::size_t Formula::depth() const
{
    std::size_t d = 0;
    for (const auto& k : node_->kids)
        d = std::max(d, k.depth());
    return d + 1;
}

std::size_t Formula::size() const
{
    std::size_t s = 1;
    for (const auto& k : node_->kids)
        s += k.size();
    return s;
}

int Formula::compare(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return 0;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    if (x.kind != y.kind)
        return x.kind < y.kind ? -1 : 1;
    if (int c = x.name.compare(y.name); c != 0)
        return c < 0 ? -1 : 1;
    for (std::size_t i = 0; i < x.kids.size(); ++i)
        if (int c = compare(x.kids[i], y.kids[i]); c != 0)
            return c;
    return 0;
}

bool operator==(const Formula& a, const Formula& b) { return Formula::compare(a, b) == 0; }
bool operator<(const Formula& a, const Formula& b) { return Formula::compare(a, b) < 0; }

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

ParseError::ParseError(std::size_t position, std::vector< std::string > expected, const std::string& found)
    : std::runtime_error{ [&] {
          std::ostringstream os;
          os << "syntax error at position " << position << ": expected ";
          for (std::size_t i = 0; i < expected.size(); ++i)
              os << (i ? ", " : "") << expected[i];
          os << "; found " << found;
          return os.str();
      }() },
      position_{ position }, expected_{ std::move(expected) }
{
}

namespace
{

enum class Tok
{
    End,
    Neg,
    AndOp,
    OrOp,
    Arrow,
    LParen,
    RParen,
    Modal,
    True,
    False,
    Ident,
    Builtin,
};

struct Token
{
    Tok tok;
    std::size_t pos;
    std::string text;
    Kind modal = Kind::Var;
};

const std::vector< std::string >& unary_start()
{
    static const std::vector< std::string > v{ "'~'", "'[d]'", "'<d>'", "'[i]'", "'<c>'", "'[!=]'", "'<!=>'",
                                               "'[A]'", "'<E>'", "'true'", "'false'", "identifier", "'('" };
    return v;
}

class Parser
{
public:
    explicit Parser(std::string_view text) : text_{ text } { advance(); }

    Formula parse_all()
    {
        Formula f = implication();
        if (cur_.tok != Tok::End)
            fail({ "'&'", "'|'", "'->'", "end of input" });
        return f;
    }

private:
    [[noreturn]] void fail(std::vector< std::string > expected) const
    {
        std::string found = cur_.tok == Tok::End ? "end of input" : "'" + cur_.text + "'";
        throw ParseError{ cur_.pos, std::move(expected), found };
    }

    void advance()
    {
        while (at_ < text_.size() && std::isspace(static_cast< unsigned char >(text_[at_])))
            ++at_;
        cur_ = Token{ Tok::End, at_, {} };
        if (at_ >= text_.size())
            return;

        const std::size_t start = at_;
        const char c = text_[at_];
        auto single = [&](Tok t) {
            cur_ = Token{ t, start, std::string(1, c) };
            ++at_;
        };
        switch (c) {
        case '~': return single(Tok::Neg);
        case '&': return single(Tok::AndOp);
        case '|': return single(Tok::OrOp);
        case '(': return single(Tok::LParen);
        case ')': return single(Tok::RParen);
        default: break;
        }
        if (text_.substr(at_, 2) == "->") {
            cur_ = Token{ Tok::Arrow, start, "->" };
            at_ += 2;
            return;
        }
        if (c == '[' || c == '<') {
            for (const auto& m : modalities) {
                if (text_.substr(at_, m.text.size()) == m.text) {
                    cur_ = Token{ Tok::Modal, start, std::string(m.text), m.kind };
                    at_ += m.text.size();
                    return;
                }
            }
            cur_ = Token{ Tok::End, start, std::string(1, c) };
            throw ParseError{ start, { "'[d]'", "'<d>'", "'[i]'", "'<c>'", "'[!=]'", "'<!=>'", "'[A]'", "'<E>'" },
                              "'" + std::string(text_.substr(start, std::min< std::size_t >(4, text_.size() - start))) + "'" };
        }
        if (std::isalpha(static_cast< unsigned char >(c))) {
            std::size_t end = at_ + 1;
            while (end < text_.size() &&
                   (std::isalnum(static_cast< unsigned char >(text_[end])) || text_[end] == '_'))
                ++end;
            std::string word{ text_.substr(at_, end - at_) };
            at_ = end;
            if (word == "true")
                cur_ = Token{ Tok::True, start, word };
            else if (word == "false")
                cur_ = Token{ Tok::False, start, word };
            else if (std::islower(static_cast< unsigned char >(c))) {
                bool lower = std::all_of(word.begin(), word.end(), [](char ch) {
                    return std::islower(static_cast< unsigned char >(ch)) || std::isdigit(static_cast< unsigned char >(ch)) ||
                           ch == '_';
                });
                if (!lower) {
                    cur_ = Token{ Tok::Ident, start, word };
                    throw ParseError{ start, { "identifier matching [a-z][a-z0-9_]*" }, "'" + word + "'" };
                }
                cur_ = Token{ Tok::Ident, start, word };
            } else
                cur_ = Token{ Tok::Builtin, start, word };
            return;
        }
        cur_ = Token{ Tok::End, start, std::string(1, c) };
        throw ParseError{ start, unary_start(), "'" + std::string(1, c) + "'" };
    }

    Formula implication()
    {
        Formula lhs = disjunction();
        if (cur_.tok == Tok::Arrow) {
            advance();
            return Formula::implies(std::move(lhs), implication());
        }
        return lhs;
    }

    Formula disjunction()
    {
        Formula acc = conjunction();
        while (cur_.tok == Tok::OrOp) {
            advance();
            acc = Formula::disj(std::move(acc), conjunction());
        }
        return acc;
    }

    Formula conjunction()
    {
        Formula acc = prefixed();
        while (cur_.tok == Tok::AndOp) {
            advance();
            acc = Formula::conj(std::move(acc), prefixed());
        }
        return acc;
    }

    Formula prefixed()
    {
        if (cur_.tok == Tok::Neg) {
            advance();
            return Formula::neg(prefixed());
        }
        if (cur_.tok == Tok::Modal) {
            Kind k = cur_.modal;
            advance();
            return Formula::unary(k, prefixed());
        }
        return atom();
    }

    Formula atom()
    {
        switch (cur_.tok) {
        case Tok::True: advance(); return Formula::top();
        case Tok::False: advance(); return Formula::bot();
        case Tok::Ident: {
            Formula v = Formula::var(cur_.text);
            advance();
            return v;
        }
        case Tok::Builtin: {
            const Formula* b = builtin::lookup(cur_.text);
            if (b == nullptr) {
                std::vector< std::string > expected;
                for (const auto& n : builtin::names())
                    expected.push_back("'" + n + "'");
                fail(std::move(expected));
            }
            advance();
            return *b;
        }
        case Tok::LParen: {
            advance();
            Formula inner = implication();
            if (cur_.tok != Tok::RParen)
                fail({ "'&'", "'|'", "'->'", "')'" });
            advance();
            return inner;
        }
        default: fail(unary_start());
        }
    }

    std::string_view text_;
    std::size_t at_ = 0;
    Token cur_{ Tok::End, 0, {} };
};

int level(const Formula& f)
{
    switch (f.kind()) {
    case Kind::Implies: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    default: return 4;
    }
}

void render_into(std::string& out, const Formula& f, int min_level)
{
    const bool paren = level(f) < min_level;
    if (paren)
        out += '(';
    switch (f.kind()) {
    case Kind::Var: out += f.name(); break;
    case Kind::Top: out += "true"; break;
    case Kind::Bot: out += "false"; break;
    case Kind::Implies:
        render_into(out, f.left(), 2);
        out += " -> ";
        render_into(out, f.right(), 1);
        break;
    case Kind::Or:
        render_into(out, f.left(), 2);
        out += " | ";
        render_into(out, f.right(), 3);
        break;
    case Kind::And:
        render_into(out, f.left(), 3);
        out += " & ";
        render_into(out, f.right(), 4);
        break;
    default:
        out += spelling(f.kind());
        render_into(out, f.child(), 4);
        break;
    }
    if (paren)
        out += ')';
}

void collect_vars(const Formula& f, std::set< std::string >& out)
{
    if (f.kind() == Kind::Var)
        out.insert(f.name());
    for (const auto& k : f.children())
        collect_vars(k, out);
}

void collect_subformulas(const Formula& f, std::set< Formula >& out)
{
    if (!out.insert(f).second)
        return;
    for (const auto& k : f.children())
        collect_subformulas(k, out);
}

} // namespace

Formula parse(std::string_view text)
{
    return Parser{ text }.parse_all();
}

std::string render(const Formula& f)
{
    std::string out;
    render_into(out, f, 1);
    return out;
}

std::set< std::string > vars(const Formula& f)
{
    std::set< std::string > out;
    collect_vars(f, out);
    return out;
}

std::set< Formula > subformulas(const Formula& f)
{
    std::set< Formula > out;
    collect_subformulas(f, out);
    return out;
}

ClosureSet closure_set(const std::set< Formula >& generators)
{
    ClosureSet result;
    std::vector< Formula > work(generators.begin(), generators.end());
    while (!work.empty()) {
        Formula f = std::move(work.back());
        work.pop_back();
        if (!result.members_.insert(f).second)
            continue;
        for (const auto& k : f.children())
            work.push_back(k);
        if (f.kind() != Kind::Not)
            work.push_back(Formula::neg(f));
    }
    return result;
}

bool in_interior_difference_fragment(const Formula& f)
{
    switch (f.kind()) {
    case Kind::DBox:
    case Kind::DDia:
    case Kind::All:
    case Kind::Exists: return false;
    default: break;
    }
    for (const auto& k : f.children())
        if (!in_interior_difference_fragment(k))
            return false;
    return true;
}

namespace builtin
{

const Formula& kur()
{
    static const Formula f = parse("[d]([i]p | [i]~p) -> [d]p | [d]~p");
    return f;
}

const Formula& box_kur()
{
    static const Formula f = Formula::unary(Kind::DBox, kur());
    return f;
}

const Formula& kur_idiff()
{
    static const Formula f = parse("~q & [!=]q & [i](q -> [i]p | [i]~p) -> [i](q -> p) | [i](q -> ~p)");
    return f;
}

const Formula* lookup(std::string_view name)
{
    if (name == "Kur")
        return &kur();
    if (name == "BoxKur")
        return &box_kur();
    if (name == "KurIDiff")
        return &kur_idiff();
    return nullptr;
}

std::vector< std::string > names() { return { "Kur", "BoxKur", "KurIDiff" }; }

} // namespace builtin

} // namespace topomodal
