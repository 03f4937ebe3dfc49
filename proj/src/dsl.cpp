#include "repcat/dsl.hpp"

#include <cctype>
#include <optional>
#include <stdexcept>

namespace repcat {

namespace {

struct Parser {
    const std::string& text;
    const CategoryContext& ctx;
    int conductor;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& why, size_t at) const {
        int line = 1, column = 1;
        for (size_t i = 0; i < at && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw std::invalid_argument("parse error at line " +
                                    std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + why);
    }

    void skip_ws() {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               std::isalpha(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start) fail("expected an atom", start);
        return text.substr(start, pos - start);
    }

    std::string digits() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == start) fail("expected a number", start);
        return text.substr(start, pos - start);
    }

    // Raw contents of a bracket pair; labels pass through verbatim.
    std::string bracket() {
        skip_ws();
        size_t at = pos;
        if (!eat('[')) fail("expected '['", at);
        size_t close = text.find(']', pos);
        if (close == std::string::npos) fail("missing ']'", at);
        std::string inside = text.substr(pos, close - pos);
        pos = close + 1;
        return inside;
    }

    static std::string trimmed(const std::string& s) {
        size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
            --b;
        return s.substr(a, b - a);
    }

    std::vector<std::string> labels(const std::string& inside, size_t at) {
        std::vector<std::string> out;
        if (trimmed(inside).empty()) return out;
        size_t from = 0;
        while (true) {
            size_t comma = inside.find(',', from);
            std::string piece = trimmed(inside.substr(
                from, comma == std::string::npos ? comma : comma - from));
            if (piece.empty()) fail("empty label", at);
            out.push_back(piece);
            if (comma == std::string::npos) break;
            from = comma + 1;
        }
        return out;
    }

    // "a,b -> c" split at the single arrow.
    std::pair<std::vector<std::string>, std::vector<std::string>> arrow(
        const std::string& inside, size_t at) {
        size_t arr = inside.find("->");
        if (arr == std::string::npos ||
            inside.find("->", arr + 2) != std::string::npos)
            fail("expected exactly one '->'", at);
        return {labels(inside.substr(0, arr), at),
                labels(inside.substr(arr + 2), at)};
    }

    Morphism cell_morphism(const Cell& c) const {
        return Morphism::of(Diagram{c.in, c.out, {{c}}}, conductor);
    }

    Morphism atom() {
        size_t at = pos;
        if (eat('(')) {
            Morphism m = morphism();
            if (!eat(')')) fail("expected ')'", pos);
            return m;
        }
        std::string name = ident();
        if (name == "id")
            return Morphism::identity(labels(bracket(), at), conductor);
        if (name == "m" || name == "s") {
            auto [ins, outs] = arrow(bracket(), at);
            if (name == "m") {
                if (ins.size() != 2 || outs.size() != 1)
                    fail("a merge reads m[a,b->c]", at);
                return cell_morphism(
                    ctx.kind == CategoryContext::Kind::CnIrr
                        ? Cell::merge_cn(ins[0], ins[1], outs[0])
                        : Cell::merge_g(ins[0], ins[1], outs[0]));
            }
            if (ins.size() != 1 || outs.size() != 2)
                fail("a split reads s[c->a,b]", at);
            return cell_morphism(ctx.kind == CategoryContext::Kind::CnIrr
                                     ? Cell::split_cn(ins[0], outs[0], outs[1])
                                     : Cell::split_g(ins[0], outs[0], outs[1]));
        }
        if (name == "down" || name == "up") {
            auto word = labels(bracket(), at);
            if (word.size() != 1)
                fail(name + "[...] takes a single label", at);
            return cell_morphism(name == "down" ? Cell::star_down(word[0])
                                                : Cell::star_up(word[0]));
        }
        if (name == "u" || name == "d") {
            if (ctx.graph == nullptr)
                fail(name + "[...] needs a graph category", at);
            Path p{labels(bracket(), at)};
            if (p.nodes.empty()) fail("a path needs at least one node", at);
            try {
                return Morphism::of(name == "u" ? u_path(p, *ctx.graph)
                                                : d_path(p, *ctx.graph),
                                    conductor);
            } catch (const std::exception& e) {
                fail(e.what(), at);
            }
        }
        if (name == "funnel") {
            if (ctx.kind != CategoryContext::Kind::CnIrr)
                fail("funnel[...] needs the cyclic-residue category", at);
            try {
                return Morphism::of(funnel_cn(labels(bracket(), at), ctx.n),
                                    conductor);
            } catch (const std::exception& e) {
                fail(e.what(), at);
            }
        }
        fail("unknown atom \"" + name + "\"", at);
    }

    Morphism factor() {
        Morphism f = atom();
        while (eat('*')) f = tensor(f, atom());
        return f;
    }

    Morphism term() {
        Morphism t = factor();
        while (eat(';')) {
            size_t at = pos;
            Morphism next = factor();
            try {
                t = compose(next, t);
            } catch (const std::invalid_argument& e) {
                fail(e.what(), at);
            }
        }
        return t;
    }

    std::optional<Scalar> scalar_prefix() {
        Scalar s(1, conductor);
        bool any = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            mpz_class p(digits());
            mpz_class q(1);
            if (eat('/')) {
                size_t at = pos;
                q = mpz_class(digits());
                if (q == 0) fail("zero denominator", at);
            }
            Rational r(p, q);
            r.canonicalize();
            s = Scalar(r, conductor);
            any = true;
        }
        if (peek() == 'z' &&
            (pos + 1 >= text.size() ||
             !std::isalnum(static_cast<unsigned char>(text[pos + 1])))) {
            ++pos;
            long k = 1;
            if (eat('^')) k = std::stol(digits());
            s = s * Scalar::root_of_unity(conductor, k);
            any = true;
        }
        if (!any) return std::nullopt;
        return s;
    }

    Morphism signed_term(bool negative) {
        std::optional<Scalar> s = scalar_prefix();
        Morphism t = term();
        if (s) t = t.scaled(*s);
        if (negative) t = t.scaled(Scalar(-1, conductor));
        return t;
    }

    Morphism morphism() {
        Morphism total = signed_term(eat('-'));
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos;
            size_t at = pos;
            Morphism next = signed_term(c == '-');
            try {
                total = total + next;
            } catch (const std::invalid_argument& e) {
                fail(e.what(), at);
            }
        }
        return total;
    }
};

}  // namespace

Morphism parse_dsl(const std::string& text, const CategoryContext& ctx,
                   int conductor) {
    Parser p{text, ctx, conductor};
    Morphism m = p.morphism();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("unexpected trailing input", p.pos);
    ValidationReport report = validate(m, ctx);
    if (!report.pass) {
        std::string why = "morphism fails validation: ";
        for (size_t i = 0; i < report.problems.size(); ++i) {
            if (i) why += "; ";
            why += report.problems[i];
        }
        throw std::invalid_argument(why);
    }
    return m;
}

}  // namespace repcat
