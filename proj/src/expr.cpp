#include "dertool/expr.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace dertool {

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t pos;
    Rat num;          // Tok::Num
    std::string text; // Tok::Ident
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return cur_; }
    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        cur_.pos = i_;
        if (i_ >= s_.size()) {
            cur_.kind = Tok::End;
            return;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            std::size_t num_end = j;
            Int num(s_.substr(i_, num_end - i_));
            Int den(1);
            if (j < s_.size() && s_[j] == '/') {
                std::size_t k = j + 1;
                std::size_t d0 = k;
                while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) ++k;
                if (k == d0) throw ParseError(j, "expected digits after '/'");
                den = Int(s_.substr(d0, k - d0));
                if (den == 0) throw ParseError(d0, "zero denominator");
                j = k;
            }
            cur_.kind = Tok::Num;
            cur_.num = Rat(num, den);
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            cur_.kind = Tok::Ident;
            cur_.text = s_.substr(i_, j - i_);
            i_ = j;
            return;
        }
        switch (c) {
        case '+': cur_.kind = Tok::Plus; break;
        case '-': cur_.kind = Tok::Minus; break;
        case '*': cur_.kind = Tok::Star; break;
        case '^': cur_.kind = Tok::Caret; break;
        case '(': cur_.kind = Tok::LParen; break;
        case ')': cur_.kind = Tok::RParen; break;
        default: throw ParseError(i_, std::string("unexpected character '") + c + "'");
        }
        ++i_;
    }

    const std::string& s_;
    std::size_t i_ = 0;
    Token cur_;
};

// Values during evaluation: a bare scalar, or an element. Scalars stay
// symbolic until they must combine with an element, so that non-unital
// algebras still accept products like 3/2*E12.
template <class Ctx>
class Parser {
    using E = typename Ctx::Elem;

    struct Value {
        std::optional<Rat> scalar;
        std::optional<E> elem;
    };

public:
    Parser(const std::string& text, Ctx ctx) : lex_(text), ctx_(std::move(ctx)) {}

    E run() {
        Value v = expr();
        if (lex_.peek().kind != Tok::End)
            throw ParseError(lex_.peek().pos, "trailing input");
        if (v.elem) return *v.elem;
        if (v.scalar->is_zero()) return ctx_.zero();
        return ctx_.promote(*v.scalar, 0);
    }

private:
    Value expr() {
        bool neg = false;
        if (lex_.peek().kind == Tok::Plus) lex_.take();
        else if (lex_.peek().kind == Tok::Minus) { lex_.take(); neg = true; }
        Value acc = term();
        if (neg) acc = negate(acc);
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            bool minus = lex_.take().kind == Tok::Minus;
            Value rhs = term();
            if (minus) rhs = negate(rhs);
            acc = add(acc, rhs, lex_.peek().pos);
        }
        return acc;
    }

    Value term() {
        Value acc = factor();
        while (lex_.peek().kind == Tok::Star) {
            lex_.take();
            acc = mul(acc, factor());
        }
        return acc;
    }

    Value factor() {
        Value base = primary();
        if (lex_.peek().kind == Tok::Caret) {
            std::size_t pos = lex_.take().pos;
            Token t = lex_.peek();
            if (t.kind != Tok::Num || denominator(t.num) != 1 || t.num < 0)
                throw ParseError(pos, "exponent must be a nonnegative integer");
            lex_.take();
            unsigned k = static_cast<unsigned>(numerator(t.num));
            if (k == 0) return Value{Rat(1), std::nullopt};
            Value acc = base;
            for (unsigned i = 1; i < k; ++i) acc = mul(acc, base);
            return acc;
        }
        return base;
    }

    Value primary() {
        Token t = lex_.peek();
        switch (t.kind) {
        case Tok::Num:
            lex_.take();
            return Value{t.num, std::nullopt};
        case Tok::Ident: {
            lex_.take();
            if (t.text == "t") return Value{std::nullopt, ctx_.var_t(t.pos)};
            return Value{std::nullopt, ctx_.name(t.text, t.pos)};
        }
        case Tok::LParen: {
            lex_.take();
            Value v = expr();
            if (lex_.peek().kind != Tok::RParen)
                throw ParseError(lex_.peek().pos, "expected ')'");
            lex_.take();
            return v;
        }
        default:
            throw ParseError(t.pos, "expected a rational, a basis name, 't' or '('");
        }
    }

    Value negate(Value v) {
        if (v.scalar) return Value{Rat(-*v.scalar), std::nullopt};
        return Value{std::nullopt, scale(Rat(-1), *v.elem)};
    }

    Value add(Value a, Value b, std::size_t pos) {
        if (a.scalar && b.scalar) return Value{*a.scalar + *b.scalar, std::nullopt};
        E ea = a.elem ? *a.elem : ctx_.promote(*a.scalar, pos);
        E eb = b.elem ? *b.elem : ctx_.promote(*b.scalar, pos);
        return Value{std::nullopt, ea + eb};
    }

    Value mul(Value a, Value b) {
        if (a.scalar && b.scalar) return Value{*a.scalar * *b.scalar, std::nullopt};
        if (a.scalar) return Value{std::nullopt, scale(*a.scalar, *b.elem)};
        if (b.scalar) return Value{std::nullopt, scale(*b.scalar, *a.elem)};
        return Value{std::nullopt, *a.elem * *b.elem};
    }

    Lexer lex_;
    Ctx ctx_;
};

struct FinCtx {
    using Elem = AlgElem;
    AlgebraPtr alg;

    Elem zero() const { return zero_elem(alg); }
    Elem name(const std::string& n, std::size_t) const {
        const auto& names = alg->basis_names();
        for (int i = 0; i < alg->dim(); ++i)
            if (names[i] == n) return basis_elem(alg, i);
        throw UnknownBasisName(n);
    }
    Elem var_t(std::size_t pos) const {
        // Allow an algebra that happens to name a basis element 't'.
        const auto& names = alg->basis_names();
        for (int i = 0; i < alg->dim(); ++i)
            if (names[i] == "t") return basis_elem(alg, i);
        throw ParseError(pos, "'t' is only valid against a polynomial backend");
    }
    Elem promote(const Rat& r, std::size_t pos) const {
        if (r.is_zero()) return zero();
        if (!alg->unit())
            throw ParseError(pos, "scalar term needs a unital algebra");
        return scale(r, unit_elem(alg));
    }
};

struct PolyCtx {
    using Elem = PolyExtElem;
    PolyAlgPtr alg;

    Elem zero() const { return zero_pelem(alg); }
    Elem name(const std::string& n, std::size_t) const {
        const auto& names = alg->coeff->basis_names();
        for (int i = 0; i < alg->coeff->dim(); ++i)
            if (names[i] == n) return const_pelem(alg, basis_elem(alg->coeff, i));
        throw UnknownBasisName(n);
    }
    Elem var_t(std::size_t pos) const {
        if (!alg->coeff->unit())
            throw ParseError(pos, "'t' needs a unital coefficient algebra");
        return t_pelem(alg);
    }
    Elem promote(const Rat& r, std::size_t pos) const {
        if (r.is_zero()) return zero();
        if (!alg->coeff->unit())
            throw ParseError(pos, "scalar term needs a unital algebra");
        return const_pelem(alg, scale(r, unit_elem(alg->coeff)));
    }
};

struct PrintTerm {
    Rat coeff;
    std::string symbol; // "" for a plain scalar term
};

std::string join_terms(const std::vector<PrintTerm>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& t : terms) {
        bool neg = t.coeff < 0;
        Rat mag = neg ? Rat(-t.coeff) : t.coeff;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (t.symbol.empty()) {
            out += rat_to_string(mag);
        } else if (mag == 1) {
            out += t.symbol;
        } else {
            out += rat_to_string(mag) + "*" + t.symbol;
        }
    }
    return out;
}

std::string term_symbol(const std::string& basis_name, int tdeg) {
    std::string sym;
    if (basis_name != "1") sym = basis_name;
    if (tdeg >= 1) {
        if (!sym.empty()) sym += "*";
        sym += tdeg == 1 ? "t" : "t^" + std::to_string(tdeg);
    }
    return sym;
}

void collect_terms(const AlgElem& a, int tdeg, std::vector<PrintTerm>& out) {
    const auto& names = a.algebra()->basis_names();
    for (int i = 0; i < a.algebra()->dim(); ++i) {
        const Rat& c = a.coeffs()[i];
        if (c.is_zero()) continue;
        out.push_back(PrintTerm{c, term_symbol(names[i], tdeg)});
    }
}

} // namespace

AlgElem parse_fin_elem(const std::string& text, const AlgebraPtr& alg) {
    return Parser<FinCtx>(text, FinCtx{alg}).run();
}

PolyExtElem parse_poly_elem(const std::string& text, const PolyAlgPtr& alg) {
    return Parser<PolyCtx>(text, PolyCtx{alg}).run();
}

std::string print_elem(const AlgElem& a) {
    std::vector<PrintTerm> terms;
    collect_terms(a, 0, terms);
    return join_terms(terms);
}

std::string print_elem(const PolyExtElem& a) {
    std::vector<PrintTerm> terms;
    for (int k = 0; k <= a.degree(); ++k) collect_terms(a.coeff(k), k, terms);
    return join_terms(terms);
}

} // namespace dertool
