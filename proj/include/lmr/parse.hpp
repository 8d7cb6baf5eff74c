#pragma once
// Concrete syntax.
//
// Terms:
//   term    ::= '\' ident '.' term | 'let' let-rest | mergeexp
//   mergeexp::= sumexp ('++' record)*
//   sumexp  ::= appexp ('+' appexp)*
//   appexp  ::= postfix+
//   postfix ::= atom ('.' ident)*
//   atom    ::= ident | int | '()' | '(+)' | record | '(' term ')'
//   record  ::= '{' [ident '=' term (',' ident '=' term)*] '}'
//   let-rest::= ident '=' term 'in' term
//             | '(' ident ',' ident ')' '=' term 'in' term
// 'let' is sugar and is desugared while parsing; recursive bindings are
// rejected. The right operand of '++' must be a record literal.
//
// Types:
//   type    ::= inter ('->' type)?
//   inter   ::= prod ('&' prod)*
//   prod    ::= tatom ('*' prod)?
//   tatom   ::= 'w' | ident | '{' [ident ':' type (',' ...)*] '}' | '(' type ')'
// Capitalized identifiers are ground atoms, lowercase ones type variables.

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lmr/term.hpp"
#include "lmr/type.hpp"

namespace lmr {

struct ParseError : std::runtime_error {
    enum class Kind { Generic, MergeRhsNotRecord, DuplicateLabel, RecursiveLet, UnexpectedEnd };

    ParseError(std::string msg, std::size_t position, Kind k = Kind::Generic)
        : std::runtime_error(msg + " (at offset " + std::to_string(position) + ")"),
          pos(position),
          kind(k) {}

    std::size_t pos;
    Kind kind;
};

namespace detail {

enum class Tok {
    Ident, Int, Lambda, Dot, LParen, RParen, LBrace, RBrace,
    Comma, Eq, PlusPlus, Plus, Arrow, Colon, Amp, Star, Let, In, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (ident_start(c)) {
            ++i;
            while (i < src.size() && ident_char(src[i])) ++i;
            std::string word(src.substr(start, i - start));
            if (word == "let")
                out.push_back({Tok::Let, word, start});
            else if (word == "in")
                out.push_back({Tok::In, word, start});
            else
                out.push_back({Tok::Ident, word, start});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            ++i;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            out.push_back({Tok::Int, std::string(src.substr(start, i - start)), start});
            continue;
        }
        switch (c) {
            case '\\': out.push_back({Tok::Lambda, "\\", start}); ++i; break;
            case '.': out.push_back({Tok::Dot, ".", start}); ++i; break;
            case '(': out.push_back({Tok::LParen, "(", start}); ++i; break;
            case ')': out.push_back({Tok::RParen, ")", start}); ++i; break;
            case '{': out.push_back({Tok::LBrace, "{", start}); ++i; break;
            case '}': out.push_back({Tok::RBrace, "}", start}); ++i; break;
            case ',': out.push_back({Tok::Comma, ",", start}); ++i; break;
            case '=': out.push_back({Tok::Eq, "=", start}); ++i; break;
            case ':': out.push_back({Tok::Colon, ":", start}); ++i; break;
            case '&': out.push_back({Tok::Amp, "&", start}); ++i; break;
            case '*': out.push_back({Tok::Star, "*", start}); ++i; break;
            case '+':
                if (i + 1 < src.size() && src[i + 1] == '+') {
                    out.push_back({Tok::PlusPlus, "++", start});
                    i += 2;
                } else {
                    out.push_back({Tok::Plus, "+", start});
                    ++i;
                }
                break;
            case '-':
                if (i + 1 < src.size() && src[i + 1] == '>') {
                    out.push_back({Tok::Arrow, "->", start});
                    i += 2;
                    break;
                }
                throw ParseError("unexpected character '-'", start);
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }
    out.push_back({Tok::End, "", src.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    Term parse_term_all() {
        Term t = term();
        expect(Tok::End, "trailing input after term");
        return t;
    }

    Type parse_type_all() {
        Type t = type();
        expect(Tok::End, "trailing input after type");
        return t;
    }

private:
    const Token& peek(int ahead = 0) const {
        std::size_t i = pos_ + static_cast<std::size_t>(ahead);
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool eat(Tok k) {
        if (!at(k)) return false;
        next();
        return true;
    }
    Token expect(Tok k, const std::string& what) {
        if (!at(k)) {
            auto kind = at(Tok::End) ? ParseError::Kind::UnexpectedEnd : ParseError::Kind::Generic;
            throw ParseError("expected " + what + ", got '" + peek().text + "'", peek().pos, kind);
        }
        return next();
    }

    // ---- terms ----

    Term term() {
        if (eat(Tok::Lambda)) {
            Token b = expect(Tok::Ident, "binder");
            expect(Tok::Dot, "'.' after binder");
            return Term::lam(b.text, term());
        }
        if (at(Tok::Let)) return let_form();
        return merge_exp();
    }

    Term let_form() {
        Token kw = next();  // 'let'
        if (eat(Tok::LParen)) {
            Token x = expect(Tok::Ident, "pattern variable");
            expect(Tok::Comma, "',' in pair pattern");
            Token y = expect(Tok::Ident, "pattern variable");
            expect(Tok::RParen, "')' closing pair pattern");
            expect(Tok::Eq, "'=' in let");
            Term bound = term();
            expect(Tok::In, "'in'");
            Term body = term();
            if (free_vars(bound).count(x.text) || free_vars(bound).count(y.text))
                throw ParseError("recursive let binding", kw.pos, ParseError::Kind::RecursiveLet);
            return let_pair_term(x.text, y.text, bound, body);
        }
        Token x = expect(Tok::Ident, "let-bound variable");
        expect(Tok::Eq, "'=' in let");
        Term bound = term();
        expect(Tok::In, "'in'");
        Term body = term();
        if (free_vars(bound).count(x.text))
            throw ParseError("recursive let binding of '" + x.text + "'", kw.pos,
                             ParseError::Kind::RecursiveLet);
        return let_term(x.text, bound, body);
    }

    Term merge_exp() {
        Term t = sum_exp();
        while (at(Tok::PlusPlus)) {
            Token op = next();
            if (!at(Tok::LBrace))
                throw ParseError("right operand of '++' must be a record literal", op.pos,
                                 ParseError::Kind::MergeRhsNotRecord);
            t = Term::merge(t, record_lit());
        }
        return t;
    }

    Term sum_exp() {
        Term t = app_exp();
        while (eat(Tok::Plus)) t = plus_of(t, app_exp());
        return t;
    }

    bool starts_atom() const {
        switch (peek().kind) {
            case Tok::Ident:
            case Tok::Int:
            case Tok::LParen:
            case Tok::LBrace:
                return true;
            default:
                return false;
        }
    }

    Term app_exp() {
        Term t = postfix();
        while (starts_atom()) t = Term::app(t, postfix());
        return t;
    }

    Term postfix() {
        Term t = atom();
        while (at(Tok::Dot)) {
            next();
            Token l = expect(Tok::Ident, "field label after '.'");
            t = Term::sel(t, l.text);
        }
        return t;
    }

    Term atom() {
        const Token& tk = peek();
        switch (tk.kind) {
            case Tok::Ident:
                next();
                return Term::var(tk.text);
            case Tok::Int:
                next();
                return Term::integer(std::stoll(tk.text));
            case Tok::LBrace:
                return Term::record(record_lit());
            case Tok::LParen: {
                next();
                if (eat(Tok::RParen)) return Term::unit();
                if (at(Tok::Plus)) {
                    next();
                    expect(Tok::RParen, "')' after '+'");
                    return Term::plus();
                }
                Term t = term();
                expect(Tok::RParen, "')'");
                return t;
            }
            default:
                throw ParseError("expected a term, got '" + tk.text + "'", tk.pos,
                                 tk.kind == Tok::End ? ParseError::Kind::UnexpectedEnd
                                                     : ParseError::Kind::Generic);
        }
    }

    RecordLit record_lit() {
        Token open = expect(Tok::LBrace, "'{'");
        std::vector<RecordEntry> entries;
        if (!at(Tok::RBrace)) {
            do {
                Token l = expect(Tok::Ident, "field label");
                expect(Tok::Eq, "'=' after field label");
                entries.push_back({l.text, term()});
            } while (eat(Tok::Comma));
        }
        expect(Tok::RBrace, "'}'");
        try {
            return RecordLit(std::move(entries));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), open.pos, ParseError::Kind::DuplicateLabel);
        }
    }

    // ---- types ----

    Type type() {
        Type t = type_inter();
        if (eat(Tok::Arrow)) return Type::arrow(t, type());
        return t;
    }

    Type type_inter() {
        Type t = type_prod();
        while (eat(Tok::Amp)) t = Type::inter(t, type_prod());
        return t;
    }

    Type type_prod() {
        Type t = type_atom();
        if (eat(Tok::Star)) return product_type(t, type_prod());
        return t;
    }

    Type type_atom() {
        const Token& tk = peek();
        switch (tk.kind) {
            case Tok::Ident: {
                next();
                if (tk.text == "w") return Type::omega();
                if (std::isupper(static_cast<unsigned char>(tk.text[0]))) return Type::atom(tk.text);
                return Type::var(tk.text);
            }
            case Tok::LBrace: {
                next();
                std::vector<std::pair<std::string, Type>> fields;
                std::set<std::string> seen;
                if (!at(Tok::RBrace)) {
                    do {
                        Token l = expect(Tok::Ident, "field label");
                        if (!seen.insert(l.text).second)
                            throw ParseError("duplicate record-type label: " + l.text, l.pos,
                                             ParseError::Kind::DuplicateLabel);
                        expect(Tok::Colon, "':' after field label");
                        fields.push_back({l.text, type()});
                    } while (eat(Tok::Comma));
                }
                expect(Tok::RBrace, "'}'");
                if (fields.empty())
                    throw ParseError("empty record type", tk.pos);
                return record_type(fields);
            }
            case Tok::LParen: {
                next();
                Type t = type();
                expect(Tok::RParen, "')'");
                return t;
            }
            default:
                throw ParseError("expected a type, got '" + tk.text + "'", tk.pos,
                                 tk.kind == Tok::End ? ParseError::Kind::UnexpectedEnd
                                                     : ParseError::Kind::Generic);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Term parse_term(std::string_view source) { return detail::Parser(source).parse_term_all(); }
inline Type parse_type(std::string_view source) { return detail::Parser(source).parse_type_all(); }

}  // namespace lmr
