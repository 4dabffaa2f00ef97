// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include "hybrid/detail/lexer.hpp"

#include <cctype>

#include "hybrid/surface.hpp"

namespace hybrid::detail {

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto ident_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            out.push_back({Token::Kind::ident, text.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (text.compare(i, 3, "->>") == 0) {
            out.push_back({Token::Kind::punct, "->>", i});
            i += 3;
            continue;
        }
        if (text.compare(i, 2, "->") == 0) {
            out.push_back({Token::Kind::punct, "->", i});
            i += 2;
            continue;
        }
        if (c == '(' || c == ')' || c == '.' || c == ',' || c == '@') {
            out.push_back({Token::Kind::punct, std::string(1, c), i});
            ++i;
            continue;
        }
        throw parse_error("unexpected character '" + std::string(1, c) + "' at offset " +
                          std::to_string(i));
    }
    out.push_back({Token::Kind::end, "", text.size()});
    return out;
}

TokenStream::TokenStream(const std::string& text) : source_(text), toks_(tokenize(text)) {}

const Token& TokenStream::peek(std::size_t ahead) const {
    std::size_t k = i_ + ahead;
    return k < toks_.size() ? toks_[k] : toks_.back();
}

Token TokenStream::next() {
    Token t = peek();
    if (i_ < toks_.size() - 1) ++i_;
    return t;
}

bool TokenStream::at(const std::string& text) const {
    return peek().kind != Token::Kind::end && peek().text == text;
}

bool TokenStream::accept(const std::string& text) {
    if (!at(text)) return false;
    next();
    return true;
}

void TokenStream::expect(const std::string& text) {
    if (!accept(text)) fail("expected '" + text + "'");
}

std::string TokenStream::expect_ident() {
    if (peek().kind != Token::Kind::ident) fail("expected identifier");
    return next().text;
}

void TokenStream::fail(const std::string& what) const {
    const Token& t = peek();
    std::string got = t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
    throw parse_error(what + " at offset " + std::to_string(t.pos) + ", got " + got);
}

}  // namespace hybrid::detail
