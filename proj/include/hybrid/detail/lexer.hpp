// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hybrid::detail {

struct Token {
    enum class Kind { ident, punct, end };
    Kind kind;
    std::string text;
    std::size_t pos;
};

// Identifiers, plus the punctuation ( ) . , @ -> ->>
std::vector<Token> tokenize(const std::string& text);

class TokenStream {
   public:
    explicit TokenStream(const std::string& text);
    const Token& peek(std::size_t ahead = 0) const;
    Token next();
    bool at(const std::string& text) const;
    bool accept(const std::string& text);
    void expect(const std::string& text);
    std::string expect_ident();
    bool at_end() const { return peek().kind == Token::Kind::end; }
    [[noreturn]] void fail(const std::string& what) const;

   private:
    std::string source_;
    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

}  // namespace hybrid::detail
