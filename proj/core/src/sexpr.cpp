// SPDX-License-Identifier: Apache-2.0
#include "sexpr.hpp"

#include <cctype>

#include "nlplan/error.hpp"

namespace nlplan::detail {
namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_top() {
    skip_space();
    if (at_end()) throw ParseError("empty input", line_, column_);
    SExpr e = read();
    skip_space();
    if (!at_end()) throw ParseError("unexpected text after top-level expression", line_, column_);
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (!at_end()) {
      char c = text_[pos_];
      if (c == ';') {
        while (!at_end() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.column = column_;
    char c = text_[pos_];
    if (c == ')') throw ParseError("unexpected ')'", line_, column_);
    if (c == '(') {
      advance();
      e.is_list = true;
      for (;;) {
        skip_space();
        if (at_end()) throw ParseError("unbalanced '(' opened here", e.line, e.column);
        if (text_[pos_] == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    while (!at_end()) {
      c = text_[pos_];
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c))) break;
      e.symbol.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

SExpr read_sexpr(std::string_view text) { return Reader(text).read_top(); }

}  // namespace nlplan::detail
