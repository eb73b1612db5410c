// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nlplan::detail {

// Parenthesised tree with source positions. Symbols are lowercased.
struct SExpr {
  bool is_list = false;
  std::string symbol;
  std::vector<SExpr> items;
  int line = 1;
  int column = 1;

  bool is_symbol() const noexcept { return !is_list; }
  bool is_symbol(std::string_view s) const noexcept { return !is_list && symbol == s; }
  // True for a list whose first element is the symbol `head`.
  bool has_head(std::string_view head) const noexcept {
    return is_list && !items.empty() && items.front().is_symbol(head);
  }
};

// Reads exactly one top-level expression. `;` starts a comment that runs to
// the end of the line. Throws ParseError on unbalanced input or trailing text.
SExpr read_sexpr(std::string_view text);

}  // namespace nlplan::detail
