#ifndef GAT_LEXER_HPP
#define GAT_LEXER_HPP

#include <string>
#include <string_view>
#include <vector>

namespace gat {

struct SourcePos {
  int line = 1;
  int col = 1;
};

struct Token {
  enum class Type { Ident, Punct, End };
  Type type;
  std::string text;
  SourcePos pos;

  bool is(std::string_view punct) const { return type == Type::Punct && text == punct; }
  bool is_ident() const { return type == Type::Ident; }
};

// Shared tokenizer for the combinator notation, the `.gat` language and goal
// strings. ASCII `<` `>` lex as `⟨` `⟩`; `--` starts a line comment. A `_`
// is punctuation only at the start of a token (so `sub_ty` is one identifier,
// `⟨⟩_1` is `⟨` `⟩` `_` `1`).
std::vector<Token> tokenize(std::string_view text);

// Formats "line:col: message".
std::string at(const SourcePos& pos, std::string_view message);

}  // namespace gat

#endif
