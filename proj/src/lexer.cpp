#include "gat/lexer.hpp"

#include <array>
#include <cctype>

#include "gat/error.hpp"

namespace gat {
namespace {

// Longest punctuation first so that "|-" wins over "|" style prefixes.
constexpr std::array<std::string_view, 20> kPunct = {
    "|-", "⟨", "⟩", "∘", "⊢", "(", ")", "[", "]", "{", "}", "<", ">", ",", ";", ":", "=", ".", "_", "?"};

std::string_view match_punct(std::string_view rest) {
  for (auto p : kPunct) {
    if (rest.substr(0, p.size()) == p) return p;
  }
  return {};
}

}  // namespace

std::string at(const SourcePos& pos, std::string_view message) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + std::string(message);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.col = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++pos.col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (text.substr(i, 2) == "--") {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    auto punct = match_punct(text.substr(i));
    if (!punct.empty()) {
      std::string t(punct);
      if (t == "<") t = "⟨";
      if (t == ">") t = "⟩";
      if (t == "⊢") t = "|-";
      out.push_back({Token::Type::Punct, t, pos});
      advance(punct.size());
      continue;
    }
    SourcePos start = pos;
    std::size_t begin = i;
    while (i < text.size()) {
      char d = text[i];
      if (std::isspace(static_cast<unsigned char>(d))) break;
      if (text.substr(i, 2) == "--") break;
      auto p = match_punct(text.substr(i));
      if (!p.empty() && p != "_" && p != "?") break;
      if (p == "?" && i == begin) break;
      advance(1);
    }
    if (i == begin) fail(ErrorKind::SyntaxError, at(start, "unexpected character"));
    out.push_back({Token::Type::Ident, std::string(text.substr(begin, i - begin)), start});
  }
  out.push_back({Token::Type::End, "", pos});
  return out;
}

}  // namespace gat
