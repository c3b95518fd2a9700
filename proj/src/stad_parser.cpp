#include <map>
#include <optional>
#include <string>

#include "lexical.hpp"
#include "trust/date.hpp"
#include "trust/stad.hpp"

namespace trust {

// ---------------------------------------------------------------------------
// Term / graph basics

Term Term::typed_literal(std::string lexical, std::string datatype) {
  if (datatype == std::string(kXsd) + "string") return literal(std::move(lexical));
  return {Kind::Literal, std::move(lexical), LiteralKind::Typed, std::move(datatype)};
}

bool Term::has_datatype(std::string_view xsd_local) const {
  if (kind != Kind::Literal || literal_kind != LiteralKind::Typed) return false;
  return annotation.size() == kXsd.size() + xsd_local.size() &&
         annotation.compare(0, kXsd.size(), kXsd) == 0 &&
         annotation.compare(kXsd.size(), std::string::npos, xsd_local) == 0;
}

namespace {

std::string escape_string(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string Term::to_string() const {
  switch (kind) {
    case Kind::Iri: return "<" + value + ">";
    case Kind::Blank: return "_:" + value;
    case Kind::Literal:
      break;
  }
  std::string out = "\"" + escape_string(value) + "\"";
  if (literal_kind == LiteralKind::LanguageTagged) out += "@" + annotation;
  if (literal_kind == LiteralKind::Typed) out += "^^<" + annotation + ">";
  return out;
}

bool TrustGraph::insert(Triple t) { return triples_.insert(std::move(t)).second; }

bool TrustGraph::erase(const Triple& t) { return triples_.erase(t) != 0; }

std::vector<Term> TrustGraph::objects(const Term& subject, std::string_view predicate_iri) const {
  std::vector<Term> out;
  Triple lo{subject, Term::iri(std::string(predicate_iri)), Term{}};
  lo.object.kind = Term::Kind::Iri;
  for (auto it = triples_.lower_bound(lo); it != triples_.end(); ++it) {
    if (it->subject != subject || it->predicate.value != predicate_iri) break;
    out.push_back(it->object);
  }
  return out;
}

std::vector<Term> TrustGraph::subjects_of_type(std::string_view class_iri) const {
  std::vector<Term> out;
  for (const auto& t : triples_) {
    if (t.predicate.value == kRdfType && t.object.is_iri() && t.object.value == class_iri) {
      out.push_back(t.subject);
    }
  }
  return out;
}

std::vector<Term> TrustGraph::types_of(const Term& subject) const {
  std::vector<Term> out;
  for (const auto& o : objects(subject, kRdfType)) {
    if (o.is_iri()) out.push_back(o);
  }
  return out;
}

bool TrustGraph::has_subject(const Term& node) const {
  Triple lo{node, Term::iri(""), Term{}};
  auto it = triples_.lower_bound(lo);
  return it != triples_.end() && it->subject == node;
}

std::string_view parse_code_id(ParseCode c) {
  switch (c) {
    case ParseCode::UnexpectedChar: return "P001";
    case ParseCode::UnterminatedString: return "P002";
    case ParseCode::BadPrefix: return "P003";
    case ParseCode::UnknownPrefix: return "P004";
    case ParseCode::BadLiteral: return "P005";
    case ParseCode::MissingDot: return "P006";
    case ParseCode::BadIri: return "P007";
  }
  return "P001";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Failure {
  std::size_t offset;
  ParseCode code;
  std::string message;
};

using lexical::is_alnum;
using lexical::is_alpha;
using lexical::is_digit;
using lexical::valid_decimal;
using lexical::valid_integer;

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// Offset of the first byte that breaks UTF-8 well-formedness, or npos.
std::size_t first_invalid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    unsigned min_cp = 0;
    unsigned cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2; min_cp = 0x80; cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3; min_cp = 0x800; cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4; min_cp = 0x10000; cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > s.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
    i += len;
  }
  return std::string_view::npos;
}

bool valid_lang_tag(std::string_view tag) {
  std::size_t i = 0;
  bool first = true;
  while (true) {
    std::size_t n = 0;
    while (i < tag.size() && (first ? is_alpha(tag[i]) : is_alnum(tag[i]))) {
      ++i;
      ++n;
    }
    if (n < 1 || n > 8) return false;
    if (i == tag.size()) return true;
    if (tag[i] != '-') return false;
    ++i;
    first = false;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  TrustGraph run() {
    while (true) {
      skip_ws();
      if (eof()) break;
      if (peek() == '@') {
        directive();
      } else {
        statement();
      }
    }
    PrefixTable declared;
    for (const auto& [label, ns] : prefixes_) declared.insert(label, ns);
    graph_.set_prefixes(std::move(declared));
    return std::move(graph_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string, std::less<>> prefixes_;
  TrustGraph graph_;

  bool eof() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  [[noreturn]] void fail(std::size_t at, ParseCode code, std::string msg) const {
    throw Failure{at, code, std::move(msg)};
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (is_ws(c)) {
        ++pos_;
      } else if (c == '#') {
        while (!eof() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  // Anything that may legally start a term; used to tell a forgotten '.'
  // from a stray character.
  bool at_term_start() const {
    char c = peek();
    return c == '<' || c == '_' || c == '"' || c == ':' || is_alnum(c) || c == '+' || c == '-';
  }

  void expect_terminator(ParseCode code_if_missing, const char* what) {
    skip_ws();
    if (eof()) fail(pos_, code_if_missing, std::string("expected '.' ") + what + " before end of input");
    if (peek() != '.') {
      if (at_term_start()) fail(pos_, code_if_missing, std::string("expected '.' ") + what);
      fail(pos_, ParseCode::UnexpectedChar, std::string("unexpected character '") + peek() + "'");
    }
    ++pos_;
  }

  void directive() {
    const std::size_t start = pos_;
    constexpr std::string_view kw = "@prefix";
    if (text_.substr(pos_, kw.size()) != kw || (pos_ + kw.size() < text_.size() &&
                                                 !is_ws(text_[pos_ + kw.size()]))) {
      fail(start, ParseCode::UnexpectedChar, "unsupported directive; only @prefix is allowed");
    }
    pos_ += kw.size();
    skip_ws();
    const std::size_t label_start = pos_;
    std::string label;
    if (is_alpha(peek())) {
      while (is_alnum(peek()) || peek() == '_' || peek() == '-' || peek() == '.') label += text_[pos_++];
      if (label.back() == '.') fail(label_start, ParseCode::BadPrefix, "prefix label may not end with '.'");
    }
    if (peek() != ':') fail(pos_, ParseCode::BadPrefix, "malformed prefix label; expected 'label:'");
    ++pos_;
    skip_ws();
    if (peek() != '<') fail(pos_, ParseCode::BadPrefix, "expected <namespace IRI> in @prefix");
    std::string ns = iriref();
    prefixes_[label] = ns;
    expect_terminator(ParseCode::MissingDot, "after @prefix directive");
  }

  void statement() {
    Term subject = subject_term();
    while (true) {
      skip_ws();
      Term verb = verb_term();
      while (true) {
        skip_ws();
        Term obj = object_term();
        graph_.insert(Triple{subject, verb, std::move(obj)});
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
      if (peek() == ';') {
        while (peek() == ';') {
          ++pos_;
          skip_ws();
        }
        if (peek() == '.') break;
        continue;
      }
      break;
    }
    expect_terminator(ParseCode::MissingDot, "at end of statement");
  }

  void require_more(const char* what) const {
    if (eof()) fail(pos_, ParseCode::MissingDot, std::string("unexpected end of input; expected ") + what);
  }

  Term subject_term() {
    require_more("a subject");
    char c = peek();
    if (c == '<') return Term::iri(iriref());
    if (c == '_') return blank();
    if (c == '"' || is_digit(c) || c == '+' || c == '-' || c == '.') {
      fail(pos_, ParseCode::UnexpectedChar, "a literal cannot be a subject");
    }
    if (is_alpha(c) || c == ':') {
      const std::size_t start = pos_;
      std::string word = name_word();
      if (word == "true" || word == "false") fail(start, ParseCode::UnexpectedChar, "a literal cannot be a subject");
      return pname(start, word);
    }
    fail(pos_, ParseCode::UnexpectedChar, std::string("unexpected character '") + c + "'");
  }

  Term verb_term() {
    require_more("a predicate");
    char c = peek();
    if (c == '<') return Term::iri(iriref());
    if (is_alpha(c) || c == ':') {
      const std::size_t start = pos_;
      std::string word = name_word();
      if (word == "a" && peek() != ':') return Term::iri(std::string(kRdfType));
      return pname(start, word);
    }
    fail(pos_, ParseCode::UnexpectedChar, "predicate must be an IRI");
  }

  Term object_term() {
    require_more("an object");
    char c = peek();
    if (c == '<') return Term::iri(iriref());
    if (c == '_') return blank();
    if (c == '"') return string_literal();
    if (c == '.' && !is_digit(peek(1))) fail(pos_, ParseCode::UnexpectedChar, "expected an object");
    if (is_digit(c) || c == '+' || c == '-' || c == '.') return number();
    if (is_alpha(c) || c == ':') {
      const std::size_t start = pos_;
      std::string word = name_word();
      if ((word == "true" || word == "false") && peek() != ':') {
        return Term::typed_literal(word, std::string(kXsd) + "boolean");
      }
      return pname(start, word);
    }
    fail(pos_, ParseCode::UnexpectedChar, std::string("unexpected character '") + c + "'");
  }

  std::string iriref() {
    const std::size_t start = pos_;
    ++pos_;  // '<'
    while (!eof() && peek() != '>' && peek() != '\n') ++pos_;
    if (eof() || peek() != '>') fail(start, ParseCode::BadIri, "unterminated IRI reference");
    std::string iri(text_.substr(start + 1, pos_ - start - 1));
    ++pos_;
    if (!Iri::is_valid(iri)) fail(start, ParseCode::BadIri, "invalid absolute IRI <" + iri + ">");
    return iri;
  }

  Term blank() {
    const std::size_t start = pos_;
    if (peek(1) != ':') fail(start, ParseCode::UnexpectedChar, "expected '_:' blank node label");
    pos_ += 2;
    if (!is_alpha(peek())) fail(pos_, ParseCode::UnexpectedChar, "blank node label must start with a letter");
    std::string label;
    while (is_alnum(peek()) || peek() == '_') label += text_[pos_++];
    return Term::blank(std::move(label));
  }

  // Prefix part of a prefixed name (or a bare keyword); stops before ':'.
  std::string name_word() {
    std::string w;
    while (is_alnum(peek()) || peek() == '_' || peek() == '-' ||
           (peek() == '.' && (is_alnum(peek(1)) || peek(1) == '_' || peek(1) == '-'))) {
      w += text_[pos_++];
    }
    return w;
  }

  Term pname(std::size_t start, const std::string& label) {
    if (peek() != ':') fail(start, ParseCode::UnexpectedChar, "unexpected bare word '" + label + "'");
    ++pos_;
    auto it = prefixes_.find(label);
    if (it == prefixes_.end()) fail(start, ParseCode::UnknownPrefix, "undeclared prefix '" + label + ":'");
    std::string local;
    if (is_alnum(peek()) || peek() == '_') {
      while (is_alnum(peek()) || peek() == '_' || peek() == '-' ||
             (peek() == '.' && (is_alnum(peek(1)) || peek(1) == '_' || peek(1) == '-'))) {
        local += text_[pos_++];
      }
    }
    return Term::iri(it->second + local);
  }

  Term string_literal() {
    const std::size_t start = pos_;
    ++pos_;
    std::string lex;
    while (true) {
      if (eof()) fail(start, ParseCode::UnterminatedString, "unterminated string literal");
      char c = text_[pos_];
      if (c == '"') {
        ++pos_;
        break;
      }
      if (c == '\n' || c == '\r') fail(start, ParseCode::UnterminatedString, "line break inside string literal");
      if (c == '\\') {
        char e = peek(1);
        switch (e) {
          case '"': lex += '"'; break;
          case '\\': lex += '\\'; break;
          case 'n': lex += '\n'; break;
          case 't': lex += '\t'; break;
          default:
            if (pos_ + 1 >= text_.size()) fail(start, ParseCode::UnterminatedString, "unterminated string literal");
            fail(pos_, ParseCode::BadLiteral, "unsupported escape sequence");
        }
        pos_ += 2;
        continue;
      }
      lex += c;
      ++pos_;
    }
    if (peek() == '@') {
      const std::size_t at = pos_;
      ++pos_;
      std::string tag;
      while (is_alnum(peek()) || peek() == '-') tag += text_[pos_++];
      if (!valid_lang_tag(tag)) fail(at, ParseCode::BadLiteral, "malformed language tag '" + tag + "'");
      return Term::lang_literal(std::move(lex), std::move(tag));
    }
    if (peek() == '^') {
      if (peek(1) != '^') fail(pos_, ParseCode::BadLiteral, "expected '^^' before datatype");
      pos_ += 2;
      Term dt;
      if (peek() == '<') {
        dt = Term::iri(iriref());
      } else if (is_alpha(peek()) || peek() == ':') {
        const std::size_t s = pos_;
        dt = pname(s, name_word());
      } else {
        fail(pos_, ParseCode::BadLiteral, "expected datatype IRI after '^^'");
      }
      check_datatype(start, lex, dt.value);
      return Term::typed_literal(std::move(lex), std::move(dt.value));
    }
    return Term::literal(std::move(lex));
  }

  void check_datatype(std::size_t at, const std::string& lex, const std::string& dt) const {
    if (dt.compare(0, kXsd.size(), kXsd) != 0) return;
    const std::string_view local = std::string_view(dt).substr(kXsd.size());
    bool ok = true;
    if (local == "integer") ok = valid_integer(lex);
    else if (local == "decimal") ok = valid_decimal(lex);
    else if (local == "boolean") ok = lex == "true" || lex == "false";
    else if (local == "date") ok = Date::parse(lex).has_value();
    if (!ok) fail(at, ParseCode::BadLiteral, "'" + lex + "' is not a valid xsd:" + std::string(local));
  }

  Term number() {
    const std::size_t start = pos_;
    std::string lex;
    if (peek() == '+' || peek() == '-') lex += text_[pos_++];
    std::size_t whole = 0;
    while (is_digit(peek())) {
      lex += text_[pos_++];
      ++whole;
    }
    bool is_decimal = false;
    if (peek() == '.' && is_digit(peek(1))) {
      is_decimal = true;
      lex += text_[pos_++];
      while (is_digit(peek())) lex += text_[pos_++];
    } else if (whole == 0) {
      fail(start, ParseCode::BadLiteral, "malformed numeric literal");
    }
    if (is_alpha(peek()) || peek() == '_' || peek() == ':') {
      fail(start, ParseCode::BadLiteral, "malformed numeric literal");
    }
    return Term::typed_literal(std::move(lex), std::string(kXsd) + (is_decimal ? "decimal" : "integer"));
  }
};

void locate(std::string_view text, std::size_t offset, ParseError& err) {
  err.line = 1;
  err.column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c == '\n') {
      ++err.line;
      err.column = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++err.column;
    }
  }
}

}  // namespace

Result<TrustGraph, ParseError> parse_document(std::string_view text) {
  if (text.size() > kMaxDocumentBytes) {
    return ParseError{1, 1, ParseCode::UnexpectedChar, "document exceeds the 10 MB size limit"};
  }
  if (auto bad = first_invalid_utf8(text); bad != std::string_view::npos) {
    ParseError err{1, 1, ParseCode::UnexpectedChar, "invalid UTF-8 byte sequence"};
    locate(text, bad, err);
    return err;
  }
  try {
    Parser p(text);
    return p.run();
  } catch (const Failure& f) {
    ParseError err{1, 1, f.code, f.message};
    locate(text, f.offset, err);
    return err;
  }
}

}  // namespace trust
