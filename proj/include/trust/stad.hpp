#pragma once

// Service Trust Advertisement Document (STAD): a strict Turtle subset.
//
//   stad      := (directive | statement | comment)*
//   directive := '@prefix' PNAME ':' IRIREF '.'
//   statement := subject verb objlist (';' verb objlist)* '.'
//   objlist   := object (',' object)*
//   literal   := STRING ('@' LANGTAG | '^^' iri)? | INTEGER | DECIMAL | true | false
//
// No collections, no "[ ]" blank-node lists, no @base, no long strings.

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "trust/result.hpp"
#include "trust/vocab.hpp"

namespace trust {

inline constexpr std::size_t kMaxDocumentBytes = 10 * 1024 * 1024;

inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

struct Term {
  enum class Kind { Iri, Blank, Literal };
  enum class LiteralKind { Plain, LanguageTagged, Typed };

  Kind kind = Kind::Iri;
  std::string value;  // IRI, blank label (without "_:") or lexical form
  LiteralKind literal_kind = LiteralKind::Plain;
  std::string annotation;  // language tag or datatype IRI

  static Term iri(std::string v) { return {Kind::Iri, std::move(v), LiteralKind::Plain, {}}; }
  static Term blank(std::string label) { return {Kind::Blank, std::move(label), LiteralKind::Plain, {}}; }
  static Term literal(std::string lexical) {
    return {Kind::Literal, std::move(lexical), LiteralKind::Plain, {}};
  }
  static Term lang_literal(std::string lexical, std::string tag) {
    return {Kind::Literal, std::move(lexical), LiteralKind::LanguageTagged, std::move(tag)};
  }
  // xsd:string datatypes normalize to plain literals.
  static Term typed_literal(std::string lexical, std::string datatype);

  bool is_iri() const { return kind == Kind::Iri; }
  bool is_blank() const { return kind == Kind::Blank; }
  bool is_literal() const { return kind == Kind::Literal; }
  bool is_node() const { return kind != Kind::Literal; }
  bool has_datatype(std::string_view xsd_local) const;

  // N-Triples-like rendering: <iri>, _:label, "lex"@tag, "lex"^^<dt>.
  std::string to_string() const;

  auto operator<=>(const Term&) const = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

class TrustGraph {
 public:
  TrustGraph() = default;
  explicit TrustGraph(PrefixTable prefixes) : prefixes_(std::move(prefixes)) {}

  // Returns false when the triple was already present.
  bool insert(Triple t);
  bool erase(const Triple& t);

  const std::set<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  bool contains(const Triple& t) const { return triples_.count(t) != 0; }

  const PrefixTable& prefixes() const { return prefixes_; }
  void set_prefixes(PrefixTable p) { prefixes_ = std::move(p); }

  std::vector<Term> objects(const Term& subject, std::string_view predicate_iri) const;
  std::vector<Term> subjects_of_type(std::string_view class_iri) const;
  std::vector<Term> types_of(const Term& subject) const;
  bool has_subject(const Term& node) const;

  // Set equality on triples; parse-time prefixes are not part of the graph.
  bool operator==(const TrustGraph& other) const { return triples_ == other.triples_; }

 private:
  std::set<Triple> triples_;
  PrefixTable prefixes_;
};

enum class ParseCode {
  UnexpectedChar,      // P001
  UnterminatedString,  // P002
  BadPrefix,           // P003
  UnknownPrefix,       // P004
  BadLiteral,          // P005
  MissingDot,          // P006
  BadIri,              // P007
};

std::string_view parse_code_id(ParseCode c);

struct ParseError {
  std::size_t line = 1;
  std::size_t column = 1;
  ParseCode code = ParseCode::UnexpectedChar;
  std::string message;
};

Result<TrustGraph, ParseError> parse_document(std::string_view text);

// Canonical text: the default prefix block sorted by label, then one triple
// per line in sorted order with blank nodes relabeled _:b0, _:b1, ...
std::string serialize_graph(const TrustGraph& graph);

// Same triple set with blank nodes renamed canonically (b0, b1, ...). Two
// graphs equal up to blank relabeling map to equal canonical graphs.
TrustGraph canonicalize_blanks(const TrustGraph& graph);

}  // namespace trust
