#pragma once

// Closed vocabulary of the usdl-Trust extension: namespaces, classes,
// properties and the trust categories they feed. Parser, validator and
// scoring engine all resolve terms through this module.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trust {

// Absolute IRI. Holds "scheme://..." forms and urn:NID:NSS.
class Iri {
 public:
  static std::optional<Iri> make(std::string_view text);
  // Throws std::invalid_argument on malformed input.
  static Iri from(std::string_view text);
  static bool is_valid(std::string_view text);

  const std::string& str() const { return value_; }
  auto operator<=>(const Iri&) const = default;

 private:
  explicit Iri(std::string v) : value_(std::move(v)) {}
  std::string value_;
};

enum class TrustCategory {
  CustomerReference,
  Certification,
  Facility,
  ProviderSystems,
  Employee,
  Partner,
  LegalData,
  Terms,
  Publication,
  MarketplaceAnalytics,
};

inline constexpr std::array<TrustCategory, 10> kAllCategories = {
    TrustCategory::CustomerReference, TrustCategory::Certification,
    TrustCategory::Facility,          TrustCategory::ProviderSystems,
    TrustCategory::Employee,          TrustCategory::Partner,
    TrustCategory::LegalData,         TrustCategory::Terms,
    TrustCategory::Publication,       TrustCategory::MarketplaceAnalytics,
};

std::string_view category_name(TrustCategory c);
std::optional<TrustCategory> category_from_name(std::string_view name);

// Average expert MoSCoW rating (1 = must ... 4 = won't) for the category.
double expert_rating(TrustCategory c);

// True for categories whose evidence comes from an advertisement document;
// MarketplaceAnalytics is held by the catalog instead.
bool is_document_sourced(TrustCategory c);

class PrefixTable {
 public:
  // Fails (returns false) if either the label or the namespace is already present.
  bool insert(std::string label, std::string namespace_iri);
  // Replaces the namespace of an existing label; false on unknown label or clash.
  bool rebind(const std::string& label, std::string namespace_iri);

  std::optional<std::string> lookup(std::string_view label) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

  // "prefix:local" to a full IRI; nullopt for unknown prefixes.
  std::optional<std::string> expand(std::string_view curie) const;

  bool operator==(const PrefixTable&) const = default;

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

inline constexpr std::string_view kPlaceholderBase = "http://example.org/usdl-trust/";

PrefixTable default_namespace_table();

// Installs the namespace table used by every vocabulary lookup. Must be called
// before the first lookup; returns false once the active table is frozen or if
// the table lacks one of the nine mandatory prefixes.
bool configure_namespaces(PrefixTable table);
const PrefixTable& namespaces();

// Expands a vocabulary CURIE against the active namespaces. Throws
// std::invalid_argument for prefixes outside the table.
std::string term_iri(std::string_view curie);

enum class RangeKind { String, Date, Integer, Decimal, Boolean, Iri, IriOrString, Node };

struct Range {
  RangeKind kind = RangeKind::String;
  std::string node_class;            // RangeKind::Node only
  std::vector<std::string> allowed;  // non-empty for enumerated string values

  std::string describe() const;
};

struct Cardinality {
  std::size_t min = 0;
  std::optional<std::size_t> max;  // nullopt = unbounded
};

enum class Requirement { StructuralRequired, Advisory };

struct PropertyDescriptor {
  std::string name;  // CURIE, e.g. "usdl-trust:transactionDate"
  Range range;
  Cardinality cardinality;
  Requirement requirement = Requirement::Advisory;
};

struct ClassDescriptor {
  std::string name;  // local class term, e.g. "Facility"
  std::string curie;
  std::optional<std::string> superclass;
  std::vector<PropertyDescriptor> properties;

  const PropertyDescriptor* property(std::string_view curie) const;
};

const std::vector<ClassDescriptor>& known_classes();
const ClassDescriptor* lookup_class(std::string_view name);
// Reverse lookup from a full class IRI.
const ClassDescriptor* class_for_iri(std::string_view iri);

// Walks the superclass chain; a class is a subclass of itself.
bool is_subclass_of(std::string_view class_name, std::string_view ancestor);

// Scoring category of a content class; nullopt for structural and external classes.
std::optional<TrustCategory> category_of(std::string_view class_name);

// Document class carrying the category's evidence (nullopt for MarketplaceAnalytics).
std::optional<std::string_view> class_for_category(TrustCategory c);

// Markdown reference of every class, property, range and cardinality.
std::string vocabulary_reference_markdown();

}  // namespace trust
