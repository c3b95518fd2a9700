#include "trust/shapes.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

namespace trust {

std::string_view finding_code_id(FindingCode c) {
  switch (c) {
    case FindingCode::MissingRequired: return "E101";
    case FindingCode::RangeViolation: return "E102";
    case FindingCode::CardinalityViolation: return "E103";
    case FindingCode::DanglingReference: return "E104";
    case FindingCode::AdvisoryMissing: return "W201";
  }
  return "";
}

bool is_error(FindingCode c) { return c != FindingCode::AdvisoryMissing; }

namespace {

std::vector<Shape> build_shapes() {
  std::vector<Shape> shapes;
  for (const auto& cls : known_classes()) {
    if (cls.properties.empty()) continue;
    Shape s;
    s.target_class = cls.name;
    for (const auto& p : cls.properties) {
      if (p.requirement == Requirement::StructuralRequired) {
        s.required.push_back({p.name, p.range, p.cardinality.min, p.cardinality.max});
      } else {
        s.optional.push_back({p.name, p.range, p.cardinality.max});
      }
    }
    if (cls.name == "LegalData") {
      s.one_of.push_back({"usdl-trust:vatNumber", "usdl-trust:companyRegistrationNumber", "usdl-trust:leiCode",
                          "usdl-trust:dunsNumber"});
    }
    shapes.push_back(std::move(s));
  }
  return shapes;
}

std::string show(const Term& t) { return t.is_blank() ? "_:" + t.value : t.value; }

class Checker {
 public:
  explicit Checker(const TrustGraph& g) : g_(g) {}

  void check_node(const Term& node, const Shape& shape) {
    for (const auto& r : shape.required) {
      auto objs = g_.objects(node, term_iri(r.property));
      if (objs.empty()) {
        add(FindingCode::MissingRequired, node, r.property,
            shape.target_class + " is missing required property " + r.property);
        continue;
      }
      check_count(node, r.property, objs.size(), r.min, r.max);
      for (const auto& o : objs) check_range(node, r.property, r.range, o);
    }
    for (const auto& opt : shape.optional) {
      auto objs = g_.objects(node, term_iri(opt.property));
      check_count(node, opt.property, objs.size(), 0, opt.max);
      for (const auto& o : objs) check_range(node, opt.property, opt.range, o);
    }
    for (const auto& group : shape.one_of) {
      bool any = std::any_of(group.begin(), group.end(),
                             [&](const std::string& p) { return !g_.objects(node, term_iri(p)).empty(); });
      if (!any) {
        std::string names;
        for (const auto& p : group) names += (names.empty() ? "" : ", ") + p;
        add(FindingCode::MissingRequired, node, group.front(),
            shape.target_class + " needs at least one of: " + names);
      }
    }
  }

  std::vector<Finding> take() { return std::move(findings_); }

  void add(FindingCode code, Term node, std::optional<std::string> property, std::string message) {
    findings_.push_back({code, std::move(node), std::move(property), std::move(message)});
  }

 private:
  const TrustGraph& g_;
  std::vector<Finding> findings_;

  void check_count(const Term& node, const std::string& prop, std::size_t n, std::size_t min,
                   std::optional<std::size_t> max) {
    if (n < min || (max && n > *max)) {
      std::string bound = std::to_string(min) + ".." + (max ? std::to_string(*max) : std::string("*"));
      add(FindingCode::CardinalityViolation, node, prop,
          prop + " occurs " + std::to_string(n) + " times; allowed " + bound);
    }
  }

  void check_range(const Term& node, const std::string& prop, const Range& range, const Term& o) {
    auto violation = [&](const std::string& why) {
      add(FindingCode::RangeViolation, node, prop, prop + " value " + o.to_string() + " " + why);
    };
    const bool textual = o.is_literal() && o.literal_kind != Term::LiteralKind::Typed;
    switch (range.kind) {
      case RangeKind::String:
        if (!textual) return violation("is not a string literal");
        if (!range.allowed.empty() &&
            std::find(range.allowed.begin(), range.allowed.end(), o.value) == range.allowed.end()) {
          return violation("is not one of " + range.describe());
        }
        return;
      case RangeKind::Date:
        if (!o.has_datatype("date")) violation("is not an xsd:date literal");
        return;
      case RangeKind::Integer:
        if (!o.has_datatype("integer")) violation("is not an xsd:integer literal");
        return;
      case RangeKind::Decimal:
        if (!o.has_datatype("decimal") && !o.has_datatype("integer")) violation("is not a numeric literal");
        return;
      case RangeKind::Boolean:
        if (!o.has_datatype("boolean")) violation("is not an xsd:boolean literal");
        return;
      case RangeKind::Iri:
        if (!o.is_iri()) violation("is not an IRI");
        return;
      case RangeKind::IriOrString:
        if (!o.is_iri() && !textual) violation("is neither an IRI nor a string literal");
        return;
      case RangeKind::Node:
        break;
    }
    if (o.is_literal()) return violation("is a literal; expected a " + range.node_class + " node");
    if (!g_.has_subject(o)) {
      add(FindingCode::DanglingReference, node, prop,
          prop + " points to " + show(o) + ", which is not described in the document");
      return;
    }
    bool typed_known = false;
    for (const auto& t : g_.types_of(o)) {
      const auto* cls = class_for_iri(t.value);
      if (!cls) continue;
      typed_known = true;
      if (is_subclass_of(cls->name, range.node_class)) return;
    }
    if (typed_known) violation("is not typed as " + range.node_class);
  }
};

}  // namespace

const std::vector<Shape>& shape_table() {
  static const std::vector<Shape> shapes = build_shapes();
  return shapes;
}

const Shape* shape_for(std::string_view class_name) {
  for (const auto& s : shape_table()) {
    if (s.target_class == class_name) return &s;
  }
  return nullptr;
}

ValidationReport validate_graph(const TrustGraph& graph) {
  Checker checker(graph);
  const std::string rdf_type(kRdfType);
  for (const auto& t : graph.triples()) {
    if (t.predicate.value != rdf_type || !t.object.is_iri()) continue;
    const auto* cls = class_for_iri(t.object.value);
    if (!cls) continue;
    if (const auto* shape = shape_for(cls->name)) checker.check_node(t.subject, *shape);
  }
  for (auto c : kAllCategories) {
    if (!is_document_sourced(c) || expert_rating(c) > kAdvisoryRatingThreshold) continue;
    auto cls = class_for_category(c);
    const std::string cls_iri = term_iri(lookup_class(*cls)->curie);
    if (graph.subjects_of_type(cls_iri).empty()) {
      char rating[8];
      std::snprintf(rating, sizeof rating, "%.1f", expert_rating(c));
      checker.add(FindingCode::AdvisoryMissing, Term::iri(cls_iri), std::nullopt,
                  "no " + std::string(*cls) + " content; experts rated this category " + rating +
                      (expert_rating(c) < 1.5 ? " (must)" : " (should)"));
    }
  }

  auto all = checker.take();
  auto key = [](const Finding& f) { return std::tie(f.code, f.node, f.property, f.message); };
  std::sort(all.begin(), all.end(), [&](const Finding& a, const Finding& b) { return key(a) < key(b); });
  all.erase(std::unique(all.begin(), all.end(), [&](const Finding& a, const Finding& b) { return key(a) == key(b); }),
            all.end());

  ValidationReport report;
  for (auto& f : all) (is_error(f.code) ? report.errors : report.warnings).push_back(std::move(f));
  report.valid = report.errors.empty();
  return report;
}

}  // namespace trust
