#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "lexical.hpp"
#include "trust/stad.hpp"

namespace trust {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}


std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0x100000001b3ULL;
}

// Blank nodes as indices with their incident triples; non-blank ends are
// pre-hashed so refinement never looks at a blank label.
struct BlankIndex {
  struct Edge {
    std::uint64_t tag;  // direction + predicate (+ non-blank term)
    int other;          // blank neighbour or -1
  };
  std::vector<std::string> labels;
  std::vector<std::vector<Edge>> edges;
};

BlankIndex index_blanks(const TrustGraph& g) {
  BlankIndex ix;
  std::map<std::string, int> id;
  auto get = [&](const Term& t) {
    auto [it, fresh] = id.emplace(t.value, static_cast<int>(ix.labels.size()));
    if (fresh) ix.labels.push_back(t.value);
    return it->second;
  };
  for (const auto& t : g.triples()) {
    if (t.subject.is_blank()) get(t.subject);
    if (t.object.is_blank()) get(t.object);
  }
  ix.edges.resize(ix.labels.size());
  for (const auto& t : g.triples()) {
    const std::uint64_t p = fnv1a(t.predicate.value);
    if (t.subject.is_blank()) {
      const int o = t.object.is_blank() ? id.at(t.object.value) : -1;
      const std::uint64_t tag = mix(mix(1, p), o < 0 ? fnv1a(t.object.to_string()) : 0);
      ix.edges[id.at(t.subject.value)].push_back({tag, o});
    }
    if (t.object.is_blank()) {
      const int s = t.subject.is_blank() ? id.at(t.subject.value) : -1;
      const std::uint64_t tag = mix(mix(2, p), s < 0 ? fnv1a(t.subject.to_string()) : 0);
      ix.edges[id.at(t.object.value)].push_back({tag, s});
    }
  }
  return ix;
}

std::size_t class_count(const std::vector<std::uint64_t>& c) {
  return std::set<std::uint64_t>(c.begin(), c.end()).size();
}

// 1-dimensional Weisfeiler-Leman refinement until the partition is stable.
void refine(const BlankIndex& ix, std::vector<std::uint64_t>& colour) {
  std::size_t classes = class_count(colour);
  std::vector<std::uint64_t> entries;
  for (;;) {
    std::vector<std::uint64_t> next(colour.size());
    for (std::size_t i = 0; i < colour.size(); ++i) {
      entries.clear();
      for (const auto& e : ix.edges[i]) entries.push_back(mix(e.tag, e.other < 0 ? 0 : colour[e.other]));
      std::sort(entries.begin(), entries.end());
      std::uint64_t h = colour[i];
      for (auto v : entries) h = mix(h, v);
      next[i] = h;
    }
    colour = std::move(next);
    const std::size_t now = class_count(colour);
    if (now == classes) return;
    classes = now;
  }
}

Term with_label(const Term& t, const std::map<std::string, std::string>& labels) {
  if (!t.is_blank()) return t;
  return Term::blank(labels.at(t.value));
}

// Sorted triples with blanks ordered by colour, relabeled b0, b1, ... by
// first appearance.
std::vector<Triple> stream_for(const TrustGraph& g, const BlankIndex& ix, const std::vector<std::uint64_t>& colour) {
  std::vector<std::pair<std::uint64_t, std::size_t>> order;
  for (std::size_t i = 0; i < colour.size(); ++i) order.emplace_back(colour[i], i);
  std::sort(order.begin(), order.end());
  std::map<std::string, std::string> provisional;
  for (std::size_t i = 0; i < order.size(); ++i) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%012zu", i);
    provisional[ix.labels[order[i].second]] = buf;
  }

  std::vector<Triple> stream;
  stream.reserve(g.size());
  for (const auto& t : g.triples()) {
    stream.push_back({with_label(t.subject, provisional), t.predicate, with_label(t.object, provisional)});
  }
  std::sort(stream.begin(), stream.end());

  std::map<std::string, std::string> final_label;
  auto assign = [&](const Term& t) {
    if (t.is_blank() && !final_label.count(t.value)) {
      final_label[t.value] = "b" + std::to_string(final_label.size());
    }
  };
  for (const auto& t : stream) {
    assign(t.subject);
    assign(t.object);
  }
  for (auto& t : stream) {
    t.subject = with_label(t.subject, final_label);
    t.object = with_label(t.object, final_label);
  }
  return stream;
}

// Leaves explored before the search settles for the first branch at each level.
constexpr std::size_t kSearchBudget = 4096;

struct Search {
  const TrustGraph& g;
  const BlankIndex& ix;
  std::size_t leaves = 0;
  std::optional<std::vector<Triple>> best;

  void run(std::vector<std::uint64_t> colour) {
    refine(ix, colour);
    std::map<std::uint64_t, std::vector<std::size_t>> cells;
    for (std::size_t i = 0; i < colour.size(); ++i) cells[colour[i]].push_back(i);
    const std::vector<std::size_t>* target = nullptr;
    for (const auto& [c, members] : cells) {
      if (members.size() > 1 && (!target || members.size() < target->size())) target = &members;
    }
    if (!target) {
      ++leaves;
      auto s = stream_for(g, ix, colour);
      if (!best || s < *best) best = std::move(s);
      return;
    }
    for (std::size_t k = 0; k < target->size(); ++k) {
      if (k > 0 && leaves >= kSearchBudget) break;
      auto branch = colour;
      branch[(*target)[k]] = mix(branch[(*target)[k]], 0x5bd1e995ULL);
      run(std::move(branch));
    }
  }
};

// Label-independent order: refinement, then individualize each member of the
// smallest tied cell in turn and keep the smallest resulting stream.
std::vector<Triple> canonical_stream(const TrustGraph& g) {
  const auto ix = index_blanks(g);
  Search search{g, ix, 0, std::nullopt};
  search.run(std::vector<std::uint64_t>(ix.labels.size(), 0x2545f4914f6cdd1dULL));
  return std::move(*search.best);
}

class Writer {
 public:
  explicit Writer(const PrefixTable& table) : table_(table) {}

  std::string iri(const std::string& value) const {
    std::string best_label;
    std::size_t best_len = 0;
    for (const auto& [label, ns] : table_.entries()) {
      if (ns.size() > best_len && value.size() > ns.size() && value.compare(0, ns.size(), ns) == 0 &&
          lexical::valid_local_name(std::string_view(value).substr(ns.size()))) {
        best_label = label;
        best_len = ns.size();
      }
    }
    if (best_len == 0) return "<" + value + ">";
    return best_label + ":" + value.substr(best_len);
  }

  std::string term(const Term& t) const {
    switch (t.kind) {
      case Term::Kind::Iri: return iri(t.value);
      case Term::Kind::Blank: return "_:" + t.value;
      case Term::Kind::Literal: break;
    }
    if (t.literal_kind == Term::LiteralKind::Typed) {
      if (t.has_datatype("integer") && lexical::valid_integer(t.value)) return t.value;
      if (t.has_datatype("decimal") && lexical::bare_decimal(t.value)) return t.value;
      if (t.has_datatype("boolean") && (t.value == "true" || t.value == "false")) return t.value;
      Term plain = Term::literal(t.value);
      return plain.to_string() + "^^" + iri(t.annotation);
    }
    return t.to_string();
  }

 private:
  const PrefixTable& table_;
};

}  // namespace

TrustGraph canonicalize_blanks(const TrustGraph& graph) {
  TrustGraph out(graph.prefixes());
  for (auto& t : canonical_stream(graph)) out.insert(std::move(t));
  return out;
}

std::string serialize_graph(const TrustGraph& graph) {
  const PrefixTable& table = namespaces();
  Writer w(table);
  std::ostringstream out;
  for (const auto& [label, ns] : table.entries()) {
    out << "@prefix " << label << ": <" << ns << "> .\n";
  }
  auto stream = canonical_stream(graph);
  if (!stream.empty()) out << '\n';
  for (const auto& t : stream) {
    out << w.term(t.subject) << ' '
        << (t.predicate.value == kRdfType ? std::string("a") : w.iri(t.predicate.value)) << ' '
        << w.term(t.object) << " .\n";
  }
  return out.str();
}

}  // namespace trust
