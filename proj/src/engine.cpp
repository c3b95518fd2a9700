#include "trust/engine.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace trust {

std::optional<MoscowRating> MoscowRating::make(double value) {
  if (!(value >= 1.0 && value <= 4.0)) return std::nullopt;
  return MoscowRating(value);
}

double moscow_to_weight(MoscowRating r) { return (4.0 - r.value()) / 3.0; }

double moscow_to_weight(double rating) {
  auto r = MoscowRating::make(rating);
  if (!r) throw std::out_of_range("MoSCoW rating must lie in [1, 4]");
  return moscow_to_weight(*r);
}

std::size_t category_index(TrustCategory c) { return static_cast<std::size_t>(c); }

Result<WeightProfile, std::string> WeightProfile::make(std::string name, const CategoryWeights& weights) {
  bool any_positive = false;
  for (auto c : kAllCategories) {
    const double w = weights[category_index(c)];
    if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
      return std::string("weight for ") + std::string(category_name(c)) + " must lie in [0, 1]";
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) return std::string("at least one category weight must be positive");
  return WeightProfile(std::move(name), weights);
}

Result<WeightProfile, std::string> WeightProfile::make(std::string name,
                                                       const std::map<TrustCategory, double>& weights) {
  CategoryWeights w{};
  for (auto c : kAllCategories) {
    auto it = weights.find(c);
    if (it == weights.end()) return "missing weight for " + std::string(category_name(c));
    w[category_index(c)] = it->second;
  }
  return make(std::move(name), w);
}

double WeightProfile::total() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

WeightProfile default_weight_profile() {
  CategoryWeights w{};
  for (auto c : kAllCategories) w[category_index(c)] = moscow_to_weight(expert_rating(c));
  return WeightProfile::make(std::string(kDefaultProfileName), w).value();
}

const CategoryBreakdown* TrustScoreReport::find(TrustCategory c) const {
  for (const auto& b : breakdown) {
    if (b.score.category == c) return &b;
  }
  return nullptr;
}

namespace {

// Rubric items are integer points so sums are exact and monotone.
bool has_text(const std::optional<std::string>& s) {
  return s && std::any_of(s->begin(), s->end(), [](unsigned char c) { return !std::isspace(c); });
}

// Sum of the `k` best item scores, as points.
int top_k_sum(std::vector<int> points, std::size_t k) {
  std::sort(points.begin(), points.end(), std::greater<>());
  if (points.size() > k) points.resize(k);
  return std::accumulate(points.begin(), points.end(), 0);
}

template <class T, class F>
std::vector<int> points_of(const std::vector<T>& items, F per_item) {
  std::vector<int> out;
  out.reserve(items.size());
  for (const auto& i : items) out.push_back(per_item(i));
  return out;
}

CategoryScore make_score(TrustCategory c, int points, int max_points, std::size_t evidence) {
  CategoryScore s;
  s.category = c;
  s.evidence_count = evidence;
  s.score = evidence == 0 ? 0.0 : std::clamp(static_cast<double>(points) / max_points, 0.0, 1.0);
  return s;
}

int reference_points(const CustomerReference& r) {
  return (has_text(r.customer_name) ? 30 : 0) + (r.customer_logo ? 20 : 0) + (r.product_image ? 20 : 0) +
         (has_text(r.product_description) ? 30 : 0);
}

int certification_points(const Certification& c) {
  return (has_text(c.standard) ? 60 : 0) + (has_text(c.issuer) ? 20 : 0) + (c.document ? 20 : 0);
}

int facility_points(const Facility& f) {
  return (has_text(f.address) ? 40 : 0) + (f.image ? 20 : 0) + (f.kpis.size() >= 2 ? 20 : 0) +
         (f.organization ? 20 : 0);
}

int system_points(const ProviderSystem& s) {
  return (has_text(s.name) ? 30 : 0) + (has_text(s.manufacturer) ? 30 : 0) + (s.image ? 20 : 0) +
         (has_text(s.description) ? 20 : 0);
}

int employee_points(const Employee& e) {
  return (has_text(e.name) ? 20 : 0) + (has_text(e.job_title) ? 20 : 0) +
         (has_text(e.email) || has_text(e.telephone) ? 30 : 0) + (e.image ? 15 : 0) +
         (has_text(e.expertise) ? 15 : 0);
}

// Social network links carry no weight.
int partner_points(const Partner& p) {
  return (has_text(p.name) ? 50 : 0) + (has_text(p.description) ? 30 : 0) + (p.logo ? 20 : 0);
}

bool is_professional(const Publication& p) {
  return p.source == PublicationSource::Professional && p.kind != PublicationKind::Newsfeed;
}

}  // namespace

CategoryScore score_category(const ProviderProfile& profile, TrustCategory category,
                             const std::optional<AnalyticsEvidence>& analytics,
                             std::span<const CustomerReference> published_refs) {
  switch (category) {
    case TrustCategory::CustomerReference: {
      std::vector<int> pts;
      for (const auto& r : published_refs) pts.push_back(reference_points(r));
      return make_score(category, top_k_sum(pts, 5), 5 * 100, published_refs.size());
    }
    case TrustCategory::Certification:
      return make_score(category, top_k_sum(points_of(profile.certifications, certification_points), 3), 300,
                        profile.certifications.size());
    case TrustCategory::Facility: {
      auto pts = points_of(profile.facilities, facility_points);
      const int best = pts.empty() ? 0 : *std::max_element(pts.begin(), pts.end());
      return make_score(category, best, 100, profile.facilities.size());
    }
    case TrustCategory::ProviderSystems: {
      std::vector<int> pts;
      for (const auto& f : profile.facilities) {
        for (const auto& s : f.systems) pts.push_back(system_points(s));
      }
      const std::size_t n = pts.size();
      return make_score(category, top_k_sum(std::move(pts), 3), 300, n);
    }
    case TrustCategory::Employee:
      return make_score(category, top_k_sum(points_of(profile.employees, employee_points), 3), 300,
                        profile.employees.size());
    case TrustCategory::Partner:
      return make_score(category, top_k_sum(points_of(profile.partners, partner_points), 3), 300,
                        profile.partners.size());
    case TrustCategory::LegalData: {
      if (!profile.legal) return make_score(category, 0, 100, 0);
      const auto& l = *profile.legal;
      const int pts = (has_text(l.vat) ? 35 : 0) + (has_text(l.crn) ? 25 : 0) +
                      (has_text(l.lei) || has_text(l.duns) ? 20 : 0) + (has_text(l.legal_form) ? 20 : 0);
      const std::size_t evidence = has_text(l.vat) + has_text(l.crn) + has_text(l.lei) + has_text(l.duns) +
                                   has_text(l.legal_form) + l.licenses.size();
      return make_score(category, pts, 100, evidence);
    }
    case TrustCategory::Terms: {
      const bool any_terms = std::any_of(profile.terms.begin(), profile.terms.end(),
                                         [](const TermsDoc& t) { return t.kind != TermsKind::Policy; });
      const bool any_policy = std::any_of(profile.terms.begin(), profile.terms.end(),
                                          [](const TermsDoc& t) { return t.kind == TermsKind::Policy; });
      return make_score(category, (any_terms ? 60 : 0) + (any_policy ? 40 : 0), 100, profile.terms.size());
    }
    case TrustCategory::Publication: {
      const auto professional = static_cast<int>(
          std::count_if(profile.publications.begin(), profile.publications.end(), is_professional));
      auto s = make_score(category, std::min(professional, 3), 3, profile.publications.size());
      const auto ignored = profile.publications.size() - static_cast<std::size_t>(professional);
      if (ignored > 0) {
        s.notes.push_back(std::to_string(ignored) + " internal or newsfeed publication(s) not counted");
      }
      return s;
    }
    case TrustCategory::MarketplaceAnalytics: {
      if (!analytics) {
        auto s = make_score(category, 0, 100, 0);
        s.notes.push_back("no marketplace analytics available");
        return s;
      }
      const int years = std::min(whole_years_between(analytics->registered_at, analytics->as_of), 3);
      const auto tx = static_cast<int>(std::min<std::uint64_t>(analytics->verified_transactions, 10));
      const int pts = years * 10 + (analytics->identity_verified ? 40 : 0) + tx * 3;
      const std::size_t evidence = (years > 0 ? 1 : 0) + (analytics->identity_verified ? 1 : 0) +
                                   static_cast<std::size_t>(analytics->verified_transactions);
      return make_score(category, pts, 100, evidence);
    }
  }
  return make_score(category, 0, 100, 0);
}

std::vector<CustomerReference> publishable_references(const ProviderProfile& profile,
                                                      std::span<const TransactionRef> transactions) {
  std::vector<CustomerReference> out;
  for (const auto& r : profile.references) {
    if (r.transaction) {
      if (r.transaction->confidential) continue;
      const bool marked = std::any_of(transactions.begin(), transactions.end(), [&](const TransactionRef& t) {
        return t.id == r.transaction->id && t.confidential;
      });
      if (marked) continue;
    }
    out.push_back(r);
  }
  return out;
}

namespace {

// Weights relative to the largest one, snapped to a 2^-40 grid. k*w and w
// land on the same grid points, so the weighted mean is exactly scale invariant.
CategoryWeights canonical_weights(const CategoryWeights& weights) {
  const double top = *std::max_element(weights.begin(), weights.end());
  CategoryWeights out{};
  if (!(top > 0.0)) return out;
  static const double grid = std::ldexp(1.0, 40);
  for (std::size_t i = 0; i < weights.size(); ++i) out[i] = std::round(weights[i] / top * grid) / grid;
  return out;
}

}  // namespace

TrustScoreReport aggregate_scores(std::string provider_id, std::string profile_name,
                                  std::vector<CategoryScore> scores, const CategoryWeights& weights) {
  TrustScoreReport report;
  report.provider_id = std::move(provider_id);
  report.profile = std::move(profile_name);
  const CategoryWeights norm = canonical_weights(weights);
  double total = 0.0;
  for (double w : norm) total += w;
  double weighted = 0.0;
  for (auto& s : scores) {
    const std::size_t i = category_index(s.category);
    const double contribution = total > 0.0 ? norm[i] * s.score / total : 0.0;
    weighted += norm[i] * s.score;
    report.breakdown.push_back({std::move(s), weights[i], contribution});
  }
  report.aggregate = total > 0.0 ? std::clamp(weighted / total, 0.0, 1.0) : 0.0;
  return report;
}

TrustScoreReport aggregate_trust(const ProviderProfile& profile, const WeightProfile& weights,
                                 const std::optional<AnalyticsEvidence>& analytics,
                                 std::span<const TransactionRef> transactions) {
  const auto published = publishable_references(profile, transactions);
  std::vector<CategoryScore> scores;
  scores.reserve(kAllCategories.size());
  for (auto c : kAllCategories) {
    scores.push_back(score_category(profile, c, analytics, published));
  }
  const auto withheld = profile.references.size() - published.size();
  if (withheld > 0) {
    scores[category_index(TrustCategory::CustomerReference)].notes.push_back(
        std::to_string(withheld) + " reference(s) withheld under confidentiality agreements");
  }
  return aggregate_scores(profile.provider_id.str(), weights.name(), std::move(scores), weights.weights());
}

std::vector<std::size_t> rank_order(std::span<const TrustScoreReport> reports) {
  static const double scale = std::pow(10.0, kRankPrecisionDigits);
  std::vector<long long> keys;
  keys.reserve(reports.size());
  for (const auto& r : reports) keys.push_back(std::llround(r.aggregate * scale));
  std::vector<std::size_t> idx(reports.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] > keys[b];
    return reports[a].provider_id < reports[b].provider_id;
  });
  return idx;
}

std::vector<std::string> rank(std::span<const TrustScoreReport> reports) {
  std::vector<std::string> out;
  for (auto i : rank_order(reports)) out.push_back(reports[i].provider_id);
  return out;
}

Result<DeltaReport, std::string> compare(const TrustScoreReport& a, const TrustScoreReport& b) {
  if (a.profile != b.profile) {
    return "reports use different weight profiles ('" + a.profile + "' vs '" + b.profile + "')";
  }
  DeltaReport d;
  d.a = a.provider_id;
  d.b = b.provider_id;
  d.profile = a.profile;
  d.aggregate_delta = a.aggregate - b.aggregate;
  for (auto c : kAllCategories) {
    const auto* ca = a.find(c);
    const auto* cb = b.find(c);
    d.category_deltas.emplace_back(c, (ca ? ca->score.score : 0.0) - (cb ? cb->score.score : 0.0));
  }
  return d;
}

}  // namespace trust
