#pragma once

// Trust scoring: MoSCoW ratings become category weights, fixed rubrics turn
// profile evidence into per-category scores, and the weighted mean of the ten
// category scores is the provider's aggregate trust value.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trust/date.hpp"
#include "trust/profile.hpp"
#include "trust/result.hpp"
#include "trust/vocab.hpp"

namespace trust {

class MoscowRating {
 public:
  // nullopt outside [1, 4].
  static std::optional<MoscowRating> make(double value);
  double value() const { return value_; }

 private:
  explicit MoscowRating(double v) : value_(v) {}
  double value_;
};

// (4 - r) / 3: must (1) -> 1, won't (4) -> 0.
double moscow_to_weight(MoscowRating r);
// Throws std::out_of_range for ratings outside [1, 4].
double moscow_to_weight(double rating);

using CategoryWeights = std::array<double, kAllCategories.size()>;

std::size_t category_index(TrustCategory c);

class WeightProfile {
 public:
  // Every weight must be finite and in [0, 1], with at least one above zero.
  static Result<WeightProfile, std::string> make(std::string name, const CategoryWeights& weights);
  static Result<WeightProfile, std::string> make(std::string name, const std::map<TrustCategory, double>& weights);

  const std::string& name() const { return name_; }
  double weight(TrustCategory c) const { return weights_[category_index(c)]; }
  const CategoryWeights& weights() const { return weights_; }
  double total() const;

 private:
  WeightProfile(std::string name, const CategoryWeights& w) : name_(std::move(name)), weights_(w) {}
  std::string name_;
  CategoryWeights weights_;
};

inline constexpr std::string_view kDefaultProfileName = "default";

// moscow_to_weight applied to the expert rating of every category.
WeightProfile default_weight_profile();

struct AnalyticsEvidence {
  Date registered_at;
  Date as_of;  // snapshot date; tenure is measured up to here
  std::uint64_t profile_clicks = 0;
  std::uint64_t verified_transactions = 0;
  std::uint64_t verified_ratings = 0;
  bool identity_verified = false;
};

struct CategoryScore {
  TrustCategory category = TrustCategory::CustomerReference;
  double score = 0.0;
  std::size_t evidence_count = 0;
  std::vector<std::string> notes;
};

struct CategoryBreakdown {
  CategoryScore score;
  double weight = 0.0;
  double contribution = 0.0;
};

struct TrustScoreReport {
  std::string provider_id;
  std::string profile;  // weight profile name
  double aggregate = 0.0;
  std::vector<CategoryBreakdown> breakdown;  // kAllCategories order

  const CategoryBreakdown* find(TrustCategory c) const;
};

// `published_refs` is the NDA-filtered evidence for CustomerReference;
// MarketplaceAnalytics scores 0 without analytics.
CategoryScore score_category(const ProviderProfile& profile, TrustCategory category,
                             const std::optional<AnalyticsEvidence>& analytics,
                             std::span<const CustomerReference> published_refs);

// References that may be shown publicly: unlinked ones, and those whose
// transaction is not under a confidentiality agreement according to either the
// document or the supplied transaction records (matched by id).
std::vector<CustomerReference> publishable_references(const ProviderProfile& profile,
                                                      std::span<const TransactionRef> transactions);

TrustScoreReport aggregate_trust(const ProviderProfile& profile, const WeightProfile& weights,
                                 const std::optional<AnalyticsEvidence>& analytics,
                                 std::span<const TransactionRef> transactions);

// Weighted mean over already-computed category scores with arbitrary
// non-negative weights (not restricted to [0, 1]). aggregate_trust delegates here.
TrustScoreReport aggregate_scores(std::string provider_id, std::string profile_name,
                                  std::vector<CategoryScore> scores, const CategoryWeights& weights);

// Aggregates equal to this many decimal places rank as ties.
inline constexpr int kRankPrecisionDigits = 9;

// Indices of `reports` by descending aggregate, ties by ascending provider_id,
// then by input position.
std::vector<std::size_t> rank_order(std::span<const TrustScoreReport> reports);
std::vector<std::string> rank(std::span<const TrustScoreReport> reports);

struct DeltaReport {
  std::string a;
  std::string b;
  std::string profile;
  double aggregate_delta = 0.0;
  std::vector<std::pair<TrustCategory, double>> category_deltas;  // a - b
};

// Fails when the reports were produced with differently named weight profiles.
Result<DeltaReport, std::string> compare(const TrustScoreReport& a, const TrustScoreReport& b);

}  // namespace trust
