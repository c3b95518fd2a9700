#pragma once

// File-backed provider catalog. Layout under the store root:
//   <id>/document.stad   canonical serialization of the registered document
//   <id>/meta.json       id, provider IRI, registration date
//   <id>/events.jsonl    append-only log: transactions, verifications,
//                        ratings, clicks, VAT checks
// Everything mutable lives in the event log, so a reload replays it.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "trust/date.hpp"
#include "trust/engine.hpp"
#include "trust/profile.hpp"
#include "trust/result.hpp"
#include "trust/shapes.hpp"

namespace trust {

using Clock = std::function<std::chrono::system_clock::time_point()>;
Clock system_clock_source();

std::string iso_timestamp(std::chrono::system_clock::time_point t);  // 2024-01-31T12:00:00Z
Date utc_date(std::chrono::system_clock::time_point t);

// First 16 hex characters of SHA-256 over the canonical serialization.
std::string content_id(std::string_view canonical_text);

struct TransactionRecord {
  std::string tx_id;  // "<provider id>-<n>"
  std::string provider_id;
  std::string customer_id;
  Date date;
  bool confidential = false;
  bool verified = false;
  // Transaction node of the registered document this record stands for.
  std::optional<std::string> document_transaction;
};

struct RatingRecord {
  std::string tx_id;
  int value = 0;
  std::string rater_id;
  bool rater_verified = false;
};

struct VatCheckResult {
  std::string vat;
  bool format_valid = false;
  std::string checked_at;
};

class VatVerifier {
 public:
  virtual ~VatVerifier() = default;
  virtual VatCheckResult check(const std::string& vat, std::chrono::system_clock::time_point now) = 0;
};

// Offline stand-in: two uppercase letters followed by 2-12 uppercase letters or digits.
class MockVatVerifier : public VatVerifier {
 public:
  VatCheckResult check(const std::string& vat, std::chrono::system_clock::time_point now) override;
  static bool format_valid(std::string_view vat);
};

struct ProviderMeta {
  std::string id;
  std::string provider_iri;
  Date registered_at;
  std::uint64_t profile_clicks = 0;
  bool identity_verified = false;
};

struct ProviderView {
  ProviderMeta meta;
  std::string document;
};

// Everything scoring needs for one stored provider.
struct ScoringInputs {
  ProviderProfile profile;
  AnalyticsEvidence analytics;
  std::vector<TransactionRef> transactions;
};

enum class StoreErrorKind { BadRequest, NotFound, Conflict, Unprocessable };

struct StoreError {
  StoreErrorKind kind = StoreErrorKind::BadRequest;
  std::string message;
  nlohmann::json detail;  // parse error or validation report, when relevant
};

struct Registration {
  std::string id;
  bool created = false;
  ValidationReport report;
};

class CatalogStore {
 public:
  // Loads every provider directory already present under `root`.
  explicit CatalogStore(std::filesystem::path root, Clock clock = system_clock_source());
  ~CatalogStore();
  CatalogStore(const CatalogStore&) = delete;
  CatalogStore& operator=(const CatalogStore&) = delete;

  Result<Registration, StoreError> register_provider(std::string_view document);
  // Counts as a profile click.
  Result<ProviderView, StoreError> fetch_provider(const std::string& id);
  Result<TransactionRecord, StoreError> record_transaction(const std::string& provider_id,
                                                           const std::string& customer_id, std::string_view date,
                                                           bool confidential,
                                                           std::optional<std::string> document_transaction = {});
  Result<TransactionRecord, StoreError> verify_transaction(const std::string& tx_id);
  Result<RatingRecord, StoreError> record_rating(const std::string& tx_id, int value, const std::string& rater_id,
                                                 bool rater_verified);
  Result<AnalyticsEvidence, StoreError> analytics(const std::string& provider_id) const;
  Result<VatCheckResult, StoreError> verify_vat(const std::string& provider_id, VatVerifier& verifier);

  Result<ScoringInputs, StoreError> scoring_inputs(const std::string& provider_id) const;
  // Document references that survive the confidentiality filter, plus the
  // non-confidential catalog transactions.
  Result<nlohmann::json, StoreError> references(const std::string& provider_id) const;

  std::vector<std::string> provider_ids() const;
  const std::filesystem::path& root() const { return root_; }

 private:
  struct Entry;

  Entry* find(const std::string& id) const;
  Entry* find_by_tx(const std::string& tx_id, std::string& provider_id) const;
  void load();

  std::filesystem::path root_;
  Clock clock_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::unique_ptr<Entry>> entries_;
};

}  // namespace trust
