#include "trust/catalog.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "trust/json_io.hpp"
#include "trust/stad.hpp"

namespace trust {

namespace fs = std::filesystem;
using nlohmann::json;

Clock system_clock_source() {
  return [] { return std::chrono::system_clock::now(); };
}

std::string iso_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Date utc_date(std::chrono::system_clock::time_point t) {
  const auto days = std::chrono::floor<std::chrono::days>(t).time_since_epoch().count();
  return Date::from_days_since_epoch(static_cast<long>(days));
}

std::string content_id(std::string_view canonical_text) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canonical_text.data(), canonical_text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < 8; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

bool MockVatVerifier::format_valid(std::string_view vat) {
  if (vat.size() < 4 || vat.size() > 14) return false;
  for (std::size_t i = 0; i < vat.size(); ++i) {
    const char c = vat[i];
    const bool upper = c >= 'A' && c <= 'Z';
    const bool digit = c >= '0' && c <= '9';
    if (i < 2 ? !upper : !(upper || digit)) return false;
  }
  return true;
}

VatCheckResult MockVatVerifier::check(const std::string& vat, std::chrono::system_clock::time_point now) {
  return {vat, format_valid(vat), iso_timestamp(now)};
}

struct CatalogStore::Entry {
  mutable std::mutex mu;
  fs::path dir;
  ProviderMeta meta;
  std::string document;
  ProviderProfile profile;
  std::vector<TransactionRecord> transactions;  // tx n at index n-1
  std::map<std::pair<std::string, std::string>, RatingRecord> ratings;
  int events_fd = -1;

  explicit Entry(ProviderProfile p) : profile(std::move(p)) {}
  ~Entry() {
    if (events_fd >= 0) ::close(events_fd);
  }

  TransactionRecord* tx(const std::string& tx_id) {
    for (auto& t : transactions) {
      if (t.tx_id == tx_id) return &t;
    }
    return nullptr;
  }

  // Shared by live operations and reload; events are trusted here.
  void apply(const json& e) {
    const std::string type = e.at("type").get<std::string>();
    if (type == "click") {
      ++meta.profile_clicks;
    } else if (type == "transaction") {
      TransactionRecord t;
      t.tx_id = e.at("tx_id").get<std::string>();
      t.provider_id = meta.id;
      t.customer_id = e.at("customer_id").get<std::string>();
      t.date = Date::parse(e.at("date").get<std::string>()).value();
      t.confidential = e.at("confidential").get<bool>();
      if (e.contains("document_transaction")) t.document_transaction = e["document_transaction"].get<std::string>();
      transactions.push_back(std::move(t));
    } else if (type == "verify") {
      if (auto* t = tx(e.at("tx_id").get<std::string>())) t->verified = true;
    } else if (type == "rating") {
      RatingRecord r{e.at("tx_id").get<std::string>(), e.at("value").get<int>(), e.at("rater_id").get<std::string>(),
                     e.at("rater_verified").get<bool>()};
      ratings.emplace(std::pair{r.tx_id, r.rater_id}, std::move(r));
    } else if (type == "vat") {
      if (e.at("format_valid").get<bool>()) meta.identity_verified = true;
    }
  }

  // Durable before the in-memory state changes.
  void append(const json& e) {
    const std::string line = e.dump() + "\n";
    std::size_t done = 0;
    while (done < line.size()) {
      const ssize_t n = ::write(events_fd, line.data() + done, line.size() - done);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error("cannot append to event log in " + dir.string());
      }
      done += static_cast<std::size_t>(n);
    }
    if (::fsync(events_fd) != 0) throw std::runtime_error("fsync failed for " + dir.string());
    apply(e);
  }

  void open_log() {
    events_fd = ::open((dir / "events.jsonl").c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
    if (events_fd < 0) throw std::runtime_error("cannot open event log in " + dir.string());
  }

  AnalyticsEvidence analytics(const Date& as_of) const {
    AnalyticsEvidence a;
    a.registered_at = meta.registered_at;
    a.as_of = as_of;
    a.profile_clicks = meta.profile_clicks;
    a.identity_verified = meta.identity_verified;
    for (const auto& t : transactions) a.verified_transactions += t.verified ? 1 : 0;
    for (const auto& [key, r] : ratings) {
      if (!r.rater_verified) continue;
      for (const auto& t : transactions) {
        if (t.tx_id == r.tx_id && t.verified) ++a.verified_ratings;
      }
    }
    return a;
  }
};

namespace {

StoreError not_found(const std::string& what) { return {StoreErrorKind::NotFound, what + " not found", nullptr}; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_synced(const fs::path& p, const std::string& data) {
  const int fd = ::open(p.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw std::runtime_error("cannot write " + p.string());
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0 && errno == EINTR) continue;
    if (n < 0) {
      ::close(fd);
      throw std::runtime_error("cannot write " + p.string());
    }
    done += static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
}

void sync_dir(const fs::path& p) {
  const int fd = ::open(p.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (fd >= 0) {
    ::fsync(fd);
    ::close(fd);
  }
}

}  // namespace

CatalogStore::CatalogStore(fs::path root, Clock clock) : root_(std::move(root)), clock_(std::move(clock)) {
  fs::create_directories(root_);
  load();
}

CatalogStore::~CatalogStore() = default;

void CatalogStore::load() {
  for (const auto& dirent : fs::directory_iterator(root_)) {
    if (!dirent.is_directory()) continue;
    const fs::path dir = dirent.path();
    if (dir.filename().string().starts_with(".")) continue;  // unfinished registration
    if (!fs::exists(dir / "meta.json") || !fs::exists(dir / "document.stad")) continue;

    const json meta = json::parse(read_file(dir / "meta.json"));
    std::string document = read_file(dir / "document.stad");
    auto graph = parse_document(document);
    if (!graph) throw std::runtime_error("stored document in " + dir.string() + " no longer parses");
    auto profile = extract_profile(graph.value());
    if (!profile) throw std::runtime_error("stored document in " + dir.string() + ": " + profile.error().message);

    auto entry = std::make_unique<Entry>(std::move(profile).value());
    entry->dir = dir;
    entry->document = std::move(document);
    entry->meta.id = meta.at("id").get<std::string>();
    entry->meta.provider_iri = meta.at("provider_iri").get<std::string>();
    entry->meta.registered_at = Date::parse(meta.at("registered_at").get<std::string>()).value();

    // A torn final line from a crash mid-append was never acknowledged; cut it off.
    const std::string log = fs::exists(dir / "events.jsonl") ? read_file(dir / "events.jsonl") : std::string();
    std::size_t good = 0;
    while (good < log.size()) {
      const auto nl = log.find('\n', good);
      if (nl == std::string::npos) break;
      json e = json::parse(log.begin() + static_cast<long>(good), log.begin() + static_cast<long>(nl), nullptr, false);
      if (e.is_discarded()) break;
      entry->apply(e);
      good = nl + 1;
    }
    if (good < log.size()) fs::resize_file(dir / "events.jsonl", good);
    entry->open_log();
    entries_.emplace(entry->meta.id, std::move(entry));
  }
}

CatalogStore::Entry* CatalogStore::find(const std::string& id) const {
  std::shared_lock lock(map_mutex_);
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : it->second.get();
}

CatalogStore::Entry* CatalogStore::find_by_tx(const std::string& tx_id, std::string& provider_id) const {
  const auto dash = tx_id.rfind('-');
  if (dash == std::string::npos) return nullptr;
  provider_id = tx_id.substr(0, dash);
  return find(provider_id);
}

Result<Registration, StoreError> CatalogStore::register_provider(std::string_view document) {
  auto graph = parse_document(document);
  if (!graph) {
    return StoreError{StoreErrorKind::BadRequest, graph.error().message, to_json(graph.error())};
  }
  Registration reg;
  reg.report = validate_graph(graph.value());
  if (!reg.report.valid) {
    json detail = to_json(reg.report);
    detail["error"] = "validation";
    return StoreError{StoreErrorKind::Unprocessable, "document violates its shapes", detail};
  }
  auto profile = extract_profile(graph.value());
  if (!profile) {
    return StoreError{StoreErrorKind::Unprocessable, profile.error().message,
                      json{{"error", "profile"}, {"message", profile.error().message}}};
  }

  const std::string canonical = serialize_graph(graph.value());
  reg.id = content_id(canonical);

  std::unique_lock lock(map_mutex_);
  if (entries_.count(reg.id)) return reg;

  // Build in a hidden directory and rename, so a crash never leaves a half-written provider.
  std::random_device rd;
  const fs::path tmp = root_ / ("." + reg.id + "-" + std::to_string(rd()));
  const fs::path dir = root_ / reg.id;
  fs::create_directories(tmp);
  const Date today = utc_date(clock_());
  write_synced(tmp / "document.stad", canonical);
  write_synced(tmp / "events.jsonl", "");
  write_synced(tmp / "meta.json", json{{"id", reg.id},
                                       {"provider_iri", profile->provider_id.str()},
                                       {"registered_at", today.to_string()}}
                                      .dump(2) +
                                      "\n");
  sync_dir(tmp);
  fs::rename(tmp, dir);
  sync_dir(root_);

  auto entry = std::make_unique<Entry>(std::move(profile).value());
  entry->dir = dir;
  entry->document = canonical;
  entry->meta.id = reg.id;
  entry->meta.provider_iri = entry->profile.provider_id.str();
  entry->meta.registered_at = today;
  entry->open_log();
  entries_.emplace(reg.id, std::move(entry));
  reg.created = true;
  return reg;
}

Result<ProviderView, StoreError> CatalogStore::fetch_provider(const std::string& id) {
  Entry* e = find(id);
  if (!e) return not_found("provider " + id);
  std::lock_guard lock(e->mu);
  e->append(json{{"type", "click"}});
  return ProviderView{e->meta, e->document};
}

Result<TransactionRecord, StoreError> CatalogStore::record_transaction(const std::string& provider_id,
                                                                       const std::string& customer_id,
                                                                       std::string_view date, bool confidential,
                                                                       std::optional<std::string> document_transaction) {
  Entry* e = find(provider_id);
  if (!e) return not_found("provider " + provider_id);
  if (!Date::parse(date)) {
    return StoreError{StoreErrorKind::BadRequest, "date must be a calendar date YYYY-MM-DD", nullptr};
  }
  if (customer_id.empty()) return StoreError{StoreErrorKind::BadRequest, "customer_id must not be empty", nullptr};
  std::lock_guard lock(e->mu);
  json event{{"type", "transaction"},
             {"tx_id", provider_id + "-" + std::to_string(e->transactions.size() + 1)},
             {"customer_id", customer_id},
             {"date", std::string(date)},
             {"confidential", confidential}};
  if (document_transaction) event["document_transaction"] = *document_transaction;
  e->append(event);
  return e->transactions.back();
}

Result<TransactionRecord, StoreError> CatalogStore::verify_transaction(const std::string& tx_id) {
  std::string provider_id;
  Entry* e = find_by_tx(tx_id, provider_id);
  if (!e) return not_found("transaction " + tx_id);
  std::lock_guard lock(e->mu);
  TransactionRecord* t = e->tx(tx_id);
  if (!t) return not_found("transaction " + tx_id);
  if (!t->verified) e->append(json{{"type", "verify"}, {"tx_id", tx_id}});
  return *e->tx(tx_id);
}

Result<RatingRecord, StoreError> CatalogStore::record_rating(const std::string& tx_id, int value,
                                                             const std::string& rater_id, bool rater_verified) {
  if (value < 1 || value > 5) return StoreError{StoreErrorKind::BadRequest, "rating value must be 1..5", nullptr};
  if (rater_id.empty()) return StoreError{StoreErrorKind::BadRequest, "rater_id must not be empty", nullptr};
  std::string provider_id;
  Entry* e = find_by_tx(tx_id, provider_id);
  if (!e) return not_found("transaction " + tx_id);
  std::lock_guard lock(e->mu);
  if (!e->tx(tx_id)) return not_found("transaction " + tx_id);
  if (e->ratings.count({tx_id, rater_id})) {
    return StoreError{StoreErrorKind::Conflict, "rater " + rater_id + " already rated " + tx_id, nullptr};
  }
  e->append(json{{"type", "rating"},
                 {"tx_id", tx_id},
                 {"value", value},
                 {"rater_id", rater_id},
                 {"rater_verified", rater_verified}});
  return e->ratings.at({tx_id, rater_id});
}

Result<AnalyticsEvidence, StoreError> CatalogStore::analytics(const std::string& provider_id) const {
  Entry* e = find(provider_id);
  if (!e) return not_found("provider " + provider_id);
  const Date today = utc_date(clock_());
  std::lock_guard lock(e->mu);
  return e->analytics(today);
}

Result<VatCheckResult, StoreError> CatalogStore::verify_vat(const std::string& provider_id, VatVerifier& verifier) {
  Entry* e = find(provider_id);
  if (!e) return not_found("provider " + provider_id);
  if (!e->profile.legal || !e->profile.legal->vat) {
    return StoreError{StoreErrorKind::Unprocessable, "provider document carries no VAT number", nullptr};
  }
  const VatCheckResult result = verifier.check(*e->profile.legal->vat, clock_());
  std::lock_guard lock(e->mu);
  e->append(json{{"type", "vat"},
                 {"vat", result.vat},
                 {"format_valid", result.format_valid},
                 {"checked_at", result.checked_at}});
  return result;
}

Result<ScoringInputs, StoreError> CatalogStore::scoring_inputs(const std::string& provider_id) const {
  Entry* e = find(provider_id);
  if (!e) return not_found("provider " + provider_id);
  const Date today = utc_date(clock_());
  std::lock_guard lock(e->mu);
  ScoringInputs in{e->profile, e->analytics(today), {}};
  for (const auto& t : e->transactions) {
    in.transactions.push_back({t.document_transaction.value_or(t.tx_id), t.date, t.confidential});
  }
  return in;
}

Result<json, StoreError> CatalogStore::references(const std::string& provider_id) const {
  auto in = scoring_inputs(provider_id);
  if (!in) return in.error();
  json refs = json::array();
  for (const auto& r : publishable_references(in->profile, in->transactions)) refs.push_back(to_json(r));
  json txs = json::array();
  Entry* e = find(provider_id);
  std::lock_guard lock(e->mu);
  for (const auto& t : e->transactions) {
    if (t.confidential) continue;
    txs.push_back(json{{"tx_id", t.tx_id},
                       {"customer_id", t.customer_id},
                       {"date", t.date.to_string()},
                       {"verified", t.verified}});
  }
  return json{{"provider", provider_id}, {"references", refs}, {"transactions", txs}};
}

std::vector<std::string> CatalogStore::provider_ids() const {
  std::shared_lock lock(map_mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : entries_) ids.push_back(id);
  return ids;
}

}  // namespace trust
