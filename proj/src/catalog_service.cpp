#include "trust/service.hpp"

#include <algorithm>
#include <thread>
#include <vector>

#ifndef CPPHTTPLIB_LISTEN_BACKLOG
#define CPPHTTPLIB_LISTEN_BACKLOG 256
#endif
#include <httplib.h>

#include "trust/json_io.hpp"

namespace trust {

using nlohmann::json;

namespace {

ApiResponse reply(int status, const json& body) { return {status, body.dump(), "application/json"}; }

ApiResponse error_reply(int status, std::string_view kind, const std::string& message) {
  return reply(status, json{{"error", kind}, {"message", message}});
}

ApiResponse store_error(const StoreError& e) {
  int status = 400;
  std::string_view kind = "bad-request";
  switch (e.kind) {
    case StoreErrorKind::BadRequest: break;
    case StoreErrorKind::NotFound: status = 404; kind = "not-found"; break;
    case StoreErrorKind::Conflict: status = 409; kind = "conflict"; break;
    case StoreErrorKind::Unprocessable: status = 422; kind = "unprocessable"; break;
  }
  if (!e.detail.is_null()) return reply(status, e.detail);
  return error_reply(status, kind, e.message);
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    if (path[i] == '/') {
      ++i;
      continue;
    }
    const auto j = std::min(path.find('/', i), path.size());
    parts.push_back(path.substr(i, j - i));
    i = j;
  }
  return parts;
}

bool safe_profile_name(const std::string& name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
  });
}

json transaction_json(const TransactionRecord& t) {
  json j{{"tx_id", t.tx_id},       {"provider_id", t.provider_id},   {"customer_id", t.customer_id},
         {"date", t.date.to_string()}, {"confidential", t.confidential}, {"verified", t.verified}};
  if (t.document_transaction) j["document_transaction"] = *t.document_transaction;
  return j;
}

std::optional<json> parse_object(const std::string& body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

}  // namespace

CatalogService::CatalogService(CatalogStore& store, VatVerifier& vat, std::optional<std::filesystem::path> profiles_dir)
    : store_(store), vat_(vat), profiles_dir_(std::move(profiles_dir)) {}

Result<WeightProfile, std::string> CatalogService::resolve_profile(
    const std::map<std::string, std::string>& query) const {
  if (auto it = query.find("weights"); it != query.end()) {
    json j = json::parse(it->second, nullptr, false);
    if (j.is_discarded()) return std::string("inline weights are not valid JSON");
    if (j.is_object() && !j.contains("weights")) j = json{{"name", "inline"}, {"weights", j}};
    return weight_profile_from_json(j);
  }
  std::string name = std::string(kDefaultProfileName);
  if (auto it = query.find("profile"); it != query.end()) name = it->second;
  if (!safe_profile_name(name)) return "invalid weight profile name '" + name + "'";
  if (profiles_dir_) {
    const auto path = *profiles_dir_ / (name + ".json");
    if (std::filesystem::exists(path)) return load_weight_profile_file(path.string());
  }
  if (name == kDefaultProfileName) return default_weight_profile();
  return "unknown weight profile '" + name + "'";
}

ApiResponse CatalogService::handle(const ApiRequest& req) {
  const auto parts = split_path(req.path);
  const bool get = req.method == "GET";
  const bool post = req.method == "POST";
  auto wrong_method = [&] { return error_reply(405, "method-not-allowed", req.method + " " + req.path); };

  try {
    if (parts.size() == 1 && parts[0] == "providers") {
      if (!post) return wrong_method();
      std::string document = req.body;
      if (req.content_type.find("json") != std::string::npos) {
        auto j = parse_object(req.body);
        if (!j || !j->contains("document") || !(*j)["document"].is_string()) {
          return error_reply(400, "bad-request", "expected {\"document\": \"<STAD text>\"}");
        }
        document = (*j)["document"].get<std::string>();
      }
      auto reg = store_.register_provider(document);
      if (!reg) return store_error(reg.error());
      return reply(reg->created ? 201 : 200,
                   json{{"id", reg->id}, {"created", reg->created}, {"report", to_json(reg->report)}});
    }

    if (parts.size() == 1 && parts[0] == "rank") {
      if (!get) return wrong_method();
      auto weights = resolve_profile(req.query);
      if (!weights) return error_reply(400, "bad-request", weights.error());
      std::vector<std::string> ids = store_.provider_ids();
      std::vector<TrustScoreReport> reports;
      for (const auto& id : ids) {
        auto in = store_.scoring_inputs(id);
        if (!in) return store_error(in.error());
        reports.push_back(aggregate_trust(in->profile, weights.value(), in->analytics, in->transactions));
      }
      json ranking = json::array();
      for (auto i : rank_order(reports)) {
        ranking.push_back(json{{"id", ids[i]},
                               {"provider_id", reports[i].provider_id},
                               {"aggregate", round_report(reports[i].aggregate)}});
      }
      return reply(200, json{{"profile", weights->name()}, {"ranking", ranking}});
    }

    if (parts.size() >= 2 && parts[0] == "providers") {
      const std::string& id = parts[1];
      if (parts.size() == 2) {
        if (!get) return wrong_method();
        auto view = store_.fetch_provider(id);
        if (!view) return store_error(view.error());
        const auto& m = view->meta;
        return reply(200, json{{"id", m.id},
                               {"provider_iri", m.provider_iri},
                               {"document", view->document},
                               {"registered_at", m.registered_at.to_string()},
                               {"profile_clicks", m.profile_clicks},
                               {"identity_verified", m.identity_verified}});
      }
      if (parts.size() != 3) return error_reply(404, "not-found", req.path);
      const std::string& action = parts[2];

      if (action == "score") {
        if (!get) return wrong_method();
        auto in = store_.scoring_inputs(id);
        if (!in) return store_error(in.error());
        auto weights = resolve_profile(req.query);
        if (!weights) return error_reply(400, "bad-request", weights.error());
        return reply(200, to_json(aggregate_trust(in->profile, weights.value(), in->analytics, in->transactions)));
      }
      if (action == "transactions") {
        if (!post) return wrong_method();
        auto j = parse_object(req.body);
        if (!j) return error_reply(400, "bad-request", "body must be a JSON object");
        if (!j->contains("customer_id") || !(*j)["customer_id"].is_string() || !j->contains("date") ||
            !(*j)["date"].is_string()) {
          return error_reply(400, "bad-request", "customer_id and date are required strings");
        }
        bool confidential = false;
        if (j->contains("confidential")) {
          if (!(*j)["confidential"].is_boolean()) return error_reply(400, "bad-request", "confidential must be boolean");
          confidential = (*j)["confidential"].get<bool>();
        }
        std::optional<std::string> doc_tx;
        if (j->contains("transaction")) {
          if (!(*j)["transaction"].is_string()) return error_reply(400, "bad-request", "transaction must be a string");
          doc_tx = (*j)["transaction"].get<std::string>();
        }
        auto tx = store_.record_transaction(id, (*j)["customer_id"].get<std::string>(),
                                            (*j)["date"].get<std::string>(), confidential, doc_tx);
        if (!tx) return store_error(tx.error());
        return reply(201, transaction_json(tx.value()));
      }
      if (action == "references") {
        if (!get) return wrong_method();
        auto refs = store_.references(id);
        if (!refs) return store_error(refs.error());
        return reply(200, refs.value());
      }
      if (action == "analytics") {
        if (!get) return wrong_method();
        auto a = store_.analytics(id);
        if (!a) return store_error(a.error());
        return reply(200, to_json(a.value()));
      }
      if (action == "verify-vat") {
        if (!post) return wrong_method();
        auto r = store_.verify_vat(id, vat_);
        if (!r) return store_error(r.error());
        return reply(200, json{{"vat", r->vat}, {"format_valid", r->format_valid}, {"checked_at", r->checked_at}});
      }
      return error_reply(404, "not-found", req.path);
    }

    if (parts.size() == 3 && parts[0] == "transactions") {
      const std::string& tx_id = parts[1];
      if (parts[2] == "verify") {
        if (!post) return wrong_method();
        auto tx = store_.verify_transaction(tx_id);
        if (!tx) return store_error(tx.error());
        return reply(200, transaction_json(tx.value()));
      }
      if (parts[2] == "rating") {
        if (!post) return wrong_method();
        auto j = parse_object(req.body);
        if (!j) return error_reply(400, "bad-request", "body must be a JSON object");
        if (!j->contains("value") || !(*j)["value"].is_number_integer()) {
          return error_reply(400, "bad-request", "value must be an integer 1..5");
        }
        if (!j->contains("rater_id") || !(*j)["rater_id"].is_string()) {
          return error_reply(400, "bad-request", "rater_id is a required string");
        }
        bool rater_verified = false;
        if (j->contains("rater_verified")) {
          if (!(*j)["rater_verified"].is_boolean()) {
            return error_reply(400, "bad-request", "rater_verified must be boolean");
          }
          rater_verified = (*j)["rater_verified"].get<bool>();
        }
        const auto value = (*j)["value"].get<long long>();
        if (value < 1 || value > 5) return error_reply(400, "bad-request", "value must be an integer 1..5");
        auto r = store_.record_rating(tx_id, static_cast<int>(value), (*j)["rater_id"].get<std::string>(),
                                      rater_verified);
        if (!r) return store_error(r.error());
        return reply(201, json{{"tx_id", r->tx_id},
                               {"value", r->value},
                               {"rater_id", r->rater_id},
                               {"rater_verified", r->rater_verified}});
      }
    }
    return error_reply(404, "not-found", req.path);
  } catch (const std::exception& e) {
    return error_reply(500, "internal", e.what());
  }
}

struct HttpFrontend::Impl {
  static constexpr std::size_t kWorkers = 32;
  CatalogService& service;
  httplib::Server server;
  std::thread thread;

  explicit Impl(CatalogService& s) : service(s) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      ApiRequest api{req.method, req.path, {}, req.body, req.get_header_value("Content-Type")};
      for (const auto& [k, v] : req.params) api.query.emplace(k, v);
      ApiResponse out = service.handle(api);
      res.status = out.status;
      res.set_content(out.body, out.content_type);
    };
    server.Get(".*", forward);
    server.Post(".*", forward);
    server.Put(".*", forward);
    server.Delete(".*", forward);
    // idle keep-alive sockets pin a worker each
    server.new_task_queue = [] { return new httplib::ThreadPool(kWorkers); };
    server.set_keep_alive_timeout(1);
  }
};

HttpFrontend::HttpFrontend(CatalogService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpFrontend::~HttpFrontend() { stop(); }

int HttpFrontend::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpFrontend::listen() { impl_->server.listen_after_bind(); }

void HttpFrontend::start() {
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpFrontend::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace trust
