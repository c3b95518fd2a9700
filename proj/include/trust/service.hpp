#pragma once

// HTTP JSON front end of the catalog. Routing and response building happen in
// CatalogService::handle, independent of the socket layer.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "trust/catalog.hpp"
#include "trust/engine.hpp"
#include "trust/result.hpp"

namespace trust {

struct ApiRequest {
  std::string method;  // "GET" or "POST"
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
  std::string content_type;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

class CatalogService {
 public:
  // Weight profiles are looked up as <profiles_dir>/<name>.json; "default" is
  // always available.
  CatalogService(CatalogStore& store, VatVerifier& vat, std::optional<std::filesystem::path> profiles_dir = {});

  ApiResponse handle(const ApiRequest& request);

  // "profile" names a stored profile, "weights" carries one inline as JSON.
  Result<WeightProfile, std::string> resolve_profile(const std::map<std::string, std::string>& query) const;

 private:
  CatalogStore& store_;
  VatVerifier& vat_;
  std::optional<std::filesystem::path> profiles_dir_;
};

class HttpFrontend {
 public:
  explicit HttpFrontend(CatalogService& service);
  ~HttpFrontend();
  HttpFrontend(const HttpFrontend&) = delete;
  HttpFrontend& operator=(const HttpFrontend&) = delete;

  // Port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  void listen();  // blocks until stop()
  void start();   // listen() on a background thread
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace trust
