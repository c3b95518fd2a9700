#pragma once

// Shared helpers for the unit and acceptance suites.

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "trust/stad.hpp"
#include "trust/vocab.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) { return std::string(TRUST_FIXTURE_DIR) + "/" + name; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string read_fixture(const std::string& name) { return read_file(fixture_path(name)); }

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

inline trust::TrustGraph parse_or_throw(const std::string& text) {
  auto g = trust::parse_document(text);
  if (!g) throw std::runtime_error("fixture does not parse: " + g.error().message);
  return std::move(g).value();
}

inline trust::TrustGraph fixture_graph(const std::string& name) { return parse_or_throw(read_fixture(name)); }

// Removes itself (recursively) on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "trust") {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

inline trust::Term iri(const std::string& curie) { return trust::Term::iri(trust::term_iri(curie)); }

// Copy of `g` without the triples matching `drop`.
inline trust::TrustGraph without(const trust::TrustGraph& g, const std::function<bool(const trust::Triple&)>& drop) {
  trust::TrustGraph out;
  for (const auto& t : g.triples()) {
    if (!drop(t)) out.insert(t);
  }
  return out;
}

}  // namespace testsupport
