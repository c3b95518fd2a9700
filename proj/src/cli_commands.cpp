#include "trust/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "trust/catalog.hpp"
#include "trust/corpus.hpp"
#include "trust/engine.hpp"
#include "trust/json_io.hpp"
#include "trust/profile.hpp"
#include "trust/service.hpp"
#include "trust/shapes.hpp"
#include "trust/stad.hpp"

namespace trust {

namespace fs = std::filesystem;

namespace {

std::optional<std::string> read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

// Outcome of reading, parsing, validating and projecting one document.
struct Loaded {
  int code = kExitOk;
  std::optional<ProviderProfile> profile;
};

Loaded load_profile(const std::string& file, std::ostream& out, std::ostream& err, bool print_failures) {
  auto text = read_text(file);
  if (!text) {
    err << "error: cannot read " << file << "\n";
    return {kExitIo, {}};
  }
  auto graph = parse_document(*text);
  if (!graph) {
    if (print_failures) out << to_json(graph.error()).dump() << "\n";
    err << file << ":" << graph.error().line << ":" << graph.error().column << ": "
        << parse_code_id(graph.error().code) << " " << graph.error().message << "\n";
    return {kExitParse, {}};
  }
  auto report = validate_graph(graph.value());
  if (!report.valid) {
    if (print_failures) out << to_json(report).dump() << "\n";
    err << file << ": " << report.errors.size() << " shape error(s)\n";
    return {kExitInvalid, {}};
  }
  auto profile = extract_profile(graph.value());
  if (!profile) {
    err << file << ": " << profile.error().message << "\n";
    return {kExitInvalid, {}};
  }
  return {kExitOk, std::move(profile).value()};
}

std::optional<WeightProfile> load_weights(const std::optional<std::string>& path, std::ostream& err) {
  if (!path) return default_weight_profile();
  auto w = load_weight_profile_file(*path);
  if (!w) {
    err << "error: " << w.error() << "\n";
    return std::nullopt;
  }
  return w.value();
}

TrustScoreReport offline_score(const ProviderProfile& profile, const WeightProfile& weights) {
  return aggregate_trust(profile, weights, std::nullopt, {});
}

}  // namespace

int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err) {
  auto text = read_text(file);
  if (!text) {
    err << "error: cannot read " << file << "\n";
    return kExitIo;
  }
  auto graph = parse_document(*text);
  if (!graph) {
    out << to_json(graph.error()).dump() << "\n";
    return kExitParse;
  }
  auto report = validate_graph(graph.value());
  out << to_json(report).dump() << "\n";
  return report.valid ? kExitOk : kExitInvalid;
}

int cmd_score(const std::string& file, const std::optional<std::string>& profile_path, std::ostream& out,
              std::ostream& err) {
  auto weights = load_weights(profile_path, err);
  if (!weights) return kExitInvalid;
  auto loaded = load_profile(file, out, err, true);
  if (!loaded.profile) return loaded.code;
  out << to_json(offline_score(*loaded.profile, *weights)).dump() << "\n";
  return kExitOk;
}

int cmd_rank(const std::string& dir, const std::optional<std::string>& profile_path, std::ostream& out,
             std::ostream& err) {
  auto weights = load_weights(profile_path, err);
  if (!weights) return kExitInvalid;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    err << "error: " << dir << " is not a directory\n";
    return kExitIo;
  }
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (e.is_regular_file() && e.path().extension() == ".stad") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());

  std::vector<TrustScoreReport> reports;
  std::vector<std::string> scored_files;
  Json skipped = Json::array();
  for (const auto& f : files) {
    std::ostringstream sink;
    std::ostringstream why;
    auto loaded = load_profile(f, sink, why, false);
    if (!loaded.profile) {
      err << "skipped " << why.str();
      std::string reason = why.str();
      if (!reason.empty() && reason.back() == '\n') reason.pop_back();
      skipped.push_back(Json{{"file", fs::path(f).filename().string()}, {"reason", reason}});
      continue;
    }
    reports.push_back(offline_score(*loaded.profile, *weights));
    scored_files.push_back(fs::path(f).filename().string());
  }
  if (reports.empty()) {
    err << "error: no valid .stad documents in " << dir << "\n";
    out << Json{{"profile", weights->name()}, {"ranking", Json::array()}, {"skipped", skipped}}.dump() << "\n";
    return kExitInvalid;
  }
  Json ranking = Json::array();
  for (auto i : rank_order(reports)) {
    ranking.push_back(Json{{"file", scored_files[i]},
                           {"provider_id", reports[i].provider_id},
                           {"aggregate", round_report(reports[i].aggregate)}});
  }
  out << Json{{"profile", weights->name()}, {"ranking", ranking}, {"skipped", skipped}}.dump() << "\n";
  return kExitOk;
}

int cmd_diff(const std::string& file_a, const std::string& file_b, const std::optional<std::string>& profile_path,
             std::ostream& out, std::ostream& err) {
  auto weights = load_weights(profile_path, err);
  if (!weights) return kExitInvalid;
  auto a = load_profile(file_a, out, err, true);
  if (!a.profile) return a.code;
  auto b = load_profile(file_b, out, err, true);
  if (!b.profile) return b.code;
  auto delta = compare(offline_score(*a.profile, *weights), offline_score(*b.profile, *weights));
  if (!delta) {
    err << "error: " << delta.error() << "\n";
    return kExitInvalid;
  }
  out << to_json(delta.value()).dump() << "\n";
  return kExitOk;
}

int cmd_gen_corpus(std::size_t n, std::uint64_t seed, const std::string& out_dir,
                   const std::optional<std::string>& prevalence_path, std::ostream& out, std::ostream& err) {
  std::map<std::string, double> overrides;
  if (prevalence_path) {
    auto text = read_text(*prevalence_path);
    if (!text) {
      err << "error: cannot read " << *prevalence_path << "\n";
      return kExitIo;
    }
    Json j = Json::parse(*text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      err << "error: prevalence file must be a JSON object of signal -> probability\n";
      return kExitInvalid;
    }
    for (const auto& [k, v] : j.items()) {
      if (!v.is_number()) {
        err << "error: prevalence of '" << k << "' must be a number\n";
        return kExitInvalid;
      }
      overrides[k] = v.get<double>();
    }
  }
  auto params = make_corpus_params(n, seed, overrides);
  if (!params) {
    err << "error: " << params.error() << "\n";
    return kExitInvalid;
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    err << "error: cannot create " << out_dir << ": " << ec.message() << "\n";
    return kExitIo;
  }
  std::map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i < n; ++i) {
    auto doc = generate_document(params.value(), i);
    std::ofstream f(fs::path(out_dir) / doc.file_name, std::ios::binary);
    f << doc.text;
    if (!f) {
      err << "error: cannot write " << doc.file_name << "\n";
      return kExitIo;
    }
    for (const auto& [signal, present] : doc.signals) counts[signal] += present ? 1 : 0;
  }
  Json freq = Json::object();
  for (const auto& [signal, p] : params->prevalence) {
    freq[signal] = n ? static_cast<double>(counts[signal]) / static_cast<double>(n) : 0.0;
  }
  out << Json{{"documents", n}, {"seed", seed}, {"out", out_dir}, {"frequencies", freq}}.dump() << "\n";
  return kExitOk;
}

int cmd_serve(int port, const std::string& store_dir, const std::optional<std::string>& profiles_dir,
              std::ostream& out, std::ostream& err) {
  try {
    CatalogStore store(store_dir);
    MockVatVerifier vat;
    std::optional<fs::path> profiles;
    if (profiles_dir) profiles = *profiles_dir;
    CatalogService service(store, vat, profiles);
    HttpFrontend http(service);
    const int bound = http.bind("0.0.0.0", port);
    if (bound < 0) {
      err << "error: cannot listen on port " << port << "\n";
      return kExitIo;
    }
    out << Json{{"listening", bound}, {"store", store_dir}}.dump() << std::endl;
    http.listen();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  if (const char* ns_file = std::getenv(kNamespaceEnv); ns_file && *ns_file) {
    auto text = read_text(ns_file);
    if (!text) {
      err << "error: cannot read " << ns_file << "\n";
      return kExitIo;
    }
    Json j = Json::parse(*text, nullptr, false);
    auto table = j.is_discarded() ? Result<PrefixTable, std::string>(std::string("not valid JSON"))
                                  : namespace_table_from_json(j);
    if (!table) {
      err << "error: " << kNamespaceEnv << ": " << table.error() << "\n";
      return kExitInvalid;
    }
    if (!configure_namespaces(table.value())) {
      err << "error: namespaces already in use\n";
      return kExitInvalid;
    }
  }

  CLI::App app{"Validate, score and rank service trust advertisements"};
  app.require_subcommand(1);

  std::string file, file_b, dir, out_dir, store_dir;
  std::optional<std::string> profile, prevalence, profiles_dir;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  int port = 8080;

  auto* validate = app.add_subcommand("validate", "Check a document against the vocabulary shapes");
  validate->add_option("FILE", file, "STAD document")->required();

  auto* score = app.add_subcommand("score", "Score a document offline (no marketplace analytics)");
  score->add_option("FILE", file, "STAD document")->required();
  score->add_option("--profile", profile, "Weight profile JSON file");

  auto* rank = app.add_subcommand("rank", "Rank every .stad document in a directory");
  rank->add_option("DIR", dir, "Directory of STAD documents")->required();
  rank->add_option("--profile", profile, "Weight profile JSON file");

  auto* diff = app.add_subcommand("diff", "Per-category score differences A - B");
  diff->add_option("A", file, "First document")->required();
  diff->add_option("B", file_b, "Second document")->required();
  diff->add_option("--profile", profile, "Weight profile JSON file");

  auto* gen = app.add_subcommand("gen-corpus", "Generate a deterministic synthetic corpus");
  gen->add_option("--n", n, "Number of documents")->required();
  gen->add_option("--seed", seed, "64-bit seed")->required();
  gen->add_option("--out", out_dir, "Output directory")->required();
  gen->add_option("--prevalence", prevalence, "JSON object of signal -> probability overrides");
  gen->footer(corpus_generation_notes());

  auto* serve = app.add_subcommand("serve", "Run the catalog HTTP service");
  serve->add_option("--port", port, "Listen port")->envname("TRUSTCTL_PORT");
  serve->add_option("--store", store_dir, "Store directory")->required()->envname("TRUSTCTL_STORE");
  serve->add_option("--profiles", profiles_dir, "Directory of <name>.json weight profiles")
      ->envname("TRUSTCTL_PROFILES");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  }

  if (*validate) return cmd_validate(file, out, err);
  if (*score) return cmd_score(file, profile, out, err);
  if (*rank) return cmd_rank(dir, profile, out, err);
  if (*diff) return cmd_diff(file, file_b, profile, out, err);
  if (*gen) return cmd_gen_corpus(n, seed, out_dir, prevalence, out, err);
  if (*serve) return cmd_serve(port, store_dir, profiles_dir, out, err);
  return kExitInvalid;
}

}  // namespace trust
