#include <doctest.h>

#include <random>
#include <thread>

#include "oracles.hpp"
#include "support.hpp"
#include "trust/catalog.hpp"

using namespace trust;
using testsupport::read_fixture;
using testsupport::TempDir;

namespace {

// 2024-03-15T10:00:00Z
Clock fixed_clock() {
  return [] { return std::chrono::system_clock::time_point(std::chrono::seconds(1710496800)); };
}

std::string register_ok(CatalogStore& store, const std::string& text) {
  auto r = store.register_provider(text);
  REQUIRE_MESSAGE(r.ok(), (r.ok() ? "" : r.error().message));
  return r->id;
}

}  // namespace

TEST_CASE("time helpers and content ids") {
  const auto t = fixed_clock()();
  CHECK(iso_timestamp(t) == "2024-03-15T10:00:00Z");
  CHECK(utc_date(t) == Date{2024, 3, 15});
  CHECK(content_id("") == "e3b0c44298fc1c14");
  CHECK(content_id("abc") == "ba7816bf8f01cfea");
}

TEST_CASE("mock VAT format check") {
  CHECK(MockVatVerifier::format_valid("ATU12345678"));
  CHECK(MockVatVerifier::format_valid("DE123456789"));
  CHECK_FALSE(MockVatVerifier::format_valid("12345"));
  CHECK_FALSE(MockVatVerifier::format_valid("DE"));
  CHECK_FALSE(MockVatVerifier::format_valid("de123456"));
  CHECK_FALSE(MockVatVerifier::format_valid("AT U1234"));
  CHECK_FALSE(MockVatVerifier::format_valid("AT123456789012345"));
  MockVatVerifier v;
  const auto r = v.check("ATU12345678", fixed_clock()());
  CHECK(r.format_valid);
  CHECK(r.checked_at == "2024-03-15T10:00:00Z");
}

TEST_CASE("registration") {
  TempDir dir;
  CatalogStore store(dir.path(), fixed_clock());
  const std::string acme = read_fixture("acme.stad");

  auto first = store.register_provider(acme);
  REQUIRE(first);
  CHECK(first->created);
  CHECK(first->id.size() == 16);
  CHECK(first->report.valid);
  CHECK(first->id == content_id(serialize_graph(testsupport::parse_or_throw(acme))));

  SUBCASE("is idempotent on graph identity") {
    // Same graph written differently: canonical text first.
    auto again = store.register_provider(serialize_graph(testsupport::parse_or_throw(acme)));
    REQUIRE(again);
    CHECK_FALSE(again->created);
    CHECK(again->id == first->id);
    CHECK(store.provider_ids().size() == 1);
  }
  SUBCASE("stores canonical text and metadata") {
    const auto pdir = dir.path() / first->id;
    CHECK(testsupport::read_file(pdir / "document.stad") == serialize_graph(testsupport::parse_or_throw(acme)));
    const auto meta = nlohmann::json::parse(testsupport::read_file(pdir / "meta.json"));
    CHECK(meta["provider_iri"] == "http://acme.example.org/provider");
    CHECK(meta["registered_at"] == "2024-03-15");
    CHECK(std::filesystem::exists(pdir / "events.jsonl"));
    for (const auto& d : std::filesystem::directory_iterator(dir.path())) {
      CHECK_FALSE(d.path().filename().string().starts_with("."));
    }
  }
  SUBCASE("rejects shape errors with the report") {
    auto bad = store.register_provider(read_fixture("missing-date.stad"));
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.error().kind == StoreErrorKind::Unprocessable);
    CHECK(bad.error().detail["error"] == "validation");
    CHECK(bad.error().detail["errors"][0]["code"] == "E101");
  }
  SUBCASE("rejects parse errors with their position") {
    auto bad = store.register_provider(read_fixture("truncated.stad"));
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.error().kind == StoreErrorKind::BadRequest);
    CHECK(bad.error().detail["code"] == "P006");
  }
  SUBCASE("rejects documents without a provider") {
    auto bad = store.register_provider("@prefix ex: <http://example.org/> .\nex:a ex:b ex:c .\n");
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.error().kind == StoreErrorKind::Unprocessable);
  }
}

TEST_CASE("fetches count clicks, also under concurrency") {
  TempDir dir;
  CatalogStore store(dir.path(), fixed_clock());
  const auto id = register_ok(store, read_fixture("acme.stad"));
  auto view = store.fetch_provider(id);
  REQUIRE(view);
  CHECK(view->meta.profile_clicks == 1);
  CHECK(view->document.find("usdl:Provider") != std::string::npos);
  CHECK(store.fetch_provider("0000000000000000").error().kind == StoreErrorKind::NotFound);

  std::vector<std::thread> threads;
  for (int i = 0; i < 100; ++i) {
    threads.emplace_back([&] { CHECK(store.fetch_provider(id).ok()); });
  }
  for (auto& t : threads) t.join();
  CHECK(store.analytics(id)->profile_clicks == 101);
  CHECK(oracle::replay(testsupport::read_file(dir.path() / id / "events.jsonl")).clicks == 101);
}

TEST_CASE("transactions, verification and ratings") {
  TempDir dir;
  CatalogStore store(dir.path(), fixed_clock());
  const auto id = register_ok(store, read_fixture("acme.stad"));

  auto tx = store.record_transaction(id, "buyer-1", "2024-01-10", false);
  REQUIRE(tx);
  CHECK(tx->tx_id == id + "-1");
  CHECK_FALSE(tx->verified);
  CHECK(store.record_transaction(id, "buyer-1", "2024-02-30", false).error().kind == StoreErrorKind::BadRequest);
  CHECK(store.record_transaction(id, "", "2024-01-10", false).error().kind == StoreErrorKind::BadRequest);
  CHECK(store.record_transaction("nope", "b", "2024-01-10", false).error().kind == StoreErrorKind::NotFound);

  // Unverified rater, and rating before verification.
  CHECK(store.record_rating(tx->tx_id, 5, "r1", true).ok());
  CHECK(store.record_rating(tx->tx_id, 4, "r2", false).ok());
  CHECK(store.analytics(id)->verified_ratings == 0);
  CHECK(store.verify_transaction(tx->tx_id)->verified);
  CHECK(store.verify_transaction(tx->tx_id)->verified);
  const auto a = store.analytics(id).value();
  CHECK(a.verified_transactions == 1);
  CHECK(a.verified_ratings == 1);
  CHECK(a.registered_at == Date{2024, 3, 15});
  CHECK(a.as_of == Date{2024, 3, 15});

  CHECK(store.record_rating(tx->tx_id, 3, "r1", true).error().kind == StoreErrorKind::Conflict);
  CHECK(store.record_rating(tx->tx_id, 0, "r3", true).error().kind == StoreErrorKind::BadRequest);
  CHECK(store.record_rating(tx->tx_id, 6, "r3", true).error().kind == StoreErrorKind::BadRequest);
  CHECK(store.record_rating(tx->tx_id, 3, "", true).error().kind == StoreErrorKind::BadRequest);
  CHECK(store.record_rating(id + "-9", 3, "r3", true).error().kind == StoreErrorKind::NotFound);
  CHECK(store.record_rating("garbage", 3, "r3", true).error().kind == StoreErrorKind::NotFound);
  CHECK(store.verify_transaction(id + "-2").error().kind == StoreErrorKind::NotFound);

  // verify is logged once
  const auto log = testsupport::read_file(dir.path() / id / "events.jsonl");
  std::size_t verifies = 0;
  for (auto pos = log.find("\"verify\""); pos != std::string::npos; pos = log.find("\"verify\"", pos + 1)) ++verifies;
  CHECK(verifies == 1);
}

TEST_CASE("VAT verification sets identity") {
  TempDir dir;
  CatalogStore store(dir.path(), fixed_clock());
  MockVatVerifier vat;
  const auto acme = register_ok(store, read_fixture("acme.stad"));
  const auto gamma = register_ok(store, read_fixture("gamma.stad"));
  CHECK_FALSE(store.analytics(acme)->identity_verified);
  auto r = store.verify_vat(acme, vat);
  REQUIRE(r);
  CHECK(r->vat == "ATU12345678");
  CHECK(store.analytics(acme)->identity_verified);
  CHECK(store.verify_vat(gamma, vat).error().kind == StoreErrorKind::Unprocessable);
}

TEST_CASE("references honour confidentiality from the document and the catalog") {
  TempDir dir;
  CatalogStore store(dir.path(), fixed_clock());
  const auto id = register_ok(store, read_fixture("acme.stad"));
  auto refs = store.references(id).value();
  CHECK(refs["references"].size() == 2);
  CHECK(refs["transactions"].empty());

  REQUIRE(store.record_transaction(id, "c1", "2022-09-01", true, "http://acme.example.org/tx-2022"));
  REQUIRE(store.record_transaction(id, "c2", "2023-01-01", false));
  REQUIRE(store.record_transaction(id, "c3", "2023-02-01", true));
  refs = store.references(id).value();
  CHECK(refs["references"].size() == 1);
  REQUIRE(refs["transactions"].size() == 1);
  CHECK(refs["transactions"][0]["customer_id"] == "c2");
  const std::string text = refs.dump();
  CHECK(text.find("c3") == std::string::npos);
  CHECK(text.find("tx-2021") == std::string::npos);

  const auto in = store.scoring_inputs(id).value();
  REQUIRE(in.transactions.size() == 3);
  CHECK(in.transactions[0].id == "http://acme.example.org/tx-2022");
  CHECK(in.transactions[1].id == id + "-2");
}

TEST_CASE("scripted events: live state, log replay oracle and reload agree") {
  TempDir dir;
  std::mt19937_64 rng(4242);
  std::vector<std::string> ids;
  {
    CatalogStore store(dir.path(), fixed_clock());
    MockVatVerifier vat;
    ids.push_back(register_ok(store, read_fixture("acme.stad")));
    ids.push_back(register_ok(store, read_fixture("beta.stad")));
    ids.push_back(register_ok(store, read_fixture("gamma.stad")));
    std::map<std::string, int> tx_count;
    for (int step = 0; step < 400; ++step) {
      const auto& id = ids[rng() % ids.size()];
      const std::string tx = id + "-" + std::to_string(1 + rng() % (tx_count[id] + 1));
      switch (rng() % 5) {
        case 0: (void)store.fetch_provider(id); break;
        case 1:
          if (store.record_transaction(id, "c" + std::to_string(rng() % 5), "2023-05-0" + std::to_string(1 + rng() % 9),
                                       rng() % 3 == 0)) {
            ++tx_count[id];
          }
          break;
        case 2: (void)store.verify_transaction(tx); break;
        case 3: (void)store.record_rating(tx, 1 + static_cast<int>(rng() % 5), "r" + std::to_string(rng() % 4), rng() % 2); break;
        default: (void)store.verify_vat(id, vat); break;
      }
    }
    for (const auto& id : ids) {
      const auto live = store.analytics(id).value();
      const auto oracle = oracle::replay(testsupport::read_file(dir.path() / id / "events.jsonl"));
      CAPTURE(id);
      CHECK(live.profile_clicks == oracle.clicks);
      CHECK(live.verified_transactions == oracle.verified_transactions);
      CHECK(live.verified_ratings == oracle.verified_ratings);
      CHECK(live.identity_verified == oracle.identity_verified);
    }
  }
  CatalogStore reloaded(dir.path(), fixed_clock());
  CHECK(reloaded.provider_ids().size() == 3);
  for (const auto& id : ids) {
    const auto a = reloaded.analytics(id).value();
    const auto oracle = oracle::replay(testsupport::read_file(dir.path() / id / "events.jsonl"));
    CHECK(a.profile_clicks == oracle.clicks);
    CHECK(a.verified_transactions == oracle.verified_transactions);
    CHECK(a.verified_ratings == oracle.verified_ratings);
    CHECK(a.identity_verified == oracle.identity_verified);
  }
}

TEST_CASE("a torn final event line is dropped on reload") {
  TempDir dir;
  std::string id;
  {
    CatalogStore store(dir.path(), fixed_clock());
    id = register_ok(store, read_fixture("acme.stad"));
    (void)store.fetch_provider(id);
    (void)store.fetch_provider(id);
  }
  const auto log_path = dir.path() / id / "events.jsonl";
  const auto intact = testsupport::read_file(log_path);
  testsupport::write_file(log_path, intact + "{\"type\":\"cli");
  {
    CatalogStore store(dir.path(), fixed_clock());
    CHECK(store.analytics(id)->profile_clicks == 2);
    CHECK(testsupport::read_file(log_path) == intact);
    (void)store.fetch_provider(id);
  }
  CatalogStore store(dir.path(), fixed_clock());
  CHECK(store.analytics(id)->profile_clicks == 3);
}

TEST_CASE("half-built registrations are ignored") {
  TempDir dir;
  std::filesystem::create_directories(dir.path() / ".abc-123");
  testsupport::write_file(dir.path() / ".abc-123" / "document.stad", "garbage");
  CatalogStore store(dir.path(), fixed_clock());
  CHECK(store.provider_ids().empty());
}
