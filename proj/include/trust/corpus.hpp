#pragma once

// Deterministic synthetic advertisement corpus. Each signal is drawn
// independently per document with its prevalence; the defaults reproduce the
// marginal frequencies observed on provider websites.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "trust/result.hpp"

namespace trust {

namespace signal {
inline constexpr const char* kCustomerInfo = "customer-info";
inline constexpr const char* kCertifications = "certifications";
inline constexpr const char* kPersonnel = "personnel";
inline constexpr const char* kPublications = "publications";
inline constexpr const char* kSystems = "systems";
inline constexpr const char* kCustomerLogos = "customer-logos";
inline constexpr const char* kCustomerNames = "customer-names";
inline constexpr const char* kLegalData = "legal-data";
inline constexpr const char* kPartners = "partners";
inline constexpr const char* kTerms = "terms";
}  // namespace signal

// Website-study frequencies plus documented defaults for legal data,
// partners and terms (not measured on websites).
std::map<std::string, double> default_prevalence();

struct CorpusParams {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> prevalence = default_prevalence();
};

// Checks keys, probability bounds, and that logo/name prevalence does not
// exceed customer-info prevalence (logos and names are kinds of customer info).
Result<CorpusParams, std::string> make_corpus_params(std::size_t n, std::uint64_t seed,
                                                     const std::map<std::string, double>& overrides);

struct CorpusDocument {
  std::string file_name;
  std::string text;
  std::map<std::string, bool> signals;  // which signals were drawn
};

CorpusDocument generate_document(const CorpusParams& params, std::size_t index);
std::vector<CorpusDocument> generate_corpus(const CorpusParams& params);

// SplitMix64 step; used to derive the per-document mt19937_64 seed.
std::uint64_t splitmix64(std::uint64_t& state);

// Document `index` draws from mt19937_64 seeded with splitmix64 of (seed, index),
// so output does not depend on generation order.
std::mt19937_64 document_rng(std::uint64_t seed, std::size_t index);

// Portable draws from raw mt19937_64 output (std:: distributions are not
// reproducible across standard libraries).
double unit_interval(std::mt19937_64& rng);             // [0, 1) with 53 bits
bool bernoulli(std::mt19937_64& rng, double p);
int uniform_int(std::mt19937_64& rng, int lo, int hi);  // inclusive

// Text for --help describing the per-category count ranges.
std::string corpus_generation_notes();

}  // namespace trust
