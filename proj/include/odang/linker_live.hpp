#pragma once
// Live HTTP client implementations behind the linker interfaces. These hit
// real services and are reachable only through the CLI's --live flag; tests
// and CI use the recorded-fixture clients exclusively.
//
//   LiveSearchClient  -> Google KG Search API (kgsearch.googleapis.com),
//                        requires an API key.
//   LiveFactsClient   -> Wikidata wbgetentities; maps P21 (sex or gender),
//                        P569 (date of birth), P27 (citizenship), P19
//                        (place of birth), P106 (occupation), P102 (party).
//   LiveProfileClient -> Twitter-style users/by/username lookup, requires a
//                        bearer token.
//
// Rate limiting surfaces as RateLimitedError; retrying is the caller's call.

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "odang/errors.hpp"
#include "odang/linker.hpp"

namespace odang {

namespace detail {

inline nlohmann::json https_get_json(const std::string& host,
                                     const std::string& path,
                                     const httplib::Headers& headers = {}) {
  httplib::SSLClient client(host);
  client.set_connection_timeout(10);
  client.set_read_timeout(10);
  auto res = client.Get(path, headers);
  if (!res) {
    throw ClientUnavailableError("no response from " + host);
  }
  if (res->status == 429) {
    throw RateLimitedError(host + " rate limited the request");
  }
  if (res->status != 200) {
    throw ClientUnavailableError(host + " answered HTTP " +
                                 std::to_string(res->status));
  }
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ClientUnavailableError(host + " returned unparsable JSON: " +
                                 e.what());
  }
}

inline std::string url_encode(const std::string& s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
        (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.' ||
        c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

}  // namespace detail

class LiveSearchClient : public SearchClient {
 public:
  explicit LiveSearchClient(std::string api_key, ExchangeLog* log = nullptr)
      : api_key_(std::move(api_key)), log_(log) {}

  std::vector<Candidate> search(const std::string& name) override {
    auto doc = detail::https_get_json(
        "kgsearch.googleapis.com",
        "/v1/entities:search?query=" + detail::url_encode(name) +
            "&types=Person&key=" + api_key_);
    std::vector<Candidate> out;
    for (const auto& item :
         doc.value("itemListElement", nlohmann::json::array())) {
      const auto& result = item.at("result");
      out.push_back({result.value("name", std::string()),
                     result.value("@id", std::string()),
                     item.value("resultScore", 0.0)});
    }
    if (log_) log_->record("search", name, "hit", doc);
    return out;
  }

 private:
  std::string api_key_;
  ExchangeLog* log_;
};

class LiveFactsClient : public FactsClient {
 public:
  explicit LiveFactsClient(ExchangeLog* log = nullptr,
                           OdangVocab vocab = OdangVocab())
      : log_(log), vocab_(std::move(vocab)) {}

  FetchedFacts facts(const std::string& external_id) override {
    auto doc = detail::https_get_json(
        "www.wikidata.org",
        "/w/api.php?action=wbgetentities&ids=" +
            detail::url_encode(external_id) +
            "&props=claims|labels&languages=en&format=json");
    const auto& entities = doc.value("entities", nlohmann::json::object());
    if (!entities.contains(external_id) ||
        entities.at(external_id).contains("missing")) {
      throw UnknownEntityError(external_id);
    }
    if (log_) log_->record("facts", external_id, "hit", doc);

    const auto& claims =
        entities.at(external_id).value("claims", nlohmann::json::object());
    FetchedFacts out;
    auto first_value = [&](const char* prop) -> std::optional<nlohmann::json> {
      if (!claims.contains(prop) || claims.at(prop).empty()) {
        return std::nullopt;
      }
      if (claims.at(prop).size() > 1) out.truncated_fields.push_back(prop);
      const auto& snak = claims.at(prop)[0].at("mainsnak");
      if (!snak.contains("datavalue")) return std::nullopt;
      return snak.at("datavalue").at("value");
    };

    if (auto v = first_value("P21")) {
      out.facts.gender = v->value("id", std::string());
    }
    if (auto v = first_value("P569")) {
      // value like "+1985-06-28T00:00:00Z"
      auto time = v->value("time", std::string());
      if (time.size() >= 5) {
        out.facts.birth_year = std::stoll(time.substr(1, 4));
      }
    }
    if (auto v = first_value("P27")) {
      out.facts.country_of_citizenship =
          vocab_.minted(v->value("id", std::string()));
    }
    if (auto v = first_value("P19")) {
      out.facts.place_of_birth = vocab_.minted(v->value("id", std::string()));
    }
    if (auto v = first_value("P106")) {
      out.facts.occupation = vocab_.minted(v->value("id", std::string()));
    }
    if (auto v = first_value("P102")) {
      out.facts.political_party =
          vocab_.minted(v->value("id", std::string()));
    }
    return out;
  }

 private:
  ExchangeLog* log_;
  OdangVocab vocab_;
};

class LiveProfileClient : public ProfileClient {
 public:
  LiveProfileClient(std::string host, std::string bearer_token,
                    ExchangeLog* log = nullptr)
      : host_(std::move(host)), token_(std::move(bearer_token)), log_(log) {}

  std::optional<std::string> display_name(const std::string& handle) override {
    auto doc = detail::https_get_json(
        host_, "/2/users/by/username/" + detail::url_encode(handle),
        {{"Authorization", "Bearer " + token_}});
    if (!doc.contains("data")) {
      if (log_) log_->record("profile", handle, "miss");
      return std::nullopt;
    }
    if (log_) log_->record("profile", handle, "hit", doc);
    auto name = doc.at("data").value("name", std::string());
    if (name.empty()) return std::nullopt;
    return name;
  }

 private:
  std::string host_;
  std::string token_;
  ExchangeLog* log_;
};

}  // namespace odang
