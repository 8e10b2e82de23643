#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "colacare/json_io.hpp"
#include "colacare/retrieval.hpp"

namespace colacare::llm {

enum class Tag { doctor_review, doctor_statement, meta_report, meta_action, meta_revision, llm_output_variant };

std::string to_string(Tag tag);
Tag tag_from_string(const std::string& name);

struct ChatRequest {
  std::string system_prompt;
  std::string user_prompt;
  double temperature = 0.0;
  int max_output_tokens = 1024;
  Tag tag = Tag::doctor_review;
  // Routing metadata for scripted providers; never sent over HTTP.
  std::string patient_id;
  int role_id = 0;  // doctor id, 0 for the MetaAgent

  void validate() const;
};

struct ChatResponse {
  std::string text;
  long input_tokens = 0;
  long output_tokens = 0;
  bool provider_reported = false;
  long latency_ms = 0;
  int retries = 0;
};

/// ceil(chars / 4).
long approx_tokens(std::string_view text);

class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  virtual ChatResponse send(const ChatRequest& request) = 0;
  /// A provider for one patient's consultation. Scripted ordinals restart
  /// per session.
  virtual std::unique_ptr<ChatProvider> session() const = 0;
  virtual std::string name() const = 0;
};

/// Validates the request, calls the provider and fills approximate token
/// counts when the provider did not report usage.
ChatResponse complete(ChatProvider& provider, const ChatRequest& request);

// ---------------------------------------------------------------------------
// Scripted provider.
//
// Script: JSON list of {"match": {"tag", "ordinal"?, "pattern"?, "patient"?,
// "role"?}, "response": text}. "ordinal" is 1-based and counts calls with
// that tag within the session; "pattern" is a substring of the user prompt.
// The first rule in file order whose present fields all match wins.
// ---------------------------------------------------------------------------

struct ScriptRule {
  Tag tag = Tag::doctor_review;
  std::optional<int> ordinal;
  std::optional<std::string> pattern;
  std::optional<std::string> patient;
  std::optional<int> role;
  std::string response;
};

class Script {
 public:
  Script() = default;
  explicit Script(std::vector<ScriptRule> rules);
  static Script from_json(const Json& doc);
  static Script load(const std::filesystem::path& path);
  Json to_json() const;

  /// First matching rule, or nullptr.
  const ScriptRule* match(const ChatRequest& request, int ordinal) const;
  const std::vector<ScriptRule>& rules() const { return rules_; }

 private:
  std::vector<ScriptRule> rules_;
  std::vector<std::size_t> general_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_patient_;
};

class ScriptedProvider final : public ChatProvider {
 public:
  explicit ScriptedProvider(std::shared_ptr<const Script> script);
  ChatResponse send(const ChatRequest& request) override;
  std::unique_ptr<ChatProvider> session() const override;
  std::string name() const override { return "scripted"; }

 private:
  std::shared_ptr<const Script> script_;
  std::map<Tag, int> calls_;
};

// ---------------------------------------------------------------------------
// OpenAI-compatible HTTP provider.
// ---------------------------------------------------------------------------

using Sleeper = std::function<void(std::chrono::milliseconds)>;

struct HttpConfig {
  std::string base_url;
  std::string model;
  std::string api_key;
  int timeout_seconds = 120;
  int max_retries = 2;
  std::vector<std::chrono::milliseconds> backoff{std::chrono::milliseconds(500),
                                                 std::chrono::milliseconds(2000)};

  /// COLACARE_LLM_BASE_URL, COLACARE_LLM_MODEL, COLACARE_LLM_API_KEY.
  static HttpConfig from_env();
};

class HttpProvider final : public ChatProvider {
 public:
  explicit HttpProvider(HttpConfig config, Sleeper sleeper = {});
  ChatResponse send(const ChatRequest& request) override;
  std::unique_ptr<ChatProvider> session() const override;
  std::string name() const override { return "http:" + config_.model; }

 private:
  HttpConfig config_;
  Sleeper sleeper_;
};

/// POST {base_url}/embeddings; the result is L2-normalized.
class HttpEmbedder final : public retrieval::Embedder {
 public:
  HttpEmbedder(HttpConfig config, std::size_t dim);
  /// COLACARE_EMBED_BASE_URL / _MODEL, falling back to the LLM variables.
  static HttpConfig config_from_env();
  retrieval::Embedding embed(std::string_view text) const override;
  std::size_t dim() const override { return dim_; }
  std::string name() const override { return "http:" + config_.model; }

 private:
  HttpConfig config_;
  std::size_t dim_;
};

/// Replaces every occurrence of `secret` with "***".
std::string redact(std::string text, std::string_view secret);

// ---------------------------------------------------------------------------
// Token and cost accounting.
// ---------------------------------------------------------------------------

struct TokenTotals {
  long calls = 0;
  long input_tokens = 0;
  long output_tokens = 0;

  double avg_input() const { return calls ? static_cast<double>(input_tokens) / calls : 0.0; }
  double avg_output() const { return calls ? static_cast<double>(output_tokens) / calls : 0.0; }
  TokenTotals& operator+=(const TokenTotals& o);
};

struct Prices {
  double input_per_million = 0.14;
  double output_per_million = 0.28;
};

class CostLedger {
 public:
  void record(const std::string& role, const ChatRequest& request, const ChatResponse& response);
  void merge(const CostLedger& other);

  const std::map<std::string, TokenTotals>& by_tag() const { return by_tag_; }
  const std::map<std::string, TokenTotals>& by_role() const { return by_role_; }
  TokenTotals total() const;
  double cost(const Prices& prices) const;

  Json to_json(const Prices& prices) const;
  static CostLedger from_json(const Json& doc);

 private:
  std::map<std::string, TokenTotals> by_tag_;
  std::map<std::string, TokenTotals> by_role_;
};

}  // namespace colacare::llm
