#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cigrate/corpus.hpp"
#include "cigrate/error.hpp"
#include "cigrate/normalize.hpp"

namespace cigrate {

// Identifies the shipped system-prompt wording; bump when the wording changes
// so reports stay comparable across runs.
inline constexpr const char* kPromptTemplateId = "cigrate-prompt-v1";

enum class ChatRole { System, User, Assistant };

const char* chat_role_name(ChatRole role);

struct ChatMessage {
  ChatRole role = ChatRole::User;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct PromptBundle {
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  std::string model_name;
  std::size_t max_output_tokens = 4096;
};

enum class FewShotSelection { First, Random, SameFeatureOverlap };

struct FewShotPolicy {
  std::size_t k = 0;
  FewShotSelection selection = FewShotSelection::First;
  std::uint64_t seed = 0;  // used by Random only
};

struct CompletionResult {
  std::string raw_text;
  std::optional<std::string> extracted_yaml;
  std::string model_name;
  std::string request_fingerprint;
};

struct EndpointConfig {
  std::string base_url;  // e.g. "http://127.0.0.1:8080/v1"
  std::string api_key;   // empty -> read CIGRATE_API_KEY
  std::string model;
  std::size_t max_attempts = 3;
  int timeout_seconds = 60;
  int backoff_initial_ms = 250;  // doubles per retry
};

class HttpError : public Error {
 public:
  HttpError(int status, const std::string& body)
      : Error(ErrorCode::Http,
              "status " + std::to_string(status) +
                  (body.empty() ? "" : ": " + body)),
        status_(status),
        body_(body) {}

  int status() const { return status_; }
  const std::string& body() const { return body_; }

 private:
  int status_;
  std::string body_;
};

std::string system_prompt(CiDialect source, CiDialect target);

// Exactly k train-split pairs whose source side matches `source`; the query
// config only matters for SameFeatureOverlap ranking.
// Errors: E_INSUFFICIENT_EXAMPLES.
std::vector<MigrationPair> select_few_shot_examples(
    const FewShotPolicy& policy, CiDialect source, CiDialect target,
    const MigrationCorpus& corpus, const NormalizedConfig& query);

// system + k x (user, assistant) + user; temperature 0.
// Errors: E_SAME_DIALECT, E_INSUFFICIENT_EXAMPLES.
PromptBundle build_prompt(const NormalizedConfig& source, CiDialect target,
                          const std::optional<FewShotPolicy>& few_shot,
                          const MigrationCorpus& corpus);

// The exact JSON body sent over the wire (also the fingerprint input).
std::string serialize_request(const PromptBundle& bundle,
                              const std::string& model);

// POST {base_url}/chat/completions with bounded exponential backoff.
// Errors: E_AUTH, E_HTTP, E_TIMEOUT, E_EMPTY_RESPONSE.
CompletionResult complete(const PromptBundle& bundle,
                          const EndpointConfig& endpoint);

// Content of the first fenced code block, else the trimmed raw text; must
// parse as a single YAML document. Errors: E_UNPARSEABLE_OUTPUT.
std::string extract_yaml(const std::string& raw_text);

// One chat-format JSON object per train pair of the given direction.
// Errors: E_SAME_DIALECT, E_EMPTY_SPLIT.
std::size_t export_finetune_dataset(const MigrationCorpus& corpus,
                                    CiDialect source, CiDialect target,
                                    std::ostream& out);

}  // namespace cigrate
