#include "cigrate/llm.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <random>
#include <thread>

#include "cigrate/hash.hpp"
#include "httplib.h"
#include "json.hpp"

using ordered_json = nlohmann::ordered_json;

namespace cigrate {
namespace {

const char* display_name(CiDialect d) {
  return d == CiDialect::TravisCI ? "Travis CI" : "GitHub Actions";
}

std::string fence(const std::string& yaml) {
  std::string out = "```yaml\n";
  out += yaml;
  if (out.empty() || out.back() != '\n') out += '\n';
  out += "```";
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct ParsedUrl {
  std::string host;  // scheme://host:port
  std::string path_prefix;
};

ParsedUrl split_base_url(const std::string& base_url) {
  ParsedUrl out;
  std::size_t scheme = base_url.find("://");
  std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  std::size_t slash = base_url.find('/', host_start);
  if (slash == std::string::npos) {
    out.host = base_url;
  } else {
    out.host = base_url.substr(0, slash);
    out.path_prefix = base_url.substr(slash);
    while (!out.path_prefix.empty() && out.path_prefix.back() == '/') {
      out.path_prefix.pop_back();
    }
  }
  return out;
}

}  // namespace

const char* chat_role_name(ChatRole role) {
  switch (role) {
    case ChatRole::System:
      return "system";
    case ChatRole::User:
      return "user";
    case ChatRole::Assistant:
      return "assistant";
  }
  return "user";
}

std::string system_prompt(CiDialect source, CiDialect target) {
  std::string out = "You are a continuous-integration configuration "
                    "migration assistant. Translate the ";
  out += display_name(source);
  out += " configuration provided by the user into an equivalent ";
  out += display_name(target);
  out += " configuration. Respond with exactly one fenced YAML code block "
         "containing only the migrated configuration and nothing else.";
  return out;
}

std::vector<MigrationPair> select_few_shot_examples(
    const FewShotPolicy& policy, CiDialect source, CiDialect target,
    const MigrationCorpus& corpus, const NormalizedConfig& query) {
  if (source == target) {
    throw Error(ErrorCode::SameDialect,
                "few-shot direction must cross dialects");
  }
  if (policy.k == 0) return {};
  std::vector<const MigrationPair*> candidates;
  for (const MigrationPair& pair : corpus.pairs) {
    if (pair.split == SplitKind::Train && pair.source_dialect == source) {
      candidates.push_back(&pair);
    }
  }
  if (candidates.size() < policy.k) {
    throw Error(ErrorCode::InsufficientExamples,
                "train split has " + std::to_string(candidates.size()) +
                    " pairs of the requested direction, need " +
                    std::to_string(policy.k));
  }
  switch (policy.selection) {
    case FewShotSelection::First:
      break;
    case FewShotSelection::Random: {
      std::mt19937_64 gen(policy.seed);
      for (std::size_t i = candidates.size(); i > 1; --i) {
        std::swap(candidates[i - 1],
                  candidates[static_cast<std::size_t>(gen() % i)]);
      }
      break;
    }
    case FewShotSelection::SameFeatureOverlap: {
      std::vector<std::pair<std::size_t, const MigrationPair*>> scored;
      scored.reserve(candidates.size());
      for (const MigrationPair* pair : candidates) {
        FeatureSet features = categorize_features(pair->source);
        std::size_t overlap = 0;
        for (FeatureCategory c : query.feature_set) {
          if (features.count(c)) ++overlap;
        }
        scored.emplace_back(overlap, pair);
      }
      std::stable_sort(scored.begin(), scored.end(),
                       [](const auto& a, const auto& b) {
                         if (a.first != b.first) return a.first > b.first;
                         return a.second->pair_id < b.second->pair_id;
                       });
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        candidates[i] = scored[i].second;
      }
      break;
    }
  }
  std::vector<MigrationPair> out;
  out.reserve(policy.k);
  for (std::size_t i = 0; i < policy.k; ++i) out.push_back(*candidates[i]);
  return out;
}

PromptBundle build_prompt(const NormalizedConfig& source, CiDialect target,
                          const std::optional<FewShotPolicy>& few_shot,
                          const MigrationCorpus& corpus) {
  if (source.dialect == target) {
    throw Error(ErrorCode::SameDialect,
                "source and target dialect are both " +
                    std::string(dialect_name(target)));
  }
  PromptBundle bundle;
  bundle.messages.push_back(
      {ChatRole::System, system_prompt(source.dialect, target)});
  if (few_shot && few_shot->k > 0) {
    auto examples = select_few_shot_examples(*few_shot, source.dialect, target,
                                             corpus, source);
    for (const MigrationPair& pair : examples) {
      bundle.messages.push_back(
          {ChatRole::User, fence(normalize(pair.source).serialize())});
      bundle.messages.push_back(
          {ChatRole::Assistant,
           fence(normalize(pair.reference_target).serialize())});
    }
  }
  bundle.messages.push_back({ChatRole::User, fence(source.serialize())});
  return bundle;
}

std::string serialize_request(const PromptBundle& bundle,
                              const std::string& model) {
  ordered_json body;
  body["model"] = model;
  ordered_json messages = ordered_json::array();
  for (const ChatMessage& m : bundle.messages) {
    messages.push_back(ordered_json{{"role", chat_role_name(m.role)},
                                    {"content", m.content}});
  }
  body["messages"] = std::move(messages);
  body["temperature"] = bundle.temperature;
  body["max_tokens"] = bundle.max_output_tokens;
  return body.dump();
}

CompletionResult complete(const PromptBundle& bundle,
                          const EndpointConfig& endpoint) {
  std::string key = endpoint.api_key;
  if (key.empty()) {
    const char* env = std::getenv("CIGRATE_API_KEY");
    if (env) key = env;
  }
  if (key.empty()) {
    throw Error(ErrorCode::Auth, "no credential: set CIGRATE_API_KEY");
  }
  const std::string model =
      bundle.model_name.empty() ? endpoint.model : bundle.model_name;
  const std::string body = serialize_request(bundle, model);

  ParsedUrl url = split_base_url(endpoint.base_url);
  httplib::Client client(url.host);
  client.set_connection_timeout(endpoint.timeout_seconds, 0);
  client.set_read_timeout(endpoint.timeout_seconds, 0);
  const httplib::Headers headers = {{"Authorization", "Bearer " + key}};
  const std::string path = url.path_prefix + "/chat/completions";

  const std::size_t max_attempts = std::max<std::size_t>(1, endpoint.max_attempts);
  httplib::Result res;
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    res = client.Post(path, headers, body, "application/json");
    if (res) {
      if (res->status == 401 || res->status == 403) {
        throw Error(ErrorCode::Auth,
                    "endpoint rejected the credential (status " +
                        std::to_string(res->status) + ")");
      }
      const bool retryable = res->status == 429 || res->status >= 500;
      if (res->status == 200 || !retryable) break;
    }
    if (attempt == max_attempts) break;
    const int delay_ms = endpoint.backoff_initial_ms << (attempt - 1);
    std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
  }
  if (!res) {
    throw Error(ErrorCode::Timeout,
                "transport failure after " + std::to_string(max_attempts) +
                    " attempts: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw HttpError(res->status, res->body);
  }

  ordered_json reply;
  try {
    reply = ordered_json::parse(res->body);
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::EmptyResponse, "response body is not valid JSON");
  }
  if (!reply.contains("choices") || !reply["choices"].is_array() ||
      reply["choices"].empty()) {
    throw Error(ErrorCode::EmptyResponse, "response has no choices");
  }
  const auto& first = reply["choices"][0];
  std::string raw;
  if (first.contains("message") && first["message"].contains("content") &&
      first["message"]["content"].is_string()) {
    raw = first["message"]["content"].get<std::string>();
  }
  if (raw.empty()) {
    throw Error(ErrorCode::EmptyResponse, "first choice has empty content");
  }

  CompletionResult result;
  result.raw_text = raw;
  result.model_name = model;
  result.request_fingerprint = to_hex(fnv1a64(body));
  try {
    result.extracted_yaml = extract_yaml(raw);
  } catch (const Error&) {
    result.extracted_yaml.reset();
  }
  return result;
}

std::string extract_yaml(const std::string& raw_text) {
  std::string candidate;
  std::size_t open = raw_text.find("```");
  if (open == std::string::npos) {
    candidate = trim(raw_text);
  } else {
    std::size_t line_end = raw_text.find('\n', open);
    if (line_end == std::string::npos) {
      candidate = "";
    } else {
      std::size_t start = line_end + 1;
      std::size_t close = raw_text.find("```", start);
      candidate = close == std::string::npos
                      ? raw_text.substr(start)
                      : raw_text.substr(start, close - start);
      candidate = trim(candidate);
    }
  }
  if (candidate.empty()) {
    throw Error(ErrorCode::UnparseableOutput, "model output is empty");
  }
  try {
    parse_yaml(candidate);
  } catch (const Error& e) {
    throw Error(ErrorCode::UnparseableOutput,
                "model output is not valid YAML: " + e.message());
  }
  return candidate;
}

std::size_t export_finetune_dataset(const MigrationCorpus& corpus,
                                    CiDialect source, CiDialect target,
                                    std::ostream& out) {
  if (source == target) {
    throw Error(ErrorCode::SameDialect,
                "fine-tune direction must cross dialects");
  }
  const std::string system = system_prompt(source, target);
  std::size_t count = 0;
  for (const MigrationPair& pair : corpus.pairs) {
    if (pair.split != SplitKind::Train || pair.source_dialect != source) {
      continue;
    }
    ordered_json record;
    record["messages"] = ordered_json::array(
        {ordered_json{{"role", "system"}, {"content", system}},
         ordered_json{{"role", "user"},
                      {"content", normalize(pair.source).serialize()}},
         ordered_json{{"role", "assistant"},
                      {"content", normalize(pair.reference_target).serialize()}}});
    out << record.dump() << "\n";
    ++count;
  }
  if (count == 0) {
    throw Error(ErrorCode::EmptySplit,
                "train split has no pairs of the requested direction");
  }
  return count;
}

}  // namespace cigrate
