#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tokbench/instance.h"

namespace tokbench {

struct GenerationParams {
  double temperature = 0.7;
  int max_tokens = 16384;
  double top_p = 0.95;
  int top_k = 50;
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{1000};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{60000};
};

struct ModelEndpoint {
  std::string base_url;  // e.g. https://api.example.com/v1
  std::string model;
  std::string token_env = "TOKBENCH_API_KEY";
  std::chrono::seconds timeout{300};
  RetryPolicy retry;
  int max_concurrent = 4;
};

inline constexpr std::string_view kAnswerInstruction = "You need to put the final result inside <answer> </answer>.";
inline constexpr std::string_view kCotInstruction =
    "Let's think step by step and after that you need to put the final result inside <answer> </answer>.";

std::string build_prompt(const TaskInstance& instance, bool cot);

struct ChatRequest {
  std::string model;
  std::string prompt;
  GenerationParams params;
  bool send_top_k = true;
};

struct ChatResponse {
  int status = 0;           // HTTP status; 0 on transport failure
  std::string content;      // assistant message on success
  std::string error;        // response body or transport message otherwise
};

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
};

// Chat-completions JSON over HTTP(S).
class HttpChatClient : public ChatClient {
 public:
  HttpChatClient(const ModelEndpoint& endpoint, std::string token);
  ChatResponse complete(const ChatRequest& request) override;

  static Json request_body(const ChatRequest& request);
  // choices[0].message.content, or nullopt.
  static std::optional<std::string> parse_content(std::string_view body);

 private:
  std::string origin_;
  std::string path_;
  std::string token_;
  std::chrono::seconds timeout_;
};

struct RunRecord {
  std::string instance_id;
  std::string prompt;
  std::string raw_output;
  long long latency_ms = 0;
  std::size_t output_chars = 0;
  int attempts = 0;
  std::optional<std::string> error;
  std::string model;

  Json to_json() const;
  static RunRecord from_json(const Json& j);
};

std::vector<RunRecord> read_run_file(const std::filesystem::path& path);

// The endpoint rejected the credentials; the run stops before issuing more requests.
class AuthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunStats {
  std::size_t total = 0;
  std::size_t skipped = 0;    // already complete in the run file
  std::size_t succeeded = 0;
  std::size_t failed = 0;
};

struct RunOptions {
  bool cot = false;
  std::function<void(const RunRecord&, const RunStats&)> on_record;
};

// Appends one record per pending instance to `run_file`; completed ids are skipped.
RunStats run_batch(const std::vector<TaskInstance>& instances, ChatClient& client, const ModelEndpoint& endpoint,
                   const GenerationParams& params, const std::filesystem::path& run_file, const RunOptions& options);

}  // namespace tokbench
