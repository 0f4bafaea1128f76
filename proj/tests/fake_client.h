#pragma once

// Scripted in-process chat endpoint and the run-harness contract checks built on it.

#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "tokbench/harness.h"

namespace tokbench::testing {

class FakeClient : public ChatClient {
 public:
  // Receives the request and the 1-based attempt number for its prompt.
  using Script = std::function<ChatResponse(const ChatRequest&, int)>;

  explicit FakeClient(Script script, std::chrono::milliseconds delay = std::chrono::milliseconds(0))
      : script_(std::move(script)), delay_(delay) {}

  ChatResponse complete(const ChatRequest& request) override {
    const int now = ++in_flight_;
    int seen = max_in_flight_.load();
    while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
    }
    ++calls_;
    int attempt = 0;
    {
      std::lock_guard lock(mutex_);
      attempt = ++attempts_[request.prompt];
    }
    if (delay_.count() > 0) std::this_thread::sleep_for(delay_);
    auto resp = script_(request, attempt);
    --in_flight_;
    return resp;
  }

  int calls() const { return calls_; }
  int max_in_flight() const { return max_in_flight_; }

 private:
  Script script_;
  std::chrono::milliseconds delay_;
  std::atomic<int> in_flight_{0}, max_in_flight_{0}, calls_{0};
  std::mutex mutex_;
  std::map<std::string, int> attempts_;
};

inline ChatResponse ok(const ChatRequest& r) { return {200, "<answer>" + r.prompt.substr(0, 8) + "</answer>", ""}; }

inline std::vector<TaskInstance> fake_instances(int n) {
  std::vector<TaskInstance> out;
  for (int i = 0; i < n; ++i) {
    TaskInstance inst;
    inst.id = "fake_" + std::to_string(i);
    inst.question = "question " + std::to_string(i);
    inst.label = "1";
    out.push_back(inst);
  }
  return out;
}

inline ModelEndpoint fake_endpoint(int concurrency, int attempts) {
  ModelEndpoint e;
  e.base_url = "http://fake";
  e.model = "fake-model";
  e.max_concurrent = concurrency;
  e.retry.max_attempts = attempts;
  e.retry.initial_backoff = std::chrono::milliseconds(1);
  e.retry.max_backoff = std::chrono::milliseconds(4);
  return e;
}

inline std::size_t line_count(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) n += !line.empty();
  return n;
}

struct ContractCheck {
  std::string name;
  bool passed;
  std::string detail;
};

// Concurrency bound, retry accounting and idempotent resume against the fake endpoint.
inline std::vector<ContractCheck> harness_contract(const std::filesystem::path& dir) {
  std::vector<ContractCheck> out;
  const auto instances = fake_instances(40);
  const GenerationParams params;

  {
    FakeClient client([](const ChatRequest& r, int) { return ok(r); }, std::chrono::milliseconds(15));
    const auto stats = run_batch(instances, client, fake_endpoint(4, 3), params, dir / "bound.jsonl", {});
    const bool pass = client.max_in_flight() <= 4 && client.max_in_flight() >= 2 && stats.succeeded == 40;
    out.push_back({"bounded in-flight", pass, "max in flight " + std::to_string(client.max_in_flight()) + " of 4"});
  }
  {
    FakeClient client([](const ChatRequest& r, int attempt) {
      return attempt < 3 ? ChatResponse{503, "", "busy"} : ok(r);
    });
    const auto stats = run_batch(instances, client, fake_endpoint(3, 5), params, dir / "retry.jsonl", {});
    bool attempts_ok = true;
    for (const auto& r : read_run_file(dir / "retry.jsonl")) attempts_ok &= r.attempts == 3 && !r.error;
    const bool pass = stats.succeeded == 40 && stats.failed == 0 && client.calls() == 120 && attempts_ok;
    out.push_back({"retry then succeed", pass, std::to_string(client.calls()) + " calls for 40 instances"});
  }
  {
    FakeClient client([](const ChatRequest&, int) { return ChatResponse{500, "", "down"}; });
    const auto stats = run_batch(instances, client, fake_endpoint(2, 2), params, dir / "exhaust.jsonl", {});
    bool recorded = true;
    for (const auto& r : read_run_file(dir / "exhaust.jsonl")) recorded &= r.attempts == 2 && r.error.has_value();
    const bool pass = stats.failed == 40 && client.calls() == 80 && recorded;
    out.push_back({"exhausted retries recorded", pass, std::to_string(stats.failed) + " failed"});
  }
  {
    const auto file = dir / "bound.jsonl";
    const auto before = line_count(file);
    FakeClient client([](const ChatRequest& r, int) { return ok(r); });
    const auto stats = run_batch(instances, client, fake_endpoint(4, 3), params, file, {});
    const bool pass = client.calls() == 0 && stats.skipped == 40 && line_count(file) == before;
    out.push_back({"idempotent resume", pass, std::to_string(client.calls()) + " requests on rerun"});
  }
  {
    // Errored records are retried on resume; completed ones are not.
    const auto file = dir / "exhaust.jsonl";
    FakeClient client([](const ChatRequest& r, int) { return ok(r); });
    const auto stats = run_batch(instances, client, fake_endpoint(4, 3), params, file, {});
    const bool pass = client.calls() == 40 && stats.succeeded == 40 && stats.skipped == 0;
    out.push_back({"resume retries errors", pass, std::to_string(client.calls()) + " requests"});
  }
  return out;
}

}  // namespace tokbench::testing
