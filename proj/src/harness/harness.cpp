#include "tokbench/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <spdlog/spdlog.h>

#include "tokbench/errors.h"
#include "tokbench/utf8.h"

namespace tokbench {

std::string build_prompt(const TaskInstance& instance, bool cot) {
  return instance.question + "\n" + std::string(cot ? kCotInstruction : kAnswerInstruction);
}

Json RunRecord::to_json() const {
  Json j;
  j["instance_id"] = instance_id;
  j["model"] = model;
  j["prompt"] = prompt;
  j["raw_output"] = raw_output;
  j["latency_ms"] = latency_ms;
  j["output_chars"] = output_chars;
  j["attempts"] = attempts;
  j["error"] = error ? Json(*error) : Json(nullptr);
  return j;
}

RunRecord RunRecord::from_json(const Json& j) {
  RunRecord r;
  try {
    r.instance_id = j.at("instance_id").get<std::string>();
    r.raw_output = j.value("raw_output", "");
    r.prompt = j.value("prompt", "");
    r.model = j.value("model", "");
    r.latency_ms = j.value("latency_ms", 0LL);
    r.output_chars = j.value("output_chars", std::size_t{0});
    r.attempts = j.value("attempts", 0);
    if (j.contains("error") && j["error"].is_string()) r.error = j["error"].get<std::string>();
  } catch (const Json::exception& e) {
    throw ResourceError(std::string("malformed run record: ") + e.what());
  }
  return r;
}

std::vector<RunRecord> read_run_file(const std::filesystem::path& path) {
  std::vector<RunRecord> out;
  if (!std::filesystem::exists(path)) return out;
  for (const auto& j : read_jsonl(path)) out.push_back(RunRecord::from_json(j));
  return out;
}

namespace {

bool transient(int status) { return status == 0 || status == 408 || status == 429 || status >= 500; }

class RecordSink {
 public:
  explicit RecordSink(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::app) {
    if (!out_) throw ResourceError("cannot append to " + path.string());
  }

  void write(const RunRecord& r) {
    std::lock_guard lock(mutex_);
    out_ << r.to_json().dump() << '\n';
    out_.flush();
  }

  std::mutex& mutex() { return mutex_; }

 private:
  std::ofstream out_;
  std::mutex mutex_;
};

}  // namespace

RunStats run_batch(const std::vector<TaskInstance>& instances, ChatClient& client, const ModelEndpoint& endpoint,
                   const GenerationParams& params, const std::filesystem::path& run_file, const RunOptions& options) {
  if (endpoint.max_concurrent < 1) throw DomainError("max_concurrent must be at least 1");
  if (endpoint.retry.max_attempts < 1) throw DomainError("retry budget must allow at least one attempt");

  std::set<std::string> done;
  for (const auto& r : read_run_file(run_file)) {
    if (!r.error) done.insert(r.instance_id);
  }
  std::vector<const TaskInstance*> pending;
  RunStats stats;
  stats.total = instances.size();
  for (const auto& inst : instances) {
    if (done.count(inst.id)) {
      ++stats.skipped;
    } else {
      pending.push_back(&inst);
    }
  }
  spdlog::info("{} instances, {} already complete, {} remaining", stats.total, stats.skipped, pending.size());
  if (pending.empty()) return stats;

  RecordSink sink(run_file);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> send_top_k{true};
  std::atomic<bool> abort{false};
  std::string abort_reason;
  std::mutex abort_mutex;

  auto process = [&](const TaskInstance& inst) -> std::optional<RunRecord> {
    RunRecord rec;
    rec.instance_id = inst.id;
    rec.model = endpoint.model;
    rec.prompt = build_prompt(inst, options.cot);
    auto backoff = endpoint.retry.initial_backoff;
    const auto started = std::chrono::steady_clock::now();
    std::string last_error;
    while (rec.attempts < endpoint.retry.max_attempts) {
      if (abort) return std::nullopt;
      ++rec.attempts;
      ChatRequest req{endpoint.model, rec.prompt, params, send_top_k.load()};
      const auto resp = client.complete(req);
      if (resp.status == 200) {
        rec.raw_output = resp.content;
        rec.output_chars = utf8::decode(resp.content).size();
        rec.latency_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
        return rec;
      }
      last_error = "HTTP " + std::to_string(resp.status) + ": " + resp.error.substr(0, 300);
      if (resp.status == 401 || resp.status == 403) {
        std::lock_guard lock(abort_mutex);
        if (!abort.exchange(true)) abort_reason = last_error;
        return std::nullopt;
      }
      if (resp.status == 400 && req.send_top_k && resp.error.find("top_k") != std::string::npos) {
        if (send_top_k.exchange(false)) spdlog::warn("endpoint rejected top_k; continuing without it");
        continue;
      }
      if (!transient(resp.status)) break;
      if (rec.attempts < endpoint.retry.max_attempts) {
        std::this_thread::sleep_for(backoff);
        backoff = std::min(endpoint.retry.max_backoff,
                           std::chrono::milliseconds(static_cast<long long>(backoff.count() * endpoint.retry.multiplier)));
      }
    }
    rec.error = rec.attempts >= endpoint.retry.max_attempts ? "exhausted retries: " + last_error : last_error;
    rec.latency_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
    return rec;
  };

  auto worker = [&] {
    while (!abort) {
      const std::size_t i = next.fetch_add(1);
      if (i >= pending.size()) return;
      auto rec = process(*pending[i]);
      if (!rec) return;
      sink.write(*rec);
      std::lock_guard lock(sink.mutex());
      if (rec->error) {
        ++stats.failed;
      } else {
        ++stats.succeeded;
      }
      if (options.on_record) options.on_record(*rec, stats);
    }
  };

  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(endpoint.max_concurrent), pending.size());
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  if (abort) {
    throw AuthError("endpoint rejected the credentials (" + abort_reason + "); check the " + endpoint.token_env +
                    " environment variable");
  }
  return stats;
}

}  // namespace tokbench
