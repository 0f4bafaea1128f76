#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <gtest/gtest.h>

#include "fake_client.h"
#include "test_paths.h"
#include "tokbench/errors.h"

using namespace tokbench;
using namespace tokbench::testing;

TEST(Prompt, AppendsAnswerInstruction) {
  TaskInstance inst;
  inst.question = "How many?";
  EXPECT_EQ(build_prompt(inst, false), "How many?\nYou need to put the final result inside <answer> </answer>.");
  EXPECT_NE(build_prompt(inst, true).find("step by step"), std::string::npos);
}

TEST(HttpBody, CarriesGenerationParameters) {
  ChatRequest req{"m", "hi", {}, true};
  const auto body = HttpChatClient::request_body(req);
  EXPECT_EQ(body["model"], "m");
  EXPECT_EQ(body["messages"][0]["content"], "hi");
  EXPECT_DOUBLE_EQ(body["temperature"].get<double>(), 0.7);
  EXPECT_EQ(body["top_k"], 50);
  req.send_top_k = false;
  EXPECT_FALSE(HttpChatClient::request_body(req).contains("top_k"));
}

TEST(HttpBody, ParsesCompletionContent) {
  EXPECT_EQ(HttpChatClient::parse_content(R"({"choices":[{"message":{"content":"x"}}]})"), "x");
  EXPECT_EQ(HttpChatClient::parse_content(R"({"choices":[{"message":{"content":null}}]})"), "");
  EXPECT_FALSE(HttpChatClient::parse_content("not json"));
  EXPECT_FALSE(HttpChatClient::parse_content(R"({"choices":[]})"));
}

TEST(RunRecord, JsonRoundTrip) {
  RunRecord r;
  r.instance_id = "a";
  r.raw_output = "<answer>1</answer>";
  r.attempts = 2;
  r.error = "HTTP 500";
  const auto back = RunRecord::from_json(r.to_json());
  EXPECT_EQ(back.instance_id, "a");
  EXPECT_EQ(back.attempts, 2);
  EXPECT_EQ(back.error, "HTTP 500");
  EXPECT_THROW(RunRecord::from_json(Json::object()), ResourceError);
}

TEST(Harness, ContractHolds) {
  TempDir dir("contract");
  for (const auto& c : harness_contract(dir.path())) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Harness, AuthFailureAbortsRun) {
  TempDir dir("auth");
  FakeClient client([](const ChatRequest&, int) { return ChatResponse{401, "", "bad key"}; });
  EXPECT_THROW(run_batch(fake_instances(50), client, fake_endpoint(2, 5), {}, dir.path() / "r.jsonl", {}), AuthError);
  EXPECT_LE(client.calls(), 2);
}

TEST(Harness, PermanentClientErrorIsNotRetried) {
  TempDir dir("perm");
  FakeClient client([](const ChatRequest&, int) { return ChatResponse{400, "", "bad request"}; });
  const auto stats = run_batch(fake_instances(3), client, fake_endpoint(1, 5), {}, dir.path() / "r.jsonl", {});
  EXPECT_EQ(stats.failed, 3u);
  EXPECT_EQ(client.calls(), 3);
}

TEST(Harness, RejectsInvalidSettings) {
  TempDir dir("bad");
  FakeClient client([](const ChatRequest& r, int) { return ok(r); });
  EXPECT_THROW(run_batch(fake_instances(1), client, fake_endpoint(0, 1), {}, dir.path() / "r.jsonl", {}), DomainError);
  EXPECT_THROW(run_batch(fake_instances(1), client, fake_endpoint(1, 0), {}, dir.path() / "r.jsonl", {}), DomainError);
}

TEST(Harness, ProgressCallbackSeesEveryRecord) {
  TempDir dir("progress");
  FakeClient client([](const ChatRequest& r, int) { return ok(r); });
  std::atomic<int> seen{0};
  RunOptions opts;
  opts.on_record = [&](const RunRecord&, const RunStats&) { ++seen; };
  run_batch(fake_instances(12), client, fake_endpoint(3, 1), {}, dir.path() / "r.jsonl", opts);
  EXPECT_EQ(seen, 12);
}

namespace {

// Local chat-completions endpoint that rejects top_k and checks the bearer token.
class LocalServer {
 public:
  LocalServer() {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests;
      if (req.get_header_value("Authorization") != "Bearer secret") {
        res.status = 401;
        return;
      }
      const auto body = Json::parse(req.body);
      if (body.contains("top_k")) {
        res.status = 400;
        res.set_content(R"({"error":"unsupported parameter: top_k"})", "application/json");
        return;
      }
      const std::string prompt = body["messages"][0]["content"];
      Json reply = {{"choices", Json::array({{{"message", {{"role", "assistant"}, {"content", "echo " + prompt}}}}})}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

  std::atomic<int> requests{0};

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST(HttpClient, DropsTopKAfterRejection) {
  LocalServer server;
  TempDir dir("http");
  auto endpoint = fake_endpoint(2, 3);
  endpoint.base_url = server.url();
  HttpChatClient client(endpoint, "secret");
  const auto stats = run_batch(fake_instances(6), client, endpoint, {}, dir.path() / "r.jsonl", {});
  EXPECT_EQ(stats.succeeded, 6u);
  for (const auto& r : read_run_file(dir.path() / "r.jsonl")) {
    EXPECT_EQ(r.raw_output.rfind("echo question", 0), 0u) << r.raw_output;
    EXPECT_EQ(r.output_chars, r.raw_output.size());
  }
  EXPECT_LE(server.requests, 6 + 2);
}

TEST(HttpClient, WrongTokenRaisesAuthError) {
  LocalServer server;
  TempDir dir("http_auth");
  auto endpoint = fake_endpoint(1, 3);
  endpoint.base_url = server.url();
  HttpChatClient client(endpoint, "wrong");
  EXPECT_THROW(run_batch(fake_instances(4), client, endpoint, {}, dir.path() / "r.jsonl", {}), AuthError);
  EXPECT_EQ(server.requests, 1);
}

TEST(HttpClient, UnreachableEndpointIsTransient) {
  auto endpoint = fake_endpoint(1, 1);
  endpoint.base_url = "http://127.0.0.1:1/v1";
  HttpChatClient client(endpoint, "");
  const auto resp = client.complete({"m", "p", {}, true});
  EXPECT_EQ(resp.status, 0);
  endpoint.base_url = "no-scheme";
  EXPECT_THROW(HttpChatClient(endpoint, ""), DomainError);
}
