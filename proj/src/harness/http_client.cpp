#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include "tokbench/errors.h"
#include "tokbench/harness.h"

namespace tokbench {

HttpChatClient::HttpChatClient(const ModelEndpoint& endpoint, std::string token)
    : token_(std::move(token)), timeout_(endpoint.timeout) {
  const std::string& url = endpoint.base_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw DomainError("endpoint URL needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  origin_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  path_ += "/chat/completions";
}

Json HttpChatClient::request_body(const ChatRequest& request) {
  Json body;
  body["model"] = request.model;
  body["messages"] = Json::array({{{"role", "user"}, {"content", request.prompt}}});
  body["temperature"] = request.params.temperature;
  body["max_tokens"] = request.params.max_tokens;
  body["top_p"] = request.params.top_p;
  if (request.send_top_k) body["top_k"] = request.params.top_k;
  return body;
}

std::optional<std::string> HttpChatClient::parse_content(std::string_view body) {
  const auto j = Json::parse(body, nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  try {
    const auto& content = j.at("choices").at(0).at("message").at("content");
    if (content.is_string()) return content.get<std::string>();
    if (content.is_null()) return std::string();
  } catch (const Json::exception&) {
  }
  return std::nullopt;
}

ChatResponse HttpChatClient::complete(const ChatRequest& request) {
  httplib::Client cli(origin_);
  cli.set_connection_timeout(std::chrono::seconds(30));
  cli.set_read_timeout(timeout_);
  cli.set_write_timeout(std::chrono::seconds(60));
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
  auto res = cli.Post(path_, headers, request_body(request).dump(), "application/json");
  if (!res) return {0, "", "transport error: " + httplib::to_string(res.error())};
  if (res->status != 200) return {res->status, "", res->body};
  auto content = parse_content(res->body);
  if (!content) return {502, "", "unparseable completion body: " + res->body.substr(0, 200)};
  return {200, *content, ""};
}

}  // namespace tokbench
