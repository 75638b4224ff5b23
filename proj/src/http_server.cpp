// Copyright 2026 The picoir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "httplib.h"
#include "picoir/service.hpp"

namespace picoir::service {

struct HttpServer::Impl {
  httplib::Server server;
};

namespace {

void reply(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

}  // namespace

HttpServer::HttpServer(const SearchService& service) : impl_(std::make_unique<Impl>()) {
  auto& s = impl_->server;
  s.set_payload_max_length(1 << 20);
  s.Post("/search", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.search(req.body));
  });
  s.Post("/extract", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.extract(req.body));
  });
  s.Get(R"(/documents/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.document(req.matches[1].str()));
  });
  s.Get("/health", [&service](const httplib::Request&, httplib::Response& res) {
    reply(res, service.health());
  });
  s.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                             std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    reply(res, {500, nlohmann::json{{"error", what}, {"field", nullptr}}});
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& s = impl_->server;
  if (port == 0) {
    const int bound = s.bind_to_any_port(host);
    if (bound < 0) throw Error("cannot bind " + host);
    return bound;
  }
  if (!s.bind_to_port(host, port)) {
    throw Error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace picoir::service
