// Copyright 2026 The paramine Authors.
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

#ifndef PARAMINE_ANNOTATION_HTTP_HPP_
#define PARAMINE_ANNOTATION_HTTP_HPP_

#include <httplib.h>

#include <string>
#include <thread>

#include "paramine/annotation/service.hpp"

namespace paramine::annotation {

inline int HttpStatus(ServiceErrc code) {
  switch (code) {
    case ServiceErrc::kBadRequest: return 400;
    case ServiceErrc::kUnknownWorker: return 401;
    case ServiceErrc::kForbidden: return 403;
    case ServiceErrc::kNotFound: return 404;
    case ServiceErrc::kDuplicate: return 409;
    case ServiceErrc::kOutOfRange: return 422;
    case ServiceErrc::kConflict: return 409;
  }
  return 500;
}

namespace detail {

inline void Reply(httplib::Response &res, int status, const Json &body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename Fn>
void Guarded(httplib::Response &res, Fn &&fn) {
  try {
    fn();
  } catch (const ServiceError &e) {
    Reply(res, HttpStatus(e.code()), {{"error", e.what()}});
  } catch (const Json::exception &e) {
    Reply(res, 400, {{"error", std::string("malformed body: ") + e.what()}});
  } catch (const std::exception &e) {
    PARAMINE_LOG(Error) << "annotation request failed: " << e.what();
    Reply(res, 500, {{"error", e.what()}});
  }
}

inline void RequireAdmin(const ServiceConfig &cfg, const httplib::Request &req) {
  if (cfg.admin_token.empty()) return;
  if (req.get_header_value("X-Admin-Token") != cfg.admin_token) {
    throw ServiceError(ServiceErrc::kForbidden, "admin token required");
  }
}

}  // namespace detail

inline void RegisterRoutes(httplib::Server &server, AnnotationService &svc) {
  using detail::Guarded;
  using detail::Reply;

  server.Get("/tasks/next", [&svc](const httplib::Request &req, httplib::Response &res) {
    Guarded(res, [&] {
      if (!req.has_param("worker")) {
        throw ServiceError(ServiceErrc::kBadRequest, "worker query parameter is required");
      }
      auto task = svc.ClaimNext(req.get_param_value("worker"));
      if (!task) {
        res.status = 204;
        return;
      }
      Reply(res, 200, AssignmentToJson(*task));
    });
  });

  server.Post("/judgments", [&svc](const httplib::Request &req, httplib::Response &res) {
    Guarded(res, [&] {
      Judgment j = svc.Submit(JudgmentInputFromJson(Json::parse(req.body)));
      Reply(res, 201, JudgmentToJson(j));
    });
  });

  server.Get(R"(/pairs/([^/]+)/aggregate)",
             [&svc](const httplib::Request &req, httplib::Response &res) {
               Guarded(res, [&] { Reply(res, 200, AggregateToJson(svc.Aggregate(req.matches[1]))); });
             });

  auto reliability_body = [](const std::vector<WorkerReliability> &rows) {
    Json workers = Json::array();
    for (const auto &r : rows) workers.push_back(ReliabilityToJson(r));
    return Json{{"workers", workers}};
  };

  server.Get("/workers/reliability",
             [&svc, reliability_body](const httplib::Request &, httplib::Response &res) {
               Guarded(res, [&] { Reply(res, 200, reliability_body(svc.Reliability())); });
             });

  server.Post("/admin/recompute-kappa",
              [&svc, reliability_body](const httplib::Request &req, httplib::Response &res) {
                Guarded(res, [&] {
                  detail::RequireAdmin(svc.config(), req);
                  Reply(res, 200, reliability_body(svc.RecomputeKappa()));
                });
              });

  server.Post("/admin/republish", [&svc](const httplib::Request &req, httplib::Response &res) {
    Guarded(res, [&] {
      detail::RequireAdmin(svc.config(), req);
      Reply(res, 200, RepublishReportToJson(svc.Republish()));
    });
  });
}

// Owns the listening thread. Port 0 binds an ephemeral port.
class AnnotationServer {
 public:
  explicit AnnotationServer(AnnotationService &svc) { RegisterRoutes(server_, svc); }
  AnnotationServer(const AnnotationServer &) = delete;
  AnnotationServer &operator=(const AnnotationServer &) = delete;
  ~AnnotationServer() { Stop(); }

  int Start(const std::string &host, int port) {
    port_ = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    if (port_ < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return port_;
  }

  // Blocks until Stop() is called from another thread or a signal handler.
  void Serve(const std::string &host, int port) {
    if (!server_.listen(host, port)) throw Error("cannot listen on " + host + ":" + std::to_string(port));
  }

  void Stop() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  int port() const { return port_; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = -1;
};

}  // namespace paramine::annotation

#endif  // PARAMINE_ANNOTATION_HTTP_HPP_
