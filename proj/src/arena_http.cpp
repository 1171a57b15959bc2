#include <httplib.h>

#include "cantor/arena.hpp"

namespace cantor {

namespace {

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Runs an operation, mapping failures onto the error object.
template <class Op>
void guarded(httplib::Response& res, Op op) {
  try {
    reply(res, 200, op());
  } catch (const CantorError& e) {
    reply(res, http_status(e.code()), error_json(e));
  } catch (const Json::exception& e) {
    reply(res, 400, error_json(CantorError(Errc::ParseError, e.what())));
  }
}

Json body_of(const httplib::Request& req) { return parse_json(req.body.empty() ? "{}" : req.body); }

}  // namespace

struct HttpService::Impl {
  httplib::Server server;
  std::thread worker;
};

HttpService::HttpService(Arena& arena) : impl_(std::make_unique<Impl>()) {
  httplib::Server& server = impl_->server;
  server.Post("/session", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return arena.create_session(body_of(req)); });
  });
  server.Get(R"(/session/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return arena.get_session(req.matches[1]); });
  });
  server.Post(R"(/session/([^/]+)/move)", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return arena.post_move(req.matches[1], body_of(req)); });
  });
  server.Get(R"(/session/([^/]+)/target-tree)", [&](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      std::size_t depth = 6;
      if (req.has_param("depth")) {
        const std::string d = req.get_param_value("depth");
        if (d.empty() || d.size() > 2 || d.find_first_not_of("0123456789") != std::string::npos)
          throw CantorError(Errc::ParseError, "depth must be an integer 0..99");
        depth = std::stoul(d);
        if (depth > 12) throw CantorError(Errc::DepthExceeded, "target overlay depth is capped at 12");
      }
      return arena.target_tree(req.matches[1], depth);
    });
  });
  server.Post("/extract", [](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return extract_op(body_of(req)); });
  });
  server.Post("/classify", [](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return classify_op(body_of(req)); });
  });
  server.Post("/counterplay", [](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { return counterplay_op(body_of(req)); });
  });
}

HttpService::~HttpService() { stop(); }

int HttpService::start(const std::string& host, int port) {
  httplib::Server& server = impl_->server;
  const int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
  if (bound < 0)
    throw CantorError(Errc::InvalidConfig, "cannot listen on " + host + ":" + std::to_string(port));
  impl_->worker = std::thread([&server] { server.listen_after_bind(); });
  server.wait_until_ready();
  return bound;
}

void HttpService::run(const std::string& host, int port) {
  if (!impl_->server.listen(host, port))
    throw CantorError(Errc::InvalidConfig, "cannot listen on " + host + ":" + std::to_string(port));
}

void HttpService::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace cantor
