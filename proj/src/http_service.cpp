#include "netevo/http_service.hpp"

#include "httplib.h"
#include "netevo/network_io.hpp"

namespace netevo {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
    send_json(res, status, {{"error", message}});
}

json field_errors(const ConfigError& e) {
    json fields = json::array();
    for (const auto& f : e.errors()) fields.push_back({{"field", f.field}, {"message", f.message}});
    return fields;
}

json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    return json::parse(req.body);
}

std::size_t from_param(const httplib::Request& req) {
    if (!req.has_param("from")) return 0;
    const std::string v = req.get_param_value("from");
    std::size_t pos = 0;
    const long long k = std::stoll(v, &pos);
    if (pos != v.size() || k < 0) throw std::invalid_argument("'from' must be a non-negative integer");
    return static_cast<std::size_t>(k);
}

// Maps domain exceptions onto status codes.
template <class F>
httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
        try {
            f(req, res);
        } catch (const ConfigError& e) {
            send_json(res, 400, {{"error", e.what()}, {"fields", field_errors(e)}});
        } catch (const SessionNotFound& e) {
            send_error(res, 404, e.what());
        } catch (const SessionConflict& e) {
            send_error(res, 409, e.what());
        } catch (const json::exception& e) {
            send_error(res, 400, std::string("malformed JSON: ") + e.what());
        } catch (const std::invalid_argument& e) {
            send_error(res, 400, e.what());
        } catch (const std::out_of_range& e) {
            send_error(res, 400, e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, e.what());
        }
    };
}

}  // namespace

ControlServer::ControlServer(SessionManager& sessions)
    : sessions_(sessions), server_(std::make_unique<httplib::Server>()) {
    install_routes();
}

ControlServer::~ControlServer() { stop(); }

int ControlServer::bind(const std::string& host, int port) {
    if (port == 0) return server_->bind_to_any_port(host);
    if (!server_->bind_to_port(host, port)) return -1;
    return port;
}

void ControlServer::serve() { server_->listen_after_bind(); }

void ControlServer::stop() {
    stopping_ = true;
    if (server_) server_->stop();
}

void ControlServer::install_routes() {
    httplib::Server& svr = *server_;

    svr.Post("/sessions", guarded([this](const httplib::Request& req, httplib::Response& res) {
        const GaConfig cfg = config_from_json(parse_body(req));
        auto session = sessions_.start(cfg);
        send_json(res, 201,
                  {{"run_id", session->run_id()}, {"state", session_state_to_json(session->state())}});
    }));

    svr.Get(R"(/sessions/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, session_state_to_json(sessions_.find(req.matches[1])->state()));
    }));

    svr.Patch(R"(/sessions/([^/]+)/config)",
              guarded([this](const httplib::Request& req, httplib::Response& res) {
                  auto session = sessions_.find(req.matches[1]);
                  send_json(res, 200, session_state_to_json(session->update_config(parse_body(req))));
              }));

    svr.Post(R"(/sessions/([^/]+)/step)", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto session = sessions_.find(req.matches[1]);
        const json body = parse_body(req);
        int n = 1;
        if (body.contains("n_generations")) {
            if (!body["n_generations"].is_number_integer())
                throw std::invalid_argument("n_generations must be an integer");
            n = body["n_generations"].get<int>();
        }
        send_json(res, 200, session_state_to_json(session->step(n)));
    }));

    svr.Post(R"(/sessions/([^/]+)/pause)", guarded([this](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, session_state_to_json(sessions_.find(req.matches[1])->pause()));
    }));

    svr.Post(R"(/sessions/([^/]+)/resume)", guarded([this](const httplib::Request& req, httplib::Response& res) {
        send_json(res, 200, session_state_to_json(sessions_.find(req.matches[1])->resume()));
    }));

    svr.Get(R"(/sessions/([^/]+)/records)", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto session = sessions_.find(req.matches[1]);
        json out = json::array();
        for (const auto& r : session->records_from(from_param(req))) out.push_back(record_to_json(r));
        send_json(res, 200, out);
    }));

    svr.Get(R"(/sessions/([^/]+)/network)", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto session = sessions_.find(req.matches[1]);
        send_json(res, 200, network_to_json(session->state().elite_network));
    }));

    svr.Get(R"(/sessions/([^/]+)/stream)", guarded([this](const httplib::Request& req, httplib::Response& res) {
        auto session = sessions_.find(req.matches[1]);
        auto next = std::make_shared<std::size_t>(from_param(req));
        res.set_header("Cache-Control", "no-cache");
        res.set_chunked_content_provider(
            "text/event-stream", [this, session, next](std::size_t, httplib::DataSink& sink) {
                if (stopping_) return false;
                session->wait_for_records(*next, std::chrono::milliseconds(250));
                for (const auto& r : session->records_from(*next)) {
                    const std::string event =
                        "event: generation\ndata: " + record_to_json(r).dump() + "\n\n";
                    if (!sink.write(event.data(), event.size())) return false;
                    ++*next;
                }
                if (session->state().mode == SessionMode::Finished &&
                    *next >= session->record_count()) {
                    sink.done();
                }
                return true;
            });
    }));
}

}  // namespace netevo
