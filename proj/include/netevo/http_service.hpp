#pragma once

#include <atomic>
#include <memory>
#include <string>

#include "netevo/session.hpp"

namespace httplib {
class Server;
}

namespace netevo {

/// HTTP/JSON front end for a SessionManager.
///
///   POST  /sessions                      config -> {run_id, state}
///   GET   /sessions/{id}                 -> SessionState
///   PATCH /sessions/{id}/config          partial config -> SessionState
///   POST  /sessions/{id}/step            {"n_generations": n} (default 1)
///   POST  /sessions/{id}/pause | resume  -> SessionState
///   GET   /sessions/{id}/records?from=k  -> [GenerationRecord]
///   GET   /sessions/{id}/network         -> elite network document
///   GET   /sessions/{id}/stream?from=k   -> text/event-stream, event "generation"
///
/// Errors come back as {"error": message} with 400 (bad request or config,
/// plus a "fields" array of {field, message}), 404 (unknown session) or 409
/// (command not legal in the current mode).
class ControlServer {
public:
    explicit ControlServer(SessionManager& sessions);
    ~ControlServer();

    /// Binds to `port` (0 picks a free one) and returns the bound port.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after bind().
    void serve();
    void stop();

private:
    void install_routes();

    SessionManager& sessions_;
    std::unique_ptr<httplib::Server> server_;
    std::atomic<bool> stopping_{false};
};

}  // namespace netevo
