#pragma once

#include <chrono>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "netevo/config.hpp"
#include "netevo/ga.hpp"

namespace netevo {

enum class SessionMode { Running, Paused, Finished };

std::string to_string(SessionMode mode);

struct SessionState {
    std::string run_id;
    SessionMode mode = SessionMode::Paused;
    int current_generation = 0;
    GaConfig live_config;
    std::optional<GenerationRecord> latest_record;
    Network elite_network;
};

nlohmann::json session_state_to_json(const SessionState& s);

/// A command that is not legal in the session's current mode.
class SessionConflict : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SessionNotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One live engine driven by a worker thread.
///
/// Commands (update_config, step, pause, resume) are serialized. Each
/// generation runs with the engine lock held, so a command that needs the
/// engine only ever sees it between generations. Readers (state, records)
/// look at the last published generation and never wait on a running one.
class Session {
public:
    Session(std::string run_id, GaConfig cfg);
    ~Session();

    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;

    const std::string& run_id() const { return run_id_; }

    SessionState state() const;
    std::vector<GenerationRecord> records_from(std::size_t first) const;
    std::size_t record_count() const;

    /// Merges `patch` into the live config. Throws ConfigError if the result
    /// is invalid or touches a placement-time field; SessionConflict once
    /// Finished.
    SessionState update_config(const nlohmann::json& patch);

    /// Runs n generations synchronously. Requires Paused. Stops early (and
    /// finishes) at the generation budget.
    SessionState step(int n_generations);

    /// Returns once the in-flight generation, if any, has completed.
    SessionState pause();
    SessionState resume();

    /// Blocks until more than `have` records exist, the session finishes, or
    /// the timeout passes. Returns the current record count.
    std::size_t wait_for_records(std::size_t have, std::chrono::milliseconds timeout) const;

    void shutdown();

private:
    void worker_loop();
    void publish_locked();  // requires engine_mutex_

    const std::string run_id_;

    std::mutex command_mutex_;
    mutable std::mutex engine_mutex_;
    Engine engine_;

    mutable std::mutex state_mutex_;
    mutable std::condition_variable changed_;
    SessionMode mode_ = SessionMode::Paused;
    bool stopping_ = false;
    std::shared_ptr<const SessionState> snapshot_;
    std::vector<GenerationRecord> records_;

    std::thread worker_;
};

class SessionManager {
public:
    SessionManager() = default;
    ~SessionManager();

    /// Validates the config (ConfigError with field diagnostics) and starts a
    /// Paused session at generation 0.
    std::shared_ptr<Session> start(const GaConfig& cfg);
    std::shared_ptr<Session> find(const std::string& run_id) const;
    void shutdown();

private:
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    unsigned long long counter_ = 0;
};

}  // namespace netevo
