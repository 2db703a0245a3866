#include "netevo/session.hpp"

#include <cstdio>
#include <random>

#include "netevo/network_io.hpp"

namespace netevo {

using nlohmann::json;

std::string to_string(SessionMode mode) {
    switch (mode) {
        case SessionMode::Running: return "running";
        case SessionMode::Paused: return "paused";
        case SessionMode::Finished: return "finished";
    }
    return "unknown";
}

json session_state_to_json(const SessionState& s) {
    return {{"run_id", s.run_id},
            {"mode", to_string(s.mode)},
            {"current_generation", s.current_generation},
            {"live_config", config_to_json(s.live_config)},
            {"latest_record", s.latest_record ? record_to_json(*s.latest_record) : json(nullptr)},
            {"elite_network", network_to_json(s.elite_network)}};
}

Session::Session(std::string run_id, GaConfig cfg)
    : run_id_(std::move(run_id)), engine_(cfg, initial_network(cfg)) {
    std::lock_guard engine_lock(engine_mutex_);
    if (engine_.finished()) mode_ = SessionMode::Finished;
    publish_locked();
    worker_ = std::thread([this] { worker_loop(); });
}

Session::~Session() { shutdown(); }

void Session::shutdown() {
    {
        std::lock_guard lock(state_mutex_);
        stopping_ = true;
    }
    changed_.notify_all();
    if (worker_.joinable()) worker_.join();
}

void Session::publish_locked() {
    auto snap = std::make_shared<SessionState>();
    snap->run_id = run_id_;
    snap->current_generation = engine_.generation();
    snap->live_config = engine_.config();
    if (!engine_.records().empty()) snap->latest_record = engine_.records().back();
    snap->elite_network = engine_.elite();

    std::lock_guard lock(state_mutex_);
    for (std::size_t i = records_.size(); i < engine_.records().size(); ++i)
        records_.push_back(engine_.records()[i]);
    if (engine_.finished()) mode_ = SessionMode::Finished;
    snap->mode = mode_;
    snapshot_ = std::move(snap);
    changed_.notify_all();
}

void Session::worker_loop() {
    for (;;) {
        {
            std::unique_lock lock(state_mutex_);
            changed_.wait(lock, [&] { return stopping_ || mode_ == SessionMode::Running; });
            if (stopping_) return;
        }
        std::lock_guard engine_lock(engine_mutex_);
        {
            std::lock_guard lock(state_mutex_);
            if (stopping_) return;
            if (mode_ != SessionMode::Running) continue;
        }
        if (!engine_.finished()) engine_.step();
        publish_locked();
    }
}

SessionState Session::state() const {
    std::lock_guard lock(state_mutex_);
    SessionState s = *snapshot_;
    s.mode = mode_;
    return s;
}

std::vector<GenerationRecord> Session::records_from(std::size_t first) const {
    std::lock_guard lock(state_mutex_);
    if (first >= records_.size()) return {};
    return {records_.begin() + static_cast<std::ptrdiff_t>(first), records_.end()};
}

std::size_t Session::record_count() const {
    std::lock_guard lock(state_mutex_);
    return records_.size();
}

std::size_t Session::wait_for_records(std::size_t have, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(state_mutex_);
    changed_.wait_for(lock, timeout, [&] {
        return stopping_ || records_.size() > have || mode_ == SessionMode::Finished;
    });
    return records_.size();
}

SessionState Session::update_config(const json& patch) {
    std::lock_guard command(command_mutex_);
    std::lock_guard engine_lock(engine_mutex_);
    {
        std::lock_guard lock(state_mutex_);
        if (mode_ == SessionMode::Finished) throw SessionConflict("session is finished");
    }
    const GaConfig current = engine_.config();
    const GaConfig next = apply_patch(current, patch);

    std::vector<FieldError> errors = validate(next);
    if (next.seed != current.seed) errors.push_back({"seed", "fixed once the session has started"});
    if (next.model.n_clients != current.model.n_clients)
        errors.push_back({"n_clients", "fixed once the session has started"});
    if (next.model.n_servers != current.model.n_servers)
        errors.push_back({"n_servers", "fixed once the session has started"});
    if (next.generations < engine_.generation())
        errors.push_back({"generations", "below the current generation"});
    if (!errors.empty()) throw ConfigError(std::move(errors));

    engine_.set_config(next);
    publish_locked();
    return state();
}

SessionState Session::step(int n_generations) {
    if (n_generations < 0) throw std::invalid_argument("step: n_generations must be non-negative");
    std::lock_guard command(command_mutex_);
    std::lock_guard engine_lock(engine_mutex_);
    {
        std::lock_guard lock(state_mutex_);
        if (mode_ == SessionMode::Running) throw SessionConflict("step requires a paused session");
        if (mode_ == SessionMode::Finished) throw SessionConflict("session is finished");
    }
    for (int i = 0; i < n_generations && !engine_.finished(); ++i) {
        engine_.step();
        publish_locked();
    }
    return state();
}

SessionState Session::pause() {
    std::lock_guard command(command_mutex_);
    {
        std::lock_guard lock(state_mutex_);
        if (mode_ == SessionMode::Finished) throw SessionConflict("session is finished");
        mode_ = SessionMode::Paused;
    }
    // Wait out the generation in flight so the caller sees a settled state.
    std::lock_guard engine_lock(engine_mutex_);
    publish_locked();
    return state();
}

SessionState Session::resume() {
    std::lock_guard command(command_mutex_);
    {
        std::lock_guard lock(state_mutex_);
        if (mode_ == SessionMode::Finished) throw SessionConflict("session is finished");
        mode_ = SessionMode::Running;
    }
    changed_.notify_all();
    return state();
}

SessionManager::~SessionManager() { shutdown(); }

std::shared_ptr<Session> SessionManager::start(const GaConfig& cfg) {
    require_valid(cfg);
    std::string id;
    {
        std::lock_guard lock(mutex_);
        std::random_device rd;
        char buf[48];
        std::snprintf(buf, sizeof buf, "run-%llu-%08x", ++counter_, rd());
        id = buf;
    }
    auto session = std::make_shared<Session>(id, cfg);
    std::lock_guard lock(mutex_);
    sessions_.emplace(id, session);
    return session;
}

std::shared_ptr<Session> SessionManager::find(const std::string& run_id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(run_id);
    if (it == sessions_.end()) throw SessionNotFound("no session '" + run_id + "'");
    return it->second;
}

void SessionManager::shutdown() {
    std::map<std::string, std::shared_ptr<Session>> sessions;
    {
        std::lock_guard lock(mutex_);
        sessions.swap(sessions_);
    }
    for (auto& [id, s] : sessions) s->shutdown();
}

}  // namespace netevo
