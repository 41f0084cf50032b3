#include <fstream>
#include <sstream>

#include "httplib.h"

#include "elimination/app.hpp"
#include "elimination/level_io.hpp"

namespace elim {

namespace fs = std::filesystem;
using nlohmann::json;

ServiceState::ServiceState(AppConfig config, Dictionary dictionary, std::vector<GeneratedLevel> levels)
    : config_(std::move(config)), dictionary_(std::move(dictionary)), levels_(std::move(levels)) {}

const GeneratedLevel* ServiceState::level(std::size_t index) const {
  for (const auto& l : levels_) {
    if (l.index == index) return &l;
  }
  return nullptr;
}

std::optional<std::string> ServiceState::append_traces(const std::vector<PlaytraceEvent>& events) {
  std::lock_guard lock(trace_mutex_);
  const fs::path file = trace_file();
  if (!logged_sessions_) {
    logged_sessions_.emplace();
    if (std::ifstream in(file, std::ios::binary); in) {
      for (const auto& e : parse_traces(in).events) logged_sessions_->insert(e.session_id);
    }
  }
  for (const auto& e : events) {
    if (logged_sessions_->count(e.session_id)) return e.session_id;
  }
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::app);
  if (!out) throw AppError("cannot append to " + file.string());
  write_traces(out, events);
  for (const auto& e : events) logged_sessions_->insert(e.session_id);
  return std::nullopt;
}

namespace {

/// A client mistake; reported as 400 with the message.
class BadRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Upload of a session the log already holds; reported as 409.
class Conflict : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

json level_summary(const GeneratedLevel& level) {
  return {{"index", level.index},
          {"challengeCount", level.challenges.size()},
          {"targetLength", level.params.target_length},
          {"bonusCount", level.params.num_2x}};
}

/// Public view of a level: letters, 2X position and budget. Source words and
/// solutions stay on the server.
json level_view(const GeneratedLevel& level) {
  json challenges = json::array();
  for (std::size_t i = 0; i < level.challenges.size(); ++i) {
    const auto& c = level.challenges[i];
    const int number = static_cast<int>(i + 1);
    challenges.push_back({{"challengeIndex", number},
                          {"challengeWord", c.challenge_word},
                          {"bonusPosition", c.bonus_position ? json(*c.bonus_position) : json(nullptr)},
                          {"timeBudgetSeconds", challenge_time(number)}});
  }
  return {{"index", level.index}, {"challenges", challenges}};
}

template <class T>
T required(const json& doc, const char* key) {
  if (!doc.contains(key)) throw BadRequest(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw BadRequest(std::string("field '") + key + "' has the wrong type");
  }
}

json check_word(const ServiceState& state, const json& body) {
  if (!body.is_object()) throw BadRequest("request body must be a JSON object");
  const auto level_index = required<std::size_t>(body, "levelIndex");
  const auto challenge_index = required<std::size_t>(body, "challengeIndex");
  const auto remaining = required<std::string>(body, "remaining");
  const GeneratedLevel* level = state.level(level_index);
  if (!level) throw BadRequest("unknown level " + std::to_string(level_index));
  if (challenge_index < 1 || challenge_index > level->challenges.size()) {
    throw BadRequest("challengeIndex must lie in 1.." + std::to_string(level->challenges.size()));
  }
  const auto& challenge = level->challenges[challenge_index - 1];
  const std::string word = normalize_word(remaining).value_or("");
  if (word.empty() && !remaining.empty()) throw BadRequest("remaining must contain letters only");
  if (!is_subsequence(word, challenge.challenge_word)) {
    throw BadRequest("remaining letters do not come from the challenge word");
  }

  bool bonus = false;
  if (body.contains("eliminated")) {
    const auto eliminated = required<std::vector<std::size_t>>(body, "eliminated");
    std::vector<bool> removed(challenge.challenge_word.size(), false);
    for (auto i : eliminated) {
      if (i >= removed.size() || removed[i]) throw BadRequest("eliminated positions must be distinct and in range");
      removed[i] = true;
    }
    std::string kept;
    for (std::size_t i = 0; i < removed.size(); ++i) {
      if (!removed[i]) kept += challenge.challenge_word[i];
    }
    if (kept != word) throw BadRequest("eliminated positions do not match remaining");
    bonus = challenge.bonus_position && !removed[*challenge.bonus_position];
  }
  const auto& dict = state.dictionary();
  const bool is_word = word.size() >= dict.min_word_length() && dict.contains(word);
  return {{"isWord", is_word}, {"wouldScore", is_word ? word_score(word, bonus) : 0}};
}

std::vector<PlaytraceEvent> decode_upload(const std::string& body) {
  std::vector<PlaytraceEvent> events;
  const auto first = body.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && body[first] == '[') {
    json doc;
    try {
      doc = json::parse(body);
    } catch (const json::exception& err) {
      throw BadRequest(std::string("invalid JSON: ") + err.what());
    }
    for (std::size_t i = 0; i < doc.size(); ++i) {
      try {
        events.push_back(event_from_json(doc[i]));
      } catch (const TraceError& err) {
        throw BadRequest("record " + std::to_string(i + 1) + ": " + err.what());
      }
    }
  } else {
    std::istringstream in(body);
    auto parsed = parse_traces(in);
    if (!parsed.diagnostics.empty()) {
      const auto& d = parsed.diagnostics.front();
      throw BadRequest((d.line ? "line " + std::to_string(d.line) + ": " : "session " + d.session_id + ": ") +
                       d.message);
    }
    events = std::move(parsed.events);
  }
  if (events.empty()) throw BadRequest("no trace records in request");
  return events;
}

json accept_traces(ServiceState& state, const std::string& body) {
  const auto events = decode_upload(body);
  const auto sessions = group_sessions(events);
  for (const auto& [id, session] : sessions) {
    if (const auto problems = check_session_structure(session); !problems.empty()) {
      throw BadRequest("session " + id + ": " + problems.front());
    }
    const GeneratedLevel* level = state.level(session.front().level_index);
    if (!level) throw BadRequest("session " + id + ": unknown level " + std::to_string(session.front().level_index));
    try {
      replay_session(session, *level, state.dictionary());
    } catch (const TraceError& err) {
      throw BadRequest("session " + id + ": " + err.what());
    }
  }
  if (const auto duplicate = state.append_traces(events)) throw Conflict("session " + *duplicate + " already recorded");
  return {{"accepted", events.size()}, {"sessions", sessions.size()}};
}

}  // namespace

void install_routes(httplib::Server& server, ServiceState& state) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& err) {
      send_error(res, 500, err.what());
    } catch (...) {
      send_error(res, 500, "internal error");
    }
  });
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Get("/api/levels", [&state](const httplib::Request&, httplib::Response& res) {
    json levels = json::array();
    for (const auto& l : state.levels()) levels.push_back(level_summary(l));
    send_json(res, 200, {{"levels", levels}});
  });

  server.Get(R"(/api/levels/(\d+))", [&state](const httplib::Request& req, httplib::Response& res) {
    std::size_t index = 0;
    try {
      index = std::stoul(req.matches[1].str());
    } catch (const std::exception&) {
      return send_error(res, 404, "no such level");
    }
    const GeneratedLevel* level = state.level(index);
    if (!level) return send_error(res, 404, "no such level");
    send_json(res, 200, level_view(*level));
  });

  server.Post("/api/check", [&state](const httplib::Request& req, httplib::Response& res) {
    try {
      send_json(res, 200, check_word(state, json::parse(req.body)));
    } catch (const json::parse_error& err) {
      send_error(res, 400, std::string("invalid JSON: ") + err.what());
    } catch (const BadRequest& err) {
      send_error(res, 400, err.what());
    }
  });

  server.Post("/api/traces", [&state](const httplib::Request& req, httplib::Response& res) {
    try {
      send_json(res, 200, accept_traces(state, req.body));
    } catch (const BadRequest& err) {
      send_error(res, 400, err.what());
    } catch (const Conflict& err) {
      send_error(res, 409, err.what());
    }
  });

  server.Get("/api/report", [&state](const httplib::Request&, httplib::Response& res) {
    const fs::path file = state.config().traces_dir / "report.json";
    std::ifstream in(file, std::ios::binary);
    if (!in) return send_error(res, 404, "no report yet (run analyze)");
    std::ostringstream text;
    text << in.rdbuf();
    res.status = 200;
    res.set_content(text.str(), "application/json");
  });
}

int cmd_serve(const AppConfig& config, std::ostream& log) {
  try {
    auto levels = read_levels(config.levels_dir);
    if (levels.empty()) throw AppError("no level files in " + config.levels_dir.string() + " (run generate first)");
    ServiceState state(config, load_dictionary(config), std::move(levels));
    httplib::Server server;
    install_routes(server, state);
    log << "serving " << state.levels().size() << " levels on http://0.0.0.0:" << config.service_port << '\n';
    if (!server.listen("0.0.0.0", config.service_port)) throw AppError("cannot listen on port " +
                                                                       std::to_string(config.service_port));
    return 0;
  } catch (const std::exception& err) {
    log << "error: " << err.what() << '\n';
    return 1;
  }
}

}  // namespace elim
