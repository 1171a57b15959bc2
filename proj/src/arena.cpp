#include "cantor/arena.hpp"

#include <random>

namespace cantor {

namespace {

GameConfig config_or_unit(const Json& request) {
  if (request.is_object() && request.contains("config")) return config_from_json(request.at("config"));
  return GameConfig::unit();
}

std::string string_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_string())
    throw CantorError(Errc::ParseError, std::string("missing string field \"") + key + "\"");
  return j.at(key).get<std::string>();
}

std::size_t depth_field(const Json& j, const char* key, std::size_t fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw CantorError(Errc::ParseError, std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

std::string_view status_name(SessionStatus s) {
  switch (s) {
    case SessionStatus::AwaitingHuman: return "AwaitingHuman";
    case SessionStatus::AwaitingEngine: return "AwaitingEngine";
    case SessionStatus::Idle: return "Idle";
  }
  return "?";
}

SetExpr resolve_target(const Json& spec, const GameConfig& config) {
  SetExpr s = [&] {
    if (spec.is_null() || spec == "middle-thirds") return SetExpr::tree(default_chaser_target(config));
    if (spec == "rationals")
      return SetExpr::enumeration(CountableEnum(RatEnumeration(config.a0, config.b0)));
    if (spec == "irrationals") {
      const Interval host{config.a0, config.b0};
      return SetExpr::cover_complement(host, rational_cover(host, 10));
    }
    if (spec.is_string())
      throw CantorError(Errc::UnknownDescriptor, "unknown target \"" + spec.get<std::string>() + "\"");
    return target_from_json(spec);
  }();
  check_within(s, config);
  return s;
}

Json session_view(const Session& s) {
  const Bound legal = s.history.legal_bounds();
  Json view = {{"id", s.id},
               {"config", config_to_json(s.config)},
               {"human_side", std::string(side_name(s.human))},
               {"engine", s.engine.descriptor()},
               {"target", s.target_spec},
               {"play", play_to_json(s.history)},
               {"status", std::string(status_name(s.status))},
               {"to_move", std::string(side_name(s.history.to_move()))},
               {"legal_bounds", {{"lo", rat_to_json(legal.lo)}, {"hi", rat_to_json(legal.hi)}}},
               {"bracket", nullptr}};
  if (s.history.depth() > 0) {
    const Round& r = s.history.rounds().back();
    view["bracket"] = {{"lo", rat_to_json(r.a)}, {"hi", rat_to_json(r.b)}, {"depth", s.history.depth()}};
  }
  return view;
}

Arena::Arena(std::optional<std::string> log_path) : log_path_(std::move(log_path)) {
  if (!log_path_) return;
  std::ifstream in(*log_path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json event = parse_json(line);
    const std::string kind = string_field(event, "event");
    if (kind == "create") {
      create_locked(event.at("request"), false);
    } else if (kind == "move") {
      const auto slot = find(string_field(event, "session"));
      std::lock_guard lock(slot->mu);
      move_locked(*slot, rat_from_json(event.at("value")), false);
    }
  }
}

std::shared_ptr<Arena::Slot> Arena::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw CantorError(Errc::UnknownSession, "no session \"" + id + "\"");
  return it->second;
}

void Arena::append_log(const Json& line) {
  if (!log_path_) return;
  std::lock_guard lock(log_mu_);
  std::ofstream out(*log_path_, std::ios::app);
  out << line.dump() << '\n';
}

Json Arena::create_session(const Json& request) { return create_locked(request, true); }

Json Arena::create_locked(const Json& request, bool log) {
  if (!request.is_object()) throw CantorError(Errc::ParseError, "session request must be an object");
  const GameConfig config = config_or_unit(request);
  const Side human = parse_side(string_field(request, "human_side"));
  const Side engine_side = human == Side::A ? Side::B : Side::A;
  StrategyOracle engine = oracle_from_descriptor(string_field(request, "engine"), engine_side, config);
  if (engine.side() != engine_side)
    throw CantorError(Errc::UnknownDescriptor, "engine \"" + engine.descriptor() + "\" plays side " +
                                                   std::string(side_name(engine.side())) +
                                                   ", the human's side");
  const Json spec = request.contains("target") ? request.at("target") : Json("middle-thirds");
  SetExpr target = resolve_target(spec, config);

  auto slot = std::make_shared<Slot>(Session{"", config, human, engine, std::move(target), spec,
                                             History(config), SessionStatus::AwaitingHuman});
  if (human == Side::B) {
    const Rat a1 = engine(slot->session.history);
    slot->session.history = apply_move(slot->session.history, Side::A, a1);
  }
  std::unique_lock lock(mu_);
  slot->session.id = "s" + std::to_string(next_id_++);
  sessions_.emplace(slot->session.id, slot);
  const Json view = session_view(slot->session);
  lock.unlock();
  if (log) append_log({{"event", "create"}, {"session", slot->session.id}, {"request", request}});
  return view;
}

Json Arena::get_session(const std::string& id) const {
  const auto slot = find(id);
  std::lock_guard lock(slot->mu);
  return session_view(slot->session);
}

Json Arena::post_move(const std::string& id, const Json& body) {
  const Rat value = rat_from_json(body.is_object() && body.contains("value") ? body.at("value") : Json());
  const auto slot = find(id);
  std::lock_guard lock(slot->mu);
  return move_locked(*slot, value, true);
}

Json Arena::move_locked(Slot& slot, const Rat& value, bool log) {
  Session& s = slot.session;
  if (s.status != SessionStatus::AwaitingHuman || s.history.to_move() != s.human)
    throw CantorError(Errc::WrongTurn, "session is not waiting for player " + std::string(side_name(s.human)));
  // Both moves land together or not at all.
  History next = apply_move(s.history, s.human, value);
  const Rat reply = s.engine(next);
  const Side engine_side = s.human == Side::A ? Side::B : Side::A;
  try {
    next = apply_move(next, engine_side, reply);
  } catch (const CantorError& err) {
    throw CantorError(Errc::OracleContractViolation,
                      "engine " + s.engine.descriptor() + " answered illegally: " + err.what(), err.bound());
  }
  s.history = std::move(next);
  if (log) append_log({{"event", "move"}, {"session", s.id}, {"value", rat_to_json(value)}});
  return {{"session", session_view(s)},
          {"human_move", rat_to_json(value)},
          {"engine_move", rat_to_json(reply)}};
}

Json Arena::target_tree(const std::string& id, std::size_t depth) const {
  const auto slot = find(id);
  std::lock_guard lock(slot->mu);
  const Session& s = slot->session;
  Json overlays = Json::array();
  for (const SetExpr* a : s.target.atoms()) {
    if (const auto* t = std::get_if<TreeRef>(&a->node)) {
      const std::size_t d = std::min(depth, (*t)->materialized_depth().value_or(depth));
      Json leaves = Json::array();
      for (const auto& p : paths_at_depth(d)) leaves.push_back(interval_to_json((*t)->expand(p)));
      overlays.push_back({{"kind", "tree"}, {"depth", d}, {"intervals", leaves}});
    } else if (const auto* iv = std::get_if<Interval>(&a->node)) {
      overlays.push_back({{"kind", "interval"}, {"intervals", Json::array({interval_to_json(*iv)})}});
    } else if (const auto* cc = std::get_if<CoverComplement>(&a->node)) {
      Json comps = Json::array();
      for (const auto& c : uncovered_components(*cc)) comps.push_back(interval_to_json(c));
      overlays.push_back({{"kind", "cover_complement"}, {"intervals", comps}});
    }
  }
  return {{"session", s.id}, {"depth", depth}, {"overlays", overlays}};
}

std::size_t Arena::session_count() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

Json extract_op(const Json& request) {
  const GameConfig config = config_or_unit(request);
  const Side side = parse_side(string_field(request, "side"));
  const std::size_t depth = depth_field(request, "depth", 6);
  const StrategyOracle oracle = oracle_from_descriptor(string_field(request, "strategy"), side, config);
  if (oracle.side() != side)
    throw CantorError(Errc::UnknownDescriptor, "strategy \"" + oracle.descriptor() + "\" is not for side " +
                                                   std::string(side_name(side)));
  const ExtractedTree x = extract(oracle, config, depth);
  Json out = extraction_to_json(x);
  out["report"] = report_to_json(verify_extraction(x));
  return out;
}

Json classify_op(const Json& request) {
  const bool wrapped = request.is_object() && request.contains("target");
  const Json& spec = wrapped ? request.at("target") : request;
  const std::size_t depth = wrapped ? depth_field(request, "depth", 5) : 5;
  const GameConfig config = wrapped ? config_or_unit(request) : GameConfig::unit();
  const SetExpr s = spec.is_string() ? resolve_target(spec, config) : target_from_json(spec);
  Json out = classification_to_json(classify_determinacy(s, depth), depth);
  out["depth"] = depth;
  return out;
}

Json counterplay_op(const Json& request) {
  const GameConfig config = config_or_unit(request);
  const StrategyOracle g = oracle_from_descriptor(string_field(request, "strategy"), Side::B, config);
  if (g.side() != Side::B) throw CantorError(Errc::UnknownDescriptor, "counterplay needs a player-B strategy");
  const Rat s = rat_from_json(request.contains("target_point") ? request.at("target_point") : Json());
  const std::size_t depth = depth_field(request, "depth", 20);
  return trace_to_json(counterplay(g, config, s, midpoint_sampler, depth));
}

Json verify_op(const Json& artifact, std::size_t replay_samples) {
  if (artifact.is_object() && artifact.contains("ledger")) {
    const ExtractedTree x = extraction_from_json(artifact);
    const TreeReport report = verify_extraction(x);
    std::mt19937_64 rng(20240601);
    std::vector<Path> codes;
    for (std::size_t i = 0; i < replay_samples; ++i) {
      Path p;
      for (std::size_t k = 0; k < x.depth; ++k) p.push_back((rng() & 1U) ? '1' : '0');
      codes.push_back(std::move(p));
    }
    const auto failed = replay_failures(x, codes);
    Json fails = Json::array();
    for (auto i : failed) fails.push_back(codes[i]);
    return {{"kind", "extraction"},
            {"clean", report.clean() && failed.empty()},
            {"report", report_to_json(report)},
            {"replays", codes.size()},
            {"replay_failures", fails}};
  }
  const TreeRef t = tree_from_json(artifact);
  const std::size_t depth = artifact.contains("depth") ? artifact.at("depth").get<std::size_t>()
                                                       : t->materialized_depth().value_or(6);
  const TreeReport report = validate_tree(*t, depth);
  return {{"kind", "tree"}, {"clean", report.clean()}, {"report", report_to_json(report)}};
}

Json error_json(const CantorError& e) {
  Json out = {{"error", std::string(errc_name(e.code()))}, {"message", e.what()}};
  if (e.bound()) out["bound"] = {{"lo", rat_to_json(e.bound()->lo)}, {"hi", rat_to_json(e.bound()->hi)}};
  return out;
}

int http_status(Errc c) {
  switch (c) {
    case Errc::UnknownSession: return 404;
    case Errc::WrongTurn: return 409;
    case Errc::OracleContractViolation:
    case Errc::ConstructionStuck:
    case Errc::GeneratorViolation: return 500;
    default: return 400;
  }
}

}  // namespace cantor
