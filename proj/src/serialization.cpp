#include "cantor/serialization.hpp"

namespace cantor {

namespace {

[[noreturn]] void bad(const std::string& what) { throw CantorError(Errc::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t size_of(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

Json enum_to_json(const CountableEnum& e) {
  if (const auto* sb = e.stern_brocot())
    return {{"scheme", "stern-brocot"}, {"lo", rat_to_json(sb->lo())}, {"hi", rat_to_json(sb->hi())}};
  Json values = Json::array();
  for (const auto& v : *e.list()) values.push_back(rat_to_json(v));
  return {{"scheme", "list"}, {"values", values}};
}

CountableEnum enum_from_json(const Json& j) {
  const Json& scheme = field(j, "scheme");
  if (scheme == "stern-brocot")
    return CountableEnum(RatEnumeration(rat_from_json(field(j, "lo")), rat_from_json(field(j, "hi"))));
  if (scheme == "list") {
    const Json& vs = field(j, "values");
    if (!vs.is_array()) bad("enum values must be an array");
    std::vector<Rat> values;
    for (const auto& v : vs) values.push_back(rat_from_json(v));
    return CountableEnum(std::move(values));
  }
  bad("unknown enum scheme " + scheme.dump());
}

Json atom_to_json(const SetExpr& a, std::size_t tree_depth) {
  return std::visit(
      [&](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Interval>) {
          return {{"interval", interval_to_json(v)}};
        } else if constexpr (std::is_same_v<T, TreeRef>) {
          return {{"tree", tree_to_json(*v, v->materialized_depth().value_or(tree_depth))}};
        } else if constexpr (std::is_same_v<T, CountableEnum>) {
          return {{"enum", enum_to_json(v)}};
        } else if constexpr (std::is_same_v<T, CoverComplement>) {
          Json cover = Json::array();
          for (const auto& u : v.cover) cover.push_back({rat_to_json(u.lo), rat_to_json(u.hi)});
          return {{"cover_complement", {{"host", interval_to_json(v.host)}, {"cover", cover}}}};
        } else {
          Json parts = Json::array();
          for (const auto& p : v) parts.push_back(atom_to_json(p, tree_depth));
          return {{"union", parts}};
        }
      },
      a.node);
}

}  // namespace

Rat rat_from_json(const Json& j) {
  if (!j.is_string()) bad("expected a \"p/q\" string, got " + j.dump());
  return Rat::parse(j.get<std::string>());
}

Json rat_to_json(const Rat& r) { return r.str(); }

Json interval_to_json(const Interval& iv) { return Json::array({rat_to_json(iv.lo), rat_to_json(iv.hi)}); }

Interval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected [\"lo\", \"hi\"], got " + j.dump());
  return {rat_from_json(j[0]), rat_from_json(j[1])};
}

Json config_to_json(const GameConfig& c) { return {{"a0", rat_to_json(c.a0)}, {"b0", rat_to_json(c.b0)}}; }

GameConfig config_from_json(const Json& j) {
  return GameConfig::make(rat_from_json(field(j, "a0")), rat_from_json(field(j, "b0")));
}

Json play_to_json(const History& h) {
  Json rounds = Json::array();
  for (const auto& r : h.rounds()) rounds.push_back({rat_to_json(r.a), rat_to_json(r.b)});
  return {{"config", config_to_json(h.config())},
          {"rounds", rounds},
          {"pending_a", h.pending_a() ? rat_to_json(*h.pending_a()) : Json(nullptr)}};
}

History play_from_json(const Json& j) {
  const GameConfig config = config_from_json(field(j, "config"));
  const Json& rs = field(j, "rounds");
  if (!rs.is_array()) bad("rounds must be an array");
  std::vector<Round> rounds;
  for (const auto& r : rs) {
    const Interval iv = interval_from_json(r);
    rounds.push_back({iv.lo, iv.hi});
  }
  std::optional<Rat> pending;
  if (j.contains("pending_a") && !j.at("pending_a").is_null()) pending = rat_from_json(j.at("pending_a"));
  return History::from_parts(config, std::move(rounds), std::move(pending));
}

History history_from_flat(const Json& args) {
  if (!args.is_array() || args.size() < 2) bad("flat history needs at least a0 and b0");
  const GameConfig config = GameConfig::make(rat_from_json(args[0]), rat_from_json(args[1]));
  std::vector<Round> rounds;
  std::size_t i = 2;
  for (; i + 1 < args.size(); i += 2) rounds.push_back({rat_from_json(args[i]), rat_from_json(args[i + 1])});
  std::optional<Rat> pending;
  if (i < args.size()) pending = rat_from_json(args[i]);
  return History::from_parts(config, std::move(rounds), std::move(pending));
}

Json tree_to_json(const CantorTree& t, std::size_t depth) {
  Json nodes = Json::object();
  for (const auto& [p, iv] : t.nodes_up_to(depth)) nodes[p] = interval_to_json(iv);
  Json out = {{"root", interval_to_json(t.root())},
              {"e_rule", t.rule().is_halving() ? "halving" : "geometric"},
              {"e_base", rat_to_json(t.rule().base)},
              {"depth", depth},
              {"left_anchored", t.left_anchored()},
              {"nodes", nodes}};
  if (!t.rule().is_halving()) out["e_ratio"] = rat_to_json(t.rule().ratio);
  if (t.has_generator()) out["generator"] = t.generator_name();
  return out;
}

TreeRef tree_from_json(const Json& j) {
  const Interval root = interval_from_json(field(j, "root"));
  if (j.contains("generator") && j.at("generator") == "middle-thirds") return CantorTree::middle_thirds(root.lo, root.hi);
  BoundRule rule{root.width()};
  if (j.contains("e_base")) rule.base = rat_from_json(j.at("e_base"));
  const Json& kind = j.contains("e_rule") ? j.at("e_rule") : Json("halving");
  if (kind == "geometric") {
    rule.ratio = rat_from_json(field(j, "e_ratio"));
  } else if (kind != "halving") {
    bad("unknown e_rule " + kind.dump());
  }
  const Json& ns = field(j, "nodes");
  if (!ns.is_object()) bad("nodes must be an object");
  std::map<Path, Interval> nodes;
  std::size_t deepest = 0;
  for (const auto& [p, iv] : ns.items()) {
    if (p.find_first_not_of("01") != std::string::npos) bad("bad node path \"" + p + "\"");
    nodes.emplace(p, interval_from_json(iv));
    deepest = std::max(deepest, p.size());
  }
  if (!nodes.count("")) nodes.emplace("", root);
  if (nodes.at("") != root) bad("root differs from node \"\"");
  const std::size_t depth = j.contains("depth") ? size_of(j.at("depth"), "depth") : deepest;
  const bool anchored = j.contains("left_anchored") && j.at("left_anchored").get<bool>();
  return CantorTree::materialized(rule, std::move(nodes), depth, anchored);
}

Json extraction_to_json(const ExtractedTree& x) {
  Json out = tree_to_json(*x.tree, x.depth);
  out["side"] = std::string(side_name(x.side));
  out["strategy"] = x.oracle.descriptor();
  out["config"] = config_to_json(x.config);
  Json ledger = Json::object();
  for (const auto& [p, h] : x.ledger) {
    Json args = Json::array();
    for (const auto& v : h.flat_args()) args.push_back(rat_to_json(v));
    ledger[p] = args;
  }
  out["ledger"] = ledger;
  Json idx = Json::object();
  for (const auto& [p, i] : x.enum_indices) idx[p] = i.get_str();
  out["enum_indices"] = idx;
  return out;
}

ExtractedTree extraction_from_json(const Json& j) {
  const Side side = parse_side(field(j, "side").get<std::string>());
  const GameConfig config = config_from_json(field(j, "config"));
  StrategyOracle oracle = oracle_from_descriptor(field(j, "strategy").get<std::string>(), side, config);
  TreeRef tree = tree_from_json(j);
  std::map<Path, History> ledger;
  for (const auto& [p, args] : field(j, "ledger").items()) ledger.emplace(p, history_from_flat(args));
  std::map<Path, EnumIndex> indices;
  for (const auto& [p, v] : field(j, "enum_indices").items()) {
    if (!v.is_string()) bad("enumeration index must be a decimal string");
    EnumIndex k;
    if (k.set_str(v.get<std::string>(), 10) != 0 || k < 0) bad("bad enumeration index " + v.dump());
    indices.emplace(p, std::move(k));
  }
  const std::size_t depth = size_of(field(j, "depth"), "depth");
  return {std::move(tree), side,  std::move(oracle), config, RatEnumeration(config.a0, config.b0),
          depth,           std::move(ledger), std::move(indices)};
}

Json trace_to_json(const CounterplayTrace& t) {
  Json restarts = Json::array();
  for (const auto& r : t.restarts)
    restarts.push_back({{"round", r.round},
                        {"interval", interval_to_json(r.interval)},
                        {"new_target", rat_to_json(r.new_target)}});
  Json out = {{"committed", play_to_json(t.committed)},
              {"restarts", restarts},
              {"initial_target", rat_to_json(t.initial_target)},
              {"consistent", t.consistent}};
  if (t.bracket)
    out["bracket"] = {{"lo", rat_to_json(t.bracket->lo)}, {"hi", rat_to_json(t.bracket->hi)},
                      {"depth", t.bracket->depth}};
  return out;
}

Json target_to_json(const SetExpr& s, std::size_t tree_depth) { return atom_to_json(s, tree_depth); }

SetExpr target_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) bad("target must be an object with exactly one key");
  const auto& [key, v] = *j.items().begin();
  if (key == "union") {
    if (!v.is_array()) bad("union must be an array");
    SetUnion parts;
    for (const auto& p : v) parts.push_back(target_from_json(p));
    return SetExpr::join(std::move(parts));
  }
  if (key == "interval") {
    const Interval iv = interval_from_json(v);
    return SetExpr::interval(iv.lo, iv.hi);
  }
  if (key == "tree") return SetExpr::tree(tree_from_json(v));
  if (key == "enum") return SetExpr::enumeration(enum_from_json(v));
  if (key == "cover_complement") {
    const Interval host = interval_from_json(field(v, "host"));
    std::vector<OpenInterval> cover;
    if (v.contains("rational_cover")) cover = rational_cover(host, size_of(v.at("rational_cover"), "rational_cover"));
    if (v.contains("cover")) {
      for (const auto& u : v.at("cover")) {
        const Interval iv = interval_from_json(u);
        cover.push_back({iv.lo, iv.hi});
      }
    }
    return SetExpr::cover_complement(host, std::move(cover));
  }
  bad("unknown target atom \"" + key + "\"");
}

Json report_to_json(const TreeReport& r) {
  Json vs = Json::array();
  for (const auto& v : r.violations)
    vs.push_back({{"clause", std::string(clause_name(v.clause))}, {"path", v.path}, {"detail", v.detail}});
  return {{"depth", r.depth}, {"node_count", r.node_count}, {"clean", r.clean()}, {"violations", vs}};
}

Json point_to_json(const Point& p) {
  if (const auto* r = std::get_if<Rat>(&p)) return rat_to_json(*r);
  return {{"code", std::get<Code>(p).str()}};
}

Json witness_to_json(const PerfectWitness& w, std::size_t depth) {
  Json out = {{"note", w.note}};
  if (const auto* iv = std::get_if<Interval>(&w.shape)) {
    out["interval"] = interval_to_json(*iv);
  } else {
    out["tree"] = tree_to_json(*std::get<TreeRef>(w.shape), depth);
  }
  return out;
}

Json countable_to_json(const CountableWitness& w, std::size_t sample) {
  Json parts = Json::array();
  for (const auto& p : w.parts) parts.push_back(enum_to_json(p));
  Json first = Json::array();
  for (std::size_t k = 0; k < sample; ++k) {
    auto v = w.at(k);
    first.push_back(v ? point_to_json(*v) : Json(nullptr));
  }
  return {{"enumeration", w.describe()}, {"parts", parts}, {"first", first}};
}

Json classification_to_json(const Classification& c, std::size_t depth) {
  Json out = {{"verdict", std::string(winner_name(c.winner))}, {"note", c.note}};
  if (c.perfect) out["witness"] = witness_to_json(*c.perfect, depth);
  if (c.countable) out["witness"] = countable_to_json(*c.countable);
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace cantor
