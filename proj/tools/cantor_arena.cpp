// Command-line front end: play, extract, verify, classify, counterplay, serve.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cantor/arena.hpp"

using namespace cantor;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CantorError(Errc::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw CantorError(Errc::InvalidConfig, "cannot write " + out);
  f << j.dump(2) << '\n';
}

Json config_json(const std::string& a0, const std::string& b0) {
  return {{"a0", a0}, {"b0", b0}};
}

// Interactive loop on stdin; same contract as the service.
int play(const Json& request) {
  Arena arena;
  Json view = arena.create_session(request);
  const std::string id = view["id"];
  std::cout << "session " << id << ": you are player " << view["human_side"].get<std::string>()
            << " against " << view["engine"].get<std::string>() << '\n';
  for (;;) {
    const auto& play = view["play"];
    if (!play["pending_a"].is_null()) std::cout << "engine played a = " << play["pending_a"].get<std::string>() << '\n';
    std::cout << "round " << play["rounds"].size() + 1 << ", move in (" << view["legal_bounds"]["lo"].get<std::string>()
              << ", " << view["legal_bounds"]["hi"].get<std::string>() << ")> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line) || line == "quit" || line == "q") break;
    if (line.empty()) continue;
    try {
      const Json r = arena.post_move(id, {{"value", line}});
      std::cout << "engine replied " << r["engine_move"].get<std::string>() << '\n';
      view = r["session"];
    } catch (const CantorError& e) {
      std::cout << error_json(e).dump() << '\n';
    }
  }
  std::cout << arena.get_session(id)["play"].dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cantor game arena: exact play, strategy extraction, target classification"};
  app.require_subcommand(1);

  std::string a0 = "0/1", b0 = "1/1";
  const auto add_config = [&](CLI::App* sub) {
    sub->add_option("--a0", a0, "left end of the game interval")->capture_default_str();
    sub->add_option("--b0", b0, "right end of the game interval")->capture_default_str();
  };

  auto* play_cmd = app.add_subcommand("play", "play against an engine strategy on the terminal");
  std::string human = "A", engine = "countable_killer_B", target = "middle-thirds";
  play_cmd->add_option("--side", human, "your side (A or B)")->capture_default_str();
  play_cmd->add_option("--engine", engine, "engine strategy descriptor")->capture_default_str();
  play_cmd->add_option("--target", target, "middle-thirds | rationals | irrationals | target file")
      ->capture_default_str();
  add_config(play_cmd);

  auto* extract_cmd = app.add_subcommand("extract", "build the Cantor set inside a strategy's limit set");
  std::string side = "A", strategy = "midpoint", out;
  std::size_t depth = 6;
  extract_cmd->add_option("--side", side, "A or B")->capture_default_str();
  extract_cmd->add_option("--strategy", strategy, "strategy descriptor")->capture_default_str();
  extract_cmd->add_option("--depth", depth, "tree depth")->capture_default_str();
  extract_cmd->add_option("--out", out, "output file (stdout by default)");
  add_config(extract_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "validate a tree or extraction file; exit 1 on any violation");
  std::string input;
  std::size_t samples = 20;
  verify_cmd->add_option("file", input, "tree or extraction JSON")->required();
  verify_cmd->add_option("--samples", samples, "random codes to replay")->capture_default_str();

  auto* classify_cmd = app.add_subcommand("classify", "who wins for a target set");
  std::string witness_out;
  std::size_t witness_depth = 5;
  classify_cmd->add_option("file", input, "target JSON file")->required();
  classify_cmd->add_option("--depth", witness_depth, "witness tree depth")->capture_default_str();
  classify_cmd->add_option("--witness-out", witness_out, "write the full verdict and witness here");

  auto* counter_cmd = app.add_subcommand("counterplay", "A's target-chasing schedule against a B strategy");
  std::string point;
  std::size_t rounds = 20;
  counter_cmd->add_option("--strategy", strategy, "B strategy descriptor")->required();
  counter_cmd->add_option("--target-point", point, "target point p/q")->required();
  counter_cmd->add_option("--depth", rounds, "rounds")->capture_default_str();
  counter_cmd->add_option("--out", out, "output file (stdout by default)");
  add_config(counter_cmd);

  auto* serve_cmd = app.add_subcommand("serve", "JSON service over HTTP");
  std::string host = "127.0.0.1", log;
  int port = 8080;
  serve_cmd->add_option("--host", host)->capture_default_str();
  serve_cmd->add_option("--port", port)->capture_default_str();
  serve_cmd->add_option("--log", log, "append-only session log (replayed at start)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*play_cmd) {
      Json t = target;
      if (target != "middle-thirds" && target != "rationals" && target != "irrationals") t = parse_json(slurp(target));
      return play({{"config", config_json(a0, b0)}, {"human_side", human}, {"engine", engine}, {"target", t}});
    }
    if (*extract_cmd) {
      const Json x = extract_op({{"config", config_json(a0, b0)}, {"side", side}, {"strategy", strategy}, {"depth", depth}});
      emit(x, out);
      const bool clean = x["report"]["clean"].get<bool>();
      if (!out.empty()) std::cerr << (clean ? "clean" : "VIOLATIONS") << ": " << x["report"]["node_count"] << " nodes\n";
      return clean ? 0 : 1;
    }
    if (*verify_cmd) {
      const Json r = verify_op(parse_json(slurp(input)), samples);
      std::cout << r.dump(2) << '\n';
      return r["clean"].get<bool>() ? 0 : 1;
    }
    if (*classify_cmd) {
      const Json r = classify_op({{"target", parse_json(slurp(input))}, {"depth", witness_depth}});
      std::cout << r["verdict"].get<std::string>() << '\n';
      if (r.contains("witness") && r["witness"].contains("enumeration"))
        std::cout << r["witness"]["enumeration"].get<std::string>() << '\n';
      if (!witness_out.empty()) emit(r, witness_out);
      return 0;
    }
    if (*counter_cmd) {
      emit(counterplay_op({{"config", config_json(a0, b0)},
                           {"strategy", strategy},
                           {"target_point", point},
                           {"depth", rounds}}),
           out);
      return 0;
    }
    if (*serve_cmd) {
      Arena arena(log.empty() ? std::nullopt : std::optional<std::string>(log));
      HttpService service(arena);
      std::cerr << "serving on " << host << ":" << port << '\n';
      service.run(host, port);
      return 0;
    }
  } catch (const CantorError& e) {
    std::cerr << error_json(e).dump() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << error_json(CantorError(Errc::ParseError, e.what())).dump() << '\n';
    return 2;
  }
  return 0;
}
