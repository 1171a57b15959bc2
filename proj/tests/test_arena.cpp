#include <doctest.h>
#include <httplib.h>

#include <cstdio>
#include <filesystem>
#include <thread>

#include "cantor/arena.hpp"

using namespace cantor;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const CantorError& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::ParseError;
}

}  // namespace

TEST_CASE("human A against the killer") {
  Arena arena;
  const Json v = arena.create_session(
      {{"human_side", "A"}, {"engine", "countable_killer_B"}, {"target", "rationals"}});
  const std::string id = v["id"];
  CHECK(id == "s1");
  CHECK(v["to_move"] == "A");
  CHECK(v["legal_bounds"]["lo"] == "0/1");
  CHECK(v["bracket"].is_null());

  const Json r = arena.post_move(id, {{"value", "1/3"}});
  CHECK(r["human_move"] == "1/3");
  const Rat b1 = rat_from_json(r["engine_move"]);
  CHECK((Rat(1, 3) < b1 && b1 < Rat(1)));
  CHECK(r["session"]["play"]["rounds"].size() == 1);
  CHECK(r["session"]["bracket"]["depth"] == 1);
  CHECK(arena.get_session(id) == r["session"]);
}

TEST_CASE("human B sees the engine's first move") {
  Arena arena;
  const Json v = arena.create_session({{"human_side", "B"}, {"engine", "midpoint_A"}});
  CHECK(v["play"]["pending_a"] == "1/2");
  CHECK(v["legal_bounds"]["lo"] == "1/2");
  CHECK(v["legal_bounds"]["hi"] == "1/1");
  const Json r = arena.post_move(v["id"], {{"value", "3/4"}});
  CHECK(r["engine_move"] == "5/8");
  CHECK(r["session"]["play"]["pending_a"] == "5/8");
}

TEST_CASE("errors leave the session untouched") {
  Arena arena;
  const std::string id = arena.create_session({{"human_side", "A"}, {"engine", "midpoint_B"}})["id"];
  const Json before = arena.get_session(id);
  try {
    arena.post_move(id, {{"value", "3/2"}});
    FAIL("accepted an illegal move");
  } catch (const CantorError& e) {
    CHECK(e.code() == Errc::IllegalMove);
    const Json j = error_json(e);
    CHECK(j["error"] == "IllegalMove");
    CHECK(j["bound"]["lo"] == "0/1");
    CHECK(j["bound"]["hi"] == "1/1");
    CHECK(http_status(e.code()) == 400);
  }
  CHECK(code_of([&] { arena.post_move(id, {{"value", "0.5"}}); }) == Errc::ParseError);
  CHECK(code_of([&] { arena.post_move("s99", {{"value", "1/2"}}); }) == Errc::UnknownSession);
  CHECK(arena.get_session(id) == before);

  CHECK(code_of([&] { arena.create_session({{"human_side", "A"}, {"engine", "midpoint_A"}}); }) ==
        Errc::UnknownDescriptor);
  CHECK(code_of([&] { arena.create_session({{"human_side", "C"}, {"engine", "midpoint_B"}}); }) ==
        Errc::ParseError);
  CHECK(code_of([&] {
          arena.create_session({{"human_side", "A"}, {"engine", "midpoint_B"}, {"target", "everything"}});
        }) == Errc::UnknownDescriptor);
  CHECK(code_of([&] {
          arena.create_session({{"human_side", "A"},
                                {"engine", "midpoint_B"},
                                {"target", {{"interval", {"1/2", "2/1"}}}}});
        }) == Errc::InvalidConfig);
  CHECK(arena.session_count() == 1);
  CHECK(http_status(Errc::UnknownSession) == 404);
  CHECK(http_status(Errc::WrongTurn) == 409);
  CHECK(http_status(Errc::OracleContractViolation) == 500);
}

TEST_CASE("sessions are independent under concurrency") {
  Arena arena;
  std::vector<std::string> ids;
  for (int i = 0; i < 8; ++i)
    ids.push_back(arena.create_session({{"human_side", "A"}, {"engine", "midpoint_B"}})["id"]);
  std::vector<std::thread> threads;
  for (const auto& id : ids)
    threads.emplace_back([&arena, id] {
      Json v = arena.get_session(id);
      for (int k = 0; k < 10; ++k) {
        const Bound b{rat_from_json(v["legal_bounds"]["lo"]), rat_from_json(v["legal_bounds"]["hi"])};
        v = arena.post_move(id, {{"value", rat_to_json(midpoint(b.lo, b.hi))}})["session"];
      }
    });
  for (auto& t : threads) t.join();
  for (const auto& id : ids) CHECK(arena.get_session(id)["play"]["rounds"].size() == 10);
}

TEST_CASE("the session log replays") {
  const auto path = std::filesystem::temp_directory_path() / "cantor_arena_test.log";
  std::filesystem::remove(path);
  Json last;
  {
    Arena arena(path.string());
    const std::string id = arena.create_session({{"human_side", "A"}, {"engine", "squeeze_B"}})["id"];
    arena.post_move(id, {{"value", "1/2"}});
    CHECK_THROWS(arena.post_move(id, {{"value", "1/1"}}));
    last = arena.post_move(id, {{"value", "9/16"}})["session"];
  }
  Arena again(path.string());
  CHECK(again.session_count() == 1);
  CHECK(again.get_session("s1") == last);
  CHECK(again.create_session({{"human_side", "B"}, {"engine", "midpoint_A"}})["id"] == "s2");
  std::filesystem::remove(path);
}

TEST_CASE("target overlay") {
  Arena arena;
  const std::string id = arena.create_session({{"human_side", "A"}, {"engine", "midpoint_B"}})["id"];
  const Json t = arena.target_tree(id, 2);
  REQUIRE(t["overlays"].size() == 1);
  CHECK(t["overlays"][0]["intervals"].size() == 4);
  CHECK(t["overlays"][0]["intervals"][0] == Json::array({"1/8", "5/24"}));
}

TEST_CASE("operations") {
  const Json x = extract_op({{"side", "A"}, {"strategy", "midpoint"}, {"depth", 3}});
  CHECK(x["report"]["clean"] == true);
  CHECK(x["report"]["node_count"] == 14);
  CHECK(verify_op(x)["clean"] == true);
  Json bad = x;
  bad["nodes"]["10"][0] = "1/1000";
  CHECK(verify_op(bad)["clean"] == false);

  CHECK(classify_op({{"target", "middle-thirds"}})["verdict"] == "AWins");
  CHECK(classify_op({{"target", "rationals"}})["verdict"] == "BWins");
  CHECK(classify_op({{"target", "irrationals"}})["verdict"] == "AWins");

  const Json c = counterplay_op({{"strategy", "dodger_B:1/3"}, {"target_point", "1/3"}, {"depth", 8}});
  CHECK(c["consistent"] == true);
  CHECK(c["committed"]["rounds"].size() == 8);
  CHECK(code_of([&] { counterplay_op({{"strategy", "midpoint_A"}, {"target_point", "1/3"}}); }) ==
        Errc::UnknownDescriptor);
}

TEST_CASE("http service") {
  Arena arena;
  HttpService service(arena);
  const int port = service.start("127.0.0.1", 0);
  REQUIRE(port > 0);
  httplib::Client cli("127.0.0.1", port);

  auto res = cli.Post("/session", R"({"human_side":"A","engine":"midpoint_B"})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  const std::string id = Json::parse(res->body)["id"];

  res = cli.Post("/session/" + id + "/move", R"({"value":"1/2"})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(Json::parse(res->body)["engine_move"] == "3/4");

  res = cli.Post("/session/" + id + "/move", R"({"value":"4/5"})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
  const Json err = Json::parse(res->body);
  CHECK(err["error"] == "IllegalMove");
  CHECK(err["bound"]["lo"] == "1/2");
  CHECK(err["bound"]["hi"] == "3/4");

  res = cli.Get("/session/nope");
  REQUIRE(res);
  CHECK(res->status == 404);
  res = cli.Post("/session", "{", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
  res = cli.Get("/session/" + id + "/target-tree?depth=3");
  REQUIRE(res);
  CHECK(Json::parse(res->body)["overlays"][0]["intervals"].size() == 8);
  res = cli.Get("/session/" + id + "/target-tree?depth=40");
  REQUIRE(res);
  CHECK(res->status == 400);
  res = cli.Post("/classify", R"({"target":{"enum":{"scheme":"stern-brocot","lo":"0/1","hi":"1/1"}}})",
                 "application/json");
  REQUIRE(res);
  CHECK(Json::parse(res->body)["verdict"] == "BWins");
  service.stop();
}
