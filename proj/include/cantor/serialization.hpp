#pragma once

// JSON wire formats. Every number is an exact "p/q" string; object keys are
// emitted in sorted order, so equal values always serialize to equal bytes.
//
//   play    {"config":{"a0","b0"},"rounds":[["a1","b1"],...],"pending_a":null|"p/q"}
//   tree    {"root":["c","d"],"e_rule":"halving","e_base":"w","depth":N,
//            "nodes":{"":["c","d"],"0":[...],...},"generator"?:"name"}
//   extraction  tree fields + {"side","strategy","config","ledger":{path:[flat args]},
//                              "enum_indices":{path:"decimal"}}
//   trace   {"committed":play,"restarts":[{"round","interval","new_target"}],"consistent"}
//   target  {"union":[atom,...]} or a single atom, where atom is one of
//           {"interval":["lo","hi"]}  {"tree":tree}
//           {"enum":{"scheme":"stern-brocot","lo","hi"}}  {"enum":{"scheme":"list","values":[...]}}
//           {"cover_complement":{"host":["lo","hi"],"cover":[["l","h"],...]}}
//           {"cover_complement":{"host":["lo","hi"],"rational_cover":n}}

#include <cstddef>
#include <string>

#include <json.hpp>

#include "cantor/extraction.hpp"
#include "cantor/strategies.hpp"
#include "cantor/target_sets.hpp"

namespace cantor {

using Json = nlohmann::json;

/// Throws ParseError on anything that is not a normalized "p/q" string.
Rat rat_from_json(const Json& j);
Json rat_to_json(const Rat& r);

Json interval_to_json(const Interval& iv);
Interval interval_from_json(const Json& j);

Json config_to_json(const GameConfig& c);
GameConfig config_from_json(const Json& j);

Json play_to_json(const History& h);
History play_from_json(const Json& j);

/// a0, b0, a1, b1, ..., [pending] back into a history.
History history_from_flat(const Json& args);

Json tree_to_json(const CantorTree& t, std::size_t depth);
/// Generated middle-thirds trees are rebuilt from their generator; everything
/// else comes back materialized at the stored depth.
TreeRef tree_from_json(const Json& j);

Json extraction_to_json(const ExtractedTree& x);
/// Rebuilds the oracle from its descriptor; the enumeration is the standard
/// one on [a0, b0].
ExtractedTree extraction_from_json(const Json& j);

Json trace_to_json(const CounterplayTrace& t);

Json target_to_json(const SetExpr& s, std::size_t tree_depth = 6);
SetExpr target_from_json(const Json& j);

Json report_to_json(const TreeReport& r);
Json point_to_json(const Point& p);
Json witness_to_json(const PerfectWitness& w, std::size_t depth);
Json countable_to_json(const CountableWitness& w, std::size_t sample = 16);
Json classification_to_json(const Classification& c, std::size_t depth);

/// Parses text, turning JSON syntax errors into ParseError.
Json parse_json(const std::string& text);

}  // namespace cantor
