#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cantor/rational.hpp"

namespace cantor {

enum class Errc {
  ParseError,
  EmptyInterval,
  CapExceeded,
  IllegalMove,
  WrongTurn,
  NoRounds,
  GeneratorViolation,
  DepthExceeded,
  NotAnchored,
  CoverTooLarge,
  ConstructionStuck,
  OracleContractViolation,
  PrologueViolation,
  UnsupportedAtom,
  ProbeFailed,
  SamplerOutOfRange,
  UnknownDescriptor,
  InvalidConfig,
  UnknownSession,
};

std::string_view errc_name(Errc c);

/// Open bound (lo, hi) a violating value was required to lie in.
struct Bound {
  Rat lo;
  Rat hi;
};

class CantorError : public std::runtime_error {
 public:
  CantorError(Errc code, const std::string& what, std::optional<Bound> bound = std::nullopt)
      : std::runtime_error(what), code_(code), bound_(std::move(bound)) {}

  Errc code() const { return code_; }
  const std::optional<Bound>& bound() const { return bound_; }

 private:
  Errc code_;
  std::optional<Bound> bound_;
};

}  // namespace cantor
