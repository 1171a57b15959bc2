#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cantor/enumeration.hpp"
#include "cantor/rational.hpp"

namespace cantor {

/// Deterministic injective index -> Rat generator: either the Stern–Brocot
/// enumeration of an interval, or an explicit finite list.
class CountableEnum {
 public:
  explicit CountableEnum(RatEnumeration e) : src_(std::move(e)) {}
  /// Rejects duplicates (the generator must be injective).
  explicit CountableEnum(std::vector<Rat> values);

  /// Nothing past the end of a finite list.
  std::optional<Rat> at(std::uint64_t k) const;

  bool is_finite() const { return std::holds_alternative<std::vector<Rat>>(src_); }
  std::optional<std::uint64_t> size() const;

  Rat lo() const;
  Rat hi() const;

  const RatEnumeration* stern_brocot() const { return std::get_if<RatEnumeration>(&src_); }
  const std::vector<Rat>* list() const { return std::get_if<std::vector<Rat>>(&src_); }

  std::string descriptor() const;

 private:
  std::variant<RatEnumeration, std::vector<Rat>> src_;
};

}  // namespace cantor
