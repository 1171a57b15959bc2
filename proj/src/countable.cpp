#include "cantor/countable.hpp"

#include <algorithm>
#include <set>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

std::vector<Rat> checked(std::vector<Rat> values) {
  if (values.empty()) throw CantorError(Errc::InvalidConfig, "finite enumeration needs a value");
  std::set<Rat> seen;
  for (const auto& v : values)
    if (!seen.insert(v).second)
      throw CantorError(Errc::InvalidConfig, "enumeration repeats " + v.str());
  return values;
}

}  // namespace

CountableEnum::CountableEnum(std::vector<Rat> values) : src_(checked(std::move(values))) {}

std::optional<Rat> CountableEnum::at(std::uint64_t k) const {
  if (const auto* e = stern_brocot()) return e->at(k);
  const auto& xs = *list();
  if (k >= xs.size()) return std::nullopt;
  return xs[k];
}

std::optional<std::uint64_t> CountableEnum::size() const {
  if (const auto* xs = list()) return xs->size();
  return std::nullopt;
}

Rat CountableEnum::lo() const {
  if (const auto* e = stern_brocot()) return e->lo();
  return *std::min_element(list()->begin(), list()->end());
}

Rat CountableEnum::hi() const {
  if (const auto* e = stern_brocot()) return e->hi();
  return *std::max_element(list()->begin(), list()->end());
}

std::string CountableEnum::descriptor() const {
  if (const auto* e = stern_brocot())
    return "stern-brocot:" + e->lo().str() + ":" + e->hi().str();
  return "list:" + std::to_string(list()->size());
}

}  // namespace cantor
