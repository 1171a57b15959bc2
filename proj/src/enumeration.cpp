#include "cantor/enumeration.hpp"

#include <string>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

// Current position in the tree: the node is the mediant of the bounds
// left = ln/ld and right = rn/rd.
struct SbCursor {
  BigInt ln{0}, ld{1}, rn{1}, rd{1};

  Rat node() const { return Rat(BigInt(ln + rn), BigInt(ld + rd)); }

  void go_right(const BigInt& k) {
    ln += k * rn;
    ld += k * rd;
  }
  void go_left(const BigInt& k) {
    rn += k * ln;
    rd += k * ld;
  }
};

// Largest j >= 1 with (ln + j rn)/(ld + j rd) <= t, given the first such
// node already satisfies it and t < rn/rd.
BigInt max_right_steps(const SbCursor& c, const Rat& t) {
  const Rat numer = t * Rat(c.ld, BigInt(1)) - Rat(c.ln, BigInt(1));
  const Rat denom = Rat(c.rn, BigInt(1)) - t * Rat(c.rd, BigInt(1));
  const Rat q = numer / denom;
  BigInt j;
  mpz_fdiv_q(j.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
  return j;
}

// Largest j >= 1 with (j ln + rn)/(j ld + rd) >= t, given t > ln/ld.
BigInt max_left_steps(const SbCursor& c, const Rat& t) {
  const Rat numer = Rat(c.rn, BigInt(1)) - t * Rat(c.rd, BigInt(1));
  const Rat denom = t * Rat(c.ld, BigInt(1)) - Rat(c.ln, BigInt(1));
  const Rat q = numer / denom;
  BigInt j;
  mpz_fdiv_q(j.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
  return j;
}

std::uint64_t to_u64(const BigInt& v) {
  if (!v.fits_ulong_p())
    throw CantorError(Errc::CapExceeded, "Stern-Brocot run length exceeds 64 bits");
  return v.get_ui();
}

}  // namespace

std::uint64_t SbPath::depth() const {
  std::uint64_t d = 0;
  for (const auto& [_, n] : runs) d += n;
  return d;
}

void SbPath::push(bool right, std::uint64_t count) {
  if (count == 0) return;
  if (!runs.empty() && runs.back().first == right) {
    runs.back().second += count;
  } else {
    runs.emplace_back(right, count);
  }
}

std::pair<Rat, SbPath> sb_simplest_between(const Rat& x, const Rat& y) {
  SbCursor c;
  SbPath path;
  for (;;) {
    const Rat m = c.node();
    if (x < m && m < y) return {m, path};
    if (m <= x) {
      const BigInt j = max_right_steps(c, x);
      c.go_right(j);
      path.push(true, to_u64(j));
    } else {
      const BigInt j = max_left_steps(c, y);
      c.go_left(j);
      path.push(false, to_u64(j));
    }
  }
}

SbPath sb_path_to(const Rat& t) {
  SbCursor c;
  SbPath path;
  for (;;) {
    const Rat m = c.node();
    if (m == t) return path;
    if (m < t) {
      BigInt j = max_right_steps(c, t);
      // Node j is the last one at or below t; stop on it if it is t.
      SbCursor probe = c;
      probe.go_right(j - 1);
      if (probe.node() == t) {
        path.push(true, to_u64(j - 1));
        return path;
      }
      c.go_right(j);
      path.push(true, to_u64(j));
    } else {
      BigInt j = max_left_steps(c, t);
      SbCursor probe = c;
      probe.go_left(j - 1);
      if (probe.node() == t) {
        path.push(false, to_u64(j - 1));
        return path;
      }
      c.go_left(j);
      path.push(false, to_u64(j));
    }
  }
}

Rat sb_node(const SbPath& path) {
  SbCursor c;
  for (const auto& [right, n] : path.runs) {
    const BigInt k(static_cast<unsigned long>(n));
    if (right) {
      c.go_right(k);
    } else {
      c.go_left(k);
    }
  }
  return c.node();
}

EnumIndex sb_index_of_path(const SbPath& path) {
  // The index has depth + 1 bits; past this it is not worth materializing.
  constexpr std::uint64_t max_bits = std::uint64_t{1} << 26;
  if (path.depth() >= max_bits)
    throw CantorError(Errc::CapExceeded, "enumeration index would need " + std::to_string(path.depth() + 1) +
                                             " bits");
  BigInt offset = 0;
  for (const auto& [right, n] : path.runs) {
    offset <<= static_cast<mp_bitcnt_t>(n);
    if (right) {
      BigInt ones = 1;
      ones <<= static_cast<mp_bitcnt_t>(n);
      offset += ones - 1;
    }
  }
  BigInt level = 1;
  level <<= static_cast<mp_bitcnt_t>(path.depth());
  return level + 1 + offset;
}

RatEnumeration::RatEnumeration(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(lo_ < hi_))
    throw CantorError(Errc::InvalidConfig, "enumeration needs lo < hi");
}

Rat RatEnumeration::at(const EnumIndex& k) const {
  if (k < 0) throw CantorError(Errc::DepthExceeded, "negative enumeration index");
  if (k == 0) return lo_;
  if (k == 1) return hi_;
  const BigInt j = k - 1;
  const std::size_t level = mpz_sizeinbase(j.get_mpz_t(), 2) - 1;
  // Offset bits below the leading one, most significant first.
  SbPath path;
  for (std::size_t bit = level; bit-- > 0;) {
    path.push(mpz_tstbit(j.get_mpz_t(), bit) != 0, 1);
  }
  return from_unit(sb_node(path));
}

EnumIndex RatEnumeration::index_of(const Rat& r) const {
  if (r < lo_ || r > hi_)
    throw CantorError(Errc::EmptyInterval, "value " + r.str() + " outside enumeration range");
  if (r == lo_) return 0;
  if (r == hi_) return 1;
  return sb_index_of_path(sb_path_to(to_unit(r)));
}

FirstIn RatEnumeration::first_in(const Rat& x, const Rat& y,
                                 const std::optional<EnumIndex>& index_cap) const {
  if (!(x < y))
    throw CantorError(Errc::EmptyInterval, "empty interval (" + x.str() + ", " + y.str() + ")",
                      Bound{x, y});
  if (x < lo_ || y > hi_)
    throw CantorError(Errc::EmptyInterval,
                      "interval (" + x.str() + ", " + y.str() + ") leaves the enumeration range");
  // lo and hi (indices 0 and 1) never lie strictly inside (x, y).
  auto [unit_value, path] = sb_simplest_between(to_unit(x), to_unit(y));
  EnumIndex index = sb_index_of_path(path);
  if (index_cap && index > *index_cap)
    throw CantorError(Errc::CapExceeded, "first element of (" + x.str() + ", " + y.str() +
                                             ") has index above the cap");
  return {from_unit(unit_value), std::move(index)};
}

}  // namespace cantor
