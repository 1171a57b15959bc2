#include "cantor/rational.hpp"

#include <cctype>

#include "cantor/errors.hpp"

namespace cantor {

std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::ParseError: return "ParseError";
    case Errc::EmptyInterval: return "EmptyInterval";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::IllegalMove: return "IllegalMove";
    case Errc::WrongTurn: return "WrongTurn";
    case Errc::NoRounds: return "NoRounds";
    case Errc::GeneratorViolation: return "GeneratorViolation";
    case Errc::DepthExceeded: return "DepthExceeded";
    case Errc::NotAnchored: return "NotAnchored";
    case Errc::CoverTooLarge: return "CoverTooLarge";
    case Errc::ConstructionStuck: return "ConstructionStuck";
    case Errc::OracleContractViolation: return "OracleContractViolation";
    case Errc::PrologueViolation: return "PrologueViolation";
    case Errc::UnsupportedAtom: return "UnsupportedAtom";
    case Errc::ProbeFailed: return "ProbeFailed";
    case Errc::SamplerOutOfRange: return "SamplerOutOfRange";
    case Errc::UnknownDescriptor: return "UnknownDescriptor";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::UnknownSession: return "UnknownSession";
  }
  return "Unknown";
}

Rat::Rat(long n, long d) {
  if (d == 0) throw CantorError(Errc::ParseError, "zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rat::Rat(const BigInt& n, const BigInt& d) {
  if (d == 0) throw CantorError(Errc::ParseError, "zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  q_ /= o.q_;
  return *this;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rat Rat::parse(std::string_view s) {
  const auto fail = [&](const char* why) {
    return CantorError(Errc::ParseError,
                       "cannot parse rational \"" + std::string(s) + "\": " + why);
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) throw fail("expected num/den");
  std::string_view num = s.substr(0, slash);
  const std::string_view den = s.substr(slash + 1);
  bool negative = false;
  if (!num.empty() && num.front() == '-') {
    negative = true;
    num.remove_prefix(1);
  }
  if (!all_digits(num) || !all_digits(den)) throw fail("non-digit characters");
  if ((num.size() > 1 && num.front() == '0') || (den.size() > 1 && den.front() == '0'))
    throw fail("leading zeros");
  BigInt n(std::string(num), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) throw fail("zero denominator");
  if (n == 0 && (negative || d != 1)) throw fail("zero must be written 0/1");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1) throw fail("not in lowest terms");
  if (negative) n = -n;
  return Rat(n, d);
}

std::string Rat::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Ordering rat_cmp(const Rat& x, const Rat& y) {
  const auto c = x <=> y;
  if (c < 0) return Ordering::Less;
  if (c > 0) return Ordering::Greater;
  return Ordering::Equal;
}

Rat midpoint(const Rat& a, const Rat& b) { return (a + b) / Rat(2); }

Rat mediant(const Rat& a, const Rat& b) {
  return Rat(BigInt(a.num() + b.num()), BigInt(a.den() + b.den()));
}

Rat pow2(unsigned k) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
  return Rat(p, BigInt(1));
}

Rat inv_pow2(unsigned k) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, k);
  return Rat(BigInt(1), p);
}

}  // namespace cantor
