#include "wsg/numeric.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "wsg/error.hpp"

namespace wsg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadType: return "BadType";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NotASemigroup: return "NotASemigroup";
    case ErrorKind::InternalConsistency: return "InternalConsistency";
    case ErrorKind::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case ErrorKind::SolverIncomplete: return "SolverIncomplete";
    case ErrorKind::NodeCountMismatch: return "NodeCountMismatch";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NoSeparatingDirection: return "NoSeparatingDirection";
    case ErrorKind::NewtonDiverged: return "NewtonDiverged";
    case ErrorKind::DeletedNodePersists: return "DeletedNodePersists";
    case ErrorKind::SemigroupMismatch: return "SemigroupMismatch";
    case ErrorKind::IncompatibleSemigroup: return "IncompatibleSemigroup";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398119521));
}

unsigned current_precision_bits() {
  return static_cast<unsigned>(std::floor(Real::default_precision() / 0.30102999566398119521));
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

Real to_real(const Rational& q) { return Real(q.get_mpq_t()); }
Real to_real(const Integer& z) { return Real(z.get_mpz_t()); }
double to_double(const Rational& q) { return q.get_d(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational { throw Error(ErrorKind::ParseError, "not a rational: '" + s + "'"); };
  if (s.empty()) return fail();
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) return fail();
    if (q.get_den() == 0) return fail();
    q.canonicalize();
    return q;
  }
  // Decimal with optional exponent, converted exactly.
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  bool any = false;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      any = true;
      if (seen_dot) ++frac_digits;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any) return fail();
  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') return fail();
    ++pos;
    try {
      std::size_t used = 0;
      exponent = std::stol(s.substr(pos), &used);
      if (pos + used != s.size()) return fail();
    } catch (const std::exception&) {
      return fail();
    }
  }
  Integer mant(digits, 10);
  long shift = exponent - frac_digits;
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift >= 0 ? Rational(mant * ten_pow) : Rational(mant, ten_pow);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string format_real(const Real& x, int significant_digits) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(significant_digits - 1) << x;
  return os.str();
}

std::string format_complex(const ComplexReal& z, int significant_digits) {
  std::string out = format_real(z.re, significant_digits);
  if (z.im != 0) {
    out += z.im < 0 ? " - " : " + ";
    out += format_real(Real(z.im < 0 ? Real(-z.im) : z.im), significant_digits) + "i";
  }
  return out;
}

}  // namespace wsg
