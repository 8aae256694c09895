#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace amalgam {

// Labels are the naturals a diagram lives on; 0 is a valid label (ring zero).
using Label = std::uint32_t;

// Element index inside a finite algebra table.  uint16 keeps big tables
// (order up to the nil-2 materialization cap) affordable.
using Elt = std::uint16_t;

enum class Errc {
  MalformedDiagram,
  KindMismatch,
  ConstantMoved,
  BoundTooSmall,
  LabelMissing,
  InsufficientDomain,
  NotAssociative,
  NoUnit,
  NoInverse,
  NotLatin,
  NotSubgroup,
  NotNormal,
  NotInjective,
  NotAbelian,
  NoFiniteWitness,
  WrongVariety,
  EvenPrime,
  UnsupportedClass,
  UnsupportedVariety,
  IncompatiblePredicates,
  PreconditionFailed,
  NoCompletionAtBound,
  BoundExceeded,
  StrategyViolation,
  NotAGroupPresentation,
  TableCapExceeded,
  CorruptReport,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Exact dyadic-friendly rational for the logic metric.  Denominators stay
// powers of two bounded by the cutoff, so int64 never overflows.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  void reduce() {
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }
  friend Rational operator+(Rational a, Rational b) {
    Rational r{a.num * b.den + b.num * a.den, a.den * b.den};
    r.reduce();
    return r;
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.num * b.den <= b.num * a.den;
  }
  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

// FNV-1a, used for pool fingerprints and other stable content hashes.
inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v);

}  // namespace amalgam
