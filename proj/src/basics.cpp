#include "amalgam/basics.hpp"

namespace amalgam {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::MalformedDiagram: return "MalformedDiagram";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::ConstantMoved: return "ConstantMoved";
    case Errc::BoundTooSmall: return "BoundTooSmall";
    case Errc::LabelMissing: return "LabelMissing";
    case Errc::InsufficientDomain: return "InsufficientDomain";
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::NoUnit: return "NoUnit";
    case Errc::NoInverse: return "NoInverse";
    case Errc::NotLatin: return "NotLatin";
    case Errc::NotSubgroup: return "NotSubgroup";
    case Errc::NotNormal: return "NotNormal";
    case Errc::NotInjective: return "NotInjective";
    case Errc::NotAbelian: return "NotAbelian";
    case Errc::NoFiniteWitness: return "NoFiniteWitness";
    case Errc::WrongVariety: return "WrongVariety";
    case Errc::EvenPrime: return "EvenPrime";
    case Errc::UnsupportedClass: return "UnsupportedClass";
    case Errc::UnsupportedVariety: return "UnsupportedVariety";
    case Errc::IncompatiblePredicates: return "IncompatiblePredicates";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::NoCompletionAtBound: return "NoCompletionAtBound";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::StrategyViolation: return "StrategyViolation";
    case Errc::NotAGroupPresentation: return "NotAGroupPresentation";
    case Errc::TableCapExceeded: return "TableCapExceeded";
    case Errc::CorruptReport: return "CorruptReport";
    case Errc::ParseError: return "ParseError";
  }
  return "Error";
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

}  // namespace amalgam
