#pragma once

#include <stdexcept>
#include <string>

namespace qbell {

// Base class for every failure the library reports. what() always starts
// with the name of the violated invariant, e.g. "NotPSD: min eigenvalue ...".
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
  explicit NotHermitian(const std::string& m) : Error("NotHermitian: " + m) {}
};
struct TraceNotOne : Error {
  explicit TraceNotOne(const std::string& m) : Error("TraceNotOne: " + m) {}
};
struct NotPSD : Error {
  explicit NotPSD(const std::string& m) : Error("NotPSD: " + m) {}
};
struct NotNormalized : Error {
  explicit NotNormalized(const std::string& m) : Error("NotNormalized: " + m) {}
};
struct NotARotation : Error {
  explicit NotARotation(const std::string& m) : Error("NotARotation: " + m) {}
};
struct NotUnitary : Error {
  explicit NotUnitary(const std::string& m) : Error("NotUnitary: " + m) {}
};
struct BadSign : Error {
  explicit BadSign(const std::string& m) : Error("BadSign: " + m) {}
};
struct BadProbability : Error {
  explicit BadProbability(const std::string& m) : Error("BadProbability: " + m) {}
};
struct BadRank : Error {
  explicit BadRank(const std::string& m) : Error("BadRank: " + m) {}
};
struct BadResolution : Error {
  explicit BadResolution(const std::string& m) : Error("BadResolution: " + m) {}
};
struct OutOfRange : Error {
  explicit OutOfRange(const std::string& m) : Error("OutOfRange: " + m) {}
};
struct NumericalFailure : Error {
  explicit NumericalFailure(const std::string& m) : Error("NumericalFailure: " + m) {}
};
struct ZeroCorrelation : Error {
  explicit ZeroCorrelation(const std::string& m) : Error("ZeroCorrelation: " + m) {}
};
struct DegenerateTheta : Error {
  explicit DegenerateTheta(const std::string& m) : Error("DegenerateTheta: " + m) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("ParseError: " + m) {}
};

}  // namespace qbell
