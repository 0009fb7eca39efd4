#pragma once

// Finite windows onto doubly infinite symbol sequences, the shift
// automorphism, and the cylinder metric of the product topology.

#include <set>
#include <string>

namespace chaoslab {

enum class Extension {
  Constant,  // a_k = first symbol left of the window, last symbol right of it
  Periodic,  // the window repeats
};

class SymbolSequence {
 public:
  /// `origin` is the window index holding a_0. Throws PreconditionError for
  /// an empty window.
  SymbolSequence(std::string window, Extension ext, long origin = 0);

  char at(long k) const;
  const std::string& window() const { return window_; }
  Extension extension() const { return ext_; }
  long origin() const { return origin_; }
  std::set<char> alphabet() const { return {window_.begin(), window_.end()}; }

  /// (shift a)_k = a_{k+1}.
  SymbolSequence shifted(long times = 1) const;

 private:
  std::string window_;
  Extension ext_;
  long origin_;
};

/// 2^{-j} with j the largest integer such that a_k = b_k for all |k| < j.
/// Sequences that agree on |k| < horizon are reported at distance 0.
double cylinder_distance(const SymbolSequence& a, const SymbolSequence& b, long horizon = 1024);

}  // namespace chaoslab
