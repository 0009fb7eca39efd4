#include "chaoslab/symbolics.hpp"

#include <cmath>

#include "chaoslab/errors.hpp"

namespace chaoslab {

SymbolSequence::SymbolSequence(std::string window, Extension ext, long origin)
    : window_(std::move(window)), ext_(ext), origin_(origin) {
  if (window_.empty()) throw PreconditionError("SymbolSequence: empty window");
}

char SymbolSequence::at(long k) const {
  const long len = static_cast<long>(window_.size());
  long i = k + origin_;
  if (ext_ == Extension::Periodic) {
    i %= len;
    if (i < 0) i += len;
    return window_[static_cast<std::size_t>(i)];
  }
  if (i < 0) return window_.front();
  if (i >= len) return window_.back();
  return window_[static_cast<std::size_t>(i)];
}

SymbolSequence SymbolSequence::shifted(long times) const {
  return SymbolSequence(window_, ext_, origin_ + times);
}

double cylinder_distance(const SymbolSequence& a, const SymbolSequence& b, long horizon) {
  for (long j = 0; j < horizon; ++j)
    if (a.at(j) != b.at(j) || a.at(-j) != b.at(-j)) return std::ldexp(1.0, static_cast<int>(-j));
  return 0.0;
}

}  // namespace chaoslab
