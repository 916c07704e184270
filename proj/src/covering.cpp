#include <sadic/covering.hpp>

#include <stdexcept>

namespace sadic {

int SpaceSpec::totalDim() const {
  int n = d0;
  for (auto& [p, d] : ultra) n += d;
  return n;
}

Int ballSplitCount(long p, const Rat& c) {
  if (c < 1) throw std::invalid_argument("ballSplitCount: c must be >= 1");
  long e = floorLogP(c, p);
  return powInt(Int(p), static_cast<unsigned long>(e + 1));
}

PowerProduct haarDoublingBound(const SpaceSpec& spec, const Rat& c) {
  if (c < 1) throw std::invalid_argument("haarDoublingBound: c must be >= 1");
  PowerProduct d = PowerProduct::of(c, Rat(spec.d0));
  for (auto& [p, di] : spec.ultra) d.mul(PowerProduct::of(c * Rat(p), Rat(di)));
  return d;
}

Int besicovitchBound(const SpaceSpec& spec) {
  if (spec.purelyUltrametric()) return Int(1);
  // Product bound through the ultrametric factors. For the line: at most
  // two intervals can overlap a point while no center lies in another
  // interval (M = 2), and at most 9 disjoint unit intervals fit in a
  // 9-times-scaled one. Higher d0 uses volume-packing constants.
  Int m = spec.d0 == 1 ? Int(2) : powInt(Int(5), static_cast<unsigned long>(spec.d0));
  Int d8 = powInt(Int(9), static_cast<unsigned long>(spec.d0));
  Int n = m * d8;
  for (auto& [p, di] : spec.ultra) {
    Int split = ballSplitCount(p, Rat(8));
    n *= powInt(split, static_cast<unsigned long>(di));
  }
  return n;
}

CoveringConstants coveringConstants(const SpaceSpec& spec, const Rat& c) {
  CoveringConstants out;
  for (auto& [p, di] : spec.ultra) out.ballSplit.emplace_back(p, ballSplitCount(p, c));
  out.dLambda = haarDoublingBound(spec, c);
  out.nX = besicovitchBound(spec);
  return out;
}

}  // namespace sadic
