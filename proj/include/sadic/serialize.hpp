#pragma once

// JSON wire formats: scalars and vectors keyed by place with rational
// strings "num/den", modules and lattices as rational matrices keyed by
// place, measures as cylinder-mass tables.

#include <sadic/dioph.hpp>
#include <sadic/lattice.hpp>
#include <sadic/measure.hpp>
#include <sadic/sadic.hpp>

#include <json.hpp>

namespace sadic {

using Json = nlohmann::json;

Json toJson(const Rat& q);
Rat ratFromJson(const Json& j);

Json toJson(const RatVec& v);
RatVec ratVecFromJson(const Json& j);

Json toJson(const RatMat& m);
RatMat ratMatFromJson(const Json& j);

Json toJson(const SAdicScalar& x);
SAdicScalar sadicScalarFromJson(const Json& j);

Json toJson(const SAdicVec& x);
SAdicVec sadicVecFromJson(const Json& j);

Json toJson(const SModule& d);
SModule smoduleFromJson(const Json& j);

Json toJson(const SLattice& l);
SLattice slatticeFromJson(const Json& j);

Json toJson(const YVector& y);
YVector yvectorFromJson(const Json& j);

Json witnessJson(const ApproxWitness& w);

/// Cylinder-mass table of a measure at a level: (place, level, residue ->
/// mass) with rational masses.
Json measureTableJson(const CylinderMeasure& mu, int level);

/// FNV-1a of the canonical config dump; embedded in result headers.
std::string configHash(const Json& config);

}  // namespace sadic
