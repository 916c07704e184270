#include <sadic/serialize.hpp>

namespace sadic {

Json toJson(const Rat& q) { return formatRat(q); }

Rat ratFromJson(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  return parseRat(j.get<std::string>());
}

Json toJson(const RatVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(toJson(v[i]));
  return out;
}

RatVec ratVecFromJson(const Json& j) {
  RatVec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = ratFromJson(j[i]);
  return v;
}

Json toJson(const RatMat& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(toJson(m(i, k)));
    out.push_back(row);
  }
  return out;
}

RatMat ratMatFromJson(const Json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
  RatMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = ratFromJson(j[i][k]);
  return m;
}

namespace {
template <typename T, typename Fn>
Json perPlaceJson(const PlaceSet& S, const std::vector<T>& comps, Fn&& f) {
  Json out = Json::object();
  auto ps = S.places();
  for (size_t i = 0; i < ps.size(); ++i) out[toString(ps[i])] = f(comps[i]);
  return out;
}
}  // namespace

Json toJson(const SAdicScalar& x) {
  Json out;
  out["places"] = x.S.toString();
  out["components"] = perPlaceJson(x.S, x.comp, [](const Rat& q) { return toJson(q); });
  return out;
}

SAdicScalar sadicScalarFromJson(const Json& j) {
  PlaceSet S = PlaceSet::parse(j.at("places").get<std::string>());
  SAdicScalar x{S, {}};
  for (auto& v : S.places()) x.comp.push_back(ratFromJson(j.at("components").at(toString(v))));
  return x;
}

Json toJson(const SAdicVec& x) {
  Json out;
  out["places"] = x.S.toString();
  out["components"] = perPlaceJson(x.S, x.comp, [](const RatVec& v) { return toJson(v); });
  return out;
}

SAdicVec sadicVecFromJson(const Json& j) {
  PlaceSet S = PlaceSet::parse(j.at("places").get<std::string>());
  SAdicVec x{S, 0, {}};
  for (auto& v : S.places()) x.comp.push_back(ratVecFromJson(j.at("components").at(toString(v))));
  x.m = static_cast<int>(x.comp.at(0).size());
  return x;
}

Json toJson(const SModule& d) {
  Json out;
  out["places"] = d.placeSet().toString();
  std::vector<RatMat> mats;
  for (auto& v : d.placeSet().places()) mats.push_back(d.generators(v));
  out["generators"] = perPlaceJson(d.placeSet(), mats, [](const RatMat& m) { return toJson(m); });
  return out;
}

SModule smoduleFromJson(const Json& j) {
  PlaceSet S = PlaceSet::parse(j.at("places").get<std::string>());
  std::vector<RatMat> mats;
  for (auto& v : S.places()) mats.push_back(ratMatFromJson(j.at("generators").at(toString(v))));
  return SModule(S, std::move(mats));
}

Json toJson(const SLattice& l) {
  Json out;
  out["places"] = l.S.toString();
  std::vector<RatMat> mats(l.g.comp.begin(), l.g.comp.end());
  out["matrix"] = perPlaceJson(l.S, mats, [](const RatMat& m) { return toJson(m); });
  return out;
}

SLattice slatticeFromJson(const Json& j) {
  PlaceSet S = PlaceSet::parse(j.at("places").get<std::string>());
  SAdicMat g{S, 0, {}};
  for (auto& v : S.places()) g.comp.push_back(ratMatFromJson(j.at("matrix").at(toString(v))));
  g.m = static_cast<int>(g.comp.at(0).rows());
  return SLattice{S, g.m, g};
}

Json toJson(const YVector& y) {
  Json out;
  out["places"] = y.S.toString();
  out["components"] = perPlaceJson(y.S, y.comp, [](const RatVec& v) { return toJson(v); });
  Json tails = Json::object();
  auto ps = y.S.places();
  for (size_t i = 0; i < ps.size(); ++i)
    if (y.tailVal[i] != YVector::kNoTail) tails[toString(ps[i])] = y.tailVal[i];
  if (!tails.empty()) out["tail_valuations"] = tails;
  return out;
}

YVector yvectorFromJson(const Json& j) {
  PlaceSet S = PlaceSet::parse(j.at("places").get<std::string>());
  std::vector<RatVec> comp;
  for (auto& v : S.places()) comp.push_back(ratVecFromJson(j.at("components").at(toString(v))));
  YVector y = YVector::exact(S, std::move(comp));
  if (j.contains("tail_valuations")) {
    auto ps = S.places();
    for (size_t i = 0; i < ps.size(); ++i) {
      auto key = toString(ps[i]);
      if (j["tail_valuations"].contains(key)) y.tailVal[i] = j["tail_valuations"][key].get<long>();
    }
  }
  return y;
}

Json witnessJson(const ApproxWitness& w) {
  Json out;
  Json qt = Json::array();
  for (Eigen::Index i = 0; i < w.qt.size(); ++i) qt.push_back(w.qt[i].get_str());
  out["qt"] = qt;
  out["abs"] = formatRat(w.absValue);
  out["content"] = formatRat(w.contentValue);
  out["exact"] = w.valueExact;
  out["exponent"] = w.exponent;
  out["hit"] = w.hit;
  return out;
}

Json measureTableJson(const CylinderMeasure& mu, int level) {
  Json out;
  out["place"] = mu.p();
  out["level"] = level;
  Json table = Json::object();
  for (const auto& rep : mu.supportAtLevel(level)) {
    std::string key;
    for (Eigen::Index i = 0; i < rep.size(); ++i) key += (i ? "," : "") + rep[i].get_str();
    table[key] = formatRat(mu.mass(level, rep));
  }
  out["masses"] = table;
  return out;
}

std::string configHash(const Json& config) {
  std::string dump = config.dump();
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace sadic
