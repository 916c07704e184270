#include <sadic/place.hpp>

#include <algorithm>
#include <sstream>

namespace sadic {

Rat parseRat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parseRat: empty string");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
      throw std::invalid_argument("parseRat: bad character in '" + s + "'");
  }
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("parseRat: cannot parse '" + s + "'");
  if (denominator(q) == 0) throw std::invalid_argument("parseRat: zero denominator");
  q.canonicalize();
  return q;
}

std::string formatRat(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

Place Place::finite(long prime) {
  if (!isPrime(prime)) throw std::invalid_argument("Place::finite: " + std::to_string(prime) + " is not prime");
  return Place{prime};
}

std::string toString(const Place& v) { return v.isArch() ? "inf" : std::to_string(v.p); }

Rat valuation(const Rat& x, const Place& v) {
  if (x == 0) return Rat(0);
  if (v.isArch()) return abs(x);
  return powRat(v.p, -valuationQ(x, v.p));
}

PlaceSet::PlaceSet(bool hasArch, std::vector<long> primes) : hasArch_(hasArch), primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  for (size_t i = 0; i < primes_.size(); ++i) {
    if (!isPrime(primes_[i]))
      throw std::invalid_argument("PlaceSet: " + std::to_string(primes_[i]) + " is not prime");
    if (i > 0 && primes_[i] == primes_[i - 1])
      throw std::invalid_argument("PlaceSet: duplicate place " + std::to_string(primes_[i]));
  }
  if (ell() < 1) throw std::invalid_argument("PlaceSet: must contain at least one place");
}

PlaceSet PlaceSet::parse(const std::string& s) {
  bool arch = false;
  std::vector<long> primes;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    if (tok == "inf" || tok == "oo" || tok == "infinity") {
      if (arch) throw std::invalid_argument("PlaceSet: duplicate archimedean place");
      arch = true;
    } else {
      primes.push_back(std::stol(tok));
    }
  }
  return PlaceSet(arch, primes);
}

std::vector<Place> PlaceSet::places() const {
  std::vector<Place> out;
  if (hasArch_) out.push_back(Place::arch());
  for (long p : primes_) out.push_back(Place{p});
  return out;
}

bool PlaceSet::contains(const Place& v) const {
  if (v.isArch()) return hasArch_;
  return std::binary_search(primes_.begin(), primes_.end(), v.p);
}

std::string PlaceSet::toString() const {
  std::string out;
  if (hasArch_) out = "inf";
  for (long p : primes_) {
    if (!out.empty()) out += ",";
    out += std::to_string(p);
  }
  return out;
}

bool isSInteger(const Rat& x, const PlaceSet& S) {
  Int d = denominator(x);
  for (long p : S.primes()) {
    Int rest;
    mpz_remove(rest.get_mpz_t(), d.get_mpz_t(), Int(p).get_mpz_t());
    d = rest;
  }
  return d == 1 || d == -1;
}

bool isSUnit(const Rat& x, const PlaceSet& S) {
  if (x == 0) return false;
  return isSInteger(x, S) && isSInteger(Rat(1) / x, S);
}

Rat sUnitFreePart(const Rat& x, const PlaceSet& S) {
  if (x == 0) throw std::domain_error("sUnitFreePart: zero argument");
  Int n = numerator(x), d = denominator(x);
  for (long p : S.primes()) {
    Int rest;
    mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), Int(p).get_mpz_t());
    n = rest;
    mpz_remove(rest.get_mpz_t(), d.get_mpz_t(), Int(p).get_mpz_t());
    d = rest;
  }
  Rat r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace sadic
