#include <sadic/power_product.hpp>

#include <algorithm>
#include <cmath>

namespace sadic {

namespace {

// Accurate log of a positive mpz: mantissa * 2^exp decomposition.
double logInt(const Int& z) {
  signed long exp2;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double logRatPos(const Rat& q) { return logInt(numerator(q)) - logInt(denominator(q)); }

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

PowerProduct PowerProduct::of(Rat base, Rat exponent) {
  if (base <= 0) throw std::domain_error("PowerProduct: base must be positive");
  PowerProduct p;
  if (base != 1 && exponent != 0) p.terms_.emplace_back(std::move(base), std::move(exponent));
  return p;
}

void PowerProduct::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Rat, Rat>> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
      if (out.back().second == 0) out.pop_back();
    } else if (t.first != 1 && t.second != 0) {
      out.push_back(t);
    }
  }
  terms_ = std::move(out);
}

PowerProduct& PowerProduct::mul(const PowerProduct& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

PowerProduct& PowerProduct::pow(const Rat& e) {
  if (e == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= e;
  return *this;
}

PowerProduct PowerProduct::inverse() const {
  PowerProduct p = *this;
  p.pow(Rat(-1));
  return p;
}

int PowerProduct::compare(const PowerProduct& other) const {
  // Compare prod b_i^{e_i} with prod c_j^{f_j}: clear exponent denominators,
  // then move negative powers across, reducing to a comparison of two
  // products of positive integer powers, i.e. of two exact rationals.
  Int den(1);
  for (const auto& t : terms_) den = lcm(den, denominator(t.second));
  for (const auto& t : other.terms_) den = lcm(den, denominator(t.second));

  Rat lhs(1), rhs(1);
  auto fold = [&](const std::vector<std::pair<Rat, Rat>>& terms, Rat& pos, Rat& neg) {
    for (const auto& t : terms) {
      Int e = numerator(t.second) * (den / denominator(t.second));
      bool negExp = e < 0;
      Int eabs = abs(e);
      if (!eabs.fits_ulong_p()) throw std::overflow_error("PowerProduct::compare: exponent too large");
      Rat pw(powInt(numerator(t.first), eabs.get_ui()), powInt(denominator(t.first), eabs.get_ui()));
      pw.canonicalize();
      (negExp ? neg : pos) *= pw;
    }
  };
  // lhs collects this^D's positive part and other^D's negative part, etc.
  Rat a(1), b(1), c(1), d(1);
  fold(terms_, a, b);
  fold(other.terms_, c, d);
  Rat left = a * d, right = c * b;
  return left < right ? -1 : (left > right ? 1 : 0);
}

double PowerProduct::log() const {
  double s = 0;
  for (const auto& t : terms_) s += sadic::toDouble(t.second) * logRatPos(t.first);
  return s;
}

std::optional<Rat> PowerProduct::asRat() const {
  Rat v(1);
  for (const auto& t : terms_) {
    if (denominator(t.second) != 1) return std::nullopt;
    Int e = numerator(t.second);
    Int eabs = abs(e);
    if (!eabs.fits_ulong_p()) return std::nullopt;
    Rat pw(powInt(numerator(t.first), eabs.get_ui()), powInt(denominator(t.first), eabs.get_ui()));
    pw.canonicalize();
    v *= (e < 0) ? Rat(1) / pw : pw;
  }
  return v;
}

}  // namespace sadic
