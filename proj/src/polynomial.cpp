#include <sadic/polynomial.hpp>

#include <functional>

namespace sadic {

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(int k, const Rat& a) {
  std::vector<Rat> c(k + 1, Rat(0));
  c[k] = a;
  return Poly(std::move(c));
}

const Rat& Poly::coeff(int k) const {
  static const Rat zero(0);
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[k];
}

Rat Poly::operator()(const Rat& x) const {
  Rat v(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

double Poly::operator()(double x) const {
  double v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + toDouble(*it);
  return v;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rat> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rat(static_cast<long>(k));
  return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t k = 0; k < c.size(); ++k) c[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + o * Rat(-1); }

Poly Poly::operator*(const Poly& o) const {
  if (isZero() || o.isZero()) return Poly();
  std::vector<Rat> c(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(c));
}

Poly Poly::operator*(const Rat& a) const {
  std::vector<Rat> c = c_;
  for (auto& x : c) x *= a;
  return Poly(std::move(c));
}

Poly Poly::lagrange(const std::vector<Rat>& nodes, const std::vector<Rat>& values) {
  Poly sum;
  for (size_t i = 0; i < nodes.size(); ++i) {
    Poly term = Poly::constant(values[i]);
    Rat den(1);
    for (size_t j = 0; j < nodes.size(); ++j) {
      if (j == i) continue;
      term = term * Poly({-nodes[j], Rat(1)});
      den *= nodes[i] - nodes[j];
    }
    sum = sum + term * (Rat(1) / den);
  }
  return sum;
}

Rat diffQuotient(const std::function<Rat(const Rat&)>& f, std::vector<Rat> points) {
  const size_t n = points.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (points[i] == points[j]) throw CoincidentPointsError();
  std::vector<Rat> dd(n);
  for (size_t i = 0; i < n; ++i) dd[i] = f(points[i]);
  for (size_t k = 1; k < n; ++k)
    for (size_t i = n - 1; i >= k; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (points[i] - points[i - k]);
  return dd[n - 1];
}

Rat diffQuotientPoly(const Poly& f, std::vector<Rat> points) {
  std::sort(points.begin(), points.end());
  const size_t n = points.size();
  // Hermite table: repeated nodes take f^{(j)}(x)/j!.
  std::vector<Poly> derivs{f};
  std::vector<std::vector<Rat>> table(n, std::vector<Rat>(n));
  Rat fact(1);
  for (size_t j = 1; j < n; ++j) derivs.push_back(derivs.back().derivative());
  for (size_t i = 0; i < n; ++i) table[i][0] = f(points[i]);
  for (size_t k = 1; k < n; ++k) {
    fact *= Rat(static_cast<long>(k));
    for (size_t i = k; i < n; ++i) {
      if (points[i] == points[i - k]) {
        table[i][k] = derivs[k](points[i]) / fact;
      } else {
        table[i][k] = (table[i][k - 1] - table[i - 1][k - 1]) / (points[i] - points[i - k]);
      }
    }
  }
  return table[n - 1][n - 1];
}

MultiPoly MultiPoly::constant(int nvars, const Rat& a) {
  MultiPoly p(nvars);
  p.add(Expo(nvars, 0), a);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  MultiPoly p(nvars);
  Expo e(nvars, 0);
  e[i] = 1;
  p.add(e, Rat(1));
  return p;
}

bool MultiPoly::isConstant() const {
  for (auto& [e, a] : t_)
    for (int x : e)
      if (x != 0) return false;
  return true;
}

int MultiPoly::totalDegree() const {
  int d = t_.empty() ? -1 : 0;
  for (auto& [e, a] : t_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

void MultiPoly::add(const Expo& e, const Rat& a) {
  if (a == 0) return;
  auto it = t_.find(e);
  if (it == t_.end()) {
    t_.emplace(e, a);
  } else {
    it->second += a;
    if (it->second == 0) t_.erase(it);
  }
}

Rat MultiPoly::coeff(const Expo& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? Rat(0) : it->second;
}

Rat MultiPoly::operator()(const RatVec& x) const {
  Rat v(0);
  for (auto& [e, a] : t_) {
    Rat term = a;
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < e[i]; ++k) term *= x[i];
    v += term;
  }
  return v;
}

MultiPoly MultiPoly::partial(int i) const {
  MultiPoly out(n_);
  for (auto& [e, a] : t_) {
    if (e[i] == 0) continue;
    Expo d = e;
    d[i] -= 1;
    out.add(d, a * Rat(e[i]));
  }
  return out;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly out = *this;
  for (auto& [e, a] : o.t_) out.add(e, a);
  return out;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + o * Rat(-1); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly out(n_);
  for (auto& [e, a] : t_)
    for (auto& [f, b] : o.t_) {
      Expo g(n_);
      for (int i = 0; i < n_; ++i) g[i] = e[i] + f[i];
      out.add(g, a * b);
    }
  return out;
}

MultiPoly MultiPoly::operator*(const Rat& a) const {
  MultiPoly out(n_);
  if (a == 0) return out;
  for (auto& [e, c] : t_) out.add(e, c * a);
  return out;
}

Poly MultiPoly::toPoly() const {
  if (n_ != 1) throw std::logic_error("MultiPoly::toPoly: not univariate");
  std::vector<Rat> c;
  for (auto& [e, a] : t_) {
    if (static_cast<size_t>(e[0]) >= c.size()) c.resize(e[0] + 1, Rat(0));
    c[e[0]] = a;
  }
  return Poly(std::move(c));
}

MultiPoly MultiPoly::fromPoly(const Poly& p) {
  MultiPoly out(1);
  for (int k = 0; k <= p.degree(); ++k) out.add({k}, p.coeff(k));
  return out;
}

}  // namespace sadic
