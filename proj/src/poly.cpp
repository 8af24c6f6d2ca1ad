#include "bbk/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace bbk {

void Poly::trim() {
  while (!c_.empty() && c_.back().isZero()) c_.pop_back();
}

Poly Poly::constant(Rat v) {
  if (v.isZero()) return Poly();
  return Poly(std::vector<Rat>{std::move(v)});
}

Poly Poly::monomial(int k, Rat v) {
  if (v.isZero()) return Poly();
  std::vector<Rat> c(k + 1, Rat(0));
  c[k] = std::move(v);
  return Poly(std::move(c));
}

Rat Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rat(0);
  return c_[k];
}

Rat Poly::eval(const Rat& t) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rat> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rat(static_cast<long>(i)) * c_[i];
  return Poly(std::move(d));
}

Poly Poly::antiderivative() const {
  if (c_.empty()) return Poly();
  std::vector<Rat> a(c_.size() + 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / Rat(static_cast<long>(i + 1));
  return Poly(std::move(a));
}

Rat Poly::integrate(const Rat& a, const Rat& b) const {
  Poly f = antiderivative();
  return f.eval(b) - f.eval(a);
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
  std::vector<Rat> c(c_);
  for (auto& x : c) x = -x;
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.isZero() || b.isZero()) return Poly();
  std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].isZero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(c));
}

Poly operator*(const Rat& s, const Poly& p) {
  std::vector<Rat> c(p.c_);
  for (auto& x : c) x *= s;
  return Poly(std::move(c));
}

std::string Poly::str(const std::string& var) const {
  if (isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].isZero()) continue;
    if (!first) os << " + ";
    os << c_[i].str();
    if (i >= 1) os << "*" << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

int PolyForm::formDegree() const {
  if (!isHomogeneous()) throw std::invalid_argument("PolyForm: mixed form has no single degree");
  return q.isZero() ? 0 : 1;
}

PolyForm PolyForm::wedge(const PolyForm& other) const {
  // (p1 + q1 dt) ∧ (p2 + q2 dt) = p1 p2 + (p1 q2 + q1 p2) dt.
  return PolyForm{p * other.p, p * other.q + q * other.p, delta};
}

Rat PolyForm::integrate() const {
  if (!p.isZero()) throw std::invalid_argument("PolyForm::integrate: not a 1-form");
  return q.integrate(Rat(0), delta);
}

SupportFlag PolyForm::flag() const {
  if (vanishesAtDelta()) return SupportFlag::vanishing_at_delta;
  if (vanishesAtZero()) return SupportFlag::vanishing_at_zero;
  return SupportFlag::free_;
}

PolyForm operator+(const PolyForm& a, const PolyForm& b) {
  return PolyForm{a.p + b.p, a.q + b.q, a.delta};
}

PolyForm operator*(const Rat& s, const PolyForm& f) {
  return PolyForm{s * f.p, s * f.q, f.delta};
}

bool operator==(const PolyForm& a, const PolyForm& b) {
  return a.p == b.p && a.q == b.q && a.delta == b.delta;
}

PolyForm homotopyK(const PolyForm& w) {
  if (!w.p.eval(w.delta).isZero())
    throw std::invalid_argument("homotopyK: 0-form part must vanish at delta");
  // −∫_t^δ q(s) ds = ∫_δ^t q = Q(t) − Q(δ).
  Poly anti = w.q.antiderivative();
  Poly out = anti - Poly::constant(anti.eval(w.delta));
  return PolyForm{std::move(out), Poly(), w.delta};
}

PolyForm homotopyK0(const PolyForm& w) {
  if (!w.p.eval(Rat(0)).isZero())
    throw std::invalid_argument("homotopyK0: 0-form part must vanish at 0");
  return PolyForm{w.q.antiderivative(), Poly(), w.delta};
}

IntervalModel::IntervalModel(Rat delta, int cap, std::string coordName)
    : delta_(std::move(delta)), cap_(cap), coord_(std::move(coordName)) {
  if (cap_ < 1) throw std::invalid_argument("IntervalModel: cap must be >= 1");
  if (!(delta_ > Rat(0))) throw std::invalid_argument("IntervalModel: delta must be positive");
}

std::vector<PolyForm> IntervalModel::basis(EndConditions ec) const {
  std::vector<PolyForm> out;
  // 0-forms: monomials adapted to the end conditions.
  if (!ec.vanishLeft && !ec.vanishRight) {
    for (int i = 0; i <= cap_; ++i) out.push_back(PolyForm::zeroForm(Poly::monomial(i), delta_));
  } else if (ec.vanishLeft && !ec.vanishRight) {
    for (int i = 1; i <= cap_; ++i) out.push_back(PolyForm::zeroForm(Poly::monomial(i), delta_));
  } else if (!ec.vanishLeft && ec.vanishRight) {
    // t^i − δ^i, i = 1..N
    for (int i = 1; i <= cap_; ++i) {
      Poly p = Poly::monomial(i) - Poly::constant([&] {
        Rat d(1);
        for (int j = 0; j < i; ++j) d *= delta_;
        return d;
      }());
      out.push_back(PolyForm::zeroForm(std::move(p), delta_));
    }
  } else {
    // t(t − δ)·t^j, j = 0..N−2
    Poly root = Poly::monomial(1) * (Poly::monomial(1) - Poly::constant(delta_));
    for (int j = 0; j + 2 <= cap_; ++j)
      out.push_back(PolyForm::zeroForm(root * Poly::monomial(j), delta_));
  }
  for (int i = 0; i < cap_; ++i) out.push_back(PolyForm::oneForm(Poly::monomial(i), delta_));
  return out;
}

std::vector<std::string> IntervalModel::basisLabels(EndConditions ec) const {
  std::vector<std::string> out;
  auto mono = [&](int i) {
    if (i == 0) return std::string("1");
    if (i == 1) return coord_;
    return coord_ + "^" + std::to_string(i);
  };
  if (!ec.vanishLeft && !ec.vanishRight) {
    for (int i = 0; i <= cap_; ++i) out.push_back(mono(i));
  } else if (ec.vanishLeft && !ec.vanishRight) {
    for (int i = 1; i <= cap_; ++i) out.push_back(mono(i));
  } else if (!ec.vanishLeft && ec.vanishRight) {
    for (int i = 1; i <= cap_; ++i) out.push_back("(" + mono(i) + "-d^" + std::to_string(i) + ")");
  } else {
    for (int j = 0; j + 2 <= cap_; ++j) out.push_back("(" + coord_ + "(" + coord_ + "-d)" + mono(j) + ")");
  }
  for (int i = 0; i < cap_; ++i) out.push_back(mono(i) + "d" + coord_);
  return out;
}

std::vector<int> IntervalModel::basisDegrees(EndConditions ec) const {
  std::vector<int> out;
  for (const auto& f : basis(ec)) out.push_back(f.formDegree());
  return out;
}

CochainComplex IntervalModel::complex(EndConditions ec) const {
  return complexFromForms(basis(ec), basisLabels(ec));
}

Vec IntervalModel::coordinates(const PolyForm& w) const {
  if (w.p.degree() > cap_ || w.q.degree() > cap_ - 1)
    throw std::invalid_argument("IntervalModel::coordinates: form beyond the degree cap");
  Vec x = Vec::Zero(2 * cap_ + 1);
  for (int i = 0; i <= cap_; ++i) x(i) = w.p.coeff(i);
  for (int i = 0; i < cap_; ++i) x(cap_ + 1 + i) = w.q.coeff(i);
  return x;
}

PolyForm IntervalModel::fromCoordinates(const Vec& x, EndConditions ec) const {
  auto b = basis(ec);
  if (x.size() != static_cast<Index>(b.size()))
    throw std::invalid_argument("IntervalModel::fromCoordinates: size mismatch");
  PolyForm acc{Poly(), Poly(), delta_};
  for (size_t i = 0; i < b.size(); ++i) acc = acc + x(static_cast<Index>(i)) * b[i];
  return acc;
}

PolyForm IntervalModel::wedgeCapped(const PolyForm& a, const PolyForm& b) const {
  PolyForm w = a.wedge(b);
  if (w.p.degree() > cap_ || w.q.degree() > cap_ - 1)
    throw std::invalid_argument("IntervalModel::wedgeCapped: polynomial degree cap exceeded");
  return w;
}

std::optional<Vec> coordinatesIn(const std::vector<PolyForm>& basis, const PolyForm& w) {
  int maxDeg = 0;
  for (const auto& f : basis) maxDeg = std::max({maxDeg, f.p.degree(), f.q.degree()});
  maxDeg = std::max({maxDeg, w.p.degree(), w.q.degree()});
  const Index rows = 2 * (maxDeg + 1);
  Mat a(rows, static_cast<Index>(basis.size()));
  auto fill = [&](const PolyForm& f, Index col, Mat& m) {
    for (int i = 0; i <= maxDeg; ++i) {
      m(i, col) = f.p.coeff(i);
      m(maxDeg + 1 + i, col) = f.q.coeff(i);
    }
  };
  for (size_t j = 0; j < basis.size(); ++j) fill(basis[j], static_cast<Index>(j), a);
  Mat bm(rows, 1);
  fill(w, 0, bm);
  return solve(a, bm.col(0));
}

CochainComplex complexFromForms(const std::vector<PolyForm>& basis,
                                const std::vector<std::string>& labels) {
  std::vector<int> degrees;
  for (const auto& f : basis) degrees.push_back(f.formDegree());
  SpaceRef s = makeSpace(labels, degrees);
  GradedMap d(s, s, 1);
  for (size_t j = 0; j < basis.size(); ++j) {
    PolyForm df = basis[j].d();
    if (df.isZero()) continue;
    auto coords = coordinatesIn(basis, df);
    if (!coords) throw std::invalid_argument("complexFromForms: basis not closed under d");
    for (Index i = 0; i < coords->size(); ++i) {
      if (!(*coords)(i).isZero()) d.addEntry(i, static_cast<Index>(j), (*coords)(i));
    }
  }
  return CochainComplex::checked(s, std::move(d));
}

CellMesh::CellMesh(std::vector<Rat> breakpoints) : breaks_(std::move(breakpoints)) {
  if (breaks_.size() < 2) throw std::invalid_argument("CellMesh: need at least two breakpoints");
  if (!breaks_.front().isZero()) throw std::invalid_argument("CellMesh: first breakpoint must be 0");
  for (size_t i = 0; i + 1 < breaks_.size(); ++i)
    if (!(breaks_[i] < breaks_[i + 1]))
      throw std::invalid_argument("CellMesh: breakpoints must increase");
}

CellMesh CellMesh::uniform(int cells, Rat delta) {
  std::vector<Rat> b;
  for (int i = 0; i <= cells; ++i) b.push_back(Rat(i) * delta / Rat(cells));
  return CellMesh(std::move(b));
}

bool OpenSet::contains(const OpenSet& other) const {
  if (other.boundary && !boundary) return false;
  for (int c : other.cells)
    if (!cells.count(c)) return false;
  return true;
}

bool OpenSet::disjointFrom(const OpenSet& other) const {
  if (boundary && other.boundary) return false;
  for (int c : cells)
    if (other.cells.count(c)) return false;
  return true;
}

OpenSet OpenSet::intersect(const OpenSet& other) const {
  OpenSet out;
  for (int c : cells)
    if (other.cells.count(c)) out.cells.insert(c);
  out.boundary = boundary && other.boundary;
  return out;
}

OpenSet OpenSet::unionWith(const OpenSet& other) const {
  OpenSet out = *this;
  out.cells.insert(other.cells.begin(), other.cells.end());
  out.boundary = boundary || other.boundary;
  return out;
}

std::string OpenSet::str() const {
  std::string s = boundary ? "[0" : "(";
  bool first = true;
  for (int c : cells) {
    if (!first) s += ",";
    s += "c" + std::to_string(c);
    first = false;
  }
  s += ")";
  return s;
}

OpenSet OpenSet::wholeOf(const CellMesh& mesh, bool withBoundary) {
  OpenSet u;
  for (int c = 0; c < mesh.cellCount(); ++c) u.cells.insert(c);
  u.boundary = withBoundary;
  return u;
}

std::vector<OpenSet> allOpens(const CellMesh& mesh) {
  std::vector<OpenSet> out;
  const int n = mesh.cellCount();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    OpenSet u;
    for (int c = 0; c < n; ++c)
      if (mask & (1u << c)) u.cells.insert(c);
    out.push_back(u);
    if (u.cells.count(0)) {
      OpenSet v = u;
      v.boundary = true;
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace bbk
