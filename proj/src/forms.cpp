#include "biorth/forms.hpp"

#include <algorithm>
#include <numeric>

#include "biorth/errors.hpp"

namespace biorth {
namespace {

using Poly = std::vector<Rational>;  // lowest degree first, no trailing zeros

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long long>(i));
  trim(d);
  return d;
}

Poly remainder(Poly a, const Poly& b) {
  const int db = degree(b);
  while (degree(a) >= db && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const int shift = degree(a) - db;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(shift + i)] -= factor * b[static_cast<std::size_t>(i)];
    a.pop_back();  // leading term cancels exactly
    trim(a);
  }
  return a;
}

Poly monic(Poly p) {
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

Poly gcd(Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

int variations(const std::vector<int>& signs) {
  int count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Distinct real roots in (0, inf) and (-inf, 0) of p (p(0) != 0).
SignCounts sturm_distinct(const Poly& p) {
  std::vector<Poly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    Poly r = remainder(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  seq.pop_back();

  std::vector<int> at_zero, at_pos_inf, at_neg_inf;
  for (const auto& q : seq) {
    at_zero.push_back(sign_of(q.front()));
    const int lead = sign_of(q.back());
    at_pos_inf.push_back(lead);
    at_neg_inf.push_back(degree(q) % 2 == 0 ? lead : -lead);
  }
  const int v0 = variations(at_zero);
  return {v0 - variations(at_pos_inf), variations(at_neg_inf) - v0};
}

// Connected components of the graph with an edge wherever m(i,j) != 0.
std::vector<std::vector<int>> components(const IntMatrix& m) {
  const int n = m.size;
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<int> comp;
    std::vector<int> stack{s};
    label[static_cast<std::size_t>(s)] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w = 0; w < n; ++w)
        if (label[static_cast<std::size_t>(w)] < 0 && (m(v, w) != 0 || m(w, v) != 0)) {
          label[static_cast<std::size_t>(w)] = id;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

IntMatrix submatrix(const IntMatrix& m, const std::vector<int>& idx) {
  IntMatrix s(static_cast<int>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b)
      s(static_cast<int>(a), static_cast<int>(b)) = m(idx[a], idx[b]);
  return s;
}

Integer blockwise_determinant(const IntMatrix& m) {
  Integer det = 1;
  for (const auto& comp : components(m)) {
    det *= determinant(submatrix(m, comp));
    if (det == 0) break;
  }
  return det;
}

std::string integer_string(const Integer& v) { return v.str(); }

std::string word_term(long long count, const char* block) {
  return count == 1 ? std::string(block) : std::to_string(count) + "*" + block;
}

} // namespace

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  const int n = static_cast<int>(rows.size());
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw InvalidForm("form matrix is not square (row " + std::to_string(i) + " has " +
                        std::to_string(rows[static_cast<std::size_t>(i)].size()) +
                        " entries, expected " + std::to_string(n) + ")");
    for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (other.size != size) throw DimensionError("integer matrix size mismatch");
  IntMatrix out(size);
  for (int i = 0; i < size; ++i)
    for (int k = 0; k < size; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < size; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool IntMatrix::is_symmetric() const {
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Integer determinant(const IntMatrix& m) {
  const int n = m.size;
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int pivot = k + 1;
      while (pivot < n && a(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;  // exact
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<Integer> characteristic_polynomial(const IntMatrix& m) {
  // Faddeev-LeVerrier; every division by k is exact over the integers.
  const int n = m.size;
  std::vector<Integer> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = 1;
  IntMatrix mk(n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    IntMatrix next = m * mk;
    for (int i = 0; i < n; ++i) next(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    mk = std::move(next);
    const IntMatrix amk = m * mk;
    Integer trace = 0;
    for (int i = 0; i < n; ++i) trace += amk(i, i);
    c[static_cast<std::size_t>(n - k)] = -trace / k;
  }
  return c;
}

SignCounts count_roots_by_sign(const std::vector<Integer>& coeffs) {
  Poly p(coeffs.begin(), coeffs.end());
  trim(p);
  if (p.empty()) throw PreconditionError("zero polynomial has no root count");
  if (p.front() == 0) throw PreconditionError("zero is a root");
  SignCounts total{0, 0};
  while (degree(p) > 0) {
    const SignCounts level = sturm_distinct(p);
    total.positive += level.positive;
    total.negative += level.negative;
    p = gcd(p, derivative(p));
  }
  return total;
}

IntersectionForm IntersectionForm::from_matrix(IntMatrix m) {
  if (m.size < 0 || m.data.size() != static_cast<std::size_t>(m.size) * m.size)
    throw InvalidForm("form matrix is not square");
  if (!m.is_symmetric()) throw InvalidForm("form matrix is not symmetric");
  const Integer det = blockwise_determinant(m);
  if (det != 1 && det != -1)
    throw NotUnimodular("form is not unimodular (determinant " + integer_string(det) + ")",
                        integer_string(det));
  return IntersectionForm(std::move(m));
}

IntersectionForm IntersectionForm::from_rows(const std::vector<std::vector<Integer>>& rows) {
  return from_matrix(IntMatrix::from_rows(rows));
}

IntersectionForm IntersectionForm::negated() const {
  IntMatrix m = m_;
  for (auto& v : m.data) v = -v;
  return IntersectionForm(std::move(m));
}

IntersectionForm direct_sum(const IntersectionForm& a, const IntersectionForm& b) {
  const int ra = a.rank(), rb = b.rank();
  IntMatrix m(ra + rb);
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < ra; ++j) m(i, j) = a(i, j);
  for (int i = 0; i < rb; ++i)
    for (int j = 0; j < rb; ++j) m(ra + i, ra + j) = b(i, j);
  return IntersectionForm(std::move(m));
}

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

std::string to_string(Definiteness d) {
  switch (d) {
  case Definiteness::Positive: return "positive";
  case Definiteness::Negative: return "negative";
  case Definiteness::Indefinite: return "indefinite";
  case Definiteness::ZeroRank: return "zero-rank";
  }
  return "unknown";
}

FormInvariants invariants(const IntersectionForm& q) {
  const IntMatrix& m = q.matrix();
  FormInvariants inv{q.rank(), 0, 0, 0, Parity::Even, Definiteness::ZeroRank, 1};
  for (int i = 0; i < m.size; ++i)
    if (m(i, i) % 2 != 0) inv.parity = Parity::Odd;

  for (const auto& comp : components(m)) {
    const IntMatrix block = submatrix(m, comp);
    inv.determinant *= determinant(block);
    if (block.size == 1) {
      (block(0, 0) > 0 ? inv.b_plus : inv.b_minus) += 1;
      continue;
    }
    const SignCounts counts = count_roots_by_sign(characteristic_polynomial(block));
    if (counts.positive + counts.negative != block.size)
      throw InvariantViolation("eigenvalue count does not match block size");
    inv.b_plus += counts.positive;
    inv.b_minus += counts.negative;
  }
  if (inv.determinant != 1 && inv.determinant != -1)
    throw NotUnimodular("form is not unimodular (determinant " +
                            integer_string(inv.determinant) + ")",
                        integer_string(inv.determinant));
  inv.signature = inv.b_plus - inv.b_minus;
  if (inv.rank == 0)
    inv.definiteness = Definiteness::ZeroRank;
  else if (inv.b_minus == 0)
    inv.definiteness = Definiteness::Positive;
  else if (inv.b_plus == 0)
    inv.definiteness = Definiteness::Negative;
  else
    inv.definiteness = Definiteness::Indefinite;
  return inv;
}

Rational a_hat(const FormInvariants& inv) { return Rational(-inv.signature, 8); }

Rational a_hat(const IntersectionForm& q) { return a_hat(invariants(q)); }

std::string HomeoClass::tag_name() const {
  switch (tag) {
  case Tag::S4: return "S4";
  case Tag::MixedCP2: return "mCP2_nCP2bar";
  case Tag::SumS2xS2: return "n_S2xS2";
  case Tag::E8Family: return "E8_family";
  case Tag::DefiniteNonDiagonal: return "definite_nondiagonal";
  }
  return "unknown";
}

std::string HomeoClass::display() const {
  std::vector<std::string> terms;
  switch (tag) {
  case Tag::S4:
    return "S4";
  case Tag::MixedCP2:
    if (m > 0) terms.push_back(word_term(m, "CP2"));
    if (n > 0) terms.push_back(word_term(n, "CP2bar"));
    break;
  case Tag::SumS2xS2:
    terms.push_back(word_term(n, "S2xS2"));
    break;
  case Tag::E8Family:
    terms.push_back(word_term(m > 0 ? m : -m, m > 0 ? "E8" : "-E8"));
    if (n > 0) terms.push_back(word_term(n, "S2xS2"));
    break;
  case Tag::DefiniteNonDiagonal:
    return "definite non-diagonal form (rank " + std::to_string(m) + ", signature " +
           std::to_string(signature) + ", " + to_string(parity) + ")";
  }
  std::string out;
  for (const auto& t : terms) out += (out.empty() ? "" : " # ") + t;
  return out;
}

HomeoClass serre_normal_form(const IntersectionForm& q, bool assume_smoothable) {
  const FormInvariants inv = invariants(q);
  HomeoClass h{HomeoClass::Tag::S4, 0, 0, inv.signature, inv.parity, {}};
  if (inv.rank == 0) return h;

  if (inv.parity == Parity::Even && inv.signature % 8 != 0)
    throw InvariantViolation("even unimodular form with signature " +
                             std::to_string(inv.signature) + " not divisible by 8");

  if (inv.definiteness == Definiteness::Indefinite) {
    if (inv.parity == Parity::Odd) {
      h.tag = HomeoClass::Tag::MixedCP2;
      h.m = inv.b_plus;
      h.n = inv.b_minus;
    } else if (inv.signature == 0) {
      h.tag = HomeoClass::Tag::SumS2xS2;
      h.n = inv.rank / 2;
    } else {
      h.tag = HomeoClass::Tag::E8Family;
      h.m = inv.signature / 8;
      h.n = (inv.rank - std::abs(inv.signature)) / 2;
    }
    return h;
  }

  const bool positive = inv.definiteness == Definiteness::Positive;
  IntMatrix diagonal = IntMatrix::identity(inv.rank);
  if (!positive)
    for (auto& v : diagonal.data) v = -v;
  if (q.matrix() == diagonal) {
    h.tag = HomeoClass::Tag::MixedCP2;
    (positive ? h.m : h.n) = inv.rank;
    return h;
  }

  if (assume_smoothable && inv.parity == Parity::Odd) {
    h.tag = HomeoClass::Tag::MixedCP2;
    (positive ? h.m : h.n) = inv.rank;
    h.caveat =
        "definite form not literally diagonal; a smooth manifold with a definite form has the "
        "standard diagonal form (Donaldson), so the diagonal class is taken under the "
        "smoothability assumption";
    return h;
  }

  h.tag = HomeoClass::Tag::DefiniteNonDiagonal;
  h.m = inv.rank;
  if (inv.parity == Parity::Even) {
    h.caveat =
        "even definite form: never the form of a smooth manifold (Donaldson), realized by a "
        "topological manifold (Freedman)";
    if (assume_smoothable) h.caveat += "; the smoothability assumption is inconsistent with it";
  } else {
    h.caveat =
        "definite form not tested for equivalence to a diagonal form; smoothable only if it "
        "is equivalent to the standard diagonal form (Donaldson), otherwise realized only "
        "topologically (Freedman)";
  }
  return h;
}

std::string to_string(Answer a) {
  switch (a) {
  case Answer::Yes: return "yes";
  case Answer::No: return "no";
  case Answer::Conditional: return "conditional";
  }
  return "unknown";
}

PscAnswer admits_psc(const HomeoClass& h) {
  using Tag = HomeoClass::Tag;
  switch (h.tag) {
  case Tag::S4:
  case Tag::MixedCP2:
  case Tag::SumS2xS2:
    return {Answer::Yes, "the standard smooth structure carries a metric with scal > 0"};
  case Tag::E8Family:
    return {Answer::No, "spin with A-hat = " + std::to_string(-h.m) + " != 0"};
  case Tag::DefiniteNonDiagonal:
    if (h.parity == Parity::Even) {
      const Rational ahat(-h.signature, 8);
      return {Answer::No, "spin with A-hat = " + ahat.str() + " != 0; " + h.caveat};
    }
    return {Answer::Conditional,
            "yes if the form is equivalent to the standard diagonal form (then the class is a "
            "sum of CP2 or CP2bar), otherwise not smoothable; " +
                h.caveat};
  }
  return {Answer::Conditional, "unknown class"};
}

IntersectionForm builtin(BuiltinForm which) {
  switch (which) {
  case BuiltinForm::One:
    return IntersectionForm::from_rows({{1}});
  case BuiltinForm::MinusOne:
    return IntersectionForm::from_rows({{-1}});
  case BuiltinForm::H:
    return IntersectionForm::from_rows({{0, 1}, {1, 0}});
  case BuiltinForm::E8: {
    // Cartan matrix of E8: chain 0-1-2-3-4-5-6 with node 7 attached to node 4.
    IntMatrix m(8);
    for (int i = 0; i < 8; ++i) m(i, i) = 2;
    auto link = [&](int a, int b) { m(a, b) = m(b, a) = -1; };
    for (int i = 0; i < 6; ++i) link(i, i + 1);
    link(4, 7);
    IntersectionForm e8 = IntersectionForm::from_matrix(std::move(m));
    const FormInvariants inv = invariants(e8);
    if (inv.signature != 8 || inv.parity != Parity::Even || inv.determinant != 1)
      throw InvariantViolation("E8 self-check failed");
    return e8;
  }
  }
  throw PreconditionError("unknown builtin form");
}

} // namespace biorth
