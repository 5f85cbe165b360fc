#include "regpart/quadforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace regpart {

bool QuadForm::is_primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }

bool QuadForm::is_reduced() const {
  const i64 ab = b < 0 ? -b : b;
  if (!(ab <= a && a <= c)) return false;
  if ((ab == a || a == c) && b < 0) return false;
  return true;
}

std::string QuadForm::to_string() const {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

std::vector<Point> representations(const QuadForm& form, u64 w) {
  if (w == 0) throw std::invalid_argument("representations: target must be positive");
  if (!form.is_positive_definite()) throw std::invalid_argument("representations: form must be positive definite");
  const i64 a = form.a, b = form.b;
  const i128 D = -static_cast<i128>(form.discriminant());
  const i128 aw4 = 4 * static_cast<i128>(a) * static_cast<i128>(w);
  // (2ax + by)^2 + |D| y^2 = 4aw
  const i64 ymax = static_cast<i64>(isqrt(static_cast<u64>(aw4 / D)));
  std::vector<Point> out;
  for (i64 y = -ymax; y <= ymax; ++y) {
    const i128 rest = aw4 - D * y * y;
    if (rest < 0) continue;
    u64 s = 0;
    if (!is_square(static_cast<u64>(rest), &s)) continue;
    for (int sign : {1, -1}) {
      if (sign == -1 && s == 0) break;
      const i64 num = -b * y + sign * static_cast<i64>(s);
      if (num % (2 * a) != 0) continue;
      out.push_back({num / (2 * a), y});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RepCount rep_count(const QuadForm& form, u64 w) {
  RepCount rc{w, 0, 0};
  for (const auto& [x, y] : representations(form, w)) {
    ++rc.total;
    if (std::gcd(x, y) == 1) ++rc.primitive;
  }
  return rc;
}

ReducedForms reduced_forms(i64 D) {
  if (D >= 0) throw std::invalid_argument("reduced_forms: discriminant must be negative");
  const i64 r = ((D % 4) + 4) % 4;
  if (r != 0 && r != 1) throw std::invalid_argument("reduced_forms: discriminant must be 0 or 1 mod 4");
  ReducedForms out{D, {}};
  // reduced forms satisfy 3a^2 <= |D|
  for (i64 a = 1; 3 * a * a <= -D; ++a) {
    for (i64 b = -a; b <= a; ++b) {
      const i64 num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const QuadForm f{a, b, num / (4 * a)};
      if (f.is_reduced() && f.is_primitive()) out.forms.push_back(f);
    }
  }
  std::sort(out.forms.begin(), out.forms.end());
  return out;
}

MassFormulas mass_formulas(u64 w) {
  if (w % 24 != 1) throw std::invalid_argument("mass_formulas: w must be 1 mod 24");
  MassFormulas out{0, 2};
  i64 sum = 0;
  for (u64 d : divisors(w)) sum += jacobi_symbol(-6, static_cast<i64>(d));
  out.divisor_sum_M1 = 2 * sum;
  for (const auto& pp : factorize(w)) out.product_N96 *= 1 + jacobi_symbol(-6, static_cast<i64>(pp.prime));
  return out;
}

ImprimitiveDecomposition imprimitive_decomposition(u64 u, int which) {
  if (u == 0) throw std::invalid_argument("imprimitive_decomposition: u must be positive");
  if (which != 1 && which != 2) throw std::invalid_argument("imprimitive_decomposition: which must be 1 or 2");
  const QuadForm& form = which == 1 ? kFormX2_24Y2 : kFormX2_216Y2;
  ImprimitiveDecomposition out;
  out.u = u;
  out.which = which;
  out.g = 1;
  out.h = 1;
  for (const auto& pp : factorize(u)) {
    for (unsigned i = 0; i < pp.exponent / 2; ++i) out.h *= pp.prime;
    if (pp.exponent % 2) out.g *= pp.prime;
  }
  for (u64 d : divisors(out.h)) {
    const u64 n = rep_count(form, out.g * d * d).primitive;
    out.terms.push_back({d, n});
    out.sum += n;
  }
  out.total = rep_count(form, u).total;
  return out;
}

PrimeClassRecord classify_prime(u64 p) {
  if (p < 5 || !is_prime(p)) throw std::invalid_argument("classify_prime: " + std::to_string(p) + " is not a prime >= 5");
  PrimeClassRecord rec;
  rec.p = p;
  rec.residue = p % 24;
  if (rec.residue == 13 || rec.residue == 17 || rec.residue == 19 || rec.residue == 23) return rec;

  for (int j : {1, 4, 8}) {
    const u64 target = static_cast<u64>(j) * p;
    for (u64 y = 1; 216 * y * y < target; ++y) {
      u64 x = 0;
      if (!is_square(target - 216 * y * y, &x)) continue;
      if (std::gcd(x, y) != 1) continue;
      rec.in_P = true;
      rec.j = j;
      rec.x1 = static_cast<i64>(x);
      rec.y1 = static_cast<i64>(y);
      break;
    }
    if (rec.in_P) break;
  }
  if (!rec.in_P) return rec;

  const auto fail = [&](const std::string& what) {
    throw std::logic_error("classify_prime(" + std::to_string(p) + "): " + what);
  };
  if (rec.j == 1 && rec.residue != 1) fail("j = 1 but p is not 1 mod 24");
  if (rec.j == 4 && rec.residue != 7) fail("j = 4 but p is not 7 mod 24");
  if (rec.j == 8) {
    if (rec.residue != 5 && rec.residue != 11) fail("j = 8 but p is not 5 or 11 mod 24");
    const unsigned v = valuation2(static_cast<u64>(rec.x1));
    if (rec.residue == 5 && v != 2) fail("p = 5 mod 24 but val2(x1) != 2");
    if (rec.residue == 11 && v < 3) fail("p = 11 mod 24 but val2(x1) < 3");
  }
  return rec;
}

FiberReport two_to_one_map(const PrimeClassRecord& record, u64 m) {
  const u64 p = record.p;
  if (!record.in_P) throw std::invalid_argument("two_to_one_map: p is not in the prime set");
  if (m == 0 || m % p == 0) throw std::invalid_argument("two_to_one_map: m must be positive and coprime to p");
  if ((p % 24) * (m % 24) % 24 != 1) throw std::invalid_argument("two_to_one_map: p m must be 1 mod 24");

  FiberReport rep;
  rep.p = p;
  rep.m = m;
  rep.j = record.j;
  const i64 P = static_cast<i64>(p);
  const i64 x1 = record.x1, y1 = record.y1;

  std::vector<Point> X, A;
  for (const auto& pt : representations(kFormX2_216Y2, p * m))
    if (std::gcd(pt.first, pt.second) == 1) X.push_back(pt);
  for (const auto& pt : representations(kFormX2_216Y2, static_cast<u64>(record.j) * m))
    if (std::gcd(pt.first, pt.second) == 1) A.push_back(pt);
  rep.x_size = X.size();
  rep.a_size = A.size();
  const std::set<Point> a_set(A.begin(), A.end());

  for (const auto& [x, y] : X) {
    std::optional<Point> image;
    const i64 c1 = x1 * x - 216 * y1 * y;
    const i64 c2 = x1 * x + 216 * y1 * y;
    if (c1 % P == 0 && c2 % P == 0) {
      rep.problems.push_back("both cases apply at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    } else if (c1 % P == 0) {
      const i64 d = x1 * y + y1 * x;
      if (d % P == 0) image = Point{c1 / P, d / P};
    } else if (c2 % P == 0) {
      const i64 d = x1 * y - y1 * x;
      if (d % P == 0) image = Point{c2 / P, d / P};
    }
    if (!image || !a_set.count(*image)) {
      rep.well_defined = false;
      rep.problems.push_back("no valid image for (" + std::to_string(x) + "," + std::to_string(y) + ")");
      continue;
    }
    rep.fibers[*image].push_back({x, y});
  }
  for (const auto& ab : A) {
    auto it = rep.fibers.find(ab);
    if (it == rep.fibers.end()) {
      rep.surjective = false;
      rep.two_to_one = false;
    } else if (it->second.size() != 2) {
      rep.two_to_one = false;
    }
  }
  return rep;
}

Point p_squared_witness(const PrimeClassRecord& record) {
  if (!record.in_P) throw std::invalid_argument("p_squared_witness: p is not in the prime set");
  const i64 j = record.j, x1 = record.x1, y1 = record.y1;
  const i64 nx = x1 * x1 - 216 * y1 * y1;
  const i64 ny = 2 * x1 * y1;
  if (nx % j != 0 || ny % j != 0) throw std::logic_error("p_squared_witness: non-integral witness");
  const Point w{nx / j, ny / j};
  const i64 P = static_cast<i64>(record.p);
  if (w.first * w.first + 216 * w.second * w.second != P * P)
    throw std::logic_error("p_squared_witness: witness does not solve x^2 + 216 y^2 = p^2");
  if (std::gcd(w.first, w.second) != 1) throw std::logic_error("p_squared_witness: witness is not primitive");
  return w;
}

bool has_primitive_p_squared_solution(u64 p) { return count_x2_plus_216y2(p * p).primitive > 0; }

std::string to_string(BInterpretation interp) {
  return interp == BInterpretation::ExponentMod3 ? "a" : "c";
}

N2Prediction conjecture_n2_formula(u64 m, BInterpretation interp) {
  if (m % 24 != 1) throw std::invalid_argument("conjecture_n2_formula: m must be 1 mod 24");
  N2Prediction out;
  out.m = m;
  const unsigned period = interp == BInterpretation::ExponentMod3 ? 3 : 2;
  for (const auto& pp : factorize(m)) {
    const u64 r = pp.prime % 24;
    if (r == 13 || r == 17 || r == 19 || r == 23) out.zero_rule = true;
    if (out.zero_rule) continue;
    if (classify_prime(pp.prime).in_P) {
      ++out.k;
    } else {
      ++out.n;
      if (pp.exponent % period == 0) ++out.B;
    }
  }
  if (out.zero_rule) return out;
  // (2^{n+k+1} + 2^{B+k+2} (-1)^{n-B}) / 3
  const i64 first = i64{1} << (out.n + out.k + 1);
  const i64 second = (i64{1} << (out.B + out.k + 2)) * (((out.n - out.B) % 2) ? -1 : 1);
  if ((first + second) % 3 != 0) throw std::logic_error("conjecture_n2_formula: non-integral value");
  out.value = (first + second) / 3;
  return out;
}

u64 pentagonal_square_count(u64 r) {
  const u64 w = 24 * r + 1;
  u64 count = 0;
  for (u64 y = 0; 24 * y * y <= w; ++y) {
    if (y != 0 && y % 3 == 0) continue;
    if (is_square(w - 24 * y * y)) ++count;
  }
  return count;
}

}  // namespace regpart
