#include "lojex/newton.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace lojex {

namespace {

using IVec = std::vector<Integer>;

IVec to_ivec(const std::vector<unsigned>& p) { return IVec(p.begin(), p.end()); }

Integer dot(const IVec& a, const IVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IVec minus(const IVec& a, const IVec& b) {
  IVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// Normal to the given n-1 directions in R^n (n <= 3).
IVec normal_to(const std::vector<IVec>& dirs, std::size_t n) {
  if (n == 1) return {1};
  if (n == 2) return {-dirs[0][1], dirs[0][0]};
  const IVec& a = dirs[0];
  const IVec& b = dirs[1];
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::size_t rank(std::vector<std::vector<Rational>> rows, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Rational f = rows[i][col] / rows[r][col];
      for (std::size_t k = col; k < n; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

// Twice the signed area, for the monotone chain.
Integer cross(const IVec& o, const IVec& a, const IVec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Rational hull_area(std::vector<IVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return 0;
  std::vector<IVec> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  Integer twice = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const IVec& a = h[i];
    const IVec& b = h[(i + 1) % h.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return Rational(abs(twice)) / 2;
}

// Volume of R^n_+ minus the polyhedron: pyramids from the origin over the
// compact facets. Needs every intercept finite.
Rational volume_under(const NewtonPolyhedron& poly) {
  const std::size_t n = poly.dim;
  Rational total = 0;
  for (const auto& f : poly.facets) {
    if (std::any_of(f.normal.begin(), f.normal.end(), [](const Integer& w) { return w == 0; })) continue;
    std::vector<IVec> on;
    for (const auto& v : poly.vertices)
      if (dot(f.normal, to_ivec(v)) == f.rhs) on.push_back(to_ivec(v));
    // Area of the facet's shadow on the first n-1 coordinates.
    Rational shadow = 1;
    if (n == 2) {
      Integer lo = on.front()[0], hi = on.front()[0];
      for (const auto& p : on) {
        lo = std::min(lo, p[0]);
        hi = std::max(hi, p[0]);
      }
      shadow = Rational(hi - lo);
    } else if (n == 3) {
      for (auto& p : on) p.pop_back();
      shadow = hull_area(on);
    }
    total += Rational(f.rhs) * shadow / Rational(f.normal[n - 1]) / Rational(static_cast<unsigned long>(n));
  }
  return total;
}

std::vector<std::vector<unsigned>> exponents_of(const Polynomial& f) {
  std::vector<std::vector<unsigned>> out;
  for (const auto& t : f.terms()) out.push_back(t.monomial.exponents());
  return out;
}

}  // namespace

bool NewtonPolyhedron::contains(const std::vector<Rational>& point) const {
  if (point.size() != dim) throw std::invalid_argument("point has the wrong dimension");
  for (const auto& f : facets) {
    Rational s = 0;
    for (std::size_t i = 0; i < dim; ++i) s += Rational(f.normal[i]) * point[i];
    if (s < Rational(f.rhs)) return false;
  }
  return true;
}

std::optional<Rational> NewtonPolyhedron::intercept(std::size_t j) const {
  Rational t = 0;
  for (const auto& f : facets) {
    if (f.normal[j] == 0) {
      if (f.rhs > 0) return std::nullopt;
      continue;
    }
    t = std::max(t, Rational(Rational(f.rhs) / Rational(f.normal[j])));
  }
  return t;
}

NewtonPolyhedron newton_polyhedron(const std::vector<std::vector<unsigned>>& points) {
  if (points.empty()) throw std::invalid_argument("newton_polyhedron needs at least one point");
  const std::size_t n = points.front().size();
  if (n == 0 || n > 3) throw std::invalid_argument("newton_polyhedron supports 1 to 3 variables");
  std::vector<IVec> pts;
  for (const auto& p : points) {
    if (p.size() != n) throw std::invalid_argument("points of different dimensions");
    pts.push_back(to_ivec(p));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Generators: points, then the unit rays. A facet is spanned by a base
  // point plus n-1 further generators.
  std::vector<std::pair<IVec, bool>> gens;  // (vector, is_ray)
  for (const auto& p : pts) gens.emplace_back(p, false);
  for (std::size_t i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    gens.emplace_back(e, true);
  }
  std::set<std::pair<IVec, Integer>> found;
  std::vector<std::size_t> pick;
  auto consider = [&](const IVec& base) {
    std::vector<IVec> dirs;
    for (auto g : pick) dirs.push_back(gens[g].second ? gens[g].first : minus(gens[g].first, base));
    IVec w = normal_to(dirs, n);
    bool pos = std::any_of(w.begin(), w.end(), [](const Integer& c) { return c > 0; });
    bool neg = std::any_of(w.begin(), w.end(), [](const Integer& c) { return c < 0; });
    if (pos == neg) return;  // zero or mixed signs
    if (neg)
      for (auto& c : w) c = -c;
    Integer g = 0;
    for (const auto& c : w) g = gcd(g, c);
    for (auto& c : w) c /= g;
    Integer rhs = dot(w, base);
    for (const auto& p : pts)
      if (dot(w, p) < rhs) return;
    found.emplace(w, rhs);
  };
  std::function<void(std::size_t, const IVec&)> choose = [&](std::size_t from, const IVec& base) {
    if (pick.size() == n - 1) {
      consider(base);
      return;
    }
    for (std::size_t g = from; g < gens.size(); ++g) {
      pick.push_back(g);
      choose(g + 1, base);
      pick.pop_back();
    }
  };
  for (const auto& base : pts) choose(0, base);

  NewtonPolyhedron out;
  out.dim = n;
  for (const auto& [w, rhs] : found) out.facets.push_back({w, rhs});
  for (const auto& p : pts) {
    std::vector<std::vector<Rational>> tight;
    for (const auto& f : out.facets)
      if (dot(f.normal, p) == f.rhs) tight.emplace_back(f.normal.begin(), f.normal.end());
    if (rank(tight, n) == n) {
      std::vector<unsigned> v;
      for (const auto& c : p) v.push_back(static_cast<unsigned>(c.get_ui()));
      out.vertices.push_back(v);
    }
  }
  return out;
}

NewtonPolyhedron newton_polyhedron(const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("the zero polynomial has no Newton polyhedron");
  return newton_polyhedron(exponents_of(f));
}

Rational monomial_loj(const Ideal& ideal) {
  std::vector<std::vector<unsigned>> pts;
  for (const auto& g : ideal.generators()) {
    if (g.is_zero()) continue;
    if (!g.is_monomial()) throw std::invalid_argument("monomial_loj needs monomial generators");
    pts.push_back(g.terms().front().monomial.exponents());
  }
  if (pts.empty()) throw std::invalid_argument("monomial_loj: zero ideal");
  auto poly = newton_polyhedron(pts);
  Rational best = 0;
  for (std::size_t j = 0; j < poly.dim; ++j) {
    auto t = poly.intercept(j);
    if (!t) throw std::invalid_argument("monomial_loj: ideal does not have finite colength");
    best = std::max(best, *t);
  }
  return best;
}

Integer newton_number(const Polynomial& f) {
  const std::size_t n = f.ambient().size();
  if (n == 0 || n > 3) throw std::invalid_argument("newton_number supports 1 to 3 variables");
  if (f.is_zero() || f.constant_term() != 0) throw std::invalid_argument("newton_number needs f(0) = 0 and f != 0");
  auto pts = exponents_of(f);
  Integer total = (n % 2 == 0) ? 1 : -1;
  Integer factorial = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    factorial *= static_cast<unsigned long>(k);
    Rational vk = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      std::vector<std::vector<unsigned>> sub;
      for (const auto& p : pts) {
        bool inside = true;
        std::vector<unsigned> q;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (1u << i)) q.push_back(p[i]);
          else if (p[i] != 0) inside = false;
        }
        if (inside) sub.push_back(q);
      }
      if (sub.empty()) throw std::invalid_argument("newton_number: f is not convenient");
      auto poly = newton_polyhedron(sub);
      for (std::size_t j = 0; j < k; ++j)
        if (!poly.intercept(j)) throw std::invalid_argument("newton_number: f is not convenient");
      vk += volume_under(poly);
    }
    Rational term = Rational(factorial) * vk;
    if (term.get_den() != 1) throw std::logic_error("newton_number: non-integral volume term");
    total += ((n - k) % 2 == 0 ? 1 : -1) * term.get_num();
  }
  return total;
}

Ideal jacobian_ideal(const Polynomial& f) {
  std::vector<Polynomial> parts;
  for (std::size_t i = 0; i < f.ambient().size(); ++i) parts.push_back(partial_derivative(f, i));
  return Ideal(f.ambient(), parts);
}

std::optional<std::size_t> milnor_number(const Polynomial& f) {
  if (f.constant_term() != 0) throw std::invalid_argument("milnor_number needs f(0) = 0");
  return local_colength(jacobian_ideal(f));
}

}  // namespace lojex
