#include "qell/extension.hpp"

#include <cmath>

namespace qell {

int CentralExtension::element(QZ a, int h) const {
  if (n % a.den() != 0) throw InputError("fiber value outside (1/n)Z/Z");
  return h * n + static_cast<int>(a.num() * (n / a.den()));
}

CentralExtension central_extension(const Cochain2& theta_in) {
  const Cochain2 theta = localize(theta_in);
  if (!check_normalized(theta)) throw InputError("2-cocycle is not normalized");
  if (!check_cocycle2(theta).ok) throw InputError("cochain is not a 2-cocycle");
  CentralExtension e;
  e.base = theta.carrier.group;
  e.cocycle = theta;
  e.n = static_cast<int>(value_order(theta));
  const FiniteGroup& h = *e.base;
  const int n = e.n, size = n * h.order();
  if (size > 4 * kDefaultGroupBound) throw InputError("central extension too large");
  std::vector<std::vector<int>> table(size, std::vector<int>(size));
  std::vector<std::string> labels(size);
  for (int x = 0; x < size; ++x) {
    const int hx = x / n, kx = x % n;
    labels[x] = "(" + std::to_string(kx) + "/" + std::to_string(n) + "," + h.label(hx) + ")";
    for (int y = 0; y < size; ++y) {
      const int hy = y / n, ky = y % n;
      const QZ t = theta(hx, hy);
      const int kt = static_cast<int>(t.num() * (n / t.den()));
      table[x][y] = h.mul(hx, hy) * n + (kx + ky + kt) % n;
    }
  }
  e.total = share(FiniteGroup::from_table(table, std::move(labels)));
  std::vector<int> proj(size);
  for (int x = 0; x < size; ++x) proj[x] = x / n;
  e.projection = GroupHom{e.total, e.base, std::move(proj)};
  return e;
}

int extension_element_order(const CentralExtension& e, QZ a, int h) {
  return e.total->element_order(e.element(a, h));
}

const Cyclotomic& IrrepSystem::value(int i, int h) const {
  if (extension) return table->value(rows[i], extension->element(QZ(), h));
  return table->value(rows[i], h);
}

Cyclotomic IrrepSystem::value(int i, QZ a, int h) const {
  return Cyclotomic::exp2pi(a) * value(i, h);
}

IrrepSystem ordinary_irreps(const GroupPtr& h) {
  IrrepSystem s;
  s.base = h;
  s.table = character_table(h);
  for (int i = 0; i < s.table->size(); ++i) s.rows.push_back(i);
  return s;
}

IrrepSystem projective_irreps(const Cochain2& theta) {
  IrrepSystem s;
  s.extension = central_extension(theta);
  s.base = s.extension->base;
  const int z = s.extension->central_generator();
  if (s.extension->total->is_abelian()) {
    s.table = abelian_characters_at(s.extension->total, z, QZ(1, s.extension->n));
    for (int i = 0; i < s.table->size(); ++i) s.rows.push_back(i);
    return s;
  }
  s.table = character_table(s.extension->total);
  const Cyclotomic zeta = Cyclotomic::root(s.extension->n, 1);
  for (int i = 0; i < s.table->size(); ++i)
    if (s.table->value(i, z) == zeta * Cyclotomic(s.table->degrees[i])) s.rows.push_back(i);
  return s;
}

Cyclotomic projective_inner_product(const IrrepSystem& sys, const std::vector<Cyclotomic>& chi,
                                    const std::vector<Cyclotomic>& psi) {
  Cyclotomic s;
  for (std::size_t h = 0; h < chi.size(); ++h) s += chi[h] * psi[h].conj();
  return s.scaled(mpq_class(1, sys.base->order()));
}

std::optional<QZ> scalar_phase(const Cyclotomic& v, int deg, int bound) {
  const auto z = v.eval_numeric() / static_cast<double>(deg);
  if (std::abs(std::abs(z) - 1.0) > 1e-6) return std::nullopt;
  double t = std::arg(z) / (2 * M_PI);
  if (t < 0) t += 1;
  const long k = std::lround(t * bound) % bound;
  const QZ x(k, bound);
  if (Cyclotomic::exp2pi(x) * Cyclotomic(deg) != v) return std::nullopt;
  return x;
}

GradedRepModule lambda_basis(const Subgroup& c, int g, const std::optional<Cochain2>& theta) {
  if (!c.contains(g)) throw InputError("element not in carrier");
  const int gl = c.to_local(g);
  for (int k = 0; k < c.order(); ++k)
    if (!c.group->commute(gl, k)) throw InputError("element is not central in carrier");
  GradedRepModule m;
  m.carrier = c;
  m.g = g;
  m.twist = theta;
  if (theta) {
    if (theta->carrier.embedding != c.embedding) throw InputError("twist does not live on carrier");
    auto sys = std::make_shared<IrrepSystem>(projective_irreps(*theta));
    const CentralExtension& e = *sys->extension;
    const int lift = e.element(QZ(), gl);
    for (int y = 0; y < e.total->order(); ++y)
      if (!e.total->commute(lift, y)) throw InputError("lift of the element is not central");
    m.N = e.total->element_order(lift);
    m.irreps = std::move(sys);
  } else {
    m.irreps = std::make_shared<IrrepSystem>(ordinary_irreps(c.group));
    m.N = c.group->element_order(gl);
  }
  for (int i = 0; i < m.irreps->size(); ++i) {
    LambdaIrrep l;
    l.irrep = i;
    l.degree = m.irreps->degree(i);
    l.sigma_scalar = m.irreps->value(i, gl);
    const auto x = scalar_phase(l.sigma_scalar, l.degree, m.N);
    if (!x) throw InternalError("central element does not act by a root of unity");
    l.x = *x;
    m.basis.push_back(std::move(l));
  }
  return m;
}

GradedRepModule lambda_basis(const GroupPtr& G, int g, const std::optional<Cochain2>& theta) {
  return lambda_basis(centralizer_subgroup(G, {g}), g, theta);
}

}  // namespace qell
