#include "vpscreen/assembly.hpp"
#include "vpscreen/constants.hpp"
#include "vpscreen/errors.hpp"
#include "vpscreen/twobody.hpp"
#include "vpscreen/uehling.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace vpscreen::assembly {

namespace {

// <a|f|b> over the basis quadrature, m_e c^2 units
double expectation(const Orbital &a, const Orbital &b, const std::function<double(double)> &f) {
  const auto &r = a.basis->nodes();
  const auto &w = a.basis->weights();
  const Eigen::VectorXd Pa = a.P_at_nodes(), Qa = a.Q_at_nodes();
  const Eigen::VectorXd Pb = b.P_at_nodes(), Qb = b.Q_at_nodes();
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    s += w[i] * (Pa[i] * Pb[i] + Qa[i] * Qb[i]) * f(r[i]);
  return s;
}

double external(double r) { return -kAlpha / r; }

// rethrow convergence failures naming the ion and the diagram
template <class F> auto labelled(int Z, Diagram d, F &&f) {
  try {
    return f();
  } catch (const ConvergenceError &e) {
    throw ConvergenceError("Z=" + std::to_string(Z) + " " + to_string(d) + ": " + e.what(),
                           e.best_estimate());
  }
}

nucleus::NuclearModel with_rms(const nucleus::NuclearModel &m, double rms) {
  return nucleus::make_model(m.Z, rms, m.shape);
}

double diagram_value(int Z, const nucleus::NuclearModel &m, Diagram d, const Settings &s) {
  switch (d) {
  case Diagram::UehlA:
    return delta_e_a(Z, m, Part::Uehling, s).value;
  case Diagram::UehlB:
    return delta_e_b(Z, m, Part::Uehling, s).value;
  case Diagram::WKA:
    return delta_e_a(Z, m, Part::WK, s).value;
  case Diagram::WKB:
    return delta_e_b(Z, m, Part::WK, s).value;
  }
  throw DomainError("unknown diagram");
}

} // namespace

const char *to_string(Diagram d) {
  switch (d) {
  case Diagram::UehlA:
    return "uehl_a";
  case Diagram::UehlB:
    return "uehl_b";
  case Diagram::WKA:
    return "wk_a";
  case Diagram::WKB:
    return "wk_b";
  }
  return "?";
}

std::string describe(const nucleus::NuclearModel &m) {
  std::ostringstream os;
  switch (m.shape) {
  case nucleus::Shape::Point:
    return "point";
  case nucleus::Shape::Fermi:
    os << "fermi rms=" << m.rms_fm << " fm";
    break;
  case nucleus::Shape::Shell:
    os << "shell R=" << m.R_fm << " fm";
    break;
  }
  return os.str();
}

Ion make_ion(const nucleus::NuclearModel &m, const Settings &s) {
  Ion ion;
  if (s.cache_dir.empty())
    ion.spectrum = std::make_shared<const DiracSpectrum>(-1, m, s.basis);
  else
    ion.spectrum = cached_spectrum(s.cache_dir, -1, m, s.basis);
  ion.index = ion.spectrum->lowest_bound();
  ion.a = bound_1s(*ion.spectrum);
  return ion;
}

Orbital perturbed_orbital(const Ion &ion, const std::function<double(double)> &u) {
  const auto &r = ion.a.basis->nodes();
  const Eigen::VectorXd P = ion.a.P_at_nodes(), Q = ion.a.Q_at_nodes();
  std::vector<double> sP(r.size()), sQ(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double v = u(r[i]);
    sP[i] = v * P[i];
    sQ[i] = v * Q[i];
  }
  return ion.spectrum->reduced_green_apply(ion.a.energy, {ion.index}, sP, sQ);
}

std::function<double(double)> loop_potential(const nucleus::NuclearModel &m, Part p,
                                              const Settings &s) {
  if (p == Part::WK) {
    // the loop sees a shell of the same rms radius; the potential is
    // insensitive to the finer details of the charge distribution
    const nucleus::NuclearModel loop_model =
        m.shape == nucleus::Shape::Point ? m : nucleus::make_model(m.Z, m.rms_fm, nucleus::Shape::Shell);
    auto U = std::make_shared<const wk::WkPotential>(loop_model, s.wk);
    for (double x : {0.01, 0.1}) {
      const wk::KappaSeries k = U->series(x);
      if (!k.converged)
        throw ConvergenceError("kappa series of the potential not converged at x=" +
                                   std::to_string(x),
                               k.sum);
    }
    return [U](double r) { return (*U)(r); };
  }
  if (m.shape == nucleus::Shape::Point) {
    const double Z = m.Z;
    return [Z](double r) { return uehling::uehling_point(r, Z); };
  }
  auto t = std::make_shared<const uehling::PotentialTable>(
      uehling::extended_table(m, s.potential_points));
  return [t](double r) { return (*t)(r); };
}

Contribution delta_e_a(int Z, const nucleus::NuclearModel &m, Part p, const Settings &s) {
  const Ion ion = make_ion(m, s);
  Contribution c;
  c.Z = Z;
  c.diagram = p == Part::Uehling ? Diagram::UehlA : Diagram::WKA;
  c.value = labelled(Z, c.diagram, [&] {
    return to_eV(twobody::first_order_pair(ion.a, perturbed_orbital(ion, loop_potential(m, p, s))));
  });
  c.model = describe(m);
  return c;
}

Contribution delta_e_b(int Z, const nucleus::NuclearModel &m, Part p, const Settings &s) {
  const Ion ion = make_ion(m, s);
  Contribution c;
  c.Z = Z;
  c.model = describe(m);
  if (p == Part::Uehling) {
    c.diagram = Diagram::UehlB;
    c.value = twobody::uehling_b_matrix_element(ion.a);
  } else {
    c.diagram = Diagram::WKB;
    c.value = labelled(Z, c.diagram, [&] { return wk::wk_b_energy(ion.a, m.Z, s.wk); });
  }
  return c;
}

double rms_uncertainty(int Z, const nucleus::NuclearModel &m, Diagram d, const Settings &s) {
  if (m.shape == nucleus::Shape::Point)
    return 0.0;
  const double e0 = diagram_value(Z, m, d, s);
  const double e1 = diagram_value(Z, with_rms(m, 1.01 * m.rms_fm), d, s);
  return std::abs(e1 - e0);
}

Totals total(int Z, const nucleus::NuclearModel &m, const Settings &s) {
  Totals t;
  const Ion ion = make_ion(m, s);
  auto part_a = [&](Part p, Diagram d) {
    Contribution c;
    c.Z = Z;
    c.diagram = d;
    c.model = describe(m);
    c.value = labelled(Z, d, [&] {
      return to_eV(
          twobody::first_order_pair(ion.a, perturbed_orbital(ion, loop_potential(m, p, s))));
    });
    return c;
  };
  t.parts.push_back(part_a(Part::Uehling, Diagram::UehlA));
  Contribution ub;
  ub.Z = Z;
  ub.diagram = Diagram::UehlB;
  ub.model = describe(m);
  ub.value = twobody::uehling_b_matrix_element(ion.a);
  t.parts.push_back(ub);
  t.parts.push_back(part_a(Part::WK, Diagram::WKA));
  Contribution wb = ub;
  wb.diagram = Diagram::WKB;
  wb.value = labelled(Z, Diagram::WKB, [&] { return wk::wk_b_energy(ion.a, m.Z, s.wk); });
  t.parts.push_back(wb);

  t.parts[0].uncertainty = rms_uncertainty(Z, m, Diagram::UehlA, s);
  for (const auto &c : t.parts)
    t.total += c.value;
  t.uncertainty = t.parts[0].uncertainty;
  return t;
}

double vp_energy(double Z, const Settings &s) {
  const nucleus::NuclearModel m = nucleus::point_nucleus(Z);
  const Ion ion = make_ion(m, s);
  const wk::WkPotential U(Z, s.wk);
  return to_eV(expectation(ion.a, ion.a, [&](double r) {
    return uehling::uehling_point(r, Z) + U(r);
  }));
}

ControlReport control_table1(int Z, const Settings &s) {
  if (!(s.dz > 0.0) || s.dz >= Z)
    throw DomainError("control_table1: invalid difference step");
  const nucleus::NuclearModel m = nucleus::point_nucleus(Z);
  const Ion ion = make_ion(m, s);
  ControlReport r;
  r.Z = Z;
  const Orbital du = perturbed_orbital(ion, loop_potential(m, Part::Uehling, s));
  r.uehl_a = to_eV(2.0 * expectation(ion.a, du, external));
  r.uehl_b = to_eV(expectation(ion.a, ion.a, [&](double x) {
               return uehling::uehling_point(x, Z);
             })) /
             Z;
  r.wk_a = labelled(Z, Diagram::WKA, [&] {
    const Orbital dw = perturbed_orbital(ion, loop_potential(m, Part::WK, s));
    return to_eV(2.0 * expectation(ion.a, dw, external));
  });
  r.wk_b = labelled(Z, Diagram::WKB, [&] { return wk::wk_control_b(ion.a, Z, s.wk); });
  r.sum = r.uehl_a + r.uehl_b + r.wk_a + r.wk_b;

  auto central = [&](double h) { return (vp_energy(Z + h, s) - vp_energy(Z - h, s)) / (2.0 * h); };
  r.dedz_step = central(s.dz);
  r.dedz = (4.0 * central(0.5 * s.dz) - r.dedz_step) / 3.0;
  r.discrepancy = std::abs(std::abs(r.sum) - std::abs(r.dedz)) / std::abs(r.dedz);
  return r;
}

} // namespace vpscreen::assembly
