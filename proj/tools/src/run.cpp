#include "vpscreen_tools/run.hpp"

#include "vpscreen/constants.hpp"
#include "vpscreen/errors.hpp"
#include "vpscreen/twobody.hpp"
#include "vpscreen/uehling.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <thread>

namespace vpscreen::tools {

namespace {

struct Outcome {
  ReportRow row;
  assembly::ControlReport control;
  std::string text; // potentials and properties modes
  nlohmann::ordered_json props;
  std::exception_ptr error;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double mean(const Orbital &a, const std::function<double(double)> &u) {
  const auto &r = a.basis->nodes();
  const auto &w = a.basis->weights();
  const Eigen::VectorXd P = a.P_at_nodes(), Q = a.Q_at_nodes();
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    s += w[i] * (P[i] * P[i] + Q[i] * Q[i]) * u(r[i]);
  return s;
}

void potentials(const RunConfig &c, int Z, Outcome &o) {
  const nucleus::NuclearModel m = model_for(c, Z);
  std::ostringstream os;
  os.precision(17);
  os << "# Z=" << Z << " uehling " << assembly::describe(m) << "\n";
  if (m.shape == nucleus::Shape::Point) {
    const uehling::PotentialTable t(
        [Z](double r) { return uehling::uehling_point(r, Z); }, 1e-5, 20.0,
        c.settings.potential_points);
    t.dump(os);
  } else {
    uehling::extended_table(m, c.settings.potential_points).dump(os);
  }
  const wk::WkPotential U(Z, c.settings.wk);
  os << "# Z=" << Z << " wichmann-kroll point\n";
  for (double r : U.grid().nodes)
    os << r << ' ' << U(r) << '\n';
  o.text = os.str();
}

void properties(const RunConfig &c, int Z, Outcome &o) {
  const nucleus::NuclearModel m = model_for(c, Z);
  const assembly::Ion ion = assembly::make_ion(m, c.settings);
  const auto ue = assembly::loop_potential(m, assembly::Part::Uehling, c.settings);
  const auto wk = assembly::loop_potential(m, assembly::Part::WK, c.settings);
  auto &p = o.props;
  p["Z"] = Z;
  p["rms_fm"] = m.rms_fm;
  p["e1s_eV"] = to_eV(ion.a.energy - 1.0);
  p["pair_eV"] = to_eV(twobody::pair_energy(ion.a));
  p["uehling_1s_eV"] = to_eV(mean(ion.a, ue));
  p["wk_1s_eV"] = to_eV(mean(ion.a, wk));
}

void compute(const RunConfig &c, int Z, Outcome &o) {
  switch (c.mode) {
  case Mode::Table1:
    o.control = assembly::control_table1(Z, c.settings);
    break;
  case Mode::Table2: {
    const nucleus::NuclearModel m = model_for(c, Z);
    o.row = make_row(Z, m.rms_fm, assembly::total(Z, m, c.settings));
    break;
  }
  case Mode::Potentials:
    potentials(c, Z, o);
    break;
  case Mode::Properties:
    properties(c, Z, o);
    break;
  }
}

std::string emit_properties(const std::vector<Outcome> &res, Format f) {
  if (f == Format::Json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &o : res)
      arr.push_back(o.props);
    return arr.dump(2) + "\n";
  }
  std::ostringstream os;
  const char *keys[] = {"rms_fm", "e1s_eV", "pair_eV", "uehling_1s_eV", "wk_1s_eV"};
  if (f == Format::Csv) {
    os << "Z";
    for (const char *k : keys)
      os << ',' << k;
    os << '\n';
    for (const auto &o : res) {
      os << o.props["Z"].get<int>();
      for (const char *k : keys)
        os << ',' << g17(o.props[k].get<double>());
      os << '\n';
    }
    return os.str();
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%4s %8s %14s %12s %12s %12s\n", "Z", "rms(fm)", "E1s(eV)",
                "pair(eV)", "<Uehl>(eV)", "<WK>(eV)");
  os << buf;
  for (const auto &o : res) {
    std::snprintf(buf, sizeof buf, "%4d %8.3f %14.4f %12.5f %12.5f %12.6f\n",
                  o.props["Z"].get<int>(), o.props["rms_fm"].get<double>(),
                  o.props["e1s_eV"].get<double>(), o.props["pair_eV"].get<double>(),
                  o.props["uehling_1s_eV"].get<double>(), o.props["wk_1s_eV"].get<double>());
    os << buf;
  }
  return os.str();
}

} // namespace

void validate(const RunConfig &c) {
  if (c.z_list.empty())
    throw DomainError("z: at least one nuclear charge is required");
  for (int Z : c.z_list)
    if (Z < 1 || Z > 137)
      throw DomainError("z: " + std::to_string(Z) + " outside 1..137");
  if (c.settings.wk.kappa_max < 1)
    throw DomainError("kappa-max must be at least 1");
  if (c.rms_fm && !(*c.rms_fm > 0.0) && c.shape != nucleus::Shape::Point)
    throw DomainError("rms must be positive");
  if (c.settings.basis.n_splines < 10 || c.settings.basis.order < 2)
    throw DomainError("splines must be at least 10 and order at least 2");
  if (c.settings.basis.r_max < 0.0)
    throw DomainError("rmax must not be negative");
  if (!(c.settings.wk.rel_tol > 0.0))
    throw DomainError("tol must be positive");
  if (c.threads < 1)
    throw DomainError("threads must be at least 1");
}

nucleus::NuclearModel model_for(const RunConfig &c, int Z) {
  if (c.shape == nucleus::Shape::Point)
    return nucleus::point_nucleus(Z);
  const double rms = c.rms_fm ? *c.rms_fm : nucleus::default_rms_fm(Z);
  return nucleus::make_model(Z, rms, c.shape);
}

int run(const RunConfig &c, std::ostream &out, std::ostream &err) {
  try {
    validate(c);
    for (int Z : c.z_list)
      if (c.mode != Mode::Table1)
        model_for(c, Z);
  } catch (const DomainError &e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  const int n = static_cast<int>(c.z_list.size());
  std::vector<Outcome> res(n);
  RunConfig inner = c;
  if (c.threads > 1 && n > 1)
    inner.settings.wk.threads = 1;
  else
    inner.settings.wk.threads = c.threads;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      if (c.verbose)
        err << "computing Z=" << c.z_list[i] << "\n";
      try {
        compute(inner, c.z_list[i], res[i]);
      } catch (...) {
        res[i].error = std::current_exception();
      }
    }
  };
  const int pool_size = std::min(c.threads, n);
  if (pool_size <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < pool_size; ++t)
      pool.emplace_back(worker);
    for (auto &t : pool)
      t.join();
  }

  int status = kSuccess;
  for (int i = 0; i < n; ++i) {
    if (!res[i].error)
      continue;
    try {
      std::rethrow_exception(res[i].error);
    } catch (const ConvergenceError &e) {
      const std::string what = e.what();
      err << "convergence failure: "
          << (what.rfind("Z=", 0) == 0 ? "" : "Z=" + std::to_string(c.z_list[i]) + " ") << what
          << " (best estimate " << e.best_estimate() << ")\n";
      status = std::max(status, static_cast<int>(kConvergenceFailure));
    } catch (const DomainError &e) {
      err << "config error at Z=" << c.z_list[i] << ": " << e.what() << "\n";
      status = kConfigError;
    } catch (const std::exception &e) {
      err << "failure at Z=" << c.z_list[i] << ": " << e.what() << "\n";
      status = std::max(status, static_cast<int>(kConvergenceFailure));
    }
  }
  if (status != kSuccess)
    return status;

  switch (c.mode) {
  case Mode::Table1: {
    std::vector<assembly::ControlReport> rows;
    for (const auto &o : res)
      rows.push_back(o.control);
    out << emit_controls(rows, c.format);
    break;
  }
  case Mode::Table2: {
    std::vector<ReportRow> rows;
    for (const auto &o : res)
      rows.push_back(o.row);
    out << emit(rows, c.format);
    break;
  }
  case Mode::Potentials:
    for (const auto &o : res)
      out << o.text;
    break;
  case Mode::Properties:
    out << emit_properties(res, c.format);
    break;
  }
  return kSuccess;
}

} // namespace vpscreen::tools
