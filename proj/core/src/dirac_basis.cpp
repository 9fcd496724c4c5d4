#include "vpscreen/dirac_basis.hpp"
#include "vpscreen/constants.hpp"
#include "vpscreen/errors.hpp"
#include "vpscreen/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace vpscreen {

BasisParams resolved(const BasisParams &p, double Z) {
  BasisParams r = p;
  if (r.r_max <= 0.0)
    r.r_max = 40.0 / (kAlpha * std::max(Z, 1.0));
  return r;
}

DkbBasis::DkbBasis(int kappa, const BasisParams &p, double Z)
    : m_kappa(kappa), m_n(0),
      m_set(exponential_breaks(p.r_first, resolved(p, Z).r_max,
                               p.n_splines - p.order + 1),
            p.order) {
  if (kappa == 0)
    throw DomainError("DkbBasis: kappa must be non-zero");
  if (p.n_splines < 30 || p.order < 6)
    throw DomainError("DkbBasis: need at least 30 splines of order >= 6");
  const int N = m_set.size();
  m_n = N - 2;
  const auto &br = m_set.breaks();
  const quad::QuadratureRule g = quad::gauss_legendre(p.order + p.extra_nodes);
  for (std::size_t k = 0; k + 1 < br.size(); ++k) {
    const double c = 0.5 * (br[k] + br[k + 1]), hw = 0.5 * (br[k + 1] - br[k]);
    for (std::size_t i = 0; i < g.size(); ++i) {
      m_nodes.push_back(c + hw * g.nodes[i]);
      m_weights.push_back(hw * g.weights[i]);
    }
  }
  const int nq = static_cast<int>(m_nodes.size());
  const int M = 2 * m_n;
  m_P = Eigen::MatrixXd::Zero(nq, M);
  m_Q = Eigen::MatrixXd::Zero(nq, M);
  m_dP = Eigen::MatrixXd::Zero(nq, M);
  m_dQ = Eigen::MatrixXd::Zero(nq, M);
  std::array<std::vector<double>, 3> b;
  const double kap = kappa;
  for (int q = 0; q < nq; ++q) {
    const double r = m_nodes[q];
    const int first = m_set.evaluate(r, b);
    for (int j = 0; j < p.order; ++j) {
      const int s = first + j; // spline index
      if (s < 1 || s > N - 2)
        continue;
      const int i = s - 1;
      const double B = b[0][j], dB = b[1][j], ddB = b[2][j];
      m_P(q, i) = B;
      m_Q(q, i) = 0.5 * (dB + kap * B / r);
      m_dP(q, i) = dB;
      m_dQ(q, i) = 0.5 * (ddB + kap * dB / r - kap * B / (r * r));
      m_P(q, m_n + i) = 0.5 * (dB - kap * B / r);
      m_Q(q, m_n + i) = B;
      m_dP(q, m_n + i) = 0.5 * (ddB - kap * dB / r + kap * B / (r * r));
      m_dQ(q, m_n + i) = dB;
    }
  }
}

std::pair<double, double> DkbBasis::evaluate(const Eigen::VectorXd &c, double r) const {
  if (r <= 0.0 || r >= r_max())
    return {0.0, 0.0};
  std::array<std::vector<double>, 3> b;
  const int first = m_set.evaluate(r, b);
  const int N = m_set.size();
  double P = 0.0, Q = 0.0;
  for (int j = 0; j < m_set.order(); ++j) {
    const int s = first + j;
    if (s < 1 || s > N - 2)
      continue;
    const int i = s - 1;
    const double B = b[0][j], dB = b[1][j];
    P += c[i] * B + c[m_n + i] * 0.5 * (dB - m_kappa * B / r);
    Q += c[i] * 0.5 * (dB + m_kappa * B / r) + c[m_n + i] * B;
  }
  return {P, Q};
}

quad::RadialGrid DkbBasis::grid() const {
  const int per = static_cast<int>(m_nodes.size() / (m_set.breaks().size() - 1));
  return quad::grid_from_breaks(m_set.breaks(), per);
}

Eigen::MatrixXd DkbBasis::overlap() const {
  const Eigen::Map<const Eigen::VectorXd> w(m_weights.data(), m_weights.size());
  return m_P.transpose() * w.asDiagonal() * m_P + m_Q.transpose() * w.asDiagonal() * m_Q;
}

Eigen::MatrixXd DkbBasis::hamiltonian(const std::vector<double> &v) const {
  const int nq = static_cast<int>(m_nodes.size());
  Eigen::VectorXd wp(nq), wm(nq), w(nq), wk(nq);
  for (int q = 0; q < nq; ++q) {
    w[q] = m_weights[q];
    wp[q] = m_weights[q] * (v[q] + 1.0);
    wm[q] = m_weights[q] * (v[q] - 1.0);
    wk[q] = m_weights[q] * m_kappa / m_nodes[q];
  }
  Eigen::MatrixXd H = m_P.transpose() * wp.asDiagonal() * m_P +
                      m_Q.transpose() * wm.asDiagonal() * m_Q;
  H += m_P.transpose() * (wk.asDiagonal() * m_Q - w.asDiagonal() * m_dQ);
  H += m_Q.transpose() * (wk.asDiagonal() * m_P + w.asDiagonal() * m_dP);
  return 0.5 * (H + H.transpose());
}

int Orbital::nodes_of_P() const {
  const double r0 = basis->splines().breaks()[1];
  const double r1 = basis->r_max();
  const int n = 4000;
  std::vector<double> p(n);
  double pmax = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = r0 * std::pow(r1 / r0, (i + 0.5) / n);
    p[i] = (*this)(r).first;
    pmax = std::max(pmax, std::abs(p[i]));
  }
  int count = 0, last = 0;
  for (double v : p) {
    if (std::abs(v) < 1e-4 * pmax)
      continue;
    const int s = v > 0 ? 1 : -1;
    if (last != 0 && s != last)
      ++count;
    last = s;
  }
  return count;
}

namespace {

void fix_signs(const DkbBasis &b, Eigen::MatrixXd &vecs) {
  // P positive at the first node where it is appreciable
  for (int n = 0; n < vecs.cols(); ++n) {
    const Eigen::VectorXd p = b.basis_P() * vecs.col(n);
    const double pmax = p.cwiseAbs().maxCoeff();
    for (int q = 0; q < p.size(); ++q) {
      if (std::abs(p[q]) > 1e-3 * pmax) {
        if (p[q] < 0.0)
          vecs.col(n) *= -1.0;
        break;
      }
    }
  }
}

} // namespace

DiracSpectrum::DiracSpectrum(int kappa, const nucleus::NuclearModel &model,
                             const BasisParams &params)
    : m_model(model), m_params(resolved(params, model.Z)) {
  auto basis = std::make_shared<DkbBasis>(kappa, m_params, model.Z);
  std::vector<double> v(basis->nodes().size());
  for (std::size_t q = 0; q < v.size(); ++q)
    v[q] = nucleus::potential(model, basis->nodes()[q]);
  const Eigen::MatrixXd H = basis->hamiltonian(v);
  const Eigen::MatrixXd S = basis->overlap();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(H, S);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("DiracSpectrum: generalized eigensolver failed", 0.0);
  m_energies = es.eigenvalues();
  m_vectors = es.eigenvectors();
  fix_signs(*basis, m_vectors);
  m_basis = std::move(basis);
}

DiracSpectrum::DiracSpectrum(const nucleus::NuclearModel &model,
                             const BasisParams &params,
                             std::shared_ptr<const DkbBasis> basis,
                             Eigen::VectorXd energies, Eigen::MatrixXd vectors)
    : m_model(model), m_params(resolved(params, model.Z)), m_basis(std::move(basis)),
      m_energies(std::move(energies)), m_vectors(std::move(vectors)) {}

Orbital DiracSpectrum::state(int n) const {
  if (n < 0 || n >= size())
    throw DomainError("DiracSpectrum::state: index out of range");
  return Orbital{m_basis, m_vectors.col(n), kappa(), m_energies[n]};
}

int DiracSpectrum::lowest_bound() const {
  for (int n = 0; n < size(); ++n)
    if (m_energies[n] > -1.0)
      return n;
  throw DomainError("DiracSpectrum: no state above the negative continuum");
}

Eigen::VectorXd DiracSpectrum::project(const std::vector<double> &sP,
                                       const std::vector<double> &sQ) const {
  const auto &w = m_basis->weights();
  const int nq = static_cast<int>(w.size());
  if (static_cast<int>(sP.size()) != nq || static_cast<int>(sQ.size()) != nq)
    throw DomainError("DiracSpectrum::project: source must be given at the nodes");
  Eigen::VectorXd wp(nq), wq(nq);
  for (int q = 0; q < nq; ++q) {
    wp[q] = w[q] * sP[q];
    wq[q] = w[q] * sQ[q];
  }
  const Eigen::VectorXd b =
      m_basis->basis_P().transpose() * wp + m_basis->basis_Q().transpose() * wq;
  return m_vectors.transpose() * b;
}

Orbital DiracSpectrum::reduced_green_apply(double e_ref, const std::vector<int> &exclude,
                                           const std::vector<double> &sP,
                                           const std::vector<double> &sQ) const {
  Eigen::VectorXd proj = project(sP, sQ);
  for (int n = 0; n < size(); ++n) {
    if (std::find(exclude.begin(), exclude.end(), n) != exclude.end()) {
      proj[n] = 0.0;
      continue;
    }
    const double de = e_ref - m_energies[n];
    if (std::abs(de) < 1e-12)
      throw PoleError("reduced_green_apply: state degenerate with the reference "
                      "energy is not in the exclusion set");
    proj[n] /= de;
  }
  return Orbital{m_basis, m_vectors * proj, kappa(), e_ref};
}

Orbital bound_1s(const DiracSpectrum &s) {
  if (s.kappa() != -1)
    throw DomainError("bound_1s: spectrum must have kappa = -1");
  Orbital o = s.state(s.lowest_bound());
  if (o.energy >= 1.0 || o.nodes_of_P() != 0)
    throw DomainError("bound_1s: lowest state is not a nodeless bound state");
  return o;
}

double sommerfeld_energy(int n, int kappa, double Z) {
  const int ak = std::abs(kappa);
  if (n < 1 || ak > n || (kappa > 0 && ak == n))
    throw DomainError("sommerfeld_energy: invalid quantum numbers");
  const double az = kAlpha * Z;
  const double gamma = std::sqrt(kappa * kappa - az * az);
  const double d = (n - ak) + gamma;
  return 1.0 / std::sqrt(1.0 + az * az / (d * d));
}

namespace {

std::string hexf(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

std::uint64_t fnv1a(const std::string &s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace

std::string spectrum_cache_key(int kappa, const nucleus::NuclearModel &m,
                               const BasisParams &params) {
  const BasisParams p = resolved(params, m.Z);
  std::ostringstream os;
  os << "kappa=" << kappa << " Z=" << hexf(m.Z) << " shape=" << static_cast<int>(m.shape)
     << " c=" << hexf(m.c_fm) << " a=" << hexf(m.a_fm) << " R=" << hexf(m.R_fm)
     << " N=" << p.n_splines << " k=" << p.order << " rf=" << hexf(p.r_first)
     << " rm=" << hexf(p.r_max) << " x=" << p.extra_nodes;
  return os.str();
}

std::shared_ptr<const DiracSpectrum>
cached_spectrum(const std::string &cache_dir, int kappa,
                const nucleus::NuclearModel &model, const BasisParams &params) {
  if (cache_dir.empty())
    return std::make_shared<const DiracSpectrum>(kappa, model, params);
  namespace fs = std::filesystem;
  const std::string key = spectrum_cache_key(kappa, model, params);
  char name[40];
  std::snprintf(name, sizeof name, "spectrum_%016llx.txt",
                static_cast<unsigned long long>(fnv1a(key)));
  const fs::path file = fs::path(cache_dir) / name;

  // Layout: line 1 "vpscreen-spectrum 1", line 2 the key, line 3 the
  // dimension M, then M energies and M*M eigenvector entries (column-major),
  // one hexadecimal float per line.
  if (std::ifstream in{file}) {
    std::string magic, stored_key;
    std::getline(in, magic);
    std::getline(in, stored_key);
    int M = 0;
    in >> M;
    if (magic == "vpscreen-spectrum 1" && stored_key == key && M > 0) {
      auto basis = std::make_shared<DkbBasis>(kappa, resolved(params, model.Z), model.Z);
      if (basis->size() == M) {
        Eigen::VectorXd e(M);
        Eigen::MatrixXd v(M, M);
        std::string tok;
        bool ok = true;
        for (int i = 0; i < M && ok; ++i)
          ok = static_cast<bool>(in >> tok) && (e[i] = std::strtod(tok.c_str(), nullptr), true);
        for (int i = 0; i < M * M && ok; ++i)
          ok = static_cast<bool>(in >> tok) &&
               (v.data()[i] = std::strtod(tok.c_str(), nullptr), true);
        if (ok)
          return std::make_shared<const DiracSpectrum>(model, params, std::move(basis),
                                                       std::move(e), std::move(v));
      }
    }
  }
  auto s = std::make_shared<const DiracSpectrum>(kappa, model, params);
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out{tmp};
    if (!out)
      return s;
    const int M = s->size();
    out << "vpscreen-spectrum 1\n" << key << "\n" << M << "\n";
    for (int i = 0; i < M; ++i)
      out << hexf(s->energies()[i]) << "\n";
    for (int i = 0; i < M * M; ++i)
      out << hexf(s->vectors().data()[i]) << "\n";
  }
  fs::rename(tmp, file, ec);
  return s;
}

} // namespace vpscreen
