#include "costress/galerkin.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "costress/errors.hpp"
#include "costress/quadrature.hpp"

namespace costress {

namespace {

using Poly = std::vector<double>;

Poly multiply(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// P_a(2t - 1), a < n.
std::vector<Poly> shifted_legendre(int n) {
  std::vector<Poly> p;
  p.push_back({1.0});
  if (n > 1) p.push_back({-1.0, 2.0});
  for (int k = 1; k + 1 < n; ++k) {
    const Poly x = multiply(p[k], {-1.0, 2.0});
    Poly next(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) next[i] = (2.0 * k + 1.0) * x[i];
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) next[i] -= k * p[k - 1][i];
    for (double& c : next) c /= (k + 1.0);
    p.push_back(next);
  }
  p.resize(n);
  return p;
}

void with_weight(int n, const Poly& weight, std::vector<std::vector<double>>& out) {
  for (const Poly& p : shifted_legendre(n)) out.push_back(multiply(weight, p));
}

struct ScalarJet {
  double v = 0.0;
  Vec3 g;
  Mat3 h;
};

// Values and derivatives (up to second order) of every tensor-product scalar
// mode at one quadrature point, in physical coordinates.
class PointTable {
 public:
  PointTable(const BasisSpec& basis, int order) : basis_(basis), modes_(basis.modes()) {
    m_ = modes_.size();
    for (int d = 0; d < 3; ++d) {
      len_[d] = basis.domain.hi[d] - basis.domain.lo[d];
      rules_[d] = gauss_legendre(order, 0.0, 1.0);
      tables_[d].resize(rules_[d].size() * m_ * 3);
      for (std::size_t q = 0; q < rules_[d].size(); ++q)
        for (int a = 0; a < m_; ++a)
          for (int k = 0; k < 3; ++k)
            tables_[d][(q * m_ + a) * 3 + k] =
                modes_.eval(a, k, rules_[d].nodes[q]) / std::pow(len_[d], k);
    }
  }

  int nodes() const { return static_cast<int>(rules_[0].size()); }
  int modes() const { return m_; }

  Vec3 point(int i, int j, int k) const {
    const int idx[3] = {i, j, k};
    Vec3 x;
    for (int d = 0; d < 3; ++d) x[d] = basis_.domain.lo[d] + len_[d] * rules_[d].nodes[idx[d]];
    return x;
  }

  double weight(int i, int j, int k) const {
    return rules_[0].weights[i] * rules_[1].weights[j] * rules_[2].weights[k] * len_[0] *
           len_[1] * len_[2];
  }

  void jets(int i, int j, int k, std::vector<ScalarJet>& out) const {
    out.resize(static_cast<std::size_t>(m_) * m_ * m_);
    const int idx[3] = {i, j, k};
    std::size_t s = 0;
    for (int a = 0; a < m_; ++a)
      for (int b = 0; b < m_; ++b)
        for (int c = 0; c < m_; ++c, ++s) {
          const int md[3] = {a, b, c};
          double f[3][3];
          for (int d = 0; d < 3; ++d)
            for (int r = 0; r < 3; ++r) f[d][r] = tables_[d][(idx[d] * m_ + md[d]) * 3 + r];
          ScalarJet& J = out[s];
          J.v = f[0][0] * f[1][0] * f[2][0];
          J.g = {f[0][1] * f[1][0] * f[2][0], f[0][0] * f[1][1] * f[2][0],
                 f[0][0] * f[1][0] * f[2][1]};
          for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
              int order[3] = {0, 0, 0};
              ++order[p];
              ++order[q];
              J.h(p, q) = f[0][order[0]] * f[1][order[1]] * f[2][order[2]];
            }
        }
  }

 private:
  BasisSpec basis_;
  ModeSet1D modes_;
  int m_ = 0;
  double len_[3];
  Rule1D rules_[3];
  std::vector<double> tables_[3];
};

// Kinematic quantities of the vector mode s * e_comp.
struct VectorModeJet {
  Vec3 value;
  Mat3 grad;
  Mat3 grad_curl;
};

VectorModeJet vector_mode(const ScalarJet& s, int comp) {
  VectorModeJet m;
  m.value[comp] = s.v;
  ThirdOrder hess;
  for (int j = 0; j < 3; ++j) {
    m.grad(comp, j) = s.g[j];
    for (int k = 0; k < 3; ++k) hess(comp, j, k) = s.h(j, k);
  }
  m.grad_curl = grad_curl_from_hess(hess);
  return m;
}

void put(Eigen::MatrixXd& F, int row, int col, const Mat3& m, double scale) {
  for (int r = 0; r < 9; ++r) F(row + r, col) = scale * m.c[r];
}

void put(Eigen::MatrixXd& F, int row, int col, const Vec3& v, double scale) {
  for (int r = 0; r < 3; ++r) F(row + r, col) = scale * v[r];
}

Eigen::MatrixXd full(const Eigen::MatrixXd& lower) {
  Eigen::MatrixXd m = lower.selfadjointView<Eigen::Lower>();
  return m;
}

int checked_order(const BasisSpec& basis, int requested) {
  const int need = required_quadrature_order(basis);
  if (requested == 0) return need;
  if (requested < need) {
    std::ostringstream msg;
    msg << "quadrature order " << requested << " cannot integrate the stiffness exactly for N = "
        << basis.N << "; at least " << need << " is required";
    throw QuadratureOrderError(msg.str(), need);
  }
  return requested;
}

double smallest_eigenvalue(const Eigen::MatrixXd& K) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

// ---------------------------------------------------------------------------

ModeSet1D ModeSet1D::clamped(int n) {
  if (n < 1) throw InvalidArgument("ModeSet1D: need at least one mode");
  ModeSet1D m;
  with_weight(n, {0.0, 0.0, 1.0, -2.0, 1.0}, m.coeffs_);
  return m;
}

ModeSet1D ModeSet1D::bubble(int n) {
  if (n < 1) throw InvalidArgument("ModeSet1D: need at least one mode");
  ModeSet1D m;
  with_weight(n, {0.0, 1.0, -1.0}, m.coeffs_);
  return m;
}

int ModeSet1D::degree() const {
  int d = 0;
  for (const auto& c : coeffs_) d = std::max(d, static_cast<int>(c.size()) - 1);
  return d;
}

double ModeSet1D::eval(int a, int k, double t) const {
  const Poly& c = coeffs_[a];
  double r = 0.0;
  for (int i = static_cast<int>(c.size()) - 1; i >= k; --i) {
    double f = 1.0;
    for (int m = 0; m < k; ++m) f *= static_cast<double>(i - m);
    r = r * t + f * c[i];
  }
  return r;
}

ModeSet1D BasisSpec::modes() const {
  if (family == "clamped") return ModeSet1D::clamped(N);
  if (family == "bubble") return ModeSet1D::bubble(N);
  throw InvalidArgument("unknown basis family '" + family + "'");
}

void BasisSpec::validate() const {
  if (N < 1) throw InvalidArgument("basis: N must be at least 1");
  if (N > 8) throw InvalidArgument("basis: N above 8 is outside the dense-solver range");
  for (int d = 0; d < 3; ++d)
    if (!(domain.hi[d] > domain.lo[d])) throw InvalidArgument("basis: empty domain box");
  modes();
}

// ---------------------------------------------------------------------------

GalerkinField::GalerkinField(BasisSpec basis, Eigen::VectorXd coeffs)
    : DisplacementField("galerkin"),
      basis_(std::move(basis)),
      modes_(basis_.modes()),
      coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != basis_.size())
    throw InvalidArgument("GalerkinField: coefficient count does not match the basis");
  set_domain(basis_.domain);
}

double GalerkinField::partial(int component, const MultiIndex& alpha, const Vec3& x) const {
  const int m = modes_.size();
  double f[3][16];
  for (int d = 0; d < 3; ++d) {
    const double len = basis_.domain.hi[d] - basis_.domain.lo[d];
    const double t = (x[d] - basis_.domain.lo[d]) / len;
    const double scale = std::pow(len, -alpha[d]);
    for (int a = 0; a < m; ++a) f[d][a] = scale * modes_.eval(a, alpha[d], t);
  }
  const int base = component * m * m * m;
  double s = 0.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const double fab = f[0][a] * f[1][b];
      for (int c = 0; c < m; ++c) s += coeffs_(base + (a * m + b) * m + c) * fab * f[2][c];
    }
  return s;
}

Vec3 GalerkinField::value(const Vec3& x) const {
  return {partial(0, {0, 0, 0}, x), partial(1, {0, 0, 0}, x), partial(2, {0, 0, 0}, x)};
}

// ---------------------------------------------------------------------------

int required_quadrature_order(const BasisSpec& basis) { return basis.mode_degree() + 1; }

namespace {

enum class CurvaturePath { SymSkw, CurlCurl };

GalerkinSystem assemble_impl(const MaterialParams& params, const BasisSpec& basis,
                             const LoadData& load, int quadrature_order, CurvaturePath path) {
  params.validate();
  basis.validate();
  const int q = checked_order(basis, quadrature_order);
  const PointTable table(basis, q);
  const int ms = basis.scalar_size();
  const int n = basis.size();

  const double k = params.curvature_modulus();
  const double mu = params.mu, lam = params.lambda;

  GalerkinSystem sys;
  sys.params = params;
  sys.basis = basis;
  sys.quadrature_order = q;
  Eigen::MatrixXd Kel = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd Kcv = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  sys.load = Eigen::VectorXd::Zero(n);

  Eigen::MatrixXd Fsym(9, n), Ftr(1, n), Fcurv(path == CurvaturePath::SymSkw ? 18 : 3, n),
      Fval(3, n);
  std::vector<ScalarJet> jets;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int l = 0; l < q; ++l) {
        table.jets(i, j, l, jets);
        const double w = table.weight(i, j, l);
        const Vec3 x = table.point(i, j, l);
        Fsym.setZero();
        Ftr.setZero();
        Fcurv.setZero();
        Fval.setZero();
        for (int comp = 0; comp < 3; ++comp)
          for (int s = 0; s < ms; ++s) {
            const int col = comp * ms + s;
            const VectorModeJet v = vector_mode(jets[s], comp);
            Fval(comp, col) = v.value[comp];
            if (path == CurvaturePath::SymSkw) {
              put(Fsym, 0, col, dev(sym(v.grad)), std::sqrt(2.0 * mu));
              Ftr(0, col) = tr(v.grad);
              put(Fcurv, 0, col, sym(v.grad_curl), std::sqrt(0.5 * k * params.alpha1));
              put(Fcurv, 9, col, skw(v.grad_curl), std::sqrt(0.5 * k * params.alpha2));
            } else {
              put(Fsym, 0, col, sym(v.grad), std::sqrt(2.0 * mu));
              Ftr(0, col) = tr(v.grad);
              put(Fcurv, 0, col, curl_from_grad(v.grad_curl), std::sqrt(0.5 * k * params.alpha1));
            }
          }
        const double bulk = path == CurvaturePath::SymSkw ? (2.0 * mu + 3.0 * lam) / 3.0 : lam;
        Kel.selfadjointView<Eigen::Lower>().rankUpdate(Fsym.transpose(), w);
        Kel.selfadjointView<Eigen::Lower>().rankUpdate(Ftr.transpose(), w * bulk);
        Kcv.selfadjointView<Eigen::Lower>().rankUpdate(Fcurv.transpose(), w);
        M.selfadjointView<Eigen::Lower>().rankUpdate(Fval.transpose(), w);
        if (load.f) {
          const Vec3 f = load.f->value(x);
          for (int comp = 0; comp < 3; ++comp)
            if (f[comp] != 0.0)
              sys.load.segment(comp * ms, ms) += (w * f[comp]) * Fval.row(comp).segment(comp * ms, ms).transpose();
        }
      }
  sys.elastic_block = full(Kel);
  sys.curvature_block = full(Kcv);
  sys.stiffness = sys.elastic_block + sys.curvature_block;
  sys.mass = full(M);
  return sys;
}

}  // namespace

GalerkinSystem assemble(const MaterialParams& params, const BasisSpec& basis, const LoadData& load,
                        int quadrature_order) {
  return assemble_impl(params, basis, load, quadrature_order, CurvaturePath::SymSkw);
}

GalerkinSystem assemble_curl_curl(const MaterialParams& params, const BasisSpec& basis,
                                  const LoadData& load, int quadrature_order) {
  if (params.alpha1 != params.alpha2)
    throw InvalidArgument("assemble_curl_curl: requires alpha1 == alpha2");
  return assemble_impl(params, basis, load, quadrature_order, CurvaturePath::CurlCurl);
}

Eigen::VectorXd assemble_load(const BasisSpec& basis, const DisplacementField& f,
                              int quadrature_order) {
  basis.validate();
  const int q = checked_order(basis, quadrature_order);
  const PointTable table(basis, q);
  const int ms = basis.scalar_size();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(basis.size());
  std::vector<ScalarJet> jets;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int l = 0; l < q; ++l) {
        table.jets(i, j, l, jets);
        const double w = table.weight(i, j, l);
        const Vec3 fx = f.value(table.point(i, j, l));
        for (int comp = 0; comp < 3; ++comp)
          for (int s = 0; s < ms; ++s) b(comp * ms + s) += w * fx[comp] * jets[s].v;
      }
  return b;
}

Solution solve(const GalerkinSystem& system) { return solve(system, system.load); }

Solution solve(const GalerkinSystem& system, const Eigen::VectorXd& rhs) {
  const Eigen::LLT<Eigen::MatrixXd> llt(system.stiffness);
  if (llt.info() != Eigen::Success) {
    const double ev = smallest_eigenvalue(system.stiffness);
    std::ostringstream msg;
    msg << "stiffness is not positive definite (smallest eigenvalue " << ev << ")";
    throw WellPosednessError(msg.str(), ev);
  }
  Solution s;
  s.coeffs = llt.solve(rhs);
  const double bn = rhs.norm();
  const double rn = (system.stiffness * s.coeffs - rhs).norm();
  s.relative_residual = bn > 0.0 ? rn / bn : rn;
  return s;
}

CoercivityEvidence coercivity_evidence(const GalerkinSystem& system, int max_iterations,
                                       double tol) {
  const Eigen::MatrixXd& K = system.stiffness;
  const Eigen::MatrixXd& M = system.mass;
  CoercivityEvidence ev;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(K);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      (ldlt.vectorD().array() <= 0.0).any()) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(K, M, Eigen::EigenvaluesOnly);
    ev.lambda_min = ges.eigenvalues()(0);
    ev.positive = ev.lambda_min > 0.0;
    ev.converged = true;
    return ev;
  }
  SeededRng rng(1);
  Eigen::VectorXd x(K.rows());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = rng.uniform(-1.0, 1.0);
  x /= std::sqrt(x.dot(M * x));
  double lambda = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    const Eigen::VectorXd Mx = M * x;
    Eigen::VectorXd y = ldlt.solve(Mx);
    const double yMy = y.dot(M * y);
    const double next = y.dot(Mx) / yMy;
    x = y / std::sqrt(yMy);
    ev.iterations = it;
    if (it > 1 && std::abs(next - lambda) <= tol * std::abs(next)) {
      lambda = next;
      ev.converged = true;
      break;
    }
    lambda = next;
  }
  ev.lambda_min = lambda;
  ev.positive = lambda > 0.0;
  return ev;
}

double korn_constant(const BasisSpec& basis) {
  basis.validate();
  const int q = required_quadrature_order(basis);
  const PointTable table(basis, q);
  const int ms = basis.scalar_size();
  const int n = basis.size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n), S = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd Fg(9, n), Fs(9, n);
  std::vector<ScalarJet> jets;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int l = 0; l < q; ++l) {
        table.jets(i, j, l, jets);
        const double w = table.weight(i, j, l);
        Fg.setZero();
        Fs.setZero();
        for (int comp = 0; comp < 3; ++comp)
          for (int s = 0; s < ms; ++s) {
            Mat3 g;
            for (int d = 0; d < 3; ++d) g(comp, d) = jets[s].g[d];
            put(Fg, 0, comp * ms + s, g, 1.0);
            put(Fs, 0, comp * ms + s, sym(g), 1.0);
          }
        A.selfadjointView<Eigen::Lower>().rankUpdate(Fg.transpose(), w);
        S.selfadjointView<Eigen::Lower>().rankUpdate(Fs.transpose(), w);
      }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(full(A), full(S),
                                                                 Eigen::EigenvaluesOnly);
  if (ges.info() != Eigen::Success) throw ConvergenceError("korn_constant: eigensolver failed");
  return std::sqrt(ges.eigenvalues().maxCoeff());
}

double energy_of(const MaterialParams& params, const BasisSpec& basis, const Eigen::VectorXd& coeffs,
                 const LoadData& load, int quadrature_order) {
  const int q = checked_order(basis, quadrature_order);
  const GalerkinField u(basis, coeffs);
  const Rule1D r[3] = {gauss_legendre(q, basis.domain.lo[0], basis.domain.hi[0]),
                       gauss_legendre(q, basis.domain.lo[1], basis.domain.hi[1]),
                       gauss_legendre(q, basis.domain.lo[2], basis.domain.hi[2])};
  CompensatedSum e;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int l = 0; l < q; ++l) {
        const Vec3 x{r[0].nodes[i], r[1].nodes[j], r[2].nodes[l]};
        const double w = r[0].weights[i] * r[1].weights[j] * r[2].weights[l];
        const Jet jet = u.jet(x, 2);
        double density = w_lin(params, jet.grad).lame +
                         w_curv(params, grad_curl_from_hess(jet.hess)).sym_skw;
        if (load.f) density -= dot(load.f->value(x), jet.value);
        e.add(w * density);
      }
  return e.value();
}

double quadratic_energy(const GalerkinSystem& system, const Eigen::VectorXd& c) {
  return 0.5 * c.dot(system.stiffness * c) - system.load.dot(c);
}

double l2_norm(const GalerkinSystem& system, const Eigen::VectorXd& c) {
  return std::sqrt(std::max(0.0, c.dot(system.mass * c)));
}

// ---------------------------------------------------------------------------

BasisSpec microrotation_basis(const BasisSpec& basis_u) {
  BasisSpec b = basis_u;
  b.family = "bubble";
  b.N = basis_u.N + 2;
  return b;
}

CosseratSolution cosserat_solve(const MaterialParams& params, const BasisSpec& basis_u,
                                const LoadData& load, int quadrature_order) {
  params.validate();
  basis_u.validate();
  if (!(params.mu_c > 0.0)) {
    std::ostringstream msg;
    msg << "mu_c = " << params.mu_c
        << " leaves the microrotation block degenerate; a positive couple modulus is required";
    throw DegeneracyError(msg.str());
  }
  if (basis_u.family != "clamped")
    throw InvalidArgument("cosserat_solve: displacement basis must be clamped");
  const BasisSpec basis_a = microrotation_basis(basis_u);
  const int q = std::max(checked_order(basis_u, quadrature_order),
                         required_quadrature_order(basis_a));
  const PointTable tu(basis_u, q), ta(basis_a, q);
  const int mu_s = basis_u.scalar_size(), ma_s = basis_a.scalar_size();
  const int nu = basis_u.size(), na = basis_a.size(), n = nu + na;

  const double mu = params.mu, lam = params.lambda;
  const double k = params.curvature_modulus();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd F(9 + 1 + 3 + 9, n);
  std::vector<ScalarJet> ju, ja;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      for (int l = 0; l < q; ++l) {
        tu.jets(i, j, l, ju);
        ta.jets(i, j, l, ja);
        const double w = tu.weight(i, j, l);
        const Vec3 x = tu.point(i, j, l);
        const Vec3 f = load.f ? load.f->value(x) : Vec3{};
        const Vec3 M = load.M_body ? load.M_body->value(x) : Vec3{};
        F.setZero();
        for (int comp = 0; comp < 3; ++comp) {
          for (int s = 0; s < mu_s; ++s) {
            const int col = comp * mu_s + s;
            Mat3 g;
            for (int d = 0; d < 3; ++d) g(comp, d) = ju[s].g[d];
            put(F, 0, col, dev(sym(g)), std::sqrt(2.0 * mu));
            F(9, col) = std::sqrt((2.0 * mu + 3.0 * lam) / 3.0) * tr(g);
            put(F, 10, col, axl(skw(g)), std::sqrt(2.0 * params.mu_c));
            b(col) += w * f[comp] * ju[s].v;
          }
          for (int s = 0; s < ma_s; ++s) {
            const int col = nu + comp * ma_s + s;
            Vec3 a;
            a[comp] = ja[s].v;
            Mat3 g;
            for (int d = 0; d < 3; ++d) g(comp, d) = ja[s].g[d];
            put(F, 10, col, a, -std::sqrt(2.0 * params.mu_c));
            put(F, 13, col, skw(g), std::sqrt(2.0 * k * params.alpha2));
            b(col) += w * M[comp] * ja[s].v;
          }
        }
        K.selfadjointView<Eigen::Lower>().rankUpdate(F.transpose(), w);
      }
  const Eigen::MatrixXd Kf = full(K);
  const Eigen::LLT<Eigen::MatrixXd> llt(Kf);
  if (llt.info() != Eigen::Success) {
    const double ev = smallest_eigenvalue(Kf);
    throw WellPosednessError("Cosserat system is not positive definite", ev);
  }
  const Eigen::VectorXd c = llt.solve(b);
  CosseratSolution sol;
  sol.u = c.head(nu);
  sol.a = c.tail(na);
  sol.basis_u = basis_u;
  sol.basis_a = basis_a;
  sol.energy = 0.5 * c.dot(Kf * c) - b.dot(c);
  return sol;
}

CosseratSweep cosserat_sweep(const MaterialParams& params, const BasisSpec& basis_u,
                             const LoadData& load, const std::vector<double>& mu_c_values,
                             int quadrature_order) {
  MaterialParams constrained = params;
  constrained.alpha1 = 0.0;
  const GalerkinSystem sys = assemble(constrained, basis_u, load, quadrature_order);
  const Solution ref = solve(sys);
  const double ref_norm = l2_norm(sys, ref.coeffs);

  CosseratSweep sweep;
  sweep.constrained_energy = quadratic_energy(sys, ref.coeffs);
  const int q = std::max(sys.quadrature_order,
                         required_quadrature_order(microrotation_basis(basis_u)));
  const Rule1D r[3] = {gauss_legendre(q, basis_u.domain.lo[0], basis_u.domain.hi[0]),
                       gauss_legendre(q, basis_u.domain.lo[1], basis_u.domain.hi[1]),
                       gauss_legendre(q, basis_u.domain.lo[2], basis_u.domain.hi[2])};
  for (double mc : mu_c_values) {
    MaterialParams p = params;
    p.mu_c = mc;
    const CosseratSolution cs = cosserat_solve(p, basis_u, load, quadrature_order);
    CosseratSweepRow row;
    row.mu_c = mc;
    row.energy = cs.energy;
    row.relative_error = l2_norm(sys, cs.u - ref.coeffs) / (ref_norm > 0.0 ? ref_norm : 1.0);

    const GalerkinField u(cs.basis_u, cs.u), a(cs.basis_a, cs.a);
    CompensatedSum gap;
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j)
        for (int l = 0; l < q; ++l) {
          const Vec3 x{r[0].nodes[i], r[1].nodes[j], r[2].nodes[l]};
          const Vec3 d = a.value(x) - axl(skw(u.jet(x, 1).grad));
          gap.add(r[0].weights[i] * r[1].weights[j] * r[2].weights[l] * dot(d, d));
        }
    row.constraint_gap = std::sqrt(std::max(0.0, gap.value()));

    if (!sweep.rows.empty()) {
      const CosseratSweepRow& prev = sweep.rows.back();
      row.observed_order = std::log10(prev.relative_error / row.relative_error) /
                           std::log10(row.mu_c / prev.mu_c);
      if (!(row.relative_error < prev.relative_error)) sweep.error_decreasing = false;
      if (row.energy < prev.energy) sweep.energy_nondecreasing = false;
    }
    sweep.rows.push_back(row);
  }
  return sweep;
}

}  // namespace costress
