#include "edss/density_matrix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace edss {

Layout::Layout(std::initializer_list<Subsystem> subsystems)
    : Layout(std::vector<Subsystem>(subsystems)) {}

Layout::Layout(std::vector<Subsystem> subsystems) : subs_(std::move(subsystems)) {
  for (const auto& s : subs_) {
    if (s.dim < 1) throw std::invalid_argument("subsystem dimension must be >= 1");
    dim_ *= s.dim;
  }
}

bool Layout::contains(const std::string& label) const {
  return std::any_of(subs_.begin(), subs_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

int Layout::position(const std::string& label) const {
  for (int i = 0; i < count(); ++i)
    if (subs_[i].label == label) return i;
  throw std::invalid_argument("unknown subsystem label: " + label);
}

std::vector<int> Layout::positions(const std::vector<std::string>& labels) const {
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(position(l));
  return out;
}

Layout Layout::keep(const std::vector<int>& positions) const {
  std::vector<Subsystem> subs;
  for (int i = 0; i < count(); ++i)
    if (std::find(positions.begin(), positions.end(), i) != positions.end())
      subs.push_back(subs_[i]);
  return Layout(std::move(subs));
}

void Layout::digits(int index, std::vector<int>& out) const {
  out.resize(subs_.size());
  for (int i = count() - 1; i >= 0; --i) {
    out[i] = index % subs_[i].dim;
    index /= subs_[i].dim;
  }
}

int Layout::index(const std::vector<int>& digits) const {
  int idx = 0;
  for (int i = 0; i < count(); ++i) idx = idx * subs_[i].dim + digits[i];
  return idx;
}

bool Layout::operator==(const Layout& other) const {
  if (count() != other.count()) return false;
  for (int i = 0; i < count(); ++i)
    if (subs_[i].label != other.subs_[i].label || subs_[i].dim != other.subs_[i].dim)
      return false;
  return true;
}

Layout concat(const Layout& a, const Layout& b) {
  std::vector<Subsystem> subs = a.subsystems();
  subs.insert(subs.end(), b.subsystems().begin(), b.subsystems().end());
  return Layout(std::move(subs));
}

DensityMatrix::DensityMatrix(Matrix data, Layout layout)
    : data_(std::move(data)), layout_(std::move(layout)) {
  if (data_.rows() != data_.cols())
    throw std::invalid_argument("density matrix must be square");
  if (data_.rows() != layout_.dim())
    throw std::invalid_argument("matrix dimension does not match layout");
}

void DensityMatrix::validate(double herm_tol, double psd_tol) const {
  if (std::abs(trace() - 1.0) > herm_tol)
    throw std::runtime_error("density matrix trace deviates from 1");
  if ((data_ - data_.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
    throw std::runtime_error("density matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(data_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -psd_tol)
    throw std::runtime_error("density matrix is not positive semidefinite");
}

UnitaryGate::UnitaryGate(Matrix u, std::vector<std::string> t)
    : data(std::move(u)), targets(std::move(t)) {
  if (data.rows() != data.cols()) throw std::invalid_argument("gate must be square");
  Matrix err = data.adjoint() * data - Matrix::Identity(data.rows(), data.cols());
  if (err.cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("gate is not unitary");
}

Eigen::Vector2cd BlochProjector::ket() const {
  Eigen::Vector2cd v;
  v << std::cos(theta / 2.0), std::sin(theta / 2.0) * std::exp(Complex(0.0, phi));
  return v;
}

Eigen::Vector2cd BlochProjector::orthogonal_ket() const {
  Eigen::Vector2cd v;
  v << std::sin(theta / 2.0), -std::cos(theta / 2.0) * std::exp(Complex(0.0, phi));
  return v;
}

Eigen::Matrix2cd BlochProjector::matrix() const {
  Eigen::Vector2cd v = ket();
  return v * v.adjoint();
}

BlochProjector BlochProjector::complement() const {
  double p = phi + M_PI;
  if (p >= 2.0 * M_PI) p -= 2.0 * M_PI;
  return {M_PI - theta, p};
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Layout layout = concat(a.layout(), b.layout());
  Matrix out(layout.dim(), layout.dim());
  const int db = b.dim();
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      out.block(i * db, j * db, db, db) = a.data()(i, j) * b.data();
  return {std::move(out), std::move(layout)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  const Layout& layout = rho.layout();
  std::vector<int> keep_pos = layout.positions(keep);
  std::sort(keep_pos.begin(), keep_pos.end());
  Layout out_layout = layout.keep(keep_pos);

  Matrix out = Matrix::Zero(out_layout.dim(), out_layout.dim());
  std::vector<int> rd, cd, kr(keep_pos.size()), kc(keep_pos.size());
  for (int r = 0; r < rho.dim(); ++r) {
    layout.digits(r, rd);
    for (int c = 0; c < rho.dim(); ++c) {
      layout.digits(c, cd);
      bool diagonal = true;
      for (int q = 0; q < layout.count(); ++q) {
        if (std::find(keep_pos.begin(), keep_pos.end(), q) != keep_pos.end()) continue;
        if (rd[q] != cd[q]) { diagonal = false; break; }
      }
      if (!diagonal) continue;
      for (size_t k = 0; k < keep_pos.size(); ++k) {
        kr[k] = rd[keep_pos[k]];
        kc[k] = cd[keep_pos[k]];
      }
      out(out_layout.index(kr), out_layout.index(kc)) += rho.data()(r, c);
    }
  }
  return {std::move(out), std::move(out_layout)};
}

Matrix partial_transpose(const DensityMatrix& rho, const std::vector<std::string>& subset) {
  const Layout& layout = rho.layout();
  std::vector<int> pos = layout.positions(subset);
  Matrix out(rho.dim(), rho.dim());
  std::vector<int> rd, cd;
  for (int r = 0; r < rho.dim(); ++r) {
    layout.digits(r, rd);
    for (int c = 0; c < rho.dim(); ++c) {
      layout.digits(c, cd);
      std::vector<int> nr = rd, nc = cd;
      for (int q : pos) std::swap(nr[q], nc[q]);
      out(layout.index(nr), layout.index(nc)) = rho.data()(r, c);
    }
  }
  return out;
}

Matrix embed_operator(const Matrix& op, const std::vector<std::string>& targets,
                      const Layout& layout) {
  std::vector<int> pos = layout.positions(targets);
  int target_dim = 1;
  for (int q : pos) target_dim *= layout.at(q).dim;
  if (op.rows() != target_dim)
    throw std::invalid_argument("operator dimension does not match its targets");

  const int d = layout.dim();
  Matrix out = Matrix::Zero(d, d);
  std::vector<int> rd, cd;
  for (int r = 0; r < d; ++r) {
    layout.digits(r, rd);
    for (int c = 0; c < d; ++c) {
      layout.digits(c, cd);
      bool ok = true;
      for (int q = 0; q < layout.count(); ++q) {
        if (std::find(pos.begin(), pos.end(), q) != pos.end()) continue;
        if (rd[q] != cd[q]) { ok = false; break; }
      }
      if (!ok) continue;
      int ri = 0, ci = 0;
      for (int q : pos) {
        ri = ri * layout.at(q).dim + rd[q];
        ci = ci * layout.at(q).dim + cd[q];
      }
      out(r, c) = op(ri, ci);
    }
  }
  return out;
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryGate& gate) {
  Matrix full = embed_operator(gate.data, gate.targets, rho.layout());
  return {full * rho.data() * full.adjoint(), rho.layout()};
}

DensityMatrix apply_kraus(const DensityMatrix& rho, const std::vector<Matrix>& kraus_ops,
                          const std::string& target) {
  if (kraus_ops.empty()) throw std::invalid_argument("empty Kraus set");
  const int td = rho.layout().dim_of(target);
  Matrix completeness = Matrix::Zero(td, td);
  for (const auto& m : kraus_ops) {
    if (m.rows() != td || m.cols() != td)
      throw std::invalid_argument("Kraus operator dimension does not match target");
    completeness += m.adjoint() * m;
  }
  if ((completeness - Matrix::Identity(td, td)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("Kraus set violates the completeness relation");

  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const auto& m : kraus_ops) {
    Matrix full = embed_operator(m, {target}, rho.layout());
    out += full * rho.data() * full.adjoint();
  }
  return {std::move(out), rho.layout()};
}

PostselectResult postselect(const DensityMatrix& rho, const BlochProjector& proj,
                            const std::string& target) {
  const Layout& layout = rho.layout();
  if (layout.dim_of(target) != 2)
    throw std::invalid_argument("postselect target must be a qubit");

  Matrix full = embed_operator(proj.matrix(), {target}, layout);
  Matrix projected = full * rho.data() * full.adjoint();
  double p = projected.trace().real();
  if (p < 1e-14)
    throw OutcomeUnobservable("postselection outcome on " + target + " is unobservable");

  std::vector<std::string> keep;
  for (const auto& s : layout.subsystems())
    if (s.label != target) keep.push_back(s.label);
  DensityMatrix cond = partial_trace({std::move(projected), layout}, keep);
  cond.data() /= p;
  return {std::move(cond), p};
}

}  // namespace edss
