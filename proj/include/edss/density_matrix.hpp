#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace edss {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Thrown by postselect() when the requested outcome has (numerically) zero
/// probability, so no normalized conditional state exists.
struct OutcomeUnobservable : std::runtime_error {
  explicit OutcomeUnobservable(const std::string& what) : std::runtime_error(what) {}
};

struct Subsystem {
  std::string label;
  int dim = 2;
};

/// Ordered list of labeled subsystems. The first subsystem is the most
/// significant digit of the composite index (mixed-radix convention).
class Layout {
 public:
  Layout() = default;
  Layout(std::initializer_list<Subsystem> subsystems);
  explicit Layout(std::vector<Subsystem> subsystems);

  int dim() const { return dim_; }
  int count() const { return static_cast<int>(subs_.size()); }
  const Subsystem& at(int i) const { return subs_[i]; }
  const std::vector<Subsystem>& subsystems() const { return subs_; }

  bool contains(const std::string& label) const;
  /// Position of `label`; throws std::invalid_argument for an unknown label.
  int position(const std::string& label) const;
  int dim_of(const std::string& label) const { return subs_[position(label)].dim; }

  std::vector<int> positions(const std::vector<std::string>& labels) const;

  /// Layout restricted to `keep` positions, original order preserved.
  Layout keep(const std::vector<int>& positions) const;

  /// Decompose a composite index into per-subsystem digits.
  void digits(int index, std::vector<int>& out) const;
  int index(const std::vector<int>& digits) const;

  bool operator==(const Layout& other) const;

 private:
  std::vector<Subsystem> subs_;
  int dim_ = 1;
};

Layout concat(const Layout& a, const Layout& b);

/// Dense density matrix over a labeled multipartite layout.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(Matrix data, Layout layout);

  const Matrix& data() const { return data_; }
  Matrix& data() { return data_; }
  const Layout& layout() const { return layout_; }
  int dim() const { return layout_.dim(); }

  double trace() const { return data_.trace().real(); }

  /// Checks trace=1, Hermiticity and positive semidefiniteness; throws
  /// std::runtime_error naming the violated invariant.
  void validate(double herm_tol = 1e-12, double psd_tol = 1e-10) const;

 private:
  Matrix data_;
  Layout layout_;
};

/// Unitary acting on an ordered subset of subsystems.
struct UnitaryGate {
  Matrix data;
  std::vector<std::string> targets;

  UnitaryGate(Matrix u, std::vector<std::string> t);
};

/// Rank-1 qubit projector |psi><psi| with
/// |psi> = cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>.
struct BlochProjector {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2pi)

  Eigen::Vector2cd ket() const;
  Eigen::Vector2cd orthogonal_ket() const;
  Eigen::Matrix2cd matrix() const;
  /// Antipodal point: the projector onto the orthogonal outcome.
  BlochProjector complement() const;
};

struct PostselectResult {
  DensityMatrix state;   // remaining subsystems, normalized
  double probability = 0.0;
};

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

/// Transpose the named subsystems in place; result is Hermitian but in
/// general not PSD, hence a plain matrix.
Matrix partial_transpose(const DensityMatrix& rho, const std::vector<std::string>& subset);

/// Embed `gate` on its target subsystems (identity elsewhere) as a dim x dim operator.
Matrix embed_operator(const Matrix& op, const std::vector<std::string>& targets, const Layout& layout);

DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryGate& gate);

/// Sum_j (I (x) M_j) rho (I (x) M_j)^dag with each M_j acting on `target`.
/// Throws if the Kraus set violates the completeness relation beyond 1e-10.
DensityMatrix apply_kraus(const DensityMatrix& rho, const std::vector<Matrix>& kraus_ops,
                          const std::string& target);

/// Project `target` (a qubit) onto the given Bloch outcome, trace it out and
/// normalize. Throws OutcomeUnobservable when the outcome probability < 1e-14.
PostselectResult postselect(const DensityMatrix& rho, const BlochProjector& proj,
                            const std::string& target);

}  // namespace edss
