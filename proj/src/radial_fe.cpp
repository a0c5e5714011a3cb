#include "upsharp/radial_fe.hpp"

#include <cmath>

#include "upsharp/errors.hpp"
#include "upsharp/gauss_legendre.hpp"

namespace upsharp {

namespace {

constexpr int kPoints = 8;

const GaussRule<double>& rule() {
  static const auto r = [] {
    auto hp = gauss_legendre<long double>(kPoints);
    return GaussRule<double>{hp.nodes.cast<double>(), hp.weights.cast<double>()};
  }();
  return r;
}

double rpow(double r, int p) { return p == 0 ? 1.0 : std::pow(r, p); }

}  // namespace

RadialFE::RadialFE(Eigen::VectorXd nodes, bool dirichlet_left)
    : nodes_(std::move(nodes)), dirichlet_left_(dirichlet_left) {
  const Eigen::Index n = nodes_.size();
  if (n < 3) throw domain_error("finite-element grid needs at least 3 nodes");
  if (!(nodes_[0] > 0.0)) throw domain_error("finite-element grid must start above 0");
  for (Eigen::Index i = 1; i < n; ++i)
    if (!(nodes_[i] > nodes_[i - 1])) throw domain_error("finite-element grid must increase");
  first_ = dirichlet_left ? 1 : 0;
  size_ = n - 1 - first_;
}

Eigen::VectorXd RadialFE::full_values(const Eigen::VectorXd& x) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(nodes_.size());
  v.segment(first_, size_) = x;
  return v;
}

Eigen::SparseMatrix<double> RadialFE::sparse_form(const std::vector<FormTerm>& terms) const {
  const Eigen::Index n = nodes_.size();
  const auto& g = rule();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(4 * n));
  auto put = [&](Eigen::Index gi, Eigen::Index gj, double v) {
    const Eigen::Index i = gi - first_, j = gj - first_;
    if (i >= 0 && i < size_ && j >= 0 && j < size_) trip.emplace_back(i, j, v);
  };
  for (const auto& t : terms) {
    if (t.operand == TermOperand::antiderivative)
      throw domain_error("antiderivative terms need the dense assembly");
    for (Eigen::Index e = 0; e + 1 < n; ++e) {
      const double a = nodes_[e], b = nodes_[e + 1], h = b - a;
      double m00 = 0, m01 = 0, m11 = 0;
      for (int q = 0; q < kPoints; ++q) {
        const double s = 0.5 * (1.0 + g.nodes[q]);
        const double w = 0.5 * h * g.weights[q] * rpow(a + s * h, t.power);
        if (t.operand == TermOperand::value) {
          m00 += w * (1 - s) * (1 - s);
          m01 += w * (1 - s) * s;
          m11 += w * s * s;
        } else {
          const double d = 1.0 / (h * h);
          m00 += w * d;
          m01 -= w * d;
          m11 += w * d;
        }
      }
      put(e, e, t.coefficient * m00);
      put(e, e + 1, t.coefficient * m01);
      put(e + 1, e, t.coefficient * m01);
      put(e + 1, e + 1, t.coefficient * m11);
    }
    // constant extension of f on [0, r_0]
    if (!dirichlet_left_ && t.operand == TermOperand::value) {
      if (t.power <= -1) throw divergent_integral("constant extension to the origin diverges");
      put(0, 0, t.coefficient * std::pow(nodes_[0], t.power + 1) / (t.power + 1));
    }
  }
  Eigen::SparseMatrix<double> m(size_, size_);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

Eigen::MatrixXd RadialFE::dense_form(const std::vector<FormTerm>& terms) const {
  std::vector<FormTerm> local, anti;
  for (const auto& t : terms) (t.operand == TermOperand::antiderivative ? anti : local).push_back(t);
  Eigen::MatrixXd m = Eigen::MatrixXd(sparse_form(local));
  if (anti.empty()) return m;

  const Eigen::Index n = nodes_.size();
  const auto& g = rule();
  // tail[e] = coefficients of int_{r_e}^{r_M} f over the full nodal vector (trapezoid rule is exact for P1).
  Eigen::MatrixXd tail = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index e = n - 2; e >= 0; --e) {
    tail.row(e) = tail.row(e + 1);
    const double h = nodes_[e + 1] - nodes_[e];
    tail(e, e) += 0.5 * h;
    tail(e, e + 1) += 0.5 * h;
  }
  // Rows of K give F at the quadrature points, weights carry r^p.
  const Eigen::Index nq = (n - 1) * kPoints + 1;
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nq, size_);
  Eigen::VectorXd rq(nq), wq(nq);
  auto restrict_row = [&](const Eigen::RowVectorXd& full) { return full.segment(first_, size_); };
  for (Eigen::Index e = 0; e + 1 < n; ++e) {
    const double a = nodes_[e], h = nodes_[e + 1] - a;
    for (int q = 0; q < kPoints; ++q) {
      const double s = 0.5 * (1.0 + g.nodes[q]);
      Eigen::RowVectorXd row = tail.row(e + 1);
      // int_{a + s h}^{b} f = h [f_e (1-s)^2/2 + f_{e+1} (1 - s^2)/2]
      row[e] += h * (1 - s) * (1 - s) / 2;
      row[e + 1] += h * (1 - s * s) / 2;
      const Eigen::Index idx = e * kPoints + q;
      K.row(idx) = -restrict_row(row);
      rq[idx] = a + s * h;
      wq[idx] = 0.5 * h * g.weights[q];
    }
  }
  // F is constant on [0, r_0] (f vanishes there or is extended by a constant; the latter is
  // ignored since antiderivative terms only appear with Dirichlet data).
  const Eigen::Index last = nq - 1;
  K.row(last) = -restrict_row(tail.row(0));
  rq[last] = nodes_[0];
  for (const auto& t : anti) {
    if (!dirichlet_left_) throw domain_error("antiderivative terms require Dirichlet data at r_0");
    if (t.power <= -1) throw divergent_integral("antiderivative term diverges at the origin");
    Eigen::VectorXd w(nq);
    for (Eigen::Index i = 0; i < last; ++i) w[i] = t.coefficient * wq[i] * rpow(rq[i], t.power);
    w[last] = t.coefficient * std::pow(nodes_[0], t.power + 1) / (t.power + 1);
    m.noalias() += K.transpose() * w.asDiagonal() * K;
  }
  return m;
}

}  // namespace upsharp
