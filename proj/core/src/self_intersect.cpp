#include "pluriminimal/self_intersect.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/Dense>

#include "pluriminimal/errors.hpp"
#include "pluriminimal/jet.hpp"
#include "pluriminimal/sampling.hpp"

namespace pluri {
namespace {

struct StartOutcome {
  Point p, q;
  double distance = std::numeric_limits<double>::infinity();
  double separation = 0.0;
  bool feasible = false;
  bool certified = false;
};

class Problem {
 public:
  Problem(const WeierstrassData& data, double delta) : data_(data), m_(data.arity), n_(static_cast<int>(data.size())), delta_(delta) {}

  int unknowns() const { return 4 * m_; }

  Point point(const Eigen::VectorXd& x, int offset) const {
    Point z(static_cast<std::size_t>(m_));
    for (int k = 0; k < m_; ++k) z[static_cast<std::size_t>(k)] = {x(offset + k), x(offset + m_ + k)};
    return z;
  }

  double separation(const Eigen::VectorXd& x) const {
    return (x.segment(0, 2 * m_) - x.segment(2 * m_, 2 * m_)).norm();
  }

  // Residual (f(p) - f(q), sqrt(w) max(0, delta - |p - q|)) and its jacobian.
  void evaluate_at(const Eigen::VectorXd& x, double weight, Eigen::VectorXd& r, Eigen::MatrixXd& jac) const {
    r.setZero(n_ + 1);
    jac.setZero(n_ + 1, unknowns());
    const Point p = point(x, 0), q = point(x, 2 * m_);
    const auto& prims = *data_.primitives;
    for (int i = 0; i < n_; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      r(i) = evaluate(prims[ii], p).real() - evaluate(prims[ii], q).real();
      for (int k = 0; k < m_; ++k) {
        const auto& c = data_.forms[ii].coeffs[static_cast<std::size_t>(k)];
        const Complex wp = evaluate(c, p), wq = evaluate(c, q);
        jac(i, k) = wp.real();
        jac(i, m_ + k) = -wp.imag();
        jac(i, 2 * m_ + k) = -wq.real();
        jac(i, 3 * m_ + k) = wq.imag();
      }
    }
    const Eigen::VectorXd d = x.segment(0, 2 * m_) - x.segment(2 * m_, 2 * m_);
    const double sep = d.norm();
    if (sep < delta_) {
      const double s = std::sqrt(weight);
      r(n_) = s * (delta_ - sep);
      if (sep > 0.0) {
        const Eigen::VectorXd g = -s * d / sep;
        jac.block(n_, 0, 1, 2 * m_) = g.transpose();
        jac.block(n_, 2 * m_, 1, 2 * m_) = -g.transpose();
      }
    }
  }

  Eigen::VectorXd levenberg_marquardt(Eigen::VectorXd x, double weight, int max_iterations) const {
    Eigen::VectorXd r, r_trial;
    Eigen::MatrixXd jac, jac_trial;
    evaluate_at(x, weight, r, jac);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    for (int it = 0; it < max_iterations && cost > 1e-32; ++it) {
      const Eigen::MatrixXd jtj = jac.transpose() * jac;
      const Eigen::VectorXd g = jac.transpose() * r;
      Eigen::MatrixXd lhs = jtj;
      lhs.diagonal().array() += lambda * (jtj.diagonal().array() + 1.0);
      const Eigen::VectorXd step = lhs.ldlt().solve(-g);
      if (!step.allFinite()) break;
      const Eigen::VectorXd trial = x + step;
      double trial_cost = std::numeric_limits<double>::infinity();
      try {
        evaluate_at(trial, weight, r_trial, jac_trial);
        trial_cost = r_trial.squaredNorm();
      } catch (const NumericDomainError&) {
      }
      if (trial_cost < cost) {
        x = trial;
        r.swap(r_trial);
        jac.swap(jac_trial);
        const bool stalled = cost - trial_cost <= 1e-15 * cost && step.norm() <= 1e-14 * (1.0 + x.norm());
        cost = trial_cost;
        lambda = std::max(lambda / 3.0, 1e-12);
        if (stalled) break;
      } else {
        lambda *= 4.0;
        if (lambda > 1e12) break;
      }
    }
    return x;
  }

 private:
  const WeierstrassData& data_;
  int m_, n_;
  double delta_;
};

double extended_distance(const WeierstrassData& data, const Point& p, const Point& q) {
  std::vector<std::complex<long double>> pl(p.begin(), p.end()), ql(q.begin(), q.end());
  const auto fp = immerse_extended(data, pl);
  const auto fq = immerse_extended(data, ql);
  long double s = 0;
  for (std::size_t i = 0; i < fp.size(); ++i) s += (fp[i] - fq[i]) * (fp[i] - fq[i]);
  return static_cast<double>(std::sqrt(s));
}

StartOutcome run_start(const WeierstrassData& data, const SelfIntersectOptions& o, int start) {
  const int m = data.arity;
  const Problem problem(data, o.min_separation);
  Sampler sampler(o.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(start) + 1);
  const Point p0 = sampler.in_polydisk(m, o.radius);
  const Point q0 = sampler.in_polydisk(m, o.radius);
  Eigen::VectorXd x(4 * m);
  for (int k = 0; k < m; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    x(k) = p0[kk].real();
    x(m + k) = p0[kk].imag();
    x(2 * m + k) = q0[kk].real();
    x(3 * m + k) = q0[kk].imag();
  }

  StartOutcome out;
  try {
    double weight = o.initial_penalty;
    for (int round = 0; round <= o.max_penalty_doublings; ++round) {
      x = problem.levenberg_marquardt(x, weight, o.max_iterations);
      if (problem.separation(x) >= o.min_separation) break;
      weight *= 2.0;
    }
    // Push a pair that stalled just inside the constraint back onto |p - q| = delta.
    const double sep = problem.separation(x);
    if (sep < o.min_separation && sep > 0.0) {
      const Eigen::VectorXd mid = 0.5 * (x.segment(0, 2 * m) + x.segment(2 * m, 2 * m));
      const Eigen::VectorXd half = 0.5 * (x.segment(0, 2 * m) - x.segment(2 * m, 2 * m)) *
                                   (o.min_separation / sep) * (1.0 + 1e-12);
      x.segment(0, 2 * m) = mid + half;
      x.segment(2 * m, 2 * m) = mid - half;
    }
    out.p = problem.point(x, 0);
    out.q = problem.point(x, 2 * m);
    out.separation = problem.separation(x);
    out.feasible = out.separation >= o.min_separation;
    out.distance = extended_distance(data, out.p, out.q);
    out.certified = out.feasible && out.distance < o.certify_tolerance;
  } catch (const NumericDomainError&) {
  }
  return out;
}

}  // namespace

SelfIntersectResult self_intersect(const WeierstrassData& data, const SelfIntersectOptions& options) {
  data.validate();
  if (!data.primitives) throw InvalidArgument("self_intersect: primitives are required");
  if (options.starts <= 0) throw InvalidArgument("self_intersect: starts must be positive");

  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(options.starts));
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(options.starts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int s = next++; s < options.starts; s = next++) {
      outcomes[static_cast<std::size_t>(s)] = run_start(data, options, s);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SelfIntersectResult result;
  result.starts_run = options.starts;
  result.best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    const auto& o = outcomes[s];
    if (!o.feasible) continue;
    result.best_distance = std::min(result.best_distance, o.distance);
    if (o.certified && (!result.witness || o.distance < result.witness->distance)) {
      result.witness = SelfIntersection{o.p, o.q, o.distance, o.separation, static_cast<int>(s)};
    }
  }
  return result;
}

}  // namespace pluri
