#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bell/cohesive.hpp"
#include "bell/constraints.hpp"
#include "bell/plate_element.hpp"

namespace bell {

/// Displacement-controlled incremental stepping parameters.
struct StepControl {
  double target = 4.0;             // mm, total opening
  double initial_increment = 0.04; // mm
  double min_increment = 1e-4;     // mm
  double max_increment = 0.08;     // mm
  double cutback_factor = 0.25;
  double growth_factor = 1.5;
  int fast_iterations = 5;         // increments at most this many iterations count as fast
  int max_iterations = 60;
  int max_consecutive_cutbacks = 8;
  double force_tolerance = 5e-3;        // N, inf-norm of the reduced residual
  double displacement_tolerance = 1e-6; // mm, inf-norm of the last Newton update

  void validate() const {
    if (!(target > 0.0) || !(initial_increment > 0.0) || !(min_increment > 0.0) ||
        !(max_increment >= initial_increment) || !(min_increment <= initial_increment)) {
      throw std::invalid_argument("step control: need 0 < min <= initial <= max and target > 0");
    }
    if (!(cutback_factor > 0.0 && cutback_factor < 1.0) || !(growth_factor >= 1.0)) {
      throw std::invalid_argument("step control: cutback in (0,1), growth >= 1");
    }
    if (max_iterations < 1 || max_consecutive_cutbacks < 1) {
      throw std::invalid_argument("step control: iteration limits must be >= 1");
    }
    if (!(force_tolerance > 0.0) || !(displacement_tolerance > 0.0)) {
      throw std::invalid_argument("step control: tolerances must be > 0");
    }
  }
};

struct PlateInstance {
  std::array<int, 18> dofs{};
  const Matrix18* stiffness = nullptr;  // not owned
};

struct CohesiveInstance {
  std::array<int, 36> dofs{};
  const std::vector<CeIntegrationPoint>* ips = nullptr;  // not owned
  const Matrix36* intact_stiffness = nullptr;            // optional fast path, not owned
  std::vector<CohesiveIPState> states;
  std::vector<CohesiveIPState> trial;  // per-increment scratch, see newton()
  std::vector<Eigen::Vector2d> ip_xy;  // physical IP locations for outputs
  int mesh_ce = -1;

  // committed kinematics, for incremental work bookkeeping
  std::vector<Eigen::Vector3d> last_delta, last_traction;
};

struct IpSample {
  int ce = -1;
  double x = 0.0, y = 0.0;
  double opening = 0.0;   // mode I, mm
  double traction = 0.0;  // mode I, MPa
  double damage = 0.0;
};

struct Snapshot {
  double opening = 0.0;
  std::vector<IpSample> samples;
};

struct IncrementRecord {
  double opening = 0.0;
  double reaction = 0.0;
  int iterations = 0;
  int snapshot = -1;  // index into AnalysisHistory::snapshots, or -1
  double external_work = 0.0;         // cumulative
  double plate_energy = 0.0;          // current recoverable bending energy
  double cohesive_work = 0.0;         // cumulative work fed into the interface
  double cohesive_recoverable = 0.0;  // current stored interface energy
};

struct AnalysisHistory {
  std::vector<IncrementRecord> increments;
  std::vector<Snapshot> snapshots;
  bool completed = false;
  std::string abort_reason;

  double peak_load() const {
    double peak = 0.0;
    for (const auto& r : increments) peak = std::max(peak, r.reaction);
    return peak;
  }

  double opening_at_peak() const {
    double peak = 0.0, at = 0.0;
    for (const auto& r : increments) {
      if (r.reaction > peak) {
        peak = r.reaction;
        at = r.opening;
      }
    }
    return at;
  }

  const Snapshot* snapshot_at(double opening, double tol = 1e-9) const {
    for (const auto& s : snapshots) {
      if (std::abs(s.opening - opening) <= tol) return &s;
    }
    return nullptr;
  }
};

/// Assembly and displacement-controlled full Newton solution of the coupled
/// plate / cohesive system. Fixed, driven and multipoint-constrained DOFs
/// are eliminated by master-slave substitution, so the reduced operator
/// stays symmetric and (with the secant interface stiffness) positive
/// definite; increments that fail to converge are retried with a smaller
/// driven-displacement step.
class NonlinearStatics {
 public:
  NonlinearStatics(int dof_count, std::vector<PlateInstance> plates,
                   std::vector<CohesiveInstance> cohesives, const ConstraintSet& constraints,
                   CohesiveProps props)
      : n_dofs_(dof_count),
        plates_(std::move(plates)),
        cohesives_(std::move(cohesives)),
        constraints_(constraints),
        props_(props) {
    constraints.validate(dof_count);
    build_reduction();
    build_pattern();
    for (auto& ce : cohesives_) {
      const std::size_t n = ce.ips->size();
      if (ce.states.size() != n) {
        throw std::invalid_argument("solver: cohesive state count does not match IP count");
      }
      ce.last_delta.assign(n, Eigen::Vector3d::Zero());
      ce.last_traction.assign(n, Eigen::Vector3d::Zero());
    }
    U_ = Eigen::VectorXd::Zero(n_dofs_);
    f_int_ = Eigen::VectorXd::Zero(n_dofs_);
  }

  int reduced_size() const { return n_reduced_; }
  const std::vector<CohesiveInstance>& cohesives() const { return cohesives_; }
  const Eigen::VectorXd& displacements() const { return U_; }

  void set_prescribed(Eigen::VectorXd& U, double ramp) const {
    for (int d : constraints_.fixed) U[d] = 0.0;
    for (int d : constraints_.driven) U[d] = ramp;
  }

  /// Reduced (lower-triangle) tangent at a trial state; test hook.
  Eigen::SparseMatrix<double> reduced_stiffness(const Eigen::VectorXd& U) {
    assemble(U);
    return K_;
  }

  Eigen::VectorXd reduced_residual(const Eigen::VectorXd& U) {
    assemble(U);
    return r_;
  }

  Eigen::VectorXd internal_forces(const Eigen::VectorXd& U) {
    assemble(U);
    return f_int_;
  }

  /// Sum of internal forces on the driven DOFs == applied load.
  double reaction(const Eigen::VectorXd& U) {
    assemble(U);
    return driven_force_sum();
  }

  AnalysisHistory run(const StepControl& control, std::vector<double> snapshot_openings,
                      std::ostream* progress = nullptr) {
    control.validate();
    AnalysisHistory history;

    std::sort(snapshot_openings.begin(), snapshot_openings.end());
    snapshot_openings.erase(std::unique(snapshot_openings.begin(), snapshot_openings.end()),
                            snapshot_openings.end());
    std::size_t next_snap = 0;
    while (next_snap < snapshot_openings.size() && snapshot_openings[next_snap] <= 1e-12) {
      ++next_snap;
    }

    double opening = 0.0;
    double increment = control.initial_increment;
    double prev_reaction = 0.0;
    double external_work = 0.0;
    int consecutive_cutbacks = 0;
    int fast_streak = 0;
    int step = 0;

    while (opening < control.target - 1e-12) {
      double next = std::min(opening + increment, control.target);
      if (next_snap < snapshot_openings.size() &&
          snapshot_openings[next_snap] < control.target + 1e-12) {
        next = std::min(next, snapshot_openings[next_snap]);
      }

      Eigen::VectorXd trial = U_;
      set_prescribed(trial, next);
      // The damage fixed point may cycle when an integration point of an
      // oversized element snaps through locally; in that case retry the
      // increment with monotone within-increment damage accumulation, which
      // walks onto the post-snap branch instead of bouncing around it.
      bool monotone = false;
      int iterations = newton(trial, control, monotone);
      if (iterations < 0) {
        trial = U_;
        set_prescribed(trial, next);
        monotone = true;
        iterations = newton(trial, control, monotone);
      }

      if (iterations < 0) {
        ++consecutive_cutbacks;
        fast_streak = 0;
        if (consecutive_cutbacks > control.max_consecutive_cutbacks) {
          history.abort_reason = "cutback budget exceeded at opening " + std::to_string(opening);
          return history;
        }
        if (increment <= control.min_increment * (1.0 + 1e-9)) {
          history.abort_reason = "increment below minimum at opening " + std::to_string(opening);
          return history;
        }
        increment = std::max(increment * control.cutback_factor, control.min_increment);
        continue;
      }

      U_ = trial;
      IncrementRecord rec;
      rec.opening = next;
      rec.reaction = driven_force_sum();
      rec.iterations = iterations;
      commit(rec, monotone);
      external_work += 0.5 * (prev_reaction + rec.reaction) * (next - opening);
      rec.external_work = external_work;
      prev_reaction = rec.reaction;

      if (next_snap < snapshot_openings.size() &&
          std::abs(next - snapshot_openings[next_snap]) <= 1e-12) {
        rec.snapshot = static_cast<int>(history.snapshots.size());
        history.snapshots.push_back(take_snapshot(next));
        ++next_snap;
      }
      history.increments.push_back(rec);
      ++step;
      if (progress) {
        char line[128];
        std::snprintf(line, sizeof(line), "step %d opening %.6f reaction %.6f iterations %d", step,
                      rec.opening, rec.reaction, rec.iterations);
        (*progress) << line << '\n';
      }

      opening = next;
      consecutive_cutbacks = 0;
      if (iterations <= control.fast_iterations) {
        if (++fast_streak >= 2) {
          increment = std::min(increment * control.growth_factor, control.max_increment);
          fast_streak = 0;
        }
      } else {
        fast_streak = 0;
      }
    }

    history.completed = true;
    return history;
  }

 private:
  struct DofMap {
    int idx = -1;
    double coeff = 0.0;
  };
  struct CeEntry {
    int offset;
    double scale;
    int li, lj;
  };

  void build_reduction() {
    // 0 free, 1 fixed, 2 driven, 3 slave
    std::vector<int> kind(n_dofs_, 0);
    for (int d : constraints_.fixed) kind[d] = 1;
    for (int d : constraints_.driven) kind[d] = 2;
    for (const auto& row : constraints_.mpc) kind[row.slave] = 3;
    for (const auto& row : constraints_.mpc) {
      if (kind[row.master] != 0) {
        throw std::invalid_argument("solver: mpc master must be a free DOF");
      }
    }
    map_.assign(n_dofs_, DofMap{});
    n_reduced_ = 0;
    for (int d = 0; d < n_dofs_; ++d) {
      if (kind[d] == 0) {
        map_[d] = {n_reduced_++, 1.0};
      }
    }
    for (const auto& row : constraints_.mpc) {
      map_[row.slave] = {map_[row.master].idx, row.ratio};
    }
  }

  void build_pattern() {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(plates_.size() * 200 + cohesives_.size() * 700 + n_reduced_);
    for (int i = 0; i < n_reduced_; ++i) trips.emplace_back(i, i, 0.0);
    auto add_pairs = [&](const auto& dofs, int n) {
      for (int i = 0; i < n; ++i) {
        const DofMap mi = map_[dofs[i]];
        if (mi.idx < 0) continue;
        for (int j = 0; j < n; ++j) {
          const DofMap mj = map_[dofs[j]];
          if (mj.idx < 0 || mi.idx < mj.idx) continue;
          trips.emplace_back(mi.idx, mj.idx, 0.0);
        }
      }
    };
    for (const auto& p : plates_) add_pairs(p.dofs, 18);
    for (const auto& c : cohesives_) add_pairs(c.dofs, 36);
    K_.resize(n_reduced_, n_reduced_);
    K_.setFromTriplets(trips.begin(), trips.end());
    K_.makeCompressed();

    // plate stiffnesses never change: scatter them once into a base image
    base_values_.assign(K_.nonZeros(), 0.0);
    for (const auto& p : plates_) {
      for (int i = 0; i < 18; ++i) {
        const DofMap mi = map_[p.dofs[i]];
        if (mi.idx < 0) continue;
        for (int j = 0; j < 18; ++j) {
          const DofMap mj = map_[p.dofs[j]];
          if (mj.idx < 0 || mi.idx < mj.idx) continue;
          base_values_[find_offset(mi.idx, mj.idx)] += mi.coeff * mj.coeff * (*p.stiffness)(i, j);
        }
      }
    }
    ce_entries_.resize(cohesives_.size());
    for (std::size_t c = 0; c < cohesives_.size(); ++c) {
      const auto& dofs = cohesives_[c].dofs;
      auto& entries = ce_entries_[c];
      entries.reserve(700);
      for (int i = 0; i < 36; ++i) {
        const DofMap mi = map_[dofs[i]];
        if (mi.idx < 0) continue;
        for (int j = 0; j < 36; ++j) {
          const DofMap mj = map_[dofs[j]];
          if (mj.idx < 0 || mi.idx < mj.idx) continue;
          entries.push_back({find_offset(mi.idx, mj.idx), mi.coeff * mj.coeff, i, j});
        }
      }
    }
    ldlt_.analyzePattern(K_);
    pattern_ready_ = true;
  }

  int find_offset(int row, int col) const {
    const int* inner = K_.innerIndexPtr();
    const int begin = K_.outerIndexPtr()[col];
    const int end = K_.outerIndexPtr()[col + 1];
    const int* it = std::lower_bound(inner + begin, inner + end, row);
    if (it == inner + end || *it != row) {
      throw std::logic_error("solver: missing entry in stiffness pattern");
    }
    return static_cast<int>(it - inner);
  }

  Matrix36 ce_tangent(CohesiveInstance& ce, const Vector36& u_local, bool monotone) const {
    const auto& ips = *ce.ips;
    const std::vector<CohesiveIPState>& base = monotone ? ce.trial : ce.states;
    // fast path: no damage so far and all trial openings below onset
    bool intact = ce.intact_stiffness != nullptr;
    if (intact) {
      for (std::size_t i = 0; i < ips.size() && intact; ++i) {
        intact = base[i].damage == 0.0 && ips[i].B.row(0).dot(u_local) <= props_.onset;
      }
      if (intact) return *ce.intact_stiffness;
    }
    Matrix36 k = Matrix36::Zero();
    for (std::size_t i = 0; i < ips.size(); ++i) {
      const Eigen::Vector3d delta = ips[i].B * u_local;
      const CohesiveIPState trial = ip_trial(base[i], delta[0], props_);
      if (monotone) ce.trial[i] = trial;
      const Eigen::Vector3d mod = ips[i].weight * secant_moduli(trial, delta[0], props_.penalty);
      k.noalias() += ips[i].B.transpose() * mod.asDiagonal() * ips[i].B;
    }
    return k;
  }

  void assemble(const Eigen::VectorXd& U, bool monotone = false) {
    double* values = K_.valuePtr();
    std::copy(base_values_.begin(), base_values_.end(), values);
    f_int_.setZero();

    for (const auto& p : plates_) {
      Vector18 u_local;
      for (int i = 0; i < 18; ++i) u_local[i] = U[p.dofs[i]];
      const Vector18 f = (*p.stiffness) * u_local;
      for (int i = 0; i < 18; ++i) f_int_[p.dofs[i]] += f[i];
    }
    for (std::size_t c = 0; c < cohesives_.size(); ++c) {
      auto& ce = cohesives_[c];
      Vector36 u_local;
      for (int i = 0; i < 36; ++i) u_local[i] = U[ce.dofs[i]];
      const Matrix36 k = ce_tangent(ce, u_local, monotone);
      const Vector36 f = k * u_local;
      for (int i = 0; i < 36; ++i) f_int_[ce.dofs[i]] += f[i];
      for (const auto& e : ce_entries_[c]) {
        values[e.offset] += e.scale * k(e.li, e.lj);
      }
    }
    r_.setZero(n_reduced_);
    for (int d = 0; d < n_dofs_; ++d) {
      if (map_[d].idx >= 0) r_[map_[d].idx] -= map_[d].coeff * f_int_[d];
    }
  }

  /// Returns the iteration count, or -1 on failure to converge.
  ///
  /// Each solve with the secant stiffness lands exactly on the equilibrium
  /// of the frozen damage state, so the iteration is a fixed point on the
  /// damage field. During steady crack advance that fixed point is almost
  /// neutral and plain iteration contracts at ~0.97 per pass; Aitken
  /// extrapolation of the update sequence collapses the slow mode once the
  /// first few plain iterations have not converged.
  int newton(Eigen::VectorXd& U, const StepControl& control, bool monotone) {
    if (monotone) {
      for (auto& ce : cohesives_) ce.trial = ce.states;
    }
    const int budget = monotone ? 3 * control.max_iterations : control.max_iterations;
    double update_norm = 0.0;
    bool cooldown = false;
    Eigen::VectorXd delta_prev;
    for (int iter = 0; iter <= budget; ++iter) {
      assemble(U, monotone);
      if (!r_.allFinite()) return -1;
      const double residual_norm = r_.lpNorm<Eigen::Infinity>();
#ifdef BELL_NEWTON_TRACE
      std::fprintf(stderr, "    it %2d mono=%d |r|=%.3e |dU|=%.3e\n", iter, monotone,
                   residual_norm, update_norm);
#endif
      if (residual_norm <= control.force_tolerance &&
          (iter == 0 || update_norm <= control.displacement_tolerance)) {
        return iter;
      }
      if (iter == budget) return -1;
      ldlt_.factorize(K_);
      if (ldlt_.info() != Eigen::Success) return -1;
      const Eigen::VectorXd delta = ldlt_.solve(r_);
      if (!delta.allFinite()) return -1;

      // During steady crack growth the damage fixed point contracts slowly
      // along a single direction. When successive updates are close to
      // parallel and geometrically decaying, jump to the extrapolated limit
      // of that mode; a tension/compression flip breaks the alignment and
      // drops the step back to a plain one automatically.
      double omega = 1.0;
      if (!cooldown && iter >= 2) {
        const double np = delta_prev.norm();
        const double nc = delta.norm();
        if (np > 0.0 && nc > 0.0) {
          const double cosine = delta.dot(delta_prev) / (np * nc);
          const double ratio = nc / np;
          if (cosine > 0.95 && ratio > 0.2 && ratio < 0.9999) {
            omega = std::min(1.0 / (1.0 - ratio), 100.0);
          }
        }
      }
      cooldown = omega != 1.0;
      delta_prev = delta;

      update_norm = omega * delta.lpNorm<Eigen::Infinity>();
      for (int d = 0; d < n_dofs_; ++d) {
        if (map_[d].idx >= 0) U[d] += omega * map_[d].coeff * delta[map_[d].idx];
      }
    }
    return -1;
  }

  double driven_force_sum() const {
    double sum = 0.0;
    for (int d : constraints_.driven) sum += f_int_[d];
    return sum;
  }

  void commit(IncrementRecord& rec, bool monotone) {
    double plate_energy = 0.0;
    for (const auto& p : plates_) {
      Vector18 u_local;
      for (int i = 0; i < 18; ++i) u_local[i] = U_[p.dofs[i]];
      plate_energy += 0.5 * u_local.dot((*p.stiffness) * u_local);
    }
    double recoverable = 0.0;
    for (auto& ce : cohesives_) {
      Vector36 u_local;
      for (int i = 0; i < 36; ++i) u_local[i] = U_[ce.dofs[i]];
      const auto& ips = *ce.ips;
      for (std::size_t i = 0; i < ips.size(); ++i) {
        const Eigen::Vector3d delta = ips[i].B * u_local;
        // commit the history the converged stiffness was built with
        ce.states[i] = ip_trial(monotone ? ce.trial[i] : ce.states[i], delta[0], props_);
        const Eigen::Vector3d tau =
            secant_moduli(ce.states[i], delta[0], props_.penalty).cwiseProduct(delta);
        cohesive_work_ +=
            ips[i].weight * 0.5 * (tau + ce.last_traction[i]).dot(delta - ce.last_delta[i]);
        recoverable += ips[i].weight * 0.5 * tau.dot(delta);
        ce.last_delta[i] = delta;
        ce.last_traction[i] = tau;
      }
    }
    rec.plate_energy = plate_energy;
    rec.cohesive_work = cohesive_work_;
    rec.cohesive_recoverable = recoverable;
  }

  Snapshot take_snapshot(double opening) const {
    Snapshot snap;
    snap.opening = opening;
    for (const auto& ce : cohesives_) {
      Vector36 u_local;
      for (int i = 0; i < 36; ++i) u_local[i] = U_[ce.dofs[i]];
      const auto& ips = *ce.ips;
      for (std::size_t i = 0; i < ips.size(); ++i) {
        const Eigen::Vector3d delta = ips[i].B * u_local;
        const Eigen::Vector3d tau =
            secant_moduli(ce.states[i], delta[0], props_.penalty).cwiseProduct(delta);
        IpSample s;
        s.ce = ce.mesh_ce;
        s.x = ce.ip_xy[i][0];
        s.y = ce.ip_xy[i][1];
        s.opening = delta[0];
        s.traction = tau[0];
        s.damage = ce.states[i].damage;
        snap.samples.push_back(s);
      }
    }
    return snap;
  }

  int n_dofs_;
  int n_reduced_ = 0;
  std::vector<PlateInstance> plates_;
  std::vector<CohesiveInstance> cohesives_;
  ConstraintSet constraints_;
  CohesiveProps props_;

  std::vector<DofMap> map_;
  Eigen::SparseMatrix<double> K_;
  std::vector<double> base_values_;
  std::vector<std::vector<CeEntry>> ce_entries_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower> ldlt_;
  bool pattern_ready_ = false;

  Eigen::VectorXd U_, f_int_;
  Eigen::VectorXd r_;
  double cohesive_work_ = 0.0;
};

}  // namespace bell
