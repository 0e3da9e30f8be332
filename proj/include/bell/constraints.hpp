#pragma once

#include <stdexcept>
#include <vector>

namespace bell {

/// Two-term homogeneous multipoint constraint U_slave = ratio * U_master,
/// used for the moment-free edge conditions tying curvature DOFs.
struct MpcRow {
  int slave = -1;
  int master = -1;
  double ratio = 0.0;
};

/// Partition of the boundary conditions: DOFs pinned to zero, DOFs driven by
/// the load ramp, and multipoint rows. A DOF may appear in at most one
/// category, and constraint masters must remain unconstrained.
struct ConstraintSet {
  std::vector<int> fixed;
  std::vector<int> driven;
  std::vector<MpcRow> mpc;

  void validate(int dof_count) const {
    std::vector<int> kind(dof_count, 0);
    auto mark = [&](int dof, int k, const char* what) {
      if (dof < 0 || dof >= dof_count) {
        throw std::invalid_argument(std::string("constraints: ") + what + " DOF out of range");
      }
      if (kind[dof] != 0) {
        throw std::invalid_argument(std::string("constraints: DOF in more than one category (") +
                                    what + ")");
      }
      kind[dof] = k;
    };
    for (int d : fixed) mark(d, 1, "fixed");
    for (int d : driven) mark(d, 2, "driven");
    for (const auto& row : mpc) mark(row.slave, 3, "slave");
    for (const auto& row : mpc) {
      if (row.master < 0 || row.master >= dof_count) {
        throw std::invalid_argument("constraints: master DOF out of range");
      }
      if (kind[row.master] != 0) {
        throw std::invalid_argument("constraints: master DOF is itself constrained");
      }
    }
  }
};

}  // namespace bell
