#include "eqnav/sym/extensions.hpp"

namespace eqnav::sym {

using namespace eqnav::lie;

int extra_dim(ExtraKind k) {
  switch (k) {
    case ExtraKind::RotCalib: return 3;
    case ExtraKind::PoseCalib: return 6;
    case ExtraKind::LeverArm: return 3;
    case ExtraKind::Direction: return 3;
    case ExtraKind::LandmarkSot3: return 4;
  }
  return 0;
}

ExtendedSymmetry::ExtendedSymmetry(const WorldParams& world,
                                   std::vector<ExtraKind> extras)
    : world_(world), kinds_(std::move(extras)), base_(world) {
  int off = 15;
  for (ExtraKind k : kinds_) {
    offsets_.push_back(off);
    off += extra_dim(k);
  }
  dof_ = off;
}

ExtendedSymmetry::Elem ExtendedSymmetry::identity() const {
  Elem e;
  e.core = base_.identity();
  e.extras.resize(kinds_.size());
  return e;
}

ExtendedSymmetry::Elem ExtendedSymmetry::compose(const Elem& a,
                                                 const Elem& b) const {
  Elem x;
  x.core = base_.compose(a.core, b.core);
  x.extras.resize(kinds_.size());
  const Mat3& A = a.core.D.R.R;
  for (size_t i = 0; i < kinds_.size(); ++i) {
    switch (kinds_[i]) {
      case ExtraKind::RotCalib:
        x.extras[i].rot = a.extras[i].rot * b.extras[i].rot;
        break;
      case ExtraKind::PoseCalib:
        x.extras[i].pose = a.extras[i].pose * b.extras[i].pose;
        break;
      case ExtraKind::LeverArm:
        x.extras[i].vec = a.extras[i].vec + A * b.extras[i].vec;
        break;
      case ExtraKind::Direction:
        // Nav rotation conjugates the factor so that the stated action
        // composes as a right action.
        x.extras[i].rot = a.extras[i].rot * SO3(Mat3(A * b.extras[i].rot.R * A.transpose()));
        break;
      case ExtraKind::LandmarkSot3:
        x.extras[i].sot = a.extras[i].sot * b.extras[i].sot;
        break;
    }
  }
  return x;
}

ExtendedSymmetry::Elem ExtendedSymmetry::inverse(const Elem& a) const {
  Elem x;
  x.core = base_.inverse(a.core);
  x.extras.resize(kinds_.size());
  const Mat3& A = a.core.D.R.R;
  for (size_t i = 0; i < kinds_.size(); ++i) {
    switch (kinds_[i]) {
      case ExtraKind::RotCalib:
        x.extras[i].rot = a.extras[i].rot.inv();
        break;
      case ExtraKind::PoseCalib:
        x.extras[i].pose = a.extras[i].pose.inv();
        break;
      case ExtraKind::LeverArm:
        x.extras[i].vec = -(A.transpose() * a.extras[i].vec);
        break;
      case ExtraKind::Direction:
        x.extras[i].rot = SO3(Mat3(A.transpose() * a.extras[i].rot.R.transpose() * A));
        break;
      case ExtraKind::LandmarkSot3:
        x.extras[i].sot = a.extras[i].sot.inv();
        break;
    }
  }
  return x;
}

ExtendedSymmetry::State ExtendedSymmetry::phi(const Elem& X,
                                              const State& xi) const {
  State out;
  out.core = base_.phi(X.core, xi.core);
  out.extras.resize(kinds_.size());
  const Mat3 At = X.core.D.R.R.transpose();
  const SE3 C = Theta(X.core.D);
  for (size_t i = 0; i < kinds_.size(); ++i) {
    switch (kinds_[i]) {
      case ExtraKind::RotCalib:
        out.extras[i].rot = SO3(Mat3(At * xi.extras[i].rot.R * X.extras[i].rot.R));
        break;
      case ExtraKind::PoseCalib:
        out.extras[i].pose = C.inv() * xi.extras[i].pose * X.extras[i].pose;
        break;
      case ExtraKind::LeverArm:
        out.extras[i].vec = At * (xi.extras[i].vec - X.extras[i].vec);
        break;
      case ExtraKind::Direction: {
        const Mat3& R = xi.core.T.R.R;
        out.extras[i].vec =
            R * X.extras[i].rot.R.transpose() * R.transpose() * xi.extras[i].vec;
        break;
      }
      case ExtraKind::LandmarkSot3: {
        // Requires a PoseCalib row earlier in the list for the camera.
        const SE3 P = Theta(xi.core.T);
        SE3 S;
        SE3 E;
        for (size_t j = 0; j < i; ++j) {
          if (kinds_[j] == ExtraKind::PoseCalib) {
            S = xi.extras[j].pose;
            E = X.extras[j].pose;
          }
        }
        const SE3 PS = P * S;
        out.extras[i].vec =
            (PS * E) * (X.extras[i].sot.inv() * (PS.inv() * xi.extras[i].vec));
        break;
      }
    }
  }
  return out;
}

VecX ExtendedSymmetry::lift(const State& xi, const VecX& u) const {
  VecX lam(dof_);
  lam.head<15>() = base_.lift(xi.core, u);
  const Vec9 l1 = lam.head<9>();
  const Vec3 wmb = l1.head<3>();
  for (size_t i = 0; i < kinds_.size(); ++i) {
    const int off = offsets_[i];
    switch (kinds_[i]) {
      case ExtraKind::RotCalib:
        lam.segment<3>(off) = xi.extras[i].rot.R.transpose() * wmb;
        break;
      case ExtraKind::PoseCalib:
        lam.segment<6>(off) = xi.extras[i].pose.inv().Ad() * Upsilon(l1);
        break;
      case ExtraKind::LeverArm:
        lam.segment<3>(off) = xi.extras[i].vec.cross(wmb);
        break;
      case ExtraKind::Direction:
        lam.segment<3>(off).setZero();
        break;
      case ExtraKind::LandmarkSot3: {
        SE3 S;
        for (size_t j = 0; j < i; ++j)
          if (kinds_[j] == ExtraKind::PoseCalib) S = xi.extras[j].pose;
        const SE3 PS = Theta(xi.core.T) * S;
        const Vec3 cf = PS.inv() * xi.extras[i].vec;
        const double n2 = cf.squaredNorm();
        // se(3) lift of the camera factor, split into (Omega, omega_t).
        Vec6 lam3;
        for (size_t j = 0; j < i; ++j)
          if (kinds_[j] == ExtraKind::PoseCalib)
            lam3 = lam.segment<6>(offsets_[j]);
        const Vec3 Om = lam3.head<3>();
        const Vec3 wt = lam3.tail<3>();
        lam.segment<3>(off) = Om + cf.cross(wt) / n2;
        lam(off + 3) = cf.dot(wt) / n2;
        break;
      }
    }
  }
  return lam;
}

ExtendedSymmetry::State ExtendedSymmetry::retract(const State& xi,
                                                  const VecX& d) const {
  State out = xi;
  out.core.T.R = xi.core.T.R * SO3::Exp(d.head<3>());
  out.core.T.v += d.segment<3>(3);
  out.core.T.p += d.segment<3>(6);
  out.core.b = xi.core.b + d.segment<6>(9);
  for (size_t i = 0; i < kinds_.size(); ++i) {
    const int off = offsets_[i];
    switch (kinds_[i]) {
      case ExtraKind::RotCalib:
        out.extras[i].rot = xi.extras[i].rot * SO3::Exp(d.segment<3>(off));
        break;
      case ExtraKind::PoseCalib:
        out.extras[i].pose = xi.extras[i].pose * SE3::Exp(d.segment<6>(off));
        break;
      case ExtraKind::LeverArm:
      case ExtraKind::Direction:
        out.extras[i].vec = xi.extras[i].vec + d.segment<3>(off);
        break;
      case ExtraKind::LandmarkSot3:
        out.extras[i].vec = xi.extras[i].vec + d.segment<3>(off);
        break;
    }
  }
  return out;
}

VecX ExtendedSymmetry::delta(const State& a, const State& b) const {
  VecX d = VecX::Zero(dof_);
  d.head<3>() = (a.core.T.R.inv() * b.core.T.R).log();
  d.segment<3>(3) = b.core.T.v - a.core.T.v;
  d.segment<3>(6) = b.core.T.p - a.core.T.p;
  d.segment<6>(9) = b.core.b - a.core.b;
  for (size_t i = 0; i < kinds_.size(); ++i) {
    const int off = offsets_[i];
    switch (kinds_[i]) {
      case ExtraKind::RotCalib:
        d.segment<3>(off) = (a.extras[i].rot.inv() * b.extras[i].rot).log();
        break;
      case ExtraKind::PoseCalib:
        d.segment<6>(off) = (a.extras[i].pose.inv() * b.extras[i].pose).log();
        break;
      case ExtraKind::LeverArm:
      case ExtraKind::Direction:
        d.segment<3>(off) = b.extras[i].vec - a.extras[i].vec;
        break;
      case ExtraKind::LandmarkSot3:
        d.segment<3>(off) = b.extras[i].vec - a.extras[i].vec;
        break;
    }
  }
  return d;
}

Vec3 ExtendedSymmetry::h_position_lever(const State& xi, const Vec3& pi_raw,
                                        int lever_idx) const {
  const Mat3& R = xi.core.T.R.R;
  return R.transpose() *
         (pi_raw - (xi.core.T.p + R * xi.extras[lever_idx].vec));
}

Vec3 ExtendedSymmetry::rho_position_lever(const Elem& X, const Vec3& y,
                                          int lever_idx) const {
  return X.core.D.R.R.transpose() *
         (y - X.core.D.p + X.extras[lever_idx].vec);
}

Vec3 ExtendedSymmetry::h_bearing(const State& xi, int pose_idx,
                                 int lm_idx) const {
  const SE3 PS = Theta(xi.core.T) * xi.extras[pose_idx].pose;
  return pi_s2(PS.inv() * xi.extras[lm_idx].vec);
}

Vec3 ExtendedSymmetry::rho_bearing(const Elem& X, const Vec3& y,
                                   int lm_idx) const {
  return X.extras[lm_idx].sot.R.R.transpose() * y;
}

}  // namespace eqnav::sym
