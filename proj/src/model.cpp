#include "screwdyn/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace screwdyn {

using ojson = nlohmann::ordered_json;

Mat6 spatial_inertia(const BodyInertia& body) {
  if (!(body.mass > 0.0) || !std::isfinite(body.mass)) {
    throw std::invalid_argument("spatial_inertia: mass must be positive (got " +
                                std::to_string(body.mass) + ")");
  }
  const Mat3 c = skew(body.com);
  Mat6 m = Mat6::Zero();
  m.topLeftCorner<3, 3>() =
      body.R_bc * body.inertia_com * body.R_bc.transpose() - body.mass * c * c;
  m.topRightCorner<3, 3>() = body.mass * c;
  m.bottomLeftCorner<3, 3>() = -body.mass * c;
  m.bottomRightCorner<3, 3>() = body.mass * Mat3::Identity();
  return m;
}

JointScrew joint_screw_from_axis(JointKind kind, const Vec3& axis, const Vec3& point,
                                 double pitch) {
  const double norm = axis.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw std::invalid_argument("axis must be unit length (|axis| = " +
                                std::to_string(norm) + ")");
  }
  if (!std::isfinite(pitch)) {
    throw std::invalid_argument("pitch must be finite");
  }
  if (kind != JointKind::helical && pitch != 0.0) {
    throw std::invalid_argument(std::string(to_string(kind)) +
                                " joints take no pitch");
  }
  JointScrew s;
  s.kind = kind;
  if (kind == JointKind::prismatic) {
    s.xi = Vec3::Zero();
    s.eta = axis / norm;
    return s;
  }
  s.xi = axis / norm;
  s.pitch = pitch;
  s.eta = point.cross(s.xi) + pitch * s.xi;
  return s;
}

namespace {

bool is_rotation(const Mat3& r, double tol = 1e-12) {
  return (r.transpose() * r - Mat3::Identity()).norm() <= tol &&
         std::abs(r.determinant() - 1.0) <= tol;
}

std::string idx(const char* group, int i, const char* field = nullptr) {
  std::string s = std::string(group) + "[" + std::to_string(i) + "]";
  if (field) s += std::string(".") + field;
  return s;
}

}  // namespace

ChainModel::ChainModel(std::string name, const Vec3& gravity, std::vector<Joint> joints,
                       std::vector<BodyInertia> bodies)
    : name_(std::move(name)),
      gravity_(gravity),
      joints_(std::move(joints)),
      bodies_(std::move(bodies)) {
  if (joints_.empty()) throw ModelError("joints: at least one joint is required");
  if (bodies_.size() != joints_.size()) {
    throw ModelError("bodies: expected one body per joint (" +
                     std::to_string(joints_.size()) + " joints, " +
                     std::to_string(bodies_.size()) + " bodies)");
  }
  if (!gravity_.allFinite()) throw ModelError("gravity: entries must be finite");

  for (std::size_t i = 0; i < joints_.size(); ++i) {
    const Joint& j = joints_[i];
    if (!is_rotation(j.ref.R)) {
      throw ModelError(idx("joints", static_cast<int>(i), "B.R") +
                       ": not a rotation matrix");
    }
    if (!j.ref.r.allFinite() || !j.axis.allFinite() || !j.point.allFinite()) {
      throw ModelError(idx("joints", static_cast<int>(i)) +
                       ": entries must be finite");
    }
  }
  for (std::size_t i = 0; i < bodies_.size(); ++i) {
    const BodyInertia& b = bodies_[i];
    const int bi = static_cast<int>(i);
    if (!(b.mass > 0.0) || !std::isfinite(b.mass)) {
      throw ModelError(idx("bodies", bi, "mass") + ": must be positive");
    }
    if (!b.com.allFinite()) {
      throw ModelError(idx("bodies", bi, "com") + ": entries must be finite");
    }
    const double scale = 1.0 + b.inertia_com.norm();
    if ((b.inertia_com - b.inertia_com.transpose()).norm() > 1e-12 * scale) {
      throw ModelError(idx("bodies", bi, "inertia_com") + ": must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Mat3> eig(b.inertia_com);
    if (eig.eigenvalues().minCoeff() < -1e-10 * scale) {
      throw ModelError(idx("bodies", bi, "inertia_com") +
                       ": not positive semidefinite (min eigenvalue = " +
                       std::to_string(eig.eigenvalues().minCoeff()) + ")");
    }
    if (!is_rotation(b.R_bc)) {
      throw ModelError(idx("bodies", bi, "R_bc") + ": not a rotation matrix");
    }
  }
}

namespace {

const ojson& require_key(const ojson& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ModelError(path + ": missing field '" + key + "'");
  return *it;
}

void reject_unknown(const ojson& obj, std::initializer_list<const char*> allowed,
                    const std::string& path) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) throw ModelError(path + ": unknown field '" + item.key() + "'");
  }
}

double get_number(const ojson& v, const std::string& path) {
  if (!v.is_number()) throw ModelError(path + ": expected a number");
  return v.get<double>();
}

std::vector<double> get_numbers(const ojson& v, std::size_t count,
                                const std::string& path) {
  if (!v.is_array() || v.size() != count) {
    throw ModelError(path + ": expected an array of " + std::to_string(count) +
                     " numbers");
  }
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(get_number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Vec3 get_vec3(const ojson& v, const std::string& path) {
  const auto n = get_numbers(v, 3, path);
  return Vec3(n[0], n[1], n[2]);
}

Mat3 get_mat3(const ojson& v, const std::string& path) {
  const auto n = get_numbers(v, 9, path);
  Mat3 m;
  m << n[0], n[1], n[2], n[3], n[4], n[5], n[6], n[7], n[8];  // row-major
  return m;
}

Mat3 get_inertia6(const ojson& v, const std::string& path) {
  // [xx, xy, xz, yy, yz, zz]
  const auto n = get_numbers(v, 6, path);
  Mat3 m;
  m << n[0], n[1], n[2], n[1], n[3], n[4], n[2], n[4], n[5];
  return m;
}

JointKind get_kind(const ojson& v, const std::string& path) {
  if (!v.is_string()) throw ModelError(path + ": expected a string");
  const std::string s = v.get<std::string>();
  if (s == "revolute") return JointKind::revolute;
  if (s == "prismatic") return JointKind::prismatic;
  if (s == "helical") return JointKind::helical;
  throw ModelError(path + ": unknown joint kind '" + s +
                   "' (expected revolute, prismatic, or helical)");
}

ChainModel from_json(const ojson& root) {
  if (!root.is_object()) throw ModelError("model: expected a JSON object");
  reject_unknown(root, {"name", "gravity", "joints", "bodies"}, "model");

  std::string name;
  if (auto it = root.find("name"); it != root.end()) {
    if (!it->is_string()) throw ModelError("name: expected a string");
    name = it->get<std::string>();
  }
  const Vec3 gravity = get_vec3(require_key(root, "gravity", "model"), "gravity");

  const ojson& joints_j = require_key(root, "joints", "model");
  if (!joints_j.is_array() || joints_j.empty()) {
    throw ModelError("joints: expected a non-empty array");
  }
  std::vector<Joint> joints;
  for (std::size_t i = 0; i < joints_j.size(); ++i) {
    const std::string path = idx("joints", static_cast<int>(i));
    const ojson& jj = joints_j[i];
    if (!jj.is_object()) throw ModelError(path + ": expected an object");
    reject_unknown(jj, {"kind", "axis", "point", "pitch", "B"}, path);

    const JointKind kind = get_kind(require_key(jj, "kind", path), path + ".kind");
    const Vec3 axis = get_vec3(require_key(jj, "axis", path), path + ".axis");
    const Vec3 point = get_vec3(require_key(jj, "point", path), path + ".point");
    double pitch = 0.0;
    if (auto it = jj.find("pitch"); it != jj.end()) {
      if (kind != JointKind::helical) {
        throw ModelError(path + ".pitch: only helical joints take a pitch");
      }
      pitch = get_number(*it, path + ".pitch");
    } else if (kind == JointKind::helical) {
      throw ModelError(path + ": missing field 'pitch'");
    }

    const ojson& bj = require_key(jj, "B", path);
    if (!bj.is_object()) throw ModelError(path + ".B: expected an object");
    reject_unknown(bj, {"R", "r"}, path + ".B");
    Pose ref;
    ref.R = get_mat3(require_key(bj, "R", path + ".B"), path + ".B.R");
    ref.r = get_vec3(require_key(bj, "r", path + ".B"), path + ".B.r");

    try {
      joints.emplace_back(kind, axis, point, pitch, ref);
    } catch (const std::invalid_argument& e) {
      throw ModelError(path + ": " + e.what());
    }
  }

  const ojson& bodies_j = require_key(root, "bodies", "model");
  if (!bodies_j.is_array()) throw ModelError("bodies: expected an array");
  std::vector<BodyInertia> bodies;
  for (std::size_t i = 0; i < bodies_j.size(); ++i) {
    const std::string path = idx("bodies", static_cast<int>(i));
    const ojson& bj = bodies_j[i];
    if (!bj.is_object()) throw ModelError(path + ": expected an object");
    reject_unknown(bj, {"mass", "com", "inertia_com", "R_bc"}, path);

    BodyInertia b;
    b.mass = get_number(require_key(bj, "mass", path), path + ".mass");
    b.com = get_vec3(require_key(bj, "com", path), path + ".com");
    b.inertia_com = get_inertia6(require_key(bj, "inertia_com", path),
                                 path + ".inertia_com");
    if (auto it = bj.find("R_bc"); it != bj.end()) {
      b.R_bc = get_mat3(*it, path + ".R_bc");
    }
    bodies.push_back(b);
  }

  return ChainModel(std::move(name), gravity, std::move(joints), std::move(bodies));
}

// Pretty-printer that keeps arrays of numbers on one line. Number text
// comes from the library dump, so parse -> save is byte-stable.
void write_value(std::ostream& out, const ojson& v, int indent) {
  const std::string pad(indent, ' ');
  if (v.is_object()) {
    out << "{\n";
    std::size_t i = 0;
    for (const auto& item : v.items()) {
      out << pad << "  " << ojson(item.key()).dump() << ": ";
      write_value(out, item.value(), indent + 2);
      out << (++i < v.size() ? ",\n" : "\n");
    }
    out << pad << "}";
  } else if (v.is_array()) {
    bool scalars_only = true;
    for (const auto& e : v) {
      if (e.is_array() || e.is_object()) scalars_only = false;
    }
    if (scalars_only) {
      out << "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << (i ? ", " : "") << v[i].dump();
      }
      out << "]";
    } else {
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << pad << "  ";
        write_value(out, v[i], indent + 2);
        out << (i + 1 < v.size() ? ",\n" : "\n");
      }
      out << pad << "]";
    }
  } else {
    out << v.dump();
  }
}

ojson vec_to_json(const Vec3& v) { return ojson::array({v.x(), v.y(), v.z()}); }

ojson mat_to_json(const Mat3& m) {
  ojson a = ojson::array();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a.push_back(m(r, c));
  return a;
}

}  // namespace

ChainModel parse_model(const std::string& json_text, const std::string& origin) {
  ojson root;
  try {
    root = ojson::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(origin + ": " + e.what());
  }
  return from_json(root);
}

ChainModel load_model(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ModelError(file.string() + ": cannot open model file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), file.string());
}

std::string save_model(const ChainModel& model) {
  ojson root;
  root["name"] = model.name();
  root["gravity"] = vec_to_json(model.gravity());

  ojson joints = ojson::array();
  for (int i = 0; i < model.dof(); ++i) {
    const Joint& j = model.joint(i);
    ojson jj;
    jj["kind"] = to_string(j.kind);
    jj["axis"] = vec_to_json(j.axis);
    jj["point"] = vec_to_json(j.point);
    if (j.kind == JointKind::helical) jj["pitch"] = j.pitch;
    jj["B"] = ojson{{"R", mat_to_json(j.ref.R)}, {"r", vec_to_json(j.ref.r)}};
    joints.push_back(std::move(jj));
  }
  root["joints"] = std::move(joints);

  ojson bodies = ojson::array();
  for (int i = 0; i < model.dof(); ++i) {
    const BodyInertia& b = model.body(i);
    ojson bj;
    bj["mass"] = b.mass;
    bj["com"] = vec_to_json(b.com);
    const Mat3& t = b.inertia_com;
    bj["inertia_com"] =
        ojson::array({t(0, 0), t(0, 1), t(0, 2), t(1, 1), t(1, 2), t(2, 2)});
    if (b.R_bc != Mat3::Identity()) bj["R_bc"] = mat_to_json(b.R_bc);
    bodies.push_back(std::move(bj));
  }
  root["bodies"] = std::move(bodies);

  std::ostringstream out;
  write_value(out, root, 0);
  out << "\n";
  return out.str();
}

ExternalWrenchTrajectory::ExternalWrenchTrajectory(int n_bodies) : n_(n_bodies) {
  if (n_bodies <= 0) {
    throw std::invalid_argument("ExternalWrenchTrajectory: need at least one body");
  }
  fns_.resize(static_cast<std::size_t>(n_bodies));
}

ExternalWrenchTrajectory ExternalWrenchTrajectory::end_effector(int n_bodies, BodyFn w,
                                                                BodyFn w_dot,
                                                                BodyFn w_ddot) {
  ExternalWrenchTrajectory traj(n_bodies);
  traj.set_body(n_bodies - 1, std::move(w), std::move(w_dot), std::move(w_ddot));
  return traj;
}

void ExternalWrenchTrajectory::set_body(int i, BodyFn w, BodyFn w_dot, BodyFn w_ddot) {
  if (i < 0 || i >= n_) {
    throw std::invalid_argument("ExternalWrenchTrajectory: body index " +
                                std::to_string(i) + " out of range");
  }
  if (w_ddot && !w_dot) {
    throw std::invalid_argument(
        "ExternalWrenchTrajectory: a wrench acceleration requires the wrench rate");
  }
  if ((w_dot || w_ddot) && !w) {
    throw std::invalid_argument(
        "ExternalWrenchTrajectory: wrench derivatives require the wrench itself");
  }
  fns_[static_cast<std::size_t>(i)] = {std::move(w), std::move(w_dot),
                                       std::move(w_ddot)};
}

VecX ExternalWrenchTrajectory::eval(int order, double t) const {
  VecX out = VecX::Zero(6 * n_);
  for (int i = 0; i < n_; ++i) {
    const BodyFn& f = fns_[static_cast<std::size_t>(i)][static_cast<std::size_t>(order)];
    if (f) out.segment<6>(6 * i) = f(t).vec();
  }
  return out;
}

VecX ExternalWrenchTrajectory::stacked(double t) const { return eval(0, t); }
VecX ExternalWrenchTrajectory::stacked_rate(double t) const { return eval(1, t); }
VecX ExternalWrenchTrajectory::stacked_accel(double t) const { return eval(2, t); }

}  // namespace screwdyn
