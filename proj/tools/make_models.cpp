// Regenerates the model files shipped under models/ in canonical JSON form.
// Usage: make_models [output-dir]

#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include "screwdyn/model.hpp"
#include "screwdyn/oracles.hpp"

using namespace screwdyn;

namespace {

// KUKA LBR iiwa 14 R820, frames per the modified DH convention of the
// published identification; link offsets d_se = 0.42 m (shoulder-elbow)
// and d_ew = 0.40 m (elbow-wrist) from the vendor data sheet.
ChainModel make_kuka_iiwa14() {
  const double d_se = 0.42;
  const double d_ew = 0.40;

  Mat3 rx_pos, rx_neg;  // +90 / -90 degree rotations about x
  rx_pos << 1, 0, 0, 0, 0, -1, 0, 1, 0;
  rx_neg << 1, 0, 0, 0, 0, 1, 0, -1, 0;

  const Vec3 z = Vec3::UnitZ();
  const Vec3 origin = Vec3::Zero();
  auto revolute = [&](const Mat3& R, const Vec3& r) {
    return Joint(JointKind::revolute, z, origin, 0.0, Pose{R, r});
  };

  std::vector<Joint> joints;
  joints.push_back(revolute(Mat3::Identity(), Vec3::Zero()));
  joints.push_back(revolute(rx_pos, Vec3::Zero()));
  joints.push_back(revolute(rx_neg, Vec3(0, d_se, 0)));
  joints.push_back(revolute(rx_neg, Vec3::Zero()));
  joints.push_back(revolute(rx_pos, Vec3(0, -d_ew, 0)));
  joints.push_back(revolute(rx_pos, Vec3::Zero()));
  joints.push_back(revolute(rx_neg, Vec3::Zero()));

  // Identified link parameters: mass, COM in the link frame, COM inertia
  // [xx, xy, xz, yy, yz, zz] about the COM in link-frame axes.
  struct Row {
    double m;
    double c[3];
    double theta[6];
  };
  const std::vector<Row> rows = {
      {3.94781, {-0.00351, 0.00160, -0.03139},
       {0.00455, 0.00000, -0.00000, 0.00454, 0.00001, 0.00029}},
      {4.50275, {-0.00767, 0.16669, -0.00355},
       {0.00032, 0.00000, 0.00000, 0.00010, -0.00000, 0.00042}},
      {2.45520, {-0.00225, -0.03492, -0.02652},
       {0.00223, -0.00005, 0.00007, 0.00219, 0.00007, 0.00073}},
      {2.61155, {0.00020, -0.05268, 0.03818},
       {0.03844, 0.00088, -0.00112, 0.01144, -0.00111, 0.04988}},
      {3.41000, {0.00005, -0.00237, -0.21134},
       {0.00277, -0.00001, 0.00001, 0.00284, -0.00000, 0.00012}},
      {3.38795, {0.00049, 0.02019, -0.02750},
       {0.00050, -0.00005, -0.00003, 0.00281, -0.00004, 0.00232}},
      {0.35432, {-0.03466, -0.02324, 0.07138},
       {0.00795, 0.00022, -0.00029, 0.01089, -0.00029, 0.00294}},
  };

  std::vector<BodyInertia> bodies;
  for (const Row& row : rows) {
    BodyInertia b;
    b.mass = row.m;
    b.com = Vec3(row.c[0], row.c[1], row.c[2]);
    b.inertia_com << row.theta[0], row.theta[1], row.theta[2],
        row.theta[1], row.theta[3], row.theta[4],
        row.theta[2], row.theta[4], row.theta[5];
    bodies.push_back(b);
  }

  return ChainModel("kuka-iiwa14-r820", Vec3(0, 0, -9.81), std::move(joints),
                    std::move(bodies));
}

void write(const std::filesystem::path& file, const ChainModel& model) {
  std::ofstream out(file, std::ios::binary);
  out << save_model(model);
  if (!out) {
    throw std::runtime_error("cannot write " + file.string());
  }
  std::cout << "wrote " << file.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path outdir = argc > 1 ? argv[1] : "models";
  std::filesystem::create_directories(outdir);
  try {
    write(outdir / "planar_2r.json", make_two_r_model(TwoRParams{}));
    write(outdir / "kuka_iiwa14.json", make_kuka_iiwa14());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
