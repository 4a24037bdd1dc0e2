// Copyright 2026 The trajenergy Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trajenergy/robot_model.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace {

using namespace trajenergy;

std::filesystem::path temp_dir() {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("trajenergy_model_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::filesystem::path& path,
                       const std::string& body) {
  std::ofstream out(path);
  out << body;
  return path.string();
}

nlohmann::json single_link_json() {
  return nlohmann::json::parse(R"({
    "joints": [{"length": 1.0, "mass": 1.0, "com_offset": 0.5,
                "inertia_zz": 0.1, "axis": [0, 0, 1],
                "q_min": -3.0, "q_max": 3.0, "v_max": 1.0, "a_max": 2.0}],
    "gravity": [0, 0, -9.81]
  })");
}

TEST(RobotModel, LoadsBundledSevenDof) {
  const RobotModel model =
      load_robot(std::string(TRAJENERGY_DATA_DIR) + "/seven_dof.json");
  EXPECT_EQ(model.n_joints(), 7);
  EXPECT_EQ(robot_to_json(model).dump(), robot_to_json(default_seven_dof()).dump());
}

TEST(RobotModel, LoadsSingleLinkFile) {
  const auto dir = temp_dir();
  const std::string path =
      write_file(dir / "one.json", single_link_json().dump());
  const RobotModel model = load_robot(path);
  EXPECT_EQ(model.n_joints(), 1);
  EXPECT_DOUBLE_EQ(model.links[0].mass, 1.0);
  EXPECT_DOUBLE_EQ(model.links[0].length, 1.0);
}

TEST(RobotModel, RejectsZeroVmaxNamingField) {
  nlohmann::json doc = single_link_json();
  doc["joints"][0]["v_max"] = 0.0;
  const auto dir = temp_dir();
  const std::string path = write_file(dir / "bad.json", doc.dump());
  try {
    load_robot(path);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("v_max"), std::string::npos);
  }
}

TEST(RobotModel, DefaultSevenDofIsDeterministic) {
  EXPECT_EQ(robot_to_json(default_seven_dof()).dump(),
            robot_to_json(default_seven_dof()).dump());
}

TEST(RobotModel, DefaultSevenDofLimitsOrdered) {
  const RobotModel model = default_seven_dof();
  for (const JointLimits& lim : model.joint_limits) {
    EXPECT_LT(lim.q_min, lim.q_max);
    EXPECT_GT(lim.v_max, 0.0);
    EXPECT_GT(lim.a_max, 0.0);
  }
}

TEST(RobotModel, SaveLoadRoundTripIsIdentity) {
  const auto dir = temp_dir();
  const std::string path = (dir / "roundtrip.json").string();
  const RobotModel model = default_seven_dof();
  save_robot(model, path);
  const RobotModel loaded = load_robot(path);
  EXPECT_EQ(robot_to_json(loaded).dump(), robot_to_json(model).dump());
}

// Every single-field corruption of the bundled model must be rejected.
TEST(RobotModel, RejectsEverySingleFieldCorruption) {
  const nlohmann::json clean = robot_to_json(default_seven_dof());
  struct Corruption {
    const char* field;
    nlohmann::json value;
  };
  const std::vector<Corruption> corruptions = {
      {"length", -1.0},          {"mass", 0.0},
      {"com_offset", 0.9},       // exceeds the 0.3 link length
      {"inertia_zz", -0.5},      {"axis", {0.0, 0.0, 0.0}},
      {"q_min", 4.0},            // above q_max
      {"q_max", -4.0},           {"v_max", 0.0},
      {"a_max", -5.0},
  };
  const auto dir = temp_dir();
  int case_index = 0;
  for (std::size_t joint = 0; joint < 7; ++joint) {
    for (const Corruption& corruption : corruptions) {
      nlohmann::json doc = clean;
      doc["joints"][joint][corruption.field] = corruption.value;
      const std::string path = write_file(
          dir / ("corrupt_" + std::to_string(case_index++) + ".json"),
          doc.dump());
      try {
        load_robot(path);
        FAIL() << "corruption accepted: joints[" << joint << "]."
               << corruption.field;
      } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find(corruption.field),
                  std::string::npos)
            << "message should name " << corruption.field << ": " << e.what();
      }
    }
  }
}

TEST(RobotModel, RejectsUnknownKey) {
  nlohmann::json doc = single_link_json();
  doc["payload"] = 1.0;
  const auto dir = temp_dir();
  const std::string path = write_file(dir / "unknown.json", doc.dump());
  EXPECT_THROW(load_robot(path), ValidationError);
}

TEST(RobotModel, RejectsMissingKey) {
  nlohmann::json doc = single_link_json();
  doc["joints"][0].erase("mass");
  const auto dir = temp_dir();
  const std::string path = write_file(dir / "missing.json", doc.dump());
  EXPECT_THROW(load_robot(path), ValidationError);
}

TEST(RobotModel, MalformedJsonIsParseError) {
  const auto dir = temp_dir();
  const std::string path = write_file(dir / "broken.json", "{joints: [");
  EXPECT_THROW(load_robot(path), ParseError);
}

TEST(RobotModel, MissingFileIsParseError) {
  try {
    load_robot("/nonexistent/robot.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/robot.json"),
              std::string::npos);
  }
}

TEST(RobotModel, GravityDefaultsToStandard) {
  nlohmann::json doc = single_link_json();
  doc.erase("gravity");
  const auto dir = temp_dir();
  const std::string path = write_file(dir / "nograv.json", doc.dump());
  const RobotModel model = load_robot(path);
  EXPECT_DOUBLE_EQ(model.gravity.z(), -9.81);
  EXPECT_DOUBLE_EQ(model.gravity.x(), 0.0);
}

TEST(RobotModel, GravityMayBeZero) {
  nlohmann::json doc = single_link_json();
  doc["gravity"] = {0.0, 0.0, 0.0};
  const auto dir = temp_dir();
  const std::string path = write_file(dir / "zerograv.json", doc.dump());
  EXPECT_TRUE(load_robot(path).gravity.isZero());
}

}  // namespace
