#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hqc/catalog.hpp"
#include "hqc/means.hpp"
#include "hqc/star.hpp"
#include "hqc/verify.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string output;  // stdout and stderr
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("hqc_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run(const std::string& args, const std::string& env = {}) const {
    const auto log = dir_ / "run.log";
    const std::string command = (env.empty() ? "" : env + " ") + "'" HQC_CLI "' " + args + " >'" +
                                log.string() + "' 2>&1";
    const int raw = std::system(command.c_str());
    Outcome r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.output = read(log);
    return r;
  }

  fs::path out(const std::string& name) const {
    fs::create_directories(dir_ / name);
    return dir_ / name;
  }

  static std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_F(Cli, MeansMatchesLibrary) {
  const auto o = out("means");
  auto r = run("means --catalog H --k 0.5 --p 2 --r 0.5,0.9 --out " + quoted(o));
  ASSERT_EQ(r.status, 0) << r.output;
  std::ifstream in(o / "means.csv");
  auto curves = hqc::read_means_csv(in);
  ASSERT_EQ(curves.size(), 1u);
  ASSERT_EQ(curves[0].radii, (std::vector<double>{0.5, 0.9}));
  auto H = hqc::catalog("H", 0.5);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(curves[0].values[i], hqc::integral_means(H, 2.0, curves[0].radii[i]));
  }
}

TEST_F(Cli, MeansOfIdentity) {
  const auto o = out("id");
  auto r = run("means --corpus identity --p 1 --r 0.5 --out " + quoted(o));
  ASSERT_EQ(r.status, 0) << r.output;
  std::ifstream in(o / "means.csv");
  auto curves = hqc::read_means_csv(in);
  ASSERT_EQ(curves.size(), 1u);
  EXPECT_NEAR(curves[0].values.at(0), 0.5, 1e-14);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  const auto o = quoted(out("err"));
  const std::vector<std::string> bad{
      "means --catalog H --k 0.5 --p 0 --r 0.5",
      "means --catalog H --k 0.5 --p 1 --r 1.0",
      "means --catalog H --k 0.5 --p -1 --r 0.5",
      "means --catalog H --k 1.5 --p 1 --r 0.5",
      "means --catalog nope --p 1 --r 0.5",
      "means --p 1 --r 0.5",
      "transmogrify --catalog H",
      "",
      "growth --corpus identity --p 1 --depth 3",
      "verify --suite everything",
      "verify --class round",
      "verify --K 0.5",
  };
  for (const auto& args : bad) {
    auto r = run(args + " --out " + o);
    EXPECT_EQ(r.status, 2) << args << "\n" << r.output;
    EXPECT_FALSE(r.output.empty()) << args;
  }
}

TEST_F(Cli, UnknownFlagNamesTheKey) {
  auto r = run("means --catalog H --p 1 --r 0.5 --frobnicate 2");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("--frobnicate"), std::string::npos) << r.output;
  EXPECT_EQ(std::count(r.output.begin(), r.output.end(), '\n'), 1) << r.output;
}

TEST_F(Cli, MalformedConfigKeyNamesTheKey) {
  const auto cfg = dir_ / "bad.ini";
  std::ofstream(cfg) << "catalog=H\nfrobnicate=1\n";
  auto r = run("means --config " + quoted(cfg) + " --p 1 --r 0.5 --out " + quoted(out("o")));
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.output.find("frobnicate"), std::string::npos) << r.output;
  EXPECT_EQ(std::count(r.output.begin(), r.output.end(), '\n'), 1) << r.output;
}

TEST_F(Cli, ConfigValuesAndPrecedence) {
  const auto cfg = dir_ / "run.ini";
  std::ofstream(cfg) << "catalog=koebe\np=1\nr=0.25,0.5\n";
  const auto a = out("a"), b = out("b");
  ASSERT_EQ(run("means --config " + quoted(cfg) + " --out " + quoted(a)).status, 0);
  ASSERT_EQ(run("means --config " + quoted(cfg) + " --p 2 --out " + quoted(b)).status, 0);
  std::ifstream ia(a / "means.csv"), ib(b / "means.csv");
  auto ca = hqc::read_means_csv(ia), cb = hqc::read_means_csv(ib);
  ASSERT_EQ(ca.size(), 1u);
  ASSERT_EQ(cb.size(), 1u);
  EXPECT_EQ(ca[0].p, 1.0);
  EXPECT_EQ(cb[0].p, 2.0);
  EXPECT_EQ(ca[0].radii, (std::vector<double>{0.25, 0.5}));
  EXPECT_EQ(cb[0].radii, ca[0].radii);
}

TEST_F(Cli, NumericalFailuresExitThree) {
  auto zero = run("star --catalog G --k 0 --r 0.5 --out " + quoted(out("z")));
  EXPECT_EQ(zero.status, 3) << zero.output;
  auto edge = run("means --catalog koebe --p 2 --r 0.99999 --out " + quoted(out("e")));
  EXPECT_EQ(edge.status, 3) << edge.output;
}

TEST_F(Cli, SvgDoesNotChangeNumbers) {
  const auto plain = out("plain"), plotted = out("plotted");
  const std::string args = "means --catalog scrH --k 0.25 --p 0.5,2 --depth 8";
  ASSERT_EQ(run(args + " --format csv --out " + quoted(plain)).status, 0);
  ASSERT_EQ(run(args + " --format csv,svg --log-axes xy --out " + quoted(plotted)).status, 0);
  EXPECT_EQ(read(plain / "means.csv"), read(plotted / "means.csv"));
  EXPECT_FALSE(fs::exists(plain / "means.svg"));
  const auto svg = read(plotted / "means.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  const auto o = out("env");
  auto r = run("means --corpus identity --p 1 --r 0.5", "HQC_OUTPUT_DIR=" + quoted(o));
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_TRUE(fs::exists(o / "means.csv"));
}

TEST_F(Cli, JsonMeansAgreesWithCsv) {
  const auto o = out("json");
  ASSERT_EQ(run("means --catalog half-plane --p 1,3 --r 0.3,0.9 --format csv,json --out " + quoted(o))
                .status,
            0);
  std::ifstream in(o / "means.csv");
  auto curves = hqc::read_means_csv(in);
  auto j = nlohmann::json::parse(read(o / "means.json"));
  ASSERT_TRUE(j.is_object() || j.is_array());
  const auto text = j.dump();
  for (const auto& c : curves) {
    for (double v : c.values) {
      std::ostringstream s;
      s << nlohmann::json(v).dump();
      EXPECT_NE(text.find(s.str()), std::string::npos) << s.str();
    }
  }
}

TEST_F(Cli, StarRoundTrip) {
  const auto o = out("star");
  auto r = run("star --catalog cauchy --r 0.5,0.9 --n 1024 --out " + quoted(o));
  ASSERT_EQ(r.status, 0) << r.output;
  std::ifstream in(o / "star.csv");
  auto stars = hqc::read_star_csv(in);
  ASSERT_EQ(stars.size(), 2u);
  auto F = hqc::catalog("cauchy");
  for (const auto& s : stars) {
    auto expected = hqc::star_function(hqc::sample_log_modulus(F, s.radius, 1024));
    EXPECT_EQ(s.values, expected.values);
    EXPECT_EQ(s.thetas, expected.thetas);
  }
}

TEST_F(Cli, VerifyClassFilter) {
  const auto o = out("verify");
  auto r = run("verify --class convex --K 3 --out " + quoted(o));
  ASSERT_EQ(r.status, 0) << r.output;
  std::ifstream in(o / "report.csv");
  auto rows = hqc::read_report_csv(in);
  ASSERT_FALSE(rows.empty());
  std::set<std::string> ids;
  for (const auto& row : rows) {
    ids.insert(row.inequality_id);
    EXPECT_TRUE(row.pass);
  }
  for (const auto& id : ids) {
    EXPECT_TRUE(id.rfind("thm1", 0) == 0 || id == "cor1") << id;
  }
  EXPECT_TRUE(ids.count("thm1-h"));
  EXPECT_TRUE(ids.count("cor1"));
  auto report = nlohmann::json::parse(read(o / "report.json"));
  EXPECT_EQ(report.at("rows").size(), rows.size());
}

TEST_F(Cli, GrowthExamples) {
  struct Case {
    std::string args;
    hqc::Membership verdict;
  };
  const std::vector<Case> cases{
      {"--corpus harmonic-koebe --p 0.4 --depth 12", hqc::Membership::divergent},
      {"--corpus identity --p 1", hqc::Membership::member},
      {"--shear \"phi=halfplane,omega=0.5z\" --p 0.45 --depth 14", hqc::Membership::member}};
  int index = 0;
  for (const auto& c : cases) {
    const auto o = out("growth" + std::to_string(index++));
    auto r = run("growth " + c.args + " --out " + quoted(o));
    ASSERT_EQ(r.status, 0) << c.args << "\n" << r.output;
    std::ifstream in(o / "growth.csv");
    auto rows = hqc::read_growth_csv(in);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].verdict, c.verdict) << c.args;
    if (c.args.find("identity") != std::string::npos) {
      EXPECT_NEAR(rows[0].beta, 0.0, 0.01);
    }
  }
}
