#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dbicc/cli/commands.hpp"
#include "dbicc/cli/io.hpp"
#include "dbicc/cli/json_writer.hpp"
#include "dbicc/estimate.hpp"
#include "dbicc/simulation.hpp"

using namespace dbicc;
using namespace dbicc::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "dbicc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "dbicc_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

const char* kHand = "individual,replicate,x\n1,1,0\n1,2,2\n2,1,0\n2,2,2\n";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("hand dataset through estimate") {
  const auto p = write("hand.csv", kHand);
  const auto r = call({"estimate", p.string(), "--distance", "l2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["rho_hat"].get<double>() == -1.0);
  CHECK(j["msd_within"].get<double>() == 4.0);
  CHECK(j["msd_between"].get<double>() == 2.0);
  CHECK(j["distance"] == "l2");
  CHECK(j["threshold"].is_null());
}

TEST_CASE("distance input matches vector input") {
  std::string text = "individual,replicate,a,b,c\n";
  auto rng = make_stream(81);
  std::normal_distribution<double> z;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 3; ++j)
      text += "s" + std::to_string(i) + "," + std::to_string(j) + "," + format_double(z(rng)) + "," +
              format_double(z(rng)) + "," + format_double(z(rng)) + "\n";
  const auto vec = write("vec.csv", text);
  const auto sample = read_vector_csv(vec);
  const auto d = compute_distance_matrix(sample, {});
  std::vector<std::string> ids;
  for (const auto& rec : sample.individuals()) ids.push_back(rec.id);
  write_distance_input(d, ids, scratch("d.csv"), scratch("g.csv"));

  const auto a = call({"bootstrap", vec.string(), "--boot", "300", "--seed", "5"});
  const auto b = call({"bootstrap", scratch("d.csv").string(), "--groups", scratch("g.csv").string(),
                       "--boot", "300", "--seed", "5"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);

  const auto reread = read_distance_input(scratch("d.csv"), scratch("g.csv"));
  CHECK(reread.matrix.values() == d.values());
  CHECK(reread.individual_ids == ids);
}

TEST_CASE("reruns are byte identical") {
  const auto p = write("hand.csv", kHand);
  const auto a = call({"bootstrap", p.string(), "--boot", "200", "--seed", "11", "--threads", "1"});
  const auto b = call({"bootstrap", p.string(), "--boot", "200", "--seed", "11", "--threads", "4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const auto s1 = call({"simulate", "coverage", "-I", "8", "--reps", "5", "--boot", "100", "--threads", "1"});
  const auto s2 = call({"simulate", "coverage", "-I", "8", "--reps", "5", "--boot", "100", "--threads", "3"});
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);
}

TEST_CASE("time series manifest and threshold sweep") {
  const auto dir = scratch("scans");
  fs::remove_all(dir);
  const auto gen = call({"simulate", "scans", "-I", "5", "-J", "2", "-p", "6", "-m", "40", "--out-dir", dir.string()});
  REQUIRE(gen.code == 0);
  const auto manifest = dir / "manifest.csv";
  CHECK(fs::exists(dir / "scan_5_2.csv"));

  const auto est = call({"estimate", manifest.string(), "--distance", "corr"});
  REQUIRE(est.code == 0);
  const double rho = nlohmann::json::parse(est.out)["rho_hat"].get<double>();
  CHECK(rho <= 1.0);

  // Library recomputation.
  const auto sample = read_timeseries_manifest(manifest);
  CHECK(sample.num_individuals() == 5);
  const auto d = compute_distance_matrix(sample, {DistanceKind::corr_of_corr, std::nullopt});
  CHECK(dbicc_point(d).rho_hat == rho);

  const auto sweep = call({"sweep-threshold", manifest.string(), "--threshold-grid", "0:0.2:0.1"});
  REQUIRE(sweep.code == 0);
  std::istringstream lines(sweep.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "distance,lambda,avg_fraction_zeroed,rho_hat,status");
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  CHECK(rows.size() == 9);
  for (const auto& est_name : {"l2", "l1", "corr"}) {
    const auto e = call({"estimate", manifest.string(), "--distance", est_name});
    const auto expect = format_double(nlohmann::json::parse(e.out)["rho_hat"].get<double>());
    bool found = false;
    for (const auto& row : rows)
      if (row.find(",0,0,") != std::string::npos && row.find(expect) != std::string::npos) found = true;
    CHECK(found);
  }

  const auto sub = call({"estimate", manifest.string(), "--columns", "0-3"});
  CHECK(sub.code == 0);
  CHECK(read_timeseries_manifest(manifest, std::vector<std::size_t>{0, 1, 2, 3}).individuals()[0].replicates[0].cols() == 4);
}

TEST_CASE("exit codes") {
  const auto hand = write("hand.csv", kHand);
  CHECK(call({"estimate", hand.string(), "--distance", "cosine"}).code == 4);
  CHECK(call({"bootstrap", hand.string(), "--level", "95"}).code == 4);
  CHECK(call({"frobnicate"}).code == 4);

  const auto bad = write("bad.csv", "individual,replicate,x\n1,1,0\n1,2,abc\n2,1,0\n");
  const auto r = call({"estimate", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("bad.csv:3:") != std::string::npos);
  CHECK(call({"estimate", scratch("missing.csv").string(), "--format", "vector"}).code == 2);

  const auto flat = write("flat.csv", "individual,replicate,x\n1,1,1\n1,2,1\n2,1,1\n2,2,1\n");
  const auto f = call({"estimate", flat.string()});
  CHECK(f.code == 3);
  CHECK(f.err.find("DegenerateDistancesError") != std::string::npos);

  const auto single = write("single.csv", "individual,replicate,x\n1,1,0\n1,2,1\n");
  CHECK(call({"estimate", single.string()}).code == 3);
  CHECK(call({"estimate", hand.string(), "--distance", "corr"}).code == 3);
}

TEST_CASE("bootstrap replicate log") {
  const auto hand = write("hand3.csv", "individual,replicate,x\n1,1,0\n1,2,2\n2,1,1\n2,2,5\n3,1,0\n3,2,3\n");
  const auto log = scratch("log.csv");
  const auto r = call({"bootstrap", hand.string(), "--boot", "150", "--replicate-log", log.string(), "--naive"});
  REQUIRE(r.code == 0);
  CHECK_FALSE(nlohmann::json::parse(r.out)["corrected"].get<bool>());
  const auto text = slurp(log);
  CHECK(text.rfind("replicate,has_duplicates,naive,corrected", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 151);
}

TEST_CASE("simulation commands") {
  const auto de = call({"simulate", "delta-eps", "-p", "2", "-m", "5", "--reps", "2000"});
  REQUIRE(de.code == 0);
  CHECK(nlohmann::json::parse(de.out)["analytic"].get<double>() == doctest::Approx(3.0));

  const auto csv = scratch("sb.csv");
  const auto sb = call({"simulate", "sb", "-I", "6", "-p", "5", "--reps", "2", "--m-grid", "20,40,80", "--csv", csv.string()});
  REQUIRE(sb.code == 0);
  CHECK(slurp(csv).rfind("replicate,summary,m,rho_hat,x,y", 0) == 0);

  const auto out = scratch("point.json");
  const auto pt = call({"simulate", "point", "-I", "10", "--reps", "5", "--out", out.string()});
  REQUIRE(pt.code == 0);
  CHECK(pt.out.empty());
  CHECK(nlohmann::json::parse(slurp(out))["estimates"].size() == 5);
}

TEST_CASE("helpers") {
  CHECK(parse_index_list("0,3,5-7,3") == std::vector<std::size_t>{0, 3, 5, 6, 7});
  const auto g = parse_threshold_grid("0:0.5:0.05");
  CHECK(g.size() == 11);
  CHECK(g.back() == 0.5);
  CHECK_THROWS_AS(parse_threshold_grid("0:0.5"), ConfigError);
  CHECK(format_double(0.1) == "0.10000000000000001");
  nlohmann::ordered_json j{{"b", 0.1}, {"a", NAN}};
  CHECK(dump_json(j, -1) == "{\"b\":0.10000000000000001,\"a\":null}");
}

TEST_CASE("installed executable") {
  const auto hand = write("hand.csv", kHand);
  const std::string cmd = std::string(DBICC_EXE) + " estimate " + hand.string() + " > " + scratch("exe.json").string();
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(nlohmann::json::parse(slurp(scratch("exe.json")))["rho_hat"].get<double>() == -1.0);
}
