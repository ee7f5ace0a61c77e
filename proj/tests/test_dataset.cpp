#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cskel/bayesnet.hpp"
#include "cskel/csv.hpp"
#include "cskel/dataset.hpp"
#include "cskel/errors.hpp"
#include "cskel/info.hpp"
#include "support/fixtures.hpp"

using namespace cskel;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("dataset construction validates its table") {
  const std::vector<std::string> names{"a", "b"};
  const std::vector<Alphabet> alphabets{fixtures::binary(), fixtures::binary()};
  CHECK_NOTHROW(Dataset(names, alphabets, {0, 1, 1, 0}));
  CHECK_THROWS_AS(Dataset(names, alphabets, {0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset(names, alphabets, {0, 2, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset(names, alphabets, {}), std::invalid_argument);
}

TEST_CASE("estimate_joint counts co-occurrences exactly") {
  // samples [(0,0), (0,0), (1,1), (1,0)]
  const Dataset data({"x", "y"}, {fixtures::binary(), fixtures::binary()},
                     {0, 0, 0, 0, 1, 1, 1, 0});
  const auto joint = estimate_joint(data, "x", "y");
  CHECK(joint.counts()(0, 0) == 2);
  CHECK(joint.counts()(0, 1) == 0);
  CHECK(joint.counts()(1, 0) == 1);
  CHECK(joint.counts()(1, 1) == 1);
  CHECK(joint.probabilities()(0, 0) == doctest::Approx(0.5));
  CHECK(joint.probabilities()(1, 0) == doctest::Approx(0.25));
  CHECK(joint.probabilities()(1, 1) == doctest::Approx(0.25));
  CHECK(joint.sample_size() == 4);
  CHECK_THROWS_AS(estimate_joint(data, "x", "q"), std::invalid_argument);
}

TEST_CASE("estimate_joint of a variable with itself is diagonal") {
  const Dataset data({"x", "y"}, {fixtures::binary(), fixtures::binary()},
                     {0, 0, 0, 0, 1, 1, 1, 0});
  const auto joint = estimate_joint(data, "x", "x");
  CHECK(joint.counts()(0, 0) == 2);
  CHECK(joint.counts()(1, 1) == 2);
  CHECK(joint.counts()(0, 1) == 0);
  CHECK(joint.counts()(1, 0) == 0);
}

TEST_CASE("sampled joint approaches the exact joint") {
  // p(x=1) = 0.5, p(y=1|x) = {0.2, 0.8}: exact joint [[0.4, 0.1], [0.1, 0.4]]
  const BayesNetSpec spec({
      {"x", fixtures::binary(), {}, fixtures::root_rows(0.5)},
      {"y", fixtures::binary(), {"x"}, fixtures::bsc_rows(0.2)},
  });
  const Dataset data = sample_bayes_net(spec, 2000, 424242);
  const auto joint = estimate_joint(data, "x", "y");
  Eigen::MatrixXd exact(2, 2);
  exact << 0.4, 0.1, 0.1, 0.4;
  CHECK((joint.probabilities() - exact).cwiseAbs().maxCoeff() < 0.03);
}

TEST_CASE("csv loading") {
  SUBCASE("two-column file") {
    const auto path = temp_file("cskel_test_basic.csv");
    write_file(path, "x,y\n0,1\n1,0\n");
    const Dataset data = load_csv(path);
    CHECK(data.variable_count() == 2);
    CHECK(data.sample_count() == 2);
    CHECK(data.alphabet(0).labels() == std::vector<std::string>{"0", "1"});
    CHECK(data.cell(0, 0) == 0);
    CHECK(data.cell(0, 1) == 1);
  }
  SUBCASE("header-only file is an empty dataset") {
    const auto path = temp_file("cskel_test_header_only.csv");
    write_file(path, "x,y\n");
    CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("empty dataset"),
                         std::invalid_argument);
  }
  SUBCASE("ragged rows are rejected with the line number") {
    const auto path = temp_file("cskel_test_ragged.csv");
    write_file(path, "x,y\n0,1\n0\n");
    CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("line 3"),
                         std::invalid_argument);
  }
  SUBCASE("cardinality cap names the offending column") {
    const auto path = temp_file("cskel_test_cardinality.csv");
    std::string text = "id,y\n";
    for (int i = 0; i < 100; ++i) text += std::to_string(i) + ",0\n";
    write_file(path, text);
    CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("'id'"),
                         std::invalid_argument);
  }
  SUBCASE("missing file raises an io error") {
    CHECK_THROWS_AS(load_csv(temp_file("cskel_does_not_exist.csv")), IoError);
  }
  SUBCASE("alternate delimiter and no header") {
    const auto path = temp_file("cskel_test_tsv.csv");
    write_file(path, "a\t b\nc\td\n");
    CsvOptions options;
    options.delimiter = '\t';
    options.has_header = false;
    const Dataset data = load_csv(path, options);
    CHECK(data.variable_names() == std::vector<std::string>{"c0", "c1"});
    CHECK(data.sample_count() == 2);
  }
  SUBCASE("column selection keeps file order") {
    const auto path = temp_file("cskel_test_columns.csv");
    write_file(path, "a,b,c\n0,1,2\n1,0,2\n");
    CsvOptions options;
    options.columns = {"c", "a"};
    const Dataset data = load_csv(path, options);
    CHECK(data.variable_names() == std::vector<std::string>{"a", "c"});
    CsvOptions bad;
    bad.columns = {"a", "q"};
    CHECK_THROWS_AS(load_csv(path, bad), std::invalid_argument);
  }
  SUBCASE("quoted fields") {
    const auto path = temp_file("cskel_test_quoted.csv");
    write_file(path, "x,y\n\"hello, world\",1\nplain,0\n");
    const Dataset data = load_csv(path);
    CHECK(data.alphabet(0).labels() ==
          std::vector<std::string>{"hello, world", "plain"});
  }
}

TEST_CASE("csv round trip preserves indices and alphabets") {
  const auto spec = fixtures::two_route_spec();
  const Dataset original = sample_bayes_net(spec, 500, 99);
  const auto path = temp_file("cskel_test_roundtrip.csv");
  save_csv(original, path);
  const Dataset reloaded = load_csv(path);

  REQUIRE(reloaded.variable_count() == original.variable_count());
  CHECK(reloaded.variable_names() == original.variable_names());
  for (std::size_t v = 0; v < original.variable_count(); ++v) {
    CHECK(reloaded.alphabet(v).labels() == original.alphabet(v).labels());
  }
  REQUIRE(reloaded.sample_count() == original.sample_count());
  bool all_equal = true;
  for (std::int64_t r = 0; r < original.sample_count(); ++r) {
    for (std::size_t v = 0; v < original.variable_count(); ++v) {
      all_equal = all_equal && reloaded.cell(r, v) == original.cell(r, v);
    }
  }
  CHECK(all_equal);
}

TEST_CASE("bayes net sampling") {
  SUBCASE("single-node marginal converges") {
    const BayesNetSpec spec({{"x", fixtures::binary(), {}, fixtures::root_rows(0.75)}});
    const Dataset data = sample_bayes_net(spec, 100000, 7);
    std::int64_t ones = 0;
    for (std::int64_t r = 0; r < data.sample_count(); ++r) ones += data.cell(r, 0);
    CHECK(static_cast<double>(ones) / 100000.0 == doctest::Approx(0.75).epsilon(0.015));
  }
  SUBCASE("deterministic chain copies the column") {
    Eigen::MatrixXd identity(2, 2);
    identity << 1.0, 0.0, 0.0, 1.0;
    const BayesNetSpec spec({
        {"x", fixtures::binary(), {}, fixtures::root_rows(0.5)},
        {"y", fixtures::binary(), {"x"}, identity},
    });
    const Dataset data = sample_bayes_net(spec, 1000, 3);
    bool identical = true;
    for (std::int64_t r = 0; r < data.sample_count(); ++r) {
      identical = identical && data.cell(r, 0) == data.cell(r, 1);
    }
    CHECK(identical);
  }
  SUBCASE("collider parents stay independent") {
    const Dataset data = sample_bayes_net(fixtures::collider_spec(), 100000, 21);
    const double mi = mutual_information(estimate_joint(data, "X", "Z")).value;
    CHECK(mi < 0.005);
  }
  SUBCASE("seed determinism") {
    const auto spec = fixtures::chain_spec(0.1, 0.2);
    const Dataset a = sample_bayes_net(spec, 500, 1234);
    const Dataset b = sample_bayes_net(spec, 500, 1234);
    bool identical = true;
    for (std::int64_t r = 0; r < a.sample_count(); ++r) {
      for (std::size_t v = 0; v < a.variable_count(); ++v) {
        identical = identical && a.cell(r, v) == b.cell(r, v);
      }
    }
    CHECK(identical);
    const Dataset c = sample_bayes_net(spec, 500, 1235);
    bool differs = false;
    for (std::int64_t r = 0; r < a.sample_count() && !differs; ++r) {
      for (std::size_t v = 0; v < a.variable_count(); ++v) {
        differs = differs || a.cell(r, v) != c.cell(r, v);
      }
    }
    CHECK(differs);
  }
  SUBCASE("invalid inputs") {
    const auto spec = fixtures::chain_spec(0.1, 0.2);
    CHECK_THROWS_AS(sample_bayes_net(spec, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(BayesNetSpec({
                        {"a", fixtures::binary(), {"b"}, fixtures::bsc_rows(0.1)},
                        {"b", fixtures::binary(), {"a"}, fixtures::bsc_rows(0.1)},
                    }),
                    std::invalid_argument);
  }
}

TEST_CASE("exact joints") {
  SUBCASE("independent coins give the uniform joint") {
    const BayesNetSpec spec({
        {"x", fixtures::binary(), {}, fixtures::root_rows(0.5)},
        {"y", fixtures::binary(), {}, fixtures::root_rows(0.5)},
    });
    const auto joint = exact_joint(spec, "x", "y");
    CHECK((joint.probabilities().array() - 0.25).abs().maxCoeff() < 1e-15);
  }
  SUBCASE("chain endpoints compose the crossovers") {
    // BSC(0.1) then BSC(0.2) is BSC(0.26) end to end.
    const auto spec = fixtures::chain_spec(0.1, 0.2);
    const auto joint = exact_joint(spec, "X", "Z");
    Eigen::MatrixXd expected(2, 2);
    expected << 0.37, 0.13, 0.13, 0.37;
    CHECK((joint.probabilities() - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("pairwise marginals match node marginals") {
    const auto spec = fixtures::two_route_spec();
    const auto joint_xy = exact_joint(spec, "X", "Y");
    const auto joint_xz = exact_joint(spec, "X", "Z");
    CHECK((joint_xy.x_marginal().probabilities() -
           joint_xz.x_marginal().probabilities())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
  SUBCASE("state budget is enforced") {
    const auto spec = fixtures::two_route_spec();
    CHECK_THROWS_AS(exact_joint(spec, "X", "Z", 8), std::invalid_argument);
  }
  SUBCASE("group joints use row-major product indexing") {
    const auto spec = fixtures::diamond_spec();
    const auto grouped = exact_group_joint(spec, {"X"}, {"Y", "U"});
    CHECK(grouped.y_alphabet().labels() ==
          std::vector<std::string>{"0|0", "0|1", "1|0", "1|1"});
    // p(y=1, u=0 | x=0) = 0.1 * 0.8; cell x=0, index "1|0" = 2
    CHECK(grouped.probabilities()(0, 2) == doctest::Approx(0.5 * 0.1 * 0.8));
  }
}

TEST_CASE("empirical group joints agree with exact group joints") {
  const auto spec = fixtures::diamond_spec();
  const Dataset data = sample_bayes_net(spec, 50000, 5150);
  const auto empirical = estimate_group_joint(data, {"X"}, {"Y", "U"});
  const auto exact = exact_group_joint(spec, {"X"}, {"Y", "U"});
  CHECK(empirical.y_alphabet() == exact.y_alphabet());
  CHECK((empirical.probabilities() - exact.probabilities()).cwiseAbs().maxCoeff() < 0.01);
}

TEST_CASE("sampling error shrinks roughly as the square root of n") {
  const auto spec = fixtures::chain_spec(0.15, 0.25);
  const auto exact = exact_joint(spec, "X", "Z");
  auto error_at = [&](std::int64_t n, std::uint64_t seed) {
    const Dataset data = sample_bayes_net(spec, n, seed);
    const auto joint = estimate_joint(data, "X", "Z");
    return (joint.probabilities() - exact.probabilities()).cwiseAbs().maxCoeff();
  };
  // Averaged over a few seeds to keep the ratio stable.
  double err_small = 0.0, err_large = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    err_small += error_at(1000, 100 + s);
    err_large += error_at(100000, 200 + s);
  }
  CHECK(err_large < err_small / 3.0);  // expected factor ~10
}

TEST_CASE("bayes net json parsing") {
  const std::string text = R"({
    "nodes": [
      {"name": "a", "alphabet": ["0", "1"], "parents": [], "cpt": [[0.3, 0.7]]},
      {"name": "b", "alphabet": ["0", "1"], "parents": ["a"],
       "cpt": [[0.9, 0.1], [0.2, 0.8]]}
    ]
  })";
  const BayesNetSpec spec = BayesNetSpec::from_json_text(text);
  CHECK(spec.nodes().size() == 2);
  CHECK(spec.nodes()[1].cpt(0, 1) == doctest::Approx(0.1));
  // First CPT row belongs to parent symbol "0": the sampled conditional must
  // follow the row order.
  const Dataset data = sample_bayes_net(spec, 50000, 31);
  const auto tensor = transition_tensor(estimate_joint(data, "a", "b"), Direction::forward);
  CHECK(tensor.tensor(0, 1) == doctest::Approx(0.1).epsilon(0.15));
  CHECK(tensor.tensor(1, 1) == doctest::Approx(0.8).epsilon(0.05));

  CHECK_THROWS_AS(BayesNetSpec::from_json_text("not json"), std::invalid_argument);
  CHECK_THROWS_AS(BayesNetSpec::from_json_text("{}"), std::invalid_argument);
  CHECK_THROWS_AS(BayesNetSpec::load("/nonexistent/spec.json"), IoError);
}
