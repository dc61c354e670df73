#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "desfa/dataset.hpp"
#include "desfa/errors.hpp"
#include "desfa/rng.hpp"
#include "doctest.h"
#include "support/testdata.hpp"

namespace {

std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& text) {
  const auto p = dir / name;
  std::ofstream out(p, std::ios::binary);
  out << text;
  return p;
}

}  // namespace

TEST_CASE("load_csv basics") {
  const auto dir = testdata::fresh_dir("dataset");

  SUBCASE("header row is detected and skipped") {
    const auto p = write_file(dir, "h.csv", "a,b,label\n1,2,x\n3,4,y\n5,6,x\n");
    const desfa::Dataset ds = desfa::load_csv(p.string());
    CHECK(ds.n() == 3);
    CHECK(ds.n_features == 2);
    CHECK(ds.class_tokens == std::vector<std::string>{"x", "y"});
    CHECK(ds.labels == std::vector<int>{0, 1, 0});
    CHECK(ds.row(1)[0] == 3.0);
    CHECK(ds.row(1)[1] == 4.0);
  }

  SUBCASE("numeric first row is data, tokens assigned by first appearance") {
    const auto p = write_file(dir, "n.csv", "1,2,1\n3,4,0\n5,6,1\n");
    const desfa::Dataset ds = desfa::load_csv(p.string());
    CHECK(ds.n() == 3);
    CHECK(ds.class_tokens == std::vector<std::string>{"1", "0"});
    CHECK(ds.labels == std::vector<int>{0, 1, 0});
  }

  SUBCASE("label column override") {
    const auto p = write_file(dir, "l.csv", "x,1,2\ny,3,4\n");
    const desfa::Dataset ds = desfa::load_csv(p.string(), 0);
    CHECK(ds.n_features == 2);
    CHECK(ds.class_tokens == std::vector<std::string>{"x", "y"});
    CHECK(ds.row(0)[0] == 1.0);
    CHECK(ds.row(1)[1] == 4.0);
  }

  SUBCASE("signs and exponents parse") {
    const auto p = write_file(dir, "e.csv", "+1.5e2,-0.25,pos\n-1e-3,3,neg\n");
    const desfa::Dataset ds = desfa::load_csv(p.string());
    CHECK(ds.row(0)[0] == 150.0);
    CHECK(ds.row(0)[1] == -0.25);
    CHECK(ds.row(1)[0] == -0.001);
  }

  SUBCASE("ragged row names the offending line") {
    const auto p = write_file(dir, "r.csv", "1,2,x\n3,y\n");
    CHECK_THROWS_AS(desfa::load_csv(p.string()), desfa::ParseError);
    try {
      desfa::load_csv(p.string());
    } catch (const desfa::ParseError& e) {
      CHECK(std::string(e.what()).find("r.csv") != std::string::npos);
      CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
  }

  SUBCASE("non-numeric feature cell past the header fails") {
    const auto p = write_file(dir, "bad.csv", "1,2,x\noops,4,y\n");
    CHECK_THROWS_AS(desfa::load_csv(p.string()), desfa::ParseError);
  }

  SUBCASE("single class fails") {
    const auto p = write_file(dir, "one.csv", "1,2,x\n3,4,x\n");
    CHECK_THROWS_AS(desfa::load_csv(p.string()), desfa::ValidationError);
  }

  SUBCASE("missing file fails") {
    CHECK_THROWS_AS(desfa::load_csv((dir / "nope.csv").string()), desfa::ParseError);
  }
}

TEST_CASE("save_csv then load_csv reproduces the dataset exactly") {
  const auto dir = testdata::fresh_dir("dataset_rt");
  desfa::Rng rng(21);
  desfa::Dataset ds = testdata::grid_dataset(rng, 40, 4, 3);
  // Values that stress the formatter: subnormal-ish, huge, negative, ugly.
  ds.features[0] = 0.1;
  ds.features[1 % ds.features.size()] = -3.25e-7;
  ds.features[2 % ds.features.size()] = 1e300;

  const auto p = dir / "rt.csv";
  desfa::save_csv(ds, p.string());
  const desfa::Dataset back = desfa::load_csv(p.string());
  CHECK(back.n() == ds.n());
  CHECK(back.n_features == ds.n_features);
  CHECK(back.features == ds.features);
  CHECK(back.labels == ds.labels);
  CHECK(back.class_tokens == ds.class_tokens);

  SUBCASE("header flag writes a first line load_csv skips") {
    const auto ph = dir / "rth.csv";
    desfa::save_csv(ds, ph.string(), true);
    const desfa::Dataset backh = desfa::load_csv(ph.string());
    CHECK(backh.features == ds.features);
    CHECK(backh.labels == ds.labels);
  }
}

TEST_CASE("subset keeps rows, labels and the full token list") {
  desfa::Rng rng(3);
  const desfa::Dataset ds = testdata::grid_dataset(rng, 30, 3, 4);
  const std::vector<std::size_t> idx = {2, 0, 1};
  const desfa::Dataset sub = ds.subset(idx);
  CHECK(sub.n() == 3);
  CHECK(sub.class_tokens == ds.class_tokens);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    CHECK(sub.labels[i] == ds.labels[idx[i]]);
    for (std::size_t f = 0; f < ds.n_features; ++f) CHECK(sub.row(i)[f] == ds.row(idx[i])[f]);
  }
}

TEST_CASE("class bookkeeping") {
  desfa::Dataset ds;
  ds.name = "t";
  ds.n_features = 1;
  ds.features = {0, 1, 2, 3};
  ds.labels = {0, 0, 2, 0};
  ds.class_tokens = {"a", "b", "c"};
  CHECK(ds.class_counts() == std::vector<std::size_t>{3, 0, 1});
  CHECK(ds.present_class_count() == 2);
  CHECK(ds.n_classes() == 3);
}

TEST_CASE("check rejects broken structure") {
  desfa::Dataset ds;
  ds.name = "t";
  ds.n_features = 1;
  ds.features = {0, 1};
  ds.labels = {0, 1};
  ds.class_tokens = {"a", "b"};
  CHECK_NOTHROW(ds.check());

  SUBCASE("non-finite feature") {
    ds.features[0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ds.check(), desfa::ValidationError);
  }
  SUBCASE("label out of range") {
    ds.labels[1] = 2;
    CHECK_THROWS_AS(ds.check(), desfa::ValidationError);
  }
  SUBCASE("feature count mismatch") {
    ds.features.push_back(5);
    CHECK_THROWS_AS(ds.check(), desfa::ValidationError);
  }
  SUBCASE("fewer than two tokens") {
    ds.class_tokens.pop_back();
    ds.labels = {0, 0};
    CHECK_THROWS_AS(ds.check(), desfa::ValidationError);
  }
}

TEST_CASE("row_mut writes through") {
  desfa::Dataset ds;
  ds.n_features = 2;
  ds.features = {1, 2, 3, 4};
  ds.labels = {0, 1};
  ds.class_tokens = {"a", "b"};
  ds.row_mut(1)[0] = 9;
  CHECK(ds.row(1)[0] == 9.0);
}
