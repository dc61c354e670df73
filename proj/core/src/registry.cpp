#include "desfa/registry.hpp"

#include <algorithm>
#include <filesystem>

#include "desfa/errors.hpp"
#include "desfa/synthetic.hpp"

namespace desfa {

namespace {

constexpr std::uint64_t kBananaSeed = 0xBA7A7A;
constexpr std::uint64_t kLithuanianSeed = 0x117;

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void require_files(const DatasetInfo& info, const std::string& data_dir) {
  for (const std::string& f : info.files) {
    const std::string path = join(data_dir, f);
    if (!std::filesystem::exists(path))
      throw ValidationError("dataset '" + info.name + "' needs " + path +
                            "; data/README.md and scripts/prepare_data.py explain how to "
                            "fetch and convert it");
  }
}

// Rewrites test labels onto the training file's token mapping so both
// halves share one dense label space.
void align_labels(const Dataset& train, Dataset& test) {
  std::vector<int> remap(test.class_tokens.size(), -1);
  for (std::size_t t = 0; t < test.class_tokens.size(); ++t) {
    const auto it =
        std::find(train.class_tokens.begin(), train.class_tokens.end(), test.class_tokens[t]);
    if (it == train.class_tokens.end())
      throw ValidationError("test file class '" + test.class_tokens[t] +
                            "' never appears in the training file");
    remap[t] = static_cast<int>(it - train.class_tokens.begin());
  }
  for (int& y : test.labels) y = remap[static_cast<std::size_t>(y)];
  test.class_tokens = train.class_tokens;
}

LoadedDataset load_single(const DatasetInfo& info, const std::string& data_dir) {
  require_files(info, data_dir);
  LoadedDataset out;
  out.data = load_csv(join(data_dir, info.files[0]));
  out.data.name = info.name;
  return out;
}

LoadedDataset load_pair(const DatasetInfo& info, const std::string& data_dir) {
  require_files(info, data_dir);
  LoadedDataset out;
  out.data = load_csv(join(data_dir, info.files[0]));
  out.data.name = info.name;
  out.predefined_test = load_csv(join(data_dir, info.files[1]));
  out.predefined_test->name = info.name + " (test)";
  align_labels(out.data, *out.predefined_test);
  return out;
}

}  // namespace

const std::vector<DatasetInfo>& dataset_registry() {
  static const std::vector<DatasetInfo> registry = {
      {"pima", "768 x 8, 2 classes (diabetes screening)", false, false, {"pima.csv"}},
      {"liver", "345 x 6, 2 classes (liver disorders)", false, false, {"liver.csv"}},
      {"wdbc", "569 x 30, 2 classes (breast cancer, bundled)", false, false, {"wdbc.csv"}},
      {"optdigits",
       "5620 x 64, 10 classes, fixed train/test halves",
       false,
       true,
       {"optdigits_train.csv", "optdigits_test.csv"}},
      {"blood", "748 x 4, 2 classes (transfusion)", false, false, {"blood.csv"}},
      {"segmentation",
       "2310 x 19, 7 classes, fixed train/test halves",
       false,
       true,
       {"segmentation_train.csv", "segmentation_test.csv"}},
      {"banana", "600 x 2, 2 classes, generated interlocking arcs", true, false, {}},
      {"vehicle", "846 x 18, 4 classes (silhouettes)", false, false, {"vehicle.csv"}},
      {"lithuanian", "600 x 2, 2 classes, generated opposing parabolas", true, false, {}},
      {"optdigits-subset",
       "1797 x 64, 10 classes, bundled snapshot for smoke runs",
       false,
       false,
       {"optdigits_subset.csv"}},
  };
  return registry;
}

LoadedDataset load_dataset(const std::string& name_or_path, const std::string& data_dir) {
  const bool looks_like_path =
      name_or_path.find('/') != std::string::npos ||
      name_or_path.find('\\') != std::string::npos ||
      (name_or_path.size() > 4 &&
       name_or_path.compare(name_or_path.size() - 4, 4, ".csv") == 0);

  if (!looks_like_path) {
    for (const DatasetInfo& info : dataset_registry()) {
      if (info.name != name_or_path) continue;
      if (info.name == "banana") {
        LoadedDataset out;
        out.data = generate_banana(600, 1.15, kBananaSeed);
        return out;
      }
      if (info.name == "lithuanian") {
        LoadedDataset out;
        out.data = generate_lithuanian(600, kLithuanianSeed);
        return out;
      }
      return info.predefined_test ? load_pair(info, data_dir) : load_single(info, data_dir);
    }
    std::string known;
    for (const DatasetInfo& info : dataset_registry()) {
      if (!known.empty()) known += ", ";
      known += info.name;
    }
    throw ValidationError("unknown dataset '" + name_or_path + "' (known: " + known +
                          "; or pass a CSV path)");
  }

  LoadedDataset out;
  out.data = load_csv(name_or_path);
  return out;
}

}  // namespace desfa
