#pragma once

#include <string>
#include <vector>

#include "desfa/evaluation.hpp"

namespace desfa {

struct DatasetInfo {
  std::string name;
  std::string summary;
  bool synthetic = false;
  bool predefined_test = false;
  // Files expected under the data directory; empty for synthetic sets.
  std::vector<std::string> files;
};

// The benchmark suite: nine datasets plus a bundled digits subset for
// smoke runs.
const std::vector<DatasetInfo>& dataset_registry();

// Resolves a registry name (generating synthetic sets from fixed seeds and
// loading file-backed ones from data_dir) or, when the argument contains a
// path separator or a .csv suffix, loads that file directly. A registry
// dataset with missing files raises ValidationError with fetch
// instructions.
LoadedDataset load_dataset(const std::string& name_or_path, const std::string& data_dir);

}  // namespace desfa
