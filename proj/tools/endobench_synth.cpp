// Synthetic desk-scale data: a textured RGB + depth dataset and the
// predictions of two toy models.
#include <iostream>

#include <CLI11.hpp>

#include "endobench/corruption_type.hpp"
#include "endobench/dataset.hpp"
#include "endobench/error.hpp"
#include "endobench/synth.hpp"

int main(int argc, char** argv) {
  using namespace endobench;
  CLI::App app{"Synthetic datasets and predictions for endobench", "endobench_synth"};
  app.require_subcommand(1);

  synth::DatasetOptions ds;
  std::string dataset_out;
  auto* dataset_cmd = app.add_subcommand("dataset", "Write textured frames, png16 depth and manifest.json");
  dataset_cmd->add_option("--out", dataset_out, "Output directory")->required();
  dataset_cmd->add_option("--frames", ds.frames, "Frame count")->check(CLI::NonNegativeNumber);
  dataset_cmd->add_option("--width", ds.width, "Frame width")->check(CLI::PositiveNumber);
  dataset_cmd->add_option("--height", ds.height, "Frame height")->check(CLI::PositiveNumber);
  dataset_cmd->add_option("--seed", ds.seed, "Texture seed");

  std::string manifest_path, pred_out, mode = "degrading", types = "all";
  std::vector<int> severities = {1, 2, 3, 4, 5};
  auto* predict_cmd = app.add_subcommand("predict", "Write clean/ and pred/ trees for a toy model");
  predict_cmd->add_option("--manifest", manifest_path, "Dataset manifest")->required();
  predict_cmd->add_option("--out", pred_out, "Output directory")->required();
  predict_cmd->add_option("--mode", mode, "invariant | degrading")->check(CLI::IsMember({"invariant", "degrading"}));
  predict_cmd->add_option("--types", types, "Comma-separated corruption tags, or 'all'");
  predict_cmd->add_option("--severities", severities, "Levels in 1..5")->delimiter(',')->check(CLI::Range(1, 5));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (dataset_cmd->parsed()) {
      const auto m = synth::write_dataset(dataset_out, ds);
      std::cout << "wrote " << m.frames.size() << " frames to " << dataset_out << "\n";
    } else {
      const auto m = dataset::load_manifest(manifest_path);
      const auto predictor =
          mode == "invariant" ? synth::Predictor::kSeverityInvariant : synth::Predictor::kSeverityDegrading;
      synth::write_predictions(m, pred_out, predictor, parse_corruption_list(types), severities);
      std::cout << "wrote " << mode << " predictions for " << m.frames.size() << " frames to " << pred_out << "\n";
    }
  } catch (const InvalidSpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
