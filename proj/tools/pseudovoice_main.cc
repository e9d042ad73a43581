// tools/pseudovoice_main.cc

// Copyright 2026  Pseudovoice Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pseudovoice/anonymizer.h"
#include "pseudovoice/errors.h"
#include "pseudovoice/eval.h"
#include "pseudovoice/framing.h"
#include "pseudovoice/manifest.h"
#include "pseudovoice/wav.h"

namespace fs = std::filesystem;
using namespace pseudovoice;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitProcessing = 3;

// The seed environment variable wins over flags and config files so that
// secrets can stay out of shell history in scripted runs.
void apply_seed_override(AnonymisationConfig& config,
                         const std::string& flag_seed, bool flag_given) {
  if (const char* env = std::getenv("PSEUDOVOICE_SEED"))
    config.secret_seed = env;
  else if (flag_given)
    config.secret_seed = flag_seed;
}

struct AnonymiseArgs {
  std::string input;
  std::string output;
  double alpha = 0.0;
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  std::string speaker;
  std::string split;
  std::string seed;
  int order = 20;
  double frame_ms = 20.0;
  double hop_ms = 10.0;
};

int run_anonymise(const AnonymiseArgs& args, bool has_fixed, bool has_min,
                  bool has_max, bool has_seed) {
  if (has_min != has_max)
    throw ConfigError("--alpha-min and --alpha-max must be given together");
  if (has_fixed && has_min)
    throw ConfigError("--alpha and --alpha-min/--alpha-max are exclusive");

  AnonymisationConfig config;
  config.lpc_order = args.order;
  config.frame_ms = args.frame_ms;
  config.hop_ms = args.hop_ms;
  config.split = args.split;
  if (has_min) {
    config.mode = AlphaMode::kUniform;
    config.alpha_min = args.alpha_min;
    config.alpha_max = args.alpha_max;
    if (args.speaker.empty())
      throw ConfigError("uniform mode needs --speaker to resolve alpha");
  } else {
    config.mode = AlphaMode::kFixed;
    if (has_fixed) config.alpha = args.alpha;
  }
  apply_seed_override(config, args.seed, has_seed);
  config.validate();

  const SpeakerContext ctx = sample_alpha(config, args.speaker);
  const AudioBuffer input = read_wav(args.input);
  const AudioBuffer output = anonymise_utterance(input, ctx, config);
  write_wav(args.output, output);
  return kExitOk;
}

int run_batch(const std::string& manifest_path, const std::string& config_path,
              const std::string& outdir, int jobs, bool reveal_alpha,
              const std::string& seed, bool has_seed) {
  const std::vector<ManifestRow> rows = load_manifest(manifest_path);
  AnonymisationConfig config = load_config(config_path);
  apply_seed_override(config, seed, has_seed);

  fs::create_directories(outdir);
  const CorpusReport report = anonymise_corpus(
      rows,
      [&config](const std::string& split) {
        // each row draws with its own split label
        return config.with_split(split);
      },
      fs::path(manifest_path).parent_path(), outdir, jobs);
  write_report_csv(fs::path(outdir) / "report.csv", report, reveal_alpha);

  std::size_t failed = 0;
  for (const CorpusReport::Row& row : report.rows) {
    if (!row.ok) {
      ++failed;
      std::fprintf(stderr, "error: %s: %s\n", row.utterance_id.c_str(),
                   row.message.c_str());
    }
  }
  std::fprintf(stderr, "batch: %zu/%zu utterances anonymised\n",
               report.rows.size() - failed, report.rows.size());
  return report.all_ok() ? kExitOk : kExitProcessing;
}

int run_analyze(const std::string& input, const std::string& outdir,
                int frame_index, const std::string& alphas_text, int order,
                int grid) {
  std::vector<double> alphas;
  std::stringstream ss(alphas_text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      alphas.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--alphas: not a number: '" + item + "'");
    }
  }
  if (alphas.empty()) throw ConfigError("--alphas must list at least one value");

  AnonymisationConfig config;
  config.lpc_order = order;

  const AudioBuffer audio = read_wav(input);
  const PoleTable table = dump_poles(audio, frame_index, config, alphas);
  fs::create_directories(outdir);
  write_pole_table_csv(fs::path(outdir) / "poles.csv", table);

  const FrameStream frames = frame_signal(audio, config.frame_ms,
                                          config.hop_ms);
  const LpcModel model =
      fit_lpc(frames.frame(static_cast<std::size_t>(frame_index)), order);
  write_envelope_csv(
      fs::path(outdir) / "envelope_original.csv",
      envelope_from_coeffs(model.coeffs, grid, audio.sample_rate_hz));

  const PoleSet poles = poles_from_coeffs(model);
  for (double alpha : alphas) {
    const std::vector<double> warped =
        coeffs_from_poles(warp_poleset(poles, alpha));
    char name[64];
    std::snprintf(name, sizeof name, "envelope_alpha_%g.csv", alpha);
    write_envelope_csv(fs::path(outdir) / name,
                       envelope_from_coeffs(warped, grid,
                                            audio.sample_rate_hz));
  }
  return kExitOk;
}

int run_eval(const std::string& manifest_path, const std::string& trials_path,
             const std::string& outdir, const std::string& scenario,
             const std::string& config_path,
             const std::string& enrol_config_path, int jobs,
             const std::string& seed, bool has_seed) {
  if (scenario != "o-a" && scenario != "a-a")
    throw ConfigError("--scenario must be o-a or a-a, got " + scenario);

  const std::vector<ManifestRow> rows = load_manifest(manifest_path);
  const std::vector<TrialRow> trials = load_trials(trials_path);
  AnonymisationConfig test_config = load_config(config_path);
  apply_seed_override(test_config, seed, has_seed);
  AnonymisationConfig enrol_config = test_config;
  if (!enrol_config_path.empty()) {
    enrol_config = load_config(enrol_config_path);
    apply_seed_override(enrol_config, seed, has_seed);
  }

  const fs::path base = fs::path(manifest_path).parent_path();
  std::map<std::string, SpeakerEmbedding> embeddings;
  std::vector<std::optional<std::string>> errors(rows.size());
  std::vector<SpeakerEmbedding> computed(rows.size());
  std::vector<double> lsd(rows.size(), -1.0);

  const EmbeddingConfig embed_config;
  std::atomic<std::size_t> next{0};
  auto process_row = [&](std::size_t i) {
    try {
      const ManifestRow& row = rows[i];
      const fs::path path = fs::path(row.path).is_absolute()
                                ? fs::path(row.path)
                                : base / row.path;
      const AudioBuffer original = read_wav(path);
      const bool anonymise =
          scenario == "a-a" || row.split != "enrolment";
      if (!anonymise) {
        computed[i] = embed_utterance(original, embed_config);
        return;
      }
      const AnonymisationConfig& side_config =
          row.split == "enrolment" ? enrol_config : test_config;
      const AnonymisationConfig effective =
          side_config.with_split(row.split);
      const SpeakerContext ctx = sample_alpha(effective, row.speaker_id);
      const AudioBuffer anonymised =
          anonymise_utterance(original, ctx, effective);
      computed[i] = embed_utterance(anonymised, embed_config);
      lsd[i] = log_spectral_distortion(original, anonymised);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  };
  if (jobs <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) process_row(i);
  } else {
    std::vector<std::thread> pool;
    const unsigned workers =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), rows.size());
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < rows.size();
             i = next.fetch_add(1))
          process_row(i);
      });
    for (std::thread& t : pool) t.join();
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (errors[i])
      throw Error("eval: " + rows[i].utterance_id + ": " + *errors[i]);
    embeddings.emplace(rows[i].utterance_id, std::move(computed[i]));
  }

  const std::vector<ScoredTrial> scored = score_trials(trials, embeddings);
  const double eer = compute_eer(to_score_set(scored));

  double lsd_total = 0.0;
  std::size_t lsd_count = 0;
  for (double v : lsd)
    if (v >= 0.0) {
      lsd_total += v;
      ++lsd_count;
    }

  fs::create_directories(outdir);
  write_scores_csv(fs::path(outdir) / "scores.csv", scored);
  std::vector<std::pair<std::string, double>> summary{
      {"eer", eer},
      {"n_trials", static_cast<double>(scored.size())},
  };
  if (lsd_count > 0)
    summary.emplace_back("mean_lsd_db",
                         lsd_total / static_cast<double>(lsd_count));
  write_summary_csv(fs::path(outdir) / "summary.csv", summary);
  std::fprintf(stderr, "eval (%s): EER = %.4f over %zu trials\n",
               scenario.c_str(), eer, scored.size());
  return kExitOk;
}

int run_sample_alpha(const std::string& config_path,
                     const std::vector<std::string>& speakers,
                     bool reveal_alpha, const std::string& seed,
                     bool has_seed) {
  if (!reveal_alpha)
    throw ConfigError(
        "sample-alpha prints secret coefficients; pass --reveal-alpha to "
        "acknowledge");
  AnonymisationConfig config = load_config(config_path);
  apply_seed_override(config, seed, has_seed);

  std::printf("speaker_id,split,alpha\n");
  for (const std::string& speaker : speakers) {
    const SpeakerContext ctx = sample_alpha(config, speaker);
    std::printf("%s,%s,%.12g\n", speaker.c_str(),
                ctx.provenance.split.c_str(), ctx.alpha.value());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"McAdams-coefficient speech pseudonymisation toolkit"};
  app.require_subcommand(1);

  // anonymise
  AnonymiseArgs an;
  CLI::App* anonymise =
      app.add_subcommand("anonymise", "Anonymise a single 16 kHz WAV file");
  anonymise->add_option("input", an.input, "input WAV")->required();
  anonymise->add_option("output", an.output, "output WAV")->required();
  CLI::Option* opt_alpha =
      anonymise->add_option("--alpha", an.alpha, "fixed McAdams coefficient");
  CLI::Option* opt_min =
      anonymise->add_option("--alpha-min", an.alpha_min, "uniform lower bound");
  CLI::Option* opt_max =
      anonymise->add_option("--alpha-max", an.alpha_max, "uniform upper bound");
  anonymise->add_option("--speaker", an.speaker, "speaker id (uniform mode)");
  anonymise->add_option("--split", an.split, "split label for the draw");
  CLI::Option* opt_seed =
      anonymise->add_option("--seed", an.seed,
                            "secret seed (PSEUDOVOICE_SEED wins)");
  anonymise->add_option("--order", an.order, "LPC order");
  anonymise->add_option("--frame-ms", an.frame_ms, "frame length, ms");
  anonymise->add_option("--hop-ms", an.hop_ms, "hop, ms");

  // batch
  std::string batch_manifest, batch_config, batch_outdir, batch_seed;
  int batch_jobs = 1;
  bool batch_reveal = false;
  CLI::App* batch =
      app.add_subcommand("batch", "Anonymise a manifest of utterances");
  batch->add_option("manifest", batch_manifest, "manifest CSV")->required();
  batch->add_option("config", batch_config, "config file")->required();
  batch->add_option("outdir", batch_outdir, "output directory")->required();
  batch->add_option("--jobs", batch_jobs, "worker threads");
  batch->add_flag("--reveal-alpha", batch_reveal,
                  "write real coefficients into the report");
  CLI::Option* batch_seed_opt =
      batch->add_option("--seed", batch_seed, "secret seed override");

  // analyze
  std::string analyze_input, analyze_outdir;
  std::string analyze_alphas = "0.9,0.7,0.5";
  int analyze_frame = 0;
  int analyze_order = 20;
  int analyze_grid = 1025;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Dump pole tables and spectral envelopes for one frame");
  analyze->add_option("input", analyze_input, "input WAV")->required();
  analyze->add_option("outdir", analyze_outdir, "output directory")
      ->required();
  analyze->add_option("--frame", analyze_frame, "frame index");
  analyze->add_option("--alphas", analyze_alphas,
                      "comma-separated coefficients");
  analyze->add_option("--order", analyze_order, "LPC order");
  analyze->add_option("--grid", analyze_grid, "envelope grid points");

  // eval
  std::string eval_manifest, eval_trials, eval_outdir, eval_config;
  std::string eval_enrol_config, eval_seed;
  std::string eval_scenario = "o-a";
  int eval_jobs = 1;
  CLI::App* evalcmd = app.add_subcommand(
      "eval", "Proxy speaker-verification EER over a trial list");
  evalcmd->add_option("manifest", eval_manifest, "manifest CSV")->required();
  evalcmd->add_option("trials", eval_trials, "trials CSV")->required();
  evalcmd->add_option("outdir", eval_outdir, "output directory")->required();
  evalcmd->add_option("--scenario", eval_scenario, "o-a or a-a");
  evalcmd->add_option("--config", eval_config, "anonymisation config")
      ->required();
  evalcmd->add_option("--enrol-config", eval_enrol_config,
                      "separate config for the enrolment side (a-a)");
  evalcmd->add_option("--jobs", eval_jobs, "worker threads");
  CLI::Option* eval_seed_opt =
      evalcmd->add_option("--seed", eval_seed, "secret seed override");

  // sample-alpha
  std::string sa_config;
  std::vector<std::string> sa_speakers;
  std::string sa_seed;
  bool sa_reveal = false;
  CLI::App* sample = app.add_subcommand(
      "sample-alpha", "Print per-speaker coefficients for inspection");
  sample->add_option("config", sa_config, "config file")->required();
  sample->add_option("speakers", sa_speakers, "speaker ids")->required();
  sample->add_flag("--reveal-alpha", sa_reveal, "acknowledge secrecy");
  CLI::Option* sa_seed_opt =
      sample->add_option("--seed", sa_seed, "secret seed override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (anonymise->parsed())
      return run_anonymise(an, opt_alpha->count() > 0, opt_min->count() > 0,
                           opt_max->count() > 0, opt_seed->count() > 0);
    if (batch->parsed())
      return run_batch(batch_manifest, batch_config, batch_outdir, batch_jobs,
                       batch_reveal, batch_seed, batch_seed_opt->count() > 0);
    if (analyze->parsed())
      return run_analyze(analyze_input, analyze_outdir, analyze_frame,
                         analyze_alphas, analyze_order, analyze_grid);
    if (evalcmd->parsed())
      return run_eval(eval_manifest, eval_trials, eval_outdir, eval_scenario,
                      eval_config, eval_enrol_config, eval_jobs, eval_seed,
                      eval_seed_opt->count() > 0);
    if (sample->parsed())
      return run_sample_alpha(sa_config, sa_speakers, sa_reveal, sa_seed,
                              sa_seed_opt->count() > 0);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitProcessing;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitProcessing;
  }
  return kExitUsage;
}
